//! Runs every residual suite on a modest sample and prints the reports.
//!
//! Pass a point count as the first argument to change the sample size.

use coherent_wavelets::verify::suites::{run_suite, SamplePlan, Suite};

fn main() {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(300);
    let plan = SamplePlan::new(n, 42);
    println!("{:<18} {:>6} {:>10} {:>10} {:>10}", "suite", "pass", "max", "median", "tol");
    for s in Suite::ALL {
        let r = run_suite(s, &plan);
        println!("{:<18} {:>6} {:>10.3e} {:>10.3e} {:>10.0e}", r.suite, r.pass, r.max_residual, r.median_residual, r.tol);
    }
}
