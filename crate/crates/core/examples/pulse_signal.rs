//! Analytic signals of a Gaussian pulse at complex times: the Faddeeva fast
//! path, the quadrature oracle, and a tabulated spectrum of the same pulse.

use coherent_wavelets::pulse::{quadrature_oracle, PulseSpec, TabulatedSpectrum};
use coherent_wavelets::vector::c;

fn main() -> coherent_wavelets::Result<()> {
    let d = 0.5;
    let p = PulseSpec::gaussian(d)?;
    println!("{:>16} {:>30} {:>10}", "tau", "g'(tau)", "rel. err");
    for tau in [c(0.0, 0.0), c(0.3, -0.7), c(-2.0, -0.1), c(4.0, -3.0), c(0.0, -5.0)] {
        let fast = p.analytic_signal(tau, 1)?;
        let oracle = quadrature_oracle(&p, tau, 1)?;
        println!("{:>16} {:>30} {:>10.2e}", format!("{tau:.2}"), format!("{fast:.10e}"), (fast - oracle).norm() / oracle.norm());
    }

    println!("\nreal part recovers the pulse: 2 Re g(t) vs g0(t)");
    for t in [-1.0, -0.5, 0.0, 0.25, 1.0] {
        let g = p.analytic_signal(c(t, 0.0), 0)?;
        println!("  t = {t:>5}: {:.12} {:.12}", 2.0 * g.re, p.g0(t));
    }

    // ĝ₀(ω) = e^{−ω²d²/4}, sampled densely enough to pass the grid check.
    let tab = TabulatedSpectrum::sample(|w| c((-w * w * d * d / 4.0).exp(), 0.0), 40.0 / d, 4001)?;
    let tp = PulseSpec::Tabulated(tab);
    println!("\ntabulated vs closed form at tau = 0.2 - 0.5i");
    let tau = c(0.2, -0.5);
    for n in 0..3 {
        println!("  order {n}: {:.10e} {:.10e}", tp.analytic_signal(tau, n)?, p.analytic_signal(tau, n)?);
    }
    Ok(())
}
