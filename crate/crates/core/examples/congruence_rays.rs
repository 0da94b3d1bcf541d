//! Rays of the twisted null congruence leaving the spinning disk.
//!
//! Each ray keeps its `η`, advances `ξ` at unit speed, and winds about the
//! axis at the rate `a/(ξ² + a²)`.

use coherent_wavelets::congruence::{helicity_density, ray_phase, spin_rate, Ray};
use coherent_wavelets::geometry::{to_spheroidal, DisplacementConfig, Side};
use coherent_wavelets::Helicity;

fn main() -> coherent_wavelets::Result<()> {
    let cfg = DisplacementConfig::new(1.0, 1.0)?;
    let h = Helicity::Plus;
    for rho0 in [0.0, 0.5, 0.9, 1.0] {
        let ray = Ray::from_polar(rho0, 0.0, &cfg, h, Side::Above)?;
        println!("rho0 = {rho0}: eta = {:.6}, launch direction {:?}", ray.eta(&cfg), ray.direction.as_array());
        println!("{:>6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>12}", "t", "x", "y", "z", "xi", "eta", "u.curl u");
        for t in [0.5, 1.0, 2.0, 4.0, 8.0] {
            let x = ray.at(t)?;
            let s = to_spheroidal(x, &cfg, Some(Side::Above))?;
            let w = helicity_density(x, &cfg, h, Some(Side::Above))?;
            println!("{t:>6.1} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {w:>12.5e}", x.x, x.y, x.z, s.xi, s.eta);
        }
        println!();
    }
    println!("spin rate and accumulated phase along a ray");
    for xi in [0.0, 0.5, 1.0, 2.0, 10.0] {
        println!("xi = {xi:>5}: spin {:.6}, phase {:.6}", spin_rate(xi, &cfg, h), ray_phase(xi, &cfg, h));
    }
    Ok(())
}
