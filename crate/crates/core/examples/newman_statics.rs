//! The static complex-source field `(x − ia)/ζ³`: its disk sources, the
//! vortex of energy flow around the axis, and the far-field multipoles.

use coherent_wavelets::geometry::{from_spheroidal, DisplacementConfig, Side, Spheroidal};
use coherent_wavelets::newman::{boundary_values, boundary_values_extrapolated, multipole_check, newman_energetics};
use coherent_wavelets::Vec3;

fn main() -> coherent_wavelets::Result<()> {
    let cfg = DisplacementConfig::new(1.0, 1.0)?;

    println!("disk sources: closed form vs faces extrapolated to z = 0");
    println!("{:>5} {:>14} {:>14} {:>14} {:>10}", "rho", "sigma", "sigma (fit)", "|K|", "omega");
    for rho in [0.0, 0.3, 0.6, 0.8, 0.9] {
        let exact = boundary_values(rho, &cfg)?.density;
        let fit = boundary_values_extrapolated(rho, &cfg)?.density;
        // The rotation rate |K|/(ρ|σ|) is undefined at the centre.
        let omega = if rho > 0.0 { format!("{:.6}", exact.rotation_rate(rho)) } else { "-".into() };
        println!("{rho:>5.2} {:>14.8} {:>14.8} {:>14.8} {omega:>10}", exact.sigma, fit.sigma, exact.k.norm());
    }

    let centre = newman_energetics(Vec3::ZERO, &cfg, Some(Side::Above))?;
    let rim = newman_energetics(from_spheroidal(Spheroidal { xi: 1e-7, eta: 1e-7, phi: 0.0 }, &cfg)?, &cfg, None)?;
    println!("\nenergy vortex: Omega(0) = {}, Omega(a) = {}", centre.omega, rim.omega);
    for z in [0.5, 1.0, 2.0] {
        let e = newman_energetics(Vec3::new(0.5, 0.0, z), &cfg, None)?;
        println!("  at (0.5, 0, {z}): u = {:.5e}, |v| = {:.5}, I = {:.5e}", e.u, e.v.norm(), e.inertia);
    }

    println!("\nfar field against monopole + dipole");
    for r in [20.0, 40.0, 80.0] {
        let m = multipole_check(r, &cfg)?;
        println!("  r = {r:>4}: flux/4pi = {:.12}, residual = {:.4e}, residual r^4 = {:.5}", m.flux_over_4pi, m.residual_max, m.fitted_c);
    }
    Ok(())
}
