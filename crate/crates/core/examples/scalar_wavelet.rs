//! The scalar pulsed-beam wavelet along and across its axis.
//!
//! Prints |Ψ̃| on the axis as the pulse passes, then the angular spread of a
//! single frequency in the far zone.

use coherent_wavelets::geometry::DisplacementConfig;
use coherent_wavelets::pulse::PulseSpec;
use coherent_wavelets::scalar::{freq_beam, psi, radiation_pattern, WaveletParams};
use coherent_wavelets::Vec3;

fn main() -> coherent_wavelets::Result<()> {
    let cfg = DisplacementConfig::new(1.0, 1.0)?;
    let wp = WaveletParams::new(cfg, PulseSpec::gaussian(0.2)?);

    println!("on-axis pulse at z = 5a and z = -5a");
    println!("{:>6} {:>14} {:>14}", "t", "|psi| ahead", "|psi| behind");
    for k in 0..=12 {
        let t = 4.4 + 0.1 * k as f64;
        let ahead = psi(Vec3::new(0.0, 0.0, 5.0), t, &wp, None)?.norm();
        let behind = psi(Vec3::new(0.0, 0.0, -5.0), t, &wp, None)?.norm();
        println!("{t:>6.2} {ahead:>14.6e} {behind:>14.6e}");
    }

    // Far away r|beam| approaches the pattern ĝ₀(ω)e^{ωa cos θ}: a forward
    // beam, with the backward lobe suppressed by e^{−2ωa}.
    let omega = 4.0;
    let r = 200.0;
    println!("\nfrequency beam at omega = {omega}, r = {r}a");
    println!("{:>8} {:>14} {:>14}", "theta", "r |beam|", "pattern");
    for k in 0..=8 {
        let theta = std::f64::consts::PI * k as f64 / 8.0;
        let x = Vec3::new(r * theta.sin(), 0.0, r * theta.cos());
        let beam = freq_beam(x, omega, &wp, None)?.norm() * r;
        let pattern = radiation_pattern(theta, omega, 1.0, &wp.pulse).norm();
        println!("{theta:>8.3} {beam:>14.6e} {pattern:>14.6e}");
    }
    Ok(())
}
