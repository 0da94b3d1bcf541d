//! Energy density and flow of a coherent wavelet on a slice through the
//! axis, written as a small ASCII map with the velocity field alongside.

use coherent_wavelets::energetics::densities;
use coherent_wavelets::fields::{coherent_wavelet, real_fields};
use coherent_wavelets::geometry::DisplacementConfig;
use coherent_wavelets::pulse::PulseSpec;
use coherent_wavelets::scalar::WaveletParams;
use coherent_wavelets::vector::c;
use coherent_wavelets::{Helicity, Vec3};

fn main() -> coherent_wavelets::Result<()> {
    let wp = WaveletParams::new(DisplacementConfig::new(1.0, 1.0)?, PulseSpec::gaussian(0.25)?);
    let h = Helicity::Plus;
    let t = 3.0;
    let (nx, nz) = (61, 31);
    let mut u = vec![f64::NAN; nx * nz];
    for j in 0..nz {
        for i in 0..nx {
            let x = Vec3::new(-6.0 + 12.0 * i as f64 / (nx - 1) as f64, 0.0, 6.0 - 12.0 * j as f64 / (nz - 1) as f64);
            if let Ok(f) = coherent_wavelet(x, t, &wp, h, c(1.0, 0.0), None) {
                let p = real_fields(&f, h);
                if let Ok(d) = densities(p.e, p.b) {
                    u[j * nx + i] = d.u;
                }
            }
        }
    }
    let max = u.iter().copied().filter(|v| v.is_finite()).fold(0.0, f64::max);
    let ramp = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    println!("log energy density, xz plane at t = {t} (top is z = +6, ? on the axis and disk)");
    for row in u.chunks(nx) {
        let line: String = row
            .iter()
            .map(|&v| {
                if !v.is_finite() {
                    return '?';
                }
                let level = ((v / max).log10() / 6.0 + 1.0).clamp(0.0, 0.999);
                ramp[(level * ramp.len() as f64) as usize]
            })
            .collect();
        println!("|{line}|");
    }

    println!("\nflow velocity along the ring x = 1.5, z = 2 (null field: |v| = 1)");
    for k in 0..4 {
        let phi = std::f64::consts::FRAC_PI_2 * k as f64;
        let x = Vec3::new(1.5 * phi.cos(), 1.5 * phi.sin(), 2.0);
        let f = coherent_wavelet(x, 2.5, &wp, h, c(1.0, 0.0), None)?;
        let p = real_fields(&f, h);
        let d = densities(p.e, p.b)?;
        println!("  phi = {phi:.3}: v = ({:+.6}, {:+.6}, {:+.6}), |v| = {:.12}", d.v.x, d.v.y, d.v.z, d.v.norm());
    }
    Ok(())
}
