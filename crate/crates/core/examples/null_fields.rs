//! Electromagnetic wavelets for a generic and a null choice of gauge
//! constants, and the invariants that tell them apart.

use coherent_wavelets::energetics::densities;
use coherent_wavelets::fields::{field_sample, real_fields};
use coherent_wavelets::geometry::DisplacementConfig;
use coherent_wavelets::potential::GaugeParams;
use coherent_wavelets::pulse::PulseSpec;
use coherent_wavelets::scalar::WaveletParams;
use coherent_wavelets::vector::c;
use coherent_wavelets::{Helicity, Vec3};

fn main() -> coherent_wavelets::Result<()> {
    let wp = WaveletParams::new(DisplacementConfig::new(1.0, 1.0)?, PulseSpec::gaussian(0.3)?);
    let generic = GaugeParams::new(c(0.3, 0.1), c(0.5, 0.0), c(0.2, -0.4));
    let null = GaugeParams::null(Helicity::Plus, c(0.3, 0.1), c(0.2, -0.4));

    let points = [Vec3::new(0.5, 0.0, 2.0), Vec3::new(2.0, 1.0, 1.0), Vec3::new(1.5, -0.5, -0.8)];
    for (label, gp) in [("generic", generic), ("null (lambda = -i)", null)] {
        println!("{label}: p+ = {:.3}, q+ = {:.3}", gp.p(Helicity::Plus), gp.q(Helicity::Plus));
        println!("{:>26} {:>12} {:>12} {:>12}", "x", "|F+^2|/|F+|^2", "I/u", "|v|");
        for x in points {
            let t = x.norm();
            let fs = field_sample(x, t, &wp, &gp, None)?;
            let f = fs.f(Helicity::Plus);
            let pair = real_fields(&f, Helicity::Plus);
            let d = densities(pair.e, pair.b)?;
            println!(
                "{:>26} {:>12.3e} {:>12.3e} {:>12.9}",
                format!("({}, {}, {})", x.x, x.y, x.z),
                f.square().norm() / f.norm_sqr(),
                d.inertia / d.u,
                d.v.norm()
            );
        }
        println!();
    }
    Ok(())
}
