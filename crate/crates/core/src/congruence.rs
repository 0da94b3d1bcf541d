//! The real twisted null congruence of the wavelets: rays leaving the
//! spinning disk, their velocity field, vorticity and spin, and the Kerr
//! congruence they coincide with.
//!
//! A ray launched from `ρ₀` on the disk keeps `η = ±√(a² − ρ₀²)` fixed and
//! advances `ξ` at unit rate, so `ξ` doubles as its time parameter.

use crate::error::{Error, Result};
use crate::fields::Helicity;
use crate::geometry::{complex_distance, ComplexDistance, DisplacementConfig, Side};
use crate::vector::{Point3, Vec3};

/// Spatial part of a null 4-velocity `(1, u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVelocity {
    pub spatial: Vec3,
}

impl FourVelocity {
    /// Temporal component, fixed at 1.
    pub const TEMPORAL: f64 = 1.0;

    /// `u·u` with signature `(+, −, −, −)`.
    pub fn minkowski_square(&self) -> f64 {
        Self::TEMPORAL - self.spatial.norm_sqr()
    }
}

fn velocity_local(cd: &ComplexDistance, h: Helicity) -> Vec3 {
    let a = cd.a;
    let (xi, eta) = (cd.xi, cd.eta);
    let k = ((a - eta) * (a + eta) / (xi * xi + a * a)).max(0.0).sqrt();
    let (rho_hat, phi_hat) = cd.cylinder_basis();
    rho_hat * (xi / a * k) + Vec3::Z * (eta / a) + phi_hat * (h.sign() * k)
}

/// Unit velocity of the ray of helicity `h` through `x`.
///
/// On the axis the azimuthal terms vanish and the result is `sgn(z) ẑ`.
pub fn ray_velocity(x: Point3, cfg: &DisplacementConfig, h: Helicity, side: Option<Side>) -> Result<Vec3> {
    let cd = complex_distance(x, cfg, side)?;
    Ok(cfg.to_world(velocity_local(&cd, h)))
}

pub fn four_velocity(x: Point3, cfg: &DisplacementConfig, h: Helicity, side: Option<Side>) -> Result<FourVelocity> {
    Ok(FourVelocity { spatial: ray_velocity(x, cfg, h, side)? })
}

/// `u±·(∇×u±) = ±2η/(ξ² + η²)`.
pub fn helicity_density(x: Point3, cfg: &DisplacementConfig, h: Helicity, side: Option<Side>) -> Result<f64> {
    let cd = complex_distance(x, cfg, side)?;
    Ok(h.sign() * 2.0 * cd.eta / (cd.xi * cd.xi + cd.eta * cd.eta))
}

/// `∇×u± = ±(2η/(ξ² + η²)) u±`: each ray curls around its own direction.
pub fn vorticity(x: Point3, cfg: &DisplacementConfig, h: Helicity, side: Option<Side>) -> Result<Vec3> {
    let cd = complex_distance(x, cfg, side)?;
    let w = h.sign() * 2.0 * cd.eta / (cd.xi * cd.xi + cd.eta * cd.eta);
    Ok(cfg.to_world(velocity_local(&cd, h) * w))
}

/// Angular velocity `±a/(ξ² + a²)` of the wavefront `ξ` about the axis.
pub fn spin_rate(xi: f64, cfg: &DisplacementConfig, h: Helicity) -> f64 {
    let a = cfg.a();
    h.sign() * a / (xi * xi + a * a)
}

/// Accumulated azimuth `±arctan(ξ/a)` of a ray since leaving the disk.
pub fn ray_phase(xi: f64, cfg: &DisplacementConfig, h: Helicity) -> f64 {
    h.sign() * (xi / cfg.a()).atan()
}

/// A straight ray leaving the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Point3,
    pub helicity: Helicity,
    /// Face of the disk the ray leaves from.
    pub z_sign: Side,
    pub direction: Vec3,
}

impl Ray {
    /// `origin` must lie on the closed disk.
    pub fn new(origin: Point3, cfg: &DisplacementConfig, h: Helicity, z_sign: Side) -> Result<Self> {
        let a = cfg.a();
        let p = cfg.to_local(origin);
        let rho0 = p.x.hypot(p.y);
        if p.z.abs() > 1e-12 * a || rho0 > a * (1.0 + 1e-12) {
            return Err(Error::DomainError(format!("ray origin must lie on the disk of radius {a}")));
        }
        let rho0 = rho0.min(a);
        let phi_hat = if rho0 > 0.0 { Vec3::new(-p.y / rho0, p.x / rho0, 0.0) } else { Vec3::ZERO };
        let vertical = ((a - rho0) * (a + rho0)).sqrt() / a;
        let local = Vec3::Z * (z_sign.sign() * vertical) + phi_hat * (h.sign() * rho0 / a);
        Ok(Self { origin, helicity: h, z_sign, direction: cfg.to_world(local) })
    }

    /// Launch from polar position `(ρ₀, φ₀)` on the disk.
    pub fn from_polar(rho0: f64, phi0: f64, cfg: &DisplacementConfig, h: Helicity, z_sign: Side) -> Result<Self> {
        if !(0.0..=cfg.a()).contains(&rho0) {
            return Err(Error::DomainError(format!("rho0 = {rho0} outside [0, {}]", cfg.a())));
        }
        let local = Vec3::new(rho0 * phi0.cos(), rho0 * phi0.sin(), 0.0);
        Self::new(cfg.to_world(local), cfg, h, z_sign)
    }

    /// `η` carried by the ray.
    pub fn eta(&self, cfg: &DisplacementConfig) -> f64 {
        let a = cfg.a();
        let p = cfg.to_local(self.origin);
        let rho0 = p.x.hypot(p.y).min(a);
        self.z_sign.sign() * ((a - rho0) * (a + rho0)).sqrt()
    }

    pub fn at(&self, t: f64) -> Result<Point3> {
        if !(t >= 0.0) {
            return Err(Error::DomainError(format!("ray parameter must be non-negative, got {t}")));
        }
        Ok(self.origin + self.direction * t)
    }
}

/// Position at time `t ≥ 0` of the ray leaving `origin` on the disk.
pub fn trace_ray(
    origin: Point3,
    cfg: &DisplacementConfig,
    h: Helicity,
    z_sign: Side,
    t: f64,
) -> Result<Point3> {
    Ray::new(origin, cfg, h, z_sign)?.at(t)
}

/// The Kerr congruence
/// `k± = ((ξx ∓ ay)/(ξ² + a²), (ξy ± ax)/(ξ² + a²), z/ξ)`,
/// with `z/ξ` replaced by its limit `η/a` on the disk.
pub fn kerr_congruence(x: Point3, cfg: &DisplacementConfig, h: Helicity, side: Option<Side>) -> Result<Vec3> {
    let cd = complex_distance(x, cfg, side)?;
    let a = cfg.a();
    let p = cd.local;
    let s = h.sign();
    let den = cd.xi * cd.xi + a * a;
    let kz = if cd.xi > 0.0 { p.z / cd.xi } else { cd.eta / a };
    let local = Vec3::new((cd.xi * p.x - s * a * p.y) / den, (cd.xi * p.y + s * a * p.x) / den, kz);
    Ok(cfg.to_world(local))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::to_spheroidal;

    fn cfg() -> DisplacementConfig {
        DisplacementConfig::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn axis_and_equator() {
        let u = ray_velocity(Vec3::new(0.0, 0.0, 3.0), &cfg(), Helicity::Plus, None).unwrap();
        assert!((u - Vec3::Z).norm() < 1e-15);
        for h in [Helicity::Plus, Helicity::Minus] {
            let u = ray_velocity(Vec3::new(2.0, 0.0, 0.0), &cfg(), h, None).unwrap();
            let expect = Vec3::new(3f64.sqrt() / 2.0, h.sign() * 0.5, 0.0);
            assert!((u - expect).norm() < 1e-15);
            let k = kerr_congruence(Vec3::new(2.0, 0.0, 0.0), &cfg(), h, None).unwrap();
            assert!((k - expect).norm() < 1e-15);
        }
        let k = kerr_congruence(Vec3::new(0.0, 0.0, 2.0), &cfg(), Helicity::Minus, None).unwrap();
        assert!((k - Vec3::Z).norm() < 1e-15);
    }

    #[test]
    fn equatorial_plane_is_irrotational() {
        let w = vorticity(Vec3::new(1.5, 0.4, 0.0), &cfg(), Helicity::Plus, None).unwrap();
        assert_eq!(w.norm(), 0.0);
    }

    #[test]
    fn spin() {
        let c = cfg();
        assert_eq!(spin_rate(0.0, &c, Helicity::Plus), 1.0);
        assert_eq!(spin_rate(0.0, &c, Helicity::Minus), -1.0);
        assert!((spin_rate(1.0, &c, Helicity::Plus) - 0.5).abs() < 1e-15);
        assert!((ray_phase(1.0, &c, Helicity::Minus) + std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((ray_phase(1e12, &c, Helicity::Plus) - std::f64::consts::FRAC_PI_2).abs() < 1e-11);
    }

    #[test]
    fn jet_and_tangent_rays() {
        let c = cfg();
        let x = trace_ray(Vec3::ZERO, &c, Helicity::Plus, Side::Above, 2.5).unwrap();
        assert_eq!(x, Vec3::new(0.0, 0.0, 2.5));
        let ray = Ray::from_polar(1.0, 0.0, &c, Helicity::Plus, Side::Above).unwrap();
        for t in [0.5, 1.0, 10.0] {
            let x = ray.at(t).unwrap();
            assert_eq!(x.z, 0.0);
            assert!(to_spheroidal(x, &c, None).unwrap().eta.abs() < 1e-15);
        }
        assert!(trace_ray(Vec3::new(1.2, 0.0, 0.0), &c, Helicity::Plus, Side::Above, 1.0).is_err());
        assert!(ray.at(-1.0).is_err());
    }

    #[test]
    fn rays_follow_hyperboloids() {
        let c = cfg();
        for h in [Helicity::Plus, Helicity::Minus] {
            for side in [Side::Above, Side::Below] {
                let ray = Ray::from_polar(0.6, 0.7, &c, h, side).unwrap();
                assert!((ray.direction.norm() - 1.0).abs() < 1e-15);
                for k in 1..=50 {
                    let t = 2.0 * k as f64;
                    let sph = to_spheroidal(ray.at(t).unwrap(), &c, None).unwrap();
                    assert!((sph.eta - side.sign() * 0.8).abs() < 1e-10);
                    assert!((sph.xi - t).abs() < 1e-10 * t.max(1.0));
                    let u = ray_velocity(ray.at(t).unwrap(), &c, h, None).unwrap();
                    assert!((u - ray.direction).norm() < 1e-10);
                }
            }
        }
    }
}
