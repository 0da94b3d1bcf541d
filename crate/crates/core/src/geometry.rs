//! Complex distance, oblate spheroidal coordinates and the complex spheroidal
//! frame.
//!
//! Everything is computed in a canonical frame where the imaginary
//! displacement points along `+z`. A [`DisplacementConfig`] built with
//! [`DisplacementConfig::with_axis`] carries a rigid rotation so callers can
//! work in their own coordinates; points are rotated in and vectors rotated
//! back out.
//!
//! Branch: `ζ = ξ − iη` with `ξ ≥ 0`. `ζ` jumps across the open disk
//! `ρ < a, z = 0`, so evaluation there needs an explicit [`Side`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::vector::{c, CVec3, Point3, Vec3};

/// Focal-circle exclusion radius, relative to `a`.
pub const TOL_SING: f64 = 1e-9;
/// Axis exclusion radius, relative to `a`.
pub const TOL_AXIS: f64 = 1e-9;
/// Guard band kept between finite-difference stencils and singular sets,
/// relative to `a`.
pub const TOL_GUARD: f64 = 1e-3;

/// Which face of the branch disk a point on it is approached from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    /// `z → 0⁺`
    #[serde(rename = "+")]
    Above,
    /// `z → 0⁻`
    #[serde(rename = "-")]
    Below,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Above => 1.0,
            Side::Below => -1.0,
        }
    }
}

/// Imaginary spacetime displacement `(i·a, −i·s)`.
///
/// `a > 0` is the radius of the branch disk. `s` is the imaginary time; the
/// bound `s ≥ a` guarantees convergence for arbitrary square-integrable
/// pulses but is not enforced, since the Gaussian pulse is entire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisplacementConfig {
    a: f64,
    s: f64,
    /// Rows are the canonical basis vectors expressed in world coordinates;
    /// the third row is the unit displacement axis.
    basis: [Vec3; 3],
}

impl DisplacementConfig {
    pub fn new(a: f64, s: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::DomainError(format!("disk radius must be positive, got {a}")));
        }
        Self::with_axis(Vec3::Z * a, s)
    }

    /// Displacement along an arbitrary direction; `|axis|` is the disk radius.
    pub fn with_axis(axis: Vec3, s: f64) -> Result<Self> {
        let a = axis.norm();
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::DomainError(format!(
                "displacement magnitude must be positive and finite, got {a}"
            )));
        }
        if !s.is_finite() {
            return Err(Error::DomainError(format!("imaginary time must be finite, got {s}")));
        }
        let e3 = axis / a;
        let basis = if e3 == Vec3::Z {
            [Vec3::X, Vec3::Y, Vec3::Z]
        } else {
            // Gram-Schmidt against the world axis least aligned with e3.
            let seed = if e3.x.abs() <= e3.y.abs() && e3.x.abs() <= e3.z.abs() {
                Vec3::X
            } else if e3.y.abs() <= e3.z.abs() {
                Vec3::Y
            } else {
                Vec3::Z
            };
            let e1 = seed - e3 * seed.dot(&e3);
            let e1 = e1 / e1.norm();
            let e2 = e3.cross(&e1);
            [e1, e2, e3]
        };
        Ok(Self { a, s, basis })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Unit vector along the displacement, in world coordinates.
    pub fn axis(&self) -> Vec3 {
        self.basis[2]
    }

    /// The displacement vector `a` in world coordinates.
    pub fn displacement(&self) -> Vec3 {
        self.basis[2] * self.a
    }

    pub fn with_s(&self, s: f64) -> Self {
        Self { s, ..*self }
    }

    /// World point to canonical frame.
    #[inline]
    pub fn to_local(&self, x: Point3) -> Point3 {
        Vec3::new(self.basis[0].dot(&x), self.basis[1].dot(&x), self.basis[2].dot(&x))
    }

    /// Canonical-frame vector to world coordinates.
    #[inline]
    pub fn to_world(&self, v: Vec3) -> Vec3 {
        self.basis[0] * v.x + self.basis[1] * v.y + self.basis[2] * v.z
    }

    #[inline]
    pub fn to_world_c(&self, v: CVec3) -> CVec3 {
        let b = &self.basis;
        CVec3::new(
            v.x * b[0].x + v.y * b[1].x + v.z * b[2].x,
            v.x * b[0].y + v.y * b[1].y + v.z * b[2].y,
            v.x * b[0].z + v.y * b[1].z + v.z * b[2].z,
        )
    }
}

/// `ζ = √((x − ia)²)` together with its spheroidal pieces.
///
/// `local` is the observation point in the canonical frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexDistance {
    pub zeta: Complex64,
    pub xi: f64,
    pub eta: f64,
    pub rho: f64,
    /// `z − ia`
    pub ztilde: Complex64,
    pub local: Point3,
    pub a: f64,
}

impl ComplexDistance {
    /// `ζ̂ = ∇ζ = (x − ia)/ζ`, canonical frame. Defined on the axis too.
    pub fn zeta_hat_local(&self) -> CVec3 {
        CVec3::new(c(self.local.x, 0.0), c(self.local.y, 0.0), self.ztilde) / self.zeta
    }

    /// Azimuth of the point about the displacement axis.
    pub fn phi(&self) -> f64 {
        self.local.y.atan2(self.local.x)
    }

    /// `(ρ̂, φ̂)` in the canonical frame. On the axis returns `(x̂, ŷ)`.
    pub fn cylinder_basis(&self) -> (Vec3, Vec3) {
        if self.rho > 0.0 {
            let rh = Vec3::new(self.local.x / self.rho, self.local.y / self.rho, 0.0);
            (rh, Vec3::new(-rh.y, rh.x, 0.0))
        } else {
            (Vec3::X, Vec3::Y)
        }
    }
}

pub(crate) fn complex_distance_local(p: Point3, a: f64, side: Option<Side>) -> Result<ComplexDistance> {
    if !p.is_finite() {
        return Err(Error::DomainError("observation point must be finite".into()));
    }
    let rho = p.x.hypot(p.y);
    let z = p.z;
    let q = rho * rho + z * z - a * a;
    // |ζ|² = |ζ²| = √(q² + 4a²z²)
    let disc = q.hypot(2.0 * a * z);
    if disc.sqrt() < TOL_SING * a {
        return Err(Error::SingularPoint(disc.sqrt()));
    }
    let on_disk = z.abs() < TOL_SING * a && rho < a - TOL_SING * a;
    let (xi, eta) = if on_disk {
        let side = side.ok_or(Error::AmbiguousBranch)?;
        (0.0, side.sign() * ((a - rho) * (a + rho)).sqrt())
    } else {
        // Both roots of the quadratic, each from its cancellation-free form.
        let four_a2z2 = 4.0 * a * a * z * z;
        let xi2 = if q >= 0.0 { 0.5 * (q + disc) } else { 0.5 * four_a2z2 / (disc - q) };
        let eta2 = if q <= 0.0 { 0.5 * (disc - q) } else { 0.5 * four_a2z2 / (disc + q) };
        let sign = if z != 0.0 {
            z.signum()
        } else {
            side.map_or(1.0, Side::sign)
        };
        (xi2.sqrt(), sign * eta2.sqrt())
    };
    Ok(ComplexDistance {
        zeta: c(xi, -eta),
        xi,
        eta,
        rho,
        ztilde: c(z, -a),
        local: p,
        a,
    })
}

/// The complex distance from the imaginary source point `ia` to `x`.
///
/// `side` is only consulted on the open branch disk.
pub fn complex_distance(x: Point3, cfg: &DisplacementConfig, side: Option<Side>) -> Result<ComplexDistance> {
    complex_distance_local(cfg.to_local(x), cfg.a, side)
}

/// Oblate spheroidal coordinates `(ξ, η, φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spheroidal {
    pub xi: f64,
    pub eta: f64,
    pub phi: f64,
}

pub fn to_spheroidal(x: Point3, cfg: &DisplacementConfig, side: Option<Side>) -> Result<Spheroidal> {
    let cd = complex_distance(x, cfg, side)?;
    Ok(Spheroidal { xi: cd.xi, eta: cd.eta, phi: cd.phi() })
}

/// Inverse of [`to_spheroidal`]: `a²ρ² = (a²+ξ²)(a²−η²)`, `az = ξη`.
pub fn from_spheroidal(sph: Spheroidal, cfg: &DisplacementConfig) -> Result<Point3> {
    let a = cfg.a;
    if !(sph.xi >= 0.0) {
        return Err(Error::DomainError(format!("xi must be non-negative, got {}", sph.xi)));
    }
    if !(sph.eta.abs() <= a) {
        return Err(Error::DomainError(format!("|eta| = {} exceeds a = {a}", sph.eta.abs())));
    }
    let rho = ((a * a + sph.xi * sph.xi) * ((a - sph.eta) * (a + sph.eta))).sqrt() / a;
    let z = sph.xi * sph.eta / a;
    let local = Vec3::new(rho * sph.phi.cos(), rho * sph.phi.sin(), z);
    Ok(cfg.to_world(local))
}

/// Complexified polar angle: `sin ϑ = ρ/ζ`, `cos ϑ = z̃/ζ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexAngle {
    pub sin_theta: Complex64,
    pub cos_theta: Complex64,
}

impl ComplexAngle {
    /// `ϑ` itself, via the principal logarithm of `e^{iϑ}`.
    ///
    /// Only differences of nearby values are meaningful across the log cut.
    pub fn theta(&self) -> Complex64 {
        -crate::vector::I * (self.cos_theta + crate::vector::I * self.sin_theta).ln()
    }

    pub fn sin_2theta(&self) -> Complex64 {
        2.0 * self.sin_theta * self.cos_theta
    }
}

pub fn complex_angle(cd: &ComplexDistance) -> Result<ComplexAngle> {
    if cd.zeta.norm() < TOL_SING * cd.a {
        return Err(Error::SingularPoint(cd.zeta.norm()));
    }
    Ok(ComplexAngle { sin_theta: c(cd.rho, 0.0) / cd.zeta, cos_theta: cd.ztilde / cd.zeta })
}

/// The complex-orthonormal frame `(ζ̂, ϑ̂, φ̂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameTriad {
    pub zeta_hat: CVec3,
    pub theta_hat: CVec3,
    pub phi_hat: CVec3,
}

impl FrameTriad {
    pub fn vectors(&self) -> [CVec3; 3] {
        [self.zeta_hat, self.theta_hat, self.phi_hat]
    }

    /// Unconjugated Gram matrix `u_k·u_l`.
    pub fn gram(&self) -> [[Complex64; 3]; 3] {
        let u = self.vectors();
        let mut g = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (k, row) in g.iter_mut().enumerate() {
            for (l, entry) in row.iter_mut().enumerate() {
                *entry = u[k].dot(&u[l]);
            }
        }
        g
    }

    /// `w = Σ (w·u_k) u_k`.
    pub fn reconstruct(&self, w: &CVec3) -> CVec3 {
        self.vectors().iter().fold(CVec3::ZERO, |acc, u| acc + *u * w.dot(u))
    }

    /// Components `(w·ζ̂, w·ϑ̂, w·φ̂)`.
    pub fn components(&self, w: &CVec3) -> [Complex64; 3] {
        [w.dot(&self.zeta_hat), w.dot(&self.theta_hat), w.dot(&self.phi_hat)]
    }
}

/// Everything the field formulas need at one point, in the canonical frame.
#[derive(Debug, Clone, Copy)]
pub struct LocalGeometry {
    pub cd: ComplexDistance,
    pub angle: ComplexAngle,
    pub rho_hat: Vec3,
    pub phi_hat: Vec3,
    pub zeta_hat: CVec3,
    pub theta_hat: CVec3,
}

impl LocalGeometry {
    pub(crate) fn new(x: Point3, cfg: &DisplacementConfig, side: Option<Side>, need_azimuth: bool) -> Result<Self> {
        let cd = complex_distance(x, cfg, side)?;
        if need_azimuth && cd.rho < TOL_AXIS * cfg.a {
            return Err(Error::OnAxis(cd.rho));
        }
        let angle = complex_angle(&cd)?;
        let (rho_hat, phi_hat) = cd.cylinder_basis();
        let rh = rho_hat.to_complex();
        let zh = Vec3::Z.to_complex();
        let zeta_hat = if need_azimuth {
            rh * angle.sin_theta + zh * angle.cos_theta
        } else {
            cd.zeta_hat_local()
        };
        let theta_hat = rh * angle.cos_theta - zh * angle.sin_theta;
        Ok(Self { cd, angle, rho_hat, phi_hat, zeta_hat, theta_hat })
    }

    pub fn triad_local(&self) -> FrameTriad {
        FrameTriad { zeta_hat: self.zeta_hat, theta_hat: self.theta_hat, phi_hat: self.phi_hat.to_complex() }
    }
}

/// The complex spheroidal frame at `x`, in world coordinates.
pub fn frame_triad(x: Point3, cfg: &DisplacementConfig, side: Option<Side>) -> Result<FrameTriad> {
    let lg = LocalGeometry::new(x, cfg, side, true)?;
    Ok(FrameTriad {
        zeta_hat: cfg.to_world_c(lg.zeta_hat),
        theta_hat: cfg.to_world_c(lg.theta_hat),
        phi_hat: cfg.to_world_c(lg.phi_hat.to_complex()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionTag {
    Exterior,
    OnDiskInterior,
    OnFocalCircle,
    OnAxis,
    NearSingular,
}

/// Where `x` sits relative to the disk `D`, its rim `C` and the axis.
pub fn classify(x: Point3, cfg: &DisplacementConfig) -> RegionTag {
    let a = cfg.a;
    let p = cfg.to_local(x);
    let rho = p.x.hypot(p.y);
    let q = rho * rho + p.z * p.z - a * a;
    let zeta_abs = q.hypot(2.0 * a * p.z).sqrt();
    if zeta_abs < TOL_SING * a {
        return RegionTag::OnFocalCircle;
    }
    if p.z.abs() < TOL_SING * a && rho < a {
        return RegionTag::OnDiskInterior;
    }
    if rho < TOL_AXIS * a {
        return RegionTag::OnAxis;
    }
    let to_circle = (rho - a).hypot(p.z);
    let to_disk = if rho <= a { p.z.abs() } else { to_circle };
    let guard = TOL_GUARD * a;
    if to_disk < guard || to_circle < guard || rho < guard {
        RegionTag::NearSingular
    } else {
        RegionTag::Exterior
    }
}

/// Distance from `x` to the union of the disk, its rim and the axis.
pub fn distance_to_singular_sets(x: Point3, cfg: &DisplacementConfig) -> (f64, f64, f64) {
    let a = cfg.a;
    let p = cfg.to_local(x);
    let rho = p.x.hypot(p.y);
    let to_circle = (rho - a).hypot(p.z);
    let to_disk = if rho <= a { p.z.abs() } else { to_circle };
    (to_disk, to_circle, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::re;

    fn cfg1() -> DisplacementConfig {
        DisplacementConfig::new(1.0, 1.0).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn on_axis_distance() {
        let cd = complex_distance(Vec3::new(0.0, 0.0, 2.0), &cfg1(), None).unwrap();
        assert!(close(cd.zeta, c(2.0, -1.0), 1e-15));
        assert_eq!((cd.xi, cd.eta), (2.0, 1.0));
    }

    #[test]
    fn equatorial_distance_is_real() {
        let cd = complex_distance(Vec3::new(2.0, 0.0, 0.0), &cfg1(), None).unwrap();
        assert!(close(cd.zeta, re(3f64.sqrt()), 1e-15));
        assert_eq!(cd.eta, 0.0);
    }

    #[test]
    fn disk_interior_needs_a_side() {
        let x = Vec3::new(0.6, 0.0, 0.0);
        assert_eq!(complex_distance(x, &cfg1(), None), Err(Error::AmbiguousBranch));
        let up = complex_distance(x, &cfg1(), Some(Side::Above)).unwrap();
        assert!(close(up.zeta, c(0.0, -0.8), 1e-15));
        let down = complex_distance(x, &cfg1(), Some(Side::Below)).unwrap();
        assert!(close(down.zeta, c(0.0, 0.8), 1e-15));
    }

    #[test]
    fn real_limit() {
        let cfg = DisplacementConfig::new(1e-12, 0.0).unwrap();
        let cd = complex_distance(Vec3::new(1.0, 2.0, 2.0), &cfg, None).unwrap();
        assert!(close(cd.zeta, re(3.0), 1e-12));
    }

    #[test]
    fn focal_circle_is_singular() {
        let err = complex_distance(Vec3::new(0.0, 1.0, 0.0), &cfg1(), Some(Side::Above));
        assert!(matches!(err, Err(Error::SingularPoint(_))));
    }

    #[test]
    fn spheroidal_examples() {
        let s = to_spheroidal(Vec3::new(0.0, 0.0, 2.0), &cfg1(), None).unwrap();
        assert_eq!((s.xi, s.eta), (2.0, 1.0));
        let s = to_spheroidal(Vec3::new(2.0, 0.0, 0.0), &cfg1(), None).unwrap();
        assert!((s.xi - 3f64.sqrt()).abs() < 1e-15 && s.eta == 0.0);
        let x = from_spheroidal(Spheroidal { xi: 0.7, eta: 0.5, phi: 0.0 }, &cfg1()).unwrap();
        assert!((x.x - (1.49f64 * 0.75).sqrt()).abs() < 1e-15);
        assert!((x.z - 0.35).abs() < 1e-15);
        assert!(from_spheroidal(Spheroidal { xi: 1.0, eta: 1.5, phi: 0.0 }, &cfg1()).is_err());
    }

    #[test]
    fn complex_angle_examples() {
        let cd = complex_distance(Vec3::new(0.0, 0.0, 2.0), &cfg1(), None).unwrap();
        let ang = complex_angle(&cd).unwrap();
        assert!(close(ang.sin_theta, re(0.0), 1e-15) && close(ang.cos_theta, re(1.0), 1e-15));

        let cd = complex_distance(Vec3::new(2.0, 0.0, 0.0), &cfg1(), None).unwrap();
        let ang = complex_angle(&cd).unwrap();
        let r3 = 3f64.sqrt();
        assert!(close(ang.sin_theta, re(2.0 / r3), 1e-15));
        assert!(close(ang.cos_theta, c(0.0, -1.0 / r3), 1e-15));

        let cfg = DisplacementConfig::new(1e-12, 0.0).unwrap();
        let cd = complex_distance(Vec3::new(1.0, 1.0, 1.0), &cfg, None).unwrap();
        let ang = complex_angle(&cd).unwrap();
        assert!(close(ang.sin_theta, re(2f64.sqrt() / 3f64.sqrt()), 1e-11));
    }

    #[test]
    fn equatorial_frame() {
        let f = frame_triad(Vec3::new(2.0, 0.0, 0.0), &cfg1(), None).unwrap();
        let r3 = 3f64.sqrt();
        let expected = CVec3::new(re(2.0 / r3), re(0.0), c(0.0, -1.0 / r3));
        assert!((f.zeta_hat - expected).norm() < 1e-15);
        assert!(close(f.zeta_hat.square(), re(1.0), 1e-15));
    }

    #[test]
    fn frame_real_limit_is_spherical_basis() {
        let cfg = DisplacementConfig::new(1e-12, 0.0).unwrap();
        let x = Vec3::new(1.0, 1.0, 1.0);
        let f = frame_triad(x, &cfg, None).unwrap();
        let r = x.norm();
        let rho = 2f64.sqrt();
        let rhat = x / r;
        let (ct, st) = (x.z / r, rho / r);
        let theta_hat = Vec3::new(ct * x.x / rho, ct * x.y / rho, -st);
        let phi_hat = Vec3::new(-x.y / rho, x.x / rho, 0.0);
        assert!((f.zeta_hat - rhat.to_complex()).norm() < 1e-11);
        assert!((f.theta_hat - theta_hat.to_complex()).norm() < 1e-11);
        assert!((f.phi_hat - phi_hat.to_complex()).norm() < 1e-15);
    }

    #[test]
    fn frame_on_axis_rejected() {
        let err = frame_triad(Vec3::new(0.0, 0.0, 3.0), &cfg1(), None);
        assert!(matches!(err, Err(Error::OnAxis(_))));
    }

    #[test]
    fn classification() {
        let cfg = cfg1();
        assert_eq!(classify(Vec3::new(0.5, 0.0, 0.0), &cfg), RegionTag::OnDiskInterior);
        assert_eq!(classify(Vec3::new(1.0, 0.0, 0.0), &cfg), RegionTag::OnFocalCircle);
        assert_eq!(classify(Vec3::new(0.0, 0.0, 3.0), &cfg), RegionTag::OnAxis);
        assert_eq!(classify(Vec3::new(0.5, 0.0, 1e-4), &cfg), RegionTag::NearSingular);
        assert_eq!(classify(Vec3::new(1.2, 0.3, 0.9), &cfg), RegionTag::Exterior);
    }

    #[test]
    fn tilted_axis_matches_canonical() {
        let axis = Vec3::new(1.0, -2.0, 0.5);
        let a = axis.norm();
        let tilted = DisplacementConfig::with_axis(axis, 1.0).unwrap();
        let canon = DisplacementConfig::new(a, 1.0).unwrap();
        let x = Vec3::new(0.3, 1.7, -0.4);
        let cd_t = complex_distance(x, &tilted, None).unwrap();
        // ζ² = r² − a² − 2i a·x is frame independent
        let expect = c(x.norm_sqr() - a * a, -2.0 * axis.dot(&x));
        assert!((cd_t.zeta * cd_t.zeta - expect).norm() < 1e-12 * (x.norm_sqr() + a * a));
        // Rotating the point into the canonical frame gives the same ζ.
        let cd_c = complex_distance(tilted.to_local(x), &canon, None).unwrap();
        assert!(close(cd_t.zeta, cd_c.zeta, 1e-14));
        let f = frame_triad(x, &tilted, None).unwrap();
        let zh = (x.to_complex() - axis.to_complex() * c(0.0, 1.0)) / cd_t.zeta;
        assert!((f.zeta_hat - zh).norm() < 1e-14);
    }
}
