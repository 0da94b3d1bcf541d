//! Central finite differences over complex scalar and vector fields.
//!
//! These are oracles: every closed form in the crate is checked against
//! them, never the other way round. Each result carries the largest field
//! magnitude seen on the stencil so residuals can be normalized locally.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{distance_to_singular_sets, DisplacementConfig, TOL_GUARD};
use crate::vector::{c, CVec3, Point3, Vec3};

/// Values a stencil can combine.
pub trait FdValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(&self) -> f64;
    fn zero() -> Self;
}

impl FdValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn zero() -> Self {
        c(0.0, 0.0)
    }
}

impl FdValue for CVec3 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn zero() -> Self {
        CVec3::ZERO
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    Three,
    Five,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    pub h: f64,
    pub stencil: Stencil,
    pub richardson: bool,
    pub tol: f64,
}

impl FdConfig {
    /// `h = 1e-4·a`, five-point, no extrapolation, tolerance 1e-5.
    pub fn for_length(a: f64) -> Self {
        Self { h: 1e-4 * a, stencil: Stencil::Five, richardson: false, tol: 1e-5 }
    }

    fn check(&self, a: f64) -> Result<()> {
        if !(self.h > 0.0 && self.h <= TOL_GUARD * a / 10.0 * (1.0 + 1e-12)) {
            return Err(Error::DomainError(format!(
                "finite-difference step {} must lie in (0, {}]",
                self.h,
                TOL_GUARD * a / 10.0
            )));
        }
        Ok(())
    }
}

/// Which singular sets of the field the stencil must stay clear of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularSets {
    pub disk: bool,
    pub circle: bool,
    pub axis: bool,
}

impl SingularSets {
    pub const NONE: Self = Self { disk: false, circle: false, axis: false };
    /// Disk and rim: scalar wavelet, Newman field.
    pub const DISK: Self = Self { disk: true, circle: true, axis: false };
    /// Disk, rim and axis: anything built on `φ̂` or `1/ρ`.
    pub const ALL: Self = Self { disk: true, circle: true, axis: true };
}

/// An evaluator `(x, t) → T` together with where it is singular.
pub struct FieldFn<'a, T> {
    eval: Box<dyn Fn(Point3, f64) -> Result<T> + Sync + 'a>,
    pub cfg: DisplacementConfig,
    pub sets: SingularSets,
}

impl<'a, T> FieldFn<'a, T> {
    pub fn new(cfg: DisplacementConfig, sets: SingularSets, f: impl Fn(Point3, f64) -> Result<T> + Sync + 'a) -> Self {
        Self { eval: Box::new(f), cfg, sets }
    }

    pub fn eval(&self, x: Point3, t: f64) -> Result<T> {
        (self.eval)(x, t)
    }

    fn guard(&self, x: Point3) -> Result<()> {
        let (disk, circle, axis) = distance_to_singular_sets(x, &self.cfg);
        let g = TOL_GUARD * self.cfg.a();
        let clip = |on: bool, dist: f64, name: &str| -> Result<()> {
            if on && dist < g {
                Err(Error::StencilClipsSingularSet(format!("{name} at distance {dist:e}")))
            } else {
                Ok(())
            }
        };
        clip(self.sets.disk, disk, "branch disk")?;
        clip(self.sets.circle, circle, "focal circle")?;
        clip(self.sets.axis, axis, "axis")
    }
}

/// A difference-quotient result with the stencil's field scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fd<T> {
    pub value: T,
    /// Largest `|f|` over every stencil point used.
    pub scale: f64,
}

/// Axis 0..3 are x, y, z; 3 is t.
fn shifted(x: Point3, t: f64, axis: usize, d: f64) -> (Point3, f64) {
    match axis {
        0 => (x + Vec3::X * d, t),
        1 => (x + Vec3::Y * d, t),
        2 => (x + Vec3::Z * d, t),
        _ => (x, t + d),
    }
}

/// First and second derivative along one axis at step `h`, no extrapolation.
fn raw<T: FdValue>(f: &FieldFn<T>, x: Point3, t: f64, axis: usize, h: f64, st: Stencil, f0: T) -> Result<(T, T, f64)> {
    let at = |k: f64| -> Result<T> {
        let (y, s) = shifted(x, t, axis, k * h);
        f.eval(y, s)
    };
    let (fp, fm) = (at(1.0)?, at(-1.0)?);
    let mut scale = fp.magnitude().max(fm.magnitude());
    let (d1, d2) = match st {
        Stencil::Three => ((fp - fm) * (0.5 / h), (fp + fm - f0 * 2.0) * (1.0 / (h * h))),
        Stencil::Five => {
            let (fpp, fmm) = (at(2.0)?, at(-2.0)?);
            scale = scale.max(fpp.magnitude()).max(fmm.magnitude());
            let d1 = ((fp - fm) * 8.0 - (fpp - fmm)) * (1.0 / (12.0 * h));
            let d2 = ((fp + fm) * 16.0 - (fpp + fmm) - f0 * 30.0) * (1.0 / (12.0 * h * h));
            (d1, d2)
        }
    };
    Ok((d1, d2, scale))
}

/// `(∂f, ∂²f, scale)` along one axis, with optional Richardson step.
fn axis_derivs<T: FdValue>(f: &FieldFn<T>, x: Point3, t: f64, axis: usize, fd: &FdConfig, f0: T) -> Result<(T, T, f64)> {
    let (d1, d2, s) = raw(f, x, t, axis, fd.h, fd.stencil, f0)?;
    if !fd.richardson {
        return Ok((d1, d2, s));
    }
    let (e1, e2, s2) = raw(f, x, t, axis, fd.h / 2.0, fd.stencil, f0)?;
    let k = match fd.stencil {
        Stencil::Three => 4.0,
        Stencil::Five => 16.0,
    };
    let ext = |fine: T, coarse: T| (fine * k - coarse) * (1.0 / (k - 1.0));
    Ok((ext(e1, d1), ext(e2, d2), s.max(s2)))
}

fn prepare<T: FdValue>(f: &FieldFn<T>, x: Point3, t: f64, fd: &FdConfig, axes: &[usize]) -> Result<T> {
    fd.check(f.cfg.a())?;
    f.guard(x)?;
    // The farthest stencil point must also be clear of the singular sets.
    let reach = match fd.stencil {
        Stencil::Three => fd.h,
        Stencil::Five => 2.0 * fd.h,
    };
    for &ax in axes.iter().filter(|&&ax| ax < 3) {
        for sgn in [-1.0, 1.0] {
            f.guard(shifted(x, t, ax, sgn * reach).0)?;
        }
    }
    f.eval(x, t)
}

/// Partial derivatives `[∂ₓf, ∂ᵧf, ∂𝓏f]`.
pub fn fd_partials<T: FdValue>(f: &FieldFn<T>, x: Point3, t: f64, fd: &FdConfig) -> Result<Fd<[T; 3]>> {
    let f0 = prepare(f, x, t, fd, &[0, 1, 2])?;
    let mut scale = f0.magnitude();
    let mut out = [T::zero(); 3];
    for (axis, slot) in out.iter_mut().enumerate() {
        let (d1, _, s) = axis_derivs(f, x, t, axis, fd, f0)?;
        *slot = d1;
        scale = scale.max(s);
    }
    Ok(Fd { value: out, scale })
}

pub fn fd_grad(f: &FieldFn<Complex64>, x: Point3, t: f64, fd: &FdConfig) -> Result<Fd<CVec3>> {
    let p = fd_partials(f, x, t, fd)?;
    Ok(Fd { value: CVec3::new(p.value[0], p.value[1], p.value[2]), scale: p.scale })
}

pub fn fd_div(f: &FieldFn<CVec3>, x: Point3, t: f64, fd: &FdConfig) -> Result<Fd<Complex64>> {
    let p = fd_partials(f, x, t, fd)?;
    let [dx, dy, dz] = p.value;
    Ok(Fd { value: dx.x + dy.y + dz.z, scale: p.scale })
}

pub fn fd_curl(f: &FieldFn<CVec3>, x: Point3, t: f64, fd: &FdConfig) -> Result<Fd<CVec3>> {
    let p = fd_partials(f, x, t, fd)?;
    let [dx, dy, dz] = p.value;
    Ok(Fd { value: CVec3::new(dy.z - dz.y, dz.x - dx.z, dx.y - dy.x), scale: p.scale })
}

/// Directional derivative `u·∇f` along a complex direction.
pub fn fd_directional<T: FdValue + Mul<Complex64, Output = T>>(
    f: &FieldFn<T>,
    u: &CVec3,
    x: Point3,
    t: f64,
    fd: &FdConfig,
) -> Result<Fd<T>> {
    let p = fd_partials(f, x, t, fd)?;
    let [dx, dy, dz] = p.value;
    Ok(Fd { value: dx * u.x + dy * u.y + dz * u.z, scale: p.scale })
}

/// Cartesian Laplacian, component-wise for vectors.
pub fn fd_laplacian<T: FdValue>(f: &FieldFn<T>, x: Point3, t: f64, fd: &FdConfig) -> Result<Fd<T>> {
    let f0 = prepare(f, x, t, fd, &[0, 1, 2])?;
    let mut scale = f0.magnitude();
    let mut acc = T::zero();
    for axis in 0..3 {
        let (_, d2, s) = axis_derivs(f, x, t, axis, fd, f0)?;
        acc = acc + d2;
        scale = scale.max(s);
    }
    Ok(Fd { value: acc, scale })
}

pub fn fd_dt<T: FdValue>(f: &FieldFn<T>, x: Point3, t: f64, fd: &FdConfig) -> Result<Fd<T>> {
    let f0 = prepare(f, x, t, fd, &[3])?;
    let (d1, _, s) = axis_derivs(f, x, t, 3, fd, f0)?;
    Ok(Fd { value: d1, scale: s.max(f0.magnitude()) })
}

pub fn fd_dt2<T: FdValue>(f: &FieldFn<T>, x: Point3, t: f64, fd: &FdConfig) -> Result<Fd<T>> {
    let f0 = prepare(f, x, t, fd, &[3])?;
    let (_, d2, s) = axis_derivs(f, x, t, 3, fd, f0)?;
    Ok(Fd { value: d2, scale: s.max(f0.magnitude()) })
}

/// `□f = ∂ₜ²f − Δf`.
pub fn fd_box<T: FdValue>(f: &FieldFn<T>, x: Point3, t: f64, fd: &FdConfig) -> Result<Fd<T>> {
    let f0 = prepare(f, x, t, fd, &[0, 1, 2, 3])?;
    let mut scale = f0.magnitude();
    let (_, dtt, s) = axis_derivs(f, x, t, 3, fd, f0)?;
    scale = scale.max(s);
    let mut lap = T::zero();
    for axis in 0..3 {
        let (_, d2, s) = axis_derivs(f, x, t, axis, fd, f0)?;
        lap = lap + d2;
        scale = scale.max(s);
    }
    Ok(Fd { value: dtt - lap, scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::I;

    // A wide step isolates the stencil algebra from roundoff; the large
    // length scale keeps it inside the guard-band bound.
    fn wide() -> (DisplacementConfig, FdConfig) {
        let cfg = DisplacementConfig::new(100.0, 1.0).unwrap();
        (cfg, FdConfig { h: 1e-2, ..FdConfig::for_length(100.0) })
    }

    #[test]
    fn exact_on_quadratics() {
        let (cfg, base) = wide();
        let f = FieldFn::new(cfg, SingularSets::NONE, |x: Point3, t: f64| {
            Ok(c(x.norm_sqr() + 3.0 * x.x * x.y - 2.0 * t * x.z + t * t, 0.5 * x.y))
        });
        let x = Vec3::new(0.3, -1.2, 0.8);
        let t = 0.6;
        for st in [Stencil::Three, Stencil::Five] {
            for richardson in [false, true] {
                let fd = FdConfig { stencil: st, richardson, ..base };
                let g = fd_grad(&f, x, t, &fd).unwrap().value;
                let expect = CVec3::new(
                    c(2.0 * x.x + 3.0 * x.y, 0.0),
                    c(2.0 * x.y + 3.0 * x.x, 0.5),
                    c(2.0 * x.z - 2.0 * t, 0.0),
                );
                assert!((g - expect).norm() < 1e-8);
                assert!((fd_laplacian(&f, x, t, &fd).unwrap().value - 6.0).norm() < 1e-8);
                assert!((fd_dt(&f, x, t, &fd).unwrap().value - (2.0 * t - 2.0 * x.z)).norm() < 1e-8);
                assert!((fd_box(&f, x, t, &fd).unwrap().value - (2.0 - 6.0)).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn exact_on_plane_waves() {
        let (cfg, base) = wide();
        let k = Vec3::new(0.3, -0.4, 1.2);
        let w = k.norm();
        let f = FieldFn::new(cfg, SingularSets::NONE, move |x: Point3, t: f64| {
            let e = (I * (k.dot(&x) - w * t)).exp();
            Ok(CVec3::new(e, e * 2.0, c(0.0, 0.0)))
        });
        let x = Vec3::new(0.1, 0.2, 0.3);
        let fd = FdConfig { richardson: true, ..base };
        let v = f.eval(x, 0.0).unwrap();
        // a vacuum plane wave satisfies □ = 0
        assert!(fd_box(&f, x, 0.0, &fd).unwrap().value.norm() < 1e-8);
        let lap = fd_laplacian(&f, x, 0.0, &fd).unwrap().value;
        assert!((lap + v * (w * w)).norm() < 1e-8);
        let div = fd_div(&f, x, 0.0, &fd).unwrap().value;
        assert!((div - I * (k.x * v.x + k.y * v.y)).norm() < 1e-8);
        let curl = fd_curl(&f, x, 0.0, &fd).unwrap().value;
        assert!((curl - k.to_complex().cross(&v) * I).norm() < 1e-8);
        let dt = fd_dt(&f, x, 0.0, &fd).unwrap().value;
        assert!((dt + v * (I * w)).norm() < 1e-8);
    }

    #[test]
    fn stencil_refuses_singular_sets() {
        let cfg = DisplacementConfig::new(1.0, 1.0).unwrap();
        let f = FieldFn::new(cfg, SingularSets::ALL, |_: Point3, _: f64| Ok(c(1.0, 0.0)));
        let fd = FdConfig::for_length(1.0);
        for x in [Vec3::new(0.5, 0.0, 5e-4), Vec3::new(1.0005, 0.0, 0.0), Vec3::new(0.0, 2e-4, 3.0)] {
            assert!(matches!(fd_grad(&f, x, 0.0, &fd), Err(Error::StencilClipsSingularSet(_))));
        }
        let coarse = FdConfig { h: 1e-3, ..fd };
        assert!(matches!(fd_grad(&f, Vec3::new(2.0, 1.0, 1.0), 0.0, &coarse), Err(Error::DomainError(_))));
    }
}
