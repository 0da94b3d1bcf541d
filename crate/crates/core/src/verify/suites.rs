//! Randomized residual suites. Each suite draws points in the near zone,
//! evaluates one family of identities there, and reports normalized
//! residuals.
//!
//! Point `i` of a run is drawn from its own ChaCha stream `(seed, i)`, so a
//! report depends only on the seed and `n`, never on thread scheduling.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{kerr_congruence, ray_velocity};
use crate::energetics::densities;
use crate::error::{Error, Result};
use crate::fields::{e_field, b_field, f_pm, real_fields, Helicity};
use crate::geometry::{complex_distance, from_spheroidal, DisplacementConfig, LocalGeometry, Spheroidal};
use crate::potential::{constraint_residuals, vector_potential, GaugeParams};
use crate::pulse::PulseSpec;
use crate::scalar::{psi, WaveletParams};
use crate::vector::{c, CVec3, Point3, I};
use crate::verify::fd::{
    fd_box, fd_curl, fd_directional, fd_div, fd_dt, fd_grad, fd_laplacian, Fd, FdConfig, FieldFn, SingularSets,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// `□Ψ̃ = 0` off the disk.
    ScalarWave,
    /// `∇·Ã + ∂ₜΨ̃ = 0`.
    Lorenz,
    /// `□Ã = 0` off the disk and axis.
    CurrentFree,
    /// `∇·F̃± = 0`, `∇×F̃± = ±i∂ₜF̃±`, and the closed-form `Ẽ, B̃` against
    /// `−∇Ψ̃ − ∂ₜÃ`, `∇×Ã`.
    MaxwellComplex,
    /// The four defining equations of `w`.
    WConstraints,
    /// Gradients, curls, divergences and Laplacians of `ζ, ϑ, φ` and the
    /// frame vectors.
    FrameIdentities,
    /// `ζ̂·∇` annihilates `ϑ`, `ζ̂`, `ϑ̂`, `φ̂`.
    Theorem2,
    /// `F̃±² = 0` for `λ = ∓i`; `F̃±² = p±²g²/ζ⁴` in general.
    Nullity,
    /// Ray velocity equals the Kerr congruence and the energy velocity of the
    /// null field.
    CongruenceMatch,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::ScalarWave,
        Suite::Lorenz,
        Suite::CurrentFree,
        Suite::MaxwellComplex,
        Suite::WConstraints,
        Suite::FrameIdentities,
        Suite::Theorem2,
        Suite::Nullity,
        Suite::CongruenceMatch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ScalarWave => "scalar_wave",
            Suite::Lorenz => "lorenz",
            Suite::CurrentFree => "current_free",
            Suite::MaxwellComplex => "maxwell_complex",
            Suite::WConstraints => "w_constraints",
            Suite::FrameIdentities => "frame_identities",
            Suite::Theorem2 => "theorem2",
            Suite::Nullity => "nullity",
            Suite::CongruenceMatch => "congruence_match",
        }
    }

    /// Pass threshold on the largest residual. Finite-difference suites use
    /// the FD tolerance; closed-form suites are held to rounding level.
    pub fn tol(self, fd: &FdConfig) -> f64 {
        match self {
            Suite::Nullity => 1e-10,
            Suite::CongruenceMatch => 1e-12,
            _ => fd.tol,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// What to sample and how to differentiate.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub n: usize,
    pub seed: u64,
    pub wp: WaveletParams,
    pub fd: FdConfig,
}

impl SamplePlan {
    /// `a = 1`, `s = 1`, Gaussian pulse of duration `0.3`.
    pub fn new(n: usize, seed: u64) -> Self {
        let cfg = DisplacementConfig::new(1.0, 1.0).expect("unit disk");
        let pulse = PulseSpec::gaussian(0.3).expect("positive duration");
        Self { n, seed, wp: WaveletParams::new(cfg, pulse), fd: FdConfig::for_length(1.0) }
    }

    pub fn with_params(n: usize, seed: u64, wp: WaveletParams) -> Self {
        let fd = FdConfig::for_length(wp.cfg.a());
        Self { n, seed, wp, fd }
    }
}

/// One random spacetime point with random constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub x: Point3,
    pub t: f64,
    /// Components uniform on `[−1, 1]`.
    pub gp: GaugeParams,
    pub helicity: Helicity,
}

/// Smallest cylindrical radius sampled, in units of `a`.
pub const MIN_RHO: f64 = 1e-2;

/// Draws point `index` of the plan: `ξ ∈ [0.2a, 5a]`, `|η| ≤ 0.95a`, any
/// azimuth, `ρ ≥ 10⁻²a`, and `t = ξ + d·U(−3, 3)` so the pulse peak is near.
pub fn sample_point(plan: &SamplePlan, index: u64) -> SamplePoint {
    let cfg = &plan.wp.cfg;
    let a = cfg.a();
    let d = plan.wp.pulse.duration();
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    rng.set_stream(index);
    let (x, xi) = loop {
        let xi = a * rng.gen_range(0.2..=5.0);
        let eta = a * rng.gen_range(-0.95..=0.95);
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        let x = from_spheroidal(Spheroidal { xi, eta, phi }, cfg).expect("exterior spheroidal point");
        let p = cfg.to_local(x);
        if p.x.hypot(p.y) >= MIN_RHO * a {
            break (x, xi);
        }
    };
    let t = xi + d * rng.gen_range(-3.0..=3.0);
    let mut cz = || c(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
    let gp = GaugeParams::new(cz(), cz(), cz());
    let helicity = if rng.gen_bool(0.5) { Helicity::Plus } else { Helicity::Minus };
    SamplePoint { x, t, gp, helicity }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub n: usize,
    pub tol: f64,
    pub max_residual: f64,
    pub median_residual: f64,
    pub pass: bool,
    /// `[x, y, z, t]` of the largest residual.
    pub worst_point: [f64; 4],
    /// Per-point residuals in sample order; infinite where evaluation failed.
    #[serde(skip)]
    pub residuals: Vec<f64>,
}

/// Runs `suite` over the plan on the current rayon pool.
pub fn run_suite(suite: Suite, plan: &SamplePlan) -> SuiteReport {
    let residuals: Vec<(f64, SamplePoint)> = (0..plan.n as u64)
        .into_par_iter()
        .map(|i| {
            let p = sample_point(plan, i);
            (point_residual(suite, plan, &p).unwrap_or(f64::INFINITY), p)
        })
        .collect();
    let tol = suite.tol(&plan.fd);
    let mut worst = (f64::NEG_INFINITY, [f64::NAN; 4]);
    for (r, p) in &residuals {
        // NaN counts as worst so it cannot hide.
        if r.is_nan() || *r > worst.0 {
            worst = (if r.is_nan() { f64::INFINITY } else { *r }, [p.x.x, p.x.y, p.x.z, p.t]);
        }
    }
    let residuals: Vec<f64> = residuals.into_iter().map(|(r, _)| if r.is_nan() { f64::INFINITY } else { r }).collect();
    let mut sorted = residuals.clone();
    sorted.sort_by(f64::total_cmp);
    let median = match sorted.len() {
        0 => 0.0,
        n if n % 2 == 1 => sorted[n / 2],
        n => 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]),
    };
    let max = if residuals.is_empty() { 0.0 } else { worst.0 };
    SuiteReport {
        suite: suite.name().to_string(),
        seed: plan.seed,
        n: plan.n,
        tol,
        max_residual: max,
        median_residual: median,
        pass: max <= tol,
        worst_point: worst.1,
        residuals,
    }
}

/// `|diff| / max(|exact|, scale/aᵏ)`.
fn normalized(diff: f64, exact: f64, scale: f64, a: f64, k: i32) -> f64 {
    diff / exact.max(scale / a.powi(k))
}

/// Residual of `suite` at one point.
pub fn point_residual(suite: Suite, plan: &SamplePlan, p: &SamplePoint) -> Result<f64> {
    match suite {
        Suite::ScalarWave => scalar_wave(plan, p),
        Suite::Lorenz => lorenz(plan, p),
        Suite::CurrentFree => current_free(plan, p),
        Suite::MaxwellComplex => maxwell_complex(plan, p),
        Suite::WConstraints => Ok(constraint_residuals(p.x, &plan.wp.cfg, &p.gp, &plan.fd)?.max()),
        Suite::FrameIdentities => frame_identities(plan, p),
        Suite::Theorem2 => theorem2(plan, p),
        Suite::Nullity => nullity(plan, p),
        Suite::CongruenceMatch => congruence_match(plan, p),
    }
}

fn scalar_wave(plan: &SamplePlan, p: &SamplePoint) -> Result<f64> {
    let wp = &plan.wp;
    let f = FieldFn::new(wp.cfg, SingularSets::DISK, |y, t| psi(y, t, wp, None));
    let b = fd_box(&f, p.x, p.t, &plan.fd)?;
    Ok(normalized(b.value.norm(), 0.0, b.scale, wp.cfg.a(), 2))
}

fn lorenz(plan: &SamplePlan, p: &SamplePoint) -> Result<f64> {
    let wp = &plan.wp;
    let gp = p.gp;
    let pot = FieldFn::new(wp.cfg, SingularSets::ALL, move |y, t| vector_potential(y, t, wp, &gp, None));
    let scalar = FieldFn::new(wp.cfg, SingularSets::DISK, |y, t| psi(y, t, wp, None));
    let div = fd_div(&pot, p.x, p.t, &plan.fd)?;
    let dt = fd_dt(&scalar, p.x, p.t, &plan.fd)?;
    Ok(normalized((div.value + dt.value).norm(), 0.0, div.scale.max(dt.scale), wp.cfg.a(), 1))
}

fn current_free(plan: &SamplePlan, p: &SamplePoint) -> Result<f64> {
    let wp = &plan.wp;
    let gp = p.gp;
    let pot = FieldFn::new(wp.cfg, SingularSets::ALL, move |y, t| vector_potential(y, t, wp, &gp, None));
    let b = fd_box(&pot, p.x, p.t, &plan.fd)?;
    Ok(normalized(b.value.norm(), 0.0, b.scale, wp.cfg.a(), 2))
}

fn maxwell_complex(plan: &SamplePlan, p: &SamplePoint) -> Result<f64> {
    let wp = &plan.wp;
    let (gp, h, a, fd) = (p.gp, p.helicity, wp.cfg.a(), &plan.fd);
    let f = FieldFn::new(wp.cfg, SingularSets::ALL, move |y, t| {
        let (fp, fm) = f_pm(y, t, wp, &gp, None)?;
        Ok(match h {
            Helicity::Plus => fp,
            Helicity::Minus => fm,
        })
    });
    let div = fd_div(&f, p.x, p.t, fd)?;
    let curl = fd_curl(&f, p.x, p.t, fd)?;
    let dt = fd_dt(&f, p.x, p.t, fd)?;
    let r_div = normalized(div.value.norm(), 0.0, div.scale, a, 1);
    let r_curl = normalized((curl.value - dt.value * (I * h.sign())).norm(), 0.0, curl.scale.max(dt.scale), a, 1);

    let pot = FieldFn::new(wp.cfg, SingularSets::ALL, move |y, t| vector_potential(y, t, wp, &gp, None));
    let scalar = FieldFn::new(wp.cfg, SingularSets::DISK, |y, t| psi(y, t, wp, None));
    let grad = fd_grad(&scalar, p.x, p.t, fd)?;
    let a_dt = fd_dt(&pot, p.x, p.t, fd)?;
    let a_curl = fd_curl(&pot, p.x, p.t, fd)?;
    let e = e_field(p.x, p.t, wp, &gp, None)?;
    let b = b_field(p.x, p.t, wp, &gp, None)?;
    let r_e = normalized((e + grad.value + a_dt.value).norm(), e.norm(), grad.scale.max(a_dt.scale), a, 1);
    let r_b = normalized((b - a_curl.value).norm(), b.norm(), a_curl.scale, a, 1);
    Ok(r_div.max(r_curl).max(r_e).max(r_b))
}

/// The frame and angles in the world frame.
struct Frame {
    zeta: Complex64,
    rho: f64,
    /// `e^{iϑ}`
    e_theta: Complex64,
    theta: Complex64,
    phi: f64,
    cos_t: Complex64,
    sin_t: Complex64,
    zeta_hat: CVec3,
    theta_hat: CVec3,
    phi_hat: CVec3,
}

fn frame(y: Point3, cfg: &DisplacementConfig) -> Result<Frame> {
    let lg = LocalGeometry::new(y, cfg, None, true)?;
    let (sin_t, cos_t) = (lg.angle.sin_theta, lg.angle.cos_theta);
    Ok(Frame {
        zeta: lg.cd.zeta,
        rho: lg.cd.rho,
        e_theta: cos_t + I * sin_t,
        theta: lg.angle.theta(),
        phi: lg.cd.phi(),
        cos_t,
        sin_t,
        zeta_hat: cfg.to_world_c(lg.zeta_hat),
        theta_hat: cfg.to_world_c(lg.theta_hat),
        phi_hat: cfg.to_world(lg.phi_hat).to_complex(),
    })
}

/// `ϑ` continued from its value at `x0`, so stencils never straddle a branch
/// cut of the logarithm.
fn theta_field<'a>(cfg: &'a DisplacementConfig, x0: &Frame) -> FieldFn<'a, Complex64> {
    let (t0, e0) = (x0.theta, x0.e_theta);
    FieldFn::new(*cfg, SingularSets::ALL, move |y, _| {
        let f = frame(y, cfg)?;
        Ok(t0 - I * (f.e_theta / e0).ln())
    })
}

/// Azimuth continued from its value at `x0`.
fn phi_field<'a>(cfg: &'a DisplacementConfig, x0: &Frame) -> FieldFn<'a, Complex64> {
    let phi0 = x0.phi;
    FieldFn::new(*cfg, SingularSets::ALL, move |y, _| {
        let dphi = frame(y, cfg)?.phi - phi0;
        Ok(c(phi0 + (dphi + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI, 0.0))
    })
}

fn vec_field<'a>(cfg: &'a DisplacementConfig, pick: fn(&Frame) -> CVec3) -> FieldFn<'a, CVec3> {
    FieldFn::new(*cfg, SingularSets::ALL, move |y, _| Ok(pick(&frame(y, cfg)?)))
}

/// Angle-valued fields are normalized against at least one radian.
fn angle_scale<T>(fd: &Fd<T>) -> f64 {
    fd.scale.max(1.0)
}

fn frame_identities(plan: &SamplePlan, p: &SamplePoint) -> Result<f64> {
    let cfg = &plan.wp.cfg;
    let (a, fd, x) = (cfg.a(), &plan.fd, p.x);
    let f0 = frame(x, cfg)?;
    let z_axis = cfg.axis().to_complex();
    let (zeta, rho) = (f0.zeta, f0.rho);
    let mut worst: f64 = 0.0;
    let mut vec_check = |got: &Fd<CVec3>, exact: CVec3, k: i32, angle: bool| {
        let scale = if angle { angle_scale(got) } else { got.scale };
        worst = worst.max(normalized((got.value - exact).norm(), exact.norm(), scale, a, k));
    };

    let zeta_f = FieldFn::new(*cfg, SingularSets::DISK, |y, _| Ok(complex_distance(y, cfg, None)?.zeta));
    let theta_f = theta_field(cfg, &f0);
    let phi_f = phi_field(cfg, &f0);
    let zh = vec_field(cfg, |f| f.zeta_hat);
    let th = vec_field(cfg, |f| f.theta_hat);
    let ph = vec_field(cfg, |f| f.phi_hat);

    // Row ζ
    vec_check(&fd_grad(&zeta_f, x, 0.0, fd)?, f0.zeta_hat, 1, false);
    vec_check(&fd_curl(&zh, x, 0.0, fd)?, CVec3::ZERO, 1, false);
    vec_check(&fd_laplacian(&zh, x, 0.0, fd)?, f0.zeta_hat * (-2.0 / (zeta * zeta)), 2, false);
    // Row ϑ
    vec_check(&fd_grad(&theta_f, x, 0.0, fd)?, f0.theta_hat / zeta, 1, true);
    vec_check(&fd_curl(&th, x, 0.0, fd)?, f0.phi_hat / zeta, 1, false);
    let lap_th = f0.theta_hat + f0.zeta_hat * (2.0 * f0.sin_t * f0.cos_t);
    vec_check(&fd_laplacian(&th, x, 0.0, fd)?, lap_th * (-1.0 / (rho * rho)), 2, false);
    // Row φ
    vec_check(&fd_grad(&phi_f, x, 0.0, fd)?, f0.phi_hat / rho, 1, true);
    vec_check(&fd_curl(&ph, x, 0.0, fd)?, z_axis / rho, 1, false);
    vec_check(&fd_laplacian(&ph, x, 0.0, fd)?, f0.phi_hat * (-1.0 / (rho * rho)), 2, false);

    let mut scalar_check = |got: Fd<Complex64>, exact: Complex64, k: i32, angle: bool| {
        let scale = if angle { angle_scale(&got) } else { got.scale };
        worst = worst.max(normalized((got.value - exact).norm(), exact.norm(), scale, a, k));
    };
    scalar_check(fd_div(&zh, x, 0.0, fd)?, 2.0 / zeta, 1, false);
    scalar_check(fd_laplacian(&zeta_f, x, 0.0, fd)?, 2.0 / zeta, 2, false);
    scalar_check(fd_div(&th, x, 0.0, fd)?, f0.cos_t / rho, 1, false);
    scalar_check(fd_laplacian(&theta_f, x, 0.0, fd)?, f0.cos_t / f0.sin_t / (zeta * zeta), 2, true);
    scalar_check(fd_div(&ph, x, 0.0, fd)?, c(0.0, 0.0), 1, false);
    scalar_check(fd_laplacian(&phi_f, x, 0.0, fd)?, c(0.0, 0.0), 2, true);
    Ok(worst)
}

fn theorem2(plan: &SamplePlan, p: &SamplePoint) -> Result<f64> {
    let cfg = &plan.wp.cfg;
    let (a, fd, x) = (cfg.a(), &plan.fd, p.x);
    let f0 = frame(x, cfg)?;
    let u = f0.zeta_hat;
    let theta = fd_directional(&theta_field(cfg, &f0), &u, x, 0.0, fd)?;
    let mut worst = normalized(theta.value.norm(), 0.0, angle_scale(&theta), a, 1);
    for pick in [|f: &Frame| f.zeta_hat, |f: &Frame| f.theta_hat, |f: &Frame| f.phi_hat] {
        let d = fd_directional(&vec_field(cfg, pick), &u, x, 0.0, fd)?;
        worst = worst.max(normalized(d.value.norm(), 0.0, d.scale, a, 1));
    }
    Ok(worst)
}

fn nullity(plan: &SamplePlan, p: &SamplePoint) -> Result<f64> {
    let wp = &plan.wp;
    let h = p.helicity;
    let null = GaugeParams::null(h, p.gp.kappa, p.gp.mu);
    let (fp, fm) = f_pm(p.x, p.t, wp, &null, None)?;
    let f = if h == Helicity::Plus { fp } else { fm };
    let mut worst = f.square().norm() / f.norm_sqr();
    let d = densities(real_fields(&f, h).e, real_fields(&f, h).b)?;
    worst = worst.max(d.inertia / d.u);

    let cd = complex_distance(p.x, &wp.cfg, None)?;
    let [g, ..] = wp.signal(&cd, p.t)?;
    let z4 = cd.zeta * cd.zeta * cd.zeta * cd.zeta;
    let (fp, fm) = f_pm(p.x, p.t, wp, &p.gp, None)?;
    for (hh, f) in [(Helicity::Plus, fp), (Helicity::Minus, fm)] {
        let pp = p.gp.p(hh);
        let exact = pp * pp * g * g / z4;
        worst = worst.max((f.square() - exact).norm() / f.norm_sqr().max(exact.norm()));
    }
    Ok(worst)
}

fn congruence_match(plan: &SamplePlan, p: &SamplePoint) -> Result<f64> {
    let wp = &plan.wp;
    let h = p.helicity;
    let u = ray_velocity(p.x, &wp.cfg, h, None)?;
    let k = kerr_congruence(p.x, &wp.cfg, h, None)?;
    let null = GaugeParams::null(h, p.gp.kappa, p.gp.mu);
    let (fp, fm) = f_pm(p.x, p.t, wp, &null, None)?;
    let pair = real_fields(if h == Helicity::Plus { &fp } else { &fm }, h);
    let v = densities(pair.e, pair.b)?.v;
    Ok((u - k).norm().max((v - u).norm()))
}
