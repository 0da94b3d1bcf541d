//! Energy, momentum and inertia densities, real and complex.
//!
//! Real: `u = ½(E² + B²)`, `S = E × B`, inertia `I = √(u² − S²)`,
//! flow velocity `v = S/u`. `I = 0` exactly when the field is null.
//!
//! Complex: `ũ = ½(Ẽ² + B̃²)`, `S̃ = Ẽ × B̃`, both unconjugated. For a null
//! helicity-± field the complex velocity `ṽ = S̃/ũ` is a complex unit
//! vector, and its twist is nonzero off the axis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fields::{e_b_local, Helicity};
use crate::geometry::{LocalGeometry, Side};
use crate::potential::{GaugeParams, GAUGE_TOL};
use crate::pulse::PULSE_NODE_REL;
use crate::scalar::WaveletParams;
use crate::vector::{CVec3, Point3, Vec3, I};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySample {
    pub u: f64,
    /// Poynting vector.
    pub s: Vec3,
    /// Momentum density; equal to `S` with `c = 1`.
    pub g_mom: Vec3,
    pub inertia: f64,
    pub v: Vec3,
}

/// Inertia from the invariants: `½√((E² − B²)² + 4(E·B)²)`.
pub fn inertia_from_invariants(e: Vec3, b: Vec3) -> f64 {
    0.5 * (e.norm_sqr() - b.norm_sqr()).hypot(2.0 * e.dot(&b))
}

pub fn densities(e: Vec3, b: Vec3) -> Result<DensitySample> {
    let u = 0.5 * (e.norm_sqr() + b.norm_sqr());
    if u == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let s = e.cross(&b);
    Ok(DensitySample { u, s, g_mom: s, inertia: inertia_from_invariants(e, b), v: s / u })
}

/// Inertia via `√(u² − S²)`, clamped at zero; compare with
/// [`inertia_from_invariants`].
pub fn inertia_from_flux(d: &DensitySample) -> f64 {
    ((d.u - d.s.norm()) * (d.u + d.s.norm())).max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexDensitySample {
    pub u_tilde: Complex64,
    pub s_tilde: CVec3,
    /// `S̃/ũ`; `None` where `ũ = 0`.
    pub v_tilde: Option<CVec3>,
}

pub fn complex_densities(e: &CVec3, b: &CVec3) -> ComplexDensitySample {
    let u_tilde = 0.5 * (e.square() + b.square());
    let s_tilde = e.cross(b);
    let v_tilde = (u_tilde.norm() > 0.0).then(|| s_tilde / u_tilde);
    ComplexDensitySample { u_tilde, s_tilde, v_tilde }
}

/// `(ũ, S̃)` of the potential's fields directly from the frame components,
/// world frame:
///
/// ```text
/// ũ = ½(1 + λ²) g²/ζ⁴ + (L² + M²) g'²/ρ²
/// S̃ = (L² + M²)(g'²/ρ²) ζ̂ + (gg'/(ζ²ρ)) [(L + λM) ϑ̂ + (M − λL) φ̂]
/// ```
pub fn complex_densities_closed_form(
    x: Point3,
    t: f64,
    wp: &WaveletParams,
    gp: &GaugeParams,
    side: Option<Side>,
) -> Result<(Complex64, CVec3)> {
    let lg = LocalGeometry::new(x, &wp.cfg, side, true)?;
    let [g, g1, _] = wp.signal(&lg.cd, t)?;
    let cos_t = lg.angle.cos_theta;
    let l = cos_t + gp.kappa;
    let m = gp.lambda * cos_t + gp.mu;
    let z2 = lg.cd.zeta * lg.cd.zeta;
    let rho = lg.cd.rho;
    let trans = (l * l + m * m) * g1 * g1 / (rho * rho);
    let u = 0.5 * (1.0 + gp.lambda * gp.lambda) * g * g / (z2 * z2) + trans;
    let k = g * g1 / (z2 * rho);
    let s = lg.zeta_hat * trans + lg.theta_hat * (k * (l + gp.lambda * m)) + lg.phi_hat.to_complex() * (k * (m - gp.lambda * l));
    Ok((u, wp.cfg.to_world_c(s)))
}

/// Complex congruence data of a null field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexVelocity {
    /// `ṽ = S̃/ũ`, a complex unit vector.
    pub v_tilde: CVec3,
    /// The complex time `h` in `ṽ = ζ̂ − (ρ/ζ²) h φ̃±`.
    pub h: Complex64,
    /// Coefficient of `dτ_ζ ∧ dϑ ∧ dφ` in `ṽ ∧ dṽ`.
    pub twist: Complex64,
    pub helicity: Helicity,
}

/// Complex velocity, `h` and twist of the helicity-± field for
/// `λ = ∓i`.
///
/// With `D = q∓ − 2 cos ϑ` and `G = g/g'`,
///
/// ```text
/// ũ = q± D g'²/ρ²,   ṽ = ζ̂ − (ρ/ζ²)(G/D) φ̃±,   h = G/D,
/// twist = ±i(h sin 2ϑ + sin²ϑ ∂ϑh) = ±2iG sin ϑ (q∓ cos ϑ − cos²ϑ − 1)/D².
/// ```
pub fn complex_velocity(
    x: Point3,
    t: f64,
    wp: &WaveletParams,
    gp: &GaugeParams,
    side: Option<Side>,
) -> Result<ComplexVelocity> {
    let h = gp
        .null_helicity()
        .ok_or_else(|| Error::DegenerateGauge(format!("lambda = {} is not -i or +i", gp.lambda)))?;
    let s = h.sign();
    if gp.q(h).norm() <= GAUGE_TOL * (1.0 + gp.mu.norm()) {
        return Err(Error::DegenerateGauge("pure gauge: the field and its energy vanish identically".into()));
    }
    let lg = LocalGeometry::new(x, &wp.cfg, side, true)?;
    let tau = wp.retarded_time(&lg.cd, t);
    let [g, g1, _] = wp.pulse.derivs(tau)?;
    let peak = wp.pulse.derivative_peak(tau.im)?;
    if g1.norm() < PULSE_NODE_REL * peak {
        return Err(Error::PulseNode(g1.norm()));
    }
    let q_op = gp.q(h.opposite());
    let cos_t = lg.angle.cos_theta;
    let sin_t = lg.angle.sin_theta;
    let d = q_op - 2.0 * cos_t;
    if d.norm() <= GAUGE_TOL * (1.0 + q_op.norm()) {
        return Err(Error::DegenerateGauge("energy density vanishes at this point".into()));
    }
    let big_g = g / g1;
    let hh = big_g / d;
    let phi_t = lg.theta_hat + lg.phi_hat.to_complex() * (I * s);
    let v = lg.zeta_hat - phi_t * (lg.cd.rho / (lg.cd.zeta * lg.cd.zeta) * hh);
    let twist = 2.0 * s * I * big_g * sin_t * (q_op * cos_t - cos_t * cos_t - 1.0) / (d * d);
    Ok(ComplexVelocity { v_tilde: wp.cfg.to_world_c(v), h: hh, twist, helicity: h })
}

/// `ũ` and `S̃` of a general potential, from its fields.
pub fn field_complex_densities(
    x: Point3,
    t: f64,
    wp: &WaveletParams,
    gp: &GaugeParams,
    side: Option<Side>,
) -> Result<ComplexDensitySample> {
    let lg = LocalGeometry::new(x, &wp.cfg, side, true)?;
    let [g, g1, _] = wp.signal(&lg.cd, t)?;
    let (e, b) = e_b_local(&lg, gp, g, g1);
    let d = complex_densities(&e, &b);
    Ok(ComplexDensitySample {
        u_tilde: d.u_tilde,
        s_tilde: wp.cfg.to_world_c(d.s_tilde),
        v_tilde: d.v_tilde.map(|v| wp.cfg.to_world_c(v)),
    })
}
