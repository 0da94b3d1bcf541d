//! Complex field strengths of `(Ψ̃, Ã)` and their helicity combinations.
//!
//! With `L = cos ϑ + κ`, `M = λ cos ϑ + μ` and `τ_ζ = τ − ζ`,
//!
//! ```text
//! Ẽ = (g/ζ²) ζ̂ − (g'/ρ)(L ϑ̂ + M φ̂)
//! B̃ = −(λg/ζ²) ζ̂ + (g'/ρ)(M ϑ̂ − L φ̂)
//! F̃± = Ẽ ± iB̃ = p± (g/ζ²) ζ̂ + (q± − p± cos ϑ)(g'/ρ) φ̃±
//! ```
//!
//! where `φ̃± = ϑ̂ ± iφ̂`, `p± = 1 ∓ iλ`, `q± = −κ ± iμ`. Setting `λ = ∓i`
//! kills `p±` and leaves the null coherent wavelet `q± (g'/ρ) φ̃±`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{LocalGeometry, Side};
use crate::potential::{w_local, GaugeParams};
use crate::scalar::WaveletParams;
use crate::vector::{CVec3, Point3, Vec3, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Helicity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Helicity {
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Helicity::Plus => Helicity::Minus,
            Helicity::Minus => Helicity::Plus,
        }
    }
}

impl fmt::Display for Helicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Helicity::Plus => "+",
            Helicity::Minus => "-",
        })
    }
}

impl FromStr for Helicity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Helicity::Plus),
            "-" | "minus" => Ok(Helicity::Minus),
            _ => Err(Error::ConfigError(format!("helicity must be '+' or '-', got '{s}'"))),
        }
    }
}

/// The null transverse vectors `φ̃± = ϑ̂ ± iφ̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicityBasis {
    pub phi_tilde_plus: CVec3,
    pub phi_tilde_minus: CVec3,
}

impl HelicityBasis {
    pub fn get(&self, h: Helicity) -> CVec3 {
        match h {
            Helicity::Plus => self.phi_tilde_plus,
            Helicity::Minus => self.phi_tilde_minus,
        }
    }
}

fn basis_local(lg: &LocalGeometry) -> HelicityBasis {
    let ph = lg.phi_hat.to_complex() * I;
    HelicityBasis { phi_tilde_plus: lg.theta_hat + ph, phi_tilde_minus: lg.theta_hat - ph }
}

pub fn helicity_basis(x: Point3, cfg: &crate::geometry::DisplacementConfig, side: Option<Side>) -> Result<HelicityBasis> {
    let lg = LocalGeometry::new(x, cfg, side, true)?;
    let b = basis_local(&lg);
    Ok(HelicityBasis { phi_tilde_plus: cfg.to_world_c(b.phi_tilde_plus), phi_tilde_minus: cfg.to_world_c(b.phi_tilde_minus) })
}

/// Complex fields at one spacetime point, world frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub e_tilde: CVec3,
    pub b_tilde: CVec3,
    pub f_plus: CVec3,
    pub f_minus: CVec3,
    pub p_plus: Complex64,
    pub p_minus: Complex64,
    pub q_plus: Complex64,
    pub q_minus: Complex64,
}

impl FieldSample {
    pub fn f(&self, h: Helicity) -> CVec3 {
        match h {
            Helicity::Plus => self.f_plus,
            Helicity::Minus => self.f_minus,
        }
    }
}

/// `Ẽ, B̃` in the canonical frame from given pulse values `g, g'`.
pub(crate) fn e_b_local(lg: &LocalGeometry, gp: &GaugeParams, g: Complex64, g1: Complex64) -> (CVec3, CVec3) {
    let cos_t = lg.angle.cos_theta;
    let zeta2 = lg.cd.zeta * lg.cd.zeta;
    let l = cos_t + gp.kappa;
    let m = gp.lambda * cos_t + gp.mu;
    let k = g1 / lg.cd.rho;
    let ph = lg.phi_hat.to_complex();
    let long = lg.zeta_hat * (g / zeta2);
    let e = long - (lg.theta_hat * l + ph * m) * k;
    let b = -long * gp.lambda + (lg.theta_hat * m - ph * l) * k;
    (e, b)
}

/// `F̃±` in the canonical frame from the helicity closed form.
pub(crate) fn f_local(lg: &LocalGeometry, gp: &GaugeParams, h: Helicity, g: Complex64, g1: Complex64) -> CVec3 {
    let p = gp.p(h);
    let q = gp.q(h);
    let phi_t = basis_local(lg).get(h);
    lg.zeta_hat * (p * g / (lg.cd.zeta * lg.cd.zeta)) + phi_t * ((q - p * lg.angle.cos_theta) * g1 / lg.cd.rho)
}

fn local(x: Point3, t: f64, wp: &WaveletParams, side: Option<Side>) -> Result<(LocalGeometry, [Complex64; 3])> {
    let lg = LocalGeometry::new(x, &wp.cfg, side, true)?;
    let g = wp.signal(&lg.cd, t)?;
    Ok((lg, g))
}

pub fn e_field(x: Point3, t: f64, wp: &WaveletParams, gp: &GaugeParams, side: Option<Side>) -> Result<CVec3> {
    let (lg, [g, g1, _]) = local(x, t, wp, side)?;
    Ok(wp.cfg.to_world_c(e_b_local(&lg, gp, g, g1).0))
}

pub fn b_field(x: Point3, t: f64, wp: &WaveletParams, gp: &GaugeParams, side: Option<Side>) -> Result<CVec3> {
    let (lg, [g, g1, _]) = local(x, t, wp, side)?;
    Ok(wp.cfg.to_world_c(e_b_local(&lg, gp, g, g1).1))
}

/// `(F̃₊, F̃₋)` from the helicity closed form.
pub fn f_pm(x: Point3, t: f64, wp: &WaveletParams, gp: &GaugeParams, side: Option<Side>) -> Result<(CVec3, CVec3)> {
    let (lg, [g, g1, _]) = local(x, t, wp, side)?;
    Ok((
        wp.cfg.to_world_c(f_local(&lg, gp, Helicity::Plus, g, g1)),
        wp.cfg.to_world_c(f_local(&lg, gp, Helicity::Minus, g, g1)),
    ))
}

pub fn field_sample(x: Point3, t: f64, wp: &WaveletParams, gp: &GaugeParams, side: Option<Side>) -> Result<FieldSample> {
    let (lg, [g, g1, _]) = local(x, t, wp, side)?;
    let (e, b) = e_b_local(&lg, gp, g, g1);
    let w = |v: CVec3| wp.cfg.to_world_c(v);
    Ok(FieldSample {
        e_tilde: w(e),
        b_tilde: w(b),
        f_plus: w(f_local(&lg, gp, Helicity::Plus, g, g1)),
        f_minus: w(f_local(&lg, gp, Helicity::Minus, g, g1)),
        p_plus: gp.p(Helicity::Plus),
        p_minus: gp.p(Helicity::Minus),
        q_plus: gp.q(Helicity::Plus),
        q_minus: gp.q(Helicity::Minus),
    })
}

/// The null wavelet `scale · (g'(τ − ζ)/ρ) φ̃±`.
pub fn coherent_wavelet(
    x: Point3,
    t: f64,
    wp: &WaveletParams,
    h: Helicity,
    scale: Complex64,
    side: Option<Side>,
) -> Result<CVec3> {
    let (lg, [_, g1, _]) = local(x, t, wp, side)?;
    Ok(wp.cfg.to_world_c(basis_local(&lg).get(h) * (scale * g1 / lg.cd.rho)))
}

/// Real fields carried by one helicity component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealFieldPair {
    pub e: Vec3,
    pub b: Vec3,
    pub helicity: Helicity,
}

impl RealFieldPair {
    /// `E ± iB`, which gives back `F̃±`.
    pub fn recombine(&self) -> CVec3 {
        let s = self.helicity.sign();
        CVec3::from_parts(self.e, self.b * s)
    }
}

/// `E± = Re F̃±`, `B± = ±Im F̃±`.
pub fn real_fields(f: &CVec3, h: Helicity) -> RealFieldPair {
    RealFieldPair { e: f.re(), b: f.im() * h.sign(), helicity: h }
}

/// Fields of a complex pure-gauge potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureGauge {
    /// `F̃±` of the vanishing helicity; zero up to rounding.
    pub f: CVec3,
    pub e_tilde: CVec3,
    pub b_tilde: CVec3,
    pub potential: CVec3,
    /// `|Ẽ| + |B̃|`, the natural size of the cancelling terms.
    pub scale: f64,
}

/// Evaluates the potential with `λ = ∓i`, `κ = ±iμ`. Its helicity-± field
/// vanishes while `Ẽ = (g/ζ²)ζ̂ − (g'/ρ)(cos ϑ + κ)φ̃∓` and `B̃ = ±iẼ` do not.
pub fn pure_gauge_field(
    x: Point3,
    t: f64,
    wp: &WaveletParams,
    h: Helicity,
    mu: Complex64,
    side: Option<Side>,
) -> Result<PureGauge> {
    let gp = GaugeParams::pure_gauge(h, mu);
    let (lg, [g, g1, _]) = local(x, t, wp, side)?;
    let (e, b) = e_b_local(&lg, &gp, g, g1);
    let f = e + b * (I * h.sign());
    let pot = w_local(&lg, &gp) * (g / lg.cd.zeta);
    let w = |v: CVec3| wp.cfg.to_world_c(v);
    Ok(PureGauge { f: w(f), e_tilde: w(e), b_tilde: w(b), potential: w(pot), scale: e.norm() + b.norm() })
}
