//! The static vector field `w` and the complex vector potential `Ã = Ψ̃ w`.
//!
//! ```text
//! w = ζ̂ + (ζ/ρ)(cos ϑ + κ) ϑ̂ + (ζ/ρ)(λ cos ϑ + μ) φ̂
//! ```
//!
//! solves `ζ̂·w = 1`, `∇·w = 1/ζ`, `(ζ̂·∇)w = 0`, `Δw = 0` for any complex
//! `(κ, λ, μ)`, which makes `(Ψ̃, Ã)` a Lorenz-gauge potential pair whose
//! sources sit on the disk and the axis only.

use num_complex::Complex64;

use crate::error::Result;
use crate::fields::Helicity;
use crate::geometry::{DisplacementConfig, LocalGeometry, Side};
use crate::scalar::WaveletParams;
use crate::vector::{CVec3, Point3, I};
use crate::verify::fd::{fd_directional, fd_div, fd_laplacian, FdConfig, FieldFn, SingularSets};

/// Tolerance for recognizing `λ = ∓i` and `κ = ±iμ`.
pub const GAUGE_TOL: f64 = 1e-12;

/// The three complex constants of the axisymmetric solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeParams {
    pub kappa: Complex64,
    pub lambda: Complex64,
    pub mu: Complex64,
}

impl Default for GaugeParams {
    fn default() -> Self {
        Self::ZERO
    }
}

impl GaugeParams {
    pub const ZERO: Self = Self { kappa: Complex64::new(0.0, 0.0), lambda: Complex64::new(0.0, 0.0), mu: Complex64::new(0.0, 0.0) };

    pub fn new(kappa: Complex64, lambda: Complex64, mu: Complex64) -> Self {
        Self { kappa, lambda, mu }
    }

    /// `λ = ∓i`: the helicity-± field is null.
    pub fn null(h: Helicity, kappa: Complex64, mu: Complex64) -> Self {
        Self { kappa, lambda: -h.sign() * I, mu }
    }

    /// `λ = ∓i, κ = ±iμ`: the helicity-± field vanishes identically.
    pub fn pure_gauge(h: Helicity, mu: Complex64) -> Self {
        Self { kappa: h.sign() * I * mu, lambda: -h.sign() * I, mu }
    }

    pub fn is_null_plus(&self) -> bool {
        (self.lambda + I).norm() <= GAUGE_TOL
    }

    pub fn is_null_minus(&self) -> bool {
        (self.lambda - I).norm() <= GAUGE_TOL
    }

    /// The helicity whose field is null for these constants, if any.
    pub fn null_helicity(&self) -> Option<Helicity> {
        if self.is_null_plus() {
            Some(Helicity::Plus)
        } else if self.is_null_minus() {
            Some(Helicity::Minus)
        } else {
            None
        }
    }

    pub fn is_pure_gauge(&self, h: Helicity) -> bool {
        let null = match h {
            Helicity::Plus => self.is_null_plus(),
            Helicity::Minus => self.is_null_minus(),
        };
        null && self.q(h).norm() <= GAUGE_TOL * (1.0 + self.mu.norm())
    }

    /// `p± = 1 ∓ iλ`.
    pub fn p(&self, h: Helicity) -> Complex64 {
        1.0 - h.sign() * I * self.lambda
    }

    /// `q± = −κ ± iμ`.
    pub fn q(&self, h: Helicity) -> Complex64 {
        -self.kappa + h.sign() * I * self.mu
    }
}

pub(crate) fn w_local(lg: &LocalGeometry, gp: &GaugeParams) -> CVec3 {
    let cos_t = lg.angle.cos_theta;
    let k = lg.cd.zeta / lg.cd.rho;
    lg.zeta_hat + lg.theta_hat * (k * (cos_t + gp.kappa)) + lg.phi_hat.to_complex() * (k * (gp.lambda * cos_t + gp.mu))
}

pub fn w_field(x: Point3, cfg: &DisplacementConfig, gp: &GaugeParams, side: Option<Side>) -> Result<CVec3> {
    let lg = LocalGeometry::new(x, cfg, side, true)?;
    Ok(cfg.to_world_c(w_local(&lg, gp)))
}

/// `Ã = Ψ̃ w`.
pub fn vector_potential(x: Point3, t: f64, wp: &WaveletParams, gp: &GaugeParams, side: Option<Side>) -> Result<CVec3> {
    let lg = LocalGeometry::new(x, &wp.cfg, side, true)?;
    let [g, ..] = wp.signal(&lg.cd, t)?;
    Ok(wp.cfg.to_world_c(w_local(&lg, gp) * (g / lg.cd.zeta)))
}

/// Normalized residuals of the four defining equations of `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintResiduals {
    /// `|ζ̂·w − 1|`, closed form.
    pub zeta_dot_w: f64,
    /// `|∇·w − 1/ζ|` by finite differences.
    pub divergence: f64,
    /// `|(ζ̂·∇) w|` by finite differences.
    pub transport: f64,
    /// `|Δw|` by finite differences.
    pub laplacian: f64,
}

impl ConstraintResiduals {
    pub fn max(&self) -> f64 {
        self.zeta_dot_w.max(self.divergence).max(self.transport).max(self.laplacian)
    }
}

/// Checks `ζ̂·w = 1`, `∇·w = 1/ζ`, `(ζ̂·∇)w = 0`, `Δw = 0` at `x`.
///
/// Derivative residuals are divided by `max(|exact|, max|w|/aᵏ)` over the
/// stencil, with `k` the derivative order.
pub fn constraint_residuals(
    x: Point3,
    cfg: &DisplacementConfig,
    gp: &GaugeParams,
    fd: &FdConfig,
) -> Result<ConstraintResiduals> {
    let a = cfg.a();
    let lg = LocalGeometry::new(x, cfg, None, true)?;
    let w = w_local(&lg, gp);
    let zeta_dot_w = (lg.zeta_hat.dot(&w) - 1.0).norm();

    let (cfg_c, gp_c) = (*cfg, *gp);
    let f = FieldFn::new(*cfg, SingularSets::ALL, move |y: Point3, _| w_field(y, &cfg_c, &gp_c, None));
    let zeta_hat = cfg.to_world_c(lg.zeta_hat);

    let div = fd_div(&f, x, 0.0, fd)?;
    let exact = 1.0 / lg.cd.zeta;
    let divergence = (div.value - exact).norm() / exact.norm().max(div.scale / a);

    let dz = fd_directional(&f, &zeta_hat, x, 0.0, fd)?;
    let transport = dz.value.norm() / (dz.scale / a);

    let lap = fd_laplacian(&f, x, 0.0, fd)?;
    let laplacian = lap.value.norm() / (lap.scale / (a * a));

    Ok(ConstraintResiduals { zeta_dot_w, divergence, transport, laplacian })
}
