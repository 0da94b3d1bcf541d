//! Driving pulses and their analytic signals at complex time.
//!
//! For a real pulse `g₀(t)` with spectrum `ĝ₀(ω)`, the analytic signal is
//!
//! ```text
//! g(τ) = (1/2π) ∫₀^∞ e^{−iωτ} ĝ₀(ω) dω,   τ = t − is,
//! ```
//!
//! analytic for `Im τ < 0` and with `2 Re g(t) = g₀(t)` on the real axis.
//! Derivatives of order `n` bring down `(−iω)ⁿ`.

pub mod faddeeva;
mod oracle;

use std::f64::consts::PI;
use std::io::Read;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::vector::{c, I};

pub use oracle::quadrature_oracle;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Relative level below which `|g'|` counts as a node of the pulse.
pub const PULSE_NODE_REL: f64 = 1e-12;

/// A real driving pulse, described by its positive-frequency spectrum.
#[derive(Debug, Clone, PartialEq)]
pub enum PulseSpec {
    /// `g₀(t) = e^{−t²/d²}/(√π d)`, `ĝ₀(ω) = e^{−ω²d²/4}`.
    Gaussian { d: f64 },
    Tabulated(TabulatedSpectrum),
}

impl PulseSpec {
    pub fn gaussian(d: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidPulse(format!("gaussian duration must be positive, got {d}")));
        }
        Ok(PulseSpec::Gaussian { d })
    }

    /// Characteristic duration. For a table this is `2/(√π ω̄)` with `ω̄` the
    /// amplitude-weighted mean frequency, which reproduces `d` for a
    /// sampled Gaussian.
    pub fn duration(&self) -> f64 {
        match self {
            PulseSpec::Gaussian { d } => *d,
            PulseSpec::Tabulated(tab) => tab.duration,
        }
    }

    /// The real pulse `g₀(t)`.
    pub fn g0(&self, t: f64) -> f64 {
        match self {
            PulseSpec::Gaussian { d } => (-(t / d).powi(2)).exp() / (SQRT_PI * d),
            PulseSpec::Tabulated(tab) => 2.0 * tab.integrate(c(t, 0.0), 0, 1).re,
        }
    }

    /// `ĝ₀(ω)` for `ω ≥ 0`.
    pub fn spectrum(&self, omega: f64) -> Complex64 {
        match self {
            PulseSpec::Gaussian { d } => c((-(omega * d).powi(2) / 4.0).exp(), 0.0),
            PulseSpec::Tabulated(tab) => tab.interpolate(omega),
        }
    }

    /// `g⁽ⁿ⁾(τ)` for `n ∈ {0, 1, 2}`.
    pub fn analytic_signal(&self, tau: Complex64, order: usize) -> Result<Complex64> {
        if order > 2 {
            return Err(Error::InvalidPulse(format!("derivative order {order} not supported")));
        }
        Ok(self.derivs(tau)?[order])
    }

    /// `[g, g', g'']` at `τ` in one evaluation.
    pub fn derivs(&self, tau: Complex64) -> Result<[Complex64; 3]> {
        let out = match self {
            PulseSpec::Gaussian { d } => {
                let [w, w1, w2] = faddeeva::faddeeva_with_derivs(-tau / *d);
                let k = 1.0 / (2.0 * SQRT_PI * d);
                [w * k, -w1 * (k / d), w2 * (k / (d * d))]
            }
            PulseSpec::Tabulated(tab) => {
                tab.check_domain(tau)?;
                [tab.integrate(tau, 0, 1), tab.integrate(tau, 1, 1), tab.integrate(tau, 2, 1)]
            }
        };
        if out.iter().all(|v| v.is_finite()) {
            Ok(out)
        } else {
            Err(Error::Divergent(tau.im))
        }
    }

    /// Largest `|g'|` along the line `Im τ = im_tau`, by a scan over
    /// `|Re τ| ≤ 8·duration`. Reference scale for [`PULSE_NODE_REL`].
    pub fn derivative_peak(&self, im_tau: f64) -> Result<f64> {
        let d = self.duration();
        let mut peak: f64 = 0.0;
        for k in -64..=64 {
            let tau = c(d * k as f64 / 8.0, im_tau);
            peak = peak.max(self.derivs(tau)?[1].norm());
        }
        Ok(peak)
    }
}

/// `ĝ₀` sampled on an ascending grid `0 ≤ ω₀ < ω₁ < …`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedSpectrum {
    omega: Vec<f64>,
    ghat: Vec<Complex64>,
    s_min: f64,
    duration: f64,
}

impl TabulatedSpectrum {
    /// Validates the grid and checks the trapezoid rule against the rule on
    /// every other sample; they must agree to 1e-8 of `∫|ĝ₀|`.
    pub fn new(omega: Vec<f64>, ghat: Vec<Complex64>) -> Result<Self> {
        if omega.len() != ghat.len() {
            return Err(Error::InvalidPulse("omega and ghat lengths differ".into()));
        }
        if omega.len() < 5 {
            return Err(Error::InvalidPulse("need at least five spectral samples".into()));
        }
        if omega[0] < 0.0 || omega.iter().any(|w| !w.is_finite()) || ghat.iter().any(|g| !g.is_finite()) {
            return Err(Error::InvalidPulse("samples must be finite with omega >= 0".into()));
        }
        if omega.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::InvalidPulse("omega grid must be strictly ascending".into()));
        }
        let mut tab = Self { omega, ghat, s_min: 0.0, duration: 1.0 };
        let mass: f64 = tab.abs_integral(0);
        if mass <= 0.0 {
            return Err(Error::InvalidPulse("spectrum vanishes identically".into()));
        }
        let mean_omega = tab.abs_integral(1) / mass;
        tab.duration = 2.0 / (SQRT_PI * mean_omega);
        let fine = tab.integrate(c(0.0, 0.0), 0, 1);
        let coarse = tab.integrate(c(0.0, 0.0), 0, 2);
        if (fine - coarse).norm() > 1e-8 * mass {
            return Err(Error::InvalidPulse(format!(
                "spectrum too coarsely sampled: halved-grid discrepancy {:e}",
                (fine - coarse).norm() / mass
            )));
        }
        Ok(tab)
    }

    /// Samples `f` at `n` equispaced frequencies on `[0, omega_max]`.
    pub fn sample(f: impl Fn(f64) -> Complex64, omega_max: f64, n: usize) -> Result<Self> {
        let omega: Vec<f64> = (0..n).map(|k| omega_max * k as f64 / (n - 1) as f64).collect();
        let ghat = omega.iter().map(|&w| f(w)).collect();
        Self::new(omega, ghat)
    }

    /// Reads `omega,re_ghat[,im_ghat]` rows after a header row.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
        let mut omega = Vec::new();
        let mut ghat = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::InvalidPulse(format!("spectrum csv: {e}")))?;
            if rec.len() < 2 || rec.len() > 3 {
                return Err(Error::InvalidPulse(format!(
                    "spectrum csv row {}: expected 2 or 3 columns, got {}",
                    line + 2,
                    rec.len()
                )));
            }
            let num = |i: usize| -> Result<f64> {
                rec[i].parse::<f64>().map_err(|e| {
                    Error::InvalidPulse(format!("spectrum csv row {}: {e}", line + 2))
                })
            };
            omega.push(num(0)?);
            let im = if rec.len() == 3 { num(2)? } else { 0.0 };
            ghat.push(c(num(1)?, im));
        }
        Self::new(omega, ghat)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path.as_ref())
            .map_err(|e| Error::IoError(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_csv_reader(file)
    }

    /// Requires `Im τ ≤ −s_min` for evaluation. Defaults to 0.
    pub fn with_min_damping(mut self, s_min: f64) -> Self {
        self.s_min = s_min;
        self
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn ghat(&self) -> &[Complex64] {
        &self.ghat
    }

    fn check_domain(&self, tau: Complex64) -> Result<()> {
        if tau.im > -self.s_min {
            Err(Error::Divergent(tau.im))
        } else {
            Ok(())
        }
    }

    fn interpolate(&self, w: f64) -> Complex64 {
        let om = &self.omega;
        if w < om[0] || w > om[om.len() - 1] {
            return c(0.0, 0.0);
        }
        let k = om.partition_point(|&x| x <= w).clamp(1, om.len() - 1);
        let f = (w - om[k - 1]) / (om[k] - om[k - 1]);
        self.ghat[k - 1] * (1.0 - f) + self.ghat[k] * f
    }

    fn abs_integral(&self, power: i32) -> f64 {
        self.omega
            .windows(2)
            .zip(self.ghat.windows(2))
            .map(|(w, g)| 0.5 * (w[1] - w[0]) * (g[0].norm() * w[0].powi(power) + g[1].norm() * w[1].powi(power)))
            .sum()
    }

    /// Trapezoid rule with Euler-Maclaurin end corrections on the samples
    /// `0, stride, 2·stride, …` (last sample always kept).
    pub(crate) fn integrate(&self, tau: Complex64, order: i32, stride: usize) -> Complex64 {
        let n = self.omega.len();
        let mut idx: Vec<usize> = (0..n).step_by(stride).collect();
        if *idx.last().unwrap() != n - 1 {
            idx.push(n - 1);
        }
        let f = |k: usize| {
            let w = self.omega[k];
            (-I * w).powi(order) * (-I * w * tau).exp() * self.ghat[k]
        };
        let xs: Vec<f64> = idx.iter().map(|&k| self.omega[k]).collect();
        let fs: Vec<Complex64> = idx.iter().map(|&k| f(k)).collect();
        let m = xs.len();
        let mut sum = c(0.0, 0.0);
        for k in 0..m - 1 {
            sum += (fs[k] + fs[k + 1]) * (0.5 * (xs[k + 1] - xs[k]));
        }
        let slope = |i0: usize, i1: usize, i2: usize| {
            let (d1, d2) = (xs[i1] - xs[i0], xs[i2] - xs[i0]);
            -fs[i0] * ((d1 + d2) / (d1 * d2)) + fs[i1] * (d2 / (d1 * (d2 - d1)))
                - fs[i2] * (d1 / (d2 * (d2 - d1)))
        };
        let h0 = xs[1] - xs[0];
        let hn = xs[m - 1] - xs[m - 2];
        sum += slope(0, 1, 2) * (h0 * h0 / 12.0) - slope(m - 1, m - 2, m - 3) * (hn * hn / 12.0);
        sum / (2.0 * PI)
    }
}
