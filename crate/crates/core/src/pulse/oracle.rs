//! Direct quadrature of the analytic-signal integral, used only to check
//! the production paths.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::PulseSpec;
use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::vector::{c, I};

const RULE: usize = 20;
const SELF_TOL: f64 = 1e-10;
const MAX_DOUBLINGS: usize = 14;
/// ln(1e16): the integrand is cut where it drops this far below its peak.
const CUTOFF_LOG: f64 = 36.841_361_487_904_734;

/// `(1/2π) ∫ (−iω)ⁿ e^{−iωτ} ĝ₀(ω) dω` by composite Gauss-Legendre,
/// doubling the panel count until two successive results agree to 1e-10.
pub fn quadrature_oracle(p: &PulseSpec, tau: Complex64, order: usize) -> Result<Complex64> {
    if order > 2 {
        return Err(Error::InvalidPulse(format!("derivative order {order} not supported")));
    }
    let n = order as i32;
    match p {
        PulseSpec::Gaussian { d } => {
            let d = *d;
            let log_mag = |w: f64| {
                let lw = if n == 0 { 0.0 } else { n as f64 * w.max(1e-300).ln() };
                lw + w * tau.im - w * w * d * d / 4.0
            };
            let peak = ((tau.im + (tau.im * tau.im + 2.0 * n as f64 * d * d).sqrt()) / (d * d)).max(0.0);
            let top = log_mag(peak);
            let mut upper = peak + 1.0 / d;
            while log_mag(upper) > top - CUTOFF_LOG {
                upper += 1.0 / d;
            }
            let f = |w: f64| (-I * w).powi(n) * (-I * w * tau).exp() * (-w * w * d * d / 4.0).exp();
            let panels = 8.max((upper * (tau.re.abs() + d) / PI).ceil() as usize);
            Ok(adaptive(&f, &[0.0, upper], panels)? / (2.0 * PI))
        }
        PulseSpec::Tabulated(tab) => {
            tab.check_domain(tau)?;
            let om = tab.omega();
            let g = tab.ghat();
            let f = |w: f64| {
                let k = om.partition_point(|&x| x <= w).clamp(1, om.len() - 1);
                let s = (w - om[k - 1]) / (om[k] - om[k - 1]);
                let ghat = g[k - 1] * (1.0 - s) + g[k] * s;
                (-I * w).powi(n) * (-I * w * tau).exp() * ghat
            };
            Ok(adaptive(&f, om, 1)? / (2.0 * PI))
        }
    }
}

/// Integrates over consecutive intervals of `breaks`, each split into
/// `panels` panels initially.
fn adaptive(f: &dyn Fn(f64) -> Complex64, breaks: &[f64], panels: usize) -> Result<Complex64> {
    let (x, w) = gauss_legendre(RULE);
    let rule = |panels: usize| -> (Complex64, f64) {
        let mut sum = c(0.0, 0.0);
        let mut abs = 0.0;
        for seg in breaks.windows(2) {
            let h = (seg[1] - seg[0]) / panels as f64;
            for p in 0..panels {
                let mid = seg[0] + h * (p as f64 + 0.5);
                for (xi, wi) in x.iter().zip(&w) {
                    let v = f(mid + 0.5 * h * xi) * (0.5 * h * wi);
                    sum += v;
                    abs += v.norm();
                }
            }
        }
        (sum, abs)
    };
    let mut panels = panels;
    let (mut prev, _) = rule(panels);
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let (cur, abs) = rule(panels);
        let scale = cur.norm().max(1e-6 * abs);
        if (cur - prev).norm() <= SELF_TOL * scale {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NoConvergence(format!("no agreement after {panels} panels")))
}
