//! The scalar pulsed-beam wavelet `Ψ̃(x, t) = g(τ − ζ)/ζ`, `τ = t − is`.

use num_complex::Complex64;

use crate::error::Result;
use crate::geometry::{complex_distance, ComplexDistance, DisplacementConfig, Side};
use crate::pulse::PulseSpec;
use crate::vector::{c, CVec3, Point3, I};

/// Geometry plus driving pulse.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletParams {
    pub cfg: DisplacementConfig,
    pub pulse: PulseSpec,
}

impl WaveletParams {
    pub fn new(cfg: DisplacementConfig, pulse: PulseSpec) -> Self {
        Self { cfg, pulse }
    }

    /// `τ − ζ = t − is − ζ`.
    pub fn retarded_time(&self, cd: &ComplexDistance, t: f64) -> Complex64 {
        c(t, -self.cfg.s()) - cd.zeta
    }

    /// `[g, g', g'']` at the retarded complex time.
    pub fn signal(&self, cd: &ComplexDistance, t: f64) -> Result<[Complex64; 3]> {
        self.pulse.derivs(self.retarded_time(cd, t))
    }
}

pub fn psi(x: Point3, t: f64, wp: &WaveletParams, side: Option<Side>) -> Result<Complex64> {
    let cd = complex_distance(x, &wp.cfg, side)?;
    let [g, ..] = wp.signal(&cd, t)?;
    Ok(g / cd.zeta)
}

/// `∇Ψ̃ = −(g'/ζ + g/ζ²) ζ̂`.
pub fn grad_psi(x: Point3, t: f64, wp: &WaveletParams, side: Option<Side>) -> Result<CVec3> {
    let cd = complex_distance(x, &wp.cfg, side)?;
    let [g, g1, _] = wp.signal(&cd, t)?;
    let coeff = -(g1 / cd.zeta + g / (cd.zeta * cd.zeta));
    Ok(wp.cfg.to_world_c(cd.zeta_hat_local() * coeff))
}

/// `∂ₜΨ̃ = g'/ζ`.
pub fn dt_psi(x: Point3, t: f64, wp: &WaveletParams, side: Option<Side>) -> Result<Complex64> {
    let cd = complex_distance(x, &wp.cfg, side)?;
    let [_, g1, _] = wp.signal(&cd, t)?;
    Ok(g1 / cd.zeta)
}

/// Time-harmonic complex-source beam `ĝ₀(ω) e^{iωζ}/ζ`.
pub fn freq_beam(x: Point3, omega: f64, wp: &WaveletParams, side: Option<Side>) -> Result<Complex64> {
    let cd = complex_distance(x, &wp.cfg, side)?;
    Ok(wp.pulse.spectrum(omega) * (I * omega * cd.zeta).exp() / cd.zeta)
}

/// Far-zone angular factor `ĝ₀(ω) e^{ωa cos θ}`.
pub fn radiation_pattern(theta: f64, omega: f64, a: f64, pulse: &PulseSpec) -> Complex64 {
    pulse.spectrum(omega) * (omega * a * theta.cos()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::Vec3;

    fn params(a: f64, s: f64, d: f64) -> WaveletParams {
        WaveletParams::new(DisplacementConfig::new(a, s).unwrap(), PulseSpec::gaussian(d).unwrap())
    }

    #[test]
    fn point_source_limit() {
        let wp = params(1e-12, 0.0, 1.0);
        let v = psi(Vec3::new(0.0, 0.0, 2.0), 2.0, &wp, None).unwrap();
        // 2 Re Ψ̃ → g₀(t − r)/r
        assert!((2.0 * v.re - wp.pulse.g0(0.0) / 2.0).abs() < 1e-10);
    }

    #[test]
    fn on_axis_closed_form() {
        let wp = params(1.0, 1.2, 0.5);
        let (z, t) = (3.0, 2.5);
        let v = psi(Vec3::new(0.0, 0.0, z), t, &wp, None).unwrap();
        let g = wp.pulse.analytic_signal(c(t - z, 1.0 - 1.2), 0).unwrap();
        assert!((v - g / c(z, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn pulse_peaks_at_xi() {
        let wp = params(1.0, 1.5, 0.2);
        let x = Vec3::new(0.0, 0.0, 5.0);
        let n = 2001;
        let (mut best_t, mut best) = (0.0, 0.0);
        for k in 0..n {
            let t = 3.0 + 4.0 * k as f64 / (n - 1) as f64;
            let m = psi(x, t, &wp, None).unwrap().norm();
            if m > best {
                best = m;
                best_t = t;
            }
        }
        assert!((best_t - 5.0).abs() <= 0.2);
    }

    #[test]
    fn gradient_is_longitudinal() {
        let wp = params(1.0, 1.0, 0.4);
        let x = Vec3::new(1.3, 0.4, 0.9);
        let gr = grad_psi(x, 0.7, &wp, None).unwrap();
        let cd = complex_distance(x, &wp.cfg, None).unwrap();
        let zh = cd.zeta_hat_local();
        // ∇Ψ̃ = (∇Ψ̃·ζ̂) ζ̂ exactly
        let along = zh * gr.dot(&zh);
        assert!((gr - along).norm() < 1e-14 * gr.norm());
    }

    #[test]
    fn green_function_limit_of_beam() {
        let wp = params(1e-12, 0.0, 1.0);
        let x = Vec3::new(1.0, 2.0, 2.0);
        let b = freq_beam(x, 1.5, &wp, None).unwrap();
        let expect = wp.pulse.spectrum(1.5) * (I * 4.5).exp() / 3.0;
        assert!((b - expect).norm() < 1e-11);
    }

    #[test]
    fn beam_is_directional() {
        let wp = params(1.0, 1.0, 1.0);
        let up = freq_beam(Vec3::new(0.0, 0.0, 100.0), 1.0, &wp, None).unwrap();
        let down = freq_beam(Vec3::new(0.0, 0.0, -100.0), 1.0, &wp, None).unwrap();
        let ratio = up.norm() / down.norm();
        assert!((ratio / 2f64.exp() - 1.0).abs() < 0.01);
        let side = radiation_pattern(std::f64::consts::FRAC_PI_2, 1.0, 1.0, &wp.pulse);
        assert!((side - wp.pulse.spectrum(1.0)).norm() < 1e-15);
    }
}
