//! Faddeeva function `w(z) = e^{−z²} erfc(−iz)` and its first two
//! derivatives.
//!
//! Upper half-plane: Weideman's rational expansion (N = 40) for `|z| < 8`,
//! the Laplace continued fraction beyond. The lower half-plane follows from
//! `w(z) = 2e^{−z²} − w(−z)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::vector::{c, I};

const N: usize = 40;
const CF_TERMS: usize = 60;
const CF_RADIUS: f64 = 8.0;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

fn weideman_l() -> f64 {
    (N as f64 / std::f64::consts::SQRT_2).sqrt()
}

/// Expansion coefficients `a_1..a_N`, computed once by a direct DFT.
fn weideman_coeffs() -> &'static [f64; N] {
    static COEFFS: OnceLock<[f64; N]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let m = 2 * N;
        let len = 2 * m;
        let l = weideman_l();
        // f[0] = 0, f[1 + j] = f(t_k) for k = −M+1 .. M−1
        let mut f = vec![0.0; len];
        for (j, slot) in f.iter_mut().skip(1).enumerate() {
            let k = j as f64 - (m as f64 - 1.0);
            let t = l * (0.5 * k * PI / m as f64).tan();
            *slot = (-t * t).exp() * (l * l + t * t);
        }
        let shifted: Vec<f64> = (0..len).map(|i| f[(i + m) % len]).collect();
        let mut out = [0.0; N];
        for (n, coeff) in out.iter_mut().enumerate() {
            let n = n + 1;
            let sum: f64 = shifted
                .iter()
                .enumerate()
                .map(|(i, v)| v * (2.0 * PI * (i * n) as f64 / len as f64).cos())
                .sum();
            *coeff = sum / len as f64;
        }
        out
    })
}

fn weideman(z: Complex64) -> Complex64 {
    let a = weideman_coeffs();
    let l = weideman_l();
    let den = c(l, 0.0) - I * z;
    let zz = (c(l, 0.0) + I * z) / den;
    let p = a.iter().rev().fold(c(0.0, 0.0), |acc, &an| acc * zz + an);
    2.0 * p / (den * den) + FRAC_1_SQRT_PI / den
}

/// Innermost three partial denominators `r0, r1, r2` of
/// `z − (1/2)/(z − 1/(z − (3/2)/…))`, so that `w = (i/√π)/r0`.
fn continued_fraction(z: Complex64) -> [Complex64; 3] {
    let mut r = z;
    let mut tail = [z; 3];
    for k in (1..=CF_TERMS).rev() {
        let next = z - 0.5 * k as f64 / r;
        if k <= 3 {
            tail[k - 1] = r;
        }
        r = next;
    }
    // r = r0; tail[k−1] holds the denominator under the k-th coefficient
    [r, tail[0], tail[1]]
}

/// `[w, w', w'']` for `Im z ≥ 0`.
fn upper(z: Complex64) -> [Complex64; 3] {
    let k = I * FRAC_1_SQRT_PI;
    if z.norm() >= CF_RADIUS {
        // Derivatives read off the fraction itself, so the large-|z|
        // cancellation in w' = −2zw + 2i/√π never happens.
        let [r0, r1, r2] = continued_fraction(z);
        let w = k / r0;
        let w1 = -k / (r0 * r1);
        let w2 = 2.0 * k / (r0 * r1 * r2);
        [w, w1, w2]
    } else {
        let w = weideman(z);
        let w1 = -2.0 * z * w + 2.0 * k;
        let w2 = -2.0 * w - 2.0 * z * w1;
        [w, w1, w2]
    }
}

/// `[w(z), w'(z), w''(z)]` anywhere in the complex plane.
pub fn faddeeva_with_derivs(z: Complex64) -> [Complex64; 3] {
    if z.im >= 0.0 {
        upper(z)
    } else {
        let [w, w1, w2] = upper(-z);
        let e = (-z * z).exp();
        [2.0 * e - w, -4.0 * z * e + w1, (8.0 * z * z - 4.0) * e - w2]
    }
}

/// `w(z) = e^{−z²} erfc(−iz)`.
pub fn faddeeva(z: Complex64) -> Complex64 {
    faddeeva_with_derivs(z)[0]
}
