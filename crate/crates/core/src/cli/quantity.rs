//! Pointwise quantities the `sample` command can tabulate.

use std::fmt;

use num_complex::Complex64;
use serde::Deserialize;

use crate::energetics::{complex_velocity, densities};
use crate::error::Result;
use crate::fields::{b_field, e_field, f_pm, real_fields, Helicity};
use crate::newman::newman_field;
use crate::potential::{vector_potential, GaugeParams};
use crate::scalar::{psi, WaveletParams};
use crate::vector::{c, CVec3, Point3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// Scalar wavelet `Ψ̃`.
    Psi,
    /// `Ẽ`.
    E,
    /// `B̃`.
    B,
    /// `F̃±` of the configured helicity.
    F,
    /// `Ã`.
    Potential,
    /// Inertia density of the real fields carried by `F̃±`.
    Inertia,
    /// Energy density of the same real fields.
    Energy,
    /// Energy flow velocity `S/u` of the same real fields.
    Velocity,
    /// Twist coefficient of the complex congruence; needs a null gauge.
    Twist,
    /// The static field `(x − ia)/ζ³`.
    Newman,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Psi => "psi",
            Quantity::E => "e",
            Quantity::B => "b",
            Quantity::F => "f",
            Quantity::Potential => "potential",
            Quantity::Inertia => "inertia",
            Quantity::Energy => "energy",
            Quantity::Velocity => "velocity",
            Quantity::Twist => "twist",
            Quantity::Newman => "newman",
        }
    }

    pub fn is_vector(self) -> bool {
        matches!(self, Quantity::E | Quantity::B | Quantity::F | Quantity::Potential | Quantity::Velocity | Quantity::Newman)
    }

    /// CSV column names: `re_q, im_q` for scalars, `re_q_x, im_q_x, …` for
    /// vectors.
    pub fn columns(self) -> Vec<String> {
        let n = self.name();
        if self.is_vector() {
            ["x", "y", "z"].iter().flat_map(|k| [format!("re_{n}_{k}"), format!("im_{n}_{k}")]).collect()
        } else {
            vec![format!("re_{n}"), format!("im_{n}")]
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Scalar(Complex64),
    Vector(CVec3),
}

impl Value {
    /// `|q|`, Hermitian norm for vectors. Drives the image.
    pub fn magnitude(&self) -> f64 {
        match self {
            Value::Scalar(z) => z.norm(),
            Value::Vector(v) => v.norm(),
        }
    }

    /// Interleaved real and imaginary parts in column order.
    pub fn parts(&self) -> Vec<f64> {
        match self {
            Value::Scalar(z) => vec![z.re, z.im],
            Value::Vector(v) => (0..3).flat_map(|i| [v.component(i).re, v.component(i).im]).collect(),
        }
    }
}

/// Everything needed to evaluate any [`Quantity`].
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub wp: WaveletParams,
    pub gp: GaugeParams,
    pub helicity: Helicity,
}

impl Model {
    fn f(&self, x: Point3, t: f64) -> Result<CVec3> {
        let (fp, fm) = f_pm(x, t, &self.wp, &self.gp, None)?;
        Ok(if self.helicity == Helicity::Plus { fp } else { fm })
    }

    pub fn eval(&self, q: Quantity, x: Point3, t: f64) -> Result<Value> {
        let (wp, gp) = (&self.wp, &self.gp);
        let real = |v: f64| Value::Scalar(c(v, 0.0));
        Ok(match q {
            Quantity::Psi => Value::Scalar(psi(x, t, wp, None)?),
            Quantity::E => Value::Vector(e_field(x, t, wp, gp, None)?),
            Quantity::B => Value::Vector(b_field(x, t, wp, gp, None)?),
            Quantity::F => Value::Vector(self.f(x, t)?),
            Quantity::Potential => Value::Vector(vector_potential(x, t, wp, gp, None)?),
            Quantity::Inertia | Quantity::Energy | Quantity::Velocity => {
                let pair = real_fields(&self.f(x, t)?, self.helicity);
                let d = densities(pair.e, pair.b)?;
                match q {
                    Quantity::Inertia => real(d.inertia),
                    Quantity::Energy => real(d.u),
                    _ => Value::Vector(d.v.to_complex()),
                }
            }
            Quantity::Twist => Value::Scalar(complex_velocity(x, t, wp, gp, None)?.twist),
            Quantity::Newman => Value::Vector(newman_field(x, &wp.cfg, None)?),
        })
    }
}
