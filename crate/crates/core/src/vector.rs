//! Small fixed-size real and complex 3-vectors.
//!
//! Complex vectors use the *bilinear* dot product (no conjugation) via
//! [`CVec3::dot`]; the Hermitian product is [`CVec3::hdot`]. The spheroidal
//! frame, nullity `F·F = 0` and the constraint `ζ̂·w = 1` are all statements
//! about the bilinear product.

use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// A real 3-vector; also used for points in space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Points and displacements share a representation.
pub type Point3 = Vec3;

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };
    pub const X: Vec3 = Vec3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Vec3 = Vec3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 1.0 };

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn dot(&self, o: &Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(&self, o: &Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.dot(self)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_complex(self) -> CVec3 {
        CVec3::new(re(self.x), re(self.y), re(self.z))
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

/// A complex 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CVec3 {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl CVec3 {
    pub const ZERO: CVec3 = CVec3 {
        x: Complex64::new(0.0, 0.0),
        y: Complex64::new(0.0, 0.0),
        z: Complex64::new(0.0, 0.0),
    };

    #[inline]
    pub const fn new(x: Complex64, y: Complex64, z: Complex64) -> Self {
        Self { x, y, z }
    }

    pub fn from_parts(re: Vec3, im: Vec3) -> Self {
        Self::new(c(re.x, im.x), c(re.y, im.y), c(re.z, im.z))
    }

    /// Unconjugated (bilinear) dot product.
    #[inline]
    pub fn dot(&self, o: &CVec3) -> Complex64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Hermitian product `conj(self)·o`.
    #[inline]
    pub fn hdot(&self, o: &CVec3) -> Complex64 {
        self.x.conj() * o.x + self.y.conj() * o.y + self.z.conj() * o.z
    }

    #[inline]
    pub fn cross(&self, o: &CVec3) -> CVec3 {
        CVec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    /// Bilinear square `v·v`.
    #[inline]
    pub fn square(&self) -> Complex64 {
        self.dot(self)
    }

    /// Hermitian norm `sqrt(v*·v)`.
    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()
    }

    pub fn conj(&self) -> CVec3 {
        CVec3::new(self.x.conj(), self.y.conj(), self.z.conj())
    }

    pub fn re(&self) -> Vec3 {
        Vec3::new(self.x.re, self.y.re, self.z.re)
    }

    pub fn im(&self) -> Vec3 {
        Vec3::new(self.x.im, self.y.im, self.z.im)
    }

    pub fn scale(&self, s: Complex64) -> CVec3 {
        CVec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn component(&self, i: usize) -> Complex64 {
        match i {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("CVec3 index {i} out of range"),
        }
    }
}

impl From<Vec3> for CVec3 {
    fn from(v: Vec3) -> Self {
        v.to_complex()
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, o: CVec3) -> CVec3 {
        CVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for CVec3 {
    fn add_assign(&mut self, o: CVec3) {
        *self = *self + o;
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for CVec3 {
    fn sub_assign(&mut self, o: CVec3) {
        *self = *self - o;
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    fn neg(self) -> CVec3 {
        CVec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Complex64> for CVec3 {
    type Output = CVec3;
    fn mul(self, s: Complex64) -> CVec3 {
        self.scale(s)
    }
}

impl Mul<CVec3> for Complex64 {
    type Output = CVec3;
    fn mul(self, v: CVec3) -> CVec3 {
        v.scale(self)
    }
}

impl Mul<f64> for CVec3 {
    type Output = CVec3;
    fn mul(self, s: f64) -> CVec3 {
        CVec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<CVec3> for f64 {
    type Output = CVec3;
    fn mul(self, v: CVec3) -> CVec3 {
        v * self
    }
}

impl Div<Complex64> for CVec3 {
    type Output = CVec3;
    fn div(self, s: Complex64) -> CVec3 {
        CVec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Div<f64> for CVec3 {
    type Output = CVec3;
    fn div(self, s: f64) -> CVec3 {
        CVec3::new(self.x / s, self.y / s, self.z / s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bilinear_vs_hermitian() {
        let v = CVec3::new(c(1.0, 0.0), I, re(0.0));
        assert_eq!(v.square(), re(0.0));
        assert!((v.norm_sqr() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn cross_is_right_handed() {
        assert_eq!(Vec3::X.cross(&Vec3::Y), Vec3::Z);
        let cx = Vec3::Y.to_complex().cross(&Vec3::Z.to_complex());
        assert_eq!(cx, Vec3::X.to_complex());
    }
}
