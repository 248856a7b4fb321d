//! 2x2 matrices over F = Q(t), used for the GL2(O)-action on sharblies,
//! Hecke coset representatives, and Gamma_0(n) membership tests.

use crate::cyclotomic::CycNum;
use serde::{Deserialize, Serialize};
use std::ops::Mul;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: CycNum,
    pub b: CycNum,
    pub c: CycNum,
    pub d: CycNum,
}

pub type Vec2 = (CycNum, CycNum);

impl Mat2 {
    pub fn new(a: CycNum, b: CycNum, c: CycNum, d: CycNum) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(CycNum::one(), CycNum::zero(), CycNum::zero(), CycNum::one())
    }

    pub fn from_cols(u: &Vec2, v: &Vec2) -> Self {
        Mat2::new(u.0.clone(), v.0.clone(), u.1.clone(), v.1.clone())
    }

    pub fn det(&self) -> CycNum {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integral() && self.b.is_integral() && self.c.is_integral() && self.d.is_integral()
    }

    /// Integral with unit determinant, i.e. an element of GL2(O).
    pub fn is_gl2_o(&self) -> bool {
        self.is_integral() && self.det().is_unit()
    }

    pub fn act(&self, v: &Vec2) -> Vec2 {
        (
            &(&self.a * &v.0) + &(&self.b * &v.1),
            &(&self.c * &v.0) + &(&self.d * &v.1),
        )
    }

    /// Conjugate transpose (the * of the Hermitian-form action).
    pub fn conj_transpose(&self) -> Mat2 {
        Mat2::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    /// Entrywise Galois twist by sigma.
    pub fn sigma(&self) -> Mat2 {
        Mat2::new(self.a.sigma(), self.b.sigma(), self.c.sigma(), self.d.sigma())
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        let inv = det.inverse()?;
        Some(Mat2::new(
            &self.d * &inv,
            &(-&self.b) * &inv,
            &(-&self.c) * &inv,
            &self.a * &inv,
        ))
    }

    pub fn scale(&self, s: &CycNum) -> Mat2 {
        Mat2::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let m = Mat2::new(
            CycNum::from_int_coeffs([1, 1, 0, 0]),
            CycNum::from_int_coeffs([0, 0, 1, 0]),
            CycNum::from_int_coeffs([2, 0, 0, 0]),
            CycNum::from_int_coeffs([1, 0, 0, 1]),
        );
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat2::identity());
    }

    #[test]
    fn conj_transpose_involution() {
        let m = Mat2::new(
            CycNum::from_int_coeffs([1, 2, 0, 0]),
            CycNum::from_int_coeffs([0, 1, 1, 0]),
            CycNum::from_int_coeffs([3, 0, 0, 1]),
            CycNum::from_int_coeffs([0, 0, 0, 2]),
        );
        assert_eq!(m.conj_transpose().conj_transpose(), m);
    }
}
