//! Dense exact univariate polynomials over the Gaussian rationals.
//!
//! Coefficients are stored lowest degree first; the highest stored
//! coefficient is nonzero unless the polynomial is zero (empty vector).

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// z^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = GaussianRational::one();
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<GaussianRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of z^k, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Coefficient vector padded to `len` entries.
    pub fn coeff_vec(&self, len: usize) -> Vec<GaussianRational> {
        (0..len).map(|k| self.coeff(k)).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by z^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// k-fold derivative evaluated at a point.
    pub fn derivative_at(&self, k: usize, point: &GaussianRational) -> GaussianRational {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p.eval(point)
    }

    pub fn eval(&self, point: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * point) + c;
        }
        acc
    }

    /// Exact division by the monic linear factor (z - root).
    ///
    /// Fails with `NonzeroRemainder` when the root is not actually a zero of
    /// the polynomial; the remainder equals the value at the root.
    pub fn exact_div_linear(&self, root: &GaussianRational) -> Result<Poly> {
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![GaussianRational::zero(); n - 1];
        let mut carry = GaussianRational::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] + &(&carry * root);
            quot[k - 1] = carry.clone();
        }
        let rem = &self.coeffs[0] + &(&carry * root);
        if !rem.is_zero() {
            return Err(Error::NonzeroRemainder(rem.to_string()));
        }
        Ok(Poly::from_coeffs(quot))
    }

    /// Exact division by z.
    pub fn exact_div_z(&self) -> Result<Poly> {
        self.exact_div_linear(&GaussianRational::zero())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::poly_to_expr(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<GaussianRational>::deserialize(deserializer)?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    #[test]
    fn ring_identities() {
        // (1-z)(1+z) = 1-z^2
        assert_eq!(&p(&[1, -1]) * &p(&[1, 1]), p(&[1, 0, -1]));
        assert_eq!(p(&[1, -2, 1]).derivative(), p(&[-2, 2]));
        assert_eq!(p(&[1, -1]).eval(&GaussianRational::one()), GaussianRational::zero());
    }

    #[test]
    fn exact_division() {
        // (z^2-1)/(z-1) = z+1
        let q = p(&[-1, 0, 1]).exact_div_linear(&GaussianRational::one()).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(p(&[0, 0, 1]).exact_div_linear(&GaussianRational::one()).is_err());
        assert_eq!(p(&[0, 1]).exact_div_z().unwrap(), p(&[1]));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let q = Poly::from_coeffs(vec![
            GaussianRational::one(),
            GaussianRational::zero(),
            GaussianRational::zero(),
        ]);
        assert_eq!(q.degree(), Some(0));
        assert!((&q - &Poly::one()).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let q = p(&[1, -2, 1]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["1","-2","1"]"#);
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(q, back);
    }
}
