//! Dense exact bivariate polynomials in the variables t and z.
//!
//! Stored as a vector of rows indexed by the power of t, each row a
//! univariate polynomial in z. Trailing zero rows are trimmed, so equality
//! is structural equality of the canonical form.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::GaussianRational;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    rows: Vec<Poly>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn from_rows(rows: Vec<Poly>) -> Self {
        let mut b = Self { rows };
        b.trim();
        b
    }

    fn trim(&mut self) {
        while matches!(self.rows.last(), Some(r) if r.is_zero()) {
            self.rows.pop();
        }
    }

    /// Lifts f(t): row i is the constant polynomial coeff_i(f).
    pub fn from_t_poly(f: &Poly) -> Self {
        Self::from_rows(
            f.coeffs()
                .iter()
                .map(|c| Poly::constant(c.clone()))
                .collect(),
        )
    }

    /// Lifts f(z): a single row.
    pub fn from_z_poly(f: &Poly) -> Self {
        Self::from_rows(vec![f.clone()])
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Coefficient of t^i z^j.
    pub fn coeff(&self, i: usize, j: usize) -> GaussianRational {
        self.rows
            .get(i)
            .map(|r| r.coeff(j))
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Multiplication by t.
    pub fn mul_t(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Poly::zero()];
        rows.extend(self.rows.iter().cloned());
        Self { rows }
    }

    /// Multiplication by a polynomial in z.
    pub fn mul_z_poly(&self, p: &Poly) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r * p).collect())
    }

    /// Multiplication by a polynomial in t.
    pub fn mul_t_poly(&self, p: &Poly) -> Self {
        if self.is_zero() || p.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Poly::zero(); self.rows.len() + p.coeffs().len() - 1];
        for (i, r) in self.rows.iter().enumerate() {
            for (k, c) in p.coeffs().iter().enumerate() {
                rows[i + k] = &rows[i + k] + &r.scale(c);
            }
        }
        Self::from_rows(rows)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.scale(c)).collect())
    }

    /// Substitutes t = a, giving a polynomial in z.
    pub fn subst_t(&self, a: &GaussianRational) -> Poly {
        let mut acc = Poly::zero();
        let mut power = GaussianRational::one();
        for r in &self.rows {
            acc = &acc + &r.scale(&power);
            power = &power * a;
        }
        acc
    }

    /// Substitutes z = a, giving a polynomial in t.
    pub fn subst_z(&self, a: &GaussianRational) -> Poly {
        Poly::from_coeffs(self.rows.iter().map(|r| r.eval(a)).collect())
    }

    /// Partial derivative with respect to t.
    pub fn deriv_t(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, r)| r.scale(&GaussianRational::from_int(i as i64)))
            .collect();
        Self::from_rows(rows)
    }

    /// Swaps the two variables.
    pub fn transpose(&self) -> Self {
        let cols = self.rows.iter().map(|r| r.coeffs().len()).max().unwrap_or(0);
        let rows = (0..cols)
            .map(|j| Poly::from_coeffs(self.rows.iter().map(|r| r.coeff(j)).collect()))
            .collect();
        Self::from_rows(rows)
    }

    /// Substitutes t = z, giving the diagonal as a univariate polynomial.
    pub fn diagonal(&self) -> Poly {
        let mut acc = Poly::zero();
        for (i, r) in self.rows.iter().enumerate() {
            acc = &acc + &r.shift_up(i);
        }
        acc
    }

    /// Exact division by (t - z); the remainder is the value on the
    /// diagonal t = z and must vanish.
    pub fn exact_div_t_minus_z(&self) -> Result<BivarPoly> {
        if self.is_zero() {
            return Ok(BivarPoly::zero());
        }
        let z = Poly::monomial(1);
        let n = self.rows.len();
        let mut quot = vec![Poly::zero(); n.saturating_sub(1)];
        let mut carry = Poly::zero();
        for i in (1..n).rev() {
            carry = &self.rows[i] + &(&carry * &z);
            quot[i - 1] = carry.clone();
        }
        let rem = &self.rows[0] + &(&carry * &z);
        if !rem.is_zero() {
            return Err(Error::NonzeroRemainder(format!("{rem}")));
        }
        Ok(BivarPoly::from_rows(quot))
    }
}

impl Add<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let len = self.rows.len().max(rhs.rows.len());
        BivarPoly::from_rows(
            (0..len)
                .map(|i| {
                    let a = self.rows.get(i).cloned().unwrap_or_else(Poly::zero);
                    let b = rhs.rows.get(i).cloned().unwrap_or_else(Poly::zero);
                    &a + &b
                })
                .collect(),
        )
    }
}

impl Sub<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        self + &(-rhs)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly::from_rows(self.rows.iter().map(|r| -r).collect())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(i, r)| format!("t^{}*({})", i, r))
            .collect();
        if terms.is_empty() {
            write!(f, "BivarPoly(0)")
        } else {
            write!(f, "BivarPoly({})", terms.join(" + "))
        }
    }
}
