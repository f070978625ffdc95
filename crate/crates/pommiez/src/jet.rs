//! Truncated Taylor expansions with explicit order tracking.
//!
//! A jet of order N at a center c stores the N+1 Taylor coefficients in
//! powers of (z - c). Every operation states its order rule and returns the
//! weakest order it can guarantee, so precision loss is always visible.

use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::poly::Poly;
use crate::scalar::{binomial, factorial, GaussianRational};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Jet {
    center: GaussianRational,
    order: usize,
    coeffs: Vec<GaussianRational>,
}

impl Jet {
    /// Builds a jet from raw Taylor coefficients; `coeffs` is padded or
    /// truncated to exactly `order + 1` entries.
    pub fn new(center: GaussianRational, order: usize, mut coeffs: Vec<GaussianRational>) -> Self {
        coeffs.resize(order + 1, GaussianRational::zero());
        Self { center, order, coeffs }
    }

    pub fn zero(center: GaussianRational, order: usize) -> Self {
        Self::new(center, order, Vec::new())
    }

    /// The constant-one jet.
    pub fn one(center: GaussianRational, order: usize) -> Self {
        Self::new(center, order, vec![GaussianRational::one()])
    }

    /// (z - center)^k as a jet.
    pub fn monomial(center: GaussianRational, k: usize, order: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); order + 1];
        if k <= order {
            coeffs[k] = GaussianRational::one();
        }
        Self::new(center, order, coeffs)
    }

    /// Taylor expansion of a polynomial at an arbitrary center.
    pub fn of_poly(p: &Poly, center: &GaussianRational, order: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); order + 1];
        for (i, c) in p.coeffs().iter().enumerate() {
            // z^i = (center + w)^i
            for k in 0..=i.min(order) {
                let term = &(c * &binomial(i, k)) * &center.pow((i - k) as u32);
                coeffs[k] = &coeffs[k] + &term;
            }
        }
        Self::new(center.clone(), order, coeffs)
    }

    /// Taylor expansion of an exponential polynomial. Exact rational
    /// coefficients exist only at center 0; any other center would require
    /// transcendental constants.
    pub fn of_exppoly(e: &ExpPoly, center: &GaussianRational, order: usize) -> Result<Self> {
        if !center.is_zero() {
            return Err(Error::NonzeroCenterForExpPoly);
        }
        let mut coeffs = vec![GaussianRational::zero(); order + 1];
        for (freq, poly) in e.terms() {
            for (k, c) in poly.coeffs().iter().enumerate() {
                // c z^k e^{freq z} contributes c freq^{n-k}/(n-k)! at degree n
                for n in k..=order {
                    let term = &(c * &freq.pow((n - k) as u32))
                        / &factorial(n - k);
                    coeffs[n] = &coeffs[n] + &term;
                }
            }
        }
        Ok(Self::new(GaussianRational::zero(), order, coeffs))
    }

    pub fn center(&self) -> &GaussianRational {
        &self.center
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Value at the center.
    pub fn value(&self) -> GaussianRational {
        self.coeff(0)
    }

    /// k-th derivative at the center: k! times the k-th coefficient.
    pub fn derivative_at_center(&self, k: usize) -> GaussianRational {
        &factorial(k) * &self.coeff(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self::new(self.center.clone(), order, self.coeffs[..=order].to_vec())
    }

    fn check_center(&self, other: &Jet) -> Result<()> {
        if self.center != other.center {
            return Err(Error::CenterMismatch(
                self.center.to_string(),
                other.center.to_string(),
            ));
        }
        Ok(())
    }

    /// Sum; order = min of the operand orders.
    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.check_center(other)?;
        let order = self.order.min(other.order);
        Ok(Jet::new(
            self.center.clone(),
            order,
            (0..=order).map(|k| &self.coeff(k) + &other.coeff(k)).collect(),
        ))
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.add(&other.scale(&GaussianRational::from_int(-1)))
    }

    /// Product; order = min of the operand orders.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check_center(other)?;
        let order = self.order.min(other.order);
        let mut coeffs = vec![GaussianRational::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=(order - i) {
                let term = &self.coeff(i) * &other.coeff(j);
                coeffs[i + j] = &coeffs[i + j] + &term;
            }
        }
        Ok(Jet::new(self.center.clone(), order, coeffs))
    }

    pub fn scale(&self, c: &GaussianRational) -> Jet {
        Jet::new(
            self.center.clone(),
            self.order,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    /// Derivative; the order drops by one.
    pub fn derivative(&self) -> Result<Jet> {
        if self.order == 0 {
            return Err(Error::OrderTooSmall(
                "cannot differentiate an order-0 jet".into(),
            ));
        }
        let coeffs = (1..=self.order)
            .map(|k| &self.coeffs[k] * &GaussianRational::from_int(k as i64))
            .collect();
        Ok(Jet::new(self.center.clone(), self.order - 1, coeffs))
    }

    /// Applies the constant-coefficient differential operator r(D);
    /// the order drops by deg r.
    pub fn apply_diff(&self, r: &Poly) -> Result<Jet> {
        let deg = r.degree().unwrap_or(0);
        if self.order < deg {
            return Err(Error::OrderTooSmall(format!(
                "jet order {} < operator degree {}",
                self.order, deg
            )));
        }
        let order = self.order - deg;
        let mut coeffs = vec![GaussianRational::zero(); order + 1];
        for (j, b) in r.coeffs().iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for k in 0..=order {
                // (f^{(j)})_k = (k+j)!/k! * f_{k+j}
                let ratio = &factorial(k + j) / &factorial(k);
                let term = &(b * &ratio) * &self.coeff(k + j);
                coeffs[k] = &coeffs[k] + &term;
            }
        }
        Ok(Jet::new(self.center.clone(), order, coeffs))
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Jet(center={}, order={}, coeffs=[{}])",
            self.center,
            self.order,
            self.coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}
