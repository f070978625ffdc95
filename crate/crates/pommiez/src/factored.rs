//! Polynomials given by their zero structure, normalized to value 1 at 0.
//!
//! A `FactoredPoly` is a product of factors (1 - z/root)^mult with nonzero,
//! pairwise distinct roots, so its expansion always has constant term 1.
//! The crate never factors polynomials; whenever zero structure is needed
//! it must be supplied in this form.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::GaussianRational;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredPoly {
    factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub root: GaussianRational,
    pub mult: u32,
}

impl FactoredPoly {
    /// The empty product, i.e. the constant polynomial 1.
    pub fn one() -> Self {
        Self { factors: Vec::new() }
    }

    /// Builds from (root, multiplicity) pairs; repeated roots are merged.
    pub fn new(factors: Vec<(GaussianRational, u32)>) -> Result<Self> {
        let mut merged: Vec<Factor> = Vec::new();
        for (root, mult) in factors {
            if root.is_zero() {
                return Err(Error::ZeroRoot);
            }
            if mult == 0 {
                continue;
            }
            match merged.iter_mut().find(|f| f.root == root) {
                Some(f) => f.mult += mult,
                None => merged.push(Factor { root, mult }),
            }
        }
        merged.sort_by(|a, b| a.root.cmp(&b.root));
        Ok(Self { factors: merged })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.mult as usize).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn multiplicity(&self, root: &GaussianRational) -> u32 {
        self.factors
            .iter()
            .find(|f| &f.root == root)
            .map(|f| f.mult)
            .unwrap_or(0)
    }

    /// Expands to a dense polynomial; the constant term is exactly 1.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::one();
        for f in &self.factors {
            let inv = f.root.inv().expect("roots are nonzero");
            let lin = Poly::from_coeffs(vec![GaussianRational::one(), -&inv]);
            for _ in 0..f.mult {
                acc = &acc * &lin;
            }
        }
        acc
    }

    /// All divisors with value 1 at 0, i.e. every sub-multiplicity choice.
    /// Includes the constant divisor 1 and the polynomial itself.
    pub fn divisors(&self) -> Vec<FactoredPoly> {
        let mut out = vec![FactoredPoly::one()];
        for f in &self.factors {
            let mut next = Vec::new();
            for d in &out {
                for m in 0..=f.mult {
                    let mut factors = d.factors.clone();
                    if m > 0 {
                        factors.push(Factor { root: f.root.clone(), mult: m });
                    }
                    next.push(FactoredPoly { factors });
                }
            }
            out = next;
        }
        for d in &mut out {
            d.factors.sort_by(|a, b| a.root.cmp(&b.root));
        }
        out.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| format!("{a}").cmp(&format!("{b}")))
        });
        out
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|fac| {
                let base = format!("(1-z/{})", paren(&fac.root));
                if fac.mult == 1 {
                    base
                } else {
                    format!("{}^{}", base, fac.mult)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn paren(c: &GaussianRational) -> String {
    let s = c.to_string();
    if s.contains('+') || s.contains('-') {
        format!("({})", s)
    } else {
        s
    }
}

impl fmt::Debug for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(factors: &[(i64, u32)]) -> FactoredPoly {
        FactoredPoly::new(
            factors
                .iter()
                .map(|&(r, m)| (GaussianRational::from_int(r), m))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn expansions() {
        // [(1,1)] -> 1-z
        assert_eq!(
            fp(&[(1, 1)]).expand(),
            Poly::from_coeffs(vec![GaussianRational::from_int(1), GaussianRational::from_int(-1)])
        );
        // [(1,1),(2,1)] -> 1 - 3/2 z + 1/2 z^2, cross-checked by evaluation
        let p = fp(&[(1, 1), (2, 1)]).expand();
        assert_eq!(
            p,
            Poly::from_coeffs(vec![
                GaussianRational::from_int(1),
                GaussianRational::ratio(-3, 2),
                GaussianRational::ratio(1, 2),
            ])
        );
        assert_eq!(p.eval(&GaussianRational::zero()), GaussianRational::one());
        assert!(p.eval(&GaussianRational::from_int(1)).is_zero());
        assert!(p.eval(&GaussianRational::from_int(2)).is_zero());
        // [(1,2)] -> 1-2z+z^2
        assert_eq!(
            fp(&[(1, 2)]).expand(),
            Poly::from_coeffs(vec![
                GaussianRational::from_int(1),
                GaussianRational::from_int(-2),
                GaussianRational::from_int(1),
            ])
        );
    }

    #[test]
    fn zero_root_rejected() {
        assert!(FactoredPoly::new(vec![(GaussianRational::zero(), 1)]).is_err());
    }

    #[test]
    fn divisor_enumeration() {
        let d = fp(&[(1, 2), (2, 1)]).divisors();
        // (2+1)*(1+1) = 6 sub-multiplicity choices
        assert_eq!(d.len(), 6);
        assert!(d.iter().any(|q| q.is_constant()));
        assert!(d.iter().any(|q| q.degree() == 3));
        for q in &d {
            assert_eq!(q.expand().coeff(0), GaussianRational::one());
        }
    }

    #[test]
    fn duplicate_roots_merge() {
        let q = fp(&[(1, 1), (1, 1)]);
        assert_eq!(q.degree(), 2);
        assert_eq!(q.multiplicity(&GaussianRational::from_int(1)), 2);
    }
}
