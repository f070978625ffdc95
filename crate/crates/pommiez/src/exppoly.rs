//! Exponential polynomials: finite sums of p_j(z) e^{mu_j z} with
//! polynomial coefficients and pairwise distinct frequencies.

use crate::poly::Poly;
use crate::scalar::GaussianRational;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: Vec<(GaussianRational, Poly)>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    /// Builds from (frequency, polynomial) terms, merging repeated
    /// frequencies and dropping zero polynomials.
    pub fn from_terms(terms: Vec<(GaussianRational, Poly)>) -> Self {
        let mut merged: Vec<(GaussianRational, Poly)> = Vec::new();
        for (freq, poly) in terms {
            match merged.iter_mut().find(|(f, _)| *f == freq) {
                Some((_, p)) => *p = &*p + &poly,
                None => merged.push((freq, poly)),
            }
        }
        merged.retain(|(_, p)| !p.is_zero());
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        Self { terms: merged }
    }

    pub fn terms(&self) -> &[(GaussianRational, Poly)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ExpPoly::from_terms(terms)
    }

    pub fn scale(&self, c: &GaussianRational) -> ExpPoly {
        ExpPoly::from_terms(
            self.terms
                .iter()
                .map(|(f, p)| (f.clone(), p.scale(c)))
                .collect(),
        )
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(freq, poly)| {
                if freq.is_zero() {
                    format!("({})", poly)
                } else {
                    format!("({})*e^({}*z)", poly, freq)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_trim() {
        let one = Poly::one();
        let e = ExpPoly::from_terms(vec![
            (GaussianRational::one(), one.clone()),
            (GaussianRational::one(), -&one),
        ]);
        assert!(e.is_zero());
    }

    #[test]
    fn distinct_frequencies_kept() {
        let e = ExpPoly::from_terms(vec![
            (GaussianRational::zero(), Poly::monomial(1)),
            (GaussianRational::one(), Poly::one()),
        ]);
        assert_eq!(e.terms().len(), 2);
        assert_eq!(e.to_string(), "(z) + (1)*e^(1*z)");
    }
}
