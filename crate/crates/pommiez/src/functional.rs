//! Finite-support analytic functionals: exact linear combinations of
//! point-derivative evaluations f -> f^(k)(mu).
//!
//! These are the computable dense subclass of the dual space. The module
//! provides application to polynomials and bivariate polynomials, the
//! canonical functional attached to a divisor, the convolution product
//! induced by the two-point shift family, and the Fourier-Laplace
//! transform into exponential polynomials.

use crate::bivar::BivarPoly;
use crate::commutant::bphi_apply;
use crate::error::{Error, Result};
use crate::exppoly::ExpPoly;
use crate::factored::FactoredPoly;
use crate::linalg::Matrix;
use crate::operators::G0Config;
use crate::poly::Poly;
use crate::scalar::{falling, GaussianRational};
use serde::{Deserialize, Serialize};
use std::fmt;

/// One term coeff * delta_{point, order}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub point: GaussianRational,
    pub order: u32,
    pub coeff: GaussianRational,
}

/// A finite linear combination of point-derivative functionals, kept in
/// canonical form: atoms sorted by (point, order), no zero coefficients,
/// no repeated (point, order) pairs.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Functional {
    atoms: Vec<Atom>,
}

impl Functional {
    pub fn zero() -> Self {
        Self { atoms: Vec::new() }
    }

    /// delta_{point, order} with unit coefficient.
    pub fn delta(point: GaussianRational, order: u32) -> Self {
        Self::new(vec![Atom {
            point,
            order,
            coeff: GaussianRational::one(),
        }])
    }

    pub fn new(atoms: Vec<Atom>) -> Self {
        let mut merged: Vec<Atom> = Vec::new();
        for atom in atoms {
            match merged
                .iter_mut()
                .find(|a| a.point == atom.point && a.order == atom.order)
            {
                Some(a) => a.coeff = &a.coeff + &atom.coeff,
                None => merged.push(atom),
            }
        }
        merged.retain(|a| !a.coeff.is_zero());
        merged.sort_by(|a, b| a.point.cmp(&b.point).then(a.order.cmp(&b.order)));
        Self { atoms: merged }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Highest derivative order appearing; 0 for the zero functional.
    pub fn max_order(&self) -> u32 {
        self.atoms.iter().map(|a| a.order).max().unwrap_or(0)
    }

    /// Distinct support points.
    pub fn support(&self) -> Vec<GaussianRational> {
        let mut pts: Vec<GaussianRational> =
            self.atoms.iter().map(|a| a.point.clone()).collect();
        pts.dedup();
        pts
    }

    pub fn add(&self, other: &Functional) -> Functional {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Functional::new(atoms)
    }

    pub fn scale(&self, c: &GaussianRational) -> Functional {
        Functional::new(
            self.atoms
                .iter()
                .map(|a| Atom {
                    point: a.point.clone(),
                    order: a.order,
                    coeff: &a.coeff * c,
                })
                .collect(),
        )
    }

    /// Applies the functional to a polynomial.
    pub fn apply(&self, f: &Poly) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for a in &self.atoms {
            acc = &acc + &(&a.coeff * &f.derivative_at(a.order as usize, &a.point));
        }
        acc
    }

    /// Applies the functional in the t variable of a bivariate polynomial,
    /// leaving a polynomial in z.
    pub fn apply_bivar_t(&self, b: &BivarPoly) -> Poly {
        let mut acc = Poly::zero();
        for a in &self.atoms {
            let mut d = b.clone();
            for _ in 0..a.order {
                d = d.deriv_t();
            }
            acc = &acc + &d.subst_t(&a.point).scale(&a.coeff);
        }
        acc
    }

    /// The functional f -> self(p * f), expanded atom-by-atom via the
    /// Leibniz rule.
    pub fn compose_mul(&self, p: &Poly) -> Functional {
        let mut atoms = Vec::new();
        for a in &self.atoms {
            let k = a.order as usize;
            for s in 0..=k {
                let factor = &crate::scalar::binomial(k, s) * &p.derivative_at(s, &a.point);
                atoms.push(Atom {
                    point: a.point.clone(),
                    order: (k - s) as u32,
                    coeff: &a.coeff * &factor,
                });
            }
        }
        Functional::new(atoms)
    }

    /// Fourier-Laplace transform: the image of delta_{mu,k} is z^k e^{mu z}.
    pub fn fourier_laplace(&self) -> ExpPoly {
        ExpPoly::from_terms(
            self.atoms
                .iter()
                .map(|a| {
                    (
                        a.point.clone(),
                        Poly::monomial(a.order as usize).scale(&a.coeff),
                    )
                })
                .collect(),
        )
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::functional_to_expr(self))
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functional({})", self)
    }
}

/// The canonical functional attached to a nonconstant divisor q: the sum of
/// delta_{root, k} over every root of q and every k below its multiplicity.
pub fn delta_q(q: &FactoredPoly) -> Result<Functional> {
    if q.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut atoms = Vec::new();
    for f in q.factors() {
        for k in 0..f.mult {
            atoms.push(Atom {
                point: f.root.clone(),
                order: k,
                coeff: GaussianRational::one(),
            });
        }
    }
    Ok(Functional::new(atoms))
}

/// Extra monomial moments verified beyond the determining degree during
/// convolution reconstruction.
const EXTRA_MOMENTS: usize = 5;

/// The convolution product of two finite-support functionals.
///
/// The defining double application always yields another finite-support
/// functional whose support lies in the union of the operand supports. It
/// is recovered by sampling monomial moments through the commutant
/// operator of `psi` and solving the exact confluent interpolation system;
/// five extra moments guard the derivative-order bound, which escalates by
/// one (three times at most) if the system is inconsistent.
pub fn otimes(cfg: &G0Config, phi: &Functional, psi: &Functional) -> Result<Functional> {
    if phi.is_zero() || psi.is_zero() {
        return Ok(Functional::zero());
    }
    let mut points = phi.support();
    for p in psi.support() {
        if !points.contains(&p) {
            points.push(p);
        }
    }
    points.sort();

    let base_bound = (phi.max_order() + psi.max_order() + 1) as usize;
    let mut last_err = String::new();
    for escalation in 0..=3 {
        let bound = base_bound + escalation;
        let unknowns: Vec<(GaussianRational, u32)> = points
            .iter()
            .flat_map(|p| (0..=bound as u32).map(move |k| (p.clone(), k)))
            .collect();
        let n_unknowns = unknowns.len();
        let n_moments = n_unknowns + EXTRA_MOMENTS;

        let moments: Vec<GaussianRational> = (0..n_moments)
            .map(|i| phi.apply(&bphi_apply(cfg, psi, &Poly::monomial(i))))
            .collect();

        // row i: sum over unknown atoms of d^k/dz^k z^i at mu
        let mut system = Matrix::zeros(n_moments, n_unknowns);
        for (i, _) in moments.iter().enumerate() {
            for (j, (mu, k)) in unknowns.iter().enumerate() {
                let k = *k as usize;
                let entry = if k > i {
                    GaussianRational::zero()
                } else {
                    &falling(i, k) * &mu.pow((i - k) as u32)
                };
                system.set(i, j, entry);
            }
        }
        match system.solve(&moments) {
            Ok(coeffs) => {
                let atoms = unknowns
                    .into_iter()
                    .zip(coeffs)
                    .map(|((point, order), coeff)| Atom { point, order, coeff })
                    .collect();
                return Ok(Functional::new(atoms));
            }
            Err(_) => {
                last_err = format!(
                    "order bound {} left the moment system inconsistent",
                    bound
                );
            }
        }
    }
    Err(Error::ReconstructionInconsistent(last_err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::cfg_from_roots;

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    #[test]
    fn point_derivative_application() {
        let f = p(&[1, -1]);
        assert!(Functional::delta(gr("1"), 0).apply(&f).is_zero());
        assert_eq!(Functional::delta(gr("0"), 1).apply(&f), gr("-1"));
        // (delta_{1,0} + 2 delta_{0,2}) on z^2 -> 1 + 4 = 5
        let phi = Functional::delta(gr("1"), 0)
            .add(&Functional::delta(gr("0"), 2).scale(&gr("2")));
        assert_eq!(phi.apply(&p(&[0, 0, 1])), gr("5"));
    }

    #[test]
    fn monomial_moment_formula() {
        // delta_{mu,k}(z^n) = n!/(n-k)! mu^{n-k} for n >= k, else 0
        let mu = gr("1/2");
        for k in 0..4u32 {
            let phi = Functional::delta(mu.clone(), k);
            for n in 0..7usize {
                let expected = if (k as usize) > n {
                    GaussianRational::zero()
                } else {
                    &falling(n, k as usize) * &mu.pow((n - k as usize) as u32)
                };
                assert_eq!(phi.apply(&Poly::monomial(n)), expected);
            }
        }
    }

    #[test]
    fn canonical_functionals() {
        let q = FactoredPoly::new(vec![(gr("1"), 1)]).unwrap();
        assert_eq!(delta_q(&q).unwrap(), Functional::delta(gr("1"), 0));
        let q2 = FactoredPoly::new(vec![(gr("1"), 2)]).unwrap();
        assert_eq!(
            delta_q(&q2).unwrap(),
            Functional::delta(gr("1"), 0).add(&Functional::delta(gr("1"), 1))
        );
        let q3 = FactoredPoly::new(vec![(gr("1"), 1), (gr("2"), 1)]).unwrap();
        assert_eq!(
            delta_q(&q3).unwrap(),
            Functional::delta(gr("1"), 0).add(&Functional::delta(gr("2"), 0))
        );
        assert!(delta_q(&FactoredPoly::one()).is_err());
    }

    #[test]
    fn convolution_unit() {
        let cfg = cfg_from_roots(&[(1, 1)]);
        let unit = Functional::delta(gr("0"), 0);
        for psi in [
            Functional::delta(gr("1"), 0),
            Functional::delta(gr("0"), 1),
            Functional::delta(gr("1/2"), 2).scale(&gr("3")),
        ] {
            assert_eq!(otimes(&cfg, &unit, &psi).unwrap(), psi);
            assert_eq!(otimes(&cfg, &psi, &unit).unwrap(), psi);
        }
    }

    #[test]
    fn orthogonality_at_distinct_roots() {
        let cfg = cfg_from_roots(&[(1, 1), (2, 1)]);
        let a = Functional::delta(gr("1"), 0);
        let b = Functional::delta(gr("2"), 0);
        assert!(otimes(&cfg, &a, &b).unwrap().is_zero());
    }

    #[test]
    fn coincident_point_product_against_oracle() {
        // g0 = 1-z: (delta_{0,1} x delta_{0,1})(f) = -f'(0) + f''(0)/2,
        // brute forced over monomials
        let cfg = cfg_from_roots(&[(1, 1)]);
        let d01 = Functional::delta(gr("0"), 1);
        let theta = otimes(&cfg, &d01, &d01).unwrap();
        let expected = Functional::delta(gr("0"), 1)
            .scale(&gr("-1"))
            .add(&Functional::delta(gr("0"), 2).scale(&gr("1/2")));
        assert_eq!(theta, expected);
        for i in 0..10 {
            let monomial = Poly::monomial(i);
            let direct = d01.apply(&bphi_apply(&cfg, &d01, &monomial));
            assert_eq!(theta.apply(&monomial), direct);
        }
    }

    #[test]
    fn transform_images() {
        assert_eq!(
            Functional::delta(gr("0"), 0).fourier_laplace(),
            ExpPoly::from_terms(vec![(gr("0"), Poly::one())])
        );
        assert_eq!(
            Functional::delta(gr("0"), 1).fourier_laplace(),
            ExpPoly::from_terms(vec![(gr("0"), Poly::monomial(1))])
        );
        assert_eq!(
            Functional::delta(gr("1"), 0).fourier_laplace(),
            ExpPoly::from_terms(vec![(gr("1"), Poly::one())])
        );
    }

    #[test]
    fn transform_structurally_injective() {
        let a = Functional::delta(gr("1"), 0).add(&Functional::delta(gr("0"), 2));
        let b = Functional::delta(gr("1"), 0).add(&Functional::delta(gr("0"), 1));
        assert_ne!(a.fourier_laplace(), b.fourier_laplace());
    }

    #[test]
    fn compose_mul_matches_direct_application() {
        let phi = Functional::delta(gr("1/2"), 2).add(&Functional::delta(gr("0"), 1));
        let mult = p(&[0, 0, 1]);
        let composed = phi.compose_mul(&mult);
        for i in 0..8 {
            let f = Poly::monomial(i);
            assert_eq!(composed.apply(&f), phi.apply(&(&mult * &f)));
        }
    }
}
