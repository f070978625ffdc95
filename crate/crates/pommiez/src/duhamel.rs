//! The generalized Duhamel product on truncated Taylor expansions.
//!
//! For a generator P with P(0) = 1 and an expansion point lambda, the
//! product acts on jets centered at lambda. Two independent closed forms
//! are evaluated for every product and compared coefficient by
//! coefficient; the segment integral reduces to the exact Beta rule
//! int_lambda^z (xi-lambda)^a (z-xi)^b dxi = a! b! / (a+b+1)! (z-lambda)^{a+b+1}.

use crate::audit::{AuditReport, CfgDesc};
use crate::error::{Error, Result};
use crate::factored::FactoredPoly;
use crate::functional::{otimes, Functional};
use crate::jet::Jet;
use crate::linalg::Matrix;
use crate::operators::{dz_bivar, G0Config};
use crate::poly::Poly;
use crate::scalar::{factorial, GaussianRational};

/// Fixes the generator polynomial P (value 1 at 0) and the expansion
/// point lambda of the product.
#[derive(Clone, Debug)]
pub struct DuhamelConfig {
    p: FactoredPoly,
    lambda: GaussianRational,
    p_expanded: Poly,
}

impl DuhamelConfig {
    pub fn new(p: FactoredPoly, lambda: GaussianRational) -> Self {
        let p_expanded = p.expand();
        Self { p, lambda, p_expanded }
    }

    pub fn factored(&self) -> &FactoredPoly {
        &self.p
    }

    pub fn lambda(&self) -> &GaussianRational {
        &self.lambda
    }

    pub fn p_expanded(&self) -> &Poly {
        &self.p_expanded
    }

    /// deg P.
    pub fn m(&self) -> usize {
        self.p.degree()
    }
}

/// The polynomials p_j with sum_j p_j(t) z^j = (P(t) - P(z)) / (t - z),
/// for 0 <= j <= m-1. Empty when P is constant.
pub fn pj_polys(cfg: &DuhamelConfig) -> Vec<Poly> {
    let m = cfg.m();
    if m == 0 {
        return Vec::new();
    }
    let b = dz_bivar(&cfg.p_expanded);
    (0..m)
        .map(|j| Poly::from_coeffs((0..m).map(|i| b.coeff(i, j)).collect()))
        .collect()
}

/// P(D) applied to a jet; the order drops by deg P.
pub fn pd_apply(cfg: &DuhamelConfig, f: &Jet) -> Result<Jet> {
    f.apply_diff(&cfg.p_expanded)
}

/// Coefficients of int_lambda^z a(xi) b(z + lambda - xi) dxi where the
/// closures return the Taylor coefficients of a in (xi - lambda) and of b
/// in (z - xi). Exact via the Beta rule.
fn segment_integral(
    a: impl Fn(usize) -> GaussianRational,
    b: impl Fn(usize) -> GaussianRational,
    center: &GaussianRational,
    target: usize,
) -> Jet {
    let mut coeffs = vec![GaussianRational::zero(); target + 1];
    for (c, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let mut acc = GaussianRational::zero();
        for i in 0..c {
            let j = c - 1 - i;
            let weight = &factorial(i) * &factorial(j);
            acc = &acc + &(&(&a(i) * &b(j)) * &weight);
        }
        *slot = &acc / &factorial(c);
    }
    Jet::new(center.clone(), target, coeffs)
}

/// The generalized Duhamel product of two jets centered at lambda.
///
/// The result order is min(f.order - deg P, h.order). Both closed forms
/// of the product are evaluated and must agree exactly.
pub fn duhamel_product(cfg: &DuhamelConfig, f: &Jet, h: &Jet) -> Result<Jet> {
    for jet in [f, h] {
        if jet.center() != &cfg.lambda {
            return Err(Error::CenterMismatch(
                jet.center().to_string(),
                cfg.lambda.to_string(),
            ));
        }
    }
    let m = cfg.m();
    if f.order() < m {
        return Err(Error::OrderTooSmall(format!(
            "left operand order {} below deg P = {}",
            f.order(),
            m
        )));
    }
    if m >= 1 && h.order() < m - 1 {
        return Err(Error::OrderTooSmall(format!(
            "right operand order {} cannot deliver the {} derivatives at lambda",
            h.order(),
            m - 1
        )));
    }
    let target = (f.order() - m).min(h.order());
    let big_f = pd_apply(cfg, f)?;

    // Shared tail: sum_j (t p_j)(D)(f) h^(j)(lambda).
    let mut tail = Jet::zero(cfg.lambda.clone(), target);
    for (j, pj) in pj_polys(cfg).iter().enumerate() {
        let hj = h.derivative_at_center(j);
        if hj.is_zero() {
            continue;
        }
        let term = f.apply_diff(&pj.shift_up(1))?.truncate(target).scale(&hj);
        tail = tail.add(&term)?;
    }

    // Form 1: h(lambda) P(D)f(z) + int P(D)f(xi) h'(z+lambda-xi) dxi - tail.
    let int1 = segment_integral(
        |i| big_f.coeff(i),
        |j| &h.coeff(j + 1) * &GaussianRational::from_int((j + 1) as i64),
        &cfg.lambda,
        target,
    );
    let form1 = big_f
        .truncate(target)
        .scale(&h.value())
        .add(&int1)?
        .sub(&tail)?;

    // Form 2: P(D)f(lambda) h(z) + int (P(D)f)'(eta) h(z+lambda-eta) deta - tail.
    let int2 = segment_integral(
        |i| &big_f.coeff(i + 1) * &GaussianRational::from_int((i + 1) as i64),
        |j| h.coeff(j),
        &cfg.lambda,
        target,
    );
    let form2 = h
        .truncate(target)
        .scale(&big_f.value())
        .add(&int2)?
        .sub(&tail)?;

    if form1 != form2 {
        return Err(Error::Invalid(
            "the two closed forms of the product disagree".into(),
        ));
    }
    Ok(form1)
}

/// Matrix of h -> f * h on the monomial jet basis of order `order`.
/// Requires order >= deg P - 1 and f.order >= order + deg P so that the
/// product retains full order.
pub fn duhamel_matrix(cfg: &DuhamelConfig, f: &Jet, order: usize) -> Result<Matrix> {
    let m = cfg.m();
    if f.order() < order + m {
        return Err(Error::OrderTooSmall(format!(
            "left operand order {} below section requirement {}",
            f.order(),
            order + m
        )));
    }
    let cols: Result<Vec<Vec<GaussianRational>>> = (0..=order)
        .map(|k| {
            let h = Jet::monomial(cfg.lambda.clone(), k, order);
            Ok(duhamel_product(cfg, f, &h)?.coeffs().to_vec())
        })
        .collect();
    Ok(Matrix::from_columns(order + 1, &cols?))
}

/// Solves f * h = g for h at the order of g, verifying the solution by an
/// exact back-substituted product.
pub fn duhamel_invert(cfg: &DuhamelConfig, f: &Jet, g: &Jet) -> Result<Jet> {
    if g.center() != &cfg.lambda {
        return Err(Error::CenterMismatch(
            g.center().to_string(),
            cfg.lambda.to_string(),
        ));
    }
    let order = g.order();
    let matrix = duhamel_matrix(cfg, f, order)?;
    let criterion = pd_apply(cfg, f)?.value();
    // A singular section may still be consistent for particular right-hand
    // sides, but then the solution is not unique; refuse it outright.
    if matrix.det().is_zero() {
        return Err(Error::SingularJetMatrix {
            criterion: criterion.to_string(),
        });
    }
    let coeffs = matrix.solve(g.coeffs()).map_err(|_| Error::SingularJetMatrix {
        criterion: criterion.to_string(),
    })?;
    let h = Jet::new(cfg.lambda.clone(), order, coeffs);
    let check = duhamel_product(cfg, f, &h)?;
    if check != g.truncate(check.order()) {
        return Err(Error::SingularJetMatrix {
            criterion: criterion.to_string(),
        });
    }
    Ok(h)
}

/// Audits the invertibility criterion for the multiplication operator
/// h -> f * h: predicted invertible exactly when P(D)(f)(lambda) != 0.
/// The observed side is the exact determinant of the jet-section matrix,
/// plus a kernel witness when the section is singular.
pub fn wigley_check(cfg: &DuhamelConfig, f: &Jet, order: usize) -> Result<AuditReport> {
    let criterion = pd_apply(cfg, f)?.value();
    let matrix = duhamel_matrix(cfg, f, order)?;
    let det = matrix.det();
    let invertible = !det.is_zero();
    let witness: Option<Vec<String>> = if invertible {
        None
    } else {
        matrix
            .nullspace()
            .first()
            .map(|v| v.iter().map(|c| c.to_string()).collect())
    };
    let predicted_invertible = !criterion.is_zero();
    Ok(AuditReport {
        claim_id: "duhamel-criterion".to_string(),
        cfg: CfgDesc {
            p: cfg.p.factors().to_vec(),
            lambda_q: cfg.lambda.clone(),
        },
        phi: Vec::new(),
        observed: serde_json::json!({
            "criterion": criterion.to_string(),
            "section_order": order,
            "determinant": det.to_string(),
            "invertible": invertible,
            "kernel_witness": witness,
        }),
        predicted: format!(
            "multiplication by f is invertible if and only if P(D)(f)(lambda) != 0; \
             criterion value here is {}",
            criterion
        ),
        agree: predicted_invertible == invertible,
    })
}

/// Checks the transform identity between convolution of functionals and
/// the Duhamel product of their images, as order-`order` jets at 0.
/// Requires the shared expansion point to be 0, where exponential
/// polynomials have exact rational Taylor coefficients.
pub fn duality_bridge(
    cfg: &G0Config,
    phi: &Functional,
    psi: &Functional,
    order: usize,
) -> Result<bool> {
    if !cfg.lambda_q().is_zero() {
        return Err(Error::NonzeroCenterForExpPoly);
    }
    let m = cfg.deg_p();
    let theta = otimes(cfg, phi, psi)?;
    let zero = GaussianRational::zero();
    let lhs = Jet::of_exppoly(&theta.fourier_laplace(), &zero, order)?;
    let dcfg = DuhamelConfig::new(cfg.factored().clone(), zero.clone());
    let f = Jet::of_exppoly(&phi.fourier_laplace(), &zero, order + m)?;
    let h = Jet::of_exppoly(&psi.fourier_laplace(), &zero, order)?;
    let rhs = duhamel_product(&dcfg, &f, &h)?;
    Ok(lhs == rhs)
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

    fn dcfg_1z() -> DuhamelConfig {
        DuhamelConfig::new(
            FactoredPoly::new(vec![(gr("1"), 1)]).unwrap(),
            GaussianRational::zero(),
        )
    }

    fn dcfg_trivial() -> DuhamelConfig {
        DuhamelConfig::new(FactoredPoly::one(), GaussianRational::zero())
    }

    fn jet_of(poly: &Poly, order: usize) -> Jet {
        Jet::of_poly(poly, &GaussianRational::zero(), order)
    }

    #[test]
    fn pj_construction() {
        // P = 1-z: (P(t)-P(z))/(t-z) = -1
        let cfg = dcfg_1z();
        let pj = pj_polys(&cfg);
        assert_eq!(pj, vec![p(&[-1])]);
        assert!(pj_polys(&dcfg_trivial()).is_empty());
        // P = (1-z)^2 = 1-2z+z^2: quotient is -2 + t + z
        let cfg2 = DuhamelConfig::new(
            FactoredPoly::new(vec![(gr("1"), 2)]).unwrap(),
            GaussianRational::zero(),
        );
        assert_eq!(pj_polys(&cfg2), vec![p(&[-2, 1]), p(&[1])]);
    }

    #[test]
    fn unit_law() {
        let cfg = dcfg_1z();
        let f = jet_of(&p(&[2, 1, 0, 3]), 8);
        let unit = Jet::one(GaussianRational::zero(), 8);
        let prod = duhamel_product(&cfg, &f, &unit).unwrap();
        assert_eq!(prod, f.truncate(7));
        let prod = duhamel_product(&cfg, &unit.truncate(8), &f).unwrap();
        assert_eq!(prod, f.truncate(7));
    }

    #[test]
    fn linear_times_linear() {
        // P = 1-z, lambda = 0: z * z = z^2/2 - z
        let cfg = dcfg_1z();
        let z = jet_of(&Poly::monomial(1), 6);
        let prod = duhamel_product(&cfg, &z, &z).unwrap();
        let expected = jet_of(
            &Poly::from_coeffs(vec![gr("0"), gr("-1"), gr("1/2")]),
            5,
        );
        assert_eq!(prod, expected);
    }

    #[test]
    fn commutativity_and_associativity() {
        let cfg = dcfg_1z();
        let a = jet_of(&p(&[1, 2]), 10);
        let b = jet_of(&p(&[0, 1, 1]), 10);
        let c = jet_of(&p(&[3, 0, -1]), 10);
        let ab = duhamel_product(&cfg, &a, &b).unwrap();
        let ba = duhamel_product(&cfg, &b, &a).unwrap();
        assert_eq!(ab, ba);
        let ab_c = duhamel_product(&cfg, &ab, &c).unwrap();
        let bc = duhamel_product(&cfg, &b, &c).unwrap();
        let a_bc = duhamel_product(&cfg, &a, &bc).unwrap();
        assert_eq!(ab_c.truncate(8), a_bc.truncate(8));
    }

    #[test]
    fn classical_inversion() {
        // P = 1, lambda = 0, f = 1+z: solving f * h = z gives the
        // expansion of 1 - e^{-z}
        let cfg = dcfg_trivial();
        let f = jet_of(&p(&[1, 1]), 6);
        let g = jet_of(&Poly::monomial(1), 6);
        let h = duhamel_invert(&cfg, &f, &g).unwrap();
        assert_eq!(
            h.coeffs(),
            &[
                gr("0"),
                gr("1"),
                gr("-1/2"),
                gr("1/6"),
                gr("-1/24"),
                gr("1/120"),
                gr("-1/720"),
            ]
        );
    }

    #[test]
    fn singular_section_with_nonzero_criterion() {
        // P = 1-z, lambda = 0, f = z: the criterion is -1 yet z * e^z = 0
        let cfg = dcfg_1z();
        let f = jet_of(&Poly::monomial(1), 9);
        assert_eq!(pd_apply(&cfg, &f).unwrap().value(), gr("-1"));
        let e = Functional::delta(gr("1"), 0).fourier_laplace();
        let h = Jet::of_exppoly(&e, &GaussianRational::zero(), 8).unwrap();
        let prod = duhamel_product(&cfg, &f, &h).unwrap();
        assert!(prod.is_zero());
        let report = wigley_check(&cfg, &f, 6).unwrap();
        assert!(!report.agree);
        // inversion must fail despite the nonzero criterion
        let g = jet_of(&Poly::monomial(2), 6);
        assert!(matches!(
            duhamel_invert(&cfg, &f, &g),
            Err(Error::SingularJetMatrix { .. })
        ));
    }

    #[test]
    fn wigley_agreement_for_regular_operand() {
        let cfg = dcfg_1z();
        // f = 1: P(D)f(0) = 1, invertible section
        let report = wigley_check(&cfg, &jet_of(&Poly::one(), 9), 5).unwrap();
        assert!(report.agree);
        // criterion zero and section singular also agrees
        // f = 1 + z: P(D)f = 1 + z - 1 = z, value 0 at 0
        let report = wigley_check(&cfg, &jet_of(&p(&[1, 1]), 9), 5).unwrap();
        assert!(report.agree);
    }

    #[test]
    fn duality_with_convolution() {
        let cfg = cfg_from_roots(&[(1, 1)]);
        let d01 = Functional::delta(gr("0"), 1);
        assert!(duality_bridge(&cfg, &d01, &d01, 8).unwrap());
        let d10 = Functional::delta(gr("1"), 0);
        assert!(duality_bridge(&cfg, &d10, &d10, 8).unwrap());
        let mixed = d01.add(&d10.scale(&gr("2")));
        assert!(duality_bridge(&cfg, &mixed, &d01, 8).unwrap());
        let cfg2 = cfg_from_roots(&[(1, 1), (2, 1)]);
        assert!(duality_bridge(&cfg2, &d10, &Functional::delta(gr("2"), 0), 8).unwrap());
    }

    #[test]
    fn order_and_center_guards() {
        let cfg = dcfg_1z();
        let f = jet_of(&Poly::monomial(1), 0);
        let h = jet_of(&Poly::one(), 4);
        assert!(matches!(
            duhamel_product(&cfg, &f, &h),
            Err(Error::OrderTooSmall(_))
        ));
        let off_center = Jet::of_poly(&Poly::one(), &gr("1"), 4);
        assert!(matches!(
            duhamel_product(&cfg, &jet_of(&Poly::one(), 4), &off_center),
            Err(Error::CenterMismatch(_, _))
        ));
        assert!(matches!(
            duhamel_matrix(&cfg, &jet_of(&Poly::one(), 3), 5),
            Err(Error::OrderTooSmall(_))
        ));
    }
}
