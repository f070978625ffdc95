//! The shift-operator family acting exactly on polynomials: the
//! generalized backward shift, the multiplication operator M, the
//! divided-difference (Pommiez) operators and the two-point shift family.
//!
//! On this side of the duality the generator g0 is a polynomial with
//! g0(0) = 1, supplied in factored form. The parameter `lambda_q` tags the
//! dual-side expansion point and is consumed only by the Duhamel module.

use crate::bivar::BivarPoly;
use crate::factored::FactoredPoly;
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::scalar::GaussianRational;

/// Configuration fixing the generator g0 = expand(P) and the dual-side
/// expansion point.
#[derive(Clone, Debug)]
pub struct G0Config {
    p: FactoredPoly,
    lambda_q: GaussianRational,
    g0: Poly,
}

impl G0Config {
    pub fn new(p: FactoredPoly, lambda_q: GaussianRational) -> Self {
        let g0 = p.expand();
        debug_assert!(g0.coeff(0).is_one(), "expansion is normalized to 1 at 0");
        Self { p, lambda_q, g0 }
    }

    pub fn factored(&self) -> &FactoredPoly {
        &self.p
    }

    pub fn lambda_q(&self) -> &GaussianRational {
        &self.lambda_q
    }

    pub fn g0(&self) -> &Poly {
        &self.g0
    }

    pub fn deg_p(&self) -> usize {
        self.p.degree()
    }
}

/// The generalized backward shift: f -> (f - g0 f(0)) / z.
///
/// The division is always exact because g0(0) = 1 makes the numerator
/// vanish at 0.
pub fn gbs_apply(cfg: &G0Config, f: &Poly) -> Poly {
    let f0 = f.coeff(0);
    let num = f - &cfg.g0.scale(&f0);
    num.exact_div_z().expect("numerator vanishes at 0 by construction")
}

/// n-fold iteration of the generalized backward shift.
pub fn gbs_power(cfg: &G0Config, f: &Poly, n: usize) -> Poly {
    let mut acc = f.clone();
    for _ in 0..n {
        acc = gbs_apply(cfg, &acc);
    }
    acc
}

/// Multiplication by the independent variable; an exact right inverse of
/// the generalized backward shift since (M h)(0) = 0.
pub fn m_apply(f: &Poly) -> Poly {
    f.shift_up(1)
}

/// The divided difference (f(t) - f(z)) / (t - z) as an exact bivariate
/// polynomial.
pub fn dz_bivar(f: &Poly) -> BivarPoly {
    let num = &BivarPoly::from_t_poly(f) - &BivarPoly::from_z_poly(f);
    num.exact_div_t_minus_z()
        .expect("antisymmetric numerator vanishes on the diagonal")
}

/// The divided difference with the second variable pinned at z0, returned
/// as a polynomial in t.
pub fn dz_at(f: &Poly, z0: &GaussianRational) -> Poly {
    dz_bivar(f).subst_z(z0)
}

/// The two-point shift (t f(t) g0(z) - z f(z) g0(t)) / (t - z); the
/// numerator always vanishes on the diagonal so the quotient is exact.
pub fn shift_apply(cfg: &G0Config, f: &Poly) -> BivarPoly {
    let left = BivarPoly::from_t_poly(f).mul_t().mul_z_poly(&cfg.g0);
    let right = BivarPoly::from_z_poly(&m_apply(f)).mul_t_poly(&cfg.g0);
    (&left - &right)
        .exact_div_t_minus_z()
        .expect("shift numerator vanishes on the diagonal")
}

/// The un-weighted variant (f(t) g0(z) - f(z) g0(t)) / (t - z).
pub fn tilde_shift_apply(cfg: &G0Config, f: &Poly) -> BivarPoly {
    let left = BivarPoly::from_t_poly(f).mul_z_poly(&cfg.g0);
    let right = BivarPoly::from_z_poly(f).mul_t_poly(&cfg.g0);
    (&left - &right)
        .exact_div_t_minus_z()
        .expect("tilde numerator vanishes on the diagonal")
}

/// Matrix of the n-fold backward shift on the monomial basis of C[z]_N.
/// Valid whenever deg g0 <= N + 1, in which case the image stays inside
/// C[z]_N.
pub fn gbs_matrix(cfg: &G0Config, n: usize, order: usize) -> Matrix {
    let cols: Vec<Vec<GaussianRational>> = (0..=order)
        .map(|i| gbs_power(cfg, &Poly::monomial(i), n).coeff_vec(order + 1))
        .collect();
    Matrix::from_columns(order + 1, &cols)
}

/// Sanity check exposed for the operator lattice work: is the closed-form
/// diagonal of the two-point shift consistent with its bivariate value?
pub fn shift_diagonal_closed_form(cfg: &G0Config, f: &Poly) -> Poly {
    // z g0(z) f'(z) - z f(z) g0'(z) + f(z) g0(z)
    let z = Poly::monomial(1);
    let a = &(&z * &cfg.g0) * &f.derivative();
    let b = &(&z * f) * &cfg.g0.derivative();
    let c = f * &cfg.g0;
    &(&a - &b) + &c
}

/// Verifies `shift_apply` against the bivariate identity expressing it
/// through divided differences of M f and g0.
pub fn shift_identity_holds(cfg: &G0Config, f: &Poly) -> bool {
    let mf = m_apply(f);
    let lhs = shift_apply(cfg, f);
    let rhs = &dz_bivar(&mf).mul_z_poly(&cfg.g0)
        - &dz_bivar(&cfg.g0).mul_z_poly(&mf);
    lhs == rhs
}

/// Convenience: a config from integer roots, multiplicity one each.
#[cfg(test)]
pub(crate) fn cfg_from_roots(roots: &[(i64, u32)]) -> G0Config {
    let factors = roots
        .iter()
        .map(|&(r, m)| (GaussianRational::from_int(r), m))
        .collect();
    G0Config::new(FactoredPoly::new(factors).unwrap(), GaussianRational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factored::FactoredPoly;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    fn cfg_1z() -> G0Config {
        cfg_from_roots(&[(1, 1)])
    }

    /// g0 = (1-z)(1-z/2)
    fn cfg_two_roots() -> G0Config {
        let factors = vec![
            (GaussianRational::from_int(1), 1),
            (GaussianRational::from_int(2), 1),
        ];
        G0Config::new(FactoredPoly::new(factors).unwrap(), GaussianRational::zero())
    }

    #[test]
    fn backward_shift_basics() {
        let cfg = cfg_1z();
        // f = g0 lies in the kernel
        assert!(gbs_apply(&cfg, &p(&[1, -1])).is_zero());
        // f(0) = 0 reduces to the plain shift
        assert_eq!(gbs_apply(&cfg, &p(&[0, 0, 1])), p(&[0, 1]));
        // (1 - (1-t))/t = 1
        assert_eq!(gbs_apply(&cfg, &p(&[1])), p(&[1]));
    }

    #[test]
    fn kernel_of_power() {
        let cfg = cfg_1z();
        // f = (1-z) z lies in g0 C[z]_1, so two applications kill it
        let f = &p(&[1, -1]) * &p(&[0, 1]);
        assert!(!gbs_power(&cfg, &f, 1).is_zero());
        assert!(gbs_power(&cfg, &f, 2).is_zero());
        assert!(gbs_power(&cfg, &Poly::zero(), 3).is_zero());
    }

    #[test]
    fn m_is_right_inverse() {
        let cfg = cfg_two_roots();
        for f in [p(&[1]), p(&[0, 1]), p(&[1, 1]), p(&[3, -2, 0, 5])] {
            assert_eq!(gbs_apply(&cfg, &m_apply(&f)), f);
        }
        assert_eq!(m_apply(&p(&[1])), p(&[0, 1]));
        assert_eq!(m_apply(&p(&[0, 1])), p(&[0, 0, 1]));
    }

    #[test]
    fn pommiez_divided_differences() {
        // f = z^2 -> t + z
        let d = dz_bivar(&p(&[0, 0, 1]));
        assert_eq!(d.coeff(1, 0), GaussianRational::one());
        assert_eq!(d.coeff(0, 1), GaussianRational::one());
        assert!(dz_bivar(&p(&[7])).is_zero());
        // (t^3 - 1)/(t - 1) = t^2 + t + 1
        assert_eq!(dz_at(&p(&[0, 0, 0, 1]), &GaussianRational::one()), p(&[1, 1, 1]));
    }

    #[test]
    fn shift_examples() {
        let cfg = cfg_1z();
        // f = 1: numerator is t - z, quotient 1
        assert_eq!(shift_apply(&cfg, &p(&[1])), BivarPoly::from_z_poly(&Poly::one()));
        // f = t: quotient t + z - t z
        let s = shift_apply(&cfg, &p(&[0, 1]));
        assert_eq!(s.coeff(1, 0), GaussianRational::one());
        assert_eq!(s.coeff(0, 1), GaussianRational::one());
        assert_eq!(s.coeff(1, 1), GaussianRational::from_int(-1));
        assert!(shift_apply(&cfg, &Poly::zero()).is_zero());
    }

    #[test]
    fn tilde_shift_examples() {
        let cfg = cfg_1z();
        assert_eq!(
            tilde_shift_apply(&cfg, &p(&[1])),
            BivarPoly::from_z_poly(&Poly::one())
        );
        assert!(tilde_shift_apply(&cfg, cfg.g0()).is_zero());
        assert!(tilde_shift_apply(&cfg, &Poly::zero()).is_zero());
    }

    #[test]
    fn perturbation_of_plain_shift() {
        // gbs(f) = D0(f) + f(0) (1 - g0)/z
        let cfg = cfg_two_roots();
        for f in [p(&[1]), p(&[2, 1]), p(&[1, 0, 0, 4])] {
            let d0 = (&f - &Poly::constant(f.coeff(0))).exact_div_z().unwrap();
            let corr = (&Poly::one() - cfg.g0())
                .exact_div_z()
                .unwrap()
                .scale(&f.coeff(0));
            assert_eq!(gbs_apply(&cfg, &f), &d0 + &corr);
        }
    }

    #[test]
    fn shift_symmetry_and_identity() {
        let cfg = cfg_two_roots();
        for f in [p(&[1]), p(&[0, 1]), p(&[1, 2, 3])] {
            let s = shift_apply(&cfg, &f);
            assert_eq!(s, s.transpose(), "two-point shift is symmetric");
            assert!(shift_identity_holds(&cfg, &f));
            // diagonal agrees with the closed form
            assert_eq!(s.diagonal(), shift_diagonal_closed_form(&cfg, &f));
        }
    }
}
