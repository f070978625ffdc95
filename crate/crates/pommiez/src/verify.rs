//! Hard-invariant verification suites.
//!
//! Unlike the audit module, every check here is expected to pass: these
//! are the identities the machinery guarantees, evaluated with exact
//! equality on fixed deterministic instance pools.

use crate::audit;
use crate::commutant::{bphi_apply, factorize, kernel_classify, FactorBranch};
use crate::duhamel::{duality_bridge, duhamel_invert, duhamel_product, DuhamelConfig};
use crate::error::{Error, Result};
use crate::factored::FactoredPoly;
use crate::functional::{delta_q, otimes, Functional};
use crate::jet::Jet;
use crate::linalg::{in_span, span_equal};
use crate::operators::{gbs_apply, gbs_matrix, m_apply, G0Config};
use crate::parse::{parse_function, parse_functional, poly_to_expr};
use crate::poly::Poly;
use crate::scalar::{factorial, GaussianRational};
use serde::{Deserialize, Serialize};

/// One named exact check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

/// All suite names, in canonical execution order.
pub const SUITES: &[&str] = &[
    "kernel-laws",
    "right-inverse",
    "algebra-morphism",
    "eigen-relation",
    "unit-laws",
    "canonical-kernels",
    "duhamel-ring",
    "duality",
    "inversion",
    "factorization",
    "audit-determinism",
    "roundtrip",
];

fn cfg_of(roots: &[(&str, u32)]) -> Result<G0Config> {
    let factors = roots
        .iter()
        .map(|&(r, m)| Ok((r.parse::<GaussianRational>()?, m)))
        .collect::<Result<Vec<_>>>()?;
    Ok(G0Config::new(
        FactoredPoly::new(factors)?,
        GaussianRational::zero(),
    ))
}

/// The three generator polynomials used across suites.
fn standard_cfgs() -> Result<Vec<G0Config>> {
    Ok(vec![
        cfg_of(&[("1", 1)])?,
        cfg_of(&[("1", 2)])?,
        cfg_of(&[("1", 1), ("2", 1)])?,
    ])
}

/// Deterministic single-atom functional pool: support points
/// {0, 1, 2, 1/2, i}, derivative orders up to 3.
fn functional_pool() -> Vec<Functional> {
    let pts: Vec<(&str, u32)> = vec![
        ("0", 0),
        ("0", 1),
        ("0", 3),
        ("1", 0),
        ("2", 0),
        ("1/2", 1),
        ("0+1*i", 0),
    ];
    let mut pool: Vec<Functional> = pts
        .into_iter()
        .map(|(p, k)| Functional::delta(p.parse().unwrap(), k))
        .collect();
    // one multi-atom member
    pool.push(pool[0].add(&pool[1].scale(&GaussianRational::from_int(2))));
    pool
}

/// Criterion 1: Ker D^n on the order-12 section equals g0 C[z]_{n-1}.
pub fn kernel_laws() -> Result<Vec<Check>> {
    let order = 12;
    let mut out = Vec::new();
    for cfg in standard_cfgs()? {
        for n in 1..=4usize {
            let null = gbs_matrix(&cfg, n, order).nullspace();
            let expected: Vec<Vec<GaussianRational>> = (0..n)
                .map(|j| cfg.g0().shift_up(j).coeff_vec(order + 1))
                .collect();
            out.push(check(
                format!("kernel of D^{n} for P={}", cfg.factored()),
                span_equal(&null, &expected),
                format!("nullity {} (expected {})", null.len(), n),
            ));
        }
    }
    Ok(out)
}

/// Criterion 2: D(M f) = f on the order-12 section.
pub fn right_inverse() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for cfg in standard_cfgs()? {
        let pass = (0..=12usize).all(|i| {
            let f = Poly::monomial(i);
            gbs_apply(&cfg, &m_apply(&f)) == f
        });
        out.push(check(
            format!("D(M z^i) = z^i for P={}", cfg.factored()),
            pass,
            "monomials through degree 12".to_string(),
        ));
    }
    Ok(out)
}

/// Criterion 3: the convolution-to-composition morphism plus
/// commutativity and associativity of the convolution on the pool.
pub fn algebra_morphism() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let pool = functional_pool();
    for cfg in [cfg_of(&[("1", 1)])?, cfg_of(&[("1", 1), ("2", 1)])?] {
        let mut pairs = 0usize;
        let mut morphism_ok = true;
        let mut commutative_ok = true;
        for phi in &pool {
            for psi in &pool {
                pairs += 1;
                let product = otimes(&cfg, phi, psi)?;
                for i in 0..=8usize {
                    let monomial = Poly::monomial(i);
                    let composed = bphi_apply(&cfg, phi, &bphi_apply(&cfg, psi, &monomial));
                    if bphi_apply(&cfg, &product, &monomial) != composed {
                        morphism_ok = false;
                    }
                }
                if product != otimes(&cfg, psi, phi)? {
                    commutative_ok = false;
                }
            }
        }
        out.push(check(
            format!("morphism on {} pairs for P={}", pairs, cfg.factored()),
            morphism_ok && pairs >= 25,
            "B of a product equals the composition, columns through degree 8".to_string(),
        ));
        out.push(check(
            format!("convolution commutes for P={}", cfg.factored()),
            commutative_ok,
            format!("{pairs} ordered pairs"),
        ));
        let mut associative_ok = true;
        for window in pool.windows(3) {
            let (a, b, c) = (&window[0], &window[1], &window[2]);
            let left = otimes(&cfg, &otimes(&cfg, a, b)?, c)?;
            let right = otimes(&cfg, a, &otimes(&cfg, b, c)?)?;
            if left != right {
                associative_ok = false;
            }
        }
        out.push(check(
            format!("convolution associates for P={}", cfg.factored()),
            associative_ok,
            format!("{} consecutive triples", pool.len() - 2),
        ));
    }
    Ok(out)
}

/// Criterion 4: B_phi(g0) = phi(g0) g0 on the pool.
pub fn eigen_relation() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for cfg in standard_cfgs()? {
        let pass = functional_pool().iter().all(|phi| {
            bphi_apply(&cfg, phi, cfg.g0()) == cfg.g0().scale(&phi.apply(cfg.g0()))
        });
        out.push(check(
            format!("eigen relation for P={}", cfg.factored()),
            pass,
            "whole functional pool".to_string(),
        ));
    }
    Ok(out)
}

/// Criterion 5: the three unit laws.
pub fn unit_laws() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cfg = cfg_of(&[("1", 1)])?;
    let unit = Functional::delta(GaussianRational::zero(), 0);
    let id_ok = (0..=12usize).all(|i| {
        let f = Poly::monomial(i);
        bphi_apply(&cfg, &unit, &f) == f
    });
    out.push(check(
        "operator of the unit functional is the identity",
        id_ok,
        "monomials through degree 12".to_string(),
    ));
    let mut conv_ok = true;
    for phi in functional_pool() {
        if otimes(&cfg, &unit, &phi)? != phi || otimes(&cfg, &phi, &unit)? != phi {
            conv_ok = false;
        }
    }
    out.push(check(
        "unit functional is neutral for the convolution",
        conv_ok,
        "whole functional pool".to_string(),
    ));
    let dcfg = DuhamelConfig::new(cfg.factored().clone(), GaussianRational::zero());
    let one = Jet::of_poly(&Poly::one(), &GaussianRational::zero(), 11);
    let mut jet_ok = true;
    for coeffs in [vec![1i64, 2, 3], vec![0, 0, 1, -1], vec![5]] {
        let h = Jet::of_poly(
            &Poly::from_coeffs(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect()),
            &GaussianRational::zero(),
            10,
        );
        if duhamel_product(&dcfg, &one, &h)? != h {
            jet_ok = false;
        }
    }
    out.push(check(
        "constant 1 is neutral for the product on jets",
        jet_ok,
        "order-10 jets".to_string(),
    ));
    Ok(out)
}

/// Criterion 6: Ker of the canonical-functional operator is the divisor
/// ideal, and its image lies in the predicted quotient span.
pub fn canonical_kernels() -> Result<Vec<Check>> {
    let order = 12usize;
    let mut out = Vec::new();
    for cfg in standard_cfgs()? {
        for q in cfg.factored().divisors() {
            if q.degree() == 0 {
                continue;
            }
            let phi = delta_q(&q)?;
            let cls = kernel_classify(&cfg, &phi, order)?;
            let eq = q.expand();
            let expected: Vec<Vec<GaussianRational>> = (0..=(order - q.degree()))
                .map(|j| eq.shift_up(j).coeff_vec(order + 1))
                .collect();
            let kernel_vectors: Vec<Vec<GaussianRational>> = cls
                .basis
                .iter()
                .map(|b| b.coeff_vec(order + 1))
                .collect();
            out.push(check(
                format!("kernel of delta({q}) operator for P={}", cfg.factored()),
                span_equal(&kernel_vectors, &expected),
                format!("classified as {}", cls.kind),
            ));
            // image span basis: P / (z - root)^s for every root of q
            let rows = order + cfg.deg_p() + 1;
            let mut image_basis: Vec<Vec<GaussianRational>> = Vec::new();
            for factor in q.factors() {
                let mut reduced = cfg.g0().clone();
                for _ in 0..factor.mult {
                    reduced = reduced.exact_div_linear(&factor.root)?;
                    image_basis.push(reduced.coeff_vec(rows));
                }
            }
            let image_ok = (0..=order).all(|i| {
                let img = bphi_apply(&cfg, &phi, &Poly::monomial(i)).coeff_vec(rows);
                in_span(&image_basis, &img)
            });
            out.push(check(
                format!("image of delta({q}) operator for P={}", cfg.factored()),
                image_ok,
                "contained in the predicted quotient span".to_string(),
            ));
        }
    }
    Ok(out)
}

/// Tiny deterministic generator for reproducible pseudo-random pools.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn small(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % ((hi - lo + 1) as u64)) as i64
    }

    fn poly(&mut self, degree: usize) -> Poly {
        let coeffs = (0..=degree)
            .map(|_| GaussianRational::from_int(self.small(-3, 3)))
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

/// Criterion 7: ring laws of the product plus the classical monomial law.
pub fn duhamel_ring() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let lambdas = ["0", "1/2"];
    let generators: Vec<FactoredPoly> = vec![
        FactoredPoly::one(),
        FactoredPoly::new(vec![(GaussianRational::from_int(1), 1)])?,
        FactoredPoly::new(vec![(GaussianRational::from_int(1), 2)])?,
        FactoredPoly::new(vec![
            (GaussianRational::from_int(1), 1),
            (GaussianRational::from_int(2), 1),
        ])?,
    ];
    let mut rng = Lcg(0x5eed);
    let mut triples = 0usize;
    let mut ring_ok = true;
    for p in &generators {
        for lambda in lambdas {
            let lambda: GaussianRational = lambda.parse()?;
            let dcfg = DuhamelConfig::new(p.clone(), lambda.clone());
            let m = dcfg.m();
            for _ in 0..3 {
                triples += 1;
                let order = 10 + 2 * m;
                let a = Jet::of_poly(&rng.poly(3), &lambda, order);
                let b = Jet::of_poly(&rng.poly(2), &lambda, order);
                let c = Jet::of_poly(&rng.poly(3), &lambda, order);
                let ab = duhamel_product(&dcfg, &a, &b)?;
                let ba = duhamel_product(&dcfg, &b, &a)?;
                if ab != ba {
                    ring_ok = false;
                }
                let left = duhamel_product(&dcfg, &ab, &c)?.truncate(10);
                let right = duhamel_product(&dcfg, &a, &duhamel_product(&dcfg, &b, &c)?)?
                    .truncate(10);
                if left != right {
                    ring_ok = false;
                }
            }
        }
    }
    out.push(check(
        "product commutes and associates",
        ring_ok && triples >= 20,
        format!("{triples} jet triples across 4 generators and 2 centers"),
    ));
    // classical monomial law for P = 1, lambda = 0
    let dcfg = DuhamelConfig::new(FactoredPoly::one(), GaussianRational::zero());
    let zero = GaussianRational::zero();
    let mut law_ok = true;
    for a in 0..=6usize {
        for b in 0..=6usize {
            let f = Jet::of_poly(&Poly::monomial(a), &zero, 12);
            let h = Jet::of_poly(&Poly::monomial(b), &zero, 12);
            let prod = duhamel_product(&dcfg, &f, &h)?;
            let coeff = &(&factorial(a) * &factorial(b)) / &factorial(a + b);
            let expected = Jet::of_poly(&Poly::monomial(a + b).scale(&coeff), &zero, 12);
            if prod != expected {
                law_ok = false;
            }
        }
    }
    out.push(check(
        "classical monomial law",
        law_ok,
        "z^a * z^b = a! b! / (a+b)! z^{a+b} for a, b <= 6".to_string(),
    ));
    Ok(out)
}

/// Criterion 8: transform duality between convolution and the product.
pub fn duality() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let pool = functional_pool();
    let mut pairs = 0usize;
    let mut ok = true;
    for cfg in [cfg_of(&[("1", 1)])?, cfg_of(&[("1", 1), ("2", 1)])?] {
        for phi in pool.iter().take(4) {
            for psi in pool.iter().take(4) {
                pairs += 1;
                if !duality_bridge(&cfg, phi, psi, 8)? {
                    ok = false;
                }
            }
        }
    }
    out.push(check(
        "transform carries convolution to the product",
        ok && pairs >= 10,
        format!("{pairs} pairs at order 8"),
    ));
    // explicit witness: both sides equal z^2/2 - z
    let cfg = cfg_of(&[("1", 1)])?;
    let d01 = Functional::delta(GaussianRational::zero(), 1);
    let theta = otimes(&cfg, &d01, &d01)?;
    let zero = GaussianRational::zero();
    let expected = Jet::of_poly(
        &Poly::from_coeffs(vec![
            "0".parse().unwrap(),
            "-1".parse().unwrap(),
            "1/2".parse().unwrap(),
        ]),
        &zero,
        8,
    );
    let lhs = Jet::of_exppoly(&theta.fourier_laplace(), &zero, 8)?;
    let dcfg = DuhamelConfig::new(cfg.factored().clone(), zero.clone());
    let f = Jet::of_exppoly(&d01.fourier_laplace(), &zero, 9)?;
    let h = Jet::of_exppoly(&d01.fourier_laplace(), &zero, 8)?;
    let rhs = duhamel_product(&dcfg, &f, &h)?;
    out.push(check(
        "witness: both sides of the duality equal z^2/2 - z",
        lhs == expected && rhs == expected,
        "phi = psi = delta(0,1), P = 1 - u".to_string(),
    ));
    Ok(out)
}

/// Criterion 9: classical inversion with exact back-substitution.
pub fn inversion() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let dcfg = DuhamelConfig::new(FactoredPoly::one(), GaussianRational::zero());
    let zero = GaussianRational::zero();
    let f = Jet::of_poly(&parse_function("1+z")?, &zero, 6);
    let g = Jet::of_poly(&Poly::monomial(1), &zero, 6);
    let h = duhamel_invert(&dcfg, &f, &g)?;
    let expected: Vec<GaussianRational> = ["0", "1", "-1/2", "1/6", "-1/24", "1/120", "-1/720"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    out.push(check(
        "classical inversion of 1+z against z",
        h.coeffs() == expected.as_slice(),
        format!("jet [{}]", h
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ")),
    ));
    let residual = duhamel_product(&dcfg, &f, &h)?;
    out.push(check(
        "back substitution reproduces the right-hand side",
        residual == g,
        "exact residual zero".to_string(),
    ));
    // commutant-side inversion on an invariant subspace
    let cfg = cfg_of(&[("1", 1)])?;
    let phi = Functional::delta(GaussianRational::zero(), 0)
        .add(&Functional::delta(GaussianRational::one(), 0));
    let target = cfg.g0() * &parse_function("2-z+z^2")?;
    let preimage = crate::commutant::invert_on_invariant(&cfg, &phi, &target)?;
    out.push(check(
        "inversion on an invariant subspace",
        bphi_apply(&cfg, &phi, &preimage) == target,
        "exact round trip".to_string(),
    ));
    Ok(out)
}

#[derive(Deserialize)]
struct FactorizationFixture {
    g0: FactoredPoly,
    lambda: GaussianRational,
    phi: String,
    order: usize,
    expected_branch: String,
    expected_q: Option<FactoredPoly>,
    expected_n: usize,
}

const FIXTURE_CANONICAL: &str = include_str!("../fixtures/factorization_canonical.json");
const FIXTURE_SHIFT: &str = include_str!("../fixtures/factorization_shift.json");

/// Criterion 10: the shipped factorization fixtures verify exactly.
pub fn factorization() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (label, raw) in [("canonical", FIXTURE_CANONICAL), ("shift", FIXTURE_SHIFT)] {
        let fixture: FactorizationFixture = serde_json::from_str(raw)?;
        let cfg = G0Config::new(fixture.g0.clone(), fixture.lambda.clone());
        let phi = parse_functional(&fixture.phi)?;
        let result = factorize(&cfg, &phi, fixture.order)?;
        let (branch_name, q, n) = match &result.branch {
            FactorBranch::Isomorphism => ("isomorphism", None, 0),
            FactorBranch::ShiftPower { n, .. } => ("shift-power", None, *n),
            FactorBranch::CanonicalTimesShift { q, n, .. } => {
                ("canonical-times-shift", Some(q.clone()), *n)
            }
        };
        let shape_ok = branch_name == fixture.expected_branch
            && q == fixture.expected_q
            && n == fixture.expected_n;
        out.push(check(
            format!("fixture {label}"),
            result.verified && shape_ok,
            format!("branch {}, verified {}", result.branch, result.verified),
        ));
    }
    Ok(out)
}

/// Criterion 11: the audit suite is byte-stable and reproduces the
/// recorded counterexample instances exactly.
pub fn audit_determinism() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let first = serde_json::to_string(&audit::default_suite()?)?;
    let second = serde_json::to_string(&audit::default_suite()?)?;
    out.push(check(
        "audit suite serialization is byte-stable",
        first == second,
        format!("{} bytes", first.len()),
    ));
    let suite = audit::default_suite()?;
    let find = |claim: &str, agree: bool| {
        suite
            .iter()
            .find(|r| r.claim_id == claim && r.agree == agree)
            .cloned()
    };
    let a = find("kernel-lemma", true);
    out.push(check(
        "instance: point functional kernel is the divisor ideal",
        a.map(|r| r.observed["kernel"].as_str().unwrap_or("").starts_with("PrincipalIdeal"))
            .unwrap_or(false),
        "kernel reported as a principal ideal truncation".to_string(),
    ));
    let b = find("injectivity-criterion", false);
    out.push(check(
        "instance: nonzero criterion with nontrivial kernel",
        b.map(|r| {
            r.observed["phi_g0"] == "-1" && r.observed["kernel_dim"] == 1
        })
        .unwrap_or(false),
        "phi(g0) = -1 while constants are annihilated".to_string(),
    ));
    let c = find("duhamel-criterion", false);
    out.push(check(
        "instance: criterion -1 with a singular product section",
        c.map(|r| {
            r.observed["criterion"] == "-1" && r.observed["invertible"] == false
        })
        .unwrap_or(false),
        "left operand z under P = 1 - u".to_string(),
    ));
    // the kernel witness of that section: z * jet(e^z, 8) = 0
    let dcfg = DuhamelConfig::new(
        FactoredPoly::new(vec![(GaussianRational::one(), 1)])?,
        GaussianRational::zero(),
    );
    let zero = GaussianRational::zero();
    let f = Jet::of_poly(&Poly::monomial(1), &zero, 9);
    let e = Functional::delta(GaussianRational::one(), 0).fourier_laplace();
    let h = Jet::of_exppoly(&e, &zero, 8)?;
    out.push(check(
        "instance: the exponential jet is annihilated",
        duhamel_product(&dcfg, &f, &h)?.is_zero(),
        "z * jet(e^z, 8) = 0".to_string(),
    ));
    let d = find("delta-orthogonality", false);
    out.push(check(
        "instance: coincident-point product is a nonzero idempotent",
        d.map(|r| r.observed["product"] == "delta(1,0)").unwrap_or(false),
        "delta(1,0) convolved with itself".to_string(),
    ));
    out.push(check(
        "instance: distinct-zero products vanish",
        find("delta-orthogonality", true).is_some(),
        "delta(1,0) against delta(2,0) under P = (1-z)(1-z/2)".to_string(),
    ));
    Ok(out)
}

/// Criterion 12 (library side): writer/parser round trip on 100
/// deterministically generated polynomials.
pub fn roundtrip() -> Result<Vec<Check>> {
    let mut rng = Lcg(0xabcdef);
    let mut ok = true;
    let mut first_failure = String::new();
    for k in 0..100usize {
        let degree = (k % 7) + 1;
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..=degree {
            let re = GaussianRational::ratio(rng.small(-5, 5), rng.small(1, 4));
            let im = GaussianRational::ratio(rng.small(-2, 2), rng.small(1, 3));
            coeffs.push(&re + &(&im * &GaussianRational::i()));
        }
        let p = Poly::from_coeffs(coeffs);
        let s = poly_to_expr(&p);
        match parse_function(&s) {
            Ok(back) if back == p => {}
            _ => {
                ok = false;
                if first_failure.is_empty() {
                    first_failure = s;
                }
            }
        }
    }
    Ok(vec![check(
        "expression round trip on 100 generated polynomials",
        ok,
        if ok {
            "all strings reparse to equal values".to_string()
        } else {
            format!("first failing string: {first_failure}")
        },
    )])
}

/// Runs one suite by name.
pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    match name {
        "kernel-laws" => kernel_laws(),
        "right-inverse" => right_inverse(),
        "algebra-morphism" => algebra_morphism(),
        "eigen-relation" => eigen_relation(),
        "unit-laws" => unit_laws(),
        "canonical-kernels" => canonical_kernels(),
        "duhamel-ring" => duhamel_ring(),
        "duality" => duality(),
        "inversion" => inversion(),
        "factorization" => factorization(),
        "audit-determinism" => audit_determinism(),
        "roundtrip" => roundtrip(),
        other => Err(Error::Invalid(format!("unknown suite {other:?}"))),
    }
}

/// Runs every suite; internal errors become failing checks rather than
/// aborting the run.
pub fn run_all() -> Vec<(String, Vec<Check>)> {
    SUITES
        .iter()
        .map(|&name| {
            let checks = run_suite(name).unwrap_or_else(|e| {
                vec![check(format!("{name} (execution)"), false, e.to_string())]
            });
            (name.to_string(), checks)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for (name, checks) in run_all() {
            assert!(!checks.is_empty(), "suite {name} produced no checks");
            for c in checks {
                assert!(c.pass, "suite {name}, check {:?}: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite("no-such-suite").is_err());
    }
}
