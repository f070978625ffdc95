//! Scenario files: a JSON description of a generator configuration plus a
//! list of tasks, executed deterministically into a JSON report.

use crate::audit;
use crate::commutant::{bphi_apply, factorize, invert_on_invariant, kernel_classify};
use crate::duhamel::{duhamel_invert, duhamel_product, DuhamelConfig};
use crate::error::{Error, Result};
use crate::factored::FactoredPoly;
use crate::functional::otimes;
use crate::jet::Jet;
use crate::operators::{gbs_power, G0Config};
use crate::parse::{functional_to_expr, parse_function, parse_functional, poly_to_expr};
use crate::scalar::GaussianRational;
use crate::verify;
use serde::{Deserialize, Serialize};
use serde_json::json;

fn default_lambda() -> GaussianRational {
    GaussianRational::zero()
}

fn default_jet_order() -> usize {
    12
}

/// A scenario file: generator, expansion point, working order, tasks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scenario {
    pub g0: FactoredPoly,
    #[serde(default = "default_lambda")]
    pub lambda: GaussianRational,
    #[serde(default = "default_jet_order")]
    pub jet_order: usize,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

/// One task record, dispatched on its `op` field.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Task {
    /// Apply the n-fold backward shift (default n = 1) or, with `phi`,
    /// the commutant operator of `phi`, to the function `f`.
    Eval {
        f: String,
        #[serde(default)]
        phi: Option<String>,
        #[serde(default)]
        n: Option<usize>,
    },
    /// Convolution of two functionals.
    Otimes { phi: String, psi: String },
    /// Product of two functions as jets at lambda.
    Duhamel { f: String, h: String },
    /// Solve B_phi(x) = g on an invariant subspace (with `phi`) or
    /// f * x = g on jets (with `f`).
    Invert {
        g: String,
        #[serde(default)]
        phi: Option<String>,
        #[serde(default)]
        f: Option<String>,
    },
    /// Classify the kernel of the operator of `phi`.
    Classify { phi: String },
    /// Factorize the operator of `phi`.
    Factorize { phi: String },
    /// Fourier-Laplace transform of `phi`.
    Transform { phi: String },
    /// Run verification suites (all when empty).
    Verify {
        #[serde(default)]
        suites: Vec<String>,
    },
    /// Run the audit suite, optionally filtered by claim id.
    Audit {
        #[serde(default)]
        claims: Vec<String>,
    },
}

/// Reads and validates a scenario from JSON text.
pub fn parse_scenario(src: &str) -> Result<Scenario> {
    let sc: Scenario = serde_json::from_str(src)?;
    // Re-run constructor validation: deserialization bypasses it.
    let factors = sc.g0.factors().iter().map(|f| (f.root.clone(), f.mult)).collect();
    let g0 = FactoredPoly::new(factors)?;
    Ok(Scenario { g0, ..sc })
}

fn jet_of(expr: &str, center: &GaussianRational, order: usize) -> Result<Jet> {
    Ok(Jet::of_poly(&parse_function(expr)?, center, order))
}

fn jet_json(j: &Jet) -> serde_json::Value {
    json!({
        "center": j.center().to_string(),
        "order": j.order(),
        "coeffs": j.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn run_task(
    cfg: &G0Config,
    dcfg: &DuhamelConfig,
    jet_order: usize,
    task: &Task,
) -> Result<serde_json::Value> {
    Ok(match task {
        Task::Eval { f, phi, n } => {
            let f = parse_function(f)?;
            let result = match phi {
                Some(phi) => bphi_apply(cfg, &parse_functional(phi)?, &f),
                None => gbs_power(cfg, &f, n.unwrap_or(1)),
            };
            json!({
                "op": "eval",
                "result": poly_to_expr(&result),
                "coeffs": result,
            })
        }
        Task::Otimes { phi, psi } => {
            let theta = otimes(cfg, &parse_functional(phi)?, &parse_functional(psi)?)?;
            json!({
                "op": "otimes",
                "result": functional_to_expr(&theta),
                "atoms": theta.atoms(),
            })
        }
        Task::Duhamel { f, h } => {
            let m = dcfg.m();
            let fj = jet_of(f, dcfg.lambda(), jet_order + m)?;
            let hj = jet_of(h, dcfg.lambda(), jet_order)?;
            let prod = duhamel_product(dcfg, &fj, &hj)?;
            json!({ "op": "duhamel", "result": jet_json(&prod) })
        }
        Task::Invert { g, phi: Some(phi), f: None } => {
            let target = parse_function(g)?;
            let preimage = invert_on_invariant(cfg, &parse_functional(phi)?, &target)?;
            json!({
                "op": "invert",
                "result": poly_to_expr(&preimage),
                "coeffs": preimage,
            })
        }
        Task::Invert { g, phi: None, f: Some(f) } => {
            let m = dcfg.m();
            let fj = jet_of(f, dcfg.lambda(), jet_order + m)?;
            let gj = jet_of(g, dcfg.lambda(), jet_order)?;
            let h = duhamel_invert(dcfg, &fj, &gj)?;
            json!({ "op": "invert", "result": jet_json(&h) })
        }
        Task::Invert { .. } => {
            return Err(Error::Invalid(
                "invert needs exactly one of `phi` (operator inversion) or `f` (product inversion)"
                    .into(),
            ))
        }
        Task::Classify { phi } => {
            let cls = kernel_classify(cfg, &parse_functional(phi)?, jet_order)?;
            json!({
                "op": "classify",
                "kind": cls.kind.to_string(),
                "dim": cls.basis.len(),
                "basis": cls.basis.iter().map(poly_to_expr).collect::<Vec<_>>(),
                "order_used": cls.order_used,
            })
        }
        Task::Factorize { phi } => {
            let result = factorize(cfg, &parse_functional(phi)?, jet_order)?;
            json!({
                "op": "factorize",
                "branch": result.branch.to_string(),
                "verified": result.verified,
                "notes": result.audit_notes,
            })
        }
        Task::Transform { phi } => {
            let image = parse_functional(phi)?.fourier_laplace();
            json!({ "op": "transform", "result": image.to_string() })
        }
        Task::Verify { suites } => {
            let names: Vec<String> = if suites.is_empty() {
                verify::SUITES.iter().map(|s| s.to_string()).collect()
            } else {
                suites.clone()
            };
            let mut all_pass = true;
            let mut results = Vec::new();
            for name in &names {
                let checks = verify::run_suite(name)?;
                all_pass &= checks.iter().all(|c| c.pass);
                results.push(json!({ "suite": name, "checks": checks }));
            }
            json!({ "op": "verify", "pass": all_pass, "suites": results })
        }
        Task::Audit { claims } => {
            let reports: Vec<audit::AuditReport> = audit::default_suite()?
                .into_iter()
                .filter(|r| claims.is_empty() || claims.contains(&r.claim_id))
                .collect();
            json!({ "op": "audit", "reports": reports })
        }
    })
}

/// Executes every task in order and assembles the deterministic report.
pub fn run_scenario(sc: &Scenario) -> Result<serde_json::Value> {
    let cfg = G0Config::new(sc.g0.clone(), sc.lambda.clone());
    let dcfg = DuhamelConfig::new(sc.g0.clone(), sc.lambda.clone());
    let mut results = Vec::with_capacity(sc.tasks.len());
    for task in &sc.tasks {
        results.push(run_task(&cfg, &dcfg, sc.jet_order, task)?);
    }
    Ok(json!({
        "g0": sc.g0,
        "lambda": sc.lambda,
        "jet_order": sc.jet_order,
        "results": results,
    }))
}

/// Does the report record any failed verification or any solver error?
/// Used by the front end to pick the exit code.
pub fn report_all_pass(report: &serde_json::Value) -> bool {
    report["results"]
        .as_array()
        .map(|rs| {
            rs.iter().all(|r| r.get("pass").and_then(|p| p.as_bool()).unwrap_or(true))
        })
        .unwrap_or(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_task_list_gives_empty_report() {
        let sc = parse_scenario(r#"{"g0":{"factors":[{"root":"1","mult":1}]}}"#).unwrap();
        assert_eq!(sc.jet_order, 12);
        let report = run_scenario(&sc).unwrap();
        assert_eq!(report["results"], json!([]));
        assert!(report_all_pass(&report));
    }

    #[test]
    fn eval_and_product_tasks() {
        let sc = parse_scenario(
            r#"{
              "g0": {"factors":[{"root":"1","mult":1}]},
              "tasks": [
                {"op":"eval","f":"z^2"},
                {"op":"eval","f":"1","phi":"delta(0,1)"},
                {"op":"otimes","phi":"delta(0,1)","psi":"delta(0,1)"},
                {"op":"duhamel","f":"z","h":"z"},
                {"op":"transform","phi":"delta(1,0)"}
              ]
            }"#,
        )
        .unwrap();
        let report = run_scenario(&sc).unwrap();
        let results = report["results"].as_array().unwrap();
        assert_eq!(results[0]["result"], "z");
        assert_eq!(results[1]["result"], "0");
        assert_eq!(results[2]["result"], "-delta(0,1)+1/2*delta(0,2)");
        assert_eq!(results[3]["result"]["coeffs"][2], "1/2");
        assert_eq!(results[4]["result"], "(1)*e^(1*z)");
    }

    #[test]
    fn invert_task_modes() {
        let sc = parse_scenario(
            r#"{
              "g0": {"factors":[]},
              "jet_order": 6,
              "tasks": [{"op":"invert","g":"z","f":"1+z"}]
            }"#,
        )
        .unwrap();
        let report = run_scenario(&sc).unwrap();
        assert_eq!(report["results"][0]["result"]["coeffs"][2], "-1/2");
        let bad = parse_scenario(
            r#"{"g0":{"factors":[]},"tasks":[{"op":"invert","g":"z"}]}"#,
        )
        .unwrap();
        assert!(run_scenario(&bad).is_err());
    }

    #[test]
    fn zero_root_rejected_at_parse() {
        assert!(parse_scenario(r#"{"g0":{"factors":[{"root":"0","mult":1}]}}"#).is_err());
    }

    #[test]
    fn reports_are_byte_stable() {
        let sc = parse_scenario(
            r#"{
              "g0": {"factors":[{"root":"1","mult":1}]},
              "tasks": [
                {"op":"classify","phi":"delta(1,0)"},
                {"op":"factorize","phi":"delta(0,0)+delta(0,1)"},
                {"op":"audit","claims":["delta-orthogonality"]}
              ]
            }"#,
        )
        .unwrap();
        let a = serde_json::to_string(&run_scenario(&sc).unwrap()).unwrap();
        let b = serde_json::to_string(&run_scenario(&sc).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
