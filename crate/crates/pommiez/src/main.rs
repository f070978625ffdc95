use clap::{Args, Parser, Subcommand};
use pommiez::audit;
use pommiez::commutant::{bphi_apply, factorize, invert_on_invariant, kernel_classify};
use pommiez::duhamel::{duhamel_invert, duhamel_product, DuhamelConfig};
use pommiez::error::Error;
use pommiez::factored::FactoredPoly;
use pommiez::functional::otimes;
use pommiez::jet::Jet;
use pommiez::operators::{gbs_power, G0Config};
use pommiez::parse::{functional_to_expr, parse_function, parse_functional, poly_to_expr};
use pommiez::scalar::GaussianRational;
use pommiez::scenario::{parse_scenario, report_all_pass, run_scenario};
use pommiez::verify;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact calculus for generalized backward shift commutants, functional
/// convolution, and Duhamel products over the Gaussian rationals.
#[derive(Parser)]
#[command(name = "pommiez", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Generator zeros as "root[:mult],root[:mult]" (empty: constant generator 1)
    #[arg(long, default_value = "")]
    g0: String,
    /// Expansion point for jets
    #[arg(long, default_value = "0")]
    lambda: String,
    /// Working truncation order
    #[arg(long, default_value_t = 12)]
    order: usize,
    /// Emit the machine-readable JSON report on stdout
    #[arg(long)]
    json: bool,
    /// Write the JSON report to a file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply the backward shift (n times) or a commutant operator to a function
    Eval {
        /// Function expression, e.g. "1+z^2"
        expr: String,
        /// Functional whose commutant operator to apply instead of the shift
        #[arg(long)]
        phi: Option<String>,
        /// Number of shift applications
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Convolve two functionals or multiply two functions as jets
    Product {
        /// Functional convolution of --phi and --psi
        #[arg(long, conflicts_with = "duhamel")]
        otimes: bool,
        /// Jet product of the two positional function expressions
        #[arg(long)]
        duhamel: bool,
        /// Left functional (with --otimes)
        #[arg(long)]
        phi: Option<String>,
        /// Right functional (with --otimes)
        #[arg(long)]
        psi: Option<String>,
        /// Function operands (with --duhamel)
        operands: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve B_phi(x) = g on an invariant subspace, or f * x = g on jets
    Invert {
        /// Right-hand side expression
        g: String,
        /// Invert the commutant operator of this functional
        #[arg(long, conflicts_with = "f")]
        phi: Option<String>,
        /// Invert the jet product against this left factor
        #[arg(long)]
        f: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Classify the kernel of a commutant operator in the invariant-subspace lattice
    Classify {
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        common: Common,
    },
    /// Factor a commutant operator into canonical and shift-power parts
    Factorize {
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        common: Common,
    },
    /// Fourier-Laplace transform of a functional
    Transform {
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run hard-invariant verification suites (all by default)
    Verify {
        suites: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the claim-audit suite; disagreements are recorded, not fatal
    Audit {
        claims: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Execute a scenario file (JSON) and print its report
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_g0(spec: &str) -> Result<FactoredPoly, Error> {
    let mut factors = Vec::new();
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (root, mult) = match part.split_once(':') {
            Some((r, m)) => {
                let m: u32 = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad multiplicity in --g0: {part:?}")))?;
                (r.trim(), m)
            }
            None => (part.trim(), 1),
        };
        factors.push((root.parse::<GaussianRational>()?, mult));
    }
    FactoredPoly::new(factors)
}

fn jet_json(j: &Jet) -> serde_json::Value {
    json!({
        "center": j.center().to_string(),
        "order": j.order(),
        "coeffs": j.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

struct Output {
    report: serde_json::Value,
    human: String,
    pass: bool,
}

fn execute(cmd: &Cmd, common: &Common) -> Result<Output, Error> {
    let g0 = parse_g0(&common.g0)?;
    let lambda: GaussianRational = common.lambda.parse()?;
    let order = common.order;
    let cfg = G0Config::new(g0.clone(), lambda.clone());
    let dcfg = DuhamelConfig::new(g0.clone(), lambda.clone());

    let (report, human) = match cmd {
        Cmd::Eval { expr, phi, n, .. } => {
            let f = parse_function(expr)?;
            let result = match phi {
                Some(phi) => bphi_apply(&cfg, &parse_functional(phi)?, &f),
                None => gbs_power(&cfg, &f, *n),
            };
            let text = poly_to_expr(&result);
            (json!({ "op": "eval", "result": text, "coeffs": result }), text)
        }
        Cmd::Product { otimes: use_otimes, duhamel, phi, psi, operands, .. } => {
            if *use_otimes == *duhamel {
                return Err(Error::Invalid(
                    "product requires exactly one of --otimes or --duhamel".into(),
                ));
            }
            if *use_otimes {
                let (phi, psi) = match (phi, psi) {
                    (Some(phi), Some(psi)) => (phi, psi),
                    _ => {
                        return Err(Error::Invalid(
                            "product --otimes requires --phi and --psi".into(),
                        ))
                    }
                };
                let theta = otimes(&cfg, &parse_functional(phi)?, &parse_functional(psi)?)?;
                let text = functional_to_expr(&theta);
                (
                    json!({ "op": "otimes", "result": text, "atoms": theta.atoms() }),
                    text,
                )
            } else {
                let [f, h] = operands.as_slice() else {
                    return Err(Error::Invalid(
                        "product --duhamel takes exactly two function expressions".into(),
                    ));
                };
                let m = dcfg.m();
                let fj = Jet::of_poly(&parse_function(f)?, &lambda, order + m);
                let hj = Jet::of_poly(&parse_function(h)?, &lambda, order);
                let prod = duhamel_product(&dcfg, &fj, &hj)?;
                let rendered = jet_json(&prod);
                let text = format!(
                    "jet at {} of order {}: [{}]",
                    prod.center(),
                    prod.order(),
                    prod.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
                );
                (json!({ "op": "duhamel", "result": rendered }), text)
            }
        }
        Cmd::Invert { g, phi: Some(phi), f: None, .. } => {
            let preimage = invert_on_invariant(&cfg, &parse_functional(phi)?, &parse_function(g)?)?;
            let text = poly_to_expr(&preimage);
            (json!({ "op": "invert", "result": text, "coeffs": preimage }), text)
        }
        Cmd::Invert { g, phi: None, f: Some(f), .. } => {
            let m = dcfg.m();
            let fj = Jet::of_poly(&parse_function(f)?, &lambda, order + m);
            let gj = Jet::of_poly(&parse_function(g)?, &lambda, order);
            let h = duhamel_invert(&dcfg, &fj, &gj)?;
            let rendered = jet_json(&h);
            let text = format!(
                "jet at {} of order {}: [{}]",
                h.center(),
                h.order(),
                h.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            );
            (json!({ "op": "invert", "result": rendered }), text)
        }
        Cmd::Invert { .. } => {
            return Err(Error::Invalid(
                "invert requires exactly one of --phi or --f".into(),
            ))
        }
        Cmd::Classify { phi, .. } => {
            let cls = kernel_classify(&cfg, &parse_functional(phi)?, order)?;
            let text = format!("{} (dim {})", cls.kind, cls.basis.len());
            (
                json!({
                    "op": "classify",
                    "kind": cls.kind.to_string(),
                    "dim": cls.basis.len(),
                    "basis": cls.basis.iter().map(poly_to_expr).collect::<Vec<_>>(),
                    "order_used": cls.order_used,
                }),
                text,
            )
        }
        Cmd::Factorize { phi, .. } => {
            let result = factorize(&cfg, &parse_functional(phi)?, order)?;
            let text = format!(
                "{} (verified: {})",
                result.branch,
                if result.verified { "yes" } else { "no" }
            );
            (
                json!({
                    "op": "factorize",
                    "branch": result.branch.to_string(),
                    "verified": result.verified,
                    "notes": result.audit_notes,
                }),
                text,
            )
        }
        Cmd::Transform { phi, .. } => {
            let image = parse_functional(phi)?.fourier_laplace();
            let text = image.to_string();
            (json!({ "op": "transform", "result": text }), text)
        }
        Cmd::Verify { suites, .. } => {
            let names: Vec<String> = if suites.is_empty() {
                verify::SUITES.iter().map(|s| s.to_string()).collect()
            } else {
                suites.clone()
            };
            let mut all_pass = true;
            let mut results = Vec::new();
            let mut lines = Vec::new();
            for name in &names {
                let checks = verify::run_suite(name)?;
                let suite_pass = checks.iter().all(|c| c.pass);
                all_pass &= suite_pass;
                lines.push(format!(
                    "{}: {} ({} checks)",
                    name,
                    if suite_pass { "pass" } else { "FAIL" },
                    checks.len()
                ));
                for c in checks.iter().filter(|c| !c.pass) {
                    lines.push(format!("  failed: {} — {}", c.name, c.detail));
                }
                results.push(json!({ "suite": name, "checks": checks }));
            }
            let report = json!({ "op": "verify", "pass": all_pass, "suites": results });
            return Ok(Output { report, human: lines.join("\n"), pass: all_pass });
        }
        Cmd::Audit { claims, .. } => {
            let reports: Vec<audit::AuditReport> = audit::default_suite()?
                .into_iter()
                .filter(|r| claims.is_empty() || claims.contains(&r.claim_id))
                .collect();
            let lines: Vec<String> = reports
                .iter()
                .map(|r| {
                    format!(
                        "{}: {}",
                        r.claim_id,
                        if r.agree { "agrees" } else { "DISAGREES" }
                    )
                })
                .collect();
            (
                json!({ "op": "audit", "reports": reports }),
                lines.join("\n"),
            )
        }
        Cmd::Run { scenario, .. } => {
            let text = std::fs::read_to_string(scenario)?;
            let sc = parse_scenario(&text)?;
            let report = run_scenario(&sc)?;
            let pass = report_all_pass(&report);
            let human = format!(
                "{} task(s) completed{}",
                report["results"].as_array().map(|r| r.len()).unwrap_or(0),
                if pass { "" } else { " (verification failures recorded)" }
            );
            return Ok(Output { report, human, pass });
        }
    };
    Ok(Output { report, human, pass: true })
}

fn emit(common: &Common, out: &Output) -> Result<(), Error> {
    let text = serde_json::to_string(&out.report)?;
    if let Some(path) = &common.out {
        std::fs::write(path, format!("{text}\n"))?;
    }
    if common.json {
        println!("{text}");
    } else {
        println!("{}", out.human);
    }
    Ok(())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Syntax { .. }
        | Error::BadScalar(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::Invalid(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.cmd {
        Cmd::Eval { common, .. }
        | Cmd::Product { common, .. }
        | Cmd::Invert { common, .. }
        | Cmd::Classify { common, .. }
        | Cmd::Factorize { common, .. }
        | Cmd::Transform { common, .. }
        | Cmd::Verify { common, .. }
        | Cmd::Audit { common, .. }
        | Cmd::Run { common, .. } => common.clone(),
    };
    match execute(&cli.cmd, &common) {
        Ok(out) => {
            if let Err(err) = emit(&common, &out) {
                eprintln!("error: {err}");
                return ExitCode::from(exit_code_for(&err));
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
