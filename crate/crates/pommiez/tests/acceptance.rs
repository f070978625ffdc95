//! End-to-end acceptance gate: twelve exact, zero-tolerance criteria, each
//! reported on its own pass/fail line. Criteria 1-11 run the library's
//! hard-invariant suites; criterion 12 additionally exercises the compiled
//! binary (exit codes and byte-stable reports).

use pommiez::verify;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_pommiez");

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn record(&mut self, n: usize, label: &str, pass: bool, detail: String) {
        println!(
            "criterion {n:2} [{}] {label}",
            if pass { "PASS" } else { "FAIL" }
        );
        if !pass {
            self.failures.push(format!("criterion {n} ({label}): {detail}"));
        }
    }

    fn suite(&mut self, n: usize, label: &str, suite: &str) {
        match verify::run_suite(suite) {
            Ok(checks) => {
                let bad: Vec<String> = checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| format!("{}: {}", c.name, c.detail))
                    .collect();
                self.record(n, label, bad.is_empty(), bad.join("; "));
            }
            Err(e) => self.record(n, label, false, format!("suite error: {e}")),
        }
    }
}

fn run(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

fn cli_criterion() -> Result<(), String> {
    // Parse/serialize round-trip on generated expressions.
    let checks = verify::run_suite("roundtrip").map_err(|e| e.to_string())?;
    if let Some(c) = checks.iter().find(|c| !c.pass) {
        return Err(format!("roundtrip: {}: {}", c.name, c.detail));
    }

    // Successful verification exits 0.
    let (code, _, err) = run(&["verify", "kernel-laws", "--json"]);
    if code != 0 {
        return Err(format!(
            "verify kernel-laws exited {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }

    // Audit disagreements are recorded data, not process failures.
    let (code, first, _) = run(&["audit", "--json"]);
    if code != 0 {
        return Err(format!("audit exited {code}"));
    }
    let (code, second, _) = run(&["audit", "--json"]);
    if code != 0 || first != second {
        return Err("audit report bytes differ between runs".into());
    }
    if first.is_empty() || !String::from_utf8_lossy(&first).contains("\"agree\":false") {
        return Err("audit report missing recorded disagreements".into());
    }

    // Usage / parse errors exit 2.
    let (code, _, _) = run(&["eval", "1+"]);
    if code != 2 {
        return Err(format!("syntax error exited {code}, want 2"));
    }
    let (code, _, _) = run(&["product", "--phi", "delta(0,0)"]);
    if code != 2 {
        return Err(format!("missing mode flag exited {code}, want 2"));
    }

    // Invariant failures (here: inverting a non-injective operator) exit 1.
    let (code, _, _) = run(&["invert", "1", "--phi", "delta(1,0)", "--g0", "1"]);
    if code != 1 {
        return Err(format!("non-invertible operator exited {code}, want 1"));
    }

    // Empty scenario runs clean and reports no results.
    let dir = std::env::temp_dir().join("pommiez-acceptance");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("empty.json");
    std::fs::write(&path, r#"{"g0":{"factors":[{"root":"1","mult":1}]},"tasks":[]}"#)
        .map_err(|e| e.to_string())?;
    let (code, out, _) = run(&["run", path.to_str().unwrap(), "--json"]);
    if code != 0 {
        return Err(format!("empty scenario exited {code}"));
    }
    let report: serde_json::Value =
        serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    if report["results"] != serde_json::json!([]) {
        return Err("empty scenario produced nonempty results".into());
    }
    Ok(())
}

#[test]
fn acceptance() {
    let mut gate = Gate { failures: Vec::new() };
    gate.suite(1, "kernel law for shift powers", "kernel-laws");
    gate.suite(2, "composition with the right inverse is the identity", "right-inverse");
    gate.suite(3, "convolution mirrors operator composition", "algebra-morphism");
    gate.suite(4, "generator is an eigenvector of every commutant operator", "eigen-relation");
    gate.suite(5, "unit laws for operator, convolution, and product", "unit-laws");
    gate.suite(6, "canonical operators have the predicted kernels and images", "canonical-kernels");
    gate.suite(7, "product ring laws and classical monomial law", "duhamel-ring");
    gate.suite(8, "transform carries convolution to the product", "duality");
    gate.suite(9, "classical inversion with exact residual", "inversion");
    gate.suite(10, "factorization fixtures recompose exactly", "factorization");
    gate.suite(11, "audit suite reproduces the recorded outcomes", "audit-determinism");
    match cli_criterion() {
        Ok(()) => gate.record(12, "CLI round-trip, exit codes, byte stability", true, String::new()),
        Err(e) => gate.record(12, "CLI round-trip, exit codes, byte stability", false, e),
    }
    assert!(
        gate.failures.is_empty(),
        "acceptance failures:\n{}",
        gate.failures.join("\n")
    );
}
