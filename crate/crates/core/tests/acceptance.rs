//! Acceptance suite. Every criterion runs at zero tolerance and prints one
//! PASS/FAIL line; the process exits non-zero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use bcinv::harness::{run_selected, PropertyReport, RunConfig};
use bcinv::inverse::{bc_exists_via_ideals, bc_inverse, bc_inverse_via_lemma};
use bcinv::RingHandle;

const SMALL: [&str; 8] = [
    "zn:2",
    "zn:3",
    "zn:4",
    "zn:5",
    "zn:6",
    "zn:7",
    "zn:8",
    "mat:2:zn:2",
];
const COINCIDENCE: [&str; 6] = ["zn:2", "zn:3", "zn:4", "zn:5", "zn:6", "mat:2:zn:2"];
const DESK: [&str; 2] = ["zn:6", "mat:2:zn:2"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

/// Runs the checkers on each ring and demands complete sweeps with no failures.
fn sweep(rings: &[&str], ids: &[&str]) -> Outcome {
    let config = RunConfig::default();
    let mut instances = 0;
    for spec in rings {
        let ring = RingHandle::parse(spec).map_err(|e| e.to_string())?;
        let reports = run_selected(&ring, ids, &config).map_err(|e| format!("{spec}: {e}"))?;
        for r in &reports {
            check_report(r)?;
            instances += r.instances;
        }
    }
    Ok(format!(
        "{instances} instances over {} ring(s)",
        rings.len()
    ))
}

fn check_report(r: &PropertyReport) -> Result<(), String> {
    if r.failures > 0 {
        let cx = r
            .counterexample
            .as_ref()
            .map(|c| format!("{:?}: {}", c.inputs, c.clause))
            .unwrap_or_default();
        return Err(format!(
            "{} on {}: {} failures, e.g. {cx}",
            r.theorem, r.ring, r.failures
        ));
    }
    if !r.complete {
        return Err(format!("{} on {}: sweep stopped early", r.theorem, r.ring));
    }
    if r.instances == 0 {
        return Err(format!(
            "{} on {}: no qualifying instances",
            r.theorem, r.ring
        ));
    }
    Ok(())
}

/// Calls the three public bc entry points on every triple and compares them.
fn routes_agree() -> Outcome {
    let mut triples = 0u64;
    for spec in SMALL {
        let ring = RingHandle::parse(spec).map_err(|e| e.to_string())?;
        let elems: Vec<_> = ring.elements().collect();
        for &a in &elems {
            for &b in &elems {
                for &c in &elems {
                    let by_def = bc_inverse(&ring, a, b, c).map_err(|e| e.to_string())?;
                    let by_lemma =
                        bc_inverse_via_lemma(&ring, a, b, c).map_err(|e| e.to_string())?;
                    let exists = bc_exists_via_ideals(&ring, a, b, c).map_err(|e| e.to_string())?;
                    if by_def.value_ix() != by_lemma.value_ix() || by_def.is_found() != exists {
                        return Err(format!(
                            "{spec} a={} b={} c={}: definition {:?}, lemma {:?}, ideals {exists}",
                            a.index(),
                            b.index(),
                            c.index(),
                            by_def.value_ix(),
                            by_lemma.value_ix()
                        ));
                    }
                    triples += 1;
                }
            }
        }
    }
    sweep(&SMALL, &["bc-routes"]).map(|s| format!("{triples} triples agree; {s}"))
}

fn structured_verify(threads: &str) -> Result<Vec<String>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bcinv"))
        .args([
            "verify",
            "--ring",
            "zn:6",
            "--theorem",
            "all",
            "--format",
            "structured",
        ])
        .args(["--threads", threads])
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code() != Some(0) {
        return Err(format!("verify exited with {:?}", out.status.code()));
    }
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.contains("\"record\":\"header\"") => {}
        other => return Err(format!("first record is not the header: {other:?}")),
    }
    Ok(lines.map(str::to_string).collect())
}

fn deterministic() -> Outcome {
    let runs = [
        structured_verify("1")?,
        structured_verify("4")?,
        structured_verify("1")?,
        structured_verify("4")?,
    ];
    if runs.iter().any(|r| *r != runs[0]) {
        return Err("structured records differ between runs".into());
    }
    Ok(format!(
        "{} records identical across 4 runs (1 and 4 threads)",
        runs[0].len()
    ))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 uniqueness and route agreement", Box::new(routes_agree)),
        (
            "2 regularity of b, c, cab",
            Box::new(|| {
                sweep(
                    &SMALL,
                    &["prop-3.3-regular", "lem-3.1-outer", "lem-3.2-regular"],
                )
            }),
        ),
        (
            "3 ideal characterization equivalences",
            Box::new(|| {
                sweep(
                    &SMALL,
                    &["thm-3.4-forward", "thm-3.4-equiv", "thm-3.7-equiv"],
                )
            }),
        ),
        (
            "4 coincidence theorems",
            Box::new(|| {
                sweep(
                    &COINCIDENCE,
                    &["coincidence-t-regular", "coincidence-bc-regular"],
                )
            }),
        ),
        (
            "5 transfer formulas",
            Box::new(|| sweep(&SMALL, &["transfer-formulas"])),
        ),
        (
            "6 quadruple suite",
            Box::new(|| {
                sweep(
                    &DESK,
                    &[
                        "lem-4.1-identities",
                        "thm-4.2-equal-idempotents",
                        "thm-4.3-equal-idempotents",
                        "thm-4.4-reverse-order",
                        "thm-4.5-mixed-idempotents",
                    ],
                )
            }),
        ),
        (
            "7 specializations",
            Box::new(|| sweep(&SMALL, &["specializations"])),
        ),
        (
            "8 idempotent units and image-kernel corollary",
            Box::new(|| sweep(&DESK, &["lem-3.13-idempotent", "image-kernel-corollary"])),
        ),
        ("9 determinism", Box::new(deterministic)),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}  ({detail}; {secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}  ({detail}; {secs:.2}s)");
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
