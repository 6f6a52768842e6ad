//! Command-line front end: parse an algebra spec file, dispatch analyses,
//! and emit text or JSON reports.
//!
//! Exit codes: 0 on pass/success, 1 on property failure, 2 on usage or
//! parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use gradex::algebra::{format_element, format_word, AlgebraSpec};
use gradex::galois::{
    beta, beta_n, beta_surjectivity_check, galois_verdict, FullExtension, GaloisVerdict,
    PauliQuotient,
};
use gradex::hopf::hopf_module_check;
use gradex::realization::{consistency_check, FluxLabel, Verdict};
use gradex::specfile::{parse_element, SpecDocument};
use gradex::Error;

#[derive(Parser)]
#[command(name = "gradex", version, about = "Graded quantum-commutative extension algebra toolkit")]
struct Cli {
    /// Path to a JSON algebra spec file.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum basis-word length for exhaustive pairwise checks.
    #[arg(long, global = true, default_value_t = 2)]
    max_len: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the commutation-factor axioms of the spec.
    Validate,
    /// Rewrite a word to canonical form.
    NormalForm { word: String },
    /// Multiply two elements exactly.
    Mul { e1: String, e2: String },
    /// Decide reality vs generalized Pauli exclusion.
    Classify,
    /// Verify the Hopf-module axiom and quantum commutativity.
    HopfCheck,
    /// Decide the Galois / strong-grading condition.
    GaloisCheck {
        /// Use the Pauli-quotient subalgebra instead of the full extension.
        #[arg(long)]
        quotient: bool,
    },
    /// Apply the Galois map to two or more elements.
    Beta {
        #[arg(num_args = 2..)]
        elems: Vec<String>,
    },
    /// Emit the spec document for a named preset.
    Preset { kind: String, n: usize },
}

#[derive(Serialize)]
struct Report {
    command: String,
    spec_digest: String,
    verdict: String,
    details: serde_json::Value,
    failures: Vec<String>,
}

struct Loaded {
    doc: SpecDocument,
    digest: String,
}

fn load_spec(path: &Option<PathBuf>) -> Result<Loaded, Error> {
    let path = path
        .as_ref()
        .ok_or_else(|| Error::Parse("--spec FILE is required for this command".into()))?;
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Parse(format!("{}: not valid UTF-8", path.display())))?;
    let doc = SpecDocument::from_json(&text)?;
    Ok(Loaded { doc, digest: hex_digest(&bytes) })
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn b_matrix_json(spec: &AlgebraSpec) -> Result<serde_json::Value, Error> {
    let table = spec.cf.generator_table()?;
    Ok(serde_json::Value::Array(
        table
            .into_iter()
            .map(|row| {
                serde_json::Value::Array(
                    row.into_iter()
                        .map(|s| serde_json::Value::String(s.to_string()))
                        .collect(),
                )
            })
            .collect(),
    ))
}

fn print_b_matrix(spec: &AlgebraSpec) -> Result<(), Error> {
    println!("b on generators:");
    for row in spec.cf.generator_table()? {
        let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(Report, bool), Error> {
    match &cli.command {
        Command::Validate => {
            let loaded = load_spec(&cli.spec)?;
            let cf = loaded.doc.to_commutation_factor_raw()?;
            let report = cf.validate();
            let passed = report.passed();
            let details = serde_json::json!({
                "checks": report.checks.iter().map(|c| serde_json::json!({
                    "name": c.name, "passed": c.passed, "detail": c.detail,
                })).collect::<Vec<_>>(),
            });
            if !cli.json {
                for c in &report.checks {
                    println!(
                        "check {}: {} ({})",
                        c.name,
                        if c.passed { "pass" } else { "FAIL" },
                        c.detail
                    );
                }
                println!("verdict: {}", if passed { "pass" } else { "fail" });
            }
            Ok((
                Report {
                    command: "validate".into(),
                    spec_digest: loaded.digest,
                    verdict: if passed { "pass" } else { "fail" }.into(),
                    details,
                    failures: report.failures(),
                },
                passed,
            ))
        }
        Command::NormalForm { word } => {
            let loaded = load_spec(&cli.spec)?;
            let spec = loaded.doc.to_algebra_spec()?;
            let element = parse_element(word, &spec)?;
            let rendered = format_element(&spec, &element);
            if !cli.json {
                println!("{rendered}");
            }
            Ok((
                Report {
                    command: "normal-form".into(),
                    spec_digest: loaded.digest,
                    verdict: "ok".into(),
                    details: serde_json::json!({ "input": word, "result": rendered }),
                    failures: vec![],
                },
                true,
            ))
        }
        Command::Mul { e1, e2 } => {
            let loaded = load_spec(&cli.spec)?;
            let spec = loaded.doc.to_algebra_spec()?;
            let u = parse_element(e1, &spec)?;
            let v = parse_element(e2, &spec)?;
            let prod = gradex::algebra::multiply(&spec, &u, &v)?;
            let rendered = format_element(&spec, &prod);
            if !cli.json {
                println!("{rendered}");
            }
            Ok((
                Report {
                    command: "mul".into(),
                    spec_digest: loaded.digest,
                    verdict: "ok".into(),
                    details: serde_json::json!({ "result": rendered }),
                    failures: vec![],
                },
                true,
            ))
        }
        Command::Classify => {
            let loaded = load_spec(&cli.spec)?;
            let spec = loaded.doc.to_algebra_spec()?;
            let mut report = consistency_check(&spec)?;
            if let Some(n) = loaded.doc.is_flux_preset() {
                // Physical label by diagonal statistics b^{ii} = (-1)^{1+N}.
                report.flux_label = Some(if n % 2 == 0 {
                    FluxLabel::CompositeFermion
                } else {
                    FluxLabel::CompositeBoson
                });
            }
            let verdict = match report.verdict {
                Verdict::Reality => "reality",
                Verdict::Degenerate => "degenerate",
            };
            let flux_label = report.flux_label.map(|l| match l {
                FluxLabel::CompositeFermion => "composite_fermion",
                FluxLabel::CompositeBoson => "composite_boson",
            });
            let pairs: Vec<String> = report
                .pauli_pairs
                .iter()
                .map(|(p, q)| {
                    format!(
                        "({}, {})",
                        format_word(&spec, &[*p]),
                        format_word(&spec, &[*q])
                    )
                })
                .collect();
            if !cli.json {
                print_b_matrix(&spec)?;
                println!("verdict: {verdict}");
                if let Some(label) = flux_label {
                    println!("flux_label: {label}");
                }
                if !pairs.is_empty() {
                    println!("pauli_pairs: {}", pairs.join(", "));
                }
            }
            let details = serde_json::json!({
                "flux_label": flux_label,
                "pauli_pairs": pairs,
                "injective": report.injective,
                "b_matrix": b_matrix_json(&spec)?,
            });
            Ok((
                Report {
                    command: "classify".into(),
                    spec_digest: loaded.digest,
                    verdict: verdict.into(),
                    details,
                    failures: vec![],
                },
                true,
            ))
        }
        Command::HopfCheck => {
            let loaded = load_spec(&cli.spec)?;
            let spec = loaded.doc.to_algebra_spec()?;
            let hopf = hopf_module_check(&spec)?;
            let cqt = spec.cf.validate();
            let qc = gradex::algebra::quantum_commutativity_check(&spec, cli.max_len)?;
            let mut failures = cqt.failures();
            failures.extend(hopf.failures.iter().cloned());
            failures.extend(
                qc.failures
                    .iter()
                    .map(|(u, v)| {
                        format!(
                            "quantum commutativity fails for ({}, {})",
                            format_word(&spec, u),
                            format_word(&spec, v)
                        )
                    }),
            );
            let passed = failures.is_empty();
            if !cli.json {
                print_b_matrix(&spec)?;
                println!("hopf module pairs checked: {}", hopf.pairs_checked);
                println!("quantum commutativity pairs checked: {}", qc.pairs_checked);
            }
            let details = serde_json::json!({
                "hopf_pairs_checked": hopf.pairs_checked,
                "qc_pairs_checked": qc.pairs_checked,
                "b_matrix": b_matrix_json(&spec)?,
            });
            Ok((
                Report {
                    command: "hopf-check".into(),
                    spec_digest: loaded.digest,
                    verdict: if passed { "pass" } else { "fail" }.into(),
                    details,
                    failures,
                },
                passed,
            ))
        }
        Command::GaloisCheck { quotient } => {
            let loaded = load_spec(&cli.spec)?;
            let spec = loaded.doc.to_algebra_spec()?;
            let (verdict, grading, surjective, missing) = if *quotient {
                let pauli = consistency_check(&spec)?.pauli_pairs;
                let alg = PauliQuotient::new(spec.clone(), &pauli);
                let report = galois_verdict(&alg)?;
                let surj = beta_surjectivity_check(&alg)?;
                let missing = surj
                    .missing
                    .iter()
                    .map(|(w, g)| format!("({} (x) {g})", format_word(&spec, w)))
                    .collect::<Vec<_>>();
                (report.verdict, report.grading, surj.surjective(), missing)
            } else {
                let alg = FullExtension::new(&spec);
                let report = galois_verdict(&alg)?;
                let surj = beta_surjectivity_check(&alg)?;
                let missing = surj
                    .missing
                    .iter()
                    .map(|((w, d), g)| format!("(theta{w:?} (x) {d} at leg {g})"))
                    .collect::<Vec<_>>();
                (report.verdict, report.grading, surj.surjective(), missing)
            };
            let passed = verdict == GaloisVerdict::Galois;
            let failures: Vec<String> = grading
                .failures
                .iter()
                .map(|f| {
                    format!(
                        "A_{} * A_{} spans {} of {} dimensions",
                        f.g, f.h, f.span_dim, f.target_dim
                    )
                })
                .chain(missing.iter().map(|m| format!("no beta preimage for {m}")))
                .collect();
            if !cli.json {
                print_b_matrix(&spec)?;
                println!("pairs checked: {}", grading.pairs_checked);
                println!(
                    "verdict: {}",
                    if passed { "galois" } else { "not_galois" }
                );
                for f in &failures {
                    println!("failure: {f}");
                }
            }
            let details = serde_json::json!({
                "mode": if *quotient { "quotient" } else { "full_extension" },
                "pairs_checked": grading.pairs_checked,
                "beta_surjective": surjective,
                "b_matrix": b_matrix_json(&spec)?,
            });
            Ok((
                Report {
                    command: "galois-check".into(),
                    spec_digest: loaded.digest,
                    verdict: if passed { "galois" } else { "not_galois" }.into(),
                    details,
                    failures,
                },
                passed,
            ))
        }
        Command::Beta { elems } => {
            let loaded = load_spec(&cli.spec)?;
            let spec = loaded.doc.to_algebra_spec()?;
            let parsed: Vec<_> = elems
                .iter()
                .map(|e| parse_element(e, &spec))
                .collect::<Result<_, _>>()?;
            let rendered: Vec<String> = if parsed.len() == 2 {
                beta(&spec, &parsed[0], &parsed[1])?
                    .iter()
                    .map(|(el, g)| format!("({}) (x) {g}", format_element(&spec, el)))
                    .collect()
            } else {
                beta_n(&spec, &parsed)?
                    .iter()
                    .map(|(el, legs)| {
                        let legs: Vec<String> = legs.iter().map(|g| g.to_string()).collect();
                        format!("({}) (x) {}", format_element(&spec, el), legs.join(" (x) "))
                    })
                    .collect()
            };
            if !cli.json {
                for line in &rendered {
                    println!("{line}");
                }
            }
            Ok((
                Report {
                    command: "beta".into(),
                    spec_digest: loaded.digest,
                    verdict: "ok".into(),
                    details: serde_json::json!({ "summands": rendered }),
                    failures: vec![],
                },
                true,
            ))
        }
        Command::Preset { kind, n } => {
            if kind != "flux" {
                return Err(Error::Parse(format!("unknown preset '{kind}'")));
            }
            if *n == 0 {
                return Err(Error::Parse("preset flux requires N >= 1".into()));
            }
            let doc = SpecDocument::flux_preset(*n);
            let text = doc.to_json();
            println!("{text}");
            Ok((
                Report {
                    command: "preset".into(),
                    spec_digest: hex_digest(text.as_bytes()),
                    verdict: "ok".into(),
                    details: serde_json::json!({}),
                    failures: vec![],
                },
                true,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, passed)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("reports always serialize")
                );
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
