use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dyadic_lattice::bong::good_bong;
use dyadic_lattice::classify::{binary_transform_reachable, check_pair, Registry};
use dyadic_lattice::json::{field_descriptor, invariant_dump, jordan_dump, parse_lattice_str, symbol_json};
use dyadic_lattice::lattice::{omeara_invariants, GramLattice};
use dyadic_lattice::selftest::{self, SelfTestConfig};
use dyadic_lattice::Error;

#[derive(Parser)]
#[command(name = "dyadic", version, about = "Isometry of quadratic lattices over dyadic fields")]
struct Cli {
    /// Write the JSON result here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two lattices are isometric
    Classify {
        a: PathBuf,
        b: PathBuf,
        /// beli, omeara, 2adic or all
        #[arg(long, default_value = "all")]
        method: String,
        /// Guard digits for unit residues
        #[arg(long)]
        guard: Option<u32>,
    },
    /// Good BONG symbol of a lattice
    Bong {
        a: PathBuf,
        #[arg(long)]
        guard: Option<u32>,
    },
    /// Invariants of the good BONG and of a Jordan splitting
    Invariants {
        a: PathBuf,
        #[arg(long)]
        guard: Option<u32>,
    },
    /// Whether B's good BONG is reachable from A's by binary transformations
    Reachable {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        guard: Option<u32>,
    },
    /// Built-in fixtures and a small agreement fuzz
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fuzz pairs per field
        #[arg(long, default_value_t = 40)]
        trials: usize,
        /// Flip one Hilbert table entry (negative control)
        #[arg(long, hide = true)]
        inject_hilbert_fault: bool,
    },
}

/// Failure with its exit status.
struct Failure {
    status: u8,
    message: String,
    body: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InsufficientPrecision { .. } => 3,
            Error::InternalVerificationFailure(_) => 4,
            _ => 2,
        };
        Failure {
            status,
            message: e.to_string(),
            body: None,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        status: 2,
        message: format!("{}: {e}", path.display()),
        body: None,
    })
}

fn load(src: &str, guard: Option<u32>) -> Result<GramLattice, Error> {
    parse_lattice_str(src, guard)
}

/// Runs `f` with the requested guard, then once more with twice as many
/// guard digits if it ran out of precision.
fn with_retry<T>(
    guard: Option<u32>,
    f: impl Fn(Option<u32>) -> Result<T, Error>,
) -> Result<T, Error> {
    match f(guard) {
        Err(Error::InsufficientPrecision { .. }) => {
            let g = guard.unwrap_or(dyadic_lattice::field::DEFAULT_GUARD);
            f(Some(2 * g))
        }
        other => other,
    }
}

fn classify(a: &Path, b: &Path, method: &str, guard: Option<u32>) -> Result<Value, Failure> {
    let (sa, sb) = (read(a)?, read(b)?);
    let reg = Registry::default();
    let run = |g: Option<u32>| -> Result<Vec<(&'static str, Value, bool)>, Error> {
        let (l, k) = (load(&sa, g)?, load(&sb, g)?);
        check_pair(&l, &k)?;
        reg.select(method, l.field())?
            .into_iter()
            .map(|d| {
                let v = d.decide(&l, &k)?;
                Ok((d.name(), v.to_json(), v.isometric))
            })
            .collect()
    };
    let verdicts = with_retry(guard, run)?;
    let (_, first, iso) = verdicts[0].clone();
    if verdicts.len() == 1 {
        let mut out = first;
        out["method"] = json!(method);
        return Ok(out);
    }
    let methods: serde_json::Map<String, Value> = verdicts
        .iter()
        .map(|(n, v, _)| (n.to_string(), v.clone()))
        .collect();
    if verdicts.iter().any(|v| v.2 != iso) {
        return Err(Failure {
            status: 4,
            message: "deciders disagree".into(),
            body: Some(json!({"error": "decider disagreement", "methods": methods})),
        });
    }
    let mut out = first;
    out["method"] = json!(method);
    out["methods"] = Value::Object(methods);
    Ok(out)
}

fn bong(a: &Path, guard: Option<u32>) -> Result<Value, Failure> {
    let src = read(a)?;
    Ok(with_retry(guard, |g| {
        let l = load(&src, g)?;
        let s = good_bong(&l)?;
        Ok(json!({"field": field_descriptor(l.field()), "bong": symbol_json(&s)?}))
    })?)
}

fn invariants(a: &Path, guard: Option<u32>) -> Result<Value, Failure> {
    let src = read(a)?;
    Ok(with_retry(guard, |g| {
        let l = load(&src, g)?;
        let s = good_bong(&l)?;
        Ok(json!({
            "field": field_descriptor(l.field()),
            "bong": invariant_dump(&s)?,
            "jordan": jordan_dump(&omeara_invariants(&l)?),
        }))
    })?)
}

fn reachable(a: &Path, b: &Path, guard: Option<u32>) -> Result<Value, Failure> {
    let (sa, sb) = (read(a)?, read(b)?);
    Ok(with_retry(guard, |g| {
        let (l, k) = (load(&sa, g)?, load(&sb, g)?);
        check_pair(&l, &k)?;
        let (s, t) = (good_bong(&l)?, good_bong(&k)?);
        Ok(json!({
            "reachable": binary_transform_reachable(&s, &t)?,
            "R": s.r(),
        }))
    })?)
}

/// Prints one line per check; the JSON report goes to `--output` only.
fn run_selftest(seed: u64, trials: usize, fault: bool, output: Option<&Path>) -> Result<(), Failure> {
    let mut cfg = SelfTestConfig {
        seed,
        trials,
        ..Default::default()
    };
    if fault {
        cfg = cfg.with_hilbert_fault(1, 1);
    }
    let checks = selftest::run(&cfg);
    for c in &checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        println!("{mark} {}: {}", c.name, c.detail);
    }
    let passed = checks.iter().all(|c| c.passed);
    if output.is_some() {
        emit(&json!({"passed": passed, "checks": checks_json(&checks)}), output)?;
    }
    if passed {
        Ok(())
    } else {
        Err(Failure {
            status: 1,
            message: "self-test failed".into(),
            body: None,
        })
    }
}

fn checks_json(checks: &[selftest::CheckResult]) -> Value {
    serde_json::to_value(checks).expect("serializable")
}

fn emit(v: &Value, output: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure {
            status: 2,
            message: format!("{}: {e}", p.display()),
            body: None,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.as_deref();
    let result = match &cli.command {
        Command::Classify {
            a,
            b,
            method,
            guard,
        } => classify(a, b, method, *guard).and_then(|v| emit(&v, output)),
        Command::Bong { a, guard } => bong(a, *guard).and_then(|v| emit(&v, output)),
        Command::Invariants { a, guard } => invariants(a, *guard).and_then(|v| emit(&v, output)),
        Command::Reachable { a, b, guard } => reachable(a, b, *guard).and_then(|v| emit(&v, output)),
        Command::Selftest {
            seed,
            trials,
            inject_hilbert_fault,
        } => run_selftest(*seed, *trials, *inject_hilbert_fault, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(body) = &f.body {
                let _ = emit(body, output);
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
