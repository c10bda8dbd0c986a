//! Command-line front end: axiom checks, the cross-check suite, lifts,
//! conjugates, sampled duality bounds, and instance generators, all on
//! JSON documents.
//!
//! Reports go to stdout as JSON; one-line summaries go to stderr. Exit
//! codes: 0 all checks passed, 1 a check failed or a hypothesis was
//! violated, 2 bad input, 3 a size cap was exceeded. `DCA_MAX_N`
//! overrides the default ground-set cap.

use clap::{Parser, Subcommand};
use dca_core::axioms::{self, AxiomId};
use dca_core::duality::{self, DualityConfig, ExchangeContext};
use dca_core::error::{DcaError, Result};
use dca_core::family::{self, FamilyAxiomId};
use dca_core::func::PriceVector;
use dca_core::generators::{self, CorpusSpec};
use dca_core::ground::{SubsetMask, DEFAULT_MAX_N, DEFAULT_MULTI_EXCHANGE_CAP, HARD_MAX_N};
use dca_core::io;
use dca_core::suite::{self, SuiteConfig};
use dca_core::value::ExtValue;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dca", version, about = "Exchange-axiom checks for set functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check function axioms on a function file.
    Check {
        file: PathBuf,
        /// Axiom names; empty means all.
        axioms: Vec<String>,
        /// Check every function axiom.
        #[arg(long)]
        all: bool,
    },
    /// Check family axioms on a family file.
    FamilyCheck {
        file: PathBuf,
        /// Axiom names; empty means all.
        axioms: Vec<String>,
        /// Check every family axiom, including the strong multiple form.
        #[arg(long)]
        all: bool,
    },
    /// Run the cross-check suite over a corpus.
    Suite {
        #[arg(long)]
        n: u8,
        /// Enumerate every table over the grid.
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Draw this many seeded random tables instead.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated grid values; "-inf" is allowed.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Worker threads; 0 uses the available parallelism.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, default_value_t = DEFAULT_MULTI_EXCHANGE_CAP)]
        multi_cap: u8,
        /// Cap on recorded discrepancy digests per claim.
        #[arg(long, default_value_t = 20)]
        max_digests: usize,
    },
    /// Lift a function by s auxiliary elements and print the result.
    Lift {
        file: PathBuf,
        #[arg(long)]
        s: u8,
    },
    /// Evaluate the concave conjugate at one price vector.
    Conjugate {
        file: PathBuf,
        /// Comma-separated prices, one per element.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Sampled duality bounds for one exchange context.
    Duality {
        file: PathBuf,
        /// Elements of X, comma separated.
        #[arg(long = "X")]
        x: String,
        /// Elements of Y, comma separated.
        #[arg(long = "Y")]
        y: String,
        /// Elements of I, comma separated; must lie in X \ Y.
        #[arg(long = "I")]
        i: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also sample the submodularity of the conjugate.
        #[arg(long, value_name = "COUNT")]
        submodular_samples: Option<usize>,
    },
    /// Generate instances: a corpus, a weighted matroid valuation, or a
    /// concave cardinality valuation.
    Generate {
        /// One of: corpus, weighted-matroid, cardinality.
        #[arg(long)]
        kind: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        n: Option<u8>,
        /// Comma-separated grid values; "-inf" is allowed.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Draw this many seeded random tables instead of enumerating.
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated element weights.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Comma-separated concave profile by cardinality.
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
        /// Family file with the base family.
        #[arg(long)]
        family: Option<PathBuf>,
    },
}

fn max_n() -> u8 {
    match std::env::var("DCA_MAX_N") {
        Ok(s) => s.trim().parse::<u8>().map(|v| v.min(HARD_MAX_N)).unwrap_or(DEFAULT_MAX_N),
        Err(_) => DEFAULT_MAX_N,
    }
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| DcaError::Parse(format!("bad number {:?}", t.trim())))
        })
        .collect()
}

fn parse_elements(text: &str) -> Result<SubsetMask> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(SubsetMask::EMPTY);
    }
    let els: Vec<u8> = t
        .split(',')
        .map(|e| {
            e.trim()
                .parse::<u8>()
                .map_err(|_| DcaError::Parse(format!("bad element {:?}", e.trim())))
        })
        .collect::<Result<_>>()?;
    SubsetMask::from_elements(&els)
}

fn parse_grid(text: &str) -> Result<Vec<ExtValue>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            if t == "-inf" {
                Ok(ExtValue::NEG_INF)
            } else {
                let v = t
                    .parse::<f64>()
                    .map_err(|_| DcaError::Parse(format!("bad grid value {:?}", t)))?;
                ExtValue::try_finite(v)
            }
        })
        .collect()
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(DcaError::Io),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_check(file: &Path, names: &[String], all: bool) -> Result<bool> {
    let f = io::function_from_file(file, max_n())?;
    let ids: Vec<AxiomId> = if all || names.is_empty() {
        AxiomId::ALL.to_vec()
    } else {
        names.iter().map(|s| s.parse()).collect::<Result<_>>()?
    };
    let mut reports = Vec::with_capacity(ids.len());
    for id in ids {
        let report = axioms::check_axiom(&f, id)?;
        eprintln!("{}: {}", id, if report.passed { "pass" } else { "FAIL" });
        reports.push(report);
    }
    println!("{}", serde_json::to_string_pretty(&reports)?);
    Ok(reports.iter().all(|r| r.passed))
}

fn cmd_family_check(file: &Path, names: &[String], all: bool) -> Result<bool> {
    let fam = io::family_from_file(file, max_n())?;
    let mut reports = Vec::new();
    if all || names.is_empty() {
        for id in FamilyAxiomId::ALL {
            reports.push(family::check_family(&fam, id)?);
        }
        reports.push(family::check_family_multi_strong(&fam, DEFAULT_MULTI_EXCHANGE_CAP)?);
    } else {
        for name in names {
            if name == "BNAT_EXC_MS" {
                reports.push(family::check_family_multi_strong(&fam, DEFAULT_MULTI_EXCHANGE_CAP)?);
            } else {
                let id: FamilyAxiomId = name.parse()?;
                reports.push(family::check_family(&fam, id)?);
            }
        }
    }
    for report in &reports {
        eprintln!("{}: {}", report.axiom.name(), if report.passed { "pass" } else { "FAIL" });
    }
    println!("{}", serde_json::to_string_pretty(&reports)?);
    Ok(reports.iter().all(|r| r.passed))
}

#[allow(clippy::too_many_arguments)]
fn cmd_suite(
    n: u8,
    exhaustive: bool,
    random: Option<usize>,
    seed: u64,
    grid: Option<&str>,
    threads: usize,
    multi_cap: u8,
    max_digests: usize,
) -> Result<bool> {
    let mut spec = match (exhaustive, random) {
        (_, Some(count)) => CorpusSpec::random(n, count, seed),
        (true, None) => CorpusSpec::exhaustive(n),
        (false, None) => {
            return Err(DcaError::Parse("pass --exhaustive or --random COUNT".to_string()))
        }
    };
    if let Some(g) = grid {
        spec.grid = parse_grid(g)?;
    }
    let mut cfg = SuiteConfig::new(spec);
    cfg.threads = threads;
    cfg.multi_cap = multi_cap;
    cfg.max_digests = max_digests;
    let report = suite::run_suite(&cfg)?;
    for r in &report.results {
        eprintln!(
            "{}: {} ({} checked, {} positive, {} negative)",
            r.theorem,
            if r.passed { "pass" } else { "FAIL" },
            r.instances_checked,
            r.positives,
            r.negatives
        );
    }
    eprintln!(
        "{} instances, {} witnesses verified, {} witness failures",
        report.instances, report.witnesses_verified, report.witness_failures
    );
    println!("{}", report.to_json());
    Ok(report.passed)
}

fn cmd_lift(file: &Path, s: u8) -> Result<bool> {
    let f = io::function_from_file(file, max_n())?;
    let (lifted, spec) = f.lift(s)?;
    println!("{}", io::emit_lifted_function_json(&lifted, &spec));
    eprintln!("lifted to n={} at cardinality {}", lifted.ground().n(), spec.r);
    Ok(true)
}

fn cmd_conjugate(file: &Path, p: &str) -> Result<bool> {
    let f = io::function_from_file(file, max_n())?;
    let p = PriceVector::new(parse_f64_list(p)?)?;
    if p.len() != f.ground().n() as usize {
        return Err(DcaError::DimensionMismatch {
            expected: f.ground().n() as usize,
            got: p.len(),
        });
    }
    let (value, argmax) = duality::conjugate_argmax(&f, &p);
    let doc = serde_json::json!({
        "value": value,
        "argmax": argmax.elements().collect::<Vec<u8>>(),
    });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(true)
}

fn cmd_duality(
    file: &Path,
    x: &str,
    y: &str,
    i: &str,
    samples: usize,
    seed: u64,
    submodular_samples: Option<usize>,
) -> Result<bool> {
    let f = io::function_from_file(file, max_n())?;
    let ctx = ExchangeContext::new(f.ground(), parse_elements(x)?, parse_elements(y)?, parse_elements(i)?)?;
    let cfg = DualityConfig { m: None, q_samples: samples, seed, grid: None };
    let lemma = duality::verify_lemma_g1g2(&f, &ctx, &cfg)?;
    let mut doc = serde_json::to_value(&lemma)?;
    let mut ok = lemma.violations == 0 && lemma.weak_duality_ok && lemma.one_sided_ok;
    if let Some(count) = submodular_samples {
        let sub_cfg = DualityConfig { q_samples: count, ..cfg };
        let sub = duality::check_conjugate_submodular(&f, &sub_cfg)?;
        ok = ok && sub.violations == 0;
        doc["submodular"] = serde_json::to_value(&sub)?;
    }
    println!("{}", serde_json::to_string_pretty(&doc)?);
    eprintln!(
        "{} samples, {} violations, min slack {}",
        lemma.samples, lemma.violations, lemma.min_slack
    );
    Ok(ok)
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    kind: &str,
    out: &Option<PathBuf>,
    n: Option<u8>,
    grid: Option<&str>,
    random: Option<usize>,
    seed: u64,
    w: Option<&str>,
    phi: Option<&str>,
    family: &Option<PathBuf>,
) -> Result<bool> {
    match kind {
        "corpus" => {
            let n = n.ok_or_else(|| DcaError::Parse("corpus needs --n".to_string()))?;
            let mut spec = match random {
                Some(count) => CorpusSpec::random(n, count, seed),
                None => CorpusSpec::exhaustive(n),
            };
            if let Some(g) = grid {
                spec.grid = parse_grid(g)?;
            }
            let docs: Vec<serde_json::Value> = generators::enumerate_corpus(&spec)?
                .map(|f| {
                    serde_json::from_str(&io::emit_function_json(&f))
                        .expect("emitted functions are valid JSON")
                })
                .collect();
            write_out(out, &serde_json::to_string_pretty(&docs)?)?;
            eprintln!("{} instances", docs.len());
        }
        "weighted-matroid" => {
            let path = family
                .as_ref()
                .ok_or_else(|| DcaError::Parse("weighted-matroid needs --family".to_string()))?;
            let fam = io::family_from_file(path, max_n())?;
            let w = w.ok_or_else(|| DcaError::Parse("weighted-matroid needs --w".to_string()))?;
            let w = PriceVector::new(parse_f64_list(w)?)?;
            let f = generators::weighted_matroid_valuation(&fam, &w)?;
            write_out(out, &io::emit_function_json(&f))?;
        }
        "cardinality" => {
            let n = n.ok_or_else(|| DcaError::Parse("cardinality needs --n".to_string()))?;
            let ground = dca_core::ground::GroundSet::with_cap(n, max_n())?;
            let phi =
                phi.ok_or_else(|| DcaError::Parse("cardinality needs --phi".to_string()))?;
            let phi = parse_f64_list(phi)?;
            let w = w.ok_or_else(|| DcaError::Parse("cardinality needs --w".to_string()))?;
            let w = PriceVector::new(parse_f64_list(w)?)?;
            let f = generators::concave_cardinality_valuation(ground, &phi, &w)?;
            write_out(out, &io::emit_function_json(&f))?;
        }
        other => return Err(DcaError::Parse(format!("unknown kind {other:?}"))),
    }
    Ok(true)
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Check { file, axioms, all } => cmd_check(&file, &axioms, all),
        Cmd::FamilyCheck { file, axioms, all } => cmd_family_check(&file, &axioms, all),
        Cmd::Suite { n, exhaustive, random, seed, grid, threads, multi_cap, max_digests } => {
            cmd_suite(n, exhaustive, random, seed, grid.as_deref(), threads, multi_cap, max_digests)
        }
        Cmd::Lift { file, s } => cmd_lift(&file, s),
        Cmd::Conjugate { file, p } => cmd_conjugate(&file, &p),
        Cmd::Duality { file, x, y, i, samples, seed, submodular_samples } => {
            cmd_duality(&file, &x, &y, &i, samples, seed, submodular_samples)
        }
        Cmd::Generate { kind, out, n, grid, random, seed, w, phi, family } => cmd_generate(
            &kind,
            &out,
            n,
            grid.as_deref(),
            random,
            seed,
            w.as_deref(),
            phi.as_deref(),
            &family,
        ),
    }
}

fn error_exit(e: &DcaError) -> u8 {
    match e {
        DcaError::CapExceeded { .. }
        | DcaError::MultiExchangeCapExceeded { .. }
        | DcaError::CorpusTooLarge(..) => 3,
        DcaError::HypothesisViolated(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit(&e))
        }
    }
}
