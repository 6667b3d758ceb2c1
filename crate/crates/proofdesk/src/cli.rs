//! The `ekhad` command-line driver.
//!
//! Subcommands: `prove` discovers a certificate and writes the proof
//! document, `verify` re-checks a recorded certificate, `multi-verify`
//! handles several summation variables, `ct` evaluates the symmetric
//! constant-term product, and `sum` / `oracle` compute both sides of an
//! identity literally — no certificates, just exact summation.
//!
//! Exit codes: 0 proved/success, 1 refuted or verification failed,
//! 2 inconclusive, 3 usage/parse error, 4 resource budget exceeded.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use wz_algebra::Rat;
use wz_engine::{
    certify_identity, find_multi_ansatz, verify_multi, wz_certificate_find, zeilberger,
    Certificate, EngineError, MultiCert, Recurrence, Verdict, DEFAULT_BUDGET,
};

use crate::ast::IdentityAst;
use crate::document::{
    document_from_multi, document_from_report, document_without_certificate, ProofDocument,
};
use crate::error::DeskError;
use crate::lower::{lower, resolve_ranges, sum_and_rhs, Lowered};
use crate::parser::parse_identity;
use crate::record::{short_hash, CertRecord};

#[derive(Parser)]
#[command(
    name = "ekhad",
    version,
    about = "Proves terminating hypergeometric identities with rational certificates",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a certificate for each identity and emit proof documents.
    Prove(ProveArgs),
    /// Re-check a recorded certificate against an identity.
    Verify(VerifyArgs),
    /// Check (or search for) a certificate with several summation variables.
    #[command(name = "multi-verify")]
    MultiVerify(MultiArgs),
    /// Evaluate the constant term of the symmetric product.
    Ct(CtArgs),
    /// Sum an identity literally at one point.
    Sum(SumArgs),
    /// Compare both sides of an identity over a sweep of the recurrence variable.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Latex => "tex",
        }
    }

    fn render(self, doc: &ProofDocument) -> String {
        match self {
            Format::Text => doc.render_text(),
            Format::Latex => doc.render_latex(),
        }
    }
}

#[derive(Args)]
struct ProveArgs {
    /// Identity file in the DSL; repeat for a batch.
    #[arg(long = "identity", required = true)]
    identity: Vec<PathBuf>,
    /// Output file (one identity) or directory (batch).
    #[arg(long)]
    emit: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Highest recurrence order tried when no WZ pair exists.
    #[arg(long = "max-order", default_value_t = 6)]
    max_order: usize,
    /// Base-case index n0 (default 0, advanced past poles automatically).
    #[arg(long = "base-index")]
    base_index: Option<i64>,
    /// Certificate record file (one identity) or directory (batch).
    #[arg(long = "certificate-out")]
    certificate_out: Option<PathBuf>,
    /// Omit generation metadata from the documents.
    #[arg(long)]
    reproducible: bool,
    /// Identities proven concurrently in a batch.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "identity")]
    identity: PathBuf,
    /// Certificate record (JSON) to check.
    #[arg(long = "certificate")]
    certificate: PathBuf,
    #[arg(long)]
    emit: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long = "base-index")]
    base_index: Option<i64>,
    #[arg(long)]
    reproducible: bool,
}

#[derive(Args)]
struct MultiArgs {
    #[arg(long = "identity")]
    identity: PathBuf,
    /// Certificate record to check; omitted, a search is run instead.
    #[arg(long = "certificate")]
    certificate: Option<PathBuf>,
    /// Degree bound for the certificate search.
    #[arg(long = "degree-bound", default_value_t = 3)]
    degree_bound: u32,
    /// Parameter values for the numeric grid checks, e.g. "x=1,y=2,z=3".
    /// Unbound parameters default to 1.
    #[arg(long)]
    at: Option<String>,
    #[arg(long)]
    emit: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long = "certificate-out")]
    certificate_out: Option<PathBuf>,
    #[arg(long)]
    reproducible: bool,
}

#[derive(Args)]
struct CtArgs {
    /// Number of variables in the symmetric product.
    #[arg(long)]
    r: usize,
    /// Common exponent a.
    #[arg(long)]
    a: u32,
    /// Expansion budget in monomial operations
    /// (default from EKHAD_BUDGET, else a built-in limit).
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(Args)]
struct SumArgs {
    #[arg(long = "identity")]
    identity: PathBuf,
    /// Values for every free variable, e.g. "n=5" or "n=2,x=1,y=2,z=3".
    #[arg(long)]
    at: String,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "identity")]
    identity: PathBuf,
    /// First value of the recurrence variable.
    #[arg(long, default_value_t = 0)]
    from: i64,
    /// Last value of the recurrence variable.
    #[arg(long, default_value_t = 20)]
    to: i64,
    /// Values for the remaining parameters, e.g. "x=1,y=2,z=3".
    #[arg(long)]
    at: Option<String>,
}

/// Parses `argv` and runs the requested subcommand, returning the process
/// exit code.  All human-facing errors go to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Prove(args) => cmd_prove(args),
        Command::Verify(args) => cmd_verify(args),
        Command::MultiVerify(args) => cmd_multi(args),
        Command::Ct(args) => cmd_ct(args),
        Command::Sum(args) => cmd_sum(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("ekhad: {err}");
            err.exit_code()
        }
    }
}

// ===== shared plumbing =====

struct Loaded {
    ast: IdentityAst,
    lowered: Lowered,
}

fn load_identity(path: &Path) -> Result<Loaded, DeskError> {
    let src = fs::read_to_string(path)
        .map_err(|e| DeskError::Io(format!("{}: {e}", path.display())))?;
    let ast = parse_identity(&src)?;
    let lowered = lower(&ast)?;
    Ok(Loaded { ast, lowered })
}

fn parse_at(spec: Option<&str>) -> Result<BTreeMap<String, Rat>, DeskError> {
    let mut point = BTreeMap::new();
    let Some(spec) = spec else {
        return Ok(point);
    };
    for binding in spec.split(',') {
        let binding = binding.trim();
        if binding.is_empty() {
            continue;
        }
        let Some((var, value)) = binding.split_once('=') else {
            return Err(DeskError::Usage(format!(
                "--at binding `{binding}` is not of the form var=value"
            )));
        };
        let value: Rat = value.trim().parse().map_err(|_| {
            DeskError::Usage(format!("--at value `{}` is not a rational", value.trim()))
        })?;
        point.insert(var.trim().to_string(), value);
    }
    Ok(point)
}

fn write_output(path: &Path, content: &str) -> Result<(), DeskError> {
    fs::write(path, content)
        .map_err(|e| DeskError::Io(format!("{}: {e}", path.display())))
}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "identity".into())
}

/// Severity order for combining per-identity exit codes: errors dominate,
/// then refutation, then inconclusiveness.
fn worse(a: i32, b: i32) -> i32 {
    let rank = |c: i32| match c {
        0 => 0,
        2 => 1,
        1 => 2,
        other => other,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::Proved => 0,
        Verdict::Refuted => 1,
        Verdict::Inconclusive => 2,
    }
}

// ===== prove =====

struct ProveOutcome {
    document: ProofDocument,
    record: Option<CertRecord>,
    verdict: Verdict,
}

fn describe_recurrence(rec: &Recurrence, n: &str) -> String {
    let mut s = String::new();
    for (j, c) in rec.coefficients.iter().enumerate() {
        if j > 0 {
            s.push_str(" + ");
        }
        if j == 0 {
            let _ = write!(s, "({c})*a({n})");
        } else {
            let _ = write!(s, "({c})*a({n}+{j})");
        }
    }
    s.push_str(" = 0");
    s
}

fn prove_one(loaded: &Loaded, args: &ProveArgs) -> Result<ProveOutcome, DeskError> {
    let low = &loaded.lowered;
    if low.sum_vars.len() != 1 {
        return Err(DeskError::Usage(format!(
            "prove handles one summation variable; this identity has {} — use multi-verify",
            low.sum_vars.len()
        )));
    }
    let n = low.n_var.as_str();
    let k = low.sum_vars[0].as_str();
    let normalized = low.identity.normalized();

    match wz_certificate_find(&normalized, n, k) {
        Ok(found) => {
            let report = certify_identity(&low.identity, &found, args.base_index)?;
            // Record the convention the checks actually verified under.
            let cert = Certificate {
                rs: found.rs,
                convention: report.convention,
            };
            let document = document_from_report(
                &loaded.ast,
                n,
                k,
                &cert,
                &report,
                args.reproducible,
            );
            let record = CertRecord::from_certificate(
                &cert,
                &loaded.ast.canonical_statement(),
            );
            Ok(ProveOutcome {
                document,
                record: Some(record),
                verdict: report.verdict,
            })
        }
        Err(EngineError::NoWzPair) => {
            let mut notes = vec![
                "no WZ pair exists: the forward difference of the summand has no \
                 hypergeometric antidifference"
                    .to_string(),
            ];
            match zeilberger(&normalized, n, k, args.max_order) {
                Ok(rec) => {
                    notes.push(format!(
                        "creative telescoping found an order-{} recurrence for the \
                         normalized sum a({n}): {}",
                        rec.order,
                        describe_recurrence(&rec, n)
                    ));
                    notes.push(format!(
                        "telescoping certificate R({n}, {k}) = {}",
                        rec.certificate
                    ));
                    notes.push(
                        "checking initial values against the recurrence would complete \
                         a proof; this tool does not do that automatically"
                            .to_string(),
                    );
                }
                Err(EngineError::NoRecurrence { max_order }) => {
                    notes.push(format!(
                        "no telescoped recurrence of order <= {max_order} exists either \
                         (raise --max-order to search further)"
                    ));
                }
                Err(other) => return Err(other.into()),
            }
            let document = document_without_certificate(
                &loaded.ast,
                n,
                &low.sum_vars,
                notes,
                args.reproducible,
            );
            Ok(ProveOutcome {
                document,
                record: None,
                verdict: Verdict::Inconclusive,
            })
        }
        Err(other) => Err(other.into()),
    }
}

enum TaskResult {
    Done(ProveOutcome, u128),
    Failed(DeskError),
}

fn cmd_prove(args: ProveArgs) -> Result<i32, DeskError> {
    let batch = args.identity.len() > 1;
    if args.jobs == 0 {
        return Err(DeskError::Usage("--jobs must be at least 1".into()));
    }
    if let (true, Some(emit)) = (batch, args.emit.as_ref()) {
        fs::create_dir_all(emit)
            .map_err(|e| DeskError::Io(format!("{}: {e}", emit.display())))?;
    }
    if let (true, Some(dir)) = (batch, args.certificate_out.as_ref()) {
        fs::create_dir_all(dir)
            .map_err(|e| DeskError::Io(format!("{}: {e}", dir.display())))?;
    }

    let results: Vec<Option<TaskResult>> =
        run_batch(&args.identity, args.jobs, |path| {
            let start = Instant::now();
            match load_identity(path).and_then(|loaded| prove_one(&loaded, &args)) {
                Ok(outcome) => TaskResult::Done(outcome, start.elapsed().as_millis()),
                Err(err) => TaskResult::Failed(err),
            }
        });

    let mut exit = 0;
    for (path, slot) in args.identity.iter().zip(results) {
        let result = slot.expect("every task ran");
        match result {
            TaskResult::Failed(err) => {
                eprintln!("ekhad: {}: {err}", path.display());
                exit = worse(exit, err.exit_code());
            }
            TaskResult::Done(outcome, ms) => {
                let rendered = args.format.render(&outcome.document);
                let mut printed_document = false;
                match (&args.emit, batch) {
                    (Some(dir), true) => {
                        let file =
                            dir.join(format!("{}.{}", stem_of(path), args.format.extension()));
                        write_output(&file, &rendered)?;
                    }
                    (Some(file), false) => write_output(file, &rendered)?,
                    (None, false) => {
                        print!("{rendered}");
                        printed_document = true;
                    }
                    (None, true) => {}
                }
                if let (Some(out), Some(record)) = (&args.certificate_out, &outcome.record) {
                    let file = if batch {
                        out.join(format!("{}.cert.json", stem_of(path)))
                    } else {
                        out.clone()
                    };
                    write_output(&file, &record.to_json())?;
                }
                if !printed_document {
                    let hash = outcome
                        .record
                        .as_ref()
                        .map(|r| short_hash(&r.identity_hash).to_string())
                        .unwrap_or_else(|| "-".into());
                    println!(
                        "{}: {} time_ms={} cert={}",
                        path.display(),
                        outcome.verdict,
                        ms,
                        hash
                    );
                }
                exit = worse(exit, verdict_exit(outcome.verdict));
            }
        }
    }
    Ok(exit)
}

/// Runs `work` over `paths`, at most `jobs` at a time, preserving order.
fn run_batch<F>(paths: &[PathBuf], jobs: usize, work: F) -> Vec<Option<TaskResult>>
where
    F: Fn(&Path) -> TaskResult + Sync,
{
    let results: Mutex<Vec<Option<TaskResult>>> =
        Mutex::new((0..paths.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = jobs.min(paths.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= paths.len() {
                    break;
                }
                let result = work(&paths[i]);
                results.lock().expect("result store")[i] = Some(result);
            });
        }
    });
    results.into_inner().expect("result store")
}

// ===== verify =====

fn cmd_verify(args: VerifyArgs) -> Result<i32, DeskError> {
    let loaded = load_identity(&args.identity)?;
    let low = &loaded.lowered;
    if low.sum_vars.len() != 1 {
        return Err(DeskError::Usage(format!(
            "verify handles one summation variable; this identity has {} — use multi-verify",
            low.sum_vars.len()
        )));
    }
    let text = fs::read_to_string(&args.certificate)
        .map_err(|e| DeskError::Io(format!("{}: {e}", args.certificate.display())))?;
    let record = CertRecord::from_json(&text)?;
    if !record.matches(&loaded.ast) {
        eprintln!(
            "ekhad: certificate fingerprint {} does not match this identity",
            short_hash(&record.identity_hash)
        );
        return Ok(1);
    }
    let cert = record.to_certificate()?;
    let report = certify_identity(&low.identity, &cert, args.base_index)?;
    let document = document_from_report(
        &loaded.ast,
        &low.n_var,
        &low.sum_vars[0],
        &cert,
        &report,
        args.reproducible,
    );
    let rendered = args.format.render(&document);
    match &args.emit {
        Some(path) => {
            write_output(path, &rendered)?;
            println!(
                "{}: {} cert={}",
                args.identity.display(),
                report.verdict,
                short_hash(&record.identity_hash)
            );
        }
        None => print!("{rendered}"),
    }
    Ok(if report.verdict == Verdict::Proved { 0 } else { 1 })
}

// ===== multi-verify =====

fn cmd_multi(args: MultiArgs) -> Result<i32, DeskError> {
    let loaded = load_identity(&args.identity)?;
    let low = &loaded.lowered;
    let n = low.n_var.as_str();
    let ks: Vec<&str> = low.sum_vars.iter().map(String::as_str).collect();
    let normalized = low.identity.normalized();

    let cert: MultiCert = match &args.certificate {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| DeskError::Io(format!("{}: {e}", path.display())))?;
            let record = CertRecord::from_json(&text)?;
            if !record.matches(&loaded.ast) {
                eprintln!(
                    "ekhad: certificate fingerprint {} does not match this identity",
                    short_hash(&record.identity_hash)
                );
                return Ok(1);
            }
            record.to_multi()?
        }
        None => match find_multi_ansatz(&normalized, n, &ks, args.degree_bound)? {
            Some(cert) => cert,
            None => {
                let document = document_without_certificate(
                    &loaded.ast,
                    n,
                    &low.sum_vars,
                    vec![format!(
                        "no certificate with numerator degree <= {} over the pole \
                         denominators exists (raise --degree-bound to search further)",
                        args.degree_bound
                    )],
                    args.reproducible,
                );
                emit_or_print(&args.emit, args.format, &document)?;
                return Ok(2);
            }
        },
    };

    let check = verify_multi(&normalized, n, &ks, &cert)?;

    // Numeric grid evidence: the normalized sum should be exactly 1 at
    // every small n, for the given (or default) parameter values.
    let mut point = parse_at(args.at.as_deref())?;
    for p in &low.parameters {
        point
            .entry(p.clone())
            .or_insert_with(|| Rat::from_integer(1.into()));
    }
    const GRID_ROWS: i64 = 8;
    let spot_label = if low.parameters.is_empty() {
        format!("normalized sum equals 1 for {n} = 0..{GRID_ROWS}")
    } else {
        let binds: Vec<String> = point
            .iter()
            .filter(|(v, _)| low.parameters.contains(v))
            .map(|(v, x)| format!("{v} = {x}"))
            .collect();
        format!(
            "normalized sum equals 1 for {n} = 0..{GRID_ROWS} at {}",
            binds.join(", ")
        )
    };
    let spot = grid_sums_are_one(low, &point, GRID_ROWS);
    let spot_checks = match spot {
        Ok(ok) => vec![(spot_label, ok)],
        Err(err) => vec![(format!("{spot_label} (failed to evaluate: {err})"), false)],
    };

    let document = document_from_multi(
        &loaded.ast,
        n,
        &low.sum_vars,
        &cert,
        &check,
        &spot_checks,
        args.reproducible,
    );
    if let Some(out) = &args.certificate_out {
        let record = CertRecord::from_multi(&cert, &loaded.ast.canonical_statement());
        write_output(out, &record.to_json())?;
    }
    emit_or_print(&args.emit, args.format, &document)?;
    Ok(if document.verdict == Verdict::Proved {
        0
    } else {
        1
    })
}

fn emit_or_print(
    emit: &Option<PathBuf>,
    format: Format,
    document: &ProofDocument,
) -> Result<(), DeskError> {
    let rendered = format.render(document);
    match emit {
        Some(path) => write_output(path, &rendered),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn grid_sums_are_one(
    low: &Lowered,
    params: &BTreeMap<String, Rat>,
    rows: i64,
) -> Result<bool, DeskError> {
    let one = Rat::from_integer(1.into());
    let normalized = low.identity.normalized();
    for nv in 0..=rows {
        let mut point = params.clone();
        point.insert(low.n_var.clone(), Rat::from_integer(nv.into()));
        let ranges = resolve_ranges(low, &point)?;
        let borrowed: Vec<(&str, i64, i64)> = ranges
            .iter()
            .map(|(v, lo, hi)| (v.as_str(), *lo, *hi))
            .collect();
        let total = wz_oracle::exact_sum_multi(&normalized, &point, &borrowed)?;
        if total != one {
            return Ok(false);
        }
    }
    Ok(true)
}

// ===== ct =====

fn cmd_ct(args: CtArgs) -> Result<i32, DeskError> {
    let budget = match args.budget {
        Some(b) => b,
        None => match std::env::var("EKHAD_BUDGET") {
            Ok(text) => text.parse::<u128>().map_err(|_| {
                DeskError::Usage(format!(
                    "EKHAD_BUDGET must be a nonnegative integer, got `{text}`"
                ))
            })?,
            Err(_) => DEFAULT_BUDGET,
        },
    };
    let value = wz_engine::constant_term(args.r, args.a, budget)?;
    println!("{value}");
    Ok(0)
}

// ===== sum =====

fn cmd_sum(args: SumArgs) -> Result<i32, DeskError> {
    let loaded = load_identity(&args.identity)?;
    let point = parse_at(Some(&args.at))?;
    let (lhs, rhs) = sum_and_rhs(&loaded.lowered, &point)?;
    println!("sum = {lhs}");
    println!("rhs = {rhs}");
    if lhs == rhs {
        println!("agreement: exact");
        Ok(0)
    } else {
        println!("agreement: NONE");
        Ok(1)
    }
}

// ===== oracle =====

fn cmd_oracle(args: OracleArgs) -> Result<i32, DeskError> {
    if args.to < args.from {
        return Err(DeskError::Usage(format!(
            "--to {} is below --from {}",
            args.to, args.from
        )));
    }
    let loaded = load_identity(&args.identity)?;
    let low = &loaded.lowered;
    let params = parse_at(args.at.as_deref())?;
    let mut agreed: u64 = 0;
    let mut checked: u64 = 0;
    let mut skipped: u64 = 0;
    for nv in args.from..=args.to {
        let mut point = params.clone();
        point.insert(low.n_var.clone(), Rat::from_integer(nv.into()));
        match sum_and_rhs(low, &point) {
            Ok((lhs, rhs)) => {
                checked += 1;
                if lhs == rhs {
                    agreed += 1;
                    println!("{n} = {nv}: sum = {lhs}, rhs = {rhs}, ok", n = low.n_var);
                } else {
                    println!(
                        "{n} = {nv}: sum = {lhs}, rhs = {rhs}, MISMATCH",
                        n = low.n_var
                    );
                }
            }
            Err(DeskError::Hyper(e)) => {
                skipped += 1;
                println!("{n} = {nv}: skipped ({e})", n = low.n_var);
            }
            Err(DeskError::Oracle(wz_oracle::OracleError::Hyper(e))) => {
                skipped += 1;
                println!("{n} = {nv}: skipped ({e})", n = low.n_var);
            }
            Err(other) => return Err(other),
        }
    }
    println!(
        "agreement on {agreed}/{checked} rows ({skipped} skipped)"
    );
    Ok(if agreed == checked { 0 } else { 1 })
}
