//! The `gruen` command line: argument definitions, command execution and
//! rendering. `main.rs` only parses, prints and exits.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gruen_core::arith::{gl_order, is_prime, multiplicative_order, PrimePower};
use gruen_core::classgrp::{Deduction, Scenario, ScenarioReport};
use gruen_core::gruen::{
    action_bound, predict_gl_sylow, sweep_sylow_predictions, verify_action_bound,
    verify_sylow_prediction, ActionTheorem, Prediction, Verdict, VerificationReport,
};
use gruen_core::matgroup::{GeneratorSet, DEFAULT_CAP};
use gruen_core::Error;

pub const CAP_ENV: &str = "GRUEN_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUTED: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "gruen",
    version,
    about = "Grün's Sylow and trivial-action theorems, checked by brute force"
)]
pub struct Cli {
    /// Emit a JSON envelope.
    #[arg(long, global = true, conflicts_with = "human")]
    pub json: bool,
    /// Emit plain text (the default).
    #[arg(long, global = true)]
    pub human: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order of GL_n(F_q), q = p^f.
    Order(OrderArgs),
    /// Predicted ell-Sylow structure of GL_n(F_q), optionally checked.
    Sylow(SylowArgs),
    /// Trivial-action bound nu for rank m.
    Bound(BoundArgs),
    /// Check a trivial-action bound on a group given by generators.
    Verify(VerifyArgs),
    /// Class-group descent deductions for a scenario file.
    Descent(DescentArgs),
    /// Check the Sylow prediction over a grid of (n, q, ell).
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub f: u32,
}

#[derive(Args, Debug)]
pub struct SylowArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub f: u32,
    #[arg(long)]
    pub ell: u64,
    /// Enumerate the group and compare.
    #[arg(long)]
    pub verify: bool,
    /// Enumeration cap (default: $GRUEN_CAP or 2000000).
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TheoremArg {
    Gt1,
    Gt2,
    Ts1,
}

impl From<TheoremArg> for ActionTheorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Gt1 => ActionTheorem::Gt1,
            TheoremArg::Gt2 => ActionTheorem::Gt2,
            TheoremArg::Ts1 => ActionTheorem::Ts1,
        }
    }
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub ell: u64,
    #[arg(long, value_enum, default_value = "gt2")]
    pub theorem: TheoremArg,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Generator set (JSON).
    pub generators: PathBuf,
    #[arg(long)]
    pub ell: u64,
    #[arg(long, value_enum, default_value = "gt2")]
    pub theorem: TheoremArg,
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DescentArgs {
    /// Scenario file (JSON).
    pub scenario: PathBuf,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 4)]
    pub n_max: u32,
    /// Field sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,7")]
    pub q_set: Vec<u64>,
    #[arg(long, default_value_t = 13)]
    pub ell_max: u64,
    #[arg(long)]
    pub cap: Option<usize>,
}

/// The stable output document of every command.
#[derive(Clone, Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub version: String,
}

/// A finished command: the envelope, its text rendering and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub envelope: OutputEnvelope,
    pub human: String,
    pub exit_code: i32,
}

/// A failure before any result exists.
#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub exit_code: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit_code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Internal(_) => 1,
            _ => EXIT_USAGE,
        };
        Failure {
            message: e.to_string(),
            exit_code,
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        exit_code: EXIT_USAGE,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn envelope(
    command: &str,
    parameters: Value,
    result: Value,
    verdict: Option<Verdict>,
) -> OutputEnvelope {
    OutputEnvelope {
        command: command.to_string(),
        parameters,
        result,
        verdict,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

/// Cap from the flag, else `GRUEN_CAP`, else the library default.
pub fn resolve_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| usage(format!("{CAP_ENV}={text:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

/// `q` as `p^f`.
pub fn parse_field_size(q: u64) -> Result<PrimePower, Failure> {
    let p = (2..=q)
        .find(|k| q.is_multiple_of(*k))
        .ok_or_else(|| usage(format!("q = {q} is not a prime power")))?;
    let mut rest = q;
    let mut f = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    if rest != 1 || !is_prime(p) {
        return Err(usage(format!("q = {q} is not a prime power")));
    }
    Ok(PrimePower::new(p, f)?)
}

pub fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Order(args) => cmd_order(args),
        Command::Sylow(args) => cmd_sylow(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Descent(args) => cmd_descent(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

pub fn cmd_order(args: &OrderArgs) -> Result<Outcome, Failure> {
    if args.n == 0 {
        return Err(usage("n must be positive"));
    }
    let q = PrimePower::new(args.p, args.f)?;
    let order = gl_order(args.n, &q).to_string();
    Ok(Outcome {
        human: format!("|GL_{}(F_{q})| = {order}\n", args.n),
        envelope: envelope(
            "order",
            json!({ "n": args.n, "p": args.p, "f": args.f }),
            json!({ "q": q.q().to_string(), "order": order }),
            None,
        ),
        exit_code: EXIT_OK,
    })
}

fn describe_prediction(pred: &gruen_core::gruen::SylowPrediction, ell: u64) -> String {
    use gruen_core::gruen::SylowClause;
    match pred.clause {
        SylowClause::ElementaryAbelian if pred.r == 0 => "trivial".to_string(),
        SylowClause::ElementaryAbelian if pred.i == 1 => format!(
            "elementary abelian of order {ell}^{}",
            pred.order_exponent.unwrap_or(0)
        ),
        SylowClause::ElementaryAbelian => format!(
            "abelian of type ({ell}^{})^{}, order {ell}^{}",
            pred.i,
            pred.r,
            pred.order_exponent.unwrap_or(0)
        ),
        SylowClause::MetabelianBound => {
            format!("derived length at most {}", pred.derived_length_bound)
        }
    }
}

fn verdict_name(v: Verdict) -> String {
    to_value(&v).as_str().unwrap_or_default().to_string()
}

fn render_report(out: &mut String, report: &VerificationReport) {
    let _ = writeln!(out, "verdict: {}", verdict_name(report.verdict));
    if let Some(obs) = &report.observed {
        let _ = writeln!(out, "observed: {}", to_value(obs));
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
}

pub fn cmd_sylow(args: &SylowArgs) -> Result<Outcome, Failure> {
    if args.n == 0 {
        return Err(usage("n must be positive"));
    }
    let q = PrimePower::new(args.p, args.f)?;
    let cap = resolve_cap(args.cap)?;
    let prediction = predict_gl_sylow(args.n, &q, args.ell)?;
    let mut parameters = json!({ "n": args.n, "p": args.p, "f": args.f, "ell": args.ell });
    let mut human = format!(
        "GL_{}(F_{q}), ell = {}: m_ell = {}, r = {}, i = {}\nprediction: {} ({})\n",
        args.n,
        args.ell,
        prediction.m_ell,
        prediction.r,
        prediction.i,
        describe_prediction(&prediction, args.ell),
        verdict_clause(&prediction),
    );
    if !args.verify {
        return Ok(Outcome {
            envelope: envelope(
                "sylow",
                parameters,
                json!({ "prediction": prediction }),
                None,
            ),
            human,
            exit_code: EXIT_OK,
        });
    }
    parameters["verify"] = json!(true);
    parameters["cap"] = json!(cap);
    let report = verify_sylow_prediction(args.n, &q, args.ell, cap)?;
    render_report(&mut human, &report);
    let exit_code = match report.verdict {
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::SkippedTooLarge => EXIT_CAP,
        _ => EXIT_OK,
    };
    Ok(Outcome {
        envelope: envelope(
            "sylow",
            parameters,
            json!({ "prediction": prediction, "report": report }),
            Some(report.verdict),
        ),
        human,
        exit_code,
    })
}

fn verdict_clause(pred: &gruen_core::gruen::SylowPrediction) -> String {
    to_value(&pred.clause)
        .as_str()
        .unwrap_or_default()
        .to_string()
}

pub fn cmd_bound(args: &BoundArgs) -> Result<Outcome, Failure> {
    let theorem: ActionTheorem = args.theorem.into();
    let bound = action_bound(theorem, args.m, args.p, args.ell)?;
    let m_ell = multiplicative_order(args.p, args.ell)?;
    let parameters = json!({ "m": args.m, "p": args.p, "ell": args.ell, "theorem": theorem });
    let human = match &bound {
        Some(b) => format!(
            "{}: m = {}, p = {}, ell = {}, m_ell = {}, nu = {}\n{}\n",
            theorem.name(),
            b.m,
            b.p,
            b.ell,
            b.m_ell,
            b.nu,
            b.conclusion
        ),
        None => format!(
            "{}: not applicable (ell = {} does not exceed m / m_ell = {}/{})\n",
            theorem.name(),
            args.ell,
            args.m,
            m_ell
        ),
    };
    Ok(Outcome {
        envelope: envelope(
            "bound",
            parameters,
            json!({ "applicable": bound.is_some(), "m_ell": m_ell, "bound": bound }),
            None,
        ),
        human,
        exit_code: EXIT_OK,
    })
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let theorem: ActionTheorem = args.theorem.into();
    let cap = resolve_cap(args.cap)?;
    let set = GeneratorSet::from_json(&read_file(&args.generators)?)?;
    let group = set.to_group(cap)?;
    let report = verify_action_bound(&group, args.ell, theorem)?;
    let mut human = format!(
        "image of order {} in GL_{}(Z/{}), ell = {}, {}\n",
        group.order(),
        set.dimension,
        group.modulus().value(),
        args.ell,
        theorem.name()
    );
    if let Some(Prediction::Action(b)) = &report.predicted {
        let _ = writeln!(human, "claim: {} (nu = {})", b.conclusion, b.nu);
    }
    render_report(&mut human, &report);
    let exit_code = if report.verdict == Verdict::Refuted {
        EXIT_REFUTED
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        envelope: envelope(
            "verify",
            json!({ "generators": set, "ell": args.ell, "theorem": theorem, "cap": cap }),
            to_value(&report),
            Some(report.verdict),
        ),
        human,
        exit_code,
    })
}

fn render_deduction(out: &mut String, label: &str, d: &Deduction) {
    let conclusion = to_value(&d.conclusion);
    let _ = write!(out, "{label}: {}", conclusion.as_str().unwrap_or_default());
    if let Some(field) = &d.subfield {
        let _ = write!(out, " ({field})");
    }
    if let Some(nu) = d.nu {
        let _ = write!(out, ", nu = {nu}");
    }
    out.push('\n');
    for (k, step) in d.justification.iter().enumerate() {
        let _ = writeln!(out, "  {}. [{}] {}", k + 1, step.rule, step.statement);
    }
}

pub fn cmd_descent(args: &DescentArgs) -> Result<Outcome, Failure> {
    let scenario = Scenario::from_json(&read_file(&args.scenario)?)?;
    let report: ScenarioReport = scenario.evaluate()?;
    let mut human = String::new();
    for (label, d) in [
        ("descent", &report.descent),
        ("pg0", &report.pg0),
        ("pg1", &report.pg1),
        ("pgal", &report.pgal),
        ("comes_from", &report.comes_from),
    ] {
        if let Some(d) = d {
            render_deduction(&mut human, label, d);
        }
    }
    Ok(Outcome {
        envelope: envelope("descent", to_value(&scenario), to_value(&report), None),
        human,
        exit_code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct SweepRow {
    n: u32,
    q: String,
    ell: u64,
    clause: Option<Value>,
    verdict: Verdict,
}

#[derive(Serialize, Default)]
struct SweepSummary {
    total: usize,
    confirmed: usize,
    refuted: usize,
    skipped_out_of_scope: usize,
    skipped_too_large: usize,
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<Outcome, Failure> {
    let cap = resolve_cap(args.cap)?;
    let qs = args
        .q_set
        .iter()
        .map(|&q| parse_field_size(q))
        .collect::<Result<Vec<_>, _>>()?;
    let reports = sweep_sylow_predictions(args.n_max, &qs, args.ell_max, cap)?;
    let mut summary = SweepSummary::default();
    let mut rows = Vec::with_capacity(reports.len());
    for report in &reports {
        summary.total += 1;
        match report.verdict {
            Verdict::Confirmed => summary.confirmed += 1,
            Verdict::Refuted => summary.refuted += 1,
            Verdict::SkippedOutOfScope => summary.skipped_out_of_scope += 1,
            Verdict::SkippedTooLarge => summary.skipped_too_large += 1,
        }
        let (n, q, ell) = match &report.parameters {
            gruen_core::gruen::Query::Sylow { n, q, ell } => (*n, q.to_string(), *ell),
            gruen_core::gruen::Query::Action { .. } => unreachable!("sweeps are Sylow queries"),
        };
        let clause = match &report.predicted {
            Some(Prediction::Sylow(p)) => Some(to_value(&p.clause)),
            _ => None,
        };
        rows.push(SweepRow {
            n,
            q,
            ell,
            clause,
            verdict: report.verdict,
        });
    }
    let verdict = if summary.refuted > 0 {
        Verdict::Refuted
    } else {
        Verdict::Confirmed
    };
    let mut human = format!(
        "{:>3} {:>5} {:>4}  {:<20} verdict\n",
        "n", "q", "ell", "clause"
    );
    for row in &rows {
        let clause = row
            .clause
            .as_ref()
            .and_then(Value::as_str)
            .unwrap_or("-")
            .to_string();
        let _ = writeln!(
            human,
            "{:>3} {:>5} {:>4}  {:<20} {}",
            row.n,
            row.q,
            row.ell,
            clause,
            verdict_name(row.verdict)
        );
    }
    let _ = writeln!(
        human,
        "total {}: {} confirmed, {} refuted, {} out of scope, {} too large",
        summary.total,
        summary.confirmed,
        summary.refuted,
        summary.skipped_out_of_scope,
        summary.skipped_too_large
    );
    Ok(Outcome {
        envelope: envelope(
            "sweep",
            json!({ "n_max": args.n_max, "q_set": args.q_set, "ell_max": args.ell_max, "cap": cap }),
            json!({ "summary": summary, "cases": rows }),
            Some(verdict),
        ),
        human,
        exit_code: if summary.refuted > 0 {
            EXIT_REFUTED
        } else {
            EXIT_OK
        },
    })
}

/// Pretty JSON with a trailing newline; byte-stable for identical input.
pub fn to_json(envelope: &OutputEnvelope) -> String {
    let mut text = serde_json::to_string_pretty(envelope).expect("envelope serializes");
    text.push('\n');
    text
}
