//! `bohr sweep` — one formula across a dimension range, CSV out.

use std::path::PathBuf;

use bohr_core::bounds::{
    eval_cor14, eval_thm12, eval_thm12_upper, eval_thm13_psi, eval_thm13a, BoundConstants,
    BoundReport, Cor14Regime, PCase,
};
use bohr_core::Error;
use serde_json::json;

use crate::commands::bounds::{parse_case, parse_item, parse_regime};
use crate::commands::{emit_failed, fail, usage};
use crate::config::{build_constants, parse_range};
use crate::output::{self, Format};

/// The n-dependent formulas; the constant-free family and sandwich
/// have no dimension axis to sweep.
const SWEEPABLE: &[&str] = &["thm12", "thm12u", "cor14", "thm13a", "thm13"];

#[derive(clap::Args)]
pub struct SweepArgs {
    /// Formula id: thm12, thm12u, cor14, thm13a or thm13.
    #[arg(long)]
    pub formula: String,
    /// Dimension range: 2..64, 2..64:+3 or 2..64:x2.
    #[arg(long)]
    pub n: String,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long)]
    pub q: Option<f64>,
    /// Regime for cor14; classified from (p, q) when omitted.
    #[arg(long)]
    pub regime: Option<String>,
    /// Case for thm12/thm13a; classified from p when omitted.
    #[arg(long)]
    pub case: Option<String>,
    /// Item for thm13a.
    #[arg(long, default_value = "symmetric_2convex")]
    pub item: String,
    /// Cotype exponent Cot(X) for thm13.
    #[arg(long)]
    pub cot: Option<f64>,
    /// Cotype t for thm13; defaults to --cot.
    #[arg(long)]
    pub cotype: Option<f64>,
    /// First embedding constant (see `bounds --help`).
    #[arg(long, default_value_t = 1.0)]
    pub embed1: f64,
    /// Second embedding constant (see `bounds --help`).
    #[arg(long, default_value_t = 1.0)]
    pub embed2: f64,
    #[arg(long = "const")]
    pub constants: Vec<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &SweepArgs) -> i32 {
    if !SWEEPABLE.contains(&args.formula.as_str()) {
        return usage(&format!(
            "formula '{}' cannot be swept over n (valid: {})",
            args.formula,
            SWEEPABLE.join(", ")
        ));
    }
    let ns = match parse_range(&args.n) {
        Ok(ns) => ns,
        Err(e) => return usage(&e),
    };
    let constants = match build_constants(&args.constants, args.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return usage(&e),
    };

    let mut rows: Vec<(usize, BoundReport)> = Vec::new();
    for &n in &ns {
        match evaluate(args, n, &constants) {
            Ok(reports) => rows.extend(reports.into_iter().map(|r| (n, r))),
            Err(EvalErr::Usage(m)) => return usage(&m),
            Err(EvalErr::Lib(e)) => return fail(&e),
        }
    }

    let text = match args.format {
        Format::Csv => output::csv(
            &["n", "formula_id", "role", "value", "certified"],
            &csv_rows(&rows),
        ),
        Format::Table => output::table(
            &["n", "formula_id", "role", "value", "certified"],
            &csv_rows(&rows),
        ),
        Format::Json => {
            let values: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, r)| json!({ "n": n, "report": r }))
                .collect();
            output::to_json(&values)
        }
    };
    match output::emit(&text, args.out.as_deref()) {
        Ok(()) => 0,
        Err(e) => emit_failed(&e),
    }
}

enum EvalErr {
    Usage(String),
    Lib(Error),
}

impl From<Error> for EvalErr {
    fn from(e: Error) -> Self {
        EvalErr::Lib(e)
    }
}

fn evaluate(
    args: &SweepArgs,
    n: usize,
    constants: &BoundConstants,
) -> Result<Vec<BoundReport>, EvalErr> {
    let need_q = || -> Result<f64, EvalErr> {
        args.q
            .ok_or_else(|| EvalErr::Usage(format!("--q is required for {}", args.formula)))
    };
    let case = || -> Result<PCase, EvalErr> {
        match &args.case {
            Some(t) => parse_case(t).map_err(EvalErr::Usage),
            None => Ok(PCase::classify(args.p)?),
        }
    };
    Ok(match args.formula.as_str() {
        "thm12" => vec![eval_thm12(
            case()?,
            n,
            args.lambda,
            args.p,
            args.embed1,
            args.embed2,
            constants,
        )?],
        "thm12u" => vec![eval_thm12_upper(
            n,
            args.lambda,
            args.p,
            need_q()?,
            args.embed1,
            args.embed2,
            constants,
        )?],
        "cor14" => {
            let q = need_q()?;
            let regime = match &args.regime {
                Some(t) => parse_regime(t).map_err(EvalErr::Usage)?,
                None => Cor14Regime::classify(args.p, q)?,
            };
            vec![eval_cor14(regime, q, args.p, args.lambda, n, constants)?]
        }
        "thm13a" => {
            let item = parse_item(&args.item).map_err(EvalErr::Usage)?;
            let pair = eval_thm13a(
                item,
                case()?,
                n,
                args.lambda,
                args.p,
                args.embed1,
                args.embed2,
                constants,
            )?;
            vec![pair.0, pair.1]
        }
        "thm13" => {
            let cot = args
                .cot
                .ok_or_else(|| EvalErr::Usage("--cot is required for thm13".into()))?;
            let pair = eval_thm13_psi(
                n,
                args.lambda,
                args.p,
                need_q()?,
                args.cotype.unwrap_or(cot),
                cot,
                constants,
            )?;
            vec![pair.0, pair.1]
        }
        other => unreachable!("formula '{other}' passed the id check"),
    })
}

fn csv_rows(rows: &[(usize, BoundReport)]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|(n, r)| {
            vec![
                n.to_string(),
                r.formula_id.clone(),
                format!("{:?}", r.role).to_lowercase(),
                output::fmt_value(r.value),
                r.certified.to_string(),
            ]
        })
        .collect()
}
