//! `bohr bounds` — evaluates one closed-form bound formula.

use std::path::PathBuf;

use bohr_core::bounds::{
    eval_cor14, eval_sandwich, eval_thm11_family, eval_thm12, eval_thm12_upper, eval_thm13_psi,
    eval_thm13a, BoundReport, Cor14Regime, PCase, SandwichMode, Thm11Variant, Thm13aItem,
};
use bohr_core::spaces::{
    domain_scaling, dual_ones_norm, embed_norm, sup_pnorm_on_ball, Method, NumericBudget,
    SpaceDescriptor,
};
use bohr_core::Error;

use crate::commands::{emit_failed, fail, usage};
use crate::config::build_constants;
use crate::output::{self, Format};

pub const FORMULA_IDS: &[&str] = &[
    "thm11", "cor11", "thm19", "thm12", "thm12u", "cor14", "thm13a", "thm13", "sandwich",
];

#[derive(clap::Args)]
pub struct BoundsArgs {
    /// Formula id: thm11, cor11, thm19, thm12, thm12u, cor14, thm13a,
    /// thm13 or sandwich.
    #[arg(long)]
    pub formula: String,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long)]
    pub lambda: f64,
    /// Operator norm ‖U‖ for the constant-free formulas.
    #[arg(long = "normU", default_value_t = 1.0)]
    pub norm_u: f64,
    /// Domain grammar, e.g. lq:q=2:n=4; supplies sup-p-norms and
    /// embedding constants where the formula needs them.
    #[arg(long)]
    pub space: Option<String>,
    /// Second domain for sandwich S-factor computation.
    #[arg(long)]
    pub to: Option<String>,
    /// Regime for cor14 (p_eq_1, p_ge_q, p_lt_q); classified from
    /// (p, q) when omitted.
    #[arg(long)]
    pub regime: Option<String>,
    /// Case for thm12/thm13a (p_eq_1, p_ge_2, p_between); classified
    /// from p when omitted.
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Item for thm13a: subset_l2 or symmetric_2convex.
    #[arg(long, default_value = "symmetric_2convex")]
    pub item: String,
    /// Cotype exponent Cot(X) for thm13.
    #[arg(long)]
    pub cot: Option<f64>,
    /// Cotype t of the target space for thm13; defaults to --cot.
    #[arg(long)]
    pub cotype: Option<f64>,
    /// First embedding constant (thm12: ℓ₂→Z; thm12u: Z→ℓ_q;
    /// thm13a: ℓ₂→Z_n). Computed from --space when omitted there,
    /// otherwise defaults to 1.
    #[arg(long)]
    pub embed1: Option<f64>,
    /// Second embedding constant (thm12: Z→ℓ₁; thm12u: ℓ_q→Z;
    /// thm13a: the dual-ones norm). Same defaulting as --embed1.
    #[arg(long)]
    pub embed2: Option<f64>,
    /// Forward scaling factor for sandwich; computed from
    /// --space/--to when omitted.
    #[arg(long)]
    pub sforward: Option<f64>,
    /// Backward scaling factor for sandwich.
    #[arg(long)]
    pub sbackward: Option<f64>,
    /// Sandwich mode: two_sided or one_sided.
    #[arg(long, default_value = "two_sided")]
    pub mode: String,
    /// Constant override KEY=VALUE; repeatable, wins over --config.
    #[arg(long = "const")]
    pub constants: Vec<String>,
    /// Constants file: `key = value` lines, `#` comments.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Restart budget for numeric space invariants.
    #[arg(long, default_value_t = 16)]
    pub starts: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub(crate) fn parse_case(text: &str) -> Result<PCase, String> {
    match text {
        "p_eq_1" => Ok(PCase::PEq1),
        "p_ge_2" => Ok(PCase::PGe2),
        "p_between" => Ok(PCase::PBetween),
        other => Err(format!(
            "unknown case '{other}' (valid: p_eq_1, p_ge_2, p_between)"
        )),
    }
}

pub(crate) fn parse_regime(text: &str) -> Result<Cor14Regime, String> {
    match text {
        "p_eq_1" => Ok(Cor14Regime::PEq1),
        "p_ge_q" => Ok(Cor14Regime::PGeQ),
        "p_lt_q" => Ok(Cor14Regime::PLtQ),
        other => Err(format!(
            "unknown regime '{other}' (valid: p_eq_1, p_ge_q, p_lt_q)"
        )),
    }
}

pub(crate) fn parse_item(text: &str) -> Result<Thm13aItem, String> {
    match text {
        "subset_l2" => Ok(Thm13aItem::SubsetL2),
        "symmetric_2convex" => Ok(Thm13aItem::Symmetric2Convex),
        other => Err(format!(
            "unknown item '{other}' (valid: subset_l2, symmetric_2convex)"
        )),
    }
}

fn parse_mode(text: &str) -> Result<SandwichMode, String> {
    match text {
        "two_sided" => Ok(SandwichMode::TwoSided),
        "one_sided" => Ok(SandwichMode::OneSided),
        other => Err(format!(
            "unknown mode '{other}' (valid: two_sided, one_sided)"
        )),
    }
}

/// Everything the dispatcher resolves before calling the library.
struct Resolved {
    space: Option<SpaceDescriptor>,
    budget: NumericBudget,
}

impl Resolved {
    fn n(&self, args: &BoundsArgs) -> Result<usize, String> {
        match (args.n, &self.space) {
            (Some(n), Some(s)) if n != s.dim => Err(format!(
                "--n {n} conflicts with the dimension {} of --space",
                s.dim
            )),
            (Some(n), _) => Ok(n),
            (None, Some(s)) => Ok(s.dim),
            (None, None) => Err("this formula needs --n or --space".into()),
        }
    }

    /// Embedding constant: explicit flag, else computed from the
    /// space via `compute`, else 1.
    fn embed(
        &self,
        explicit: Option<f64>,
        compute: impl FnOnce(&SpaceDescriptor, &NumericBudget) -> Result<f64, Error>,
    ) -> Result<f64, Error> {
        if let Some(v) = explicit {
            return Ok(v);
        }
        match &self.space {
            Some(s) => compute(s, &self.budget),
            None => Ok(1.0),
        }
    }
}

pub fn run(args: &BoundsArgs) -> i32 {
    if !FORMULA_IDS.contains(&args.formula.as_str()) {
        return usage(&format!(
            "unknown formula '{}' (valid ids: {})",
            args.formula,
            FORMULA_IDS.join(", ")
        ));
    }
    let constants = match build_constants(&args.constants, args.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return usage(&e),
    };
    let space = match args.space.as_deref().map(SpaceDescriptor::parse) {
        Some(Ok(s)) => Some(s),
        Some(Err(e)) => return fail(&e),
        None => None,
    };
    let ctx = Resolved {
        space,
        budget: NumericBudget {
            starts: args.starts.max(1),
            ..Default::default()
        },
    };

    let reports = match evaluate(args, &ctx, &constants) {
        Ok(r) => r,
        Err(RunError::Usage(msg)) => return usage(&msg),
        Err(RunError::Lib(e)) => return fail(&e),
    };
    let text = render(&reports, args.format);
    match crate::output::emit(&text, args.out.as_deref()) {
        Ok(()) => 0,
        Err(e) => emit_failed(&e),
    }
}

enum RunError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Lib(e)
    }
}

impl From<String> for RunError {
    fn from(m: String) -> Self {
        RunError::Usage(m)
    }
}

fn evaluate(
    args: &BoundsArgs,
    ctx: &Resolved,
    constants: &bohr_core::bounds::BoundConstants,
) -> Result<Vec<BoundReport>, RunError> {
    let need_q = || -> Result<f64, RunError> {
        args.q
            .ok_or_else(|| RunError::Usage(format!("--q is required for {}", args.formula)))
    };
    let case = match &args.case {
        Some(text) => Some(parse_case(text).map_err(RunError::Usage)?),
        None => None,
    };

    Ok(match args.formula.as_str() {
        "thm11" | "cor11" | "thm19" => {
            let variant = match args.formula.as_str() {
                "thm11" => Thm11Variant::PluriharmonicD,
                "cor11" => Thm11Variant::CorollaryIdentity,
                _ => Thm11Variant::HolomorphicC,
            };
            let space = ctx.space.as_ref().ok_or_else(|| {
                RunError::Usage(format!(
                    "--space is required for {} (it supplies the sup-p-norm divisor)",
                    args.formula
                ))
            })?;
            let sup_p =
                sup_pnorm_on_ball(space, args.p, Method::Auto, &ctx.budget, args.seed)?.value;
            vec![eval_thm11_family(
                variant, args.p, args.lambda, args.norm_u, sup_p,
            )?]
        }
        "thm12" => {
            let n = ctx.n(args).map_err(RunError::Usage)?;
            let case = match case {
                Some(c) => c,
                None => PCase::classify(args.p)?,
            };
            let e1 = ctx.embed(args.embed1, |s, b| {
                Ok(embed_norm(
                    &SpaceDescriptor::minkowski(2.0, s.dim)?,
                    s,
                    Method::Auto,
                    b,
                    args.seed,
                )?
                .value)
            })?;
            let e2 = ctx.embed(args.embed2, |s, b| {
                Ok(embed_norm(
                    s,
                    &SpaceDescriptor::minkowski(1.0, s.dim)?,
                    Method::Auto,
                    b,
                    args.seed,
                )?
                .value)
            })?;
            vec![eval_thm12(case, n, args.lambda, args.p, e1, e2, constants)?]
        }
        "thm12u" => {
            let n = ctx.n(args).map_err(RunError::Usage)?;
            let q = need_q()?;
            let e1 = ctx.embed(args.embed1, |s, b| {
                Ok(embed_norm(
                    s,
                    &SpaceDescriptor::minkowski(q, s.dim)?,
                    Method::Auto,
                    b,
                    args.seed,
                )?
                .value)
            })?;
            let e2 = ctx.embed(args.embed2, |s, b| {
                Ok(embed_norm(
                    &SpaceDescriptor::minkowski(q, s.dim)?,
                    s,
                    Method::Auto,
                    b,
                    args.seed,
                )?
                .value)
            })?;
            vec![eval_thm12_upper(
                n,
                args.lambda,
                args.p,
                q,
                e1,
                e2,
                constants,
            )?]
        }
        "cor14" => {
            let n = ctx.n(args).map_err(RunError::Usage)?;
            let q = need_q()?;
            let regime = match &args.regime {
                Some(text) => parse_regime(text).map_err(RunError::Usage)?,
                None => Cor14Regime::classify(args.p, q)?,
            };
            vec![eval_cor14(regime, q, args.p, args.lambda, n, constants)?]
        }
        "thm13a" | "sandwich" => {
            let n = ctx.n(args).map_err(RunError::Usage)?;
            let item = parse_item(&args.item).map_err(RunError::Usage)?;
            let case = match case {
                Some(c) => c,
                None => PCase::classify(args.p)?,
            };
            let e1 = ctx.embed(args.embed1, |s, b| {
                Ok(embed_norm(
                    &SpaceDescriptor::minkowski(2.0, s.dim)?,
                    s,
                    Method::Auto,
                    b,
                    args.seed,
                )?
                .value)
            })?;
            let e2 = ctx.embed(args.embed2, |s, b| {
                Ok(dual_ones_norm(s, Method::Auto, b, args.seed)?.value)
            })?;
            let pair = eval_thm13a(item, case, n, args.lambda, args.p, e1, e2, constants)?;
            if args.formula == "thm13a" {
                vec![pair.0, pair.1]
            } else {
                let mode = parse_mode(&args.mode).map_err(RunError::Usage)?;
                let (sf, sb) = sandwich_factors(args, ctx)?;
                let out = eval_sandwich(&pair, sf, sb, mode)?;
                vec![out.0, out.1]
            }
        }
        "thm13" => {
            let n = ctx.n(args).map_err(RunError::Usage)?;
            let q = need_q()?;
            let cot = args
                .cot
                .ok_or_else(|| RunError::Usage("--cot is required for thm13".into()))?;
            let t = args.cotype.unwrap_or(cot);
            let pair = eval_thm13_psi(n, args.lambda, args.p, q, t, cot, constants)?;
            vec![pair.0, pair.1]
        }
        other => unreachable!("formula '{other}' passed the id check"),
    })
}

fn sandwich_factors(args: &BoundsArgs, ctx: &Resolved) -> Result<(f64, f64), RunError> {
    match (args.sforward, args.sbackward) {
        (Some(f), Some(b)) => Ok((f, b)),
        (None, None) => {
            let omega1 = ctx.space.as_ref().ok_or_else(|| {
                RunError::Usage(
                    "sandwich needs --sforward/--sbackward or --space and --to".into(),
                )
            })?;
            let to_text = args.to.as_deref().ok_or_else(|| {
                RunError::Usage("sandwich needs --to when the S-factors are computed".into())
            })?;
            let omega2 = SpaceDescriptor::parse(to_text)?;
            let sf = domain_scaling(omega1, &omega2, &ctx.budget, args.seed)?.value;
            let sb = domain_scaling(&omega2, omega1, &ctx.budget, args.seed)?.value;
            Ok((sf, sb))
        }
        _ => Err(RunError::Usage(
            "--sforward and --sbackward must be given together".into(),
        )),
    }
}

fn render(reports: &[BoundReport], format: Format) -> String {
    match format {
        Format::Json => output::to_json(&reports),
        Format::Csv => output::csv(
            &["formula_id", "role", "value", "certified"],
            &rows(reports, false),
        ),
        Format::Table => output::table(
            &["formula_id", "role", "value", "certified", "note"],
            &rows(reports, true),
        ),
    }
}

fn rows(reports: &[BoundReport], with_note: bool) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|r| {
            let mut row = vec![
                r.formula_id.clone(),
                format!("{:?}", r.role).to_lowercase(),
                output::fmt_value(r.value),
                r.certified.to_string(),
            ];
            if with_note {
                row.push(r.note.clone().unwrap_or_default());
            }
            row
        })
        .collect()
}
