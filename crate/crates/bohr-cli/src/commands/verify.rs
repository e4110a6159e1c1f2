//! `bohr verify` — verification suites over the inequality checks.

use std::collections::BTreeMap;
use std::path::PathBuf;

use bohr_core::estimator::{
    counterexample_scan, estimate_homogeneous_radius, estimate_radius, verify_lemma33_chain,
    verify_schwarz_pick, CheckReport,
};
use bohr_core::poly::family::{mobius_lift, mobius_truncation_for, random_family, RandomFamilySpec};
use bohr_core::poly::{BoundedOperatorU, CoeffKind, CoeffValue, MultiIndex, PluriharmonicPoly};
use bohr_core::spaces::{
    check_unconditionality, fmt_exp, NumericBudget, OrliczFunction, SpaceDescriptor,
};
use bohr_core::Error;

use crate::commands::{emit_failed, fail, usage};
use crate::output::{self, Format};

const SUITES: &[&str] = &["schwarz_pick", "lemma33", "example11", "unconditional", "all"];

const SEED_SPLIT: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(clap::Args)]
pub struct VerifyArgs {
    /// Suite: schwarz_pick, lemma33, example11, unconditional or all.
    #[arg(long)]
    pub suite: String,
    /// Radius for the example11 necessity scan.
    #[arg(long, default_value_t = 0.1)]
    pub r: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
    /// Fixed Minkowski exponent for schwarz_pick; cycles through
    /// {1, 2, inf} when omitted.
    #[arg(long)]
    pub q: Option<f64>,
    /// Polynomial count (schwarz_pick) / sample count (unconditional).
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    /// Domain override for lemma33, example11 and unconditional.
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    #[arg(long = "normU", default_value_t = 1.0)]
    pub norm_u: f64,
    /// Scan ceiling for example11.
    #[arg(long, default_value_t = 10_000)]
    pub ceiling: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub starts: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &VerifyArgs) -> i32 {
    if !SUITES.contains(&args.suite.as_str()) {
        return usage(&format!(
            "unknown suite '{}' (valid: {})",
            args.suite,
            SUITES.join(", ")
        ));
    }
    let reports = match collect(args) {
        Ok(r) => r,
        Err(RunErr::Usage(m)) => return usage(&m),
        Err(RunErr::Lib(e)) => return fail(&e),
    };

    let table = render_table(&reports);
    let text = match args.format {
        Format::Json => output::to_json(&reports),
        Format::Csv => output::csv(
            &["name", "pass", "worst_margin", "uncertainty"],
            &table_rows(&reports),
        ),
        Format::Table => table.clone(),
    };
    if args.format != Format::Table {
        eprint!("{table}");
    }
    if let Err(e) = output::emit(&text, args.out.as_deref()) {
        return emit_failed(&e);
    }
    let fails = reports.iter().filter(|r| !r.pass).count() as i32;
    if fails == 0 {
        0
    } else {
        (9 + fails).min(125)
    }
}

enum RunErr {
    Usage(String),
    Lib(Error),
}

impl From<Error> for RunErr {
    fn from(e: Error) -> Self {
        RunErr::Lib(e)
    }
}

fn collect(args: &VerifyArgs) -> Result<Vec<CheckReport>, RunErr> {
    let mut reports = Vec::new();
    match args.suite.as_str() {
        "schwarz_pick" => reports.push(suite_schwarz(args)?),
        "lemma33" => reports.push(suite_lemma33(args)?),
        "example11" => reports.push(suite_example11(args)?),
        "unconditional" => reports.extend(suite_unconditional(args)?),
        "all" => {
            reports.push(suite_schwarz(args)?);
            reports.push(suite_lemma33(args)?);
            reports.push(suite_example11(args)?);
            reports.extend(suite_unconditional(args)?);
        }
        _ => unreachable!(),
    }
    Ok(reports)
}

fn budget(args: &VerifyArgs) -> NumericBudget {
    NumericBudget {
        starts: args.starts.max(1),
        ..Default::default()
    }
}

/// Combines per-check triples `(margin, allowance, description)` into
/// one report; the reported pair belongs to the check minimizing
/// `margin + allowance`, so `pass ⟺ worst_margin ≥ −uncertainty`.
fn aggregate(name: &str, checks: &[(f64, f64, String)], info: Vec<String>) -> CheckReport {
    let worst = checks
        .iter()
        .min_by(|a, b| (a.0 + a.1).total_cmp(&(b.0 + b.1)))
        .expect("at least one check");
    let pass = checks.iter().all(|c| c.0 >= -c.1);
    let witnesses = checks
        .iter()
        .filter(|c| c.0 < -c.1)
        .map(|c| format!("{} (margin {:.6e})", c.2, c.0))
        .collect();
    CheckReport {
        name: name.to_string(),
        pass,
        worst_margin: worst.0,
        uncertainty: worst.1,
        witnesses,
        info,
    }
}

/// Seeded random polynomials through the degree-m coefficient
/// inequalities, aggregated into a single report.
fn suite_schwarz(args: &VerifyArgs) -> Result<CheckReport, RunErr> {
    if args.count == 0 {
        return Err(RunErr::Usage("--count must be at least 1".into()));
    }
    let budget = budget(args);
    let qs = [1.0, 2.0, f64::INFINITY];
    let kinds = [CoeffKind::Scalar, CoeffKind::Matrix(2), CoeffKind::Matrix(3)];
    let mut checks = Vec::with_capacity(args.count);
    for i in 0..args.count {
        let dim = 1 + i % 3;
        let q = args.q.unwrap_or(qs[(i / 3) % 3]);
        let spec = RandomFamilySpec {
            dim,
            max_degree: 4,
            coeff_kind: kinds[(i / 4) % 3],
            count: 1,
            include_antiholomorphic: i % 2 == 0,
            allow_large: false,
        };
        let seed = args.seed.wrapping_add((i as u64).wrapping_mul(SEED_SPLIT));
        let family = random_family(&spec, seed)?;
        let f = &family[0];
        let m = 1 + (i as u32) % 3;
        let space = SpaceDescriptor::minkowski(q, dim)?;
        let rep = verify_schwarz_pick(&space, f, m, Some(q), &budget, seed ^ 0x5bf0_3635)?;
        checks.push((
            rep.worst_margin,
            rep.uncertainty,
            format!("polynomial {i} (dim {dim}, q {}, m {m})", fmt_exp(q)),
        ));
    }
    let info = vec![format!(
        "checked {} random polynomials (dims 1-3, degree <= 4, scalar and matrix)",
        args.count
    )];
    Ok(aggregate("schwarz_pick", &checks, info))
}

/// Single monomial `z₁^m` with its exact sup norm on `space`.
fn axis_monomial(space: &SpaceDescriptor, m: u32) -> Result<PluriharmonicPoly, Error> {
    let mut f = PluriharmonicPoly::new(space.dim, CoeffKind::Scalar)?;
    f.set_a(
        MultiIndex::axis(space.dim, 0, m),
        CoeffValue::scalar(1.0, 0.0),
    )?;
    Ok(f
        .with_known_sup(space.coordinate_sup(0).powi(m as i32), space.clone())
        .with_label(format!("axis:deg{m}")))
}

/// Homogeneous-chain check: the estimate over the full family must not
/// exceed the minimum over its homogeneous subfamilies.
fn suite_lemma33(args: &VerifyArgs) -> Result<CheckReport, RunErr> {
    let space = match &args.space {
        Some(t) => SpaceDescriptor::parse(t)?,
        None => SpaceDescriptor::polydisc(2),
    };
    let budget = budget(args);
    let u = if args.norm_u == 1.0 {
        BoundedOperatorU::identity()
    } else {
        BoundedOperatorU::identity_scaled(args.norm_u)?
    };
    let deg1 = axis_monomial(&space, 1)?;
    let deg2 = axis_monomial(&space, 2)?;
    let mob = mobius_lift(0.9, mobius_truncation_for(0.9, 1e-12), space.dim, 0)?;
    let full = vec![deg1.clone(), deg2.clone(), mob];

    let full_est = estimate_radius(
        &space,
        &full,
        &u,
        args.p,
        args.lambda,
        args.tol,
        &budget,
        args.seed,
    )?;
    let mut homogeneous = BTreeMap::new();
    for (m, member) in [(1u32, deg1), (2u32, deg2)] {
        let est = estimate_homogeneous_radius(
            &space,
            m,
            &[member],
            &u,
            args.p,
            args.lambda,
            args.tol,
            &budget,
            args.seed.wrapping_add(u64::from(m).wrapping_mul(SEED_SPLIT)),
        )?;
        homogeneous.insert(m, est);
    }
    Ok(verify_lemma33_chain(
        &space,
        &full_est,
        &homogeneous,
        args.p,
        args.lambda,
        args.norm_u,
        args.tol,
    )?)
}

/// Necessity scan: some member of the oscillating family must violate
/// the majorant inequality at radius `r` for every `‖U‖ = λ`.
fn suite_example11(args: &VerifyArgs) -> Result<CheckReport, RunErr> {
    let space = match &args.space {
        Some(t) => SpaceDescriptor::parse(t)?,
        None => SpaceDescriptor::polydisc(1),
    };
    let outcome = counterexample_scan(&space, args.r, args.p, args.lambda, Some(args.ceiling))?;
    let mut info = vec![
        format!("space {}", space.grammar()),
        format!("r = {}, p = {}", args.r, args.p),
        format!("scan ceiling {}", outcome.ceiling),
    ];
    Ok(match outcome.k {
        Some(k) => {
            info.insert(0, format!("violation at k = {k}"));
            info.push(format!(
                "witness |z1| = {}",
                output::fmt_value(outcome.witness[0])
            ));
            CheckReport {
                name: "example11".into(),
                pass: true,
                worst_margin: 0.0,
                uncertainty: 0.0,
                witnesses: Vec::new(),
                info,
            }
        }
        None => CheckReport {
            name: "example11".into(),
            pass: false,
            worst_margin: -1.0,
            uncertainty: 0.0,
            witnesses: vec![format!(
                "no violating k up to {} at r = {}, p = {}",
                outcome.ceiling, args.r, args.p
            )],
            info,
        },
    })
}

/// 1-unconditionality of every implemented norm under unimodular
/// coordinate multipliers.
fn suite_unconditional(args: &VerifyArgs) -> Result<Vec<CheckReport>, RunErr> {
    let spaces: Vec<SpaceDescriptor> = match &args.space {
        Some(t) => vec![SpaceDescriptor::parse(t)?],
        None => vec![
            SpaceDescriptor::minkowski(1.0, 4)?,
            SpaceDescriptor::minkowski(2.0, 4)?,
            SpaceDescriptor::polydisc(4),
            SpaceDescriptor::mixed(1.0, 2, 2.0, 2)?,
            SpaceDescriptor::lorentz(2.0, 1.0, 4)?,
            SpaceDescriptor::orlicz(OrliczFunction::parse("x^2+0.5*x^4")?, 4)?,
        ],
    };
    let mut out = Vec::with_capacity(spaces.len());
    for (j, space) in spaces.iter().enumerate() {
        let rep = check_unconditionality(
            space,
            args.count,
            args.seed.wrapping_add((j as u64).wrapping_mul(SEED_SPLIT)),
        )?;
        let mut witnesses = Vec::new();
        if !rep.pass {
            witnesses.push(format!(
                "norm deviated by {:.6e} under unimodular multipliers",
                rep.max_deviation
            ));
        }
        out.push(CheckReport {
            name: format!("unconditional:{}", space.grammar()),
            pass: rep.pass,
            worst_margin: -rep.max_deviation,
            uncertainty: 1e-9,
            witnesses,
            info: vec![format!("{} samples", rep.samples)],
        });
    }
    Ok(out)
}

fn table_rows(reports: &[CheckReport]) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                r.pass.to_string(),
                output::fmt_value(r.worst_margin),
                output::fmt_value(r.uncertainty),
            ]
        })
        .collect()
}

fn render_table(reports: &[CheckReport]) -> String {
    output::table(
        &["name", "pass", "worst_margin", "uncertainty"],
        &table_rows(reports),
    )
}
