//! `bohr estimate` — empirical upper estimation of the radius over a
//! test-function family.

use std::fs;
use std::path::PathBuf;

use bohr_core::estimator::{estimate_homogeneous_radius, estimate_radius, RadiusEstimate};
use bohr_core::poly::family::{mobius_lift, mobius_truncation_for};
use bohr_core::poly::serial::parse_polys;
use bohr_core::poly::{BoundedOperatorU, PluriharmonicPoly};
use bohr_core::spaces::{NumericBudget, SpaceDescriptor};

use crate::commands::{emit_failed, fail, usage};
use crate::output::{self, Format};

/// Default Möbius parameter grid for `--family mobius`.
pub const MOBIUS_GRID: &[f64] = &[0.1, 0.3, 0.5, 0.7, 0.9, 0.99];

#[derive(clap::Args)]
pub struct EstimateArgs {
    /// Domain grammar, e.g. lq:q=inf:n=1.
    #[arg(long)]
    pub space: String,
    /// Family spec: `mobius` (built-in grid), `mobius:A1,A2,...`
    /// (custom parameters) or `file:PATH` (serialized polynomials).
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    /// Bisection tolerance on the returned bracket.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Scale of the coefficient operator U = c·I.
    #[arg(long = "normU", default_value_t = 1.0)]
    pub norm_u: f64,
    /// Restrict to an m-homogeneous family and use the homogeneous
    /// radius estimator.
    #[arg(long)]
    pub homogeneous: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub starts: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Builds the family from its CLI spec; members must match `dim`.
pub fn parse_family(spec: &str, dim: usize) -> Result<Vec<PluriharmonicPoly>, String> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        return parse_polys(&text).map_err(|e| e.to_string());
    }
    let params: Vec<f64> = if spec == "mobius" {
        MOBIUS_GRID.to_vec()
    } else if let Some(list) = spec.strip_prefix("mobius:") {
        list.split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("bad Möbius parameter '{t}'"))
            })
            .collect::<Result<_, _>>()?
    } else {
        return Err(format!(
            "unknown family '{spec}' (valid: mobius, mobius:A1,A2,..., file:PATH)"
        ));
    };
    params
        .iter()
        .map(|&a| {
            mobius_lift(a, mobius_truncation_for(a, 1e-12), dim, 0).map_err(|e| e.to_string())
        })
        .collect()
}

pub fn run(args: &EstimateArgs) -> i32 {
    let space = match SpaceDescriptor::parse(&args.space) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let family = match parse_family(&args.family, space.dim) {
        Ok(f) => f,
        Err(e) => return usage(&e),
    };
    let u = if args.norm_u == 1.0 {
        BoundedOperatorU::identity()
    } else {
        match BoundedOperatorU::identity_scaled(args.norm_u) {
            Ok(u) => u,
            Err(e) => return fail(&e),
        }
    };
    let budget = NumericBudget {
        starts: args.starts.max(1),
        ..Default::default()
    };
    let est = match args.homogeneous {
        Some(m) => estimate_homogeneous_radius(
            &space, m, &family, &u, args.p, args.lambda, args.tol, &budget, args.seed,
        ),
        None => estimate_radius(
            &space, &family, &u, args.p, args.lambda, args.tol, &budget, args.seed,
        ),
    };
    let est = match est {
        Ok(est) => est,
        Err(e) => return fail(&e),
    };
    let text = render(&est, args.format);
    match output::emit(&text, args.out.as_deref()) {
        Ok(()) => 0,
        Err(e) => emit_failed(&e),
    }
}

fn render(est: &RadiusEstimate, format: Format) -> String {
    match format {
        Format::Json => output::to_json(est),
        Format::Csv => {
            let rows: Vec<Vec<String>> = est
                .per_function_margins
                .iter()
                .map(|m| {
                    vec![
                        m.id.clone(),
                        m.critical_r.map(output::fmt_value).unwrap_or_default(),
                        output::fmt_value(m.margin),
                    ]
                })
                .collect();
            output::csv(&["id", "critical_r", "margin"], &rows)
        }
        Format::Table => {
            let mut rows = vec![
                vec![
                    "upper_bracket".to_string(),
                    output::fmt_value(est.upper_bracket),
                ],
                vec![
                    "lower_bracket".to_string(),
                    output::fmt_value(est.lower_bracket),
                ],
                vec!["family".to_string(), est.family_id.clone()],
                vec!["certified".to_string(), est.certified.to_string()],
            ];
            for m in &est.per_function_margins {
                rows.push(vec![
                    format!("margin[{}]", m.id),
                    format!(
                        "{}{}",
                        output::fmt_value(m.margin),
                        m.critical_r
                            .map(|r| format!(" (critical r {})", output::fmt_value(r)))
                            .unwrap_or_default()
                    ),
                ]);
            }
            for note in &est.notes {
                rows.push(vec!["note".to_string(), note.clone()]);
            }
            output::table(&["field", "value"], &rows)
        }
    }
}
