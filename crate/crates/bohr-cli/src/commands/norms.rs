//! `bohr norms` — direct access to the sequence-space invariants.

use std::path::PathBuf;

use bohr_core::spaces::{
    check_unconditionality, domain_scaling, dual_ones_norm, embed_norm, sup_pnorm_on_ball, Method,
    NumericBudget, SpaceDescriptor,
};
use bohr_core::Error;
use num_complex::Complex64;
use serde_json::json;

use crate::commands::{emit_failed, fail, usage};
use crate::output::{self, Format};

const OPS: &[&str] = &[
    "norm",
    "functional",
    "embed",
    "dual-ones",
    "sup-pnorm",
    "scaling",
    "uncond",
];

#[derive(clap::Args)]
pub struct NormsArgs {
    /// Operation: norm, functional, embed, dual-ones, sup-pnorm,
    /// scaling or uncond.
    #[arg(long)]
    pub op: String,
    /// Domain grammar for single-space operations.
    #[arg(long)]
    pub space: Option<String>,
    /// Source domain for embed/scaling.
    #[arg(long)]
    pub from: Option<String>,
    /// Target domain for embed/scaling.
    #[arg(long)]
    pub to: Option<String>,
    /// Point coordinates for norm/functional, one `re` or `re,im`
    /// token per coordinate, e.g. --z 3 4 or --z 0,1 1,0.
    #[arg(long, num_args = 1..)]
    pub z: Vec<String>,
    /// Exponent for sup-pnorm.
    #[arg(long)]
    pub p: Option<f64>,
    /// Sample count for uncond.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Method: auto, closed or numeric.
    #[arg(long, default_value = "auto")]
    pub method: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub starts: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_method(text: &str) -> Result<Method, String> {
    match text {
        "auto" => Ok(Method::Auto),
        "closed" => Ok(Method::ClosedForm),
        "numeric" => Ok(Method::Numeric),
        other => Err(format!(
            "unknown method '{other}' (valid: auto, closed, numeric)"
        )),
    }
}

fn parse_point(tokens: &[String]) -> Result<Vec<Complex64>, String> {
    if tokens.is_empty() {
        return Err("this operation needs --z".into());
    }
    tokens
        .iter()
        .map(|t| {
            let (re, im) = match t.split_once(',') {
                Some((re, im)) => (re, im),
                None => (t.as_str(), "0"),
            };
            let re: f64 = re
                .trim()
                .parse()
                .map_err(|_| format!("bad coordinate '{t}'"))?;
            let im: f64 = im
                .trim()
                .parse()
                .map_err(|_| format!("bad coordinate '{t}'"))?;
            Ok(Complex64::new(re, im))
        })
        .collect()
}

pub fn run(args: &NormsArgs) -> i32 {
    if !OPS.contains(&args.op.as_str()) {
        return usage(&format!(
            "unknown op '{}' (valid: {})",
            args.op,
            OPS.join(", ")
        ));
    }
    let method = match parse_method(&args.method) {
        Ok(m) => m,
        Err(e) => return usage(&e),
    };
    let budget = NumericBudget {
        starts: args.starts.max(1),
        ..Default::default()
    };

    let single = |text: &Option<String>| -> Result<SpaceDescriptor, RunErr> {
        let text = text
            .as_deref()
            .ok_or_else(|| RunErr::Usage(format!("--space is required for {}", args.op)))?;
        Ok(SpaceDescriptor::parse(text)?)
    };
    let pair = || -> Result<(SpaceDescriptor, SpaceDescriptor), RunErr> {
        let from = args
            .from
            .as_deref()
            .ok_or_else(|| RunErr::Usage(format!("--from is required for {}", args.op)))?;
        let to = args
            .to
            .as_deref()
            .ok_or_else(|| RunErr::Usage(format!("--to is required for {}", args.op)))?;
        Ok((SpaceDescriptor::parse(from)?, SpaceDescriptor::parse(to)?))
    };

    let result: Result<serde_json::Value, RunErr> = (|| match args.op.as_str() {
        "norm" | "functional" => {
            let space = single(&args.space)?;
            let z = parse_point(&args.z).map_err(RunErr::Usage)?;
            let value = if args.op == "norm" {
                space.norm(&z)?
            } else {
                space.minkowski_functional(&z)?
            };
            Ok(json!({
                "op": args.op,
                "space": space.grammar(),
                "z": args.z,
                "value": value,
            }))
        }
        "embed" | "scaling" => {
            let (from, to) = pair()?;
            let est = if args.op == "embed" {
                embed_norm(&from, &to, method, &budget, args.seed)?
            } else {
                domain_scaling(&from, &to, &budget, args.seed)?
            };
            Ok(json!({
                "op": args.op,
                "from": from.grammar(),
                "to": to.grammar(),
                "value": est.value,
                "closed_form": est.closed_form,
                "converged": est.converged,
            }))
        }
        "dual-ones" => {
            let space = single(&args.space)?;
            let est = dual_ones_norm(&space, method, &budget, args.seed)?;
            Ok(json!({
                "op": args.op,
                "space": space.grammar(),
                "value": est.value,
                "closed_form": est.closed_form,
                "converged": est.converged,
            }))
        }
        "sup-pnorm" => {
            let space = single(&args.space)?;
            let p = args
                .p
                .ok_or_else(|| RunErr::Usage("--p is required for sup-pnorm".into()))?;
            let est = sup_pnorm_on_ball(&space, p, method, &budget, args.seed)?;
            Ok(json!({
                "op": args.op,
                "space": space.grammar(),
                "p": p,
                "value": est.value,
                "closed_form": est.closed_form,
                "converged": est.converged,
            }))
        }
        "uncond" => {
            let space = single(&args.space)?;
            let report = check_unconditionality(&space, args.samples, args.seed)?;
            Ok(json!({
                "op": args.op,
                "space": space.grammar(),
                "samples": report.samples,
                "max_deviation": report.max_deviation,
                "pass": report.pass,
            }))
        }
        _ => unreachable!(),
    })();

    let value = match result {
        Ok(v) => v,
        Err(RunErr::Usage(m)) => return usage(&m),
        Err(RunErr::Lib(e)) => return fail(&e),
    };
    let text = match args.format {
        Format::Json => output::to_json(&value),
        Format::Csv | Format::Table => {
            let obj = value.as_object().expect("norms output is an object");
            let headers: Vec<&str> = obj.keys().map(String::as_str).collect();
            let row: Vec<String> = obj
                .values()
                .map(|v| match v {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Array(a) => a
                        .iter()
                        .map(|x| x.as_str().unwrap_or_default().to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    other => other.to_string(),
                })
                .collect();
            if args.format == Format::Csv {
                output::csv(&headers, &[row])
            } else {
                output::table(&headers, &[row])
            }
        }
    };
    match output::emit(&text, args.out.as_deref()) {
        Ok(()) => 0,
        Err(e) => emit_failed(&e),
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
