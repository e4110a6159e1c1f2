//! Line-oriented text serialization for polynomial families.
//!
//! ```text
//! # comment
//! poly f0
//! dim 2
//! kind scalar
//! a 0,0 = 0.5,0
//! a 1,0 = -0.75,0
//! b 0,1 = 0,1
//! end
//!
//! poly f1
//! dim 1
//! kind matrix 2
//! a 1 = matrix[[1,0 0,0],[0,0 2,0]]
//! end
//! ```
//!
//! Coefficient lines read `a <multi-index> = <value>` (or `b …` for the
//! anti-holomorphic part). Scalar values are `re,im`; matrix values are
//! `matrix[[row],[row],…]` with rows listing `re,im` entries separated
//! by whitespace. Blank lines and `#` comments are ignored. Analytic
//! attributes (known sup norms, majorant oracles) are not serialized —
//! only families whose members are plain coefficient data round-trip
//! exactly.

use super::{CoeffKind, CoeffValue, MultiIndex, PluriharmonicPoly};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

fn parse_complex(text: &str, line_no: usize) -> Result<Complex64> {
    let mut parts = text.splitn(2, ',');
    let re = parts.next().unwrap_or("").trim();
    let im = parts.next().unwrap_or("0").trim();
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::Parse(format!("line {line_no}: bad number '{s}'")))
    };
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

fn parse_matrix(text: &str, line_no: usize) -> Result<DMatrix<Complex64>> {
    let inner = text
        .strip_prefix("matrix[[")
        .and_then(|s| s.strip_suffix("]]"))
        .ok_or_else(|| {
            Error::Parse(format!(
                "line {line_no}: matrix values read matrix[[row],[row],...]"
            ))
        })?;
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for row_text in inner.split("],[") {
        let mut row = Vec::new();
        for entry in row_text.split_whitespace() {
            row.push(parse_complex(entry, line_no)?);
        }
        if row.is_empty() {
            return Err(Error::Parse(format!("line {line_no}: empty matrix row")));
        }
        rows.push(row);
    }
    let k = rows.len();
    if rows.iter().any(|r| r.len() != k) {
        return Err(Error::Parse(format!(
            "line {line_no}: matrix must be square with equal-length rows"
        )));
    }
    Ok(DMatrix::from_fn(k, k, |i, j| rows[i][j]))
}

fn fmt_complex(c: Complex64) -> String {
    format!("{},{}", fmt_f64(c.re), fmt_f64(c.im))
}

fn fmt_f64(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

struct Builder {
    label: String,
    dim: Option<usize>,
    kind: Option<CoeffKind>,
    poly: Option<PluriharmonicPoly>,
}

impl Builder {
    fn ready(&mut self, line_no: usize) -> Result<&mut PluriharmonicPoly> {
        if self.poly.is_none() {
            let dim = self.dim.ok_or_else(|| {
                Error::Parse(format!(
                    "line {line_no}: 'dim' must precede coefficient lines"
                ))
            })?;
            let kind = self.kind.ok_or_else(|| {
                Error::Parse(format!(
                    "line {line_no}: 'kind' must precede coefficient lines"
                ))
            })?;
            self.poly = Some(PluriharmonicPoly::new(dim, kind)?);
        }
        Ok(self.poly.as_mut().unwrap())
    }

    fn finish(mut self, line_no: usize) -> Result<PluriharmonicPoly> {
        let label = self.label.clone();
        let poly = self.ready(line_no)?;
        Ok(std::mem::replace(
            poly,
            PluriharmonicPoly::new(1, CoeffKind::Scalar)?,
        )
        .with_label(label))
    }
}

/// Parses a family file; returns the polynomials in file order with
/// their `poly <id>` labels attached.
pub fn parse_polys(text: &str) -> Result<Vec<PluriharmonicPoly>> {
    let mut out = Vec::new();
    let mut current: Option<Builder> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = match line.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (line, ""),
        };
        match head {
            "poly" => {
                if current.is_some() {
                    return Err(Error::Parse(format!(
                        "line {line_no}: previous block not closed with 'end'"
                    )));
                }
                if rest.is_empty() {
                    return Err(Error::Parse(format!("line {line_no}: 'poly' needs an id")));
                }
                current = Some(Builder {
                    label: rest.to_string(),
                    dim: None,
                    kind: None,
                    poly: None,
                });
            }
            "dim" => {
                let b = current.as_mut().ok_or_else(|| {
                    Error::Parse(format!("line {line_no}: 'dim' outside a poly block"))
                })?;
                b.dim = Some(rest.parse::<usize>().map_err(|_| {
                    Error::Parse(format!("line {line_no}: bad dimension '{rest}'"))
                })?);
            }
            "kind" => {
                let b = current.as_mut().ok_or_else(|| {
                    Error::Parse(format!("line {line_no}: 'kind' outside a poly block"))
                })?;
                b.kind = Some(match rest.split_whitespace().collect::<Vec<_>>()[..] {
                    ["scalar"] => CoeffKind::Scalar,
                    ["matrix", k] => CoeffKind::Matrix(k.parse::<usize>().map_err(|_| {
                        Error::Parse(format!("line {line_no}: bad matrix size '{k}'"))
                    })?),
                    _ => {
                        return Err(Error::Parse(format!(
                            "line {line_no}: kind is 'scalar' or 'matrix <k>'"
                        )))
                    }
                });
            }
            "a" | "b" => {
                let b = current.as_mut().ok_or_else(|| {
                    Error::Parse(format!(
                        "line {line_no}: coefficient outside a poly block"
                    ))
                })?;
                let (index_text, value_text) = rest.split_once('=').ok_or_else(|| {
                    Error::Parse(format!(
                        "line {line_no}: coefficient lines read '{head} <index> = <value>'"
                    ))
                })?;
                let alpha: MultiIndex = index_text.trim().parse()?;
                let value_text = value_text.trim();
                let kind = b.kind.ok_or_else(|| {
                    Error::Parse(format!(
                        "line {line_no}: 'kind' must precede coefficient lines"
                    ))
                })?;
                let value = match kind {
                    CoeffKind::Scalar => {
                        CoeffValue::Scalar(parse_complex(value_text, line_no)?)
                    }
                    CoeffKind::Matrix(k) => {
                        let m = parse_matrix(value_text, line_no)?;
                        if m.nrows() != k {
                            return Err(Error::Parse(format!(
                                "line {line_no}: matrix is {}x{} but kind says {k}x{k}",
                                m.nrows(),
                                m.ncols()
                            )));
                        }
                        CoeffValue::matrix(m)?
                    }
                };
                let poly = b.ready(line_no)?;
                if head == "a" {
                    poly.set_a(alpha, value)?;
                } else {
                    poly.set_b(alpha, value)?;
                }
            }
            "end" => {
                let b = current.take().ok_or_else(|| {
                    Error::Parse(format!("line {line_no}: 'end' without a poly block"))
                })?;
                out.push(b.finish(line_no)?);
            }
            other => {
                return Err(Error::Parse(format!(
                    "line {line_no}: unknown directive '{other}'"
                )));
            }
        }
    }
    if current.is_some() {
        return Err(Error::Parse("unterminated poly block at end of file".into()));
    }
    Ok(out)
}

/// Serializes a family in the format accepted by [`parse_polys`].
/// Unlabeled members are written as `f<position>`.
pub fn write_polys(polys: &[PluriharmonicPoly]) -> String {
    let mut out = String::new();
    for (i, f) in polys.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let label = f.label.clone().unwrap_or_else(|| format!("f{i}"));
        out.push_str(&format!("poly {label}\n"));
        out.push_str(&format!("dim {}\n", f.dim()));
        match f.coeff_kind() {
            CoeffKind::Scalar => out.push_str("kind scalar\n"),
            CoeffKind::Matrix(k) => out.push_str(&format!("kind matrix {k}\n")),
        }
        let mut write_coeff = |tag: &str, alpha: &MultiIndex, c: &CoeffValue| {
            let value = match c {
                CoeffValue::Scalar(s) => fmt_complex(*s),
                CoeffValue::Matrix(m) => {
                    let rows: Vec<String> = (0..m.nrows())
                        .map(|i| {
                            (0..m.ncols())
                                .map(|j| fmt_complex(m[(i, j)]))
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .collect();
                    format!("matrix[[{}]]", rows.join("],["))
                }
            };
            out.push_str(&format!("{tag} {alpha} = {value}\n"));
        };
        for (alpha, c) in f.a_coeffs() {
            write_coeff("a", alpha, c);
        }
        for (alpha, c) in f.b_coeffs() {
            write_coeff("b", alpha, c);
        }
        out.push_str("end\n");
    }
    out
}
