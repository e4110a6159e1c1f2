//! Parsing for constants overrides and sweep ranges.

use std::fs;
use std::path::Path;

use bohr_core::bounds::BoundConstants;

/// Builds the constants table from an optional config file plus inline
/// `KEY=VALUE` overrides; inline wins over the file.
///
/// File format: one `key = value` per line, `#` starts a comment,
/// blank lines are ignored.
pub fn build_constants(inline: &[String], file: Option<&Path>) -> Result<BoundConstants, String> {
    let mut constants = BoundConstants::default();
    if let Some(path) = file {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read constants file {}: {e}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                format!(
                    "{}:{}: expected 'key = value', got '{line}'",
                    path.display(),
                    lineno + 1
                )
            })?;
            apply(&mut constants, key.trim(), value.trim())
                .map_err(|e| format!("{}:{}: {e}", path.display(), lineno + 1))?;
        }
    }
    for item in inline {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("--const expects KEY=VALUE, got '{item}'"))?;
        apply(&mut constants, key.trim(), value.trim())?;
    }
    Ok(constants)
}

fn apply(constants: &mut BoundConstants, key: &str, value: &str) -> Result<(), String> {
    let parsed: f64 = value
        .parse()
        .map_err(|_| format!("bad number '{value}' for constant {key}"))?;
    constants.set(key, parsed).map_err(|e| e.to_string())
}

/// Parses a dimension range: `A..B` walks in steps of 1, `A..B:+S`
/// in steps of `S`, and `A..B:xF` multiplies by `F` each step. The
/// range is inclusive on both ends and must be nonempty.
pub fn parse_range(text: &str) -> Result<Vec<usize>, String> {
    let err = || format!("malformed range '{text}' (expected forms: 2..64, 2..64:+3, 2..64:x2)");
    let (span, step) = match text.split_once(':') {
        Some((span, step)) => (span, Some(step)),
        None => (text, None),
    };
    let (a, b) = span.split_once("..").ok_or_else(err)?;
    let start: usize = a.trim().parse().map_err(|_| err())?;
    let end: usize = b.trim().parse().map_err(|_| err())?;
    if start == 0 || start > end {
        return Err(format!("empty or zero-based range '{text}'"));
    }
    let mut out = Vec::new();
    match step {
        None => out.extend(start..=end),
        Some(s) => {
            let body = s.trim();
            if let Some(f) = body.strip_prefix('x') {
                let factor: usize = f.parse().map_err(|_| err())?;
                if factor < 2 {
                    return Err(format!("multiplicative step must be >= 2 in '{text}'"));
                }
                let mut n = start;
                while n <= end {
                    out.push(n);
                    n *= factor;
                }
            } else if let Some(d) = body.strip_prefix('+') {
                let delta: usize = d.parse().map_err(|_| err())?;
                if delta == 0 {
                    return Err(format!("additive step must be >= 1 in '{text}'"));
                }
                let mut n = start;
                while n <= end {
                    out.push(n);
                    n += delta;
                }
            } else {
                return Err(err());
            }
        }
    }
    if out.is_empty() {
        return Err(format!("empty range '{text}'"));
    }
    Ok(out)
}
