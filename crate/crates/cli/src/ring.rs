//! Ring-description files: `field QQ; vars x:1 y:1 z:1; rel x^3+y^3+z^3;`.
//!
//! Statements end with `;`. `field` takes `QQ`, `ZZ` or `Fp p`; `vars` lists
//! `name:weight` pairs; each `rel` holds one homogeneous relation. `#` starts a
//! comment that runs to the end of the line.

use std::fmt;

use dopcalc::exactalg::{is_prime, parse_poly, Poly, Rationals};
use dopcalc::AlgError;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    /// Integral coefficients, only for reduction mod `p`.
    Integers,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct RingParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RingDescription {
    pub field: FieldSpec,
    pub names: Vec<String>,
    pub weights: Vec<i32>,
    /// Relations over `Q`, normalized by the parser.
    pub relations: Vec<Poly<Rationals>>,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "Fp {p}"),
            FieldSpec::Integers => write!(f, "ZZ"),
        }
    }
}

/// The canonical form, which parses back to the same description.
impl fmt::Display for RingDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field {}; vars", self.field)?;
        for (n, w) in self.names.iter().zip(&self.weights) {
            write!(f, " {n}:{w}")?;
        }
        write!(f, ";")?;
        for r in &self.relations {
            write!(f, " rel {};", r.fmt_with(&self.names))?;
        }
        Ok(())
    }
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn error_at(src: &str, offset: usize, msg: impl Into<String>) -> RingParseError {
    let (line, col) = position(src, offset);
    RingParseError {
        line,
        col,
        msg: msg.into(),
    }
}

/// Replaces comments by spaces so that offsets are preserved.
fn strip_comments(src: &str) -> String {
    let mut out = String::with_capacity(src.len());
    let mut in_comment = false;
    for c in src.chars() {
        match c {
            '#' => in_comment = true,
            '\n' => in_comment = false,
            _ => {}
        }
        if in_comment {
            out.extend(std::iter::repeat_n(' ', c.len_utf8()));
        } else {
            out.push(c);
        }
    }
    out
}

/// Byte offset of the first non-whitespace character of `s[from..]`.
fn skip_ws(s: &str, from: usize) -> usize {
    from + s[from..].len() - s[from..].trim_start().len()
}

pub fn parse_ring(src: &str) -> Result<RingDescription, RingParseError> {
    let text = strip_comments(src);
    let mut field = None;
    let mut vars: Option<(Vec<String>, Vec<i32>)> = None;
    let mut rels: Vec<(usize, &str)> = Vec::new();
    let mut start = 0;
    while start < text.len() {
        let end = text[start..].find(';').map_or(text.len(), |i| start + i);
        let s = skip_ws(&text, start);
        if s < end {
            if end == text.len() {
                return Err(error_at(
                    src,
                    text.trim_end().len(),
                    "missing ';' after statement",
                ));
            }
            let stmt = &text[s..end];
            let kw_len = stmt.find(char::is_whitespace).unwrap_or(stmt.len());
            let body_at = skip_ws(&text, s + kw_len).min(end);
            let body = text[body_at..end].trim_end();
            match &stmt[..kw_len] {
                "field" => {
                    if field.is_some() {
                        return Err(error_at(src, s, "duplicate field statement"));
                    }
                    field = Some(parse_field(src, body_at, body)?);
                }
                "vars" => {
                    if vars.is_some() {
                        return Err(error_at(src, s, "duplicate vars statement"));
                    }
                    vars = Some(parse_vars(src, &text, body_at, end)?);
                }
                "rel" => rels.push((body_at, body)),
                kw => return Err(error_at(src, s, format!("unknown statement '{kw}'"))),
            }
        }
        start = end + 1;
    }
    let field = field.ok_or_else(|| error_at(src, 0, "missing field statement"))?;
    let (names, weights) = vars.ok_or_else(|| error_at(src, 0, "missing vars statement"))?;
    let mut relations = Vec::new();
    for (at, body) in rels {
        let raw = parse_poly(body, &names).map_err(|e| match e {
            AlgError::Parse { col, msg, .. } => error_at(src, at + col - 1, msg),
            e => error_at(src, at, e.to_string()),
        })?;
        if let Err(e) = raw.check_homogeneous(&weights, &names) {
            return Err(error_at(src, at, e.to_string()));
        }
        if field == FieldSpec::Integers && !raw.is_integral() {
            return Err(error_at(src, at, "ZZ relations need integer coefficients"));
        }
        let p = raw
            .to_poly(&Rationals, &weights)
            .map_err(|e| error_at(src, at, e.to_string()))?;
        if p.is_zero() {
            return Err(error_at(src, at, "zero relation"));
        }
        relations.push(p);
    }
    Ok(RingDescription {
        field,
        names,
        weights,
        relations,
    })
}

fn parse_field(src: &str, at: usize, body: &str) -> Result<FieldSpec, RingParseError> {
    let words: Vec<&str> = body.split_whitespace().collect();
    match words.as_slice() {
        ["QQ"] => Ok(FieldSpec::Rationals),
        ["ZZ"] => Ok(FieldSpec::Integers),
        ["Fp", p] => match p.parse::<u64>() {
            Ok(p) if is_prime(p) && p < 1 << 31 => Ok(FieldSpec::Prime(p)),
            _ => Err(error_at(
                src,
                at,
                format!("'{p}' is not a prime below 2^31"),
            )),
        },
        _ => Err(error_at(
            src,
            at,
            format!("expected QQ, ZZ or Fp p, found '{body}'"),
        )),
    }
}

fn parse_vars(
    src: &str,
    text: &str,
    from: usize,
    end: usize,
) -> Result<(Vec<String>, Vec<i32>), RingParseError> {
    let mut names = Vec::new();
    let mut weights = Vec::new();
    let mut pos = from;
    while pos < end {
        let s = skip_ws(text, pos).min(end);
        if s == end {
            break;
        }
        let len = text[s..end].find(char::is_whitespace).unwrap_or(end - s);
        let tok = &text[s..s + len];
        let (name, w) = tok.split_once(':').unwrap_or((tok, "1"));
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(error_at(src, s, format!("invalid variable name '{name}'")));
        }
        if names.iter().any(|n| n == name) {
            return Err(error_at(src, s, format!("duplicate variable '{name}'")));
        }
        let w: i32 = w
            .parse()
            .map_err(|_| error_at(src, s + name.len() + 1, format!("invalid weight '{w}'")))?;
        if w <= 0 {
            return Err(error_at(
                src,
                s + name.len() + 1,
                format!("nonpositive weight {w}"),
            ));
        }
        names.push(name.to_string());
        weights.push(w);
        pos = s + len;
    }
    if names.is_empty() {
        return Err(error_at(src, from, "no variables"));
    }
    Ok((names, weights))
}
