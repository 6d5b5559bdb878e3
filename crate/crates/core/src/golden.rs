//! Published tables of `T₀` and Riley polynomials, kept as the raw LaTeX
//! rows and expanded with the polynomial parser.

use thiserror::Error;

use crate::fraction::Fraction;
use crate::poly::{Coefficient, Poly, PolyError, VarSet};

/// `T₀(α)` for `α ∈ [0, 1/2]` with denominator at most 18.
pub const T0_TABLE: &str = include_str!("../data/t0_den18.txt");
/// `Λ_α` for `α ∈ [0, 1/2]` with denominator at most 20.
pub const RILEY_TABLE: &str = include_str!("../data/riley_den20.txt");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GoldenError {
    #[error("row {row}: no `&&` separator")]
    Layout { row: usize },
    #[error("row {row}: bad fraction {text:?}")]
    Fraction { row: usize, text: String },
    #[error("row {row}: {source}")]
    Poly { row: usize, source: PolyError },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRow<R: Coefficient> {
    pub frac: Fraction,
    /// The row as typeset, with markup removed.
    pub source: String,
    pub poly: Poly<R>,
}

/// Strips typesetting commands, leaving a string the parser accepts.
pub fn strip_markup(s: &str) -> String {
    let mut out = s.trim().trim_end_matches("\\\\").to_string();
    for (from, to) in [("\\scriptstyle", ""), ("{\\left(", "("), ("\\right)}", ")"), ("\\left(", "("), ("\\right)", ")")] {
        out = out.replace(from, to);
    }
    out.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Parses rows of the form `p/q && <polynomial> \\`.
pub fn parse_table<R: Coefficient>(text: &str, vars: &VarSet) -> Result<Vec<GoldenRow<R>>, GoldenError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        let row = i + 1;
        let (frac, body) = line.split_once("&&").ok_or(GoldenError::Layout { row })?;
        let frac = frac
            .trim()
            .parse()
            .map_err(|_| GoldenError::Fraction { row, text: frac.trim().to_string() })?;
        let source = strip_markup(body);
        let poly = Poly::parse(&source, vars).map_err(|source| GoldenError::Poly { row, source })?;
        rows.push(GoldenRow { frac, source, poly });
    }
    Ok(rows)
}

pub fn t0_table<R: Coefficient>() -> Result<Vec<GoldenRow<R>>, GoldenError> {
    parse_table(T0_TABLE, &VarSet::big_xz())
}

pub fn riley_table<R: Coefficient>() -> Result<Vec<GoldenRow<R>>, GoldenError> {
    parse_table(RILEY_TABLE, &VarSet::big_x())
}
