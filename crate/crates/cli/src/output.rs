//! Row formats for `frf table`.

use std::io::{self, Write};

use clap::ValueEnum;
use frf_core::frf::snapshot::Record;
use frf_core::{Fraction, IntPoly, Kind};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON record per line.
    Json,
    /// Columns frac, kind, degree, poly.
    Csv,
    /// An `align*` block.
    Latex,
    /// Aligned plain text.
    Text,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    frac: String,
    kind: &'a str,
    degree: Option<u32>,
    poly: String,
}

/// `X^12*Z` as `X^{12} Z`.
pub fn latex_poly(p: &IntPoly) -> String {
    let mut out = String::new();
    let text = p.to_string();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '*' => out.push(' '),
            '^' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                if digits.len() > 1 {
                    out.push_str(&format!("^{{{digits}}}"));
                } else {
                    out.push('^');
                    out.push_str(&digits);
                }
            }
            _ => out.push(c),
        }
    }
    out
}

enum Sink<W: Write> {
    Plain(W),
    Csv(csv::Writer<W>),
}

/// Streams rows in one format; `finish` closes any enclosing block.
pub struct RowWriter<W: Write> {
    format: Format,
    kind: Kind,
    sink: Sink<W>,
}

impl<W: Write> RowWriter<W> {
    pub fn new(format: Format, kind: Kind, mut out: W) -> io::Result<Self> {
        let sink = match format {
            Format::Csv => Sink::Csv(csv::Writer::from_writer(out)),
            Format::Latex => {
                writeln!(out, "\\begin{{align*}}")?;
                Sink::Plain(out)
            }
            Format::Json | Format::Text => Sink::Plain(out),
        };
        Ok(RowWriter { format, kind, sink })
    }

    pub fn row(&mut self, frac: Fraction, poly: &IntPoly) -> io::Result<()> {
        match &mut self.sink {
            Sink::Csv(w) => {
                let row = CsvRow {
                    frac: frac.to_string(),
                    kind: self.kind.as_str(),
                    degree: poly.total_degree().ok(),
                    poly: poly.to_string(),
                };
                w.serialize(row).map_err(io::Error::other)
            }
            Sink::Plain(out) => match self.format {
                Format::Json => {
                    serde_json::to_writer(&mut *out, &Record::new(frac, self.kind, poly))?;
                    writeln!(out)
                }
                Format::Latex => writeln!(out, "{frac} && {} \\\\", latex_poly(poly)),
                _ => writeln!(out, "{:>8}  {poly}", frac.to_string()),
            },
        }
    }

    pub fn finish(self) -> io::Result<()> {
        match self.sink {
            Sink::Csv(mut w) => w.flush(),
            Sink::Plain(mut out) => {
                if self.format == Format::Latex {
                    writeln!(out, "\\end{{align*}}")?;
                }
                out.flush()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use frf_core::VarSet;

    #[test]
    fn latex_braces_long_exponents() {
        let p = IntPoly::parse("X^12*Z - 3*X^2 + 1", &VarSet::big_xz()).unwrap();
        assert_eq!(latex_poly(&p), "X^{12} Z - 3 X^2 + 1");
    }

    #[test]
    fn csv_has_a_header_and_degree() {
        let p = IntPoly::parse("X*Z - Z - 1", &VarSet::big_xz()).unwrap();
        let mut buf = Vec::new();
        let mut w = RowWriter::new(Format::Csv, Kind::T0, &mut buf).unwrap();
        w.row("2/5".parse().unwrap(), &p).unwrap();
        w.finish().unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "frac,kind,degree,poly\n2/5,T0,2,X*Z - Z - 1\n");
    }
}
