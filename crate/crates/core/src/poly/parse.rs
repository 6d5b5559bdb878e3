//! Reader for the ASCII polynomial form.
//!
//! Accepts the canonical printed form (`X^2*Z - 3*X*Z + 2*Z - 1`) and the
//! looser notation of hand-written tables: juxtaposition for products,
//! parenthesised factors, `^{n}` exponents and run-together variable names
//! such as `XZ` when every letter is a variable.

use super::{Coefficient, Poly, PolyError, VarSet};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '{' => out.push((start, Tok::LBrace)),
            '}' => out.push((start, Tok::RBrace)),
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(s[start..i].to_string())));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            other => {
                return Err(PolyError::Parse { pos: start, msg: format!("unexpected {other:?}") })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a VarSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok) -> Result<(), PolyError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {t:?}"))
        }
    }

    fn expr<R: Coefficient>(&mut self) -> Result<Poly<R>, PolyError> {
        let mut acc = Poly::zero(self.vars.clone());
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            acc = if negate { acc.checked_sub(&t)? } else { acc.checked_add(&t)? };
            first = false;
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn term<R: Coefficient>(&mut self) -> Result<Poly<R>, PolyError> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else if !self.starts_factor() {
                break;
            }
            let f = self.factor()?;
            acc = acc.checked_mul(&f)?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        let braced = self.peek() == Some(&Tok::LBrace);
        if braced {
            self.pos += 1;
        }
        let e = match self.peek() {
            Some(Tok::Num(n)) => match n.parse::<u32>() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            },
            _ => return self.err("expected exponent"),
        };
        self.pos += 1;
        if braced {
            self.expect(Tok::RBrace)?;
        }
        Ok(e)
    }

    fn factor<R: Coefficient>(&mut self) -> Result<Poly<R>, PolyError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.exponent()?;
        pow(&base, e)
    }

    fn primary<R: Coefficient>(&mut self) -> Result<Poly<R>, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                match n.parse::<R>() {
                    Ok(c) => Ok(Poly::constant(self.vars.clone(), c)),
                    Err(_) => self.err(format!("coefficient {n} out of range")),
                }
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                self.identifier(&name, at)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }

    /// A known variable, or a run of single-letter variables such as `XZ`.
    /// Only the last letter of a run binds to a following `^`.
    fn identifier<R: Coefficient>(&mut self, name: &str, at: usize) -> Result<Poly<R>, PolyError> {
        if self.vars.index_of(name).is_some() {
            return Poly::var(self.vars.clone(), name);
        }
        let letters: Vec<String> = name.chars().map(|c| c.to_string()).collect();
        if letters.len() > 1 && letters.iter().all(|l| self.vars.index_of(l).is_some()) {
            let (last, init) = letters.split_last().expect("run has letters");
            let mut acc = Poly::one(self.vars.clone());
            for l in init {
                acc = acc.checked_mul(&Poly::var(self.vars.clone(), l)?)?;
            }
            let mut tail = Poly::var(self.vars.clone(), last)?;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                tail = pow(&tail, self.exponent()?)?;
            }
            return acc.checked_mul(&tail);
        }
        Err(PolyError::Parse { pos: at, msg: format!("unknown variable {name:?}") })
    }
}

pub(super) fn pow<R: Coefficient>(base: &Poly<R>, mut e: u32) -> Result<Poly<R>, PolyError> {
    let mut result = Poly::one(base.vars().clone());
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = result.checked_mul(&sq)?;
        }
        e >>= 1;
        if e > 0 {
            sq = sq.checked_mul(&sq)?;
        }
    }
    Ok(result)
}

pub(super) fn parse<R: Coefficient>(s: &str, vars: &VarSet) -> Result<Poly<R>, PolyError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(PolyError::Parse { pos: 0, msg: "empty input".to_string() });
    }
    let mut p = Parser { toks, pos: 0, end: s.len(), vars };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

impl<R: Coefficient> Poly<R> {
    pub fn pow(&self, e: u32) -> Result<Self, PolyError> {
        pow(self, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(s: &str) -> Poly<BigInt> {
        Poly::parse(s, &VarSet::big_xz()).unwrap()
    }

    #[test]
    fn factored_and_juxtaposed_forms() {
        assert_eq!(p("(X - 1)(X - 3)"), p("X^2 - 4*X + 3"));
        assert_eq!(p("-(X^2 - 2 X + 2) X"), p("-X^3 + 2*X^2 - 2*X"));
        assert_eq!(p("X^3Z - 4X^2Z + 5XZ"), p("X^3*Z - 4*X^2*Z + 5*X*Z"));
        assert_eq!(p("X^{2} Z - 3  X Z"), p("X^2*Z - 3*X*Z"));
        assert_eq!(p("XZ^2"), p("X*Z^2"));
        assert_eq!(p("(X+1)^3"), p("X^3 + 3X^2 + 3X + 1"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let v = VarSet::big_xz();
        match Poly::<BigInt>::parse("X + Y", &v) {
            Err(PolyError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(Poly::<BigInt>::parse("(X + 1", &v).is_err());
        assert!(Poly::<BigInt>::parse("X ^", &v).is_err());
        assert!(Poly::<BigInt>::parse("", &v).is_err());
        assert!(Poly::<BigInt>::parse("X $ Z", &v).is_err());
    }

    #[test]
    fn huge_coefficients() {
        let q = p("123456789012345678901234567890 X");
        assert_eq!(q.to_string(), "123456789012345678901234567890*X");
        assert!(Poly::<i64>::parse("123456789012345678901234567890", &VarSet::big_x()).is_err());
    }
}
