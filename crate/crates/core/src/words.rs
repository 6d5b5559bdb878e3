//! Words of slope `α` in the free group on `a`, `b` (`A = a⁻¹`, `B = b⁻¹`).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fraction::Fraction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid letter {0:?}; words use a, A, b, B")]
pub struct WordError(pub char);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `a`
    A,
    /// `A = a⁻¹`
    AInv,
    /// `b`
    B,
    /// `B = b⁻¹`
    BInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Result<Letter, WordError> {
        match c {
            'a' => Ok(Letter::A),
            'A' => Ok(Letter::AInv),
            'b' => Ok(Letter::B),
            'B' => Ok(Letter::BInv),
            other => Err(WordError(other)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Cancels adjacent inverse pairs.
    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Word {
        Word(self.0.iter().map(|&l| f(l)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars().map(Letter::from_char).collect::<Result<Vec<_>, _>>().map(Word)
    }
}

/// `Ω` on `[0, 1] ∪ {1/0}` by Stern-Brocot descent: keeping the words of
/// the current interval ends, each mediant gets the product of the two.
fn omega_unit(alpha: &Fraction) -> Word {
    let (mut lo, mut hi) = ((0i64, 1i64), (1i64, 0i64));
    let (mut wl, mut wh) = (Word(vec![Letter::A]), Word(vec![Letter::BInv]));
    if alpha.is_infinite() {
        return wh;
    }
    if *alpha == Fraction::ZERO {
        return wl;
    }
    let (p, q) = (alpha.num() as i128, alpha.den() as i128);
    loop {
        let m = (lo.0 + hi.0, lo.1 + hi.1);
        let wm = wl.concat(&wh);
        // Compare p/q with m.0/m.1.
        let c = p * m.1 as i128 - q * m.0 as i128;
        if c == 0 {
            return wm;
        }
        if c < 0 {
            hi = m;
            wh = wm;
        } else {
            lo = m;
            wl = wm;
        }
    }
}

/// The word of slope `α`.
///
/// For `α > 1` the letters `a` and `B` of `Ω(1/α)` are exchanged; for
/// `α < 0` every `B` of `Ω(-α)` becomes `b`. Below `-1` both apply, the
/// reciprocal rule first.
pub fn omega(alpha: &Fraction) -> Word {
    if alpha.is_infinite() || (*alpha >= Fraction::ZERO && *alpha <= Fraction::ONE) {
        return omega_unit(alpha);
    }
    if *alpha > Fraction::ONE {
        let recip = Fraction::new(alpha.den(), alpha.num()).expect("nonzero");
        return omega_unit(&recip).map_letters(|l| match l {
            Letter::A => Letter::BInv,
            Letter::BInv => Letter::A,
            other => other,
        });
    }
    let neg = Fraction::new(-alpha.num(), alpha.den()).expect("nonzero");
    omega(&neg).map_letters(|l| if l == Letter::BInv { Letter::B } else { l })
}
