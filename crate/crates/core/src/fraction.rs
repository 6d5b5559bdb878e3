//! Reduced fractions on the extended rationals and Stern-Brocot combinatorics.
//!
//! Every [`Fraction`] is kept in lowest terms with a non-negative
//! denominator. The point at infinity is the single value `1/0`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("0/0 is not a fraction")]
    ZeroOverZero,
    #[error("{0} and {1} do not form a Farey pair")]
    NotFareyPair(Fraction, Fraction),
    #[error("{0} has denominator below 2")]
    DenominatorTooSmall(Fraction),
    #[error("enumeration bounds must be finite")]
    UnboundedRange,
    #[error("cannot parse {0:?} as a fraction")]
    Parse(String),
}

/// A reduced element of `Q ∪ {1/0}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: i64,
    den: i64,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };
    pub const INFINITY: Fraction = Fraction { num: 1, den: 0 };

    /// Lowest-terms representative of `num/den`; `(±1, 0)` and every
    /// `(k, 0)` collapse to `1/0`.
    pub fn new(num: i64, den: i64) -> Result<Self, FareyError> {
        if num == 0 && den == 0 {
            return Err(FareyError::ZeroOverZero);
        }
        if den == 0 {
            return Ok(Self::INFINITY);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Ok(Fraction { num: n, den: d })
    }

    pub fn integer(n: i64) -> Self {
        Fraction { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Whether the value lies in `[0, 1]`.
    pub fn in_unit_interval(&self) -> bool {
        self.den != 0 && self.num >= 0 && self.num <= self.den
    }

    /// `|p s - r q|`, the Farey determinant of the pair.
    pub fn determinant(&self, other: &Fraction) -> i128 {
        (self.num as i128 * other.den as i128 - other.num as i128 * self.den as i128).abs()
    }

    /// `1 - self`, the image under the reflection `γ ↦ 1 - γ`.
    pub fn one_minus(&self) -> Fraction {
        if self.is_infinite() {
            return *self;
        }
        Fraction { num: self.den - self.num, den: self.den }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Free-function form of [`Fraction::new`].
pub fn reduce(num: i64, den: i64) -> Result<Fraction, FareyError> {
    Fraction::new(num, den)
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        // With non-negative denominators cross multiplication orders finite
        // values and puts 1/0 above all of them.
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FareyError::Parse(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| err())?;
                let d: i64 = d.trim().parse().map_err(|_| err())?;
                Fraction::new(n, d)
            }
            None => {
                let n: i64 = t.parse().map_err(|_| err())?;
                Ok(Fraction::integer(n))
            }
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Two fractions with `|ps - rq| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FareyPair {
    left: Fraction,
    right: Fraction,
}

impl FareyPair {
    pub fn new(left: Fraction, right: Fraction) -> Result<Self, FareyError> {
        if is_farey_pair(&left, &right) {
            Ok(FareyPair { left, right })
        } else {
            Err(FareyError::NotFareyPair(left, right))
        }
    }

    pub fn left(&self) -> Fraction {
        self.left
    }

    pub fn right(&self) -> Fraction {
        self.right
    }

    pub fn mediant(&self) -> Fraction {
        mediant_unchecked(&self.left, &self.right)
    }
}

pub fn is_farey_pair(a: &Fraction, b: &Fraction) -> bool {
    a.determinant(b) == 1
}

fn mediant_unchecked(a: &Fraction, b: &Fraction) -> Fraction {
    // A Farey pair's mediant is already reduced.
    Fraction { num: a.num + b.num, den: a.den + b.den }
}

/// The Farey sum `(p+r)/(q+s)`, refused for non-pairs.
pub fn farey_sum(a: &Fraction, b: &Fraction) -> Result<Fraction, FareyError> {
    Ok(FareyPair::new(*a, *b)?.mediant())
}

/// Left and right corners of the triangle centered at `alpha`: the unique
/// Farey neighbours `a/b < alpha < c/d` with `b + d = den(alpha)`.
pub fn parents(alpha: &Fraction) -> Result<(Fraction, Fraction), FareyError> {
    let (p, q) = (alpha.num, alpha.den);
    if q < 2 {
        return Err(FareyError::DenominatorTooSmall(*alpha));
    }
    // p*b - a*q = 1 with 0 < b < q.
    let inv = p.rem_euclid(q).extended_gcd(&q).x;
    let b = inv.rem_euclid(q);
    let a = (p as i128 * b as i128 - 1) / q as i128;
    let a = a as i64;
    let left = Fraction { num: a, den: b };
    let right = Fraction { num: p - a, den: q - b };
    Ok((left, right))
}

/// `alpha = gamma ⊕ gamma ⊕ beta` with every denominator involved smaller
/// than `den(alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub gamma: Fraction,
    pub beta: Fraction,
}

impl Decomposition {
    /// `gamma ⊕ beta`, the third value the recursion consumes.
    pub fn middle(&self) -> Fraction {
        mediant_unchecked(&self.gamma, &self.beta)
    }

    pub fn target(&self) -> Fraction {
        mediant_unchecked(&self.gamma, &self.middle())
    }
}

pub fn decompose(alpha: &Fraction) -> Result<Decomposition, FareyError> {
    let q = alpha.den;
    if q < 2 {
        return Err(FareyError::DenominatorTooSmall(*alpha));
    }
    if q == 2 {
        return Ok(Decomposition {
            gamma: Fraction::integer((alpha.num - 1) / 2),
            beta: Fraction::INFINITY,
        });
    }
    let (l, r) = parents(alpha)?;
    let (u, v) = if l.den < r.den { (l, r) } else { (r, l) };
    let beta = Fraction { num: v.num - u.num, den: v.den - u.den };
    Ok(Decomposition { gamma: u, beta })
}

/// Which side of a triangle a vertex sequence runs down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
}

/// Corner of the triangle centered at `alpha` on the given side, as a raw
/// `(num, den)` representative so that the mediant formula also covers the
/// exceptional triangles at integers and at `1/0`.
fn corner_representative(alpha: &Fraction, side: Side) -> (i64, i64) {
    let s = match side {
        Side::Positive => 1,
        Side::Negative => -1,
    };
    if alpha.is_infinite() {
        (0, s)
    } else if alpha.is_integer() {
        (s, 0)
    } else {
        let (l, r) = parents(alpha).expect("denominator at least 2");
        match side {
            Side::Positive => (r.num, r.den),
            Side::Negative => (l.num, l.den),
        }
    }
}

/// First `n` terms of the positive or negative vertex sequence of `alpha`.
pub fn boundary_sequence(alpha: &Fraction, side: Side, n: usize) -> Vec<Fraction> {
    let (kp, kq) = corner_representative(alpha, side);
    (0..n as i64)
        .map(|j| {
            Fraction::new(j * alpha.num + kp, j * alpha.den + kq)
                .expect("vertex sequence terms are never 0/0")
        })
        .collect()
}

/// The term of the bi-infinite boundary sequence immediately before the
/// first term of the positive vertex sequence.
pub fn boundary_predecessor(alpha: &Fraction) -> Fraction {
    let neg = boundary_sequence(alpha, Side::Negative, 2);
    let pos0 = boundary_sequence(alpha, Side::Positive, 1)[0];
    if neg[0] == pos0 {
        neg[1]
    } else {
        neg[0]
    }
}

/// All reduced fractions in `[lo, hi]` with denominator below `max_den`,
/// in ascending order.
pub fn enumerate(max_den: i64, lo: Fraction, hi: Fraction) -> Result<Vec<Fraction>, FareyError> {
    if lo.is_infinite() || hi.is_infinite() {
        return Err(FareyError::UnboundedRange);
    }
    let mut out = Vec::new();
    for q in 1..max_den.max(1) {
        // ceil(lo*q) ..= floor(hi*q)
        let first = Integer::div_ceil(&(lo.num as i128 * q as i128), &(lo.den as i128)) as i64;
        let last = Integer::div_floor(&(hi.num as i128 * q as i128), &(hi.den as i128)) as i64;
        for p in first..=last {
            if p.gcd(&q) == 1 {
                out.push(Fraction { num: p, den: q });
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(4, 6).unwrap(), f("2/3"));
        assert_eq!(reduce(-1, 0).unwrap(), Fraction::INFINITY);
        assert_eq!(reduce(0, -1).unwrap(), Fraction::ZERO);
        assert_eq!(reduce(3, -6).unwrap(), f("-1/2"));
        assert_eq!(reduce(0, 0), Err(FareyError::ZeroOverZero));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(f(" -3/6 ").to_string(), "-1/2");
        assert_eq!(f("5").to_string(), "5/1");
        assert_eq!(f("1/0").to_string(), "1/0");
        assert!("1/x".parse::<Fraction>().is_err());
        assert!("0/0".parse::<Fraction>().is_err());
    }

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(f("0/1") < Fraction::INFINITY);
        assert!(f("-7/2") < f("1/3"));
        assert!(f("1/3") < f("1/2"));
        assert!(f("1000") < Fraction::INFINITY);
    }

    #[test]
    fn farey_sum_examples() {
        assert_eq!(farey_sum(&f("1/3"), &f("1/4")).unwrap(), f("2/7"));
        assert_eq!(farey_sum(&f("0"), &Fraction::INFINITY).unwrap(), f("1"));
        assert_eq!(farey_sum(&f("2/5"), &f("3/7")).unwrap(), f("5/12"));
        assert!(matches!(
            farey_sum(&f("1/3"), &f("1/5")),
            Err(FareyError::NotFareyPair(..))
        ));
    }

    #[test]
    fn farey_pair_examples() {
        assert!(is_farey_pair(&f("1/3"), &f("1/4")));
        assert!(!is_farey_pair(&f("1/3"), &f("1/5")));
        assert!(is_farey_pair(&f("0/1"), &Fraction::INFINITY));
    }

    /// Brute force over all Farey neighbours with smaller denominators.
    fn parents_oracle(alpha: Fraction) -> (Fraction, Fraction) {
        let q = alpha.den();
        let mut left = None;
        let mut right = None;
        for b in 1..q {
            let centre = alpha.num() * b / q;
            for a in (centre - 2)..=(centre + 2) {
                let c = Fraction::new(a, b).unwrap();
                if c.den() != b || !is_farey_pair(&c, &alpha) {
                    continue;
                }
                if c < alpha {
                    left = Some(c);
                } else {
                    right = Some(c);
                }
            }
        }
        let (l, r) = (left.unwrap(), right.unwrap());
        assert_eq!(l.den() + r.den(), q);
        (l, r)
    }

    #[test]
    fn parents_examples() {
        assert_eq!(parents(&f("2/7")).unwrap(), (f("1/4"), f("1/3")));
        assert_eq!(parents(&f("1/2")).unwrap(), (f("0"), f("1")));
        assert_eq!(parents(&f("5/12")).unwrap(), (f("2/5"), f("3/7")));
        assert_eq!(parents_oracle(f("5/12")), (f("2/5"), f("3/7")));
        assert_eq!(parents_oracle(f("2/7")), (f("1/4"), f("1/3")));
        assert!(matches!(parents(&f("3")), Err(FareyError::DenominatorTooSmall(_))));
        assert!(parents(&Fraction::INFINITY).is_err());
    }

    #[test]
    fn parents_match_brute_force_including_negatives() {
        for q in 2..25 {
            for p in -2 * q..=2 * q {
                let alpha = Fraction::new(p, q).unwrap();
                if alpha.den() != q {
                    continue;
                }
                assert_eq!(parents(&alpha).unwrap(), parents_oracle(alpha), "{alpha}");
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&f("2/7")).unwrap();
        assert_eq!((d.gamma, d.beta), (f("1/3"), f("0")));
        let d = decompose(&f("1/2")).unwrap();
        assert_eq!((d.gamma, d.beta), (f("0"), Fraction::INFINITY));
        let d = decompose(&f("5/12")).unwrap();
        assert_eq!((d.gamma, d.beta), (f("2/5"), f("1/2")));
        let d = decompose(&f("-1/2")).unwrap();
        assert_eq!((d.gamma, d.beta), (f("-1"), Fraction::INFINITY));
        assert!(decompose(&f("4")).is_err());
    }

    #[test]
    fn decompose_reconstructs_exhaustively() {
        for q in 2..=500 {
            for p in 0..=q {
                let alpha = Fraction::new(p, q).unwrap();
                if alpha.den() != q {
                    continue;
                }
                let d = decompose(&alpha).unwrap();
                assert!(is_farey_pair(&d.gamma, &d.beta), "{alpha}");
                let mid = farey_sum(&d.gamma, &d.beta).unwrap();
                assert_eq!(farey_sum(&d.gamma, &mid).unwrap(), alpha);
                assert!(d.gamma.den() < q && d.beta.den() < q && mid.den() < q);
            }
        }
    }

    #[test]
    fn boundary_sequence_examples() {
        let inf = Fraction::INFINITY;
        assert_eq!(
            boundary_sequence(&inf, Side::Positive, 4),
            vec![f("0"), f("1"), f("2"), f("3")]
        );
        assert_eq!(
            boundary_sequence(&inf, Side::Negative, 3),
            vec![f("0"), f("-1"), f("-2")]
        );
        assert_eq!(
            boundary_sequence(&f("0"), Side::Positive, 4),
            vec![inf, f("1"), f("1/2"), f("1/3")]
        );
        assert_eq!(
            boundary_sequence(&f("3"), Side::Negative, 4),
            vec![inf, f("2"), f("5/2"), f("8/3")]
        );
        assert_eq!(
            boundary_sequence(&f("2/7"), Side::Positive, 3),
            vec![f("1/3"), f("3/10"), f("5/17")]
        );
        assert_eq!(boundary_predecessor(&inf), f("-1"));
        assert_eq!(boundary_predecessor(&f("4")), f("3"));
        assert_eq!(boundary_predecessor(&f("2/7")), f("1/4"));
    }

    #[test]
    fn boundary_terms_are_farey_neighbours() {
        for alpha in [f("2/7"), f("-5/3"), f("0"), f("4"), Fraction::INFINITY, f("13/31")] {
            for side in [Side::Positive, Side::Negative] {
                let seq = boundary_sequence(&alpha, side, 8);
                for w in seq.windows(2) {
                    assert!(is_farey_pair(&w[0], &w[1]));
                }
                for t in &seq {
                    assert!(is_farey_pair(t, &alpha), "{t} vs {alpha}");
                }
            }
        }
    }

    #[test]
    fn enumerate_small() {
        let v = enumerate(6, f("0"), f("1/2")).unwrap();
        assert_eq!(v, vec![f("0"), f("1/5"), f("1/4"), f("1/3"), f("2/5"), f("1/2")]);
        assert!(enumerate(10, f("0"), Fraction::INFINITY).is_err());
    }

    #[test]
    fn enumerate_matches_brute_force_counts() {
        for d in [1, 2, 7, 19, 40] {
            let brute = (1..d)
                .flat_map(|q| (0..=q).map(move |p| (p, q)))
                .filter(|&(p, q): &(i64, i64)| p.gcd(&q) == 1 && 2 * p <= q)
                .count();
            assert_eq!(enumerate(d, f("0"), f("1/2")).unwrap().len(), brute);
        }
        let v = enumerate(30, f("-3/2"), f("7/5")).unwrap();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v.first(), Some(&f("-3/2")));
        assert_eq!(v.last(), Some(&f("7/5")));
    }
}
