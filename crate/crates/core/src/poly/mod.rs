//! Sparse multivariate polynomials over an integer coefficient ring.
//!
//! Terms are stored in a vector sorted by graded-lexicographic order,
//! highest first, with no zero coefficients. Exponent vectors of up to three
//! variables are packed into a single `u64` whose integer order *is* the
//! graded-lex order, so monomial multiplication is one addition.

mod divide;
mod eval;
mod parse;
mod univariate;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{FromPrimitive, NumAssign, NumAssignRef, RefNum, Signed, ToPrimitive};
use thiserror::Error;

pub use univariate::SquarefreeFactor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable sets differ: {0} vs {1}")]
    VarsetMismatch(VarSet, VarSet),
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("expected a polynomial in one variable, found variables {0}")]
    NotUnivariate(VarSet),
    #[error("no assignment for variable {0}")]
    MissingAssignment(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("invalid variable set: {0}")]
    InvalidVarset(String),
    #[error("exponent overflow (limit {})", Monomial::MAX_DEGREE)]
    ExponentOverflow,
    #[error("modulus {0} is not representable in the coefficient type")]
    Modulus(u64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Integer-like coefficient ring: `i64`, `i128` or `BigInt`.
///
/// Division is Euclidean; exact-division and gcd routines rely on it.
pub trait Coefficient:
    Clone
    + fmt::Debug
    + fmt::Display
    + Eq
    + Ord
    + Hash
    + Signed
    + Integer
    + NumAssign
    + ToPrimitive
    + FromPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }
}

impl<T> Coefficient for T
where
    T: Clone
        + fmt::Debug
        + fmt::Display
        + Eq
        + Ord
        + Hash
        + Signed
        + Integer
        + NumAssignRef
        + ToPrimitive
        + FromPrimitive
        + FromStr
        + Send
        + Sync
        + 'static,
    for<'r> &'r T: RefNum<T>,
{
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
}

/// Ordered list of variable names, at most three.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub const MAX_VARS: usize = 3;

    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        if names.len() > Self::MAX_VARS {
            return Err(PolyError::InvalidVarset(format!(
                "at most {} variables supported",
                Self::MAX_VARS
            )));
        }
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(PolyError::InvalidVarset(format!("bad name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(PolyError::InvalidVarset(format!("duplicate name {n:?}")));
            }
        }
        Ok(VarSet(names.into()))
    }

    fn known(names: &[&str]) -> Self {
        Self::new(names).expect("static variable set")
    }

    /// `[x, z]`, the ring of the trace polynomials.
    pub fn xz() -> Self {
        Self::known(&["x", "z"])
    }

    /// `[X, Z]` with `X = x^2`, `Z = z^2`.
    pub fn big_xz() -> Self {
        Self::known(&["X", "Z"])
    }

    pub fn xyz() -> Self {
        Self::known(&["x", "y", "z"])
    }

    pub fn uv() -> Self {
        Self::known(&["u", "v"])
    }

    pub fn big_x() -> Self {
        Self::known(&["X"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(","))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Packed exponent vector: bits 48..64 hold the total degree, then one
/// 16-bit field per variable with the first variable most significant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(u64);

impl Monomial {
    pub const MAX_DEGREE: u32 = 0xFFFF;
    pub const ONE: Monomial = Monomial(0);

    fn shift(var: usize) -> u32 {
        32 - 16 * var as u32
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self, PolyError> {
        let total: u64 = exps.iter().map(|&e| e as u64).sum();
        if total > Self::MAX_DEGREE as u64 || exps.len() > VarSet::MAX_VARS {
            return Err(PolyError::ExponentOverflow);
        }
        let mut packed = total << 48;
        for (i, &e) in exps.iter().enumerate() {
            packed |= (e as u64) << Self::shift(i);
        }
        Ok(Monomial(packed))
    }

    pub fn exponent(&self, var: usize) -> u32 {
        ((self.0 >> Self::shift(var)) & 0xFFFF) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        (self.0 >> 48) as u32
    }

    /// Product; the caller guarantees the total degree stays in range.
    fn mul(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..VarSet::MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    fn div(self, other: Monomial) -> Monomial {
        Monomial(self.0 - other.0)
    }
}

/// Sparse polynomial with coefficients in `R` over a fixed [`VarSet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R: Coefficient> {
    vars: VarSet,
    terms: Vec<(Monomial, R)>,
}

impl<R: Coefficient> Poly<R> {
    pub fn zero(vars: VarSet) -> Self {
        Poly { vars, terms: Vec::new() }
    }

    pub fn constant(vars: VarSet, c: R) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Monomial::ONE, c)] };
        Poly { vars, terms }
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, R::one())
    }

    pub fn var(vars: VarSet, name: &str) -> Result<Self, PolyError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(Poly { terms: vec![(Monomial::from_exponents(&e)?, R::one())], vars })
    }

    /// `c * v_0^e_0 * v_1^e_1 * ...`
    pub fn monomial(vars: VarSet, exps: &[u32], c: R) -> Result<Self, PolyError> {
        if exps.len() != vars.len() {
            return Err(PolyError::InvalidVarset(format!(
                "{} exponents for {} variables",
                exps.len(),
                vars.len()
            )));
        }
        let m = Monomial::from_exponents(exps)?;
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Ok(Poly { vars, terms })
    }

    /// Builds a polynomial from arbitrary `(exponents, coefficient)` pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms<I>(vars: VarSet, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, R)>,
    {
        let mut acc: HashMap<Monomial, R> = HashMap::new();
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(PolyError::InvalidVarset(format!(
                    "{} exponents for {} variables",
                    e.len(),
                    vars.len()
                )));
            }
            let m = Monomial::from_exponents(&e)?;
            acc.entry(m).or_insert_with(R::zero).add_assign_ref(&c);
        }
        Ok(Self::from_map(vars, acc))
    }

    fn from_map(vars: VarSet, map: HashMap<Monomial, R>) -> Self {
        let mut terms: Vec<(Monomial, R)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { vars, terms }
    }

    /// Takes terms already sorted descending with no zeros.
    fn from_sorted(vars: VarSet, terms: Vec<(Monomial, R)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { vars, terms }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, R)] {
        &self.terms
    }

    /// Terms as `(exponent vector, coefficient)` in canonical order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (Vec<u32>, &R)> + '_ {
        let n = self.vars.len();
        self.terms.iter().map(move |(m, c)| (m.exponents(n), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Monomial::ONE)
    }

    pub fn leading_term(&self) -> Option<(Monomial, &R)> {
        self.terms.first().map(|(m, c)| (*m, c))
    }

    pub fn leading_coefficient(&self) -> Option<&R> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coefficient(&self, exps: &[u32]) -> R {
        let Ok(m) = Monomial::from_exponents(exps) else {
            return R::zero();
        };
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => R::zero(),
        }
    }

    pub fn total_degree(&self) -> Result<u32, PolyError> {
        // Descending graded order: the first term has maximal degree.
        self.terms.first().map(|(m, _)| m.total_degree()).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn degree_in(&self, var: &str) -> Result<u32, PolyError> {
        let i = self
            .vars
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        self.terms.iter().map(|(m, _)| m.exponent(i)).max().ok_or(PolyError::ZeroPolynomial)
    }

    fn max_degrees(&self) -> [u32; VarSet::MAX_VARS] {
        let mut d = [0; VarSet::MAX_VARS];
        for (m, _) in &self.terms {
            for (i, di) in d.iter_mut().enumerate() {
                *di = (*di).max(m.exponent(i));
            }
        }
        d
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let d = self.max_degrees();
        (0..self.vars.len()).filter(|&i| d[i] > 0).collect()
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarsetMismatch(self.vars.clone(), other.vars.clone()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        self.mul_kernel(other)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let flip = |c: &R| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, flip(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if negate {
                        c.sub_assign_ref(&b[j].1);
                    } else {
                        c.add_assign_ref(&b[j].1);
                    }
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, flip(c))));
        Self::from_sorted(self.vars.clone(), out)
    }

    fn mul_kernel(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.vars.clone()));
        }
        let deg = self.total_degree()? + other.total_degree()?;
        if deg > Monomial::MAX_DEGREE {
            return Err(PolyError::ExponentOverflow);
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            return Ok(self.mul_by_term(other));
        }
        let (da, db) = (self.max_degrees(), other.max_degrees());
        let dims: Vec<usize> = (0..VarSet::MAX_VARS).map(|i| (da[i] + db[i] + 1) as usize).collect();
        let cells = dims.iter().product::<usize>();
        let work = self.terms.len() * other.terms.len();
        if cells <= (1 << 24) && cells <= 4 * work + 64 {
            Ok(self.mul_dense(other, &dims))
        } else {
            let mut acc: HashMap<Monomial, R> = HashMap::with_capacity(work.min(1 << 20));
            for (ma, ca) in &self.terms {
                for (mb, cb) in &other.terms {
                    acc.entry(ma.mul(*mb)).or_insert_with(R::zero).add_mul(ca, cb);
                }
            }
            Ok(Self::from_map(self.vars.clone(), acc))
        }
    }

    /// Product when one factor has a single term: order is preserved.
    fn mul_by_term(&self, other: &Self) -> Self {
        let (single, many) = if self.terms.len() == 1 { (self, other) } else { (other, self) };
        let (m, c) = &single.terms[0];
        let terms = many.terms.iter().map(|(mm, cc)| (mm.mul(*m), cc.mul_ref(c))).collect();
        Self::from_sorted(self.vars.clone(), terms)
    }

    fn mul_dense(&self, other: &Self, dims: &[usize]) -> Self {
        let index = |m: Monomial| {
            (m.exponent(0) as usize * dims[1] + m.exponent(1) as usize) * dims[2]
                + m.exponent(2) as usize
        };
        let mut cells: Vec<R> = vec![R::zero(); dims.iter().product()];
        for (ma, ca) in &self.terms {
            let base = index(*ma);
            for (mb, cb) in &other.terms {
                cells[base + index(*mb)].add_mul(ca, cb);
            }
        }
        let mut terms = Vec::new();
        for (i, c) in cells.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e2 = (i % dims[2]) as u32;
            let e1 = ((i / dims[2]) % dims[1]) as u32;
            let e0 = (i / (dims[2] * dims[1])) as u32;
            let m = Monomial::from_exponents(&[e0, e1, e2]).expect("degree checked");
            terms.push((m, c));
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self::from_sorted(self.vars.clone(), terms)
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let terms = self.terms.iter().map(|(m, t)| (*m, t.mul_ref(c))).collect();
        Self::from_sorted(self.vars.clone(), terms)
    }

    /// Re-labels variable `i` as variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let n = self.vars.len();
        assert_eq!(perm.len(), n, "permutation length");
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &p) in perm.iter().enumerate() {
                e[p] = m.exponent(i);
            }
            (Monomial::from_exponents(&e).expect("same total degree"), c.clone())
        });
        let mut terms: Vec<_> = terms.collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self::from_sorted(self.vars.clone(), terms)
    }

    /// Same terms read over a different variable set of equal length.
    pub fn with_vars(&self, vars: VarSet) -> Result<Self, PolyError> {
        if vars.len() != self.vars.len() {
            return Err(PolyError::VarsetMismatch(self.vars.clone(), vars));
        }
        Ok(Poly { vars, terms: self.terms.clone() })
    }

    /// Applies `f` to every exponent vector; `f` must be injective and
    /// order-preserving on the support, which is re-checked by sorting.
    pub fn map_exponents<F>(&self, vars: VarSet, mut f: F) -> Result<Self, PolyError>
    where
        F: FnMut(&[u32]) -> Option<Vec<u32>>,
    {
        let n = self.vars.len();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = f(&m.exponents(n)).ok_or_else(|| {
                PolyError::InvalidVarset("exponent map rejected a term".to_string())
            })?;
            terms.push((e, c.clone()));
        }
        Self::from_terms(vars, terms)
    }

    /// Integer gcd of the coefficients, non-negative.
    pub fn content(&self) -> R {
        self.terms.iter().fold(R::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c.div_floor(&g))).collect();
        Self::from_sorted(self.vars.clone(), terms)
    }

    /// Parses the canonical ASCII form; see [`parse`](self::parse).
    pub fn parse(s: &str, vars: &VarSet) -> Result<Self, PolyError> {
        parse::parse(s, vars)
    }
}

impl<R: Coefficient> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, name) in names.iter().enumerate() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<R: Coefficient> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.vars)
    }
}

impl<R: Coefficient> Neg for &Poly<R> {
    type Output = Poly<R>;

    fn neg(self) -> Poly<R> {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect();
        Poly::from_sorted(self.vars.clone(), terms)
    }
}

impl<R: Coefficient> Neg for Poly<R> {
    type Output = Poly<R>;

    fn neg(mut self) -> Poly<R> {
        for (_, c) in &mut self.terms {
            *c = -c.clone();
        }
        self
    }
}

// Operator forms panic on a variable-set mismatch; use the `checked_*`
// methods where the operands come from outside.
impl<R: Coefficient> Add for &Poly<R> {
    type Output = Poly<R>;

    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<R: Coefficient> Sub for &Poly<R> {
    type Output = Poly<R>;

    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<R: Coefficient> Mul for &Poly<R> {
    type Output = Poly<R>;

    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = Poly<BigInt>;

    fn p(s: &str, vars: &VarSet) -> P {
        P::parse(s, vars).unwrap()
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let a = Monomial::from_exponents(&[2, 0]).unwrap();
        let b = Monomial::from_exponents(&[1, 1]).unwrap();
        let c = Monomial::from_exponents(&[0, 3]).unwrap();
        assert!(c > a && a > b);
        assert_eq!(a.mul(b).exponents(2), vec![3, 1]);
        assert_eq!(a.mul(b).total_degree(), 4);
    }

    #[test]
    fn ring_examples() {
        let v = VarSet::big_xz();
        assert_eq!(&p("X - 1", &v) * &p("X + 1", &v), p("X^2 - 1", &v));
        assert_eq!(&p("X*Z - Z - 1", &v) + &p("Z + 1", &v), p("X*Z", &v));
        assert!((&P::zero(v.clone()) * &p("X^3 - Z", &v)).is_zero());
    }

    #[test]
    fn mismatched_varsets_are_rejected() {
        let a = p("X", &VarSet::big_xz());
        let b = p("x", &VarSet::xz());
        assert!(matches!(a.checked_add(&b), Err(PolyError::VarsetMismatch(..))));
        assert!(matches!(a.checked_mul(&b), Err(PolyError::VarsetMismatch(..))));
    }

    #[test]
    fn canonical_printing() {
        let v = VarSet::big_xz();
        let q = p("2 Z - 1 + X^2 Z - 3 X Z", &v);
        assert_eq!(q.to_string(), "X^2*Z - 3*X*Z + 2*Z - 1");
        assert_eq!(p("-X^2 + X - 1", &v).to_string(), "-X^2 + X - 1");
        assert_eq!(P::zero(v.clone()).to_string(), "0");
        assert_eq!(p("-1", &v).to_string(), "-1");
    }

    #[test]
    fn degrees() {
        let v = VarSet::big_xz();
        assert_eq!(p("X^2*Z - 3*X*Z + 2*Z - 1", &v).total_degree(), Ok(3));
        assert_eq!(p("x^2*z - z", &VarSet::xz()).total_degree(), Ok(3));
        assert_eq!(p("5", &v).total_degree(), Ok(0));
        assert_eq!(P::zero(v.clone()).total_degree(), Err(PolyError::ZeroPolynomial));
        assert_eq!(p("X^2*Z - Z^3 + X", &v).degree_in("X"), Ok(2));
        assert_eq!(p("X^2*Z - Z^3 + X", &v).degree_in("Z"), Ok(3));
        assert!(p("X", &v).degree_in("Y").is_err());
    }

    #[test]
    fn hashmap_and_dense_products_agree() {
        // A sparse operand with a huge degree box forces the map path.
        let v = VarSet::xz();
        let a = p("x^200 + z^200 + 3", &v);
        let b = p("x^150*z^2 - 2*z^170 + x", &v);
        let ab = &a * &b;
        let mut expected = P::zero(v.clone());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let e: Vec<u32> = (0..2).map(|i| ma.exponent(i) + mb.exponent(i)).collect();
                expected = &expected + &P::monomial(v.clone(), &e, ca * cb).unwrap();
            }
        }
        assert_eq!(ab, expected);
    }

    #[test]
    fn arbitrary_precision_coefficients() {
        let v = VarSet::big_x();
        let mut acc = p("X + 1", &v);
        for _ in 0..7 {
            acc = &acc * &acc;
        }
        // (X+1)^128 has central coefficient C(128, 64) > 2^64.
        let c = acc.coefficient(&[64]);
        assert_eq!(c.to_string(), "23951146041928082866135587776380551750");
    }

    #[test]
    fn permute_and_primitive() {
        let v = VarSet::xyz();
        let q = p("x^2*y - 3*z", &v);
        assert_eq!(q.permute_vars(&[2, 1, 0]), p("z^2*y - 3*x", &v));
        assert_eq!(p("-4*x^2 + 6*z", &v).primitive_part(), p("2*x^2 - 3*z", &v));
        assert_eq!(p("-4*x^2 + 6*z", &v).content(), BigInt::from(2));
    }

    #[test]
    fn generic_over_machine_integers() {
        let v = VarSet::big_x();
        let a = Poly::<i64>::parse("X - 1", &v).unwrap();
        let b = Poly::<i64>::parse("X + 1", &v).unwrap();
        assert_eq!((&a * &b).to_string(), "X^2 - 1");
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((0u32..5, 0u32..5, 0u32..3, -20i64..20), 0..8).prop_map(|ts| {
            P::from_terms(
                VarSet::xyz(),
                ts.into_iter().map(|(a, b, c, k)| (vec![a, b, c], BigInt::from(k))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a + &(-&b), &a - &b);
        }

        #[test]
        fn display_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(P::parse(&a.to_string(), &VarSet::xyz()).unwrap(), a);
        }
    }
}
