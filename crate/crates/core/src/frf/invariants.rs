//! The concrete invariants: `T`, `U`, `T₀`, the Riley polynomial and the
//! `(u, v)` form, plus the parity factor and boundary recursion.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::{FrfError, FrfSpec, Memo, Recurrence, Step};
use crate::fraction::{boundary_predecessor, boundary_sequence, Fraction, Side};
use crate::poly::{Coefficient, Poly, VarSet};

/// Exponents of `f(α) = x^f1 z^f2`, the monomial dividing `T(α)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParityFactor {
    pub f1: bool,
    pub f2: bool,
}

impl ParityFactor {
    pub fn exponents(&self) -> [u32; 2] {
        [self.f1 as u32, self.f2 as u32]
    }

    /// `x^f1 z^f2` in `Z[x, z]`.
    pub fn monomial<R: Coefficient>(&self) -> Poly<R> {
        Poly::monomial(VarSet::xz(), &self.exponents(), R::one()).expect("degree at most 2")
    }
}

/// `f1 ≡ pq + 1` and `f2 ≡ p (mod 2)`.
pub fn parity_factor(alpha: &Fraction) -> ParityFactor {
    let (p, q) = (alpha.num(), alpha.den());
    ParityFactor { f1: (p * q + 1).rem_euclid(2) == 1, f2: p.rem_euclid(2) == 1 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reflection {
    SwapXZ,
    NegateX,
}

/// `T` with its parity factor divided out, evaluated directly.
///
/// Writing `T(α) = f(α)·V(α)`, the Farey recursion becomes
/// `V(α) = -V(β) + Q·V(γ)·V(γ⊕β)` with `Q = f(γ)f(γ⊕β)/f(β)` a square
/// monomial, so `V` never leaves the ring in `X = x²`, `Z = z²`. Images of
/// `X` and `Z` may be any polynomials, which gives the Riley polynomial as
/// the specialisation `Z ↦ -X`.
#[derive(Debug, Clone)]
pub struct ParityReduced<R: Coefficient> {
    vars: VarSet,
    x_image: Poly<R>,
    z_image: Poly<R>,
    reflection: Option<Reflection>,
}

impl<R: Coefficient> ParityReduced<R> {
    /// `T₀` in `Z[X, Z]`.
    pub fn t0() -> Self {
        let v = VarSet::big_xz();
        ParityReduced {
            x_image: Poly::var(v.clone(), "X").expect("X"),
            z_image: Poly::var(v.clone(), "Z").expect("Z"),
            vars: v,
            reflection: Some(Reflection::SwapXZ),
        }
    }

    /// `Λ` in `Z[X]`.
    pub fn riley() -> Self {
        let v = VarSet::big_x();
        let x = Poly::var(v.clone(), "X").expect("X");
        ParityReduced { z_image: -&x, x_image: x, vars: v, reflection: Some(Reflection::NegateX) }
    }

    /// Same recursion without the `1 - γ` shortcut.
    pub fn without_reflection(mut self) -> Self {
        self.reflection = None;
        self
    }
}

impl<R: Coefficient> Recurrence for ParityReduced<R> {
    type Coeff = R;

    fn vars(&self) -> &VarSet {
        &self.vars
    }

    fn seed(&self, alpha: &Fraction) -> Option<Poly<R>> {
        if alpha.is_infinite() {
            return Some(Poly::zero(self.vars.clone()));
        }
        if !alpha.is_integer() {
            return None;
        }
        let one = Poly::one(self.vars.clone());
        Some(if alpha.num().rem_euclid(4) < 2 { one } else { -one })
    }

    fn combine(
        &self,
        target: &Fraction,
        step: &Step,
        gamma: &Poly<R>,
        beta: &Poly<R>,
        middle: &Poly<R>,
    ) -> Result<Poly<R>, FrfError> {
        let (ft, fb) = (parity_factor(target), parity_factor(&step.beta));
        if ft != fb {
            return Err(FrfError::Internal {
                frac: *target,
                msg: format!("parity factor differs from that of {}", step.beta),
            });
        }
        let (fg, fm) = (parity_factor(&step.gamma), parity_factor(&step.middle));
        let e1 = fg.f1 as i32 + fm.f1 as i32 - fb.f1 as i32;
        let e2 = fg.f2 as i32 + fm.f2 as i32 - fb.f2 as i32;
        if e1 < 0 || e2 < 0 || e1 % 2 != 0 || e2 % 2 != 0 {
            return Err(FrfError::Internal {
                frac: *target,
                msg: format!("twist x^{e1} z^{e2} is not a square monomial"),
            });
        }
        let mut prod = gamma.checked_mul(middle)?;
        if e1 == 2 {
            prod = prod.checked_mul(&self.x_image)?;
        }
        if e2 == 2 {
            prod = prod.checked_mul(&self.z_image)?;
        }
        Ok(prod.checked_sub(beta)?)
    }

    fn reflects(&self) -> bool {
        self.reflection.is_some()
    }

    fn reflect(&self, value: &Poly<R>) -> Poly<R> {
        match self.reflection {
            Some(Reflection::SwapXZ) => value.permute_vars(&[1, 0]),
            Some(Reflection::NegateX) => {
                let terms = value.iter_terms().map(|(e, c)| {
                    let c = if e[0] % 2 == 1 { -c.clone() } else { c.clone() };
                    (e, c)
                });
                Poly::from_terms(self.vars.clone(), terms).expect("same support")
            }
            None => value.clone(),
        }
    }
}

/// `T(α) / f(α)` rewritten in `X = x²`, `Z = z²`, checking that the division
/// is exact and that only even exponents remain.
pub fn t0_from_trace<R: Coefficient>(alpha: &Fraction, t: &Poly<R>) -> Result<Poly<R>, FrfError> {
    let f = parity_factor(alpha).monomial::<R>();
    let q = t.exact_divide(&f)?.ok_or_else(|| FrfError::Internal {
        frac: *alpha,
        msg: "T is not divisible by its parity factor".to_string(),
    })?;
    let mut odd = false;
    let halved = q.map_exponents(VarSet::big_xz(), |e| {
        odd |= e.iter().any(|k| k % 2 == 1);
        Some(e.iter().map(|k| k / 2).collect())
    })?;
    if odd {
        return Err(FrfError::Internal {
            frac: *alpha,
            msg: "odd exponent survives in T/f".to_string(),
        });
    }
    Ok(halved)
}

/// The invariant families the engine can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "T")]
    T,
    #[serde(rename = "U")]
    U,
    #[serde(rename = "T0")]
    T0,
    #[serde(rename = "riley")]
    Riley,
    #[serde(rename = "uv")]
    Uv,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::T, Kind::U, Kind::T0, Kind::Riley, Kind::Uv];

    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::T => "T",
            Kind::U => "U",
            Kind::T0 => "T0",
            Kind::Riley => "riley",
            Kind::Uv => "uv",
        }
    }

    /// Variable set of the values of this kind.
    pub fn vars(&self) -> VarSet {
        match self {
            Kind::T => VarSet::xz(),
            Kind::U => VarSet::xyz(),
            Kind::T0 => VarSet::big_xz(),
            Kind::Riley => VarSet::big_x(),
            Kind::Uv => VarSet::uv(),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown kind {s:?} (expected T, U, T0, riley or uv)"))
    }
}

/// All invariants of one fraction family, each with its own memo table.
pub struct Invariants<R: Coefficient> {
    t: Memo<FrfSpec<R>>,
    u: Memo<FrfSpec<R>>,
    t0: Memo<ParityReduced<R>>,
    riley: Memo<ParityReduced<R>>,
}

impl<R: Coefficient> Default for Invariants<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Coefficient> Invariants<R> {
    pub fn new() -> Self {
        Invariants {
            t: Memo::new(FrfSpec::trace()),
            u: Memo::new(FrfSpec::generic()),
            t0: Memo::new(ParityReduced::t0()),
            riley: Memo::new(ParityReduced::riley()),
        }
    }

    pub fn t(&self, alpha: &Fraction) -> Result<Arc<Poly<R>>, FrfError> {
        self.t.get(alpha)
    }

    pub fn u(&self, alpha: &Fraction) -> Result<Arc<Poly<R>>, FrfError> {
        self.u.get(alpha)
    }

    pub fn t0(&self, alpha: &Fraction) -> Result<Arc<Poly<R>>, FrfError> {
        self.t0.get(alpha)
    }

    pub fn riley(&self, alpha: &Fraction) -> Result<Arc<Poly<R>>, FrfError> {
        self.riley.get(alpha)
    }

    /// `T₀` through exact division of `T`; slower than [`t0`](Self::t0) and
    /// used to cross-check it.
    pub fn t0_by_division(&self, alpha: &Fraction) -> Result<Poly<R>, FrfError> {
        t0_from_trace(alpha, &*self.t(alpha)?)
    }

    /// `Λ` as the substitution `Z ↦ -X` in `T₀`.
    pub fn riley_by_substitution(&self, alpha: &Fraction) -> Result<Poly<R>, FrfError> {
        let v = VarSet::big_x();
        let x = Poly::var(v.clone(), "X")?;
        Ok(self.t0(alpha)?.substitute(&v, &[("X", x.clone()), ("Z", -x)])?)
    }

    /// `T₀` with `X = 2 - v` and `Z = 2 + v - u²`.
    pub fn uv_form(&self, alpha: &Fraction) -> Result<Poly<R>, FrfError> {
        let v = VarSet::uv();
        let x_img = Poly::parse("2 - v", &v)?;
        let z_img = Poly::parse("2 + v - u^2", &v)?;
        Ok(self.t0(alpha)?.substitute(&v, &[("X", x_img), ("Z", z_img)])?)
    }

    /// Value of any kind, by value.
    pub fn value(&self, kind: Kind, alpha: &Fraction) -> Result<Poly<R>, FrfError> {
        Ok(match kind {
            Kind::T => (*self.t(alpha)?).clone(),
            Kind::U => (*self.u(alpha)?).clone(),
            Kind::T0 => (*self.t0(alpha)?).clone(),
            Kind::Riley => (*self.riley(alpha)?).clone(),
            Kind::Uv => self.uv_form(alpha)?,
        })
    }

    /// Inserts a value computed elsewhere. Kinds without a memo table are
    /// ignored; returns whether the value was kept.
    pub fn preload(&self, kind: Kind, alpha: Fraction, value: Poly<R>) -> bool {
        match kind {
            Kind::T => self.t.preload(alpha, value),
            Kind::U => self.u.preload(alpha, value),
            Kind::T0 => self.t0.preload(alpha, value),
            Kind::Riley => self.riley.preload(alpha, value),
            Kind::Uv => return false,
        };
        true
    }

    pub fn t_memo(&self) -> &Memo<FrfSpec<R>> {
        &self.t
    }

    pub fn u_memo(&self) -> &Memo<FrfSpec<R>> {
        &self.u
    }

    pub fn t0_memo(&self) -> &Memo<ParityReduced<R>> {
        &self.t0
    }

    pub fn riley_memo(&self) -> &Memo<ParityReduced<R>> {
        &self.riley
    }
}

/// `(2 - v)(2 + v - u²)`, which vanishes exactly on reducible characters.
pub fn reducible_locus<F: Float>(u0: Complex<F>, v0: Complex<F>) -> Complex<F> {
    let two = Complex::new(F::one() + F::one(), F::zero());
    (two - v0) * (two + v0 - u0 * u0)
}

/// The first `n` values along `∂₊(α)`, produced by the recursion matrix
/// `[[0, 1], [-1, F(α)]]` from the value before the sequence and the corner.
pub fn boundary_values<S: Recurrence>(
    memo: &Memo<S>,
    alpha: &Fraction,
    n: usize,
) -> Result<Vec<Poly<S::Coeff>>, FrfError> {
    let fa = memo.get(alpha)?;
    let mut prev = (*memo.get(&boundary_predecessor(alpha))?).clone();
    let mut cur = (*memo.get(&boundary_sequence(alpha, Side::Positive, 1)[0])?).clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(cur.clone());
        let next = fa.checked_mul(&cur)?.checked_sub(&prev)?;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(out)
}
