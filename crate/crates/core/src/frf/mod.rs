//! Memoized Farey recursion.
//!
//! A [`Recurrence`] supplies seed values and the combination rule
//! `F(γ⊕γ⊕β) = -F(β) + F(γ)·F(γ⊕β)` (possibly twisted by a monomial); a
//! [`Memo`] drives it over the Stern-Brocot diagram with an explicit work
//! stack, so deep chains such as `1/q` never recurse on the call stack.

mod invariants;
pub mod snapshot;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::fraction::{decompose, FareyError, Fraction};
use crate::poly::{Coefficient, Poly, PolyError, VarSet};

pub use invariants::{
    boundary_values, parity_factor, reducible_locus, t0_from_trace, Invariants, Kind,
    ParityFactor, ParityReduced,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrfError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error("seed values must share one variable set")]
    SeedVarsets,
    #[error("internal invariant violated at {frac}: {msg}")]
    Internal { frac: Fraction, msg: String },
}

/// Which fractions feed the value at a target: `target = γ ⊕ γ ⊕ β` and
/// `middle = γ ⊕ β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub gamma: Fraction,
    pub beta: Fraction,
    pub middle: Fraction,
}

/// The step used for `alpha`. Integers other than the seeds recurse along
/// the fan around `1/0`: `n = ∞ ⊕ ∞ ⊕ (n-2)` with representatives `(1, 0)`
/// for positive `n`, and `(-1, 0)` going down.
pub fn step_for(alpha: &Fraction) -> Result<Step, FareyError> {
    if alpha.is_integer() {
        let n = alpha.num();
        let (b, m) = if n >= 2 { (n - 2, n - 1) } else { (n + 2, n + 1) };
        return Ok(Step {
            gamma: Fraction::INFINITY,
            beta: Fraction::integer(b),
            middle: Fraction::integer(m),
        });
    }
    let d = decompose(alpha)?;
    Ok(Step { gamma: d.gamma, beta: d.beta, middle: d.middle() })
}

/// A Farey-recursive rule over a fixed ring.
pub trait Recurrence: Send + Sync {
    type Coeff: Coefficient;

    fn vars(&self) -> &VarSet;

    /// Closed-form value, at least for `0`, `1` and `1/0`.
    fn seed(&self, alpha: &Fraction) -> Option<Poly<Self::Coeff>>;

    /// Value at `target` from the values at the three fractions of `step`.
    fn combine(
        &self,
        target: &Fraction,
        step: &Step,
        gamma: &Poly<Self::Coeff>,
        beta: &Poly<Self::Coeff>,
        middle: &Poly<Self::Coeff>,
    ) -> Result<Poly<Self::Coeff>, FrfError>;

    /// Whether [`reflect`](Recurrence::reflect) is available.
    fn reflects(&self) -> bool {
        false
    }

    /// Symmetry `F(1 - γ) = reflect(F(γ))`, used to fill `(1/2, 1)` from
    /// `(0, 1/2)` when [`reflects`](Recurrence::reflects) is true.
    fn reflect(&self, value: &Poly<Self::Coeff>) -> Poly<Self::Coeff> {
        value.clone()
    }
}

/// Seeds of an FRF at the triangle `{0, 1/0, 1}`; the determinant function
/// is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrfSpec<R: Coefficient> {
    vars: VarSet,
    seed0: Poly<R>,
    seed_inf: Poly<R>,
    seed1: Poly<R>,
}

impl<R: Coefficient> FrfSpec<R> {
    pub fn new(seed0: Poly<R>, seed_inf: Poly<R>, seed1: Poly<R>) -> Result<Self, FrfError> {
        let vars = seed0.vars().clone();
        if *seed_inf.vars() != vars || *seed1.vars() != vars {
            return Err(FrfError::SeedVarsets);
        }
        Ok(FrfSpec { vars, seed0, seed_inf, seed1 })
    }

    /// `T`: seeds `x, 0, z` in `Z[x, z]`.
    pub fn trace() -> Self {
        let v = VarSet::xz();
        let var = |n| Poly::var(v.clone(), n).expect("known variable");
        Self::new(var("x"), Poly::zero(v.clone()), var("z")).expect("shared varset")
    }

    /// The generic FRF `U`: seeds `x, y, z` in `Z[x, y, z]`.
    pub fn generic() -> Self {
        let v = VarSet::xyz();
        let var = |n| Poly::var(v.clone(), n).expect("known variable");
        Self::new(var("x"), var("y"), var("z")).expect("shared varset")
    }

    pub fn seeds(&self) -> [&Poly<R>; 3] {
        [&self.seed0, &self.seed_inf, &self.seed1]
    }
}

impl<R: Coefficient> Recurrence for FrfSpec<R> {
    type Coeff = R;

    fn vars(&self) -> &VarSet {
        &self.vars
    }

    fn seed(&self, alpha: &Fraction) -> Option<Poly<R>> {
        if alpha.is_infinite() {
            return Some(self.seed_inf.clone());
        }
        if !alpha.is_integer() {
            return None;
        }
        let n = alpha.num();
        match n {
            0 => Some(self.seed0.clone()),
            1 => Some(self.seed1.clone()),
            // With F(1/0) = 0 the integer values repeat a0, a1, -a0, -a1.
            _ if self.seed_inf.is_zero() => Some(match n.rem_euclid(4) {
                0 => self.seed0.clone(),
                1 => self.seed1.clone(),
                2 => -&self.seed0,
                _ => -&self.seed1,
            }),
            _ => None,
        }
    }

    fn combine(
        &self,
        _target: &Fraction,
        _step: &Step,
        gamma: &Poly<R>,
        beta: &Poly<R>,
        middle: &Poly<R>,
    ) -> Result<Poly<R>, FrfError> {
        Ok(gamma.checked_mul(middle)?.checked_sub(beta)?)
    }
}

/// Write-once map from fractions to values.
///
/// Readers run concurrently; an insert for a key that is already present
/// keeps the existing value, which is identical anyway.
#[derive(Debug, Default)]
pub struct MemoStore<R: Coefficient> {
    map: RwLock<HashMap<Fraction, Arc<Poly<R>>>>,
}

impl<R: Coefficient> MemoStore<R> {
    pub fn new() -> Self {
        MemoStore { map: RwLock::new(HashMap::new()) }
    }

    pub fn get(&self, alpha: &Fraction) -> Option<Arc<Poly<R>>> {
        self.map.read().expect("memo lock").get(alpha).cloned()
    }

    pub fn contains(&self, alpha: &Fraction) -> bool {
        self.map.read().expect("memo lock").contains_key(alpha)
    }

    pub fn insert(&self, alpha: Fraction, value: Poly<R>) -> Arc<Poly<R>> {
        let mut map = self.map.write().expect("memo lock");
        map.entry(alpha).or_insert_with(|| Arc::new(value)).clone()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All entries, sorted by fraction.
    pub fn entries(&self) -> Vec<(Fraction, Arc<Poly<R>>)> {
        let map = self.map.read().expect("memo lock");
        let mut out: Vec<_> = map.iter().map(|(k, v)| (*k, v.clone())).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// A recurrence together with its memo table.
pub struct Memo<S: Recurrence> {
    rec: S,
    store: MemoStore<S::Coeff>,
}

impl<S: Recurrence> Memo<S> {
    pub fn new(rec: S) -> Self {
        Memo { rec, store: MemoStore::new() }
    }

    pub fn recurrence(&self) -> &S {
        &self.rec
    }

    pub fn store(&self) -> &MemoStore<S::Coeff> {
        &self.store
    }

    fn reflection_source(&self, alpha: &Fraction) -> Option<Fraction> {
        if !self.rec.reflects() {
            return None;
        }
        let half = Fraction::new(1, 2).expect("1/2");
        (*alpha > half && *alpha < Fraction::ONE).then(|| alpha.one_minus())
    }

    /// Value at `alpha`, computing and caching whatever it depends on.
    pub fn get(&self, alpha: &Fraction) -> Result<Arc<Poly<S::Coeff>>, FrfError> {
        if let Some(v) = self.store.get(alpha) {
            return Ok(v);
        }
        let mut stack = vec![*alpha];
        while let Some(&a) = stack.last() {
            if self.store.contains(&a) {
                stack.pop();
                continue;
            }
            if let Some(v) = self.rec.seed(&a) {
                self.store.insert(a, v);
                stack.pop();
                continue;
            }
            if let Some(src) = self.reflection_source(&a) {
                match self.store.get(&src) {
                    Some(sv) => {
                        self.store.insert(a, self.rec.reflect(&sv));
                        stack.pop();
                    }
                    None => stack.push(src),
                }
                continue;
            }
            let step = step_for(&a)?;
            let (g, b, m) =
                (self.store.get(&step.gamma), self.store.get(&step.beta), self.store.get(&step.middle));
            match (g, b, m) {
                (Some(g), Some(b), Some(m)) => {
                    let v = self.rec.combine(&a, &step, &g, &b, &m)?;
                    self.store.insert(a, v);
                    stack.pop();
                }
                (g, b, m) => {
                    if g.is_none() {
                        stack.push(step.gamma);
                    }
                    if b.is_none() {
                        stack.push(step.beta);
                    }
                    if m.is_none() {
                        stack.push(step.middle);
                    }
                }
            }
        }
        Ok(self.store.get(alpha).expect("value computed above"))
    }

    /// Seeds the table with a value obtained elsewhere (a snapshot).
    pub fn preload(&self, alpha: Fraction, value: Poly<S::Coeff>) -> Arc<Poly<S::Coeff>> {
        self.store.insert(alpha, value)
    }
}
