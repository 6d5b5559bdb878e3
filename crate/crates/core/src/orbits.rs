//! The extended modular group acting on `Q ∪ {1/0}` by Möbius maps, and
//! the factor-divisibility predicate it controls.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::fraction::Fraction;
use crate::frf::{FrfError, Invariants};
use crate::poly::{Coefficient, Poly};

/// An integer matrix of determinant `±1`, identified with its negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl MobiusMap {
    pub const IDENTITY: MobiusMap = MobiusMap { a: 1, b: 0, c: 0, d: 1 };
    /// `φ₁ = [[-1, 0], [0, 1]]`, the reflection `α ↦ -α`.
    pub const PHI1: MobiusMap = MobiusMap { a: -1, b: 0, c: 0, d: 1 };
    /// `φ₂ = [[-1, 2], [0, 1]]`, the reflection `α ↦ 2 - α`.
    pub const PHI2: MobiusMap = MobiusMap { a: -1, b: 2, c: 0, d: 1 };
    /// `σ: α ↦ 1 - α`.
    pub const SIGMA: MobiusMap = MobiusMap { a: -1, b: 1, c: 0, d: 1 };
    /// `ζ = [[0, 1], [-1, 1]]`, of order three.
    pub const ZETA: MobiusMap = MobiusMap { a: 0, b: -1, c: 1, d: -1 };

    /// Returns `None` unless `ad - bc = ±1`.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Option<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det.abs() != 1 {
            return None;
        }
        let flip = c < 0 || (c == 0 && d < 0);
        Some(if flip {
            MobiusMap { a: -a, b: -b, c: -c, d: -d }
        } else {
            MobiusMap { a, b, c, d }
        })
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Product `self · other`, or `None` on overflow.
    pub fn compose(&self, other: &MobiusMap) -> Option<MobiusMap> {
        let m = |x: i64, y: i64, z: i64, w: i64| x.checked_mul(y)?.checked_add(z.checked_mul(w)?);
        MobiusMap::new(
            m(self.a, other.a, self.b, other.c)?,
            m(self.a, other.b, self.b, other.d)?,
            m(self.c, other.a, self.d, other.c)?,
            m(self.c, other.b, self.d, other.d)?,
        )
    }

    pub fn inverse(&self) -> MobiusMap {
        // adj(M) is ±M⁻¹, the same map.
        MobiusMap::new(self.d, -self.b, -self.c, self.a).expect("determinant is preserved")
    }

    /// The image of `α`, or `None` if it does not fit in `i64`.
    pub fn checked_apply(&self, alpha: &Fraction) -> Option<Fraction> {
        let (p, q) = (alpha.num() as i128, alpha.den() as i128);
        let num = self.a as i128 * p + self.b as i128 * q;
        let den = self.c as i128 * p + self.d as i128 * q;
        // Unimodular maps send coprime pairs to coprime pairs.
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        Fraction::new(num.try_into().ok()?, den.try_into().ok()?).ok()
    }

    /// `(a·p + b·q) / (c·p + d·q)` in lowest terms.
    ///
    /// # Panics
    /// If the result overflows `i64`; use [`MobiusMap::checked_apply`] for
    /// untrusted input.
    pub fn apply(&self, alpha: &Fraction) -> Fraction {
        self.checked_apply(alpha).expect("Möbius image overflows i64")
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// A map `ψ` with `ψ · α = 1/0`.
pub fn send_to_infinity(alpha: &Fraction) -> MobiusMap {
    if alpha.is_infinite() {
        return MobiusMap::IDENTITY;
    }
    let (p, q) = (alpha.num(), alpha.den());
    // Bottom row (q, -p); the top row (s, t) needs -s·p - t·q = 1.
    let e = p.extended_gcd(&q);
    // e.x·p + e.y·q = gcd = 1.
    MobiusMap::new(-e.x, -e.y, q, -p).expect("coprime entries")
}

/// The generators `φ₁, φ₂, ψ⁻¹φ₁ψ, ψ⁻¹φ₂ψ` of `Ĝ_α`, all involutions.
pub fn orbit_generators(alpha: &Fraction) -> Vec<MobiusMap> {
    let psi = send_to_infinity(alpha);
    let psi_inv = psi.inverse();
    let mut gens = vec![MobiusMap::PHI1, MobiusMap::PHI2];
    for phi in [MobiusMap::PHI1, MobiusMap::PHI2] {
        if let Some(g) = psi_inv.compose(&phi).and_then(|m| m.compose(&psi)) {
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
    }
    gens
}

/// Finite points of `Ĝ_α{α, ∞}` reached by generator words of length at
/// most `max_word`, kept when their denominator is at most `max_den`.
///
/// The search runs over every reached point, so a word may pass through
/// points of larger denominator. Images that overflow `i64` are dropped.
pub fn orbit_sample(alpha: &Fraction, max_den: i64, max_word: usize) -> BTreeSet<Fraction> {
    let gens = orbit_generators(alpha);
    let mut seen: HashSet<Fraction> = [*alpha, Fraction::INFINITY].into_iter().collect();
    let mut frontier: Vec<Fraction> = seen.iter().copied().collect();
    frontier.sort();
    for _ in 0..max_word {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                if let Some(y) = g.checked_apply(x) {
                    if seen.insert(y) {
                        next.push(y);
                    }
                }
            }
        }
        next.sort();
        frontier = next;
    }
    seen.into_iter().filter(|f| !f.is_infinite() && f.den() <= max_den).collect()
}

/// Result of a divisibility query.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Divisibility {
    pub alpha: Fraction,
    pub alpha_prime: Fraction,
    pub divides: bool,
    /// The cofactor in canonical form when the division is exact.
    pub quotient: Option<String>,
}

fn divide<R: Coefficient>(
    alpha: Fraction,
    alpha_prime: Fraction,
    divisor: &Poly<R>,
    dividend: &Poly<R>,
) -> Result<Divisibility, FrfError> {
    let quotient = if divisor.is_zero() {
        // Only 0 is a multiple of 0.
        dividend.is_zero().then(|| "0".to_string())
    } else {
        dividend.exact_divide(divisor)?.map(|q| q.to_string())
    };
    Ok(Divisibility { alpha, alpha_prime, divides: quotient.is_some(), quotient })
}

/// Whether `T(α)` divides `T(α′)` in `ℤ[x, z]`.
pub fn factor_divides<R: Coefficient>(
    inv: &Invariants<R>,
    alpha: &Fraction,
    alpha_prime: &Fraction,
) -> Result<Divisibility, FrfError> {
    divide(*alpha, *alpha_prime, &*inv.t(alpha)?, &*inv.t(alpha_prime)?)
}

/// Whether `T₀(α)` divides `T₀(α′)` in `ℤ[X, Z]`.
pub fn factor_divides_t0<R: Coefficient>(
    inv: &Invariants<R>,
    alpha: &Fraction,
    alpha_prime: &Fraction,
) -> Result<Divisibility, FrfError> {
    divide(*alpha, *alpha_prime, &*inv.t0(alpha)?, &*inv.t0(alpha_prime)?)
}

pub fn check_factor_divides<R: Coefficient>(
    inv: &Invariants<R>,
    alpha: &Fraction,
    alpha_prime: &Fraction,
) -> Result<bool, FrfError> {
    Ok(factor_divides(inv, alpha, alpha_prime)?.divides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::{enumerate, is_farey_pair};
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(MobiusMap::PHI2.apply(&f("0")), f("2"));
        assert_eq!(MobiusMap::PHI1.apply(&f("1")), f("-1"));
        assert_eq!(MobiusMap::ZETA.apply(&f("1")), Fraction::INFINITY);
        assert_eq!(MobiusMap::PHI1.apply(&Fraction::INFINITY), Fraction::INFINITY);
        assert_eq!(MobiusMap::SIGMA.apply(&f("2/7")), f("5/7"));
    }

    #[test]
    fn sign_normalisation() {
        let m = MobiusMap::new(1, -2, 0, -1).unwrap();
        assert_eq!(m, MobiusMap::PHI2);
        assert!(MobiusMap::new(2, 0, 0, 1).is_none());
        let z = MobiusMap::ZETA;
        assert_eq!(z.compose(&z).unwrap().compose(&z).unwrap(), MobiusMap::IDENTITY);
    }

    #[test]
    fn send_to_infinity_hits_infinity() {
        assert_eq!(send_to_infinity(&Fraction::INFINITY), MobiusMap::IDENTITY);
        for a in enumerate(40, f("-3"), f("3")).unwrap() {
            let psi = send_to_infinity(&a);
            assert_eq!(psi.apply(&a), Fraction::INFINITY, "{a} via {psi}");
            assert_eq!(psi.det().abs(), 1);
        }
    }

    #[test]
    fn generators_fix_alpha_and_infinity() {
        for a in ["1/3", "2/7", "-5/12", "9/4"] {
            let a = f(a);
            let gens = orbit_generators(&a);
            assert_eq!(gens[0].apply(&Fraction::INFINITY), Fraction::INFINITY);
            assert_eq!(gens[1].apply(&Fraction::INFINITY), Fraction::INFINITY);
            for g in &gens[2..] {
                assert_eq!(g.apply(&a), a);
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let s = orbit_sample(&f("1/3"), 60, 6);
        assert!(s.contains(&f("1/3")) && s.contains(&f("1/9")), "{s:?}");
        let s = orbit_sample(&f("1/4"), 60, 6);
        assert!(s.contains(&f("1/8")), "{s:?}");
    }

    #[test]
    fn farey_pairs_are_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mats = [MobiusMap::PHI1, MobiusMap::PHI2, MobiusMap::ZETA, MobiusMap::SIGMA];
        for _ in 0..200 {
            let (p, q) = (rng.gen_range(-50i64..50), rng.gen_range(1i64..50));
            let a = Fraction::new(p, q).unwrap();
            let (l, _) = crate::fraction::parents(&a).unwrap_or((Fraction::INFINITY, a));
            let mut m = MobiusMap::IDENTITY;
            for _ in 0..rng.gen_range(1..6) {
                m = m.compose(&mats[rng.gen_range(0..mats.len())]).unwrap();
            }
            assert!(is_farey_pair(&m.apply(&a), &m.apply(&l)), "{a} {l} {m}");
        }
    }

    #[test]
    fn divisibility_examples() {
        let inv = Invariants::<BigInt>::new();
        assert!(check_factor_divides(&inv, &f("1/3"), &f("1/9")).unwrap());
        assert!(check_factor_divides(&inv, &f("1/4"), &f("1/8")).unwrap());
        assert!(!check_factor_divides(&inv, &f("1/3"), &f("1/4")).unwrap());
        let d = factor_divides_t0(&inv, &f("1/4"), &f("1/8")).unwrap();
        assert_eq!(d.quotient.as_deref(), Some("X^2 - 4*X + 2"));
    }
}
