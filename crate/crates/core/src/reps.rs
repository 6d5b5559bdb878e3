//! Numeric PSL₂C representations from parameter pairs, and the checks that
//! tie them to the symbolic invariants.

use std::ops::Mul;

use num_complex::Complex;
use num_traits::{Float, One, Zero};
use thiserror::Error;

use crate::fraction::Fraction;
use crate::frf::{FrfError, Invariants};
use crate::poly::Coefficient;
use crate::words::{omega, Letter, Word};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("Markov residual {0:e} exceeds the tolerance")]
    MarkovResidual(f64),
    #[error("parameter t must be nonzero")]
    ZeroT,
    #[error(transparent)]
    Frf(#[from] FrfError),
}

/// A 2×2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2<F> {
    pub m: [[Complex<F>; 2]; 2],
}

impl<F: Float> ComplexMatrix2<F> {
    pub fn new(a: Complex<F>, b: Complex<F>, c: Complex<F>, d: Complex<F>) -> Self {
        ComplexMatrix2 { m: [[a, b], [c, d]] }
    }

    /// Matrix with real entries.
    pub fn real(a: F, b: F, c: F, d: F) -> Self {
        let r = |v| Complex::new(v, F::zero());
        Self::new(r(a), r(b), r(c), r(d))
    }

    pub fn identity() -> Self {
        Self::real(F::one(), F::zero(), F::zero(), F::one())
    }

    pub fn scale(&self, s: Complex<F>) -> Self {
        let m = self.m;
        Self::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn det(&self) -> Complex<F> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex<F> {
        self.m[0][0] + self.m[1][1]
    }

    /// Inverse through the adjugate.
    pub fn inverse(&self) -> Self {
        let m = self.m;
        let d = self.det();
        Self::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d)
    }

    /// Largest entrywise distance.
    pub fn max_diff(&self, other: &Self) -> F {
        let mut best = F::zero();
        for i in 0..2 {
            for j in 0..2 {
                best = best.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        best
    }
}

impl<F: Float> Mul for ComplexMatrix2<F> {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.m, o.m);
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// Images of the generators `a` and `B`; inverses are derived.
#[derive(Debug, Clone, Copy)]
pub struct LetterImages<F> {
    pub a: ComplexMatrix2<F>,
    pub big_b: ComplexMatrix2<F>,
}

/// Left-to-right product of the letter images.
pub fn word_image<F: Float>(w: &Word, images: &LetterImages<F>) -> ComplexMatrix2<F> {
    let (a, big_b) = (images.a, images.big_b);
    let (a_inv, b) = (a.inverse(), big_b.inverse());
    w.letters().iter().fold(ComplexMatrix2::identity(), |acc, l| {
        acc * match l {
            Letter::A => a,
            Letter::AInv => a_inv,
            Letter::B => b,
            Letter::BInv => big_b,
        }
    })
}

/// `x² + z² + (t - t⁻¹)²`.
pub fn markov_residual<F: Float>(x0: Complex<F>, z0: Complex<F>, t: Complex<F>) -> Complex<F> {
    let s = t - t.inv();
    x0 * x0 + z0 * z0 + s * s
}

/// A nonzero `t` solving the Markov equation, on a fixed branch: `s` is the
/// square root of `-(x0² + z0²)` with non-negative real part (non-negative
/// imaginary part on ties), and `t = (s + sqrt(s² + 4)) / 2`.
pub fn solve_t<F: Float>(x0: Complex<F>, z0: Complex<F>) -> Complex<F> {
    let mut s = (-(x0 * x0 + z0 * z0)).sqrt();
    if s.re < F::zero() || (s.re == F::zero() && s.im < F::zero()) {
        s = -s;
    }
    let two = F::one() + F::one();
    let four = two * two;
    (s + (s * s + four).sqrt()) / two
}

/// `(x0, z0, t)` satisfying the Markov equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterPair<F> {
    pub x0: Complex<F>,
    pub z0: Complex<F>,
    pub t: Complex<F>,
}

impl<F: Float> ParameterPair<F> {
    pub fn new(x0: Complex<F>, z0: Complex<F>, t: Complex<F>, tol: F) -> Result<Self, RepError> {
        if t.is_zero() {
            return Err(RepError::ZeroT);
        }
        let r = markov_residual(x0, z0, t).norm();
        if !(r <= tol) {
            return Err(RepError::MarkovResidual(r.to_f64().unwrap_or(f64::INFINITY)));
        }
        Ok(ParameterPair { x0, z0, t })
    }

    /// Completes `(x0, z0)` with [`solve_t`].
    pub fn from_xz(x0: Complex<F>, z0: Complex<F>) -> Self {
        ParameterPair { x0, z0, t: solve_t(x0, z0) }
    }
}

/// Images of the order-two generators `p`, `q`, `r`.
#[derive(Debug, Clone, Copy)]
pub struct RepImages<F> {
    pub p: ComplexMatrix2<F>,
    pub q: ComplexMatrix2<F>,
    pub r: ComplexMatrix2<F>,
}

impl<F: Float> RepImages<F> {
    /// `a = rq`
    pub fn a(&self) -> ComplexMatrix2<F> {
        self.r * self.q
    }

    /// `b = qp`
    pub fn b(&self) -> ComplexMatrix2<F> {
        self.q * self.p
    }

    pub fn letters(&self) -> LetterImages<F> {
        LetterImages { a: self.a(), big_b: self.b().inverse() }
    }
}

/// The representation of a parameter pair, case by case on which of `x0`,
/// `z0` vanish.
pub fn rep_from_params<F: Float>(pp: &ParameterPair<F>, tol: F) -> Result<RepImages<F>, RepError> {
    let ParameterPair { x0: x, z0: z, t } = *pp;
    let pp = ParameterPair::new(x, z, t, tol)?;
    let (zero, one) = (Complex::zero(), Complex::<F>::one());
    let i = Complex::i();
    let rot = ComplexMatrix2::new(zero, one, -one, zero);
    let diag_i = ComplexMatrix2::new(i, zero, zero, -i);
    let r_special = ComplexMatrix2::new(zero, i * t, i / t, zero);
    if x.is_zero() {
        return Ok(RepImages { p: rot, q: diag_i, r: r_special });
    }
    if z.is_zero() {
        return Ok(RepImages { p: diag_i, q: rot, r: r_special });
    }
    let t_inv = pp.t.inv();
    let p = ComplexMatrix2::new(t_inv - t, -one, -z * z, t - t_inv).scale(x.inv());
    let q = ComplexMatrix2::new(zero, one, -z * z, zero).scale(z.inv());
    let r = ComplexMatrix2::new(-z * t_inv, z + t * t / z - z.inv(), z * (one - t_inv * t_inv), z * t_inv)
        .scale(x.inv());
    Ok(RepImages { p, q, r })
}

/// Default Markov tolerance for parameter pairs produced by [`solve_t`].
pub const MARKOV_TOL: f64 = 1e-9;

/// Compares `|tr ρ(Ω(α))|` with `|T(α)(x0, z0)|`.
pub fn trace_check<R: Coefficient>(
    inv: &Invariants<R>,
    alpha: &Fraction,
    x0: Complex<f64>,
    z0: Complex<f64>,
    tol: f64,
) -> Result<bool, RepError> {
    let (numeric, symbolic) = trace_pair(inv, alpha, x0, z0)?;
    Ok((numeric - symbolic).abs() < tol)
}

/// `(|tr ρ(Ω(α))|, |T(α)(x0, z0)|)` for diagnostics.
pub fn trace_pair<R: Coefficient>(
    inv: &Invariants<R>,
    alpha: &Fraction,
    x0: Complex<f64>,
    z0: Complex<f64>,
) -> Result<(f64, f64), RepError> {
    let pp = ParameterPair::from_xz(x0, z0);
    let tol = MARKOV_TOL * (1.0 + x0.norm_sqr() + z0.norm_sqr());
    let rep = rep_from_params(&pp, tol)?;
    let numeric = word_image(&omega(alpha), &rep.letters()).trace().norm();
    let symbolic = inv.t(alpha)?.eval_at(&[x0, z0]).norm();
    Ok((numeric, symbolic))
}

/// Parabolic images of the meridians of a p-rep with parameter `X0`.
pub fn prep_matrices<F: Float>(x0_big: Complex<F>) -> (ComplexMatrix2<F>, ComplexMatrix2<F>) {
    let k0 = ComplexMatrix2::real(F::one(), F::one(), F::zero(), F::one());
    let (zero, one) = (Complex::zero(), Complex::one());
    let k1 = ComplexMatrix2::new(one, zero, -x0_big, one);
    (k0, k1)
}

/// Checks a p-rep candidate: with `x0 = sqrt(X0)` and `z0 = i·x0` the word
/// `Ω(α)` must have trace zero, and `tr(k0·k1) = 2 - X0`.
pub fn verify_prep(
    alpha: &Fraction,
    x0_big: Complex<f64>,
    tol: f64,
) -> Result<bool, RepError> {
    let x0 = x0_big.sqrt();
    let z0 = Complex::<f64>::i() * x0;
    let pp = ParameterPair::from_xz(x0, z0);
    let rep = rep_from_params(&pp, tol)?;
    let tr = word_image(&omega(alpha), &rep.letters()).trace();
    let (k0, k1) = prep_matrices(x0_big);
    let two = Complex::new(2.0, 0.0);
    let parabolic_ok = ((k0 * k1).trace() - (two - x0_big)).norm() <= tol;
    Ok(tr.norm() < tol && parabolic_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn random_pair(rng: &mut ChaCha8Rng) -> ParameterPair<f64> {
        let mut g = || c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        ParameterPair::from_xz(g(), g())
    }

    #[test]
    fn word_image_examples() {
        let a = ComplexMatrix2::real(1.0, 1.0, 0.0, 1.0);
        let big_b = ComplexMatrix2::real(1.0, 0.0, 1.0, 1.0);
        let imgs = LetterImages { a, big_b };
        let id = ComplexMatrix2::identity();
        assert_eq!(word_image(&Word::empty(), &imgs), id);
        assert_eq!(word_image(&"aB".parse().unwrap(), &imgs), ComplexMatrix2::real(2.0, 1.0, 1.0, 1.0));
        assert!(word_image(&"aA".parse().unwrap(), &imgs).max_diff(&id) < 1e-15);
    }

    #[test]
    fn solve_t_examples() {
        assert_eq!(solve_t(c(0.0, 0.0), c(0.0, 0.0)), c(1.0, 0.0));
        assert!((solve_t(c(2.0, 0.0), c(0.0, 2.0)) - c(1.0, 0.0)).norm() < 1e-15);
        let t = solve_t(c(2.0, 0.0), c(0.0, 0.0));
        assert!(markov_residual(c(2.0, 0.0), c(0.0, 0.0), t).norm() < 1e-12);
    }

    #[test]
    fn special_cases() {
        let t = solve_t(c(0.0, 0.0), c(0.7, 0.2));
        let rep = rep_from_params(&ParameterPair { x0: c(0.0, 0.0), z0: c(0.7, 0.2), t }, 1e-12).unwrap();
        assert_eq!(rep.q, ComplexMatrix2::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)));
        let t = solve_t(c(0.4, -1.0), c(0.0, 0.0));
        let rep = rep_from_params(&ParameterPair { x0: c(0.4, -1.0), z0: c(0.0, 0.0), t }, 1e-12).unwrap();
        assert!((rep.a().trace().norm() - c(0.4, -1.0).norm()).abs() < 1e-12);
        assert!(rep.b().trace().norm() < 1e-12);
    }

    #[test]
    fn markov_residual_is_enforced() {
        let pp = ParameterPair { x0: c(1.0, 0.0), z0: c(1.0, 0.0), t: c(1.0, 0.0) };
        assert!(matches!(rep_from_params(&pp, 1e-9), Err(RepError::MarkovResidual(_))));
        assert_eq!(ParameterPair::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), 1.0), Err(RepError::ZeroT));
    }

    #[test]
    fn generic_traces_and_determinants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let pp = random_pair(&mut rng);
            let rep = rep_from_params(&pp, 1e-9).unwrap();
            for m in [rep.p, rep.q, rep.r] {
                assert!((m.det() - c(1.0, 0.0)).norm() < 1e-10);
            }
            assert!((rep.a().trace().norm() - pp.x0.norm()).abs() < 1e-9);
            assert!(rep.b().trace().norm() < 1e-9);
            let ab = rep.a() * rep.b().inverse();
            assert!((ab.trace().norm() - pp.z0.norm()).abs() < 1e-9);
        }
    }

    #[test]
    fn trace_check_examples() {
        let inv = Invariants::<BigInt>::new();
        let third: Fraction = "1/3".parse().unwrap();
        let (num, sym) = trace_pair(&inv, &third, c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((sym - 3.0).abs() < 1e-12 && (num - 3.0).abs() < 1e-9, "{num} {sym}");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let pp = random_pair(&mut rng);
            assert!(trace_check(&inv, &Fraction::ZERO, pp.x0, pp.z0, 1e-9).unwrap());
            assert!(trace_check(&inv, &Fraction::INFINITY, pp.x0, pp.z0, 1e-9).unwrap());
        }
    }

    #[test]
    fn prep_examples() {
        for (x, tr) in [(c(0.0, 0.0), c(2.0, 0.0)), (c(1.0, 0.0), c(1.0, 0.0)), (c(2.0, 1.0), c(0.0, -1.0))] {
            let (k0, k1) = prep_matrices(x);
            assert_eq!((k0 * k1).trace(), tr);
        }
        let f = |s: &str| s.parse::<Fraction>().unwrap();
        assert!(verify_prep(&f("1/3"), c(1.0, 0.0), 1e-8).unwrap());
        assert!(verify_prep(&f("1/4"), c(2.0, 0.0), 1e-8).unwrap());
        assert!(!verify_prep(&f("1/3"), c(5.0, 0.0), 1e-8).unwrap());
    }
}
