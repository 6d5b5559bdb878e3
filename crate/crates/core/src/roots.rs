//! Complex roots of Riley polynomials.
//!
//! Multiplicities come from the exact square-free decomposition; each
//! square-free factor is then solved numerically by Aberth iteration and
//! polished with Newton steps, so no root clustering is ever inferred.

use num_complex::Complex;
use num_traits::Float;
use thiserror::Error;

use crate::fraction::Fraction;
use crate::frf::{FrfError, Invariants};
use crate::poly::{Coefficient, Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial is constant")]
    Constant,
    #[error("{} root(s) failed to converge: {failed:?}", failed.len())]
    NoConvergence { failed: Vec<Complex<f64>> },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Frf(#[from] FrfError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root<F> {
    pub value: Complex<F>,
    pub multiplicity: usize,
    /// `|f(root)|` divided by `Σ |c_i| |root|^i`.
    pub residual: F,
}

fn horner<F: Float>(coeffs: &[Complex<F>], z: Complex<F>) -> (Complex<F>, Complex<F>) {
    let mut p = Complex::new(F::zero(), F::zero());
    let mut dp = p;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Residual of `coeffs` at `z`, relative to the size of the terms.
pub fn relative_residual<F: Float>(coeffs: &[Complex<F>], z: Complex<F>) -> F {
    let (p, _) = horner(coeffs, z);
    let r = z.norm();
    let mut scale = F::zero();
    let mut pow = F::one();
    for c in coeffs {
        scale = scale + c.norm() * pow;
        pow = pow * r;
    }
    if scale == F::zero() {
        p.norm()
    } else {
        p.norm() / scale
    }
}

/// Simultaneous Aberth-Ehrlich iteration on a polynomial given from the
/// constant term upward. Returns the approximations and whether every one
/// settled.
pub fn aberth<F: Float>(coeffs: &[Complex<F>], max_iter: usize) -> (Vec<Complex<F>>, bool) {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return (Vec::new(), true);
    }
    let lead = coeffs[n];
    let monic: Vec<Complex<F>> = coeffs.iter().map(|c| *c / lead).collect();
    if n == 1 {
        return (vec![-monic[0]], true);
    }
    // Start on a circle whose radius is the geometric mean of the root
    // moduli, with an irrational angular offset.
    let radius = monic[0].norm().powf(F::one() / F::from(n).unwrap());
    let radius = if radius.is_normal() { radius } else { F::one() };
    let tau = F::from(std::f64::consts::TAU).unwrap();
    let offset = F::from(0.4).unwrap();
    let mut z: Vec<Complex<F>> = (0..n)
        .map(|k| {
            let theta = tau * F::from(k).unwrap() / F::from(n).unwrap() + offset;
            Complex::from_polar(radius, theta)
        })
        .collect();
    let eps = F::epsilon() * F::from(16.0).unwrap();
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() == F::zero() {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex::new(F::zero(), F::zero());
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    s = s + (z[k] - *zj).inv();
                }
            }
            let w = ratio / (Complex::new(F::one(), F::zero()) - ratio * s);
            z[k] = z[k] - w;
            if w.norm() <= eps * (F::one() + z[k].norm()) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return (z, true);
        }
    }
    (z, false)
}

fn to_complex<R: Coefficient, F: Float>(p: &Poly<R>) -> Result<Vec<Complex<F>>, PolyError> {
    p.to_dense()?
        .iter()
        .map(|c| {
            let v = c.to_f64().and_then(F::from).unwrap_or_else(F::infinity);
            Ok(Complex::new(v, F::zero()))
        })
        .collect()
}

/// All complex roots of a nonconstant univariate polynomial, each with its
/// exact multiplicity. Fails if a root's relative residual stays above
/// `tol`.
pub fn roots_of<R: Coefficient>(f: &Poly<R>, tol: f64) -> Result<Vec<Root<f64>>, RootError> {
    if f.is_constant() {
        return Err(RootError::Constant);
    }
    let mut out = Vec::new();
    let mut failed = Vec::new();
    for sf in f.squarefree_decomposition()? {
        let coeffs = to_complex::<R, f64>(&sf.factor)?;
        let (mut zs, _) = aberth(&coeffs, 500);
        for z in zs.iter_mut() {
            for _ in 0..3 {
                let (p, dp) = horner(&coeffs, *z);
                if dp.norm() == 0.0 {
                    break;
                }
                *z -= p / dp;
            }
            let residual = relative_residual(&coeffs, *z);
            if !(residual < tol) {
                failed.push(*z);
            }
            out.push(Root { value: *z, multiplicity: sf.multiplicity, residual });
        }
    }
    if !failed.is_empty() {
        return Err(RootError::NoConvergence { failed });
    }
    out.sort_by(|a, b| {
        (a.value.re, a.value.im).partial_cmp(&(b.value.re, b.value.im)).expect("finite roots")
    });
    Ok(out)
}

/// Roots of `Λ_α`.
pub fn riley_roots<R: Coefficient>(
    inv: &Invariants<R>,
    alpha: &Fraction,
    tol: f64,
) -> Result<Vec<Root<f64>>, RootError> {
    roots_of(&*inv.riley(alpha)?, tol)
}
