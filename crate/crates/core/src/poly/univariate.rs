//! One-variable routines: derivative, primitive-PRS gcd, square-free parts.

use super::{Coefficient, Monomial, Poly, PolyError, VarSet};

/// One factor of a square-free decomposition: `factor^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeFactor<R: Coefficient> {
    pub factor: Poly<R>,
    pub multiplicity: usize,
}

fn trim<R: Coefficient>(v: &mut Vec<R>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_content<R: Coefficient>(v: &[R]) -> R {
    v.iter().fold(R::zero(), |g, c| g.gcd(c))
}

fn dense_primitive<R: Coefficient>(v: &mut [R]) {
    let mut g = dense_content(v);
    if g.is_zero() {
        return;
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    for c in v.iter_mut() {
        *c = c.div_floor(&g);
    }
}

/// Pseudo-remainder of `a` by `b` (`b` non-zero, trimmed).
fn dense_prem<R: Coefficient>(a: &[R], b: &[R]) -> Vec<R> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lb = b.last().expect("non-zero divisor").clone();
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c = c.mul_ref(&lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let prod = lr.mul_ref(bc);
            r[shift + i].sub_assign_ref(&prod);
        }
        trim(&mut r);
    }
    r
}

fn trim_mod(v: &mut Vec<u128>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u128, p: u128) -> u128 {
    let (mut r, mut b, mut e) = (1u128, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Euclid over `F_p`.
fn gcd_mod(mut a: Vec<u128>, mut b: Vec<u128>, p: u128) -> Vec<u128> {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let lb = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * lb % p;
            let s = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                a[s + i] = (a[s + i] + p - c * bc % p) % p;
            }
            trim_mod(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

impl<R: Coefficient> Poly<R> {
    fn require_univariate(&self) -> Result<(), PolyError> {
        if self.vars.len() == 1 {
            Ok(())
        } else {
            Err(PolyError::NotUnivariate(self.vars.clone()))
        }
    }

    /// Coefficients from degree 0 upward.
    pub fn to_dense(&self) -> Result<Vec<R>, PolyError> {
        self.require_univariate()?;
        let Some((lead, _)) = self.leading_term() else {
            return Ok(Vec::new());
        };
        let mut out = vec![R::zero(); lead.exponent(0) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponent(0) as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_dense(vars: VarSet, coeffs: &[R]) -> Result<Self, PolyError> {
        if vars.len() != 1 {
            return Err(PolyError::NotUnivariate(vars));
        }
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate().rev() {
            if !c.is_zero() {
                terms.push((Monomial::from_exponents(&[e as u32])?, c.clone()));
            }
        }
        Ok(Self::from_sorted(vars, terms))
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> Result<Self, PolyError> {
        let i = self
            .vars
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let n = self.vars.len();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents(n);
            ex[i] -= 1;
            let k = R::from_u32(e).expect("exponent fits the coefficient ring");
            terms.push((ex, c.mul_ref(&k)));
        }
        Self::from_terms(self.vars.clone(), terms)
    }

    /// Primitive gcd over the rationals with integer coefficients and a
    /// positive leading coefficient, by a primitive remainder sequence.
    pub fn gcd_univariate(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        self.require_univariate()?;
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut a = self.to_dense()?;
        let mut b = other.to_dense()?;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        dense_primitive(&mut a);
        dense_primitive(&mut b);
        while !b.is_empty() {
            let mut r = dense_prem(&a, &b);
            dense_primitive(&mut r);
            a = b;
            b = r;
        }
        if a.len() <= 1 {
            return Ok(Self::one(self.vars.clone()));
        }
        Self::from_dense(self.vars.clone(), &a)
    }

    /// Largest `k` with `(X - r)^k` dividing `self`; `None` for zero.
    pub fn root_multiplicity(&self, r: &R) -> Result<Option<usize>, PolyError> {
        let mut c = self.to_dense()?;
        if c.is_empty() {
            return Ok(None);
        }
        let mut k = 0;
        while c.len() > 1 {
            // Synthetic division by X - r.
            let mut q = vec![R::zero(); c.len() - 1];
            let mut acc = R::zero();
            for i in (0..c.len()).rev() {
                acc = acc.mul_ref(r);
                acc += c[i].clone();
                if i > 0 {
                    q[i - 1] = acc.clone();
                }
            }
            if !acc.is_zero() {
                break;
            }
            c = q;
            k += 1;
        }
        Ok(Some(k))
    }

    /// Whether the reduction modulo the prime `p` is square-free. A yes
    /// proves `self` square-free over Z. `None` when `p` divides the
    /// leading coefficient, where the reduction says nothing.
    pub fn is_squarefree_mod(&self, p: u64) -> Result<Option<bool>, PolyError> {
        let modulus = R::from_u64(p).ok_or(PolyError::Modulus(p))?;
        let reduce = |c: &R| c.mod_floor(&modulus).to_u64().expect("residue below p") as u128;
        let f: Vec<u128> = self.to_dense()?.iter().map(reduce).collect();
        let p = p as u128;
        if f.last().map_or(true, |&c| c == 0) {
            return Ok(None);
        }
        let df: Vec<u128> = (1..f.len()).map(|i| f[i] * (i as u128 % p) % p).collect();
        Ok(Some(gcd_mod(f, df, p).len() <= 1))
    }

    /// `f / gcd(f, f')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<Self, PolyError> {
        self.require_univariate()?;
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let var = self.vars.names()[0].clone();
        let g = self.gcd_univariate(&self.derivative(&var)?)?;
        let q = self
            .primitive_part()
            .exact_divide(&g)?
            .expect("primitive gcd divides a primitive polynomial over Z");
        Ok(q.primitive_part())
    }

    /// Yun's square-free decomposition. The factors are primitive with
    /// positive leading coefficients and pairwise coprime; `self` equals
    /// their product up to an integer constant.
    pub fn squarefree_decomposition(&self) -> Result<Vec<SquarefreeFactor<R>>, PolyError> {
        self.require_univariate()?;
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let var = self.vars.names()[0].clone();
        let f = self.primitive_part();
        let df = f.derivative(&var)?;
        let a0 = f.gcd_univariate(&df)?;
        let exact = |x: &Self, y: &Self| -> Result<Self, PolyError> {
            Ok(x.exact_divide(y)?.expect("primitive divisor over Q divides over Z"))
        };
        let mut b = exact(&f, &a0)?;
        let mut c = exact(&df, &a0)?;
        let mut d = c.checked_sub(&b.derivative(&var)?)?;
        let mut out = Vec::new();
        let mut i = 1;
        while !b.is_constant() {
            let a = if d.is_zero() { b.clone() } else { b.gcd_univariate(&d)? };
            if !a.is_constant() {
                out.push(SquarefreeFactor { factor: a.primitive_part(), multiplicity: i });
            }
            b = exact(&b, &a)?;
            c = exact(&d, &a)?;
            d = c.checked_sub(&b.derivative(&var)?)?;
            i += 1;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = Poly<BigInt>;

    fn p(s: &str) -> P {
        P::parse(s, &VarSet::big_x()).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("X^2 - 1").gcd_univariate(&p("2X + 2")).unwrap(), p("X + 1"));
        assert_eq!(p("X^2 - 1").gcd_univariate(&p("2X")).unwrap(), p("1"));
        // (X-1)^2 X and (X-1) X^2
        let a = p("(X - 1)^2 X");
        let b = p("(X - 1) X^2");
        assert_eq!(a.gcd_univariate(&b).unwrap(), p("X^2 - X"));
        assert_eq!(p("-3X + 3").gcd_univariate(&P::zero(VarSet::big_x())).unwrap(), p("X - 1"));
        assert!(P::zero(VarSet::big_x()).gcd_univariate(&P::zero(VarSet::big_x())).is_err());
    }

    #[test]
    fn requires_one_variable() {
        let v = VarSet::big_xz();
        let a = P::parse("X - Z", &v).unwrap();
        assert!(matches!(a.gcd_univariate(&a), Err(PolyError::NotUnivariate(_))));
        assert!(a.squarefree_part().is_err());
    }

    #[test]
    fn derivative_and_squarefree_examples() {
        assert_eq!(p("X^3 - 2X^2 + X").derivative("X").unwrap(), p("3X^2 - 4X + 1"));
        assert_eq!(p("(X - 1)^2").squarefree_part().unwrap(), p("X - 1"));
        assert_eq!(p("X^2 - 3X + 1").squarefree_part().unwrap(), p("X^2 - 3X + 1"));
        assert_eq!(p("X^3 - 2X^2 + X").squarefree_part().unwrap(), p("X^2 - X"));
        assert_eq!(p("-6").squarefree_part().unwrap(), p("1"));
        let v = VarSet::xz();
        let q = P::parse("x^2*z + z^3", &v).unwrap();
        assert_eq!(q.derivative("z").unwrap(), P::parse("x^2 + 3z^2", &v).unwrap());
    }

    #[test]
    fn yun_decomposition() {
        let f = p("-2 (X^2 - 1)^3 (X + 5)^2 (X^2 + X + 1) X");
        let dec = f.squarefree_decomposition().unwrap();
        let got: Vec<(String, usize)> =
            dec.iter().map(|s| (s.factor.to_string(), s.multiplicity)).collect();
        assert_eq!(
            got,
            vec![
                ("X^3 + X^2 + X".to_string(), 1),
                ("X + 5".to_string(), 2),
                ("X^2 - 1".to_string(), 3)
            ]
        );
    }

    fn arb_univariate() -> impl Strategy<Value = P> {
        prop::collection::vec(-6i64..6, 1..6)
            .prop_map(|cs| P::from_dense(VarSet::big_x(), &cs.into_iter().map(BigInt::from).collect::<Vec<_>>()).unwrap())
    }

    proptest! {
        #[test]
        fn squarefree_part_divides_and_is_squarefree(a in arb_univariate(), b in arb_univariate()) {
            let f = &(&a * &a) * &b;
            prop_assume!(!f.is_zero());
            let s = f.squarefree_part().unwrap();
            prop_assert!(s.divides(&f.primitive_part()).unwrap());
            let g = s.gcd_univariate(&s.derivative("X").unwrap()).unwrap();
            prop_assert!(g.is_constant());
        }

        #[test]
        fn gcd_divides_both(a in arb_univariate(), b in arb_univariate(), c in arb_univariate()) {
            let (f, g) = (&a * &c, &b * &c);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let d = f.gcd_univariate(&g).unwrap();
            prop_assert!(d.divides(&f.primitive_part()).unwrap());
            prop_assert!(d.divides(&g.primitive_part()).unwrap());
            prop_assert!(c.primitive_part().divides(&d).unwrap() || c.is_constant());
        }
    }

    #[test]
    fn root_multiplicity_and_modular_screen() {
        let f = p("(X - 1)^3 (X + 2) X^2");
        assert_eq!(f.root_multiplicity(&BigInt::from(1)).unwrap(), Some(3));
        assert_eq!(f.root_multiplicity(&BigInt::from(-2)).unwrap(), Some(1));
        assert_eq!(f.root_multiplicity(&BigInt::from(0)).unwrap(), Some(2));
        assert_eq!(f.root_multiplicity(&BigInt::from(5)).unwrap(), Some(0));
        assert_eq!(P::zero(VarSet::big_x()).root_multiplicity(&BigInt::from(1)).unwrap(), None);
        assert_eq!(f.is_squarefree_mod(1_000_000_007).unwrap(), Some(false));
        assert_eq!(p("X^2 - 3*X + 1").is_squarefree_mod(1_000_000_007).unwrap(), Some(true));
        // X^2 + 1 = (X + 2)(X + 3) mod 5 stays square-free; mod 2 it is (X + 1)^2.
        assert_eq!(p("X^2 + 1").is_squarefree_mod(2).unwrap(), Some(false));
        assert_eq!(p("2*X^2 + 1").is_squarefree_mod(2).unwrap(), None);
    }
}
