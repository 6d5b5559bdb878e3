use std::collections::BTreeMap;

use super::{Coefficient, Monomial, Poly, PolyError};

impl<R: Coefficient> Poly<R> {
    /// Exact quotient `self / divisor` over the integers.
    ///
    /// Long division by graded-lex leading terms. Returns `Ok(None)` when no
    /// integer-coefficient quotient exists; in particular a quotient that
    /// only exists over the rationals (`2X / 4X`) counts as not divisible.
    /// Callers that want divisibility up to content should pass primitive
    /// parts.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Option<Self>, PolyError> {
        self.check_vars(divisor)?;
        let Some((lead_m, lead_c)) = divisor.leading_term() else {
            return Err(PolyError::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(Some(Self::zero(self.vars.clone())));
        }
        if divisor.terms.len() == 1 {
            return Ok(self.divide_by_term(lead_m, lead_c));
        }
        let lead_c = lead_c.clone();
        let tail = &divisor.terms[1..];
        let mut rem: BTreeMap<Monomial, R> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            if !lead_m.divides(&m) {
                return Ok(None);
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Ok(None);
            }
            let qm = m.div(lead_m);
            for (dm, dc) in tail {
                let key = qm.mul(*dm);
                let entry = rem.entry(key).or_insert_with(R::zero);
                let prod = qc.mul_ref(dc);
                entry.sub_assign_ref(&prod);
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((qm, qc));
        }
        Ok(Some(Self::from_sorted(self.vars.clone(), quot)))
    }

    fn divide_by_term(&self, m: Monomial, c: &R) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, tc) in &self.terms {
            if !m.divides(tm) {
                return None;
            }
            let (q, r) = tc.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push((tm.div(m), q));
        }
        Some(Self::from_sorted(self.vars.clone(), terms))
    }

    pub fn divides(&self, other: &Self) -> Result<bool, PolyError> {
        Ok(other.exact_divide(self)?.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::super::VarSet;
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = Poly<BigInt>;

    fn p(s: &str, v: &VarSet) -> P {
        P::parse(s, v).unwrap()
    }

    #[test]
    fn examples() {
        let v = VarSet::big_xz();
        assert_eq!(p("X^2 - 1", &v).exact_divide(&p("X - 1", &v)), Ok(Some(p("X + 1", &v))));
        let w = VarSet::xz();
        assert_eq!(p("x^2*z - z", &w).exact_divide(&p("z", &w)), Ok(Some(p("x^2 - 1", &w))));
        assert_eq!(p("X", &v).exact_divide(&p("Z", &v)), Ok(None));
        assert_eq!(p("2*X", &v).exact_divide(&p("4*X", &v)), Ok(None));
        assert_eq!(p("X^2 + 1", &v).exact_divide(&p("X - 1", &v)), Ok(None));
        assert_eq!(p("X", &v).exact_divide(&P::zero(v.clone())), Err(PolyError::DivisionByZero));
        assert_eq!(P::zero(v.clone()).exact_divide(&p("X", &v)), Ok(Some(P::zero(v.clone()))));
    }

    #[test]
    fn factored_table_row_divides() {
        let v = VarSet::big_xz();
        let row = p("(XZ - Z - 2)(XZ - 1)(X - 1)", &v);
        assert_eq!(row.exact_divide(&p("XZ - 1", &v)), Ok(Some(p("(XZ - Z - 2)(X - 1)", &v))));
        assert_eq!(row.exact_divide(&p("XZ + 1", &v)), Ok(None));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((0u32..4, 0u32..4, 0u32..3, -9i64..9), 1..6).prop_map(|ts| {
            P::from_terms(
                VarSet::xyz(),
                ts.into_iter().map(|(a, b, c, k)| (vec![a, b, c], BigInt::from(k))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn quotient_is_recovered(g in arb_poly(), q in arb_poly()) {
            prop_assume!(!g.is_zero());
            let f = &g * &q;
            prop_assert_eq!(f.exact_divide(&g).unwrap(), Some(q));
        }

        #[test]
        fn perturbed_product_is_not_divisible(g in arb_poly(), q in arb_poly()) {
            prop_assume!(!g.is_zero() && !g.is_constant());
            // Adding a constant 1 to g*q leaves a unit remainder.
            let f = &(&g * &q) + &P::one(VarSet::xyz());
            prop_assert_eq!(f.exact_divide(&g).unwrap(), None);
        }
    }
}
