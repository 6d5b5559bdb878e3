//! Substitution of polynomials for variables and numeric evaluation.

use num_complex::Complex;
use num_traits::Float;

use super::{Coefficient, Poly, PolyError, VarSet};

impl<R: Coefficient> Poly<R> {
    /// Replaces every variable by a polynomial over `target`.
    ///
    /// Each variable of `self` must be named in `assignments`; extra names
    /// are an error so that typos do not pass silently.
    pub fn substitute(&self, target: &VarSet, assignments: &[(&str, Poly<R>)]) -> Result<Self, PolyError> {
        for (name, image) in assignments {
            if self.vars.index_of(name).is_none() {
                return Err(PolyError::UnknownVariable(name.to_string()));
            }
            if image.vars != *target {
                return Err(PolyError::VarsetMismatch(image.vars.clone(), target.clone()));
            }
        }
        let n = self.vars.len();
        let mut images = Vec::with_capacity(n);
        for name in self.vars.names() {
            let img = assignments
                .iter()
                .find(|(a, _)| a == name)
                .map(|(_, p)| p)
                .ok_or_else(|| PolyError::MissingAssignment(name.clone()))?;
            images.push(img);
        }
        let maxd = self.max_degrees();
        let mut powers: Vec<Vec<Poly<R>>> = Vec::with_capacity(n);
        for (i, img) in images.iter().enumerate() {
            let mut row = vec![Poly::one(target.clone())];
            for _ in 0..maxd[i] {
                let next = row.last().unwrap().checked_mul(img)?;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = Poly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target.clone(), c.clone());
            for (i, row) in powers.iter().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    t = t.checked_mul(&row[e])?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Numeric value at the named point.
    pub fn eval_complex<F: Float>(&self, values: &[(&str, Complex<F>)]) -> Result<Complex<F>, PolyError> {
        let mut point = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let v = values
                .iter()
                .find(|(a, _)| a == name)
                .map(|(_, v)| *v)
                .ok_or_else(|| PolyError::MissingAssignment(name.clone()))?;
            point.push(v);
        }
        Ok(self.eval_at(&point))
    }

    /// Numeric value with `point[i]` substituted for variable `i`.
    ///
    /// # Panics
    /// If `point` is shorter than the variable set.
    pub fn eval_at<F: Float>(&self, point: &[Complex<F>]) -> Complex<F> {
        let n = self.vars.len();
        assert!(point.len() >= n, "point has {} coordinates, need {n}", point.len());
        let maxd = self.max_degrees();
        let powers: Vec<Vec<Complex<F>>> = (0..n)
            .map(|i| {
                let mut row = vec![Complex::new(F::one(), F::zero())];
                for _ in 0..maxd[i] {
                    let next = *row.last().unwrap() * point[i];
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = Complex::new(F::zero(), F::zero());
        for (m, c) in &self.terms {
            let mut t = Complex::new(coefficient_to_float::<R, F>(c), F::zero());
            for (i, row) in powers.iter().enumerate() {
                t = t * row[m.exponent(i) as usize];
            }
            acc = acc + t;
        }
        acc
    }
}

fn coefficient_to_float<R: Coefficient, F: Float>(c: &R) -> F {
    c.to_f64().and_then(F::from).unwrap_or_else(|| {
        if c.is_negative() {
            F::neg_infinity()
        } else {
            F::infinity()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = Poly<BigInt>;

    #[test]
    fn substitution_examples() {
        let xz = VarSet::big_xz();
        let x = VarSet::big_x();
        let t = P::parse("XZ - Z - 1", &xz).unwrap();
        let got = t
            .substitute(&x, &[("X", P::parse("X", &x).unwrap()), ("Z", P::parse("-X", &x).unwrap())])
            .unwrap();
        assert_eq!(got, P::parse("-X^2 + X - 1", &x).unwrap());

        let uv = VarSet::uv();
        let l = P::parse("X - 1", &x).unwrap();
        let got = l.substitute(&uv, &[("X", P::parse("2 - v", &uv).unwrap())]).unwrap();
        assert_eq!(got, P::parse("1 - v", &uv).unwrap());
    }

    #[test]
    fn substitution_errors() {
        let xz = VarSet::big_xz();
        let x = VarSet::big_x();
        let t = P::parse("XZ", &xz).unwrap();
        let one = P::one(x.clone());
        assert_eq!(
            t.substitute(&x, &[("X", one.clone())]),
            Err(PolyError::MissingAssignment("Z".into()))
        );
        assert!(matches!(
            t.substitute(&x, &[("X", one.clone()), ("Z", one.clone()), ("Q", one)]),
            Err(PolyError::UnknownVariable(_))
        ));
    }

    #[test]
    fn numeric_evaluation() {
        let xz = VarSet::xz();
        let t = P::parse("x^2*z - z", &xz).unwrap();
        let v = t
            .eval_complex(&[("x", Complex::new(0.0, 1.0)), ("z", Complex::new(2.0, 0.0))])
            .unwrap();
        assert!((v - Complex::new(-4.0, 0.0)).norm() < 1e-12);
        let v32: Complex<f32> = t.eval_at(&[Complex::new(1.0, 0.0), Complex::new(3.0, 0.0)]);
        assert_eq!(v32, Complex::new(0.0, 0.0));
    }

    fn arb_poly(vars: VarSet) -> impl Strategy<Value = P> {
        prop::collection::vec((0u32..4, 0u32..4, -9i64..9), 0..6).prop_map(move |ts| {
            P::from_terms(vars.clone(), ts.into_iter().map(|(a, b, k)| (vec![a, b], BigInt::from(k))))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn substitution_commutes_with_evaluation(
            f in arb_poly(VarSet::big_xz()),
            g in arb_poly(VarSet::uv()),
            h in arb_poly(VarSet::uv()),
            u in -2i32..3, v in -2i32..3,
        ) {
            let uv = VarSet::uv();
            let composed = f.substitute(&uv, &[("X", g.clone()), ("Z", h.clone())]).unwrap();
            let pt = [Complex::new(u as f64, 0.0), Complex::new(v as f64, 0.0)];
            let direct = f.eval_at(&[g.eval_at(&pt), h.eval_at(&pt)]);
            prop_assert!((composed.eval_at(&pt) - direct).norm() <= 1e-6 * (1.0 + direct.norm()));
        }
    }
}
