//! The skew polynomial extension A[X; sigma, Delta~].
//!
//! Elements are kept in left normal form `sum a_i X^i`; multiplication
//! expands `X a = sigma(a) X + Delta~(a)` degree by degree. When the twist
//! `Delta~` is inner with witness p, the assignment `X -> Y + p` extends
//! the identity on A to an isomorphism onto the derivation-free extension
//! A[Y; sigma]; [`OrePoly::untwist`] computes that image.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::derivation::SigmaDerivation;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::twist::TwistContext;

/// An element of A[X; sigma, Delta~] in left normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrePoly {
    twist: SigmaDerivation,
    coeffs: BTreeMap<u32, LaurentPoly>,
}

impl OrePoly {
    pub fn zero(twist: &SigmaDerivation) -> Self {
        OrePoly {
            twist: twist.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(twist: &SigmaDerivation) -> Self {
        OrePoly::scalar(twist, LaurentPoly::one())
    }

    /// An element of the base ring A.
    pub fn scalar(twist: &SigmaDerivation, a: LaurentPoly) -> Self {
        OrePoly::from_coeffs(twist, [(0, a)])
    }

    /// The generator X.
    pub fn x(twist: &SigmaDerivation) -> Self {
        OrePoly::from_coeffs(twist, [(1, LaurentPoly::one())])
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, LaurentPoly)>>(
        twist: &SigmaDerivation,
        coeffs: I,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (i, a) in coeffs {
            if a.is_zero() {
                continue;
            }
            let entry = map.entry(i).or_insert_with(LaurentPoly::zero);
            *entry = &*entry + &a;
        }
        map.retain(|_, a| !a.is_zero());
        OrePoly {
            twist: twist.clone(),
            coeffs: map,
        }
    }

    pub fn twist(&self) -> &SigmaDerivation {
        &self.twist
    }

    pub fn ctx(&self) -> &Arc<TwistContext> {
        self.twist.ctx()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &LaurentPoly)> {
        self.coeffs.iter().map(|(i, a)| (*i, a))
    }

    pub fn coeff(&self, i: u32) -> LaurentPoly {
        self.coeffs
            .get(&i)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in X; None on zero.
    pub fn x_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    fn compatible(&self, other: &OrePoly) -> Result<()> {
        if self.ctx().as_ref() == other.ctx().as_ref() && self.twist.coeff() == other.twist.coeff()
        {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &OrePoly) -> Result<OrePoly> {
        self.compatible(other)?;
        Ok(OrePoly::from_coeffs(
            &self.twist,
            self.coeffs()
                .map(|(i, a)| (i, a.clone()))
                .chain(other.coeffs().map(|(i, a)| (i, a.clone()))),
        ))
    }

    /// X * (sum b_j X^j) = sum sigma(b_j) X^{j+1} + Delta~(b_j) X^j.
    fn x_times(&self, coeffs: &BTreeMap<u32, LaurentPoly>) -> BTreeMap<u32, LaurentPoly> {
        let ctx = self.ctx();
        let mut out: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        let mut push = |i: u32, a: LaurentPoly| {
            if a.is_zero() {
                return;
            }
            let entry = out.entry(i).or_insert_with(LaurentPoly::zero);
            *entry = &*entry + &a;
        };
        for (j, b) in coeffs {
            push(j + 1, ctx.sigma(b));
            push(*j, self.twist.apply(b));
        }
        out.retain(|_, a| !a.is_zero());
        out
    }

    /// Normal-form product.
    pub fn mul(&self, other: &OrePoly) -> Result<OrePoly> {
        self.compatible(other)?;
        let mut result: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        let mut cur = other.coeffs.clone(); // X^i * other, starting at i = 0
        let max_i = self.x_degree().unwrap_or(0);
        for i in 0..=max_i {
            if let Some(a) = self.coeffs.get(&i) {
                for (k, b) in &cur {
                    let term = a * b;
                    if term.is_zero() {
                        continue;
                    }
                    let entry = result.entry(*k).or_insert_with(LaurentPoly::zero);
                    *entry = &*entry + &term;
                }
            }
            if i < max_i {
                cur = self.x_times(&cur);
            }
        }
        result.retain(|_, a| !a.is_zero());
        Ok(OrePoly {
            twist: self.twist.clone(),
            coeffs: result,
        })
    }

    /// Image under `X -> Y + p` in A[Y; sigma], where p witnesses the twist
    /// as an inner derivation. Errors when the twist is not inner.
    pub fn untwist(&self) -> Result<OrePoly> {
        let p = self.twist.inner_witness().ok_or(Error::NotInnerTwist)?;
        let plain = SigmaDerivation::zero(self.ctx());
        let y_plus_p = OrePoly::from_coeffs(&plain, [(1, LaurentPoly::one()), (0, p)]);
        let mut result = OrePoly::zero(&plain);
        let mut power = OrePoly::one(&plain); // (Y + p)^i, starting at i = 0
        let max_i = self.x_degree().unwrap_or(0);
        for i in 0..=max_i {
            if let Some(a) = self.coeffs.get(&i) {
                let scaled = OrePoly::scalar(&plain, a.clone()).mul(&power)?;
                result = result.add(&scaled)?;
            }
            if i < max_i {
                power = power.mul(&y_plus_p)?;
            }
        }
        Ok(result)
    }
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs()
            .map(|(i, a)| match i {
                0 => format!("({a})"),
                1 => format!("({a})*X"),
                _ => format!("({a})*X^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::QRational;

    fn ctx(s: i64) -> Arc<TwistContext> {
        Arc::new(TwistContext::formal(s).unwrap())
    }

    fn q() -> QRational {
        QRational::q()
    }

    #[test]
    fn rewrite_rule_on_t() {
        // X * t = q t^2 X + t for s = 2 with twist Delta
        let c = ctx(2);
        let twist = SigmaDerivation::new(&c, LaurentPoly::one());
        let x = OrePoly::x(&twist);
        let t = OrePoly::scalar(&twist, LaurentPoly::t_pow(1));
        let prod = x.mul(&t).unwrap();
        assert_eq!(prod.coeff(1), LaurentPoly::monomial(2, q()));
        assert_eq!(prod.coeff(0), LaurentPoly::t_pow(1));
    }

    #[test]
    fn one_is_a_unit() {
        let c = ctx(2);
        let twist = SigmaDerivation::new(&c, LaurentPoly::one());
        let u = OrePoly::from_coeffs(
            &twist,
            [
                (2, LaurentPoly::t_pow(-1)),
                (0, LaurentPoly::monomial(1, q())),
            ],
        );
        assert_eq!(u.mul(&OrePoly::one(&twist)).unwrap(), u);
        assert_eq!(OrePoly::one(&twist).mul(&u).unwrap(), u);
    }

    #[test]
    fn associativity_of_x_powers_on_t() {
        let c = ctx(2);
        let twist = SigmaDerivation::new(&c, LaurentPoly::one());
        let x = OrePoly::x(&twist);
        let t = OrePoly::scalar(&twist, LaurentPoly::t_pow(1));
        let left = x.mul(&x).unwrap().mul(&t).unwrap();
        let right = x.mul(&x.mul(&t).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn degree_law() {
        let c = ctx(3);
        let twist = SigmaDerivation::new(&c, c.g().clone());
        let u = OrePoly::from_coeffs(
            &twist,
            [(2, LaurentPoly::t_pow(1)), (0, LaurentPoly::one())],
        );
        let v = OrePoly::from_coeffs(
            &twist,
            [(3, LaurentPoly::t_pow(-2)), (1, LaurentPoly::t_pow(2))],
        );
        let prod = u.mul(&v).unwrap();
        assert_eq!(prod.x_degree(), Some(5));
    }

    #[test]
    fn mismatched_twists_rejected() {
        let c = ctx(2);
        let t1 = SigmaDerivation::new(&c, LaurentPoly::one());
        let t2 = SigmaDerivation::new(&c, c.g().clone());
        let err = OrePoly::x(&t1).mul(&OrePoly::x(&t2)).unwrap_err();
        assert_eq!(err, Error::ContextMismatch);
    }

    #[test]
    fn untwist_example() {
        // twist = t (id - sigma), witness p = t: tau(X t) = q t^2 Y + t^2
        let c = ctx(2);
        let twist = SigmaDerivation::inner_from(&c, &LaurentPoly::t_pow(1));
        let x = OrePoly::x(&twist);
        let t = OrePoly::scalar(&twist, LaurentPoly::t_pow(1));
        let xt = x.mul(&t).unwrap();
        let image = xt.untwist().unwrap();
        assert_eq!(image.coeff(1), LaurentPoly::monomial(2, q()));
        assert_eq!(image.coeff(0), LaurentPoly::t_pow(2));
        // and tau is multiplicative on this pair
        let lhs = x.untwist().unwrap().mul(&t.untwist().unwrap()).unwrap();
        assert_eq!(image, lhs);
    }

    #[test]
    fn untwist_fixes_base_ring() {
        let c = ctx(2);
        let twist = SigmaDerivation::inner_from(&c, &LaurentPoly::t_pow(1));
        let a = LaurentPoly::t_pow(-2) + LaurentPoly::monomial(1, q());
        let image = OrePoly::scalar(&twist, a.clone()).untwist().unwrap();
        assert_eq!(image.coeff(0), a);
        assert_eq!(image.x_degree(), Some(0));
        assert!(OrePoly::one(&twist).untwist().unwrap().coeff(0).is_one());
    }

    #[test]
    fn untwist_requires_inner_twist() {
        let c = ctx(2);
        let twist = SigmaDerivation::new(&c, LaurentPoly::one());
        assert_eq!(
            OrePoly::x(&twist).untwist().unwrap_err(),
            Error::NotInnerTwist
        );
    }

    #[test]
    fn untwist_is_multiplicative() {
        for s in [-2i64, 0, 2, 3] {
            let c = ctx(s);
            for p in [LaurentPoly::one(), LaurentPoly::t_pow(1)] {
                let twist = SigmaDerivation::inner_from(&c, &p);
                let u = OrePoly::from_coeffs(
                    &twist,
                    [(2, LaurentPoly::t_pow(1)), (0, LaurentPoly::t_pow(-1))],
                );
                let v = OrePoly::from_coeffs(
                    &twist,
                    [(1, LaurentPoly::monomial(1, q())), (0, LaurentPoly::one())],
                );
                let lhs = u.mul(&v).unwrap().untwist().unwrap();
                let rhs = u.untwist().unwrap().mul(&v.untwist().unwrap()).unwrap();
                assert_eq!(lhs, rhs, "s = {s}, p = {p}");
            }
        }
    }
}
