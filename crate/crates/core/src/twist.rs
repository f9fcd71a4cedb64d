//! The endomorphism sigma(t) = q t^s and its derived data.
//!
//! A [`TwistContext`] fixes the pair (s, q) and precomputes the canonical
//! objects attached to it: the gcd generator g = 1 - lambda t^d of the image
//! of (id - sigma), the exponent d = |s - 1|, the monomial T = q t^{s-1},
//! the twist factor delta with `Delta o sigma = delta * sigma o Delta`, and
//! the generator Delta = (id - sigma)/g of the rank-one module of twisted
//! derivations.
//!
//! `q` is either the formal generator of Q(q) or a fixed nonzero rational;
//! in the latter case every scalar in the context is a constant and all
//! computations specialize transparently.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalars::QRational;

/// Whether q stays formal or is pinned to a nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QMode {
    Formal,
    Specialized(BigRational),
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Formal => write!(f, "formal"),
            QMode::Specialized(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwistContext {
    s: i64,
    qmode: QMode,
    q: QRational,
    g: LaurentPoly,
    d: i64,
    lambda: QRational,
    t_monomial: LaurentPoly,
    delta_factor: LaurentPoly,
}

impl PartialEq for TwistContext {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && self.q == other.q
    }
}

impl Eq for TwistContext {}

impl TwistContext {
    /// Build the context for sigma(t) = q t^s. Rejects the identity
    /// endomorphism (s = 1 with q specialized to 1) and q = 0.
    pub fn new(s: i64, qmode: QMode) -> Result<TwistContext> {
        let q = match &qmode {
            QMode::Formal => QRational::q(),
            QMode::Specialized(r) => {
                if r.is_zero() {
                    return Err(Error::ZeroQ);
                }
                QRational::from_big(r.clone())
            }
        };
        if s == 1 && q.is_one() {
            return Err(Error::SigmaIsIdentity);
        }
        let d = (s - 1).abs();
        let lambda = if s >= 1 {
            q.clone()
        } else {
            q.inv().expect("q nonzero")
        };
        // g = 1 - lambda t^d, a polynomial with g(0) = 1 (a unit scalar
        // 1 - q when s = 1).
        let g = LaurentPoly::one() - LaurentPoly::monomial(d, lambda.clone());
        let t_monomial = LaurentPoly::monomial(s - 1, q.clone());
        let sigma_g = g.substitute(&q, s).expect("q nonzero");
        let delta_factor = sigma_g.exact_div(&g).expect("gcd convention violated");
        Ok(TwistContext {
            s,
            qmode,
            q,
            g,
            d,
            lambda,
            t_monomial,
            delta_factor,
        })
    }

    pub fn formal(s: i64) -> Result<TwistContext> {
        TwistContext::new(s, QMode::Formal)
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn qmode(&self) -> &QMode {
        &self.qmode
    }

    /// The scalar q of the context (the generator of Q(q), or a constant).
    pub fn q(&self) -> &QRational {
        &self.q
    }

    /// g = 1 - lambda t^d, the normalized gcd of the image of (id - sigma).
    pub fn g(&self) -> &LaurentPoly {
        &self.g
    }

    /// d = |s - 1|, the degree of g and the modulus of the grading.
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn lambda(&self) -> &QRational {
        &self.lambda
    }

    /// The monomial T = q t^{s-1}.
    pub fn t_monomial(&self) -> &LaurentPoly {
        &self.t_monomial
    }

    /// delta = sigma(g)/g, the twist factor of the bracket's Jacobi identity.
    pub fn delta_factor(&self) -> &LaurentPoly {
        &self.delta_factor
    }

    /// Apply sigma: the ring endomorphism t -> q t^s, fixing scalars.
    pub fn sigma(&self, f: &LaurentPoly) -> LaurentPoly {
        f.substitute(&self.q, self.s).expect("q nonzero")
    }

    /// Apply the generator Delta = (id - sigma)/g.
    ///
    /// Per monomial, (id - sigma)(t^e) = t^e (1 - T^e), so the exact
    /// quotient by g is t^e {e}_T when g = 1 - T (s >= 1) and
    /// -T t^e {e}_T when g = 1 - T^-1 (s < 1); quotients in a domain are
    /// unique, so this is the same element as the Euclidean division.
    pub fn delta(&self, f: &LaurentPoly) -> LaurentPoly {
        let mut terms = Vec::new();
        for (e, c) in f.terms() {
            for (ge, gc) in self.t_integer(e).terms() {
                terms.push((e + ge, c * gc));
            }
        }
        let mut out = LaurentPoly::from_terms(terms);
        if self.s < 1 {
            out = &out * &(-self.t_monomial.clone());
        }
        out
    }

    /// The T-integer {n}_T = (T^n - 1)/(T - 1) as a geometric sum:
    /// {0}_T = 0, {n}_T = sum_{k=0}^{n-1} T^k for n > 0 and
    /// {n}_T = -sum_{k=n}^{-1} T^k for n < 0.
    pub fn t_integer(&self, n: i64) -> LaurentPoly {
        if n >= 0 {
            LaurentPoly::from_terms((0..n).map(|k| (k * (self.s - 1), self.q.pow(k))))
        } else {
            LaurentPoly::from_terms((n..0).map(|k| (k * (self.s - 1), -self.q.pow(k))))
        }
    }

    /// T^k as an element of A.
    pub fn t_power(&self, k: i64) -> LaurentPoly {
        LaurentPoly::monomial(k * (self.s - 1), self.q.pow(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::gcd_list;
    use num_traits::One;

    fn q() -> QRational {
        QRational::q()
    }

    #[test]
    fn context_s2() {
        let ctx = TwistContext::formal(2).unwrap();
        assert_eq!(
            ctx.g(),
            &(LaurentPoly::one() - LaurentPoly::monomial(1, q()))
        );
        assert_eq!(ctx.d(), 1);
        assert_eq!(ctx.lambda(), &q());
        assert_eq!(ctx.t_monomial(), &LaurentPoly::monomial(1, q()));
        // delta = (1 - q^2 t^2)/(1 - q t) = 1 + q t
        assert_eq!(
            ctx.delta_factor(),
            &(LaurentPoly::one() + LaurentPoly::monomial(1, q()))
        );
    }

    #[test]
    fn context_s0_has_vanishing_delta_factor() {
        let ctx = TwistContext::formal(0).unwrap();
        assert_eq!(
            ctx.g(),
            &(LaurentPoly::one() - LaurentPoly::monomial(1, QRational::q_power(-1)))
        );
        assert!(ctx.sigma(ctx.g()).is_zero());
        assert!(ctx.delta_factor().is_zero());
    }

    #[test]
    fn context_s_minus_1() {
        let ctx = TwistContext::formal(-1).unwrap();
        assert_eq!(
            ctx.g(),
            &(LaurentPoly::one() - LaurentPoly::monomial(2, QRational::q_power(-1)))
        );
        assert_eq!(ctx.d(), 2);
        assert_eq!(ctx.lambda(), &QRational::q_power(-1));
        assert_eq!(ctx.delta_factor(), &LaurentPoly::monomial(-2, -q()));
    }

    #[test]
    fn identity_endomorphism_rejected() {
        assert_eq!(
            TwistContext::new(1, QMode::Specialized(BigRational::one())).err(),
            Some(Error::SigmaIsIdentity)
        );
        assert!(TwistContext::formal(1).is_ok());
    }

    #[test]
    fn zero_q_rejected() {
        assert_eq!(
            TwistContext::new(2, QMode::Specialized(BigRational::zero())).err(),
            Some(Error::ZeroQ)
        );
    }

    #[test]
    fn sigma_examples() {
        let ctx = TwistContext::formal(2).unwrap();
        assert_eq!(
            ctx.sigma(&LaurentPoly::t_pow(1)),
            LaurentPoly::monomial(2, q())
        );
        assert!(ctx.sigma(&LaurentPoly::one()).is_one());
        // sigma(T) = T^2 for s = 2
        assert_eq!(ctx.sigma(ctx.t_monomial()), ctx.t_power(2));
    }

    #[test]
    fn sigma_fixes_t_monomial_power_law() {
        for s in [-3i64, -2, -1, 0, 2, 3, 4] {
            let ctx = TwistContext::formal(s).unwrap();
            assert_eq!(ctx.sigma(ctx.t_monomial()), ctx.t_power(s), "s = {s}");
        }
    }

    #[test]
    fn delta_examples() {
        let ctx = TwistContext::formal(2).unwrap();
        assert_eq!(ctx.delta(&LaurentPoly::t_pow(1)), LaurentPoly::t_pow(1));
        assert!(ctx.delta(&LaurentPoly::one()).is_zero());
        assert!(!ctx.delta(&LaurentPoly::t_pow(1)).is_zero());

        let ctx = TwistContext::formal(-2).unwrap();
        assert_eq!(
            ctx.delta(&LaurentPoly::t_pow(1)),
            LaurentPoly::monomial(-2, -q())
        );
    }

    #[test]
    fn delta_equals_exact_division_by_g() {
        for s in [-3i64, -2, -1, 0, 1, 2, 3, 4] {
            let ctx = TwistContext::formal(s).unwrap();
            let polys = [
                LaurentPoly::t_pow(5),
                LaurentPoly::t_pow(-7),
                LaurentPoly::t_pow(-3)
                    + LaurentPoly::monomial(2, q())
                    + LaurentPoly::monomial(6, QRational::from_ratio(-1, 2)),
            ];
            for f in polys {
                let divided = (&f - &ctx.sigma(&f))
                    .exact_div(ctx.g())
                    .expect("image of id - sigma is divisible by g");
                assert_eq!(ctx.delta(&f), divided, "s = {s}, f = {f}");
            }
        }
    }

    #[test]
    fn operator_identity_on_monomials() {
        // Delta(sigma(t^n)) = delta * sigma(Delta(t^n)) for n in [-8, 8]
        for s in [-3i64, -2, -1, 0, 1, 2, 3, 4] {
            let ctx = TwistContext::formal(s).unwrap();
            for n in -8i64..=8 {
                let f = LaurentPoly::t_pow(n);
                let lhs = ctx.delta(&ctx.sigma(&f));
                let rhs = ctx.delta_factor() * &ctx.sigma(&ctx.delta(&f));
                assert_eq!(lhs, rhs, "s = {s}, n = {n}");
            }
        }
    }

    #[test]
    fn leibniz_rule() {
        for s in [-2i64, 0, 2, 3] {
            let ctx = TwistContext::formal(s).unwrap();
            let f = LaurentPoly::t_pow(-2) + LaurentPoly::monomial(1, q());
            let g = LaurentPoly::t_pow(3) - LaurentPoly::constant(QRational::from_int(2));
            let lhs = ctx.delta(&(&f * &g));
            let rhs = &ctx.sigma(&f) * &ctx.delta(&g) + &ctx.delta(&f) * &g;
            assert_eq!(lhs, rhs, "s = {s}");
        }
    }

    #[test]
    fn symmetry_identity() {
        // (f - sigma(f)) Delta(h) = (h - sigma(h)) Delta(f)
        for s in [-2i64, 0, 2, 3] {
            let ctx = TwistContext::formal(s).unwrap();
            let f = LaurentPoly::t_pow(2) + LaurentPoly::t_pow(-1);
            let h = LaurentPoly::monomial(1, q()) - LaurentPoly::t_pow(4);
            let lhs = (&f - &ctx.sigma(&f)) * ctx.delta(&h);
            let rhs = (&h - &ctx.sigma(&h)) * ctx.delta(&f);
            assert_eq!(lhs, rhs, "s = {s}");
        }
    }

    #[test]
    fn t_integer_examples() {
        let ctx = TwistContext::formal(2).unwrap();
        assert!(ctx.t_integer(1).is_one());
        assert_eq!(
            ctx.t_integer(3),
            LaurentPoly::one()
                + LaurentPoly::monomial(1, q())
                + LaurentPoly::monomial(2, q().pow(2))
        );
        assert_eq!(
            ctx.t_integer(-1),
            LaurentPoly::monomial(-1, -QRational::q_power(-1))
        );
    }

    #[test]
    fn t_integer_recurrences() {
        for s in [-3i64, -1, 0, 2, 4] {
            let ctx = TwistContext::formal(s).unwrap();
            let tm = ctx.t_monomial().clone();
            for n in -8i64..=8 {
                assert_eq!(
                    ctx.t_integer(n + 1),
                    &ctx.t_integer(n) + &ctx.t_power(n),
                    "s = {s}, n = {n}"
                );
                assert_eq!(
                    (&tm - &LaurentPoly::one()) * ctx.t_integer(n),
                    &ctx.t_power(n) - &LaurentPoly::one(),
                    "s = {s}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn windowed_gcd_matches_closed_form() {
        for s in [-3i64, -2, -1, 0, 1, 2, 3, 4] {
            let ctx = TwistContext::formal(s).unwrap();
            let mut fam = Vec::new();
            for n in -8i64..=8 {
                if n == 0 {
                    continue;
                }
                let f = LaurentPoly::t_pow(n);
                fam.push(&f - &ctx.sigma(&f));
            }
            let windowed = gcd_list(&fam).unwrap();
            // Compare up to the gcd normalization (g itself is a unit
            // scalar when s = 1, normalizing to 1).
            let expected = if ctx.d() == 0 {
                LaurentPoly::one()
            } else {
                ctx.g().clone()
            };
            assert_eq!(windowed, expected, "s = {s}");
        }
    }

    #[test]
    fn delta_factor_closed_forms() {
        // delta = {s}_T for s >= 1, and {s}_{T^-1} for s < 1; both checked
        // as derived facts against the exact-division construction.
        for s in [1i64, 2, 3, 4] {
            let ctx = TwistContext::formal(s).unwrap();
            assert_eq!(ctx.delta_factor(), &ctx.t_integer(s), "s = {s}");
        }
        for s in [-3i64, -2, -1, 0] {
            let ctx = TwistContext::formal(s).unwrap();
            // {s}_{T^-1}: geometric sum in the inverse monomial
            let mut acc = LaurentPoly::zero();
            for k in s..0 {
                acc = &acc - &ctx.t_power(-k);
            }
            assert_eq!(ctx.delta_factor(), &acc, "s = {s}");
        }
    }
}
