//! Randomized algebraic properties: field axioms for the scalars, ring and
//! domain laws for Laurent polynomials, and the derivation identities that
//! must hold for every twist context.

use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;

use qwitt_core::canonical::CanonicalForm;
use qwitt_core::derivation::{inner_bracket_witness, SigmaDerivation};
use qwitt_core::{LaurentPoly, QRational, TwistContext};

fn arb_scalar() -> impl Strategy<Value = QRational> {
    prop_oneof![
        Just(QRational::one()),
        Just(-QRational::one()),
        Just(QRational::from_int(2)),
        Just(QRational::from_ratio(-1, 2)),
        Just(QRational::q()),
        Just(QRational::q_power(-1)),
        Just(QRational::one() + QRational::q()),
    ]
}

fn arb_qrational() -> impl Strategy<Value = QRational> {
    // Sums and quotients of pool elements give denominators beyond
    // monomials, exercising normalization.
    (arb_scalar(), arb_scalar(), arb_scalar()).prop_map(|(a, b, c)| {
        let num = &a + &b;
        let den = &c + &QRational::from_int(3);
        num.checked_div(&den).expect("den nonzero by construction")
    })
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, arb_scalar()), 0..4).prop_map(LaurentPoly::from_terms)
}

fn arb_nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    (arb_laurent(), -6i64..=6, arb_scalar()).prop_map(|(p, e, c)| {
        if p.is_zero() {
            let c = if c.is_zero() { QRational::one() } else { c };
            LaurentPoly::monomial(e, c)
        } else {
            p
        }
    })
}

fn grid_ctx() -> impl Strategy<Value = Arc<TwistContext>> {
    prop_oneof![
        Just(-3i64),
        Just(-2i64),
        Just(-1i64),
        Just(0i64),
        Just(1i64),
        Just(2i64),
        Just(3i64),
        Just(4i64),
    ]
    .prop_map(|s| Arc::new(TwistContext::formal(s).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_axioms(a in arb_qrational(), b in arb_qrational(), c in arb_qrational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, QRational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), QRational::one());
        }
    }

    #[test]
    fn scalar_eval_is_multiplicative(a in arb_qrational(), b in arb_qrational()) {
        let q0 = BigRational::new(2.into(), 3.into());
        let prod = (&a * &b).eval_at(&q0);
        if let (Ok(va), Ok(vb), Ok(vp)) = (a.eval_at(&q0), b.eval_at(&q0), prod) {
            prop_assert_eq!(vp, va * vb);
        }
    }

    #[test]
    fn laurent_is_a_domain(f in arb_nonzero_laurent(), g in arb_nonzero_laurent()) {
        let p = &f * &g;
        prop_assert!(!p.is_zero());
        prop_assert_eq!(p.degree().unwrap(), f.degree().unwrap() + g.degree().unwrap());
        prop_assert_eq!(p.valuation().unwrap(), f.valuation().unwrap() + g.valuation().unwrap());
    }

    #[test]
    fn exact_division_round_trip(f in arb_laurent(), g in arb_nonzero_laurent()) {
        let prod = &f * &g;
        let back = prod.exact_div(&g).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn euclid_division_round_trip(f in arb_laurent(), g in arb_nonzero_laurent()) {
        let f = f.shift(f.valuation().map_or(0, |v| -v.min(0)));
        let g = g.shift(-g.valuation().unwrap().min(0));
        let (quot, rem) = f.euclid_div(&g).unwrap();
        prop_assert_eq!(&(&quot * &g) + &rem, f);
        if let Some(dr) = rem.degree() {
            prop_assert!(dr < g.degree().unwrap());
        }
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(f in arb_laurent(), g in arb_laurent()) {
        let c = QRational::q();
        for e in [-2i64, 0, 2] {
            let sum = (&f + &g).substitute(&c, e).unwrap();
            prop_assert_eq!(sum, &f.substitute(&c, e).unwrap() + &g.substitute(&c, e).unwrap());
            let prod = (&f * &g).substitute(&c, e).unwrap();
            prop_assert_eq!(prod, &f.substitute(&c, e).unwrap() * &g.substitute(&c, e).unwrap());
        }
    }

    #[test]
    fn generator_satisfies_leibniz(ctx in grid_ctx(), f in arb_laurent(), g in arb_laurent()) {
        let lhs = ctx.delta(&(&f * &g));
        let rhs = &ctx.sigma(&f) * &ctx.delta(&g) + &ctx.delta(&f) * &g;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetry_identity_holds(ctx in grid_ctx(), f in arb_laurent(), h in arb_laurent()) {
        let lhs = (&f - &ctx.sigma(&f)) * ctx.delta(&h);
        let rhs = (&h - &ctx.sigma(&h)) * ctx.delta(&f);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_bilinear(ctx in grid_ctx(), a in arb_laurent(), b in arb_laurent(), c in arb_laurent(), lam in arb_scalar()) {
        let da = SigmaDerivation::new(&ctx, a.clone());
        let db = SigmaDerivation::new(&ctx, b.clone());
        let dc = SigmaDerivation::new(&ctx, c.clone());
        let combo = SigmaDerivation::new(&ctx, &a.scale(&lam) + &b);
        let lhs = combo.bracket(&dc).unwrap();
        let rhs = &da.bracket(&dc).unwrap().coeff().scale(&lam) + db.bracket(&dc).unwrap().coeff();
        prop_assert_eq!(lhs.coeff(), &rhs);
    }

    #[test]
    fn inner_bracket_closes_with_exact_witness(ctx in grid_ctx(), p in arb_laurent(), r in arb_laurent()) {
        let dp = SigmaDerivation::inner_from(&ctx, &p);
        let dr = SigmaDerivation::inner_from(&ctx, &r);
        let br = dp.bracket(&dr).unwrap();
        let witness = inner_bracket_witness(&ctx, &p, &r);
        if br.is_zero() {
            prop_assert!(witness.is_zero());
        } else {
            prop_assert_eq!(br.inner_witness().unwrap(), witness);
        }
    }

    #[test]
    fn canonical_form_round_trips(ctx in grid_ctx(), coeff in arb_laurent()) {
        let d = SigmaDerivation::new(&ctx, coeff.clone());
        let fast = CanonicalForm::of(&d);
        prop_assert_eq!(fast.reassemble(&ctx), coeff);
        prop_assert_eq!(CanonicalForm::of_iterative(&d), fast);
    }

    #[test]
    fn inner_iff_divisible_by_one_minus_t(ctx in grid_ctx(), coeff in arb_laurent()) {
        let d = SigmaDerivation::new(&ctx, coeff.clone());
        let one_minus_t = &LaurentPoly::one() - ctx.t_monomial();
        prop_assert_eq!(d.is_inner(), coeff.exact_div(&one_minus_t).is_ok());
    }
}
