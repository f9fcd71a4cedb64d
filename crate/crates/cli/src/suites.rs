//! Verification suites over a twist context.
//!
//! Each suite checks a family of identities over the configured window and
//! returns an ordered claim list. Randomized checks draw from a seeded
//! generator with exponents inside the window and coefficients from a
//! small fixed palette, so runs are fully deterministic. Claims are
//! asserted where the identity is established and run in report mode
//! (status `skipped`, deviations enumerated in the evidence) where the
//! stated form is known to disagree with the direct bracket.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qwitt_core::canonical::{
    congruent_mod_inner, mod_inner_bracket, mod_inner_bracket_g, reduce_basis, CanonicalForm,
    GradedSplit,
};
use qwitt_core::derivation::{
    bracket_closed_form, bracket_four_case, inner_bracket_witness, skew_holds,
    twisted_jacobi_holds, SigmaDerivation,
};
use qwitt_core::ore::OrePoly;
use qwitt_core::ssets::{check_inclusion_chain, verify_theorem_ssets, Claim};
use qwitt_core::{LaurentPoly, QMode, QRational, TwistContext};

use crate::report::{claim_from_check, skipped};

/// Configuration of one verification run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub s: i64,
    pub qmode: QMode,
    pub window: (i64, i64),
    pub seed: u64,
}

impl RunConfig {
    pub fn new(s: i64) -> RunConfig {
        RunConfig {
            s,
            qmode: QMode::Formal,
            window: (-6, 6),
            seed: 0,
        }
    }

    pub fn with_window(mut self, lo: i64, hi: i64) -> RunConfig {
        self.window = (lo, hi);
        self
    }

    pub fn build_ctx(&self) -> qwitt_core::Result<Arc<TwistContext>> {
        Ok(Arc::new(TwistContext::new(self.s, self.qmode.clone())?))
    }
}

/// The suite names accepted by `verify --suite`, in execution order.
pub const SUITE_NAMES: &[&str] = &[
    "skew",
    "jacobi",
    "three-way",
    "decomp",
    "grading",
    "mod-inner",
    "ssets",
    "ore",
];

pub fn run_suite(name: &str, ctx: &Arc<TwistContext>, cfg: &RunConfig) -> Option<Vec<Claim>> {
    match name {
        "skew" => Some(suite_skew(ctx, cfg)),
        "jacobi" => Some(suite_jacobi(ctx, cfg)),
        "three-way" => Some(suite_three_way(ctx, cfg)),
        "decomp" => Some(suite_decomp(ctx, cfg)),
        "grading" => Some(suite_grading(ctx, cfg)),
        "mod-inner" => Some(suite_mod_inner(ctx, cfg)),
        "ssets" => Some(suite_ssets(ctx, cfg)),
        "ore" => Some(suite_ore(ctx, cfg)),
        _ => None,
    }
}

pub fn run_all(ctx: &Arc<TwistContext>, cfg: &RunConfig) -> Vec<Claim> {
    SUITE_NAMES
        .iter()
        .flat_map(|name| run_suite(name, ctx, cfg).expect("known suite"))
        .collect()
}

/// Seeded generator for windowed random polynomials.
pub struct Sampler {
    rng: ChaCha8Rng,
    window: (i64, i64),
    palette: Vec<QRational>,
}

impl Sampler {
    pub fn new(seed: u64, window: (i64, i64), ctx: &TwistContext) -> Sampler {
        let q = ctx.q().clone();
        let q_inv = q.inv().expect("q nonzero");
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            window,
            palette: vec![
                QRational::one(),
                -QRational::one(),
                QRational::from_int(2),
                QRational::from_int(-2),
                QRational::from_ratio(1, 2),
                QRational::from_ratio(-1, 2),
                q,
                q_inv,
            ],
        }
    }

    pub fn coeff(&mut self) -> QRational {
        let i = self.rng.random_range(0..self.palette.len());
        self.palette[i].clone()
    }

    pub fn exponent(&mut self) -> i64 {
        self.rng.random_range(self.window.0..=self.window.1)
    }

    pub fn laurent(&mut self, max_terms: usize) -> LaurentPoly {
        let n = self.rng.random_range(0..=max_terms);
        LaurentPoly::from_terms((0..n).map(|_| (self.exponent(), self.coeff())))
    }

    pub fn nonzero_laurent(&mut self, max_terms: usize) -> LaurentPoly {
        loop {
            let p = self.laurent(max_terms);
            if !p.is_zero() {
                return p;
            }
        }
    }
}

fn window_iter(cfg: &RunConfig) -> impl Iterator<Item = i64> + Clone {
    cfg.window.0..=cfg.window.1
}

fn suite_skew(ctx: &Arc<TwistContext>, cfg: &RunConfig) -> Vec<Claim> {
    let mut failure = None;
    let mut count = 0usize;
    'outer: for n in window_iter(cfg) {
        for m in window_iter(cfg) {
            let dn = SigmaDerivation::basis(ctx, n);
            let dm = SigmaDerivation::basis(ctx, m);
            count += 1;
            if !skew_holds(&dn, &dm).expect("same context") {
                failure = Some(format!("skew-symmetry fails at (n, m) = ({n}, {m})"));
                break 'outer;
            }
        }
    }
    let basis = claim_from_check(
        "skew/basis-pairs",
        failure,
        format!("checked {count} basis pairs"),
    );

    let mut sampler = Sampler::new(cfg.seed, cfg.window, ctx);
    let mut failure = None;
    for i in 0..50 {
        let a = SigmaDerivation::new(ctx, sampler.laurent(3));
        let b = SigmaDerivation::new(ctx, sampler.laurent(3));
        if !skew_holds(&a, &b).expect("same context") {
            failure = Some(format!(
                "skew-symmetry fails on random pair {i}: a = {}, b = {}",
                a.coeff(),
                b.coeff()
            ));
            break;
        }
    }
    let random = claim_from_check(
        "skew/random-pairs",
        failure,
        "checked 50 random pairs".into(),
    );
    vec![basis, random]
}

fn suite_jacobi(ctx: &Arc<TwistContext>, cfg: &RunConfig) -> Vec<Claim> {
    let mut failure = None;
    let mut count = 0usize;
    'outer: for i in window_iter(cfg) {
        for j in window_iter(cfg) {
            for k in window_iter(cfg) {
                let a = SigmaDerivation::new(ctx, LaurentPoly::t_pow(i));
                let b = SigmaDerivation::new(ctx, LaurentPoly::t_pow(j));
                let c = SigmaDerivation::new(ctx, LaurentPoly::t_pow(k));
                count += 1;
                if !twisted_jacobi_holds(&a, &b, &c).expect("same context") {
                    failure = Some(format!(
                        "six-term identity fails at (i, j, k) = ({i}, {j}, {k})"
                    ));
                    break 'outer;
                }
            }
        }
    }
    vec![claim_from_check(
        "jacobi/monomial-triples",
        failure,
        format!("checked {count} monomial triples"),
    )]
}

fn suite_three_way(ctx: &Arc<TwistContext>, cfg: &RunConfig) -> Vec<Claim> {
    let mut four_failure = None;
    let mut closed_failure = None;
    let mut count = 0usize;
    for n in window_iter(cfg) {
        for m in window_iter(cfg) {
            let direct = SigmaDerivation::basis(ctx, n)
                .bracket(&SigmaDerivation::basis(ctx, m))
                .expect("same context");
            count += 1;
            if four_failure.is_none() && direct != bracket_four_case(ctx, n, m) {
                four_failure = Some(format!("four-case formula differs at ({n}, {m})"));
            }
            if ctx.s() >= 1 && closed_failure.is_none() {
                let closed = bracket_closed_form(ctx, n, m).expect("s >= 1");
                if direct != closed {
                    closed_failure = Some(format!("closed form differs at ({n}, {m})"));
                }
            }
        }
    }
    let four = claim_from_check(
        "three-way/four-case",
        four_failure,
        format!("direct bracket matches the four-case formula on {count} pairs"),
    );
    let closed = if ctx.s() >= 1 {
        claim_from_check(
            "three-way/closed-form",
            closed_failure,
            format!("direct bracket matches the T-integer closed form on {count} pairs"),
        )
    } else {
        skipped(
            "three-way/closed-form",
            "closed form gated to s >= 1; the direct bracket is normative for s < 1".into(),
        )
    };
    vec![four, closed]
}

fn suite_decomp(ctx: &Arc<TwistContext>, cfg: &RunConfig) -> Vec<Claim> {
    let mut sampler = Sampler::new(cfg.seed, cfg.window, ctx);
    let mut round_failure = None;
    let mut agree_failure = None;
    for i in 0..100 {
        let coeff = sampler.laurent(4);
        let d = SigmaDerivation::new(ctx, coeff.clone());
        let fast = CanonicalForm::of(&d);
        if round_failure.is_none() && fast.reassemble(ctx) != coeff {
            round_failure = Some(format!("reassembly differs on sample {i}: {coeff}"));
        }
        if agree_failure.is_none() && CanonicalForm::of_iterative(&d) != fast {
            agree_failure = Some(format!(
                "the two reduction paths differ on sample {i}: {coeff}"
            ));
        }
    }
    let zero_ok = CanonicalForm::of(&SigmaDerivation::zero(ctx)).is_zero();
    vec![
        claim_from_check(
            "decomp/round-trip",
            round_failure,
            "reassembled 100 random coefficients exactly".into(),
        ),
        claim_from_check(
            "decomp/two-paths-agree",
            agree_failure,
            "modular rewrite and iterative reduction agree on 100 samples".into(),
        ),
        claim_from_check(
            "decomp/zero",
            if zero_ok {
                None
            } else {
                Some("zero derivation has a nonzero decomposition".into())
            },
            "zero decomposes to zero".into(),
        ),
    ]
}

fn suite_grading(ctx: &Arc<TwistContext>, cfg: &RunConfig) -> Vec<Claim> {
    let mut sampler = Sampler::new(cfg.seed, cfg.window, ctx);
    let mut reassemble_failure = None;
    for i in 0..100 {
        let coeff = sampler.laurent(4);
        let d = SigmaDerivation::new(ctx, coeff.clone());
        if GradedSplit::of(&d).reassemble(ctx) != coeff {
            reassemble_failure = Some(format!("split does not reassemble sample {i}: {coeff}"));
            break;
        }
    }
    let reassemble = claim_from_check(
        "grading/reassemble",
        reassemble_failure,
        "split and reassembled 100 random coefficients exactly".into(),
    );

    // Homogeneous component k: t^k times a Laurent polynomial in T.
    let d = ctx.d();
    let residues: Vec<i64> = if d == 0 {
        vec![-1, 0, 2]
    } else {
        (0..d).collect()
    };
    let homogeneous = |sampler: &mut Sampler, k: i64| {
        let mut coeff = LaurentPoly::zero();
        while coeff.is_zero() {
            let terms = sampler.rng.random_range(1..=3usize);
            for _ in 0..terms {
                let e = sampler.rng.random_range(-2i64..=2);
                coeff =
                    &coeff + &(&LaurentPoly::t_pow(k) * &ctx.t_power(e)).scale(&sampler.coeff());
            }
        }
        SigmaDerivation::new(ctx, coeff)
    };
    let mut closure_failure = None;
    let mut pairs = 0usize;
    'outer: for &k1 in &residues {
        for &k2 in &residues {
            for _ in 0..20 {
                let a = homogeneous(&mut sampler, k1);
                let b = homogeneous(&mut sampler, k2);
                let br = a.bracket(&b).expect("same context");
                pairs += 1;
                let expected = if d == 0 {
                    k1 + k2
                } else {
                    (k1 + k2).rem_euclid(d)
                };
                let split = GradedSplit::of(&br);
                if split.support().iter().any(|&key| key != expected) {
                    closure_failure = Some(format!(
                        "bracket of residues ({k1}, {k2}) leaks outside component {expected}"
                    ));
                    break 'outer;
                }
            }
        }
    }
    let closure = claim_from_check(
        "grading/closure",
        closure_failure,
        format!("bracket stayed in the sum component on {pairs} homogeneous pairs"),
    );
    vec![reassemble, closure]
}

/// Expected free-part coordinates for `c * d_j` after basis reduction.
fn reduced_coords(ctx: &Arc<TwistContext>, c: &QRational, j: i64) -> Vec<QRational> {
    let d = ctx.d();
    let (scale, i) = reduce_basis(ctx, j).expect("d >= 1");
    let mut coords = vec![QRational::zero(); d as usize];
    coords[i as usize] = c * &scale;
    coords
}

fn coords_negate(coords: &[QRational]) -> Vec<QRational> {
    coords.iter().map(|c| -c).collect()
}

fn suite_mod_inner(ctx: &Arc<TwistContext>, cfg: &RunConfig) -> Vec<Claim> {
    let s = ctx.s();
    let d = ctx.d();
    if d == 0 {
        return vec![skipped(
            "mod-inner/no-free-part",
            "every derivation is inner when s = 1; nothing to reduce".into(),
        )];
    }
    let q = ctx.q().clone();
    let mut claims = Vec::new();

    // Basis shift: d_m = q^-1 d_{m-d} (mod inner) for s >= 1, q d_{m-d} for s < 1.
    let shift_scalar = if s >= 1 {
        q.inv().expect("q nonzero")
    } else {
        q.clone()
    };
    let mut failure = None;
    let mut count = 0usize;
    for m in window_iter(cfg) {
        let dm = SigmaDerivation::basis(ctx, m);
        let shifted = SigmaDerivation::basis(ctx, m - d).scale(&shift_scalar);
        count += 1;
        if !congruent_mod_inner(&dm, &shifted).expect("same context") {
            failure = Some(format!("basis shift congruence fails at m = {m}"));
            break;
        }
    }
    claims.push(claim_from_check(
        "mod-inner/basis-shift",
        failure,
        format!("checked {count} basis shifts"),
    ));

    // Bracket reduction: [d_n, d_m] = (n - m) d_{n+m} (mod inner), n >= 0.
    // Asserted for s >= 1; for s < 1 the direct bracket is normative and
    // deviations from the stated form are enumerated without failing.
    let mut failure = None;
    let mut deviations = Vec::new();
    let mut count = 0usize;
    for n in 0..=cfg.window.1 {
        for m in window_iter(cfg) {
            let oracle = mod_inner_bracket(ctx, n, m).expect("d >= 1");
            let stated = reduced_coords(ctx, &QRational::from_int(n - m), n + m);
            count += 1;
            if oracle == stated {
                continue;
            }
            if s >= 1 {
                failure = Some(format!("bracket reduction differs at ({n}, {m})"));
            } else if oracle == coords_negate(&stated) {
                deviations.push(format!("({n},{m})"));
            } else {
                deviations.push(format!("({n},{m}) [non-sign]"));
            }
        }
        if failure.is_some() {
            break;
        }
    }
    claims.push(if s >= 1 {
        claim_from_check(
            "mod-inner/bracket-reduction",
            failure,
            format!("checked {count} bracket reductions"),
        )
    } else {
        skipped(
            "mod-inner/bracket-reduction",
            format!(
                "report mode for s < 1: {} of {count} reductions flip the stated sign: {}",
                deviations.len(),
                deviations.join(" ")
            ),
        )
    });

    // [d_0, d_1] = -d_1 exactly (not just mod inner) for every s >= 2,
    // through both the direct bracket and the closed form.
    if s >= 2 {
        let direct = SigmaDerivation::basis(ctx, 0)
            .bracket(&SigmaDerivation::basis(ctx, 1))
            .expect("same context");
        let minus_d1 = SigmaDerivation::basis(ctx, 1).scale(&-QRational::one());
        let closed = bracket_closed_form(ctx, 0, 1).expect("s >= 1");
        let ok = direct == minus_d1 && closed == minus_d1;
        claims.push(claim_from_check(
            "mod-inner/exact-d0-d1",
            if ok {
                None
            } else {
                Some(format!("[d_0, d_1] = {} is not -d_1", direct.coeff()))
            },
            "[d_0, d_1] equals -d_1 exactly, by bracket and closed form".into(),
        ));
    } else {
        let direct = SigmaDerivation::basis(ctx, 0)
            .bracket(&SigmaDerivation::basis(ctx, 1))
            .expect("same context");
        let minus_d1 = SigmaDerivation::basis(ctx, 1).scale(&-QRational::one());
        claims.push(skipped(
            "mod-inner/exact-d0-d1",
            format!(
                "report mode for s < 1: [d_0, d_1] = {}, equality with -d_1 {}",
                direct.coeff(),
                if direct == minus_d1 {
                    "holds"
                } else {
                    "does not hold"
                }
            ),
        ));
    }

    // Reduced bracket on index pairs 0 <= n < m < d: (n - m) d_{n+m} when
    // n + m < d; then (n - m)/q d_{n+m-d} for s >= 1 and q (n - m) for s < 1.
    let mut failure = None;
    let mut deviations = Vec::new();
    let mut count = 0usize;
    for n in 0..d {
        for m in (n + 1)..d {
            let oracle = mod_inner_bracket(ctx, n, m).expect("d >= 1");
            let nm = QRational::from_int(n - m);
            let stated = if n + m < d {
                let mut coords = vec![QRational::zero(); d as usize];
                coords[(n + m) as usize] = nm;
                coords
            } else {
                let scale = if s >= 1 {
                    nm.checked_div(&q).expect("q nonzero")
                } else {
                    &nm * &q
                };
                let mut coords = vec![QRational::zero(); d as usize];
                coords[(n + m - d) as usize] = scale;
                coords
            };
            count += 1;
            if oracle == stated {
                continue;
            }
            if s > 1 {
                failure = Some(format!("case formula differs at ({n}, {m})"));
            } else if oracle == coords_negate(&stated) {
                deviations.push(format!("({n},{m})"));
            } else {
                deviations.push(format!("({n},{m}) [non-sign]"));
            }
        }
    }
    claims.push(if s > 1 {
        claim_from_check(
            "mod-inner/low-index-pairs",
            failure,
            if count == 0 {
                "no index pairs below d".into()
            } else {
                format!("checked {count} index pairs")
            },
        )
    } else {
        skipped(
            "mod-inner/low-index-pairs",
            if count == 0 {
                "report mode for s < 1: no index pairs below d".into()
            } else {
                format!(
                    "report mode for s < 1: {} of {count} pairs flip the stated sign: {}",
                    deviations.len(),
                    deviations.join(" ")
                )
            },
        )
    });

    // [d_n, g d_m] reduces to a single basis term d q^{-eps p} d_{n+m-pd}
    // with eps = sign(s - 1) and p the floor of (n+m)/d. Magnitude, q-power
    // and index follow the stated form for every s; the overall sign is
    // fixed by the oracle: + for s > 1 (diverging from the stated -) and
    // - for s < 1 (agreeing with it).
    let eps = (s - 1).signum();
    let mut failure = None;
    let mut sign_notes = Vec::new();
    let mut count = 0usize;
    for n in 0..d {
        for m in window_iter(cfg) {
            let oracle = mod_inner_bracket_g(ctx, n, m).expect("0 <= n < d");
            let p = (n + m).div_euclid(d);
            let idx = (n + m - p * d) as usize;
            let magnitude = &QRational::from_int(d) * &q.pow(-eps * p);
            let mut plus = vec![QRational::zero(); d as usize];
            plus[idx] = magnitude.clone();
            let minus = coords_negate(&plus);
            count += 1;
            if s > 1 {
                if oracle != plus {
                    failure = Some(format!(
                        "reduction of [d_{n}, g d_{m}] is not +{d} q^{}d_{idx}",
                        -eps * p
                    ));
                    break;
                }
            } else if oracle == minus {
                // stated sign confirmed for s < 1
            } else if oracle == plus {
                sign_notes.push(format!("({n},{m}) sign +"));
            } else {
                sign_notes.push(format!("({n},{m}) [non-sign]"));
            }
        }
        if failure.is_some() {
            break;
        }
    }
    claims.push(if s > 1 {
        claim_from_check(
            "mod-inner/g-bracket",
            failure,
            format!("checked {count} pairs; oracle sign is + where the stated form says -"),
        )
    } else {
        skipped(
            "mod-inner/g-bracket",
            if sign_notes.is_empty() {
                format!("report mode for s < 1: stated sign - confirmed on all {count} pairs")
            } else {
                format!(
                    "report mode for s < 1: deviations on {count} pairs: {}",
                    sign_notes.join(" ")
                )
            },
        )
    });

    claims
}

fn suite_ssets(ctx: &Arc<TwistContext>, cfg: &RunConfig) -> Vec<Claim> {
    let mut claims = verify_theorem_ssets(ctx, cfg.window).claims;
    let chain = check_inclusion_chain(ctx, cfg.window);
    claims.push(claim_from_check(
        "inclusion-chain",
        if chain {
            None
        } else {
            Some("windowed inclusion chain fails".into())
        },
        "derived space inside inner inside both stabilizer sets (windowed)".into(),
    ));
    claims
}

fn random_ore(sampler: &mut Sampler, twist: &SigmaDerivation, max_deg: u32) -> OrePoly {
    let deg = sampler.rng.random_range(0..=max_deg);
    OrePoly::from_coeffs(twist, (0..=deg).map(|i| (i, sampler.laurent(2))))
}

fn suite_ore(ctx: &Arc<TwistContext>, cfg: &RunConfig) -> Vec<Claim> {
    let twists = [
        ("Delta", LaurentPoly::one()),
        ("g*Delta", ctx.g().clone()),
        ("t*Delta", LaurentPoly::t_pow(1)),
    ];
    // Exponents scale by s^j under X^j, so keep X-degrees low enough that
    // triple products stay small for fast-expanding endomorphisms.
    let max_deg: u32 = if ctx.s().abs() <= 2 { 2 } else { 1 };

    let mut assoc_failure = None;
    let mut degree_failure = None;
    let mut count = 0usize;
    'twists: for (name, coeff) in &twists {
        let twist = SigmaDerivation::new(ctx, coeff.clone());
        let mut sampler = Sampler::new(cfg.seed, (-2, 2), ctx);
        for i in 0..50 {
            let u = random_ore(&mut sampler, &twist, max_deg);
            let v = random_ore(&mut sampler, &twist, max_deg);
            let w = random_ore(&mut sampler, &twist, max_deg);
            count += 1;
            let left = u.mul(&v).expect("same twist").mul(&w).expect("same twist");
            let right = u.mul(&v.mul(&w).expect("same twist")).expect("same twist");
            if left != right {
                assoc_failure = Some(format!(
                    "associativity fails for twist {name} on sample {i}"
                ));
                break 'twists;
            }
            if degree_failure.is_none() {
                if let (Some(du), Some(dv)) = (u.x_degree(), v.x_degree()) {
                    let prod = u.mul(&v).expect("same twist");
                    if prod.x_degree() != Some(du + dv) {
                        degree_failure =
                            Some(format!("degree law fails for twist {name} on sample {i}"));
                    }
                }
            }
        }
    }
    let assoc = claim_from_check(
        "ore/associativity",
        assoc_failure,
        format!("checked {count} triples across 3 twists"),
    );
    let degree = claim_from_check(
        "ore/degree-law",
        degree_failure,
        "X-degrees add under multiplication on all sampled nonzero pairs".into(),
    );

    let mut sampler = Sampler::new(cfg.seed, (-2, 2), ctx);
    let mut untwist_failure = None;
    for i in 0..50 {
        let p = sampler.nonzero_laurent(2);
        let twist = SigmaDerivation::inner_from(ctx, &p);
        let u = random_ore(&mut sampler, &twist, max_deg);
        let v = random_ore(&mut sampler, &twist, max_deg);
        let lhs = u
            .mul(&v)
            .expect("same twist")
            .untwist()
            .expect("inner twist");
        let rhs = u
            .untwist()
            .expect("inner twist")
            .mul(&v.untwist().expect("inner twist"))
            .expect("same twist");
        if lhs != rhs {
            untwist_failure = Some(format!("untwisting is not multiplicative on sample {i}"));
            break;
        }
        if i == 0 {
            let one = OrePoly::one(&twist).untwist().expect("inner twist");
            if !one.coeff(0).is_one() || one.x_degree() != Some(0) {
                untwist_failure = Some("untwisting does not fix 1".into());
                break;
            }
        }
    }
    let untwist = claim_from_check(
        "ore/untwist-multiplicative",
        untwist_failure,
        "checked 50 random pairs with inner twists".into(),
    );

    vec![assoc, degree, untwist]
}

/// Inner-closure witness checks shared by the acceptance suite: the
/// bracket of two inner derivations with witnesses (p, r) is inner with
/// the exact witness given by both stated forms.
pub fn inner_closure_check(
    ctx: &Arc<TwistContext>,
    sampler: &mut Sampler,
    samples: usize,
) -> Result<usize, String> {
    for i in 0..samples {
        let p = sampler.laurent(3);
        let r = sampler.laurent(3);
        let witness = inner_bracket_witness(ctx, &p, &r);
        let br = SigmaDerivation::inner_from(ctx, &p)
            .bracket(&SigmaDerivation::inner_from(ctx, &r))
            .expect("same context");
        let extracted = br
            .inner_witness()
            .ok_or_else(|| format!("bracket of inner pair {i} is not inner"))?;
        if extracted != witness {
            return Err(format!("witness mismatch on sample {i}: p = {p}, r = {r}"));
        }
    }
    Ok(samples)
}
