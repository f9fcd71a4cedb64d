//! Decomposition of sigma-derivations into a finite free part plus an
//! inner derivation, reduction of the bracket modulo inner derivations,
//! and the cyclic grading.
//!
//! For d >= 1 every coefficient f splits uniquely as
//!
//! ```text
//! f = alpha_0 + alpha_1 t + ... + alpha_{d-1} t^{d-1} + h * g
//! ```
//!
//! with scalars alpha_i and h in A. The production path reduces each term
//! `c t^j` with the rewrite `t^d = lambda^-1 (mod g)`; the iterative
//! valuation-raising algorithm is kept as an independent oracle. For d = 0
//! (s = 1, q != 1) the free part is empty and h = f/(1 - q).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::derivation::SigmaDerivation;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalars::QRational;
use crate::twist::TwistContext;

/// The unique decomposition `coeff = sum alpha_i t^i + h g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub alphas: Vec<QRational>,
    pub inner_witness: LaurentPoly,
}

impl CanonicalForm {
    /// Fast reduction via `t^d = lambda^-1 (mod g)`.
    pub fn of(d: &SigmaDerivation) -> CanonicalForm {
        let ctx = d.ctx();
        let dd = ctx.d();
        if dd == 0 {
            let h = d
                .coeff()
                .exact_div(ctx.g())
                .expect("g is a unit scalar when d = 0");
            return CanonicalForm {
                alphas: vec![],
                inner_witness: h,
            };
        }
        let lambda_inv = ctx.lambda().inv().expect("lambda nonzero");
        let mut alphas = vec![QRational::zero(); dd as usize];
        for (j, c) in d.coeff().terms() {
            let i = j.rem_euclid(dd) as usize;
            let p = j.div_euclid(dd);
            alphas[i] = &alphas[i] + &(c * &lambda_inv.pow(p));
        }
        let free: LaurentPoly = LaurentPoly::from_terms(
            alphas
                .iter()
                .enumerate()
                .map(|(i, a)| (i as i64, a.clone())),
        );
        let inner_witness = (d.coeff() - &free)
            .exact_div(ctx.g())
            .expect("reduction leaves a multiple of g");
        CanonicalForm {
            alphas,
            inner_witness,
        }
    }

    /// Oracle path: raise the valuation to 0 by subtracting multiples of
    /// `t^nu g`, then divide Euclideanly by g. Must agree with [`Self::of`].
    pub fn of_iterative(d: &SigmaDerivation) -> CanonicalForm {
        let ctx = d.ctx();
        let g = ctx.g();
        let g0 = g.coeff(0);
        let mut f = d.coeff().clone();
        let mut witness = LaurentPoly::zero();
        while let Some(nu) = f.valuation() {
            if nu >= 0 {
                break;
            }
            let step =
                LaurentPoly::monomial(nu, f.coeff(nu).checked_div(&g0).expect("g(0) nonzero"));
            f = &f - &(&step * g);
            witness = &witness + &step;
        }
        let (quotient, rem) = f.euclid_div(g).expect("f brought to polynomial form");
        witness = &witness + &quotient;
        let mut alphas = vec![QRational::zero(); ctx.d() as usize];
        for (i, c) in rem.terms() {
            alphas[i as usize] = c.clone();
        }
        CanonicalForm {
            alphas,
            inner_witness: witness,
        }
    }

    /// Rebuild the coefficient `sum alpha_i t^i + h g`.
    pub fn reassemble(&self, ctx: &TwistContext) -> LaurentPoly {
        let free = LaurentPoly::from_terms(
            self.alphas
                .iter()
                .enumerate()
                .map(|(i, a)| (i as i64, a.clone())),
        );
        &free + &(&self.inner_witness * ctx.g())
    }

    pub fn is_zero(&self) -> bool {
        self.alphas.iter().all(|a| a.is_zero()) && self.inner_witness.is_zero()
    }

    /// Coordinates of the free part over the basis d_0, ..., d_{d-1}
    /// (the coefficient of d_i is -alpha_i, since d_i = -t^i Delta).
    pub fn basis_coords(&self) -> Vec<QRational> {
        self.alphas.iter().map(|a| -a).collect()
    }
}

/// True when D1 - D2 is inner, i.e. g divides the coefficient difference.
pub fn congruent_mod_inner(d1: &SigmaDerivation, d2: &SigmaDerivation) -> Result<bool> {
    if d1.ctx().as_ref() != d2.ctx().as_ref() {
        return Err(Error::ContextMismatch);
    }
    Ok((d1.coeff() - d2.coeff()).exact_div(d1.ctx().g()).is_ok())
}

/// Reduce a basis index modulo inner derivations: returns (c, i) with
/// 0 <= i < d and `d_m = c d_i (mod inner)`. The scalar is the q-power
/// accumulated by stepping the index by d: q^-1 per step for s >= 1 and
/// q per step for s < 1.
pub fn reduce_basis(ctx: &Arc<TwistContext>, m: i64) -> Result<(QRational, i64)> {
    let d = ctx.d();
    if d == 0 {
        return Err(Error::NoFreePart);
    }
    let p = m.div_euclid(d);
    let i = m.rem_euclid(d);
    let c = if ctx.s() >= 1 {
        ctx.q().pow(-p)
    } else {
        ctx.q().pow(p)
    };
    Ok((c, i))
}

/// Terms of a coefficient regrouped by exponent residue: component k
/// holds a Laurent polynomial in T with `coeff = sum_k t^k p_k(T)`.
/// For d = 0 the grading is by plain t-exponent and every p_k is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSplit {
    pub components: BTreeMap<i64, LaurentPoly>,
}

impl GradedSplit {
    pub fn of(d: &SigmaDerivation) -> GradedSplit {
        let ctx = d.ctx();
        let dd = ctx.d();
        let mut components: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (j, c) in d.coeff().terms() {
            let (key, t_exp, scalar) = if dd == 0 {
                (j, 0, c.clone())
            } else {
                let i = j.rem_euclid(dd);
                let p = j.div_euclid(dd);
                // t^{dp} = q^-p T^p when s > 1, and q^p T^-p when s < 1.
                if ctx.s() > 1 {
                    (i, p, c * &ctx.q().pow(-p))
                } else {
                    (i, -p, c * &ctx.q().pow(p))
                }
            };
            let entry = components.entry(key).or_insert_with(LaurentPoly::zero);
            *entry = &*entry + &LaurentPoly::monomial(t_exp, scalar);
        }
        components.retain(|_, p| !p.is_zero());
        GradedSplit { components }
    }

    /// Substitute T back and reassemble the coefficient.
    pub fn reassemble(&self, ctx: &TwistContext) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k, pk) in &self.components {
            if ctx.d() == 0 {
                out = &out + &pk.scale(&QRational::one()).shift(*k);
                continue;
            }
            for (e, c) in pk.terms() {
                // t^k T^e = q^e t^{k + e(s-1)}
                out = &out + &LaurentPoly::monomial(k + e * (ctx.s() - 1), c * &ctx.q().pow(e));
            }
        }
        out
    }

    /// The residues carrying a nonzero component.
    pub fn support(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }
}

/// Free-part coordinates (over d_0..d_{d-1}) of `[d_n, d_m]` reduced
/// modulo inner derivations.
pub fn mod_inner_bracket(ctx: &Arc<TwistContext>, n: i64, m: i64) -> Result<Vec<QRational>> {
    if ctx.d() == 0 {
        return Err(Error::NoFreePart);
    }
    let br = SigmaDerivation::basis(ctx, n).bracket(&SigmaDerivation::basis(ctx, m))?;
    Ok(CanonicalForm::of(&br).basis_coords())
}

/// Free-part coordinates of `[d_n, g d_m]` reduced modulo inner
/// derivations; requires 0 <= n < d.
pub fn mod_inner_bracket_g(ctx: &Arc<TwistContext>, n: i64, m: i64) -> Result<Vec<QRational>> {
    let d = ctx.d();
    if d == 0 {
        return Err(Error::NoFreePart);
    }
    if n < 0 || n >= d {
        return Err(Error::BasisIndexOutOfRange);
    }
    let dn = SigmaDerivation::basis(ctx, n);
    let gdm = SigmaDerivation::new(ctx, ctx.g() * &(-LaurentPoly::t_pow(m)));
    let br = dn.bracket(&gdm)?;
    Ok(CanonicalForm::of(&br).basis_coords())
}
