//! The commutative algebra A = Q(q)[t, t^-1].
//!
//! Sparse Laurent polynomials keyed by integer exponent, with exact
//! arithmetic, exact division, gcd and Euclidean division. The zero
//! polynomial stores no terms; no stored coefficient is ever zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::scalars::{render_qpoly, QRational};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, QRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(QRational::one())
    }

    pub fn constant(c: QRational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    /// `c * t^e`; the zero coefficient gives the zero polynomial.
    pub fn monomial(e: i64, c: QRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        LaurentPoly::monomial(e, QRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, QRational)>>(iter: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: QRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(e, sum);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Least stored exponent; None on zero.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Greatest stored exponent; None on zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> QRational {
        self.terms.get(&e).cloned().unwrap_or_else(QRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &QRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &QRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiply by `t^k` (shift every exponent by k).
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Exact quotient f/g; errors with `NotDivisible` when g does not
    /// divide f in A (this doubles as the divisibility decision procedure).
    pub fn exact_div(&self, g: &LaurentPoly) -> Result<LaurentPoly> {
        if g.is_zero() {
            return Err(Error::NotDivisible);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let vf = self.valuation().unwrap();
        let vg = g.valuation().unwrap();
        let a = self.shift(-vf);
        let b = g.shift(-vg);
        let (quot, rem) = a.euclid_div(&b)?;
        if !rem.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(quot.shift(vf - vg))
    }

    /// Euclidean division of ordinary polynomials (valuation >= 0):
    /// f = quot * g + rem with deg(rem) < deg(g).
    pub fn euclid_div(&self, g: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        if g.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.valuation().is_some_and(|v| v < 0) || g.valuation().unwrap() < 0 {
            return Err(Error::NotAPolynomial);
        }
        let dg = g.degree().unwrap();
        let glc = g.coeff(dg);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let c = rem
                .coeff(dr)
                .checked_div(&glc)
                .expect("leading coeff nonzero");
            let step = LaurentPoly::monomial(dr - dg, c);
            rem = &rem - &(&step * g);
            quot = &quot + &step;
        }
        Ok((quot, rem))
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Image under the ring endomorphism t -> c * t^e; errors when c = 0
    /// (an endomorphism must send the unit t to a unit).
    pub fn substitute(&self, c: &QRational, e: i64) -> Result<LaurentPoly> {
        if c.is_zero() {
            return Err(Error::UnitImage);
        }
        let mut out = LaurentPoly::zero();
        for (n, a) in self.terms() {
            out.add_term(n * e, a * &c.pow(n));
        }
        Ok(out)
    }
}

/// Normalize to the canonical gcd representative: strip the unit monomial
/// `c * t^k` so the result is a polynomial with constant term 1.
fn normalize_unit(p: &LaurentPoly) -> LaurentPoly {
    match p.valuation() {
        None => LaurentPoly::zero(),
        Some(v) => {
            let shifted = p.shift(-v);
            let c0 = shifted.coeff(0);
            shifted.scale(&c0.inv().expect("constant term nonzero after shift"))
        }
    }
}

fn gcd_pair(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return normalize_unit(b);
    }
    if b.is_zero() {
        return normalize_unit(a);
    }
    let mut x = a.shift(-a.valuation().unwrap());
    let mut y = b.shift(-b.valuation().unwrap());
    while !y.is_zero() {
        let (_, r) = x.euclid_div(&y).expect("operands kept polynomial");
        x = y;
        y = r.shift(-r.valuation().unwrap_or(0));
    }
    normalize_unit(&x)
}

/// Gcd of a family, unique up to unit monomials and normalized so the
/// representative is a polynomial with constant term 1.
pub fn gcd_list(polys: &[LaurentPoly]) -> Result<LaurentPoly> {
    if polys.iter().all(|p| p.is_zero()) {
        return Err(Error::GcdOfZeros);
    }
    let mut acc = LaurentPoly::zero();
    for p in polys {
        acc = gcd_pair(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    Ok(acc)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Render one coefficient in a form the expression grammar accepts:
/// returns (is_negative, magnitude). Falls back to the full quotient form
/// only when the denominator is not a monomial in q.
fn coeff_render(c: &QRational) -> (bool, String) {
    if let Some((r, k)) = c.as_q_monomial() {
        let neg = r.is_negative();
        return (neg, q_monomial_string(&r.abs(), k));
    }
    let num = c.num();
    let den = c.den();
    // Sign convention: pull out the sign of the lowest-degree numerator term.
    let neg = num
        .terms()
        .next()
        .map(|(_, a)| a.is_negative())
        .unwrap_or(false);
    let num = if neg { num.neg() } else { num.clone() };
    if den.is_one() {
        return (neg, format!("({})", render_qpoly(&num)));
    }
    if let Some((dc, dk)) = den.single_term() {
        // Monic denominators make dc = 1; fold q^-dk into the rendering.
        debug_assert!(dc.is_one());
        return (neg, format!("({})*q^-{}", render_qpoly(&num), dk));
    }
    (
        neg,
        format!("(({})/({}))", render_qpoly(&num), render_qpoly(den)),
    )
}

fn q_monomial_string(mag: &num_rational::BigRational, k: i64) -> String {
    if k == 0 {
        return mag.to_string();
    }
    let qp = if k == 1 {
        "q".to_string()
    } else {
        format!("q^{k}")
    };
    if mag.is_one() {
        qp
    } else {
        format!("{mag}*{qp}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let (neg, mag) = coeff_render(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut piece = if e == 0 {
                mag
            } else {
                let tp = if e == 1 {
                    "t".to_string()
                } else {
                    format!("t^{e}")
                };
                if mag == "1" {
                    tp
                } else {
                    format!("{mag}*{tp}")
                }
            };
            // A leading minus binds to the first atom, so `-t^2` would
            // re-parse as (-t)^2. Spell out the unit coefficient whenever
            // the first factor of a negated leading term carries a power.
            if i == 0 && neg && (piece.starts_with("t^") || piece.starts_with("q^")) {
                piece = format!("1*{piece}");
            }
            out.push_str(&piece);
        }
        write!(f, "{out}")
    }
}

/// JSON building block: sorted `[exponent, coefficient-string]` pairs.
pub fn to_pairs(p: &LaurentPoly) -> Vec<(i64, String)> {
    p.terms().map(|(e, c)| (e, c.to_string())).collect()
}
