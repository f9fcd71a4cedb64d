//! Exact arithmetic in the rational-function field Q(q).
//!
//! [`QRational`] is a fully reduced quotient of polynomials in the formal
//! parameter `q` with arbitrary-precision rational coefficients. It is the
//! scalar field for every other structure in this crate. Values are
//! immutable and normalized on construction, so structural equality agrees
//! with cross-multiplication.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial in `q` over Q, ascending coefficients,
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub(crate) fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub(crate) fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub(crate) fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub(crate) fn constant(c: BigRational) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// c * q^k with k >= 0.
    pub(crate) fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; None for the zero polynomial.
    pub(crate) fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub(crate) fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Iterate (exponent, coefficient) over nonzero terms, ascending.
    pub(crate) fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Some((coeff, exp)) when the polynomial has exactly one nonzero term.
    pub(crate) fn single_term(&self) -> Option<(&BigRational, usize)> {
        let mut it = self.terms();
        let first = it.next()?;
        if it.next().is_some() {
            None
        } else {
            Some((first.1, first.0))
        }
    }

    pub(crate) fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self
                .coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(BigRational::zero);
            let b = other
                .coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(BigRational::zero);
            coeffs.push(a + b);
        }
        QPoly::from_coeffs(coeffs)
    }

    pub(crate) fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub(crate) fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub(crate) fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    pub(crate) fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Long division by a nonzero divisor; returns (quotient, remainder).
    pub(crate) fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let dlc = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff().unwrap() / &dlc;
            let step = QPoly::monomial(c, rd - dd);
            quot = quot.add(&step);
            rem = rem.sub(&step.mul(divisor));
        }
        (quot, rem)
    }

    /// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
    pub(crate) fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    fn into_monic(self) -> QPoly {
        match self.leading_coeff() {
            None => self,
            Some(lc) if lc.is_one() => self,
            Some(lc) => {
                let inv = BigRational::one() / lc;
                self.scale(&inv)
            }
        }
    }

    pub(crate) fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Render a polynomial in `q` with ascending exponents, e.g. `1 - q^2`.
pub(crate) fn render_qpoly(p: &QPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (first, (k, c)) in p.terms().enumerate().map(|(i, t)| (i == 0, t)) {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&q_term(&mag, k as i64));
    }
    out
}

/// `mag * q^k` with the usual compressions (`q` for k=1, bare rational for k=0).
fn q_term(mag: &BigRational, k: i64) -> String {
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

/// An exact rational function in the formal parameter `q`.
///
/// Invariants: the denominator is nonzero and monic, numerator and
/// denominator are coprime, and zero is stored as 0/1. These make derived
/// equality canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QRational {
    num: QPoly,
    den: QPoly,
}

impl QRational {
    fn normalized(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QRational {
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        // Most values live in the polynomial subring; skip the gcd there.
        if den.is_one() {
            return QRational { num, den };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        if den.is_one() {
            return QRational { num, den };
        }
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        let inv = BigRational::one() / lc;
        QRational {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        QRational {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        QRational {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    /// The generator `q` itself.
    pub fn q() -> Self {
        QRational {
            num: QPoly::monomial(BigRational::one(), 1),
            den: QPoly::one(),
        }
    }

    /// `q^k` for any integer k (negative k goes to the denominator).
    pub fn q_power(k: i64) -> Self {
        if k >= 0 {
            QRational {
                num: QPoly::monomial(BigRational::one(), k as usize),
                den: QPoly::one(),
            }
        } else {
            QRational {
                num: QPoly::one(),
                den: QPoly::monomial(BigRational::one(), (-k) as usize),
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        QRational::from_big(BigRational::from_integer(BigInt::from(n)))
    }

    /// n/d as a constant; panics if d = 0.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        QRational::from_big(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_big(c: BigRational) -> Self {
        QRational {
            num: QPoly::constant(c),
            den: QPoly::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Some((c, k)) when the value equals `c * q^k` for a rational c and
    /// integer k. Covers monomial numerators over monomial denominators.
    pub fn as_q_monomial(&self) -> Option<(BigRational, i64)> {
        if self.is_zero() {
            return Some((BigRational::zero(), 0));
        }
        let (nc, nk) = self.num.single_term()?;
        let (dc, dk) = self.den.single_term()?;
        Some((nc / dc, nk as i64 - dk as i64))
    }

    pub fn checked_div(&self, other: &QRational) -> Result<QRational> {
        if other.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(QRational::normalized(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<QRational> {
        QRational::one().checked_div(self)
    }

    /// Integer power; panics when raising zero to a negative exponent.
    pub fn pow(&self, e: i64) -> QRational {
        // q-monomials (the common case) have monomial powers.
        if let Some((c, k)) = self.as_q_monomial() {
            if c.is_zero() {
                assert!(e >= 0, "zero has no negative power");
                return if e == 0 {
                    QRational::one()
                } else {
                    QRational::zero()
                };
            }
            let mag = num_traits::pow(c.clone(), e.unsigned_abs() as usize);
            let mag = if e < 0 { BigRational::one() / mag } else { mag };
            return QRational::from_big(mag) * QRational::q_power(k * e);
        }
        if e < 0 {
            let inv = self.inv().expect("zero has no negative power");
            return inv.pow(-e);
        }
        let mut acc = QRational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a nonzero rational q0; errors on a pole or q0 = 0.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational> {
        if q0.is_zero() {
            return Err(Error::ZeroQ);
        }
        let den = self.den.eval(q0);
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(q0) / den)
    }

    pub(crate) fn num(&self) -> &QPoly {
        &self.num
    }

    pub(crate) fn den(&self) -> &QPoly {
        &self.den
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", render_qpoly(&self.num))
        } else {
            write!(
                f,
                "({})/({})",
                render_qpoly(&self.num),
                render_qpoly(&self.den)
            )
        }
    }
}

impl Add for &QRational {
    type Output = QRational;
    fn add(self, rhs: &QRational) -> QRational {
        QRational::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for &QRational {
    type Output = QRational;
    fn sub(self, rhs: &QRational) -> QRational {
        QRational::normalized(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Mul for &QRational {
    type Output = QRational;
    fn mul(self, rhs: &QRational) -> QRational {
        QRational::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for &QRational {
    type Output = QRational;
    fn div(self, rhs: &QRational) -> QRational {
        self.checked_div(rhs).expect("zero divisor")
    }
}

impl Neg for &QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        QRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QRational {
            type Output = QRational;
            fn $method(self, rhs: QRational) -> QRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QRational> for QRational {
            type Output = QRational;
            fn $method(self, rhs: &QRational) -> QRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<QRational> for &QRational {
            type Output = QRational;
            fn $method(self, rhs: QRational) -> QRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for QRational {
    type Output = QRational;
    fn neg(self) -> QRational {
        -&self
    }
}
