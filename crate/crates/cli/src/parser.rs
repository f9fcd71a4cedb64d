//! Recursive-descent parser for Laurent coefficient expressions.
//!
//! Grammar (whitespace insignificant, `^` binds tighter than `*` binds
//! tighter than `+`/`-`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' int)?
//! atom   := rational | 'q' | 't' | '(' expr ')' | '-' atom
//! ```
//!
//! Rational literals are `digits` or `digits/digits`; exponents are integer
//! literals, possibly negative and possibly parenthesized.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use qwitt_core::{LaurentPoly, QRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rat(BigRational),
    Q,
    T,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(Expr::Q)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Expr::T)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                let inner = self.atom()?;
                Ok(Expr::Neg(Box::new(inner)))
            }
            Some(b) if b.is_ascii_digit() => self.rational(),
            _ => Err(self.error("expected a rational, 'q', 't', '(' or '-'")),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string"))
    }

    fn rational(&mut self) -> Result<Expr, ParseError> {
        let num = self.digits()?;
        // A '/' continues the literal: digits '/' digits.
        if self.bytes.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let offset = self.pos;
            let den = self.digits()?;
            if den == BigInt::from(0) {
                return Err(ParseError {
                    offset,
                    message: "zero denominator".to_string(),
                });
            }
            return Ok(Expr::Rat(BigRational::new(num, den)));
        }
        Ok(Expr::Rat(BigRational::from_integer(num)))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if self.eat(b'(') {
            let e = self.exponent()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(e);
        }
        let negative = self.eat(b'-');
        let offset = self.pos;
        let digits = self.digits().map_err(|mut e| {
            e.message = "integer exponent required".to_string();
            e
        })?;
        // digits '/' digits is a rational, not an integer exponent
        if self.bytes.get(self.pos) == Some(&b'/') {
            return Err(ParseError {
                offset,
                message: "integer exponent required".to_string(),
            });
        }
        let mag: i64 = digits.try_into().map_err(|_| ParseError {
            offset,
            message: "exponent out of range".to_string(),
        })?;
        Ok(if negative { -mag } else { mag })
    }
}

/// Error from evaluating a parsed expression into a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalError(pub String);

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for EvalError {}

impl Expr {
    /// Evaluate with `q` bound to the context scalar (the formal generator
    /// or a specialized constant).
    pub fn eval(&self, q: &QRational) -> Result<LaurentPoly, EvalError> {
        match self {
            Expr::Rat(r) => Ok(LaurentPoly::constant(QRational::from_big(r.clone()))),
            Expr::Q => Ok(LaurentPoly::constant(q.clone())),
            Expr::T => Ok(LaurentPoly::t_pow(1)),
            Expr::Neg(e) => Ok(-e.eval(q)?),
            Expr::Add(a, b) => Ok(a.eval(q)? + b.eval(q)?),
            Expr::Sub(a, b) => Ok(a.eval(q)? - b.eval(q)?),
            Expr::Mul(a, b) => Ok(a.eval(q)? * b.eval(q)?),
            Expr::Pow(b, e) => {
                let base = b.eval(q)?;
                if *e >= 0 {
                    return Ok(base.pow(*e as u32));
                }
                // Negative powers exist only for unit monomials c * t^k.
                let mut terms = base.terms();
                let (exp, coeff) = terms
                    .next()
                    .ok_or_else(|| EvalError("negative power of zero".to_string()))?;
                if terms.next().is_some() {
                    return Err(EvalError("negative power of a non-monomial".to_string()));
                }
                Ok(LaurentPoly::monomial(exp * e, coeff.pow(*e)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(text: &str) -> LaurentPoly {
        parse_expr(text).unwrap().eval(&QRational::q()).unwrap()
    }

    #[test]
    fn parses_basic_expression() {
        let p = eval("1 - q*t^2");
        assert_eq!(
            p,
            LaurentPoly::one() - LaurentPoly::monomial(2, QRational::q())
        );
    }

    #[test]
    fn parses_negative_exponent_and_rational() {
        let p = eval("t^-3 + 2/3 * t");
        assert_eq!(
            p,
            LaurentPoly::t_pow(-3) + LaurentPoly::monomial(1, QRational::from_ratio(2, 3))
        );
    }

    #[test]
    fn rejects_fractional_exponent() {
        let err = parse_expr("t^(1/2)").unwrap_err();
        assert_eq!(err.message, "integer exponent required");
    }

    #[test]
    fn reports_byte_offsets() {
        let err = parse_expr("1 + ").unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse_expr("(1 + q").unwrap_err();
        assert_eq!(err.offset, 6);
    }

    #[test]
    fn precedence_pow_over_mul_over_add() {
        // 2*t^2 + q = (2*(t^2)) + q
        let p = eval("2*t^2 + q");
        assert_eq!(
            p,
            LaurentPoly::monomial(2, QRational::from_int(2))
                + LaurentPoly::constant(QRational::q())
        );
    }

    #[test]
    fn unary_minus_binds_to_atom() {
        assert_eq!(eval("-q*t"), LaurentPoly::monomial(1, -QRational::q()));
        // per the grammar, -t^2 is (-t)^2
        assert_eq!(eval("-t^2"), LaurentPoly::t_pow(2));
        assert_eq!(eval("-1*t^2"), -LaurentPoly::t_pow(2));
    }

    #[test]
    fn negative_power_of_monomial() {
        assert_eq!(
            eval("(q*t)^-1"),
            LaurentPoly::monomial(-1, QRational::q_power(-1))
        );
        let err = parse_expr("(1 + t)^-1")
            .unwrap()
            .eval(&QRational::q())
            .unwrap_err();
        assert!(err.0.contains("non-monomial"));
    }

    #[test]
    fn render_parse_round_trip() {
        let cases = [
            "1 - q*t^2",
            "t^-3 + 2*t",
            "-1*t^2 + t^5",
            "-q*t + 1/2*t^3",
            "(1 + q)*t - q^2*t^4",
        ];
        for text in cases {
            let p = eval(text);
            let rendered = p.to_string();
            assert_eq!(eval(&rendered), p, "case {text} rendered as {rendered}");
        }
    }
}
