//! Rational functions in a uniformizer `s`, valued by their order at `s = 0`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::rational::Q;

/// `num / den` with `den` monic and `gcd(num, den) = 1`. Zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValuedScalar {
    num: Poly,
    den: Poly,
}

impl ValuedScalar {
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lead = den.leading();
        Ok(Self { num: num.scale(&(Q::one() / &lead)), den: den.monic() })
    }

    pub fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self { num: Poly::constant(c), den: Poly::one() }
    }

    /// The uniformizer `s`.
    pub fn uniformizer() -> Self {
        Self { num: Poly::monomial(Q::one(), 1), den: Poly::one() }
    }

    /// `c s^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        Self { num: Poly::monomial(c, k), den: Poly::one() }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `ord_s(num) - ord_s(den)`; `None` for zero, whose valuation is infinite.
    pub fn valuation(&self) -> Option<i64> {
        Some(self.num.order()? as i64 - self.den.order()? as i64)
    }

    /// Value at `s = 0` when the scalar is integral, i.e. its reduction.
    pub fn reduction(&self) -> Option<Q> {
        (self.valuation()? >= 0).then(|| {
            let k = self.den.order().unwrap_or(0);
            self.num.coeff(k) / self.den.coeff(k)
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_parts(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_parts(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        Self::from_parts(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { Self::one().div(self)? } else { self.clone() };
        Ok((0..e.unsigned_abs()).fold(Self::one(), |acc, _| acc.mul(&base)))
    }

    /// Parses expressions in `s` built from rational numbers with `+ - * / ^`
    /// and parentheses, for example `"s"`, `"2*s^3"`, `"(1 - s)/(1 + s^2)"`.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in {text:?}")));
        }
        Ok(v)
    }
}

impl fmt::Display for ValuedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    S,
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Num(digits.parse().expect("digits")));
            }
            's' => {
                out.push(Token::S);
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Token::Op(c));
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {text:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<ValuedScalar> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ValuedScalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek_op() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some('/') => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?)?;
                }
                // Implicit multiplication such as `2s` or `3(1+s)`.
                Some('(') => acc = acc.mul(&self.factor()?),
                None if matches!(self.tokens.get(self.pos), Some(Token::S)) => {
                    acc = acc.mul(&self.factor()?)
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ValuedScalar> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let negative = self.peek_op() == Some('-');
            if negative {
                self.pos += 1;
            }
            let Some(Token::Num(e)) = self.tokens.get(self.pos).cloned() else {
                return Err(Error::Parse("exponent must be an integer".into()));
            };
            self.pos += 1;
            let e: i64 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            return base.pow(if negative { -e } else { e });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ValuedScalar> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(ValuedScalar::constant(Q::from_integer(n)))
            }
            Some(Token::S) => {
                self.pos += 1;
                Ok(ValuedScalar::uniformizer())
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing closing parenthesis".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_frac, q_int};

    fn v(s: &str) -> ValuedScalar {
        ValuedScalar::parse(s).unwrap()
    }

    #[test]
    fn parse_and_valuation() {
        assert_eq!(v("s").valuation(), Some(1));
        assert_eq!(v("2*s^3 + s^4").valuation(), Some(3));
        assert_eq!(v("(1 - s)/(s^2)").valuation(), Some(-2));
        assert_eq!(v("3/4").valuation(), Some(0));
        assert_eq!(v("s - s").valuation(), None);
        assert_eq!(v("2s").valuation(), Some(1));
        assert_eq!(v("s^-2").valuation(), Some(-2));
        assert_eq!(v("(s^2 - 1)/(s - 1)"), v("s + 1"));
        assert!(ValuedScalar::parse("x").is_err());
        assert!(ValuedScalar::parse("(s").is_err());
        assert!(ValuedScalar::parse("1/0").is_err());
    }

    #[test]
    fn valuation_axioms() {
        let xs = ["s", "1 + s", "s^2/(1 - s)", "3", "2*s^-1 + 5", "7/2*s^3 - s^4"];
        for a in xs {
            for b in xs {
                let (a, b) = (v(a), v(b));
                let (va, vb) = (a.valuation().unwrap(), b.valuation().unwrap());
                assert_eq!(a.mul(&b).valuation(), Some(va + vb));
                let sum = a.add(&b);
                if let Some(vs) = sum.valuation() {
                    assert!(vs >= va.min(vb));
                    if va != vb {
                        assert_eq!(vs, va.min(vb));
                    }
                }
            }
        }
    }

    #[test]
    fn reductions() {
        assert_eq!(v("1 - s").reduction(), Some(q_int(1)));
        assert_eq!(v("(1 + s)/(2 + s)").reduction(), Some(q_frac(1, 2)));
        assert_eq!(v("s^-1").reduction(), None);
        assert_eq!(v("(s + s^2)/s").reduction(), Some(q_int(1)));
    }

    #[test]
    fn display_round_trip() {
        for text in ["s", "1 - s + 2*s^3", "(1)/(1 + s)", "(3/2)*s"] {
            let x = v(text);
            assert_eq!(v(&x.to_string()), x);
        }
    }
}
