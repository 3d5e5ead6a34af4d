//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! poly     := term ('+' term)*
//! term     := factor ('*' factor)*
//! factor   := scalar | var ('^' uint)? | '(' poly ')' ('^' uint)?
//! scalar   := rational | '<' rational ':' rational '>' | 'ninf'
//! rational := '-'? uint ('/' uint)?
//! ```
//!
//! Variables are `x`, `y`, `z`, `w`, also spelled `x1`..`x4`. Whitespace is
//! ignored everywhere.

use crate::poly::{EltPoly, MultiIndex};
use crate::scalar::{EltScalar, Rational};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("SyntaxError at offset {at}: {msg}")]
    SyntaxError { at: usize, msg: String },
    #[error("ArityTooHigh")]
    ArityTooHigh,
}

/// Abstract syntax of a polynomial expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Scalar(EltScalar),
    Var(usize),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    /// Highest variable index used, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            PolyExpr::Scalar(_) => None,
            PolyExpr::Var(j) => Some(*j),
            PolyExpr::Add(a, b) | PolyExpr::Mul(a, b) => a.max_var().max(b.max_var()),
            PolyExpr::Pow(a, _) => a.max_var(),
        }
    }

    /// Evaluates the expression to a canonical polynomial of the given
    /// arity.
    pub fn to_poly_with_arity(&self, arity: usize) -> EltPoly {
        let raw = self.eval(arity);
        raw.canonicalize()
    }

    /// Evaluates with the arity inferred from the variables used (at least
    /// one).
    pub fn to_poly(&self) -> EltPoly {
        let arity = self.max_var().map_or(1, |m| m + 1);
        self.to_poly_with_arity(arity)
    }

    fn eval(&self, arity: usize) -> EltPoly {
        match self {
            PolyExpr::Scalar(s) => EltPoly::constant(arity, s.clone()),
            PolyExpr::Var(j) => {
                let mut idx = vec![0u32; arity];
                idx[*j] = 1;
                EltPoly::monomial(arity, MultiIndex(idx), EltScalar::one())
            }
            PolyExpr::Add(a, b) => a.eval(arity).checked_add(&b.eval(arity)).unwrap(),
            PolyExpr::Mul(a, b) => a.eval(arity).checked_mul(&b.eval(arity)).unwrap(),
            PolyExpr::Pow(a, k) => {
                let base = a.eval(arity);
                let mut acc = EltPoly::constant(arity, EltScalar::one());
                for _ in 0..*k {
                    acc = acc.checked_mul(&base).unwrap();
                }
                acc
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn error<T>(&self, at: usize, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError { at, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(self.pos, &format!("expected '{}'", c as char)),
        }
    }

    fn uint_digits(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error(start, "expected a number");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        let at = self.pos;
        let digits = self.uint_digits()?;
        digits
            .parse::<u32>()
            .map_err(|_| ParseError::SyntaxError { at, msg: "exponent too large".into() })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let numer = self.uint_digits()?;
        let mut numer: BigInt = numer.parse().unwrap();
        if neg {
            numer = -numer;
        }
        let denom: BigInt = if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d: BigInt = self.uint_digits()?.parse().unwrap();
            if d == BigInt::from(0) {
                return self.error(at, "zero denominator");
            }
            d
        } else {
            BigInt::from(1)
        };
        Ok(Rational::new(numer, denom))
    }

    fn scalar(&mut self) -> Result<EltScalar, ParseError> {
        match self.peek() {
            Some(b'<') => {
                self.pos += 1;
                let t = self.rational()?;
                self.expect(b':')?;
                let l = self.rational()?;
                self.expect(b'>')?;
                Ok(EltScalar::finite(t, l))
            }
            Some(b'n') => {
                self.keyword("ninf")?;
                Ok(EltScalar::neg_inf())
            }
            _ => Ok(EltScalar::finite(self.rational()?, num_traits::One::one())),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        self.skip_ws();
        let at = self.pos;
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            Ok(())
        } else {
            self.error(at, &format!("expected '{}'", word))
        }
    }

    fn variable(&mut self) -> Result<usize, ParseError> {
        let at = self.pos;
        let c = self.bump().unwrap();
        let base = match c {
            b'x' => 0usize,
            b'y' => 1,
            b'z' => 2,
            b'w' => 3,
            _ => return self.error(at, "expected a variable"),
        };
        // x1..x4 alias the four variables
        if c == b'x' && self.src.get(self.pos).map_or(false, |d| d.is_ascii_digit()) {
            let d = self.src[self.pos] - b'0';
            self.pos += 1;
            if !(1..=4).contains(&d) {
                return Err(ParseError::ArityTooHigh);
            }
            return Ok((d - 1) as usize);
        }
        Ok(base)
    }

    fn factor(&mut self) -> Result<PolyExpr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                self.expect(b')')?;
                let exp = self.maybe_pow()?;
                Ok(match exp {
                    Some(k) => PolyExpr::Pow(Box::new(inner), k),
                    None => inner,
                })
            }
            Some(c) if c == b'x' || c == b'y' || c == b'z' || c == b'w' => {
                let j = self.variable()?;
                let exp = self.maybe_pow()?;
                let var = PolyExpr::Var(j);
                Ok(match exp {
                    Some(k) => PolyExpr::Pow(Box::new(var), k),
                    None => var,
                })
            }
            Some(c) if c == b'<' || c == b'-' || c == b'n' || c.is_ascii_digit() => {
                Ok(PolyExpr::Scalar(self.scalar()?))
            }
            _ => self.error(self.pos, "expected a factor"),
        }
    }

    fn maybe_pow(&mut self) -> Result<Option<u32>, ParseError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            Ok(Some(self.uint()?))
        } else {
            Ok(None)
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = PolyExpr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn poly(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.term()?;
            acc = PolyExpr::Add(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }
}

/// Parses an expression into its syntax tree.
pub fn parse_poly(text: &str) -> Result<PolyExpr, ParseError> {
    let mut p = Parser::new(text);
    let expr = p.poly()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ParseError::SyntaxError { at: p.pos, msg: "trailing input".into() });
    }
    Ok(expr)
}

/// Parses a single scalar literal: `<t:l>`, bare rational, or `ninf`.
pub fn parse_scalar(text: &str) -> Result<EltScalar, ParseError> {
    let mut p = Parser::new(text);
    let s = p.scalar()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ParseError::SyntaxError { at: p.pos, msg: "trailing input".into() });
    }
    Ok(s)
}

/// Parses a comma-separated list of scalar literals (an evaluation point).
pub fn parse_point(text: &str) -> Result<Vec<EltScalar>, ParseError> {
    text.split(',').map(|part| parse_scalar(part.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn sc(t: i64, l: i64) -> EltScalar {
        EltScalar::from_ints(t, l)
    }

    #[test]
    fn parses_quadratic() {
        let f = parse_poly("x^2 + <1:2>*x + <0:1>").unwrap().to_poly();
        let expected = EltPoly::from_terms(
            1,
            vec![
                (MultiIndex::uni(2), sc(0, 1)),
                (MultiIndex::uni(1), sc(1, 2)),
                (MultiIndex::uni(0), sc(0, 1)),
            ],
        )
        .unwrap();
        assert_eq!(f.terms(), expected.terms());
    }

    #[test]
    fn expands_bivariate_square() {
        let f = parse_poly("(x+y)^2").unwrap().to_poly();
        assert_eq!(f.arity(), 2);
        let expected = EltPoly::from_terms(
            2,
            vec![
                (MultiIndex(vec![2, 0]), sc(0, 1)),
                (MultiIndex(vec![1, 1]), sc(0, 2)),
                (MultiIndex(vec![0, 2]), sc(0, 1)),
            ],
        )
        .unwrap();
        assert_eq!(f.terms(), expected.terms());
    }

    #[test]
    fn syntax_error_position() {
        match parse_poly("x + + 3") {
            Err(ParseError::SyntaxError { at, .. }) => assert_eq!(at, 4),
            other => panic!("expected syntax error, got {:?}", other),
        }
    }

    #[test]
    fn rational_literals() {
        let f = parse_poly("<5/2:-1/3>").unwrap().to_poly();
        let c = f.constant_term().unwrap();
        assert_eq!(c, &EltScalar::finite(rat(5, 2), rat(-1, 3)));
        let g = parse_poly("-3").unwrap().to_poly();
        assert_eq!(g.constant_term().unwrap(), &sc(-3, 1));
    }

    #[test]
    fn ninf_and_aliases() {
        let f = parse_poly("x + ninf").unwrap().to_poly();
        assert_eq!(f.num_terms(), 1);
        let g = parse_poly("x1 + x2").unwrap().to_poly();
        assert_eq!(g.arity(), 2);
        let h = parse_poly("x + y").unwrap().to_poly();
        assert_eq!(g.terms(), h.terms());
        assert!(matches!(parse_poly("x5"), Err(ParseError::ArityTooHigh)));
    }

    #[test]
    fn bare_coefficients_are_layer_one() {
        let f = parse_poly("-2*x^2 + x + 1").unwrap().to_poly();
        let expected = EltPoly::from_terms(
            1,
            vec![
                (MultiIndex::uni(2), sc(-2, 1)),
                (MultiIndex::uni(1), sc(0, 1)),
                (MultiIndex::uni(0), sc(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(f.terms(), expected.terms());
    }

    #[test]
    fn parse_scalar_and_point() {
        assert_eq!(parse_scalar("<1:2>").unwrap(), sc(1, 2));
        assert_eq!(parse_scalar("7").unwrap(), sc(7, 1));
        assert_eq!(parse_scalar("ninf").unwrap(), EltScalar::neg_inf());
        assert_eq!(
            parse_point("<0:-1/2>, 3").unwrap(),
            vec![EltScalar::finite(rat_int(0), rat(-1, 2)), sc(3, 1)]
        );
    }

    #[test]
    fn round_trip_display() {
        for src in [
            "x^2 + <1:2>*x + <0:1>",
            "<-7:1>*x^5 + <-5:1>*x^4 + <0:2>*x + 1",
            "x + <0:-1>",
            "ninf",
            "x^2*y + <1/2:3>*x*y^2 + w",
        ] {
            let f = parse_poly(src).unwrap().to_poly();
            let printed = f.to_string();
            let g = parse_poly(&printed).unwrap().to_poly_with_arity(f.arity());
            assert_eq!(f.terms(), g.terms(), "round trip failed for {}", src);
            assert_eq!(printed, g.to_string());
        }
    }
}
