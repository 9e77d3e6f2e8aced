use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::Expr;
use crate::error::{Error, Result};
use crate::freealg::Subset;
use crate::scalars::{Rational, Unit};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num { value: Rational, integer: bool },
    Imag(Rational, Unit),
    Unit(Unit),
    T,
    BigX(Subset),
    PseudoRoot(Subset, u32),
    Chain { r: u32, n: Option<u32> },
    Z(u32),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    TensorMark,
    End,
}

const ATOMS: &[&str] = &[
    "number", "i", "j", "k", "t", "X{..}", "x{..;i}", "y<r>", "z<r>", "(", "-",
];

fn err(offset: usize, message: impl Into<String>, expected: &[&str]) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<u8> {
        self.src.get(self.pos + k).copied()
    }

    fn digits(&mut self, what: &str) -> Result<(BigInt, usize)> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, format!("expected {what}"), &["digit"]));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok((text.parse().expect("digits parse"), start))
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let (v, start) = self.digits(what)?;
        u32::try_from(&v).map_err(|_| err(start, format!("{what} is too large"), &[]))
    }

    fn positive(&mut self, what: &str) -> Result<u32> {
        let start = self.pos;
        let v = self.small(what)?;
        if v == 0 {
            return Err(err(start, format!("{what} must be positive"), &[]));
        }
        Ok(v)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let want = (c as char).to_string();
            Err(err(
                self.pos,
                format!("expected '{want}'"),
                &[want.as_str()],
            ))
        }
    }

    /// Elements of `{1,2,3}` after the opening brace, up to `stop`.
    fn set_body(&mut self, stop: &[u8]) -> Result<Subset> {
        let mut elems: Vec<u32> = Vec::new();
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        if self.peek().is_some_and(|c| stop.contains(&c)) {
            return Ok(Subset::empty());
        }
        loop {
            while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
                self.pos += 1;
            }
            let start = self.pos;
            let e = self.positive("set element")?;
            if e > Subset::MAX_ELEMENT {
                return Err(err(
                    start,
                    format!("set elements must be at most {}", Subset::MAX_ELEMENT),
                    &[],
                ));
            }
            if elems.contains(&e) {
                return Err(err(start, format!("repeated set element {e}"), &[]));
            }
            elems.push(e);
            while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
                self.pos += 1;
            }
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(c) if stop.contains(&c) => return Ok(Subset::from_elements(elems)),
                _ => {
                    let mut exp = vec![","];
                    let stops: Vec<String> =
                        stop.iter().map(|&c| (c as char).to_string()).collect();
                    exp.extend(stops.iter().map(String::as_str));
                    return Err(err(self.pos, "unterminated set", &exp));
                }
            }
        }
    }

    fn word_boundary(&self, start: usize) -> Result<()> {
        if self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            Err(err(start, "unknown identifier", ATOMS))
        } else {
            Ok(())
        }
    }

    fn next(&mut self) -> Result<(Tok, usize)> {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Ok((Tok::End, start));
        };
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'(' => {
                if self.peek_at(1) == Some(b'x') && self.peek_at(2) == Some(b')') {
                    self.pos += 3;
                    Tok::TensorMark
                } else {
                    self.pos += 1;
                    Tok::LParen
                }
            }
            b'0'..=b'9' => {
                let (num, _) = self.digits("number")?;
                let (value, integer) = if self.peek() == Some(b'/')
                    && self.peek_at(1).is_some_and(|c| c.is_ascii_digit())
                {
                    self.pos += 1;
                    let (den, den_at) = self.digits("denominator")?;
                    if den.is_zero() {
                        return Err(err(den_at, "zero denominator", &[]));
                    }
                    (Rational::new(num, den), false)
                } else {
                    (Rational::from_integer(num), true)
                };
                match self.peek().and_then(|c| Unit::from_char(c as char)) {
                    Some(u) => {
                        self.pos += 1;
                        self.word_boundary(start)?;
                        Tok::Imag(value, u)
                    }
                    None => {
                        self.word_boundary(start)?;
                        Tok::Num { value, integer }
                    }
                }
            }
            b'i' | b'j' | b'k' | b't' => {
                self.pos += 1;
                self.word_boundary(start)?;
                match Unit::from_char(c as char) {
                    Some(u) => Tok::Unit(u),
                    None => Tok::T,
                }
            }
            b'X' => {
                self.pos += 1;
                self.expect(b'{')?;
                let set = self.set_body(b"}")?;
                self.expect(b'}')?;
                if set.is_empty() {
                    return Err(err(start, "X needs a nonempty set", &["set element"]));
                }
                Tok::BigX(set)
            }
            b'x' => {
                self.pos += 1;
                self.expect(b'{')?;
                let set = self.set_body(b";")?;
                self.expect(b';')?;
                while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
                    self.pos += 1;
                }
                let i = self.positive("generator index")?;
                while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
                    self.pos += 1;
                }
                self.expect(b'}')?;
                if set.contains(i) {
                    return Err(err(start, format!("index {i} lies in the set {set}"), &[]));
                }
                if i > Subset::MAX_ELEMENT {
                    return Err(err(start, "generator index too large", &[]));
                }
                Tok::PseudoRoot(set, i)
            }
            b'y' => {
                self.pos += 1;
                let r = self.positive("chain index")?;
                let n = if self.peek() == Some(b'@') {
                    self.pos += 1;
                    let n = self.positive("n")?;
                    if r > n {
                        return Err(err(start, format!("y{r} does not exist in Q_{n}"), &[]));
                    }
                    Some(n)
                } else {
                    None
                };
                self.word_boundary(start)?;
                Tok::Chain { r, n }
            }
            b'z' => {
                self.pos += 1;
                let r = self.positive("NSym generator index")?;
                self.word_boundary(start)?;
                Tok::Z(r)
            }
            _ => {
                let shown = std::str::from_utf8(&self.src[start..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| format!("byte {c:#x}"));
                return Err(err(start, format!("unexpected '{shown}'"), ATOMS));
            }
        };
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<()> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.advance()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.advance()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.tok == Tok::Star {
            self.advance()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.tok == Tok::Minus {
            self.advance()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.tok == Tok::Caret {
            self.advance()?;
            let exp = match &self.tok {
                Tok::Num {
                    value,
                    integer: true,
                } => u32::try_from(value.numer())
                    .map_err(|_| err(self.at, "exponent too large", &[]))?,
                _ => {
                    return Err(err(
                        self.at,
                        "exponent must be a nonnegative integer",
                        &["integer"],
                    ))
                }
            };
            self.advance()?;
            base = Expr::Pow(Box::new(base), exp);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let expr = match std::mem::replace(&mut self.tok, Tok::End) {
            Tok::Num { value, .. } => Expr::Num(value),
            Tok::Imag(q, u) => Expr::Imag(q, u),
            Tok::Unit(u) => Expr::Unit(u),
            Tok::T => Expr::T,
            Tok::BigX(s) => Expr::BigX(s),
            Tok::PseudoRoot(s, i) => Expr::PseudoRoot(s, i),
            Tok::Chain { r, n } => Expr::Chain { r, n },
            Tok::Z(r) => Expr::Z(r),
            Tok::LParen => {
                self.advance()?;
                let inner = self.sum()?;
                if self.tok != Tok::RParen {
                    return Err(err(
                        self.at,
                        "unclosed parenthesis",
                        &[")", "+", "-", "*", "^"],
                    ));
                }
                inner
            }
            other => {
                let message = match other {
                    Tok::End => "unexpected end of input".to_string(),
                    Tok::TensorMark => "unexpected tensor marker".to_string(),
                    _ => "expected an operand".to_string(),
                };
                return Err(err(self.at, message, ATOMS));
            }
        };
        self.advance()?;
        Ok(expr)
    }
}

/// Parses the expression grammar; a single `(x)` may separate two sums.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut parser = Parser {
        lexer: Lexer {
            src: text.as_bytes(),
            pos: 0,
        },
        tok: Tok::End,
        at: 0,
    };
    parser.advance()?;
    let lhs = parser.sum()?;
    let expr = if parser.tok == Tok::TensorMark {
        parser.advance()?;
        Expr::Tensor(Box::new(lhs), Box::new(parser.sum()?))
    } else {
        lhs
    };
    if parser.tok != Tok::End {
        let mut expected = vec!["+", "-", "*", "^", "end of input"];
        if !expr.is_tensor() {
            expected.insert(4, "(x)");
        }
        let message = match parser.tok {
            Tok::TensorMark => "only one tensor marker is allowed",
            Tok::RParen => "unmatched ')'",
            _ => "expected an operator",
        };
        return Err(err(parser.at, message, &expected));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use proptest::prelude::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn polynomial_example() {
        let e = parse_expression("t^2 - (i+j)*t - k").unwrap();
        let expect = Expr::Sub(
            b(Expr::Sub(
                b(Expr::Pow(b(Expr::T), 2)),
                b(Expr::Mul(
                    b(Expr::Add(b(Expr::Unit(Unit::I)), b(Expr::Unit(Unit::J)))),
                    b(Expr::T),
                )),
            )),
            b(Expr::Unit(Unit::K)),
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn tensor_example() {
        let e = parse_expression("X{1,2,3} (x) (X{1,2,3} - X{1,2})").unwrap();
        let x123 = Expr::BigX(Subset::range(3));
        let expect = Expr::Tensor(
            b(x123.clone()),
            b(Expr::Sub(b(x123), b(Expr::BigX(Subset::range(2))))),
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn nsym_example() {
        let e = parse_expression("z2*z1 + 3/2").unwrap();
        let expect = Expr::Add(
            b(Expr::Mul(b(Expr::Z(2)), b(Expr::Z(1)))),
            b(Expr::Num(rat(3, 2))),
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn literals() {
        assert_eq!(
            parse_expression("1/2j").unwrap(),
            Expr::Imag(rat(1, 2), Unit::J)
        );
        assert_eq!(
            parse_expression("x{1,2;3}").unwrap(),
            Expr::PseudoRoot(Subset::range(2), 3)
        );
        assert_eq!(
            parse_expression("x{;1}").unwrap(),
            Expr::PseudoRoot(Subset::empty(), 1)
        );
        assert_eq!(
            parse_expression("y3@4").unwrap(),
            Expr::Chain { r: 3, n: Some(4) }
        );
        assert_eq!(
            parse_expression("X{2, 1}").unwrap(),
            Expr::BigX(Subset::range(2))
        );
        assert_eq!(
            parse_expression("-t^2").unwrap(),
            Expr::Neg(b(Expr::Pow(b(Expr::T), 2)))
        );
        assert_eq!(
            parse_expression("-t*i").unwrap(),
            Expr::Mul(b(Expr::Neg(b(Expr::T))), b(Expr::Unit(Unit::I)))
        );
    }

    fn offset(text: &str) -> (usize, Vec<String>) {
        match parse_expression(text) {
            Err(Error::Parse {
                offset, expected, ..
            }) => (offset, expected),
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(offset("t +").0, 3);
        assert_eq!(offset("t + * 2").0, 4);
        assert_eq!(offset("(t + 1").0, 6);
        assert_eq!(offset("2t").0, 0);
        assert_eq!(offset("t^1/2").0, 2);
        assert_eq!(offset("x{1;1}").0, 0);
        assert_eq!(offset("X{}").0, 0);
        assert_eq!(offset("1/0").0, 2);
        assert_eq!(offset("z0").0, 1);
        assert_eq!(offset("y4@3").0, 0);
        assert_eq!(offset("a").0, 0);
        let (at, expected) = offset("X{1} (x) X{2} (x) X{3}");
        assert_eq!(at, 14);
        assert!(!expected.contains(&"(x)".to_string()));
        assert!(offset("t )").1.contains(&"end of input".to_string()));
        assert!(offset("").1.contains(&"number".to_string()));
    }

    fn leaf() -> impl Strategy<Value = Expr> {
        let num = (0i64..20, 1i64..5).prop_map(|(p, q)| Expr::Num(rat(p, q)));
        let unit = prop_oneof![Just(Unit::I), Just(Unit::J), Just(Unit::K)];
        let set = proptest::collection::btree_set(1u32..6, 0..4).prop_map(Subset::from_elements);
        prop_oneof![
            num,
            ((0i64..9, 1i64..4), unit.clone()).prop_map(|((p, q), u)| Expr::Imag(rat(p, q), u)),
            unit.prop_map(Expr::Unit),
            Just(Expr::T),
            set.clone()
                .prop_filter("nonempty", |s| !s.is_empty())
                .prop_map(Expr::BigX),
            (set, 1u32..8)
                .prop_filter("index outside set", |(s, i)| !s.contains(*i))
                .prop_map(|(s, i)| Expr::PseudoRoot(s, i)),
            (1u32..4, proptest::option::of(4u32..6)).prop_map(|(r, n)| Expr::Chain { r, n }),
            (1u32..7).prop_map(Expr::Z),
        ]
    }

    fn tree() -> impl Strategy<Value = Expr> {
        leaf().prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| Expr::Neg(b(a))),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Add(b(x), b(y))),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Sub(b(x), b(y))),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Mul(b(x), b(y))),
                (inner, 0u32..5).prop_map(|(x, e)| Expr::Pow(b(x), e)),
            ]
        })
    }

    fn root() -> impl Strategy<Value = Expr> {
        prop_oneof![
            3 => tree(),
            1 => (tree(), tree()).prop_map(|(x, y)| Expr::Tensor(b(x), b(y))),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn render_round_trips(e in root()) {
            let text = e.render();
            let back = parse_expression(&text);
            prop_assert_eq!(back.as_ref(), Ok(&e), "rendered as {}", text);
        }
    }
}
