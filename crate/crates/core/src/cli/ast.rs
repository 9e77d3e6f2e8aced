use std::fmt;

use num_traits::One;

use crate::freealg::Subset;
use crate::scalars::{Rational, Unit};

/// Parsed expression. Parentheses leave no trace; `Tensor` occurs only at the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative rational literal, `3` or `3/2`.
    Num(Rational),
    /// Scaled imaginary unit, `3i` or `1/2k`.
    Imag(Rational, Unit),
    /// Bare unit `i`, `j` or `k`.
    Unit(Unit),
    /// The central variable `t`.
    T,
    /// `X{1,2}`.
    BigX(Subset),
    /// `x{1,2;3}`.
    PseudoRoot(Subset, u32),
    /// `y3` or `y3@4`.
    Chain {
        r: u32,
        n: Option<u32>,
    },
    /// `z3`.
    Z(u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Tensor(Box<Expr>, Box<Expr>),
}

fn fmt_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn fmt_set(f: &mut fmt::Formatter<'_>, s: Subset) -> fmt::Result {
    let parts: Vec<String> = s.elements().iter().map(u32::to_string).collect();
    write!(f, "{}", parts.join(","))
}

impl Expr {
    /// Binding strength: sums 1, products 2, negation 3, powers 4, atoms 5.
    fn level(&self) -> u8 {
        match self {
            Expr::Tensor(..) => 0,
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(q) => fmt_rational(f, q),
            Expr::Imag(q, u) => {
                fmt_rational(f, q)?;
                write!(f, "{}", u.symbol())
            }
            Expr::Unit(u) => write!(f, "{}", u.symbol()),
            Expr::T => write!(f, "t"),
            Expr::BigX(s) => {
                write!(f, "X{{")?;
                fmt_set(f, *s)?;
                write!(f, "}}")
            }
            Expr::PseudoRoot(s, i) => {
                write!(f, "x{{")?;
                fmt_set(f, *s)?;
                write!(f, ";{i}}}")
            }
            Expr::Chain { r, n: None } => write!(f, "y{r}"),
            Expr::Chain { r, n: Some(n) } => write!(f, "y{r}@{n}"),
            Expr::Z(r) => write!(f, "z{r}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_at(f, 4)
            }
            Expr::Add(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " + ")?;
                b.fmt_at(f, 2)
            }
            Expr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " - ")?;
                b.fmt_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)
            }
            Expr::Pow(a, e) => {
                a.fmt_at(f, 5)?;
                write!(f, "^{e}")
            }
            Expr::Tensor(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " (x) ")?;
                b.fmt_at(f, 1)
            }
        }
    }

    /// Text that parses back to an equal tree.
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self, Expr::Tensor(..))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
