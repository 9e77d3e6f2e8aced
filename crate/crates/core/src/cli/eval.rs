use super::ast::Expr;
use crate::error::{Error, Result};
use crate::freealg::{FreeElement, GeneratorSymbol, TensorElement};
use crate::ncpoly::LeftPolynomial;
use crate::qn::chain_generator;
use crate::scalars::Quaternion;

fn invalid(context: &str, e: &Expr) -> Error {
    Error::Invalid(format!("'{e}' is not allowed in a {context}"))
}

/// A rational quaternion; generators and `t` are rejected.
pub fn to_quaternion(e: &Expr) -> Result<Quaternion> {
    Ok(match e {
        Expr::Num(q) => Quaternion::from_rational(q.clone()),
        Expr::Imag(q, u) => Quaternion::unit_scaled(*u, q.clone()),
        Expr::Unit(u) => Quaternion::unit(*u),
        Expr::Neg(a) => -to_quaternion(a)?,
        Expr::Add(a, b) => to_quaternion(a)? + to_quaternion(b)?,
        Expr::Sub(a, b) => to_quaternion(a)? - to_quaternion(b)?,
        Expr::Mul(a, b) => to_quaternion(a)? * to_quaternion(b)?,
        Expr::Pow(a, k) => to_quaternion(a)?.pow(*k),
        other => return Err(invalid("quaternion", other)),
    })
}

/// A polynomial in the central variable `t` with quaternion coefficients.
pub fn to_polynomial(e: &Expr) -> Result<LeftPolynomial<Quaternion>> {
    Ok(match e {
        Expr::T => LeftPolynomial::t(),
        Expr::Num(_) | Expr::Imag(..) | Expr::Unit(_) => {
            LeftPolynomial::constant(to_quaternion(e)?)
        }
        Expr::Neg(a) => to_polynomial(a)?.neg(),
        Expr::Add(a, b) => to_polynomial(a)?.add(&to_polynomial(b)?),
        Expr::Sub(a, b) => to_polynomial(a)?.sub(&to_polynomial(b)?),
        Expr::Mul(a, b) => to_polynomial(a)?.mul(&to_polynomial(b)?),
        Expr::Pow(a, k) => to_polynomial(a)?.pow(*k),
        other => return Err(invalid("polynomial", other)),
    })
}

/// An element of the free algebra over the rationals. Chain generators
/// `y_r` become `X`-symbols and need `n` (from `y3@n` or the context).
pub fn to_free(e: &Expr, n: Option<u32>) -> Result<FreeElement> {
    Ok(match e {
        Expr::Num(q) => FreeElement::scalar(q.clone()),
        Expr::BigX(s) => GeneratorSymbol::x(*s).into(),
        Expr::PseudoRoot(s, i) => GeneratorSymbol::pseudo_root(*s, *i).into(),
        Expr::Z(r) => GeneratorSymbol::z(*r).into(),
        Expr::Chain { r, n: own } => {
            match (*own, n) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::Invalid(format!("y{r}@{a} used with --n {b}")));
                }
                (None, None) => {
                    return Err(Error::Invalid(format!(
                        "y{r} needs a value of n: write y{r}@n or pass --n"
                    )));
                }
                _ => {}
            }
            let n = own.or(n).expect("checked above");
            if *r > n {
                return Err(Error::IndexOutOfRange(format!("y{r} in Q_{n}")));
            }
            chain_generator(*r)
        }
        Expr::Neg(a) => -&to_free(a, n)?,
        Expr::Add(a, b) => &to_free(a, n)? + &to_free(b, n)?,
        Expr::Sub(a, b) => &to_free(a, n)? - &to_free(b, n)?,
        Expr::Mul(a, b) => &to_free(a, n)? * &to_free(b, n)?,
        Expr::Pow(a, k) => to_free(a, n)?.pow(*k),
        other => return Err(invalid("free-algebra expression", other)),
    })
}

/// `a (x) b`, or an error for a plain expression.
pub fn to_tensor(e: &Expr, n: Option<u32>) -> Result<TensorElement> {
    match e {
        Expr::Tensor(a, b) => Ok(TensorElement::pure([&to_free(a, n)?, &to_free(b, n)?])),
        other => Err(invalid("tensor context; use 'a (x) b'", other)),
    }
}

/// Splits a comma-separated list of quaternion expressions.
pub fn quaternion_list(text: &str) -> Result<Vec<Quaternion>> {
    text.split(',')
        .map(|part| to_quaternion(&super::parse_expression(part)?))
        .collect()
}

/// Rows separated by `;`, entries by `,`.
pub fn quaternion_matrix(text: &str) -> Result<Vec<Vec<Quaternion>>> {
    text.split(';').map(quaternion_list).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_expression;
    use crate::scalars::rat;

    fn q(text: &str) -> Quaternion {
        to_quaternion(&parse_expression(text).unwrap()).unwrap()
    }

    #[test]
    fn quaternion_arithmetic() {
        assert_eq!(q("i*j"), Quaternion::k());
        assert_eq!(q("j*i"), -Quaternion::k());
        assert_eq!(q("(1+i)^2"), Quaternion::i().scale(&rat(2, 1)));
        assert_eq!(q("1/2+3i-j"), "1/2+3i-j".parse().unwrap());
        assert!(to_quaternion(&parse_expression("t").unwrap()).is_err());
    }

    #[test]
    fn polynomial_context() {
        let p = to_polynomial(&parse_expression("t^2 - (i+j)*t - k").unwrap()).unwrap();
        assert_eq!(p.to_string(), "t^2 + (-i-j)*t - k");
        let p = to_polynomial(&parse_expression("i + j*t").unwrap()).unwrap();
        assert_eq!(
            p.eval_left(&Quaternion::k()),
            Quaternion::i().scale(&rat(2, 1))
        );
        assert!(p.eval_right(&Quaternion::k()).is_zero());
    }

    #[test]
    fn free_context() {
        let e = to_free(&parse_expression("y2@3").unwrap(), None).unwrap();
        assert_eq!(e, chain_generator(2));
        assert!(to_free(&parse_expression("y2").unwrap(), None).is_err());
        assert!(to_free(&parse_expression("y2@3").unwrap(), Some(4)).is_err());
        assert!(to_free(&parse_expression("i").unwrap(), Some(3)).is_err());
        let t = to_tensor(&parse_expression("z1 (x) z2").unwrap(), None).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn lists() {
        assert_eq!(
            quaternion_list("i, j").unwrap(),
            vec![Quaternion::i(), Quaternion::j()]
        );
        assert_eq!(quaternion_matrix("1,i;j,1").unwrap().len(), 2);
    }
}
