use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `p`, `-p` or `p/q` (no surrounding whitespace inside the literal).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = |msg: &str| Error::Parse {
        offset: 0,
        message: format!("{msg}: {text:?}"),
        expected: vec!["rational literal".into()],
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = den.trim().parse().map_err(|_| bad("bad denominator"))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` form used in JSON (always with an explicit denominator).
pub fn to_pq_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn is_one(q: &Rational) -> bool {
    q.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("2/-4").unwrap(), rat(-1, 2));
        assert!(matches!(parse_rational("1/0"), Err(Error::DivisionByZero)));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_pq() {
        assert_eq!(to_pq_string(&rat(4, 2)), "2/1");
        assert_eq!(to_pq_string(&rat(-1, 3)), "-1/3");
        assert_eq!(to_pq_string(&rat(0, 5)), "0/1");
    }
}
