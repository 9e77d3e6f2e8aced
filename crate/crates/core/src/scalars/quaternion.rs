use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::rational::{is_one, Rational};
use crate::error::{Error, Result};

/// One of the imaginary units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    I,
    J,
    K,
}

impl Unit {
    pub fn symbol(self) -> char {
        match self {
            Unit::I => 'i',
            Unit::J => 'j',
            Unit::K => 'k',
        }
    }

    pub fn from_char(c: char) -> Option<Unit> {
        match c {
            'i' => Some(Unit::I),
            'j' => Some(Unit::J),
            'k' => Some(Unit::K),
            _ => None,
        }
    }
}

/// `w + x i + y j + z k` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Quaternion {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(w: Rational) -> Self {
        Quaternion {
            w,
            x: Rational::zero(),
            y: Rational::zero(),
            z: Rational::zero(),
        }
    }

    pub fn from_int(w: i64) -> Self {
        Self::from_rational(Rational::from_integer(w.into()))
    }

    pub fn unit(u: Unit) -> Self {
        Self::unit_scaled(u, Rational::one())
    }

    pub fn unit_scaled(u: Unit, c: Rational) -> Self {
        let mut q = Self::zero();
        match u {
            Unit::I => q.x = c,
            Unit::J => q.y = c,
            Unit::K => q.z = c,
        }
        q
    }

    pub fn i() -> Self {
        Self::unit(Unit::I)
    }

    pub fn j() -> Self {
        Self::unit(Unit::J)
    }

    pub fn k() -> Self {
        Self::unit(Unit::K)
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// True when the imaginary part vanishes, i.e. the element lies in the center.
    pub fn is_central(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quaternion {
            w: self.w.clone(),
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }

    /// Reduced norm `w² + x² + y² + z²`.
    pub fn norm(&self) -> Rational {
        &self.w * &self.w + &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Quaternion {
            w: &self.w * c,
            x: &self.x * c,
            y: &self.y * c,
            z: &self.z * c,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion {
            w: &self.w + &rhs.w,
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &self.z + &rhs.z,
        }
    }
}

impl Sub<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion {
            w: &self.w - &rhs.w,
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            z: &self.z - &rhs.z,
        }
    }
}

impl Mul<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn mul(self, b: &Quaternion) -> Quaternion {
        let a = self;
        Quaternion {
            w: &a.w * &b.w - &a.x * &b.x - &a.y * &b.y - &a.z * &b.z,
            x: &a.w * &b.x + &a.x * &b.w + &a.y * &b.z - &a.z * &b.y,
            y: &a.w * &b.y - &a.x * &b.z + &a.y * &b.w + &a.z * &b.x,
            z: &a.w * &b.z + &a.x * &b.y - &a.y * &b.x + &a.z * &b.w,
        }
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion {
            w: -&self.w,
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Quaternion> for Quaternion {
            type Output = Quaternion;
            fn $m(self, rhs: Quaternion) -> Quaternion {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Quaternion> for Quaternion {
            type Output = Quaternion;
            fn $m(self, rhs: &Quaternion) -> Quaternion {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl From<Rational> for Quaternion {
    fn from(w: Rational) -> Self {
        Quaternion::from_rational(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            (&self.w, None),
            (&self.x, Some('i')),
            (&self.y, Some('j')),
            (&self.z, Some('k')),
        ];
        let mut first = true;
        for (c, unit) in parts {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            match unit {
                Some(u) if is_one(&mag) => write!(f, "{u}")?,
                Some(u) => write!(f, "{mag}{u}")?,
                None => write!(f, "{mag}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Literal syntax `a+bi+cj+dk` with rational coefficients, e.g. `1/2+3i-j`.
impl FromStr for Quaternion {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut acc = Quaternion::zero();
        let mut first = true;
        let err = |offset: usize, message: &str, expected: &[&str]| Error::Parse {
            offset,
            message: message.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                if first {
                    return Err(err(pos, "empty quaternion literal", &["term"]));
                }
                return Ok(acc);
            }
            let mut negative = false;
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    negative = true;
                    pos += 1
                }
                _ if !first => return Err(err(pos, "missing sign between terms", &["+", "-"])),
                _ => {}
            }
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'/' && pos > start {
                pos += 1;
                let dstart = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if dstart == pos {
                    return Err(err(pos, "missing denominator", &["digit"]));
                }
            }
            let coeff = if pos > start {
                Some(super::parse_rational(&text[start..pos])?)
            } else {
                None
            };
            let unit = bytes.get(pos).and_then(|&b| Unit::from_char(b as char));
            if unit.is_some() {
                pos += 1;
            }
            let term = match (coeff, unit) {
                (None, None) => {
                    return Err(err(
                        pos,
                        "expected a coefficient or unit",
                        &["digit", "i", "j", "k"],
                    ))
                }
                (Some(c), None) => Quaternion::from_rational(c),
                (c, Some(u)) => Quaternion::unit_scaled(u, c.unwrap_or_else(Rational::one)),
            };
            acc = if negative { &acc - &term } else { &acc + &term };
            first = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use proptest::prelude::*;

    fn q(s: &str) -> Quaternion {
        s.parse().unwrap()
    }

    #[test]
    fn unit_table() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&i * &i, Quaternion::from_int(-1));
        assert_eq!(&(&i * &j) * &k, Quaternion::from_int(-1));
        let d = &j - &i;
        assert_eq!(&d * &d, Quaternion::from_int(-2));
    }

    #[test]
    fn inverses() {
        assert_eq!(Quaternion::one().inv().unwrap(), Quaternion::one());
        assert_eq!(Quaternion::i().inv().unwrap(), -Quaternion::i());
        let d = q("j-i");
        assert_eq!(d.inv().unwrap(), q("1/2i-1/2j"));
        assert_eq!(Quaternion::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn literal_round_trip() {
        for s in ["0", "1/2+3i-j", "-1-i+j-k", "2i", "-i", "7/3k", "1+i"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q(" 1/2 + 3i - j "), q("1/2+3i-j"));
        assert_eq!(q("2/4i"), Quaternion::unit_scaled(Unit::I, rat(1, 2)));
        assert!("i j".parse::<Quaternion>().is_err());
        assert!("".parse::<Quaternion>().is_err());
        assert!("1/i".parse::<Quaternion>().is_err());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-10i64..=10, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        (
            small_rational(),
            small_rational(),
            small_rational(),
            small_rational(),
        )
            .prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in quat(), b in quat()) {
            prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        }

        #[test]
        fn inverse_of_product(a in quat(), b in quat()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let lhs = (&a * &b).inv().unwrap();
            let rhs = &b.inv().unwrap() * &a.inv().unwrap();
            prop_assert_eq!(lhs, rhs);
            let ai = a.inv().unwrap();
            prop_assert_eq!(&a * &ai, Quaternion::one());
            prop_assert_eq!(&ai * &a, Quaternion::one());
        }

        #[test]
        fn display_parses_back(a in quat()) {
            prop_assert_eq!(a.to_string().parse::<Quaternion>().unwrap(), a);
        }
    }

    #[test]
    fn real_elements_are_central() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut r = || rat(rng.gen_range(-10..=10), rng.gen_range(1..=5));
        let c = Quaternion::from_rational(rat(-7, 3));
        for _ in 0..200 {
            let a = Quaternion::new(r(), r(), r(), r());
            assert_eq!(&a * &c, &c * &a);
        }
        assert!(c.is_central());
        assert!(!Quaternion::i().is_central());
    }
}
