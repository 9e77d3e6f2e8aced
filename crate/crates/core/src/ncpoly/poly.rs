use std::fmt;

use crate::scalars::{DivisionRing, Quaternion};

/// `a_0 + a_1 t + ... + a_n t^n` with the coefficients written to the left of `t`.
///
/// `t` is central, so products collect as `(b t^k)(c t^l) = (b c) t^(k+l)`.
/// Trailing zero coefficients are never stored; the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftPolynomial<R> {
    coeffs: Vec<R>,
}

impl<R: DivisionRing> LeftPolynomial<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LeftPolynomial { coeffs }
    }

    /// Monic polynomial `a_0 + ... + a_{n-1} t^{n-1} + t^n` from its lower coefficients.
    pub fn monic(mut lower: Vec<R>) -> Self {
        lower.push(R::one());
        LeftPolynomial { coeffs: lower }
    }

    pub fn zero() -> Self {
        LeftPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        LeftPolynomial {
            coeffs: vec![R::zero(), R::one()],
        }
    }

    /// The linear factor `t - x`.
    pub fn linear(x: R) -> Self {
        Self::monic(vec![-x])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == R::one())
    }

    /// `a_0 + a_1 x + ... + a_n x^n`.
    pub fn eval_left(&self, x: &R) -> R {
        // Horner from the top: ((a_n x + a_{n-1}) x + ...) keeps x on the right.
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    /// `a_0 + x a_1 + ... + x^n a_n`, the other way of plugging in. Only
    /// useful to show that the choice matters.
    pub fn eval_right(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, a| x.clone() * acc + a.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        LeftPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Expands `g(t) h(t)` and collects every power of `t` to the right.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (k, b) in self.coeffs.iter().enumerate() {
            for (l, c) in other.coeffs.iter().enumerate() {
                out[k + l] = out[k + l].clone() + b.clone() * c.clone();
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(R::one()), |acc, _| acc.mul(self))
    }

    /// Synthetic division by `t - x` on the right: returns `(q, r)` with
    /// `f = q (t - x) + r` and `r = f(x)`.
    ///
    /// Requires degree at least 1.
    pub fn right_divide(&self, x: &R) -> (Self, R) {
        let n = self.coeffs.len();
        assert!(n >= 2, "right_divide needs a polynomial of degree >= 1");
        let mut b = vec![R::zero(); n - 1];
        b[n - 2] = self.coeffs[n - 1].clone();
        for k in (1..n - 1).rev() {
            b[k - 1] = self.coeffs[k].clone() + b[k].clone() * x.clone();
        }
        let rem = self.coeffs[0].clone() + b[0].clone() * x.clone();
        (Self::from_coeffs(b), rem)
    }
}

/// `f(x)` for `f = g h`, computed from the factors:
/// `0` when `h(x) = 0`, else `g(a x a^-1) a` with `a = h(x)`.
pub fn eval_factored<R: DivisionRing>(g: &LeftPolynomial<R>, h: &LeftPolynomial<R>, x: &R) -> R {
    let a = h.eval_left(x);
    match a.inverse() {
        None => R::zero(),
        Some(a_inv) => {
            let conj = a.clone() * x.clone() * a_inv;
            g.eval_left(&conj) * a
        }
    }
}

impl fmt::Display for LeftPolynomial<Quaternion> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let s = c.to_string();
            let single = s.chars().skip(1).all(|ch| ch != '+' && ch != '-');
            let body = if k == 0 {
                s
            } else if *c == Quaternion::one() {
                power
            } else if *c == -Quaternion::one() {
                format!("-{power}")
            } else if single {
                format!("{s}*{power}")
            } else {
                format!("({s})*{power}")
            };
            if first {
                f.write_str(&body)?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::random_quaternion;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> Quaternion {
        s.parse().unwrap()
    }

    fn example_two() -> LeftPolynomial<Quaternion> {
        LeftPolynomial::monic(vec![q("-k"), q("-i-j")])
    }

    #[test]
    fn evaluation_order_matters() {
        let f = LeftPolynomial::from_coeffs(vec![q("i"), q("j")]);
        assert_eq!(f.eval_left(&q("k")), q("2i"));
        assert_eq!(f.eval_right(&q("k")), q("0"));
    }

    #[test]
    fn constant_term_at_zero() {
        let f = LeftPolynomial::monic(vec![q("1+i"), q("j"), q("3k")]);
        assert_eq!(f.eval_left(&Quaternion::zero()), q("1+i"));
    }

    #[test]
    fn products_of_linear_factors() {
        let f = LeftPolynomial::linear(q("j")).mul(&LeftPolynomial::linear(q("i")));
        assert_eq!(f, example_two());
        let x = q("1+2j");
        let g = LeftPolynomial::linear(x.clone()).mul(&LeftPolynomial::t());
        assert_eq!(g, LeftPolynomial::from_coeffs(vec![q("0"), -x, q("1")]));
        let h = LeftPolynomial::linear(q("-i")).mul(&LeftPolynomial::linear(q("i")));
        assert_eq!(h, LeftPolynomial::monic(vec![q("1"), q("0")]));
    }

    #[test]
    fn synthetic_division_examples() {
        let f = LeftPolynomial::monic(vec![q("1"), q("0")]);
        let (quo, rem) = f.right_divide(&q("i"));
        assert_eq!(quo, LeftPolynomial::monic(vec![q("i")]));
        assert_eq!(rem, q("0"));

        let (quo, rem) = example_two().right_divide(&q("i"));
        assert_eq!(quo, LeftPolynomial::linear(q("j")));
        assert_eq!(rem, q("0"));

        let (_, rem) = example_two().right_divide(&q("j"));
        assert_eq!(rem, q("-2k"));
    }

    #[test]
    fn only_i_among_unit_imaginaries() {
        let f = example_two();
        let roots: Vec<String> = ["i", "-i", "j", "-j", "k", "-k"]
            .into_iter()
            .filter(|s| f.eval_left(&q(s)).is_zero())
            .map(String::from)
            .collect();
        assert_eq!(roots, vec!["i"]);
    }

    #[test]
    fn factored_evaluation_examples() {
        let g = LeftPolynomial::linear(q("j"));
        let h = LeftPolynomial::linear(q("i"));
        assert_eq!(eval_factored(&g, &h, &q("i")), q("0"));
        assert_eq!(eval_factored(&g, &h, &q("k")), q("-1-i+j-k"));
        assert_eq!(example_two().eval_left(&q("k")), q("-1-i+j-k"));
        let g = LeftPolynomial::monic(vec![q("3+j"), q("i")]);
        assert_eq!(eval_factored(&g, &LeftPolynomial::t(), &q("0")), q("0"));
    }

    #[test]
    fn display_left_form() {
        assert_eq!(example_two().to_string(), "t^2 + (-i-j)*t - k");
        assert_eq!(
            LeftPolynomial::monic(vec![q("1"), q("0")]).to_string(),
            "t^2 + 1"
        );
        assert_eq!(LeftPolynomial::<Quaternion>::zero().to_string(), "0");
        assert_eq!(LeftPolynomial::linear(q("i")).to_string(), "t - i");
    }

    fn random_monic(rng: &mut ChaCha8Rng, max_degree: usize) -> LeftPolynomial<Quaternion> {
        let n = rng.gen_range(1..=max_degree);
        LeftPolynomial::monic((0..n).map(|_| random_quaternion(rng)).collect())
    }

    #[test]
    fn remainder_theorem_holds_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let f = random_monic(&mut rng, 4);
            let x = random_quaternion(&mut rng);
            let (quo, rem) = f.right_divide(&x);
            let back = quo
                .mul(&LeftPolynomial::linear(x.clone()))
                .add(&LeftPolynomial::constant(rem.clone()));
            assert_eq!(back, f);
            assert_eq!(rem, f.eval_left(&x));
        }
    }

    #[test]
    fn factored_evaluation_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let g = random_monic(&mut rng, 3);
            let h = random_monic(&mut rng, 3);
            let x = random_quaternion(&mut rng);
            assert_eq!(eval_factored(&g, &h, &x), g.mul(&h).eval_left(&x));
        }
    }
}
