use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::element::{fmt_linear, fmt_word, FreeElement, Word};
use super::word_degree;
use crate::scalars::Rational;

/// Element of the `K`-fold tensor power of the free algebra, stored on pure
/// tensors of words. Multiplication is legwise with no signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor<const K: usize> {
    terms: BTreeMap<[Word; K], Rational>,
}

/// `A ⊗ A`.
pub type TensorElement = Tensor<2>;

impl<const K: usize> Default for Tensor<K> {
    fn default() -> Self {
        Tensor {
            terms: BTreeMap::new(),
        }
    }
}

impl<const K: usize> Tensor<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(std::array::from_fn(|_| Vec::new()), Rational::one())
    }

    pub fn basis(words: [Word; K], c: Rational) -> Self {
        let mut t = Self::zero();
        t.add_term(words, c);
        t
    }

    /// `a_1 ⊗ ... ⊗ a_K`, expanded.
    pub fn pure(legs: [&FreeElement; K]) -> Self {
        let mut acc: Vec<(Vec<Word>, Rational)> = vec![(Vec::new(), Rational::one())];
        for leg in legs {
            let mut next = Vec::with_capacity(acc.len() * leg.len());
            for (ws, c) in &acc {
                for (w, d) in leg.iter() {
                    let mut ws = ws.clone();
                    ws.push(w.clone());
                    next.push((ws, c * d));
                }
            }
            acc = next;
        }
        let mut t = Self::zero();
        for (ws, c) in acc {
            let arr: [Word; K] = ws.try_into().expect("one word per leg");
            t.add_term(arr, c);
        }
        t
    }

    pub fn add_term(&mut self, words: [Word; K], c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(words) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<[Word; K], Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Word; K], &Rational)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, words: &[Word; K]) -> Rational {
        self.terms
            .get(words)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Tensor {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn multidegree(words: &[Word; K]) -> [u32; K] {
        std::array::from_fn(|i| word_degree(&words[i]))
    }

    /// The component of the given multidegree.
    pub fn project(&self, degrees: [u32; K]) -> Self {
        Tensor {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| Self::multidegree(k) == degrees)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn components(&self) -> BTreeMap<[u32; K], Self> {
        let mut out: BTreeMap<[u32; K], Self> = BTreeMap::new();
        for (k, v) in &self.terms {
            out.entry(Self::multidegree(k))
                .or_default()
                .terms
                .insert(k.clone(), v.clone());
        }
        out
    }

    /// Applies a linear map to every leg, `f(leg index, word)`, and expands.
    pub fn map_legs<E, F>(&self, mut f: F) -> Result<Self, E>
    where
        F: FnMut(usize, &Word) -> Result<FreeElement, E>,
    {
        let mut out = Self::zero();
        for (words, c) in &self.terms {
            let images = words
                .iter()
                .enumerate()
                .map(|(i, w)| f(i, w))
                .collect::<Result<Vec<_>, E>>()?;
            let refs: [&FreeElement; K] = std::array::from_fn(|i| &images[i]);
            out = &out + &Self::pure(refs).scale(c);
        }
        Ok(out)
    }
}

impl TensorElement {
    /// The `(i, j)` bidegree component.
    pub fn bidegree_project(&self, i: u32, j: u32) -> Self {
        self.project([i, j])
    }
}

impl<const K: usize> Add<&Tensor<K>> for &Tensor<K> {
    type Output = Tensor<K>;
    fn add(self, rhs: &Tensor<K>) -> Tensor<K> {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl<const K: usize> Sub<&Tensor<K>> for &Tensor<K> {
    type Output = Tensor<K>;
    fn sub(self, rhs: &Tensor<K>) -> Tensor<K> {
        self + &(-rhs)
    }
}

impl<const K: usize> Neg for &Tensor<K> {
    type Output = Tensor<K>;
    fn neg(self) -> Tensor<K> {
        Tensor {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

/// `(u_1 ⊗ ... ⊗ u_K)(v_1 ⊗ ... ⊗ v_K) = u_1 v_1 ⊗ ... ⊗ u_K v_K`.
impl<const K: usize> Mul<&Tensor<K>> for &Tensor<K> {
    type Output = Tensor<K>;
    fn mul(self, rhs: &Tensor<K>) -> Tensor<K> {
        let mut out = Tensor::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let words: [Word; K] = std::array::from_fn(|i| {
                    let mut w = a[i].clone();
                    w.extend_from_slice(&b[i]);
                    w
                });
                out.add_term(words, x * y);
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    /// Groups by left leg: `u (x) (v + 2*w) + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut by_left: BTreeMap<&Word, FreeElement> = BTreeMap::new();
        for ([u, v], c) in &self.terms {
            by_left.entry(u).or_default().add_term(v.clone(), c.clone());
        }
        let mut first = true;
        for (u, right) in by_left {
            // a single right term carries its coefficient on the left leg
            let (left, r) = match right.iter().next() {
                Some((v, c)) if right.len() == 1 => {
                    let left = FreeElement::monomial(u.clone(), c.clone()).to_string();
                    (left, fmt_word(v))
                }
                _ => (fmt_word(u), format!("({right})")),
            };
            match (first, left.strip_prefix('-')) {
                (true, _) => f.write_str(&left)?,
                (false, Some(rest)) => write!(f, " - {rest}")?,
                (false, None) => write!(f, " + {left}")?,
            }
            first = false;
            write!(f, " (x) {r}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Tensor<3> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(
            f,
            self.terms.iter(),
            |[a, b, c]| format!("{} (x) {} (x) {}", fmt_word(a), fmt_word(b), fmt_word(c)),
            "",
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{GeneratorSymbol, Subset};
    use crate::scalars::rat;
    use proptest::prelude::*;

    fn y(r: u32) -> FreeElement {
        GeneratorSymbol::pseudo_root(Subset::range(r - 1), r).into()
    }

    fn t(a: &FreeElement, b: &FreeElement) -> TensorElement {
        TensorElement::pure([a, b])
    }

    #[test]
    fn legwise_product() {
        let one = FreeElement::one();
        assert_eq!(&t(&y(3), &one) * &t(&one, &y(2)), t(&y(3), &y(2)));
        assert_eq!(&t(&y(2), &one) * &t(&y(1), &one), t(&(&y(2) * &y(1)), &one));
        let s = &t(&y(1), &y(2)) + &t(&y(3), &one).scale(&rat(2, 1));
        assert_eq!(&TensorElement::one() * &s, s);
    }

    #[test]
    fn projection_examples() {
        let one = FreeElement::one();
        let e1 = &(&y(1) + &y(2)) + &y(3);
        let e2 = &(&(&y(3) * &y(2)) + &(&y(3) * &y(1))) + &(&y(2) * &y(1));
        let e1e1 = t(&e1, &e1);
        assert_eq!(e1e1.bidegree_project(1, 1), e1e1);
        let cop = &(&t(&one, &e2) + &e1e1) + &t(&e2, &one);
        assert_eq!(cop.bidegree_project(1, 1), e1e1);
        assert!(t(&(&y(3) * &y(1)), &one).bidegree_project(1, 1).is_zero());
        let sum = cop
            .components()
            .values()
            .fold(TensorElement::zero(), |acc, c| &acc + c);
        assert_eq!(sum, cop);
    }

    #[test]
    fn display_groups_by_left_leg() {
        let x = |v: &[u32]| {
            FreeElement::generator(GeneratorSymbol::x(Subset::from_elements(v.iter().copied())))
        };
        let w = t(&x(&[1, 2, 3]), &(&x(&[1, 2, 3]) - &x(&[1, 2])));
        assert_eq!(w.to_string(), "X{1,2,3} (x) (-X{1,2} + X{1,2,3})");
        let one = FreeElement::one();
        let y = &x(&[1, 2]) - &x(&[1]);
        assert_eq!(t(&y, &one).to_string(), "-X{1} (x) 1 + X{1,2} (x) 1");
        assert_eq!(
            t(&x(&[2]), &x(&[1])).scale(&rat(-3, 2)).to_string(),
            "-3/2*X{2} (x) X{1}"
        );
    }

    fn small() -> impl Strategy<Value = TensorElement> {
        let leg = prop::collection::vec(1u32..=3, 0..3).prop_map(|w| {
            w.into_iter()
                .map(|r| GeneratorSymbol::pseudo_root(Subset::range(r - 1), r))
                .collect::<Word>()
        });
        let term = (leg.clone(), leg, -2i64..=2).prop_map(|(a, b, c)| ([a, b], rat(c, 1)));
        prop::collection::vec(term, 0..4).prop_map(|ts| {
            let mut t = TensorElement::zero();
            for (k, c) in ts {
                t.add_term(k, c);
            }
            t
        })
    }

    proptest! {
        #[test]
        fn tensor_ring_axioms(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn projection_is_idempotent_and_linear(a in small(), b in small(), i in 0u32..3, j in 0u32..3) {
            let p = a.bidegree_project(i, j);
            prop_assert_eq!(p.bidegree_project(i, j), p.clone());
            prop_assert_eq!((&a + &b).bidegree_project(i, j), &p + &b.bidegree_project(i, j));
        }
    }
}
