use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::symbol::GeneratorSymbol;
use super::word_degree;
use crate::scalars::Rational;

/// A monomial; the empty word is the unit.
pub type Word = Vec<GeneratorSymbol>;

/// Finite rational combination of words. Zero coefficients are never stored,
/// so equality of elements is equality of maps.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct FreeElement {
    terms: BTreeMap<Word, Rational>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn generator(sym: GeneratorSymbol) -> Self {
        Self::monomial(vec![sym], Rational::one())
    }

    pub fn monomial(word: Word, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(word, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, word: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[GeneratorSymbol]) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&[])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Splits into homogeneous pieces keyed by degree.
    pub fn graded_components(&self) -> BTreeMap<u32, FreeElement> {
        let mut out: BTreeMap<u32, FreeElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(word_degree(w))
                .or_default()
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        FreeElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| word_degree(w) == degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = &GeneratorSymbol> {
        self.terms.keys().flatten()
    }

    /// The algebra map sending each generator `g` to `image(g)`.
    pub fn substitute<E, F>(&self, mut image: F) -> Result<Self, E>
    where
        F: FnMut(&GeneratorSymbol) -> Result<FreeElement, E>,
    {
        let mut cache: BTreeMap<GeneratorSymbol, FreeElement> = BTreeMap::new();
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::scalar(c.clone());
            for g in w {
                if !cache.contains_key(g) {
                    cache.insert(*g, image(g)?);
                }
                acc = &acc * &cache[g];
            }
            out = &out + &acc;
        }
        Ok(out)
    }
}

impl Add<&FreeElement> for &FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&FreeElement> for &FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

/// Concatenation product, extended bilinearly.
impl Mul<&FreeElement> for &FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                let mut w = Vec::with_capacity(u.len() + v.len());
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FreeElement> for FreeElement {
            type Output = FreeElement;
            fn $m(self, rhs: FreeElement) -> FreeElement {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl From<GeneratorSymbol> for FreeElement {
    fn from(g: GeneratorSymbol) -> Self {
        FreeElement::generator(g)
    }
}

pub(crate) fn fmt_word(w: &[GeneratorSymbol]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join("*")
}

/// Writes `sum c_w w` as `a - 2*b + 1/2*c`, unit coefficients elided.
pub(crate) fn fmt_linear<'a, K: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a Rational)>,
    label: impl Fn(&K) -> String,
    unit_label: &str,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let mag = c.abs();
        let name = label(k);
        let body = match (mag.is_one(), name == unit_label) {
            (_, true) => mag.to_string(),
            (true, false) => name,
            (false, false) => format!("{mag}*{name}"),
        };
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(f, self.terms.iter(), |w| fmt_word(w), "1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Subset;
    use crate::scalars::rat;
    use proptest::prelude::*;

    fn z(r: u32) -> FreeElement {
        GeneratorSymbol::z(r).into()
    }

    fn y(r: u32) -> FreeElement {
        GeneratorSymbol::pseudo_root(Subset::range(r - 1), r).into()
    }

    #[test]
    fn unit_and_products() {
        let a = &z(2) + &z(1).scale(&rat(3, 1));
        assert_eq!(&FreeElement::one() * &a, a);
        let zz = &z(1) * &z(1);
        assert_eq!(zz.len(), 1);
        assert_eq!(
            zz.coeff(&[GeneratorSymbol::Z(1), GeneratorSymbol::Z(1)]),
            rat(1, 1)
        );
        let lhs = &(&y(3) + &y(2)) * &y(1);
        assert_eq!(lhs, &(&y(3) * &y(1)) + &(&y(2) * &y(1)));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = &z(1) - &z(1);
        assert!(a.is_zero());
        assert_eq!(a, FreeElement::zero());
    }

    #[test]
    fn grading_by_symbol_degree() {
        let e = &(&z(2) * &z(1)) + &FreeElement::scalar(rat(5, 1));
        let parts = e.graded_components();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0, 3]);
        let q = &y(2) * &y(1);
        assert_eq!(
            q.graded_components().keys().copied().collect::<Vec<_>>(),
            vec![2]
        );
    }

    #[test]
    fn display() {
        let e = &(&z(2) * &z(1)).scale(&rat(-1, 1)) + &FreeElement::scalar(rat(5, 1));
        assert_eq!(e.to_string(), "5 - z2*z1");
        assert_eq!(FreeElement::zero().to_string(), "0");
        assert_eq!(z(1).scale(&rat(3, 2)).to_string(), "3/2*z1");
    }

    fn element() -> impl Strategy<Value = FreeElement> {
        let term = (prop::collection::vec(1u32..=3, 0..3), -3i64..=3).prop_map(|(w, c)| {
            (
                w.into_iter().map(GeneratorSymbol::Z).collect::<Word>(),
                rat(c, 1),
            )
        });
        prop::collection::vec(term, 0..4).prop_map(FreeElement::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in element(), b in element(), c in element()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn degree_is_additive(a in element(), b in element()) {
            for (da, pa) in a.graded_components() {
                for (db, pb) in b.graded_components() {
                    let prod = &pa * &pb;
                    prop_assert!(prod.iter().all(|(w, _)| word_degree(w) == da + db));
                }
            }
        }
    }
}
