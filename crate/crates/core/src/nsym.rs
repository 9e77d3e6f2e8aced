//! Noncommutative symmetric functions: the free algebra on `z_1, z_2, ...`
//! with `Δ(z_r) = Σ_{i+j=r} z_i ⊗ z_j`, `ε(z_r) = δ_{0r}` and the antipode
//! obtained by induction on weight.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{FreeElement, GeneratorSymbol, Tensor, TensorElement, Word};
use crate::scalars::Rational;

/// A sequence of positive parts, indexing the word `z_{γ_1} ... z_{γ_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid("composition parts must be positive".into()));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn word(&self) -> Word {
        self.0.iter().map(|&r| GeneratorSymbol::z(r)).collect()
    }

    pub fn element(&self) -> FreeElement {
        FreeElement::monomial(self.word(), Rational::one())
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All `2^{w-1}` compositions of `w` (just the empty one for `w = 0`), in lexicographic order.
pub fn compositions(w: u32) -> Vec<Composition> {
    fn rec(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for first in 1..=rest {
            prefix.push(first);
            rec(rest - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(w, &mut Vec::new(), &mut out);
    out
}

/// The generator `z_r`; `z_0` is the unit.
pub fn z(r: u32) -> FreeElement {
    if r == 0 {
        FreeElement::one()
    } else {
        GeneratorSymbol::z(r).into()
    }
}

fn z_index(sym: &GeneratorSymbol) -> Result<u32> {
    match sym {
        GeneratorSymbol::Z(r) => Ok(*r),
        other => Err(Error::Invalid(format!("{other} is not an NSym generator"))),
    }
}

fn check_symbols(e: &FreeElement) -> Result<()> {
    e.symbols().try_for_each(|s| z_index(s).map(|_| ()))
}

fn generator_coproduct(r: u32) -> TensorElement {
    let mut t = TensorElement::zero();
    for i in 0..=r {
        t = &t + &TensorElement::pure([&z(i), &z(r - i)]);
    }
    t
}

fn word_coproduct(w: &[GeneratorSymbol]) -> Result<TensorElement> {
    let mut t = TensorElement::one();
    for s in w {
        t = &t * &generator_coproduct(z_index(s)?);
    }
    Ok(t)
}

/// `Δ`, extended multiplicatively from the generators.
pub fn coproduct(e: &FreeElement) -> Result<TensorElement> {
    let mut out = TensorElement::zero();
    for (w, c) in e.iter() {
        out = &out + &word_coproduct(w)?.scale(c);
    }
    Ok(out)
}

/// `ε`: the coefficient of the empty word.
pub fn counit(e: &FreeElement) -> Result<Rational> {
    check_symbols(e)?;
    Ok(e.constant_term())
}

fn generator_antipode(r: u32) -> FreeElement {
    static MEMO: OnceLock<RwLock<HashMap<u32, FreeElement>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(s) = memo.read().expect("antipode memo poisoned").get(&r) {
        return s.clone();
    }
    let mut s = -&z(r);
    for i in 1..r {
        s = &s - &(&generator_antipode(i) * &z(r - i));
    }
    memo.write()
        .expect("antipode memo poisoned")
        .entry(r)
        .or_insert(s)
        .clone()
}

/// The antipode, an algebra antimorphism with `s(z_r) = -z_r - Σ_{0<i<r} s(z_i) z_{r-i}`.
pub fn antipode(e: &FreeElement) -> Result<FreeElement> {
    let mut out = FreeElement::zero();
    for (w, c) in e.iter() {
        let mut term = FreeElement::scalar(c.clone());
        for s in w {
            term = &generator_antipode(z_index(s)?) * &term;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Checks that `e` lies in the sub-Hopf algebra generated by `z_1..z_n`.
pub fn restrict(e: &FreeElement, n: u32) -> Result<FreeElement> {
    for s in e.symbols() {
        let r = z_index(s)?;
        if r > n {
            return Err(Error::GeneratorOutOfRange { index: r, n });
        }
    }
    Ok(e.clone())
}

/// `m ∘ (f ⊗ g)` on a tensor.
fn multiply_legs(
    t: &TensorElement,
    f: impl Fn(&FreeElement) -> Result<FreeElement>,
    g: impl Fn(&FreeElement) -> Result<FreeElement>,
) -> Result<FreeElement> {
    let mut out = FreeElement::zero();
    for ([u, v], c) in t.iter() {
        let a = f(&FreeElement::monomial(u.clone(), c.clone()))?;
        let b = g(&FreeElement::monomial(v.clone(), Rational::one()))?;
        out = &out + &(&a * &b);
    }
    Ok(out)
}

fn coproduct_left(t: &TensorElement) -> Result<Tensor<3>> {
    let mut out = Tensor::<3>::zero();
    for ([u, v], c) in t.iter() {
        for ([a, b], d) in word_coproduct(u)?.iter() {
            out.add_term([a.clone(), b.clone(), v.clone()], c * d);
        }
    }
    Ok(out)
}

fn coproduct_right(t: &TensorElement) -> Result<Tensor<3>> {
    let mut out = Tensor::<3>::zero();
    for ([u, v], c) in t.iter() {
        for ([a, b], d) in word_coproduct(v)?.iter() {
            out.add_term([u.clone(), a.clone(), b.clone()], c * d);
        }
    }
    Ok(out)
}

/// Outcome of the Hopf axiom suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub max_weight: u32,
    /// Basis words `z_γ` checked, including the unit.
    pub words_checked: usize,
    /// Pairs `(z_α, z_β)` used for the algebra-map checks.
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for HopfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "weight <= {}: {} words, {} pairs",
            self.max_weight, self.words_checked, self.pairs_checked
        )?;
        for axiom in [
            "coassociativity",
            "counit",
            "coproduct multiplicative",
            "counit multiplicative",
            "antipode (s (x) id)",
            "antipode (id (x) s)",
        ] {
            let bad = self
                .failures
                .iter()
                .filter(|m| m.starts_with(axiom))
                .count();
            writeln!(
                f,
                "  {axiom}: {}",
                if bad == 0 {
                    "ok".to_string()
                } else {
                    format!("{bad} failures")
                }
            )?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Coassociativity, both counit identities, multiplicativity of `Δ` and `ε`,
/// and both antipode identities on every `z_γ` of weight at most `max_weight`.
pub fn hopf_check(max_weight: u32) -> Result<HopfReport> {
    let words: Vec<Composition> = (0..=max_weight).flat_map(compositions).collect();
    let id = |e: &FreeElement| Ok(e.clone());
    let mut failures = Vec::new();
    for gamma in &words {
        let x = gamma.element();
        let d = coproduct(&x)?;
        if coproduct_left(&d)? != coproduct_right(&d)? {
            failures.push(format!("coassociativity fails on z{gamma}"));
        }
        let eps = |e: &FreeElement| Ok(FreeElement::scalar(counit(e)?));
        if multiply_legs(&d, eps, id)? != x || multiply_legs(&d, id, eps)? != x {
            failures.push(format!("counit identity fails on z{gamma}"));
        }
        let unit_eps = FreeElement::scalar(counit(&x)?);
        if multiply_legs(&d, antipode, id)? != unit_eps {
            failures.push(format!("antipode (s (x) id) fails on z{gamma}"));
        }
        if multiply_legs(&d, id, antipode)? != unit_eps {
            failures.push(format!("antipode (id (x) s) fails on z{gamma}"));
        }
    }
    let mut pairs_checked = 0;
    for a in &words {
        for b in words
            .iter()
            .filter(|b| a.weight() + b.weight() <= max_weight)
        {
            pairs_checked += 1;
            let (xa, xb) = (a.element(), b.element());
            let ab = &xa * &xb;
            if coproduct(&ab)? != &coproduct(&xa)? * &coproduct(&xb)? {
                failures.push(format!("coproduct multiplicative fails on z{a} z{b}"));
            }
            if counit(&ab)? != counit(&xa)? * counit(&xb)? {
                failures.push(format!("counit multiplicative fails on z{a} z{b}"));
            }
        }
    }
    Ok(HopfReport {
        max_weight,
        words_checked: words.len(),
        pairs_checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use proptest::prelude::*;

    fn zw(parts: &[u32]) -> FreeElement {
        Composition::new(parts.to_vec()).unwrap().element()
    }

    fn pure(a: &FreeElement, b: &FreeElement) -> TensorElement {
        TensorElement::pure([a, b])
    }

    #[test]
    fn composition_counts() {
        for w in 0..=7u32 {
            let expect = if w == 0 { 1 } else { 1 << (w - 1) };
            assert_eq!(compositions(w).len(), expect);
            assert!(compositions(w).iter().all(|c| c.weight() == w));
        }
        assert_eq!(compositions(6).len(), 32);
        assert!(Composition::new(vec![1, 0]).is_err());
        assert_eq!(Composition::new(vec![2, 1]).unwrap().to_string(), "(2,1)");
    }

    #[test]
    fn coproduct_examples() {
        let one = FreeElement::one();
        assert_eq!(
            coproduct(&z(1)).unwrap(),
            &pure(&z(1), &one) + &pure(&one, &z(1))
        );
        let expect = &(&pure(&z(2), &one) + &pure(&z(1), &z(1))) + &pure(&one, &z(2));
        assert_eq!(coproduct(&z(2)).unwrap(), expect);
        let z11 = zw(&[1, 1]);
        let expect =
            &(&pure(&z11, &one) + &pure(&z(1), &z(1)).scale(&rat(2, 1))) + &pure(&one, &z11);
        assert_eq!(coproduct(&z11).unwrap(), expect);
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&FreeElement::one()).unwrap(), rat(1, 1));
        assert_eq!(counit(&z(3)).unwrap(), rat(0, 1));
        let e = &(&FreeElement::scalar(rat(5, 1)) + &z(1).scale(&rat(2, 1))) - &zw(&[2, 1]);
        assert_eq!(counit(&e).unwrap(), rat(5, 1));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&z(1)).unwrap(), -&z(1));
        assert_eq!(antipode(&z(2)).unwrap(), &zw(&[1, 1]) - &z(2));
        assert_eq!(antipode(&FreeElement::one()).unwrap(), FreeElement::one());
        // antimorphism
        assert_eq!(
            antipode(&zw(&[2, 1])).unwrap(),
            &antipode(&z(1)).unwrap() * &antipode(&z(2)).unwrap()
        );
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(restrict(&zw(&[2, 1]), 3).unwrap(), zw(&[2, 1]));
        assert_eq!(
            restrict(&z(4), 3),
            Err(Error::GeneratorOutOfRange { index: 4, n: 3 })
        );
        assert_eq!(
            restrict(&FreeElement::one(), 0).unwrap(),
            FreeElement::one()
        );
    }

    #[test]
    fn foreign_symbols_are_rejected() {
        let x = FreeElement::generator(GeneratorSymbol::x(crate::freealg::Subset::range(2)));
        assert!(coproduct(&x).is_err());
        assert!(antipode(&x).is_err());
        assert!(counit(&x).is_err());
    }

    #[test]
    fn hopf_axioms_to_weight_four() {
        let report = hopf_check(4).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.words_checked, 16);
    }

    #[test]
    fn antipode_is_involutive() {
        for gamma in (0..=5).flat_map(compositions) {
            let x = gamma.element();
            assert_eq!(antipode(&antipode(&x).unwrap()).unwrap(), x);
        }
    }

    proptest! {
        #[test]
        fn coproduct_is_graded(parts in proptest::collection::vec(1u32..4, 0..4)) {
            let x = zw(&parts);
            let w: u32 = parts.iter().sum();
            for ([u, v], _) in coproduct(&x).unwrap().iter() {
                let deg = |w: &Word| crate::freealg::word_degree(w);
                prop_assert_eq!(deg(u) + deg(v), w);
            }
        }
    }
}
