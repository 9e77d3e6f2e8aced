//! The algebra `Q_n` of pseudo-roots.
//!
//! Generators `x_{A,i}` are rewritten as `X(A ∪ i) - X(A)`, which turns the
//! linear relations into identities and leaves a quadratic algebra on the
//! `2^n - 1` letters `X(A)`. Normal forms are computed degree by degree: the
//! span of all `u · r · v` is row-reduced with the non-admissible words as
//! pivots, so every word is rewritten over the admissible strings.

mod reduce;
mod relations;
mod strings;

pub use reduce::{
    dimension_by_rank, normal_form, normal_form_with, tensor_normal_form, Limits, QnNormalForm,
    QnTensorForm,
};
pub use relations::{
    chain_generator, gen_to_x, generators, relation_instances, to_x_form, x_of, RelationInstance,
};
pub use strings::{
    decompose, enumerate_basis, hilbert_dim, junction_allowed, AdmissibleString, StringBlock,
};

use crate::error::{Error, Result};
use crate::freealg::FreeElement;

/// `e_r = sum over i_r > ... > i_1 of y_{i_r} ... y_{i_1}` in `X`-symbols, unreduced.
pub fn elementary_free(n: u32, r: u32) -> Result<FreeElement> {
    if r == 0 || r > n {
        return Err(Error::IndexOutOfRange(format!("e_{r} in Q_{n}")));
    }
    // e[k] over y_1..y_m; the newest generator has the largest index and goes left.
    let mut e = vec![FreeElement::zero(); r as usize + 1];
    e[0] = FreeElement::one();
    for m in 1..=n {
        let y = chain_generator(m);
        for k in (1..=(m.min(r) as usize)).rev() {
            e[k] = &e[k] + &(&y * &e[k - 1]);
        }
    }
    Ok(e.swap_remove(r as usize))
}

/// Normal form of `e_r` in `Q_n`.
pub fn elementary(n: u32, r: u32) -> Result<QnNormalForm> {
    normal_form(&elementary_free(n, r)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{GeneratorSymbol, Subset};
    use crate::linalg::Echelon;
    use crate::scalars::rat;
    use std::collections::BTreeMap;

    fn big_x(v: &[u32]) -> FreeElement {
        x_of(Subset::from_elements(v.iter().copied()))
    }

    #[test]
    fn degree_one_is_already_normal() {
        let nf = normal_form(&big_x(&[1, 2, 3]), 3).unwrap();
        assert_eq!(nf.coords().len(), 1);
        assert_eq!(nf.to_free_element(), big_x(&[1, 2, 3]));
        assert!(normal_form(&FreeElement::zero(), 3).unwrap().is_zero());
    }

    #[test]
    fn product_relation_reduces_to_zero() {
        let x = |s: &[u32], i| {
            FreeElement::generator(GeneratorSymbol::pseudo_root(
                Subset::from_elements(s.iter().copied()),
                i,
            ))
        };
        let rel = &(&x(&[1], 2) * &x(&[], 1)) - &(&x(&[2], 1) * &x(&[], 2));
        assert!(normal_form(&rel, 2).unwrap().is_zero());
        assert!(normal_form(&rel, 3).unwrap().is_zero());
    }

    #[test]
    fn forbidden_word_n2() {
        // X{1,2} X{2}: rewrite via (X12 - X1) X1 = (X12 - X2) X2
        let w = &big_x(&[1, 2]) * &big_x(&[2]);
        let nf = normal_form(&w, 2).unwrap();
        let expect = &(&(&big_x(&[2]) * &big_x(&[2])) + &(&big_x(&[1, 2]) * &big_x(&[1])))
            - &(&big_x(&[1]) * &big_x(&[1]));
        assert_eq!(nf.to_free_element(), expect);
        assert!(nf.coords().keys().all(|s| s.weight() == 2));
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(
            elementary(3, 1).unwrap().to_free_element(),
            big_x(&[1, 2, 3])
        );
        assert_eq!(elementary(1, 1).unwrap().to_free_element(), big_x(&[1]));
        let e3 = elementary(3, 3).unwrap();
        let direct = normal_form(
            &(&(&chain_generator(3) * &chain_generator(2)) * &chain_generator(1)),
            3,
        )
        .unwrap();
        assert_eq!(e3, direct);
        assert!(e3.coords().keys().all(|s| s.weight() == 3));
        assert!(elementary(3, 4).is_err());
    }

    #[test]
    fn rank_oracle_matches_enumeration() {
        let limits = Limits::default();
        for (n, d) in [
            (1, 3),
            (2, 1),
            (2, 2),
            (2, 3),
            (3, 1),
            (3, 2),
            (3, 3),
            (4, 1),
            (4, 2),
        ] {
            assert_eq!(
                dimension_by_rank(n, d, &limits).unwrap(),
                hilbert_dim(n, d),
                "n={n} d={d}"
            );
        }
    }

    #[test]
    fn limits_are_enforced() {
        let tight = Limits {
            max_n: 3,
            max_degree: 2,
        };
        let w = big_x(&[1]).pow(3);
        assert!(matches!(
            normal_form_with(&w, 3, &tight),
            Err(Error::LimitExceeded(_))
        ));
        assert!(matches!(
            normal_form_with(&big_x(&[1]), 4, &tight),
            Err(Error::LimitExceeded(_))
        ));
        assert!(matches!(
            normal_form(&big_x(&[4]), 3),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn normal_form_is_multiplicative_up_to_reduction() {
        let a = &(&big_x(&[1, 2]) * &big_x(&[2])) - &big_x(&[3]).scale(&rat(2, 1));
        let b = &big_x(&[1, 3]) + &(&big_x(&[2, 3]) * &big_x(&[1, 2, 3]));
        let n = 3;
        let lhs = normal_form(&(&a * &b), n).unwrap();
        let na = normal_form(&a, n).unwrap().to_free_element();
        let nb = normal_form(&b, n).unwrap().to_free_element();
        assert_eq!(lhs, normal_form(&(&na * &nb), n).unwrap());
        // idempotent
        assert_eq!(normal_form(&lhs.to_free_element(), n).unwrap(), lhs);
    }

    #[test]
    fn chain_words_are_independent() {
        for n in 2..=3u32 {
            let mut words: Vec<FreeElement> = vec![FreeElement::one()];
            let mut frontier = words.clone();
            for _ in 0..3 {
                frontier = frontier
                    .iter()
                    .flat_map(|w| (1..=n).map(move |r| w * &chain_generator(r)))
                    .collect();
                words.extend(frontier.iter().cloned());
            }
            let mut index = BTreeMap::new();
            let mut ech = Echelon::new();
            for w in &words {
                let nf = normal_form(w, n).unwrap();
                let row = nf
                    .coords()
                    .iter()
                    .map(|(s, c)| {
                        let k = index.len();
                        (*index.entry(s.clone()).or_insert(k), c.clone())
                    })
                    .collect();
                assert!(ech.insert(row).is_some(), "dependent chain word at n={n}");
            }
        }
    }
}
