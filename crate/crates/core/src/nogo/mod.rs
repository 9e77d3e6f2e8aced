//! The map `Φ_n: NSym(n) → Q_n`, `z_r ↦ e_r`, and a mechanical check that no
//! bialgebra structure on `Q_n` makes `Φ_n` a bialgebra map.
//!
//! The argument runs in three stages: the counit is forced to vanish on every
//! generator, the counit axioms force the low-bidegree part of each `Δ̃(y_r)`,
//! and the bidegree-(1,1) part of `Δ̃(Φ z_2) = (Φ ⊗ Φ) Δ z_2` then demands
//! `Σ_r y_r ⊗ y_r = 0`, which is false in the basis.

mod coproduct;
mod counit;
mod witness;

pub use coproduct::{
    forced_coproduct_low, GeneratorCoproduct, LowBidegreeCoproduct, Slice, ANSATZ_DEGREE,
};
pub use counit::{forced_counit, forced_counit_with, BranchTrace, CounitAssignment, CounitResult};
pub use witness::{nogo_witness, nogo_witness_with_seed, NoGoReport};

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::freealg::{FreeElement, TensorElement};
use crate::linalg::Echelon;
use crate::nsym::{compositions, restrict};
use crate::qn::{elementary_free, normal_form, tensor_normal_form, QnNormalForm, QnTensorForm};

/// `Φ_n(e)` in `X`-symbols, before reduction.
pub fn phi_free(e: &FreeElement, n: u32) -> Result<FreeElement> {
    let e = restrict(e, n)?;
    let images: Vec<FreeElement> = (1..=n)
        .map(|r| elementary_free(n, r))
        .collect::<Result<_>>()?;
    e.substitute(|sym| match sym {
        crate::freealg::GeneratorSymbol::Z(r) => Ok(images[*r as usize - 1].clone()),
        _ => unreachable!("restrict admits only z symbols"),
    })
}

/// `Φ_n(e)` in normal form.
pub fn phi(e: &FreeElement, n: u32) -> Result<QnNormalForm> {
    normal_form(&phi_free(e, n)?, n)
}

/// `(Φ_n ⊗ Φ_n)(t)` in normal form.
pub fn phi_tensor(t: &TensorElement, n: u32) -> Result<QnTensorForm> {
    tensor_normal_form(&phi_tensor_free(t, n)?, n)
}

pub(crate) fn phi_tensor_free(t: &TensorElement, n: u32) -> Result<TensorElement> {
    t.map_legs(|_, w| phi_free(&FreeElement::monomial(w.clone(), num_traits::One::one()), n))
}

/// Rank of `{Φ_n(z_γ) : |γ| ≤ d}` against the number of compositions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiRankReport {
    pub n: u32,
    pub max_weight: u32,
    pub compositions: usize,
    pub rank: usize,
}

impl PhiRankReport {
    pub fn independent(&self) -> bool {
        self.rank == self.compositions
    }
}

pub fn phi_independence_check(n: u32, d: u32) -> Result<PhiRankReport> {
    let mut index = HashMap::new();
    let mut ech = Echelon::new();
    let mut count = 0;
    for gamma in (0..=d).flat_map(compositions) {
        count += 1;
        let nf = phi(&gamma.element(), n)?;
        let row = nf
            .coords()
            .iter()
            .map(|(s, c)| {
                let k = index.len();
                (*index.entry(s.clone()).or_insert(k), c.clone())
            })
            .collect();
        ech.insert(row);
    }
    Ok(PhiRankReport {
        n,
        max_weight: d,
        compositions: count,
        rank: ech.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Subset;
    use crate::nsym::z;
    use crate::qn::{chain_generator, x_of};

    #[test]
    fn phi_examples() {
        assert_eq!(
            phi(&z(1), 3).unwrap().to_free_element(),
            x_of(Subset::range(3))
        );
        let y = chain_generator;
        let e2 = &(&(&y(3) * &y(2)) + &(&y(3) * &y(1))) + &(&y(2) * &y(1));
        assert_eq!(phi(&z(2), 3).unwrap(), normal_form(&e2, 3).unwrap());
        assert_eq!(
            phi(&FreeElement::one(), 2).unwrap().to_free_element(),
            FreeElement::one()
        );
        assert!(phi(&z(4), 3).is_err());
    }

    #[test]
    fn phi_is_multiplicative() {
        let a = &z(2) * &z(1);
        let lhs = phi(&a, 3).unwrap();
        let rhs = normal_form(
            &(&phi(&z(2), 3).unwrap().to_free_element()
                * &phi(&z(1), 3).unwrap().to_free_element()),
            3,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_examples() {
        let r = phi_independence_check(2, 1).unwrap();
        assert_eq!((r.rank, r.compositions), (2, 2));
        let r = phi_independence_check(3, 2).unwrap();
        assert_eq!((r.rank, r.compositions), (4, 4));
        assert!(r.independent());
    }
}
