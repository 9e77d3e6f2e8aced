use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use super::counit::CounitAssignment;
use crate::error::{Error, Result};
use crate::freealg::TensorElement;
use crate::linalg::{Echelon, SparseRow};
use crate::qn::{
    chain_generator, enumerate_basis, normal_form, tensor_normal_form, AdmissibleString,
    QnNormalForm, QnTensorForm,
};
use crate::scalars::Rational;

/// Ansatz truncation: pairs of basis strings of total weight at most this.
pub const ANSATZ_DEGREE: u32 = 2;

/// One bidegree component of `Δ̃(y_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Slice {
    pub bidegree: [u32; 2],
    pub value: QnTensorForm,
}

/// Forced components of `Δ̃(y_r)` for one chain generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCoproduct {
    pub r: u32,
    pub y: QnNormalForm,
    /// Every component with an empty leg, in bidegree order.
    pub slices: Vec<Slice>,
    /// Ansatz coefficients `C_{B,B'}`.
    pub unknowns: usize,
    /// Coefficients left free by the counit axioms (the part `f_r`).
    pub free: usize,
}

impl GeneratorCoproduct {
    /// Sum of the slices of total degree at most 1.
    pub fn low_part(&self) -> TensorElement {
        let mut t = TensorElement::zero();
        for s in self
            .slices
            .iter()
            .filter(|s| s.bidegree[0] + s.bidegree[1] <= 1)
        {
            t = &t + &s.value.to_tensor();
        }
        t
    }

    pub fn slice(&self, i: u32, j: u32) -> Option<&QnTensorForm> {
        self.slices
            .iter()
            .find(|s| s.bidegree == [i, j])
            .map(|s| &s.value)
    }
}

/// The forced low-bidegree content of a compatible coproduct on every `y_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowBidegreeCoproduct {
    pub n: u32,
    pub generators: Vec<GeneratorCoproduct>,
}

impl LowBidegreeCoproduct {
    pub fn generator(&self, r: u32) -> &GeneratorCoproduct {
        &self.generators[r as usize - 1]
    }
}

/// Solves `(ε̃ ⊗ id) Δ̃(y_r) = y_r = (id ⊗ ε̃) Δ̃(y_r)` over the truncated
/// ansatz `Δ̃(y_r) = Σ C_{B,B'} X(B) ⊗ X(B')` and checks that every
/// coefficient with an empty leg is determined.
pub fn forced_coproduct_low(counit: &CounitAssignment) -> Result<LowBidegreeCoproduct> {
    let n = counit.n();
    let basis: Vec<AdmissibleString> = (0..=ANSATZ_DEGREE)
        .flat_map(|d| enumerate_basis(n, d))
        .collect();
    let eps: Vec<Rational> = basis.iter().map(|b| counit.on_string(b)).collect();
    let mut pairs = Vec::new();
    for (a, ba) in basis.iter().enumerate() {
        for (b, bb) in basis.iter().enumerate() {
            if ba.weight() + bb.weight() <= ANSATZ_DEGREE {
                pairs.push((a, b));
            }
        }
    }
    let column: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(c, p)| (*p, c)).collect();
    let rhs_col = pairs.len();

    let mut generators = Vec::new();
    for r in 1..=n {
        let y = normal_form(&chain_generator(r), n)?;
        let coord = |k: usize| y.coeff(&basis[k]);
        let mut ech = Echelon::new();
        for fixed in 0..basis.len() {
            // left leg contracted, then right leg contracted
            for left in [true, false] {
                let mut row: SparseRow = BTreeMap::new();
                for (other, e) in eps.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                    let pair = if left { (other, fixed) } else { (fixed, other) };
                    if let Some(&c) = column.get(&pair) {
                        row.insert(c, e.clone());
                    }
                }
                let target = coord(fixed);
                if !target.is_zero() {
                    row.insert(rhs_col, target);
                }
                if ech.insert(row) == Some(rhs_col) {
                    return Err(Error::Inconsistent(format!(
                        "counit axioms have no solution for y_{r}"
                    )));
                }
            }
        }

        let mut slices: BTreeMap<[u32; 2], TensorElement> = BTreeMap::new();
        for (c, &(a, b)) in pairs.iter().enumerate() {
            let bideg = [basis[a].weight(), basis[b].weight()];
            if bideg[0] > 0 && bideg[1] > 0 {
                continue;
            }
            let row = ech
                .rows()
                .get(&c)
                .filter(|row| row.keys().all(|&k| k == c || k == rhs_col));
            let Some(row) = row else {
                return Err(Error::NotForced(format!(
                    "coefficient of {} (x) {} in the coproduct of y_{r}",
                    basis[a], basis[b]
                )));
            };
            let value = row.get(&rhs_col).cloned().unwrap_or_else(Rational::zero);
            let slice = slices.entry(bideg).or_default();
            slice.add_term([basis[a].word(), basis[b].word()], value);
        }
        let slices = slices
            .into_iter()
            .map(|(bidegree, t)| {
                Ok(Slice {
                    bidegree,
                    value: tensor_normal_form(&t, n)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let free = (0..pairs.len()).filter(|c| !ech.is_pivot(*c)).count();
        generators.push(GeneratorCoproduct {
            r,
            y,
            slices,
            unknowns: pairs.len(),
            free,
        });
    }
    Ok(LowBidegreeCoproduct { n, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::FreeElement;
    use crate::nogo::forced_counit;

    #[test]
    fn slices_n3() {
        let counit = forced_counit(3).unwrap().assignment;
        let low = forced_coproduct_low(&counit).unwrap();
        let one = FreeElement::one();
        for r in 1..=3 {
            let g = low.generator(r);
            let y = chain_generator(r);
            assert!(g.slice(0, 0).unwrap().is_zero());
            assert!(g.slice(2, 0).unwrap().is_zero());
            assert!(g.slice(0, 2).unwrap().is_zero());
            let left = tensor_normal_form(&TensorElement::pure([&y, &one]), 3).unwrap();
            let right = tensor_normal_form(&TensorElement::pure([&one, &y]), 3).unwrap();
            assert_eq!(g.slice(1, 0).unwrap(), &left);
            assert_eq!(g.slice(0, 1).unwrap(), &right);
            // the (1,1) coefficients stay free: 7 x 7 of them
            assert_eq!(g.free, 49);
        }
    }
}
