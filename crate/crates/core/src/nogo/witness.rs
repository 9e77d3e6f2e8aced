use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::coproduct::{forced_coproduct_low, LowBidegreeCoproduct, ANSATZ_DEGREE};
use super::counit::{forced_counit, CounitResult};
use super::{phi_tensor, phi_tensor_free};
use crate::error::{Error, Result};
use crate::freealg::{FreeElement, TensorElement};
use crate::nsym::{coproduct, z};
use crate::qn::{chain_generator, enumerate_basis, tensor_normal_form, QnTensorForm};
use crate::scalars::rat;

/// Everything needed to audit the obstruction for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoGoReport {
    pub n: u32,
    pub seed: u64,
    pub assumptions: Vec<String>,
    pub counit: CounitResult,
    pub coproduct: LowBidegreeCoproduct,
    /// `(Φ ⊗ Φ)(Δ z_2)` at bidegree (1,1).
    pub image_side: QnTensorForm,
    /// `Δ̃(Φ z_2)` at bidegree (1,1), from the forced slices alone.
    pub forced_side: QnTensorForm,
    /// `image_side - forced_side`, which a compatible coproduct would make zero.
    pub witness: TensorElement,
    pub basis_expansion: QnTensorForm,
    pub witness_nonzero: bool,
    /// The witness equals `Σ_r y_r ⊗ y_r`.
    pub equals_sum_of_squares: bool,
    /// The image side equals `e_1 ⊗ e_1 = Σ_{a,b} y_a ⊗ y_b`.
    pub image_side_is_e1_e1: bool,
    /// `(Φ ⊗ Φ)(Δ z_1)` equals the forced content of `Δ̃(e_1)`.
    pub naturality_weight_one: bool,
    /// The sampled higher parts `f_r` satisfy `Σ_r f_r = 0`.
    pub ansatz_sum_condition: bool,
    /// Recomputing with the sampled `f_r` leaves the (1,1) part unchanged.
    pub ansatz_stable: bool,
}

impl NoGoReport {
    /// All internal cross-checks agree and the witness is nonzero.
    pub fn verified(&self) -> bool {
        self.witness_nonzero
            && self.equals_sum_of_squares
            && self.image_side_is_e1_e1
            && self.naturality_weight_one
            && self.ansatz_sum_condition
            && self.ansatz_stable
    }

    /// Human-readable account of the argument, step by step.
    pub fn transcript(&self) -> String {
        let mut s = String::new();
        let n = self.n;
        let ok = |b: bool| if b { "yes" } else { "NO" };
        let _ = writeln!(s, "No-go check for Q_{n}");
        let _ = writeln!(s, "\nAssumptions:");
        for (k, a) in self.assumptions.iter().enumerate() {
            let _ = writeln!(s, "  {}. {a}", k + 1);
        }

        let _ = writeln!(s, "\nStep 1: the counit.");
        let _ = writeln!(
            s,
            "  e(Phi(z_r)) = 0 for r >= 1 makes every elementary symmetric function of v_r = e(y_r) vanish."
        );
        let _ = writeln!(
            s,
            "  {} vanishing branches examined; every one forces the same values.",
            self.counit.branches.len()
        );
        if let Some(first) = self.counit.branches.first() {
            let _ = writeln!(s, "  Branch {:?}:", first.order);
            for step in &first.steps {
                let _ = writeln!(s, "    {step}");
            }
        }
        let _ = writeln!(
            s,
            "  Result: {} ({} generators, all zero: {})",
            self.counit.assignment,
            self.counit.assignment.values().len(),
            ok(self.counit.assignment.is_zero())
        );

        let _ = writeln!(
            s,
            "\nStep 2: low bidegrees of the coproduct (ansatz to total degree {ANSATZ_DEGREE})."
        );
        for g in &self.coproduct.generators {
            let _ = writeln!(s, "  y_{} = {}", g.r, g.y);
            for slice in &g.slices {
                let [i, j] = slice.bidegree;
                let _ = writeln!(s, "    ({i},{j}): {}", slice.value);
            }
            let _ = writeln!(
                s,
                "    {} of {} coefficients stay free (the part f_{})",
                g.free, g.unknowns, g.r
            );
        }

        let _ = writeln!(s, "\nStep 3: weight one.");
        let _ = writeln!(
            s,
            "  (Phi (x) Phi)(Delta z_1) = sum of forced parts of Delta(y_r): {}",
            ok(self.naturality_weight_one)
        );
        let _ = writeln!(
            s,
            "  so the higher parts satisfy f_1 + ... + f_{n} = 0 (checked on the sample: {})",
            ok(self.ansatz_sum_condition)
        );

        let _ = writeln!(s, "\nStep 4: weight two, bidegree (1,1).");
        let _ = writeln!(s, "  (Phi (x) Phi)(Delta z_2): {}", self.image_side);
        let _ = writeln!(
            s,
            "    equals e_1 (x) e_1: {}",
            ok(self.image_side_is_e1_e1)
        );
        let _ = writeln!(s, "  Delta(e_2) from forced parts: {}", self.forced_side);
        let _ = writeln!(
            s,
            "    unchanged by the sampled f_r: {}",
            ok(self.ansatz_stable)
        );
        let _ = writeln!(s, "  Difference, which would have to vanish:");
        let _ = writeln!(s, "    {}", self.witness);
        let _ = writeln!(
            s,
            "    equals sum_r y_r (x) y_r: {}",
            ok(self.equals_sum_of_squares)
        );
        let _ = writeln!(
            s,
            "    nonzero basis coordinates: {}",
            self.basis_expansion.coords().len()
        );

        let _ = writeln!(s, "\nConclusion:");
        if self.witness_nonzero {
            let _ = writeln!(
                s,
                "  the witness is nonzero, so no bialgebra structure on Q_{n} is compatible with Phi."
            );
        } else {
            let _ = writeln!(
                s,
                "  the witness vanished; the obstruction is NOT reproduced."
            );
        }
        s
    }
}

fn assumptions(n: u32) -> Vec<String> {
    vec![
        format!("Q_{n} is graded by word length in the letters X(A); all relations are homogeneous."),
        format!("(Delta, e) is a bialgebra structure on Q_{n} and Phi: z_r -> e_r is a bialgebra map."),
        "Coproduct values are finite sums over pairs of basis strings.".to_string(),
        format!("Coproduct coefficients are solved for up to total degree {ANSATZ_DEGREE}; higher ones are left free."),
    ]
}

/// Random higher parts `f_1..f_n` of bidegrees (1,1), (1,2), (2,1) with zero sum.
fn sample_ansatz(n: u32, rng: &mut ChaCha8Rng) -> Vec<TensorElement> {
    let by_weight = [enumerate_basis(n, 1), enumerate_basis(n, 2)];
    let mut out: Vec<TensorElement> = Vec::new();
    for _ in 1..n {
        let mut f = TensorElement::zero();
        for _ in 0..3 {
            let [i, j] = [[1, 1], [1, 2], [2, 1]][rng.gen_range(0..3)];
            let pick = |w: usize, rng: &mut ChaCha8Rng| {
                by_weight[w - 1][rng.gen_range(0..by_weight[w - 1].len())].word()
            };
            let (a, b) = (pick(i, rng), pick(j, rng));
            f.add_term([a, b], rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
        }
        out.push(f);
    }
    let total = out.iter().fold(TensorElement::zero(), |acc, f| &acc + f);
    out.push(-&total);
    out
}

/// `Δ̃(e_2) = Σ_{a>b} Δ̃(y_a) Δ̃(y_b)`.
fn coproduct_e2(parts: &[TensorElement]) -> TensorElement {
    let mut out = TensorElement::zero();
    for a in 0..parts.len() {
        for b in 0..a {
            out = &out + &(&parts[a] * &parts[b]);
        }
    }
    out
}

pub fn nogo_witness(n: u32) -> Result<NoGoReport> {
    nogo_witness_with_seed(n, 0)
}

/// Runs the full pipeline; `seed` drives the sampled higher parts `f_r`.
///
/// Bidegree projections are taken before reduction, which is exact because
/// the relations are homogeneous.
pub fn nogo_witness_with_seed(n: u32, seed: u64) -> Result<NoGoReport> {
    let counit = forced_counit(n)?;
    if !counit.assignment.is_zero() {
        return Err(Error::NotForced(format!(
            "counit on Q_{n} is not forced to zero"
        )));
    }
    let low = forced_coproduct_low(&counit.assignment)?;
    let low_parts: Vec<TensorElement> = low.generators.iter().map(|g| g.low_part()).collect();

    let image_full = phi_tensor_free(&coproduct(&z(2))?, n)?;
    let image_11 = image_full.bidegree_project(1, 1);
    let forced_11 = coproduct_e2(&low_parts).bidegree_project(1, 1);
    let image_side = tensor_normal_form(&image_11, n)?;
    let forced_side = tensor_normal_form(&forced_11, n)?;
    let basis_expansion = tensor_normal_form(&(&image_11 - &forced_11), n)?;

    let ys: Vec<FreeElement> = (1..=n).map(chain_generator).collect();
    let squares = ys.iter().fold(TensorElement::zero(), |acc, y| {
        &acc + &TensorElement::pure([y, y])
    });
    let e1 = ys.iter().fold(FreeElement::zero(), |acc, y| &acc + y);
    let equals_sum_of_squares = tensor_normal_form(&squares, n)? == basis_expansion;
    let image_side_is_e1_e1 =
        tensor_normal_form(&TensorElement::pure([&e1, &e1]), n)? == image_side;

    let weight_one = phi_tensor(&coproduct(&z(1))?, n)?;
    let low_sum = low_parts
        .iter()
        .fold(TensorElement::zero(), |acc, t| &acc + t);
    let naturality_weight_one = tensor_normal_form(&low_sum, n)? == weight_one;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = sample_ansatz(n, &mut rng);
    let full: Vec<TensorElement> = low_parts.iter().zip(&f).map(|(l, f)| l + f).collect();
    let full_sum = full.iter().fold(TensorElement::zero(), |acc, t| &acc + t);
    let ansatz_sum_condition = tensor_normal_form(&full_sum, n)? == weight_one;
    let perturbed = (&image_full - &coproduct_e2(&full)).bidegree_project(1, 1);
    let ansatz_stable = tensor_normal_form(&perturbed, n)? == basis_expansion;

    Ok(NoGoReport {
        n,
        seed,
        assumptions: assumptions(n),
        counit,
        coproduct: low,
        image_side,
        forced_side,
        witness: basis_expansion.to_tensor(),
        witness_nonzero: !basis_expansion.is_zero(),
        basis_expansion,
        equals_sum_of_squares,
        image_side_is_e1_e1,
        naturality_weight_one,
        ansatz_sum_condition,
        ansatz_stable,
    })
}
