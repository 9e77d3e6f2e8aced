//! The free associative algebra over the rationals and its tensor powers.
//!
//! One element type serves every algebra in the crate: the generator symbols
//! carry their own degree, so words in `X(A)`/`x_{A,i}` are graded by length
//! and words in `z_r` by weight.

mod element;
mod json;
mod subset;
mod symbol;
mod tensor;

pub use element::{FreeElement, Word};
pub use subset::Subset;
pub use symbol::GeneratorSymbol;
pub use tensor::{Tensor, TensorElement};

pub fn word_degree(word: &[GeneratorSymbol]) -> u32 {
    word.iter().map(GeneratorSymbol::degree).sum()
}
