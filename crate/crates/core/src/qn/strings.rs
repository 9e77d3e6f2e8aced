use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{GeneratorSymbol, Subset, Word};

/// `(A:j)`: the deletion chain `A, A^(1), ..., A^(j-1)` where `A^(m)` drops
/// the `m` largest elements of `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StringBlock {
    #[serde(rename = "A")]
    pub set: Subset,
    pub j: u32,
}

impl StringBlock {
    pub fn new(set: Subset, j: u32) -> Result<Self> {
        if set.is_empty() || j == 0 || j as usize > set.len() {
            return Err(Error::Invalid(format!(
                "block ({set}:{j}) needs 1 <= j <= |A|"
            )));
        }
        Ok(StringBlock { set, j })
    }

    pub fn sets(&self) -> impl Iterator<Item = Subset> + '_ {
        (0..self.j as usize).map(|m| self.set.drop_last(m))
    }

    /// `|A| - j`: the size a following set must avoid (together with `⊆ A`).
    fn tail_size(&self) -> usize {
        self.set.len() - self.j as usize
    }
}

/// Whether `next` may follow `prev`: not (`next.A ⊆ prev.A` and `|next.A| = |prev.A| - prev.j`).
pub fn junction_allowed(prev: &StringBlock, next: &StringBlock) -> bool {
    !(next.set.is_subset(prev.set) && next.set.len() == prev.tail_size())
}

/// A concatenation of blocks whose junctions are all allowed. The monomials
/// `X(B)` over these strings form a basis of `Q_n`. The empty string is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<StringBlock>", into = "Vec<StringBlock>")]
pub struct AdmissibleString {
    blocks: Vec<StringBlock>,
}

impl AdmissibleString {
    pub fn unit() -> Self {
        AdmissibleString { blocks: Vec::new() }
    }

    pub fn new(blocks: Vec<StringBlock>) -> Result<Self> {
        if let Some(w) = blocks.windows(2).find(|w| !junction_allowed(&w[0], &w[1])) {
            return Err(Error::Invalid(format!(
                "forbidden junction ({}:{})({}:{})",
                w[0].set, w[0].j, w[1].set, w[1].j
            )));
        }
        Ok(AdmissibleString { blocks })
    }

    /// Greedy split of a word in `X(A)`s into maximal deletion chains. Any
    /// other split breaks a chain at a forbidden junction, so this is the only
    /// candidate; returns it if admissible.
    pub fn from_sets(sets: &[Subset]) -> Option<Self> {
        Self::new(decompose(sets)).ok()
    }

    pub fn blocks(&self) -> &[StringBlock] {
        &self.blocks
    }

    pub fn weight(&self) -> u32 {
        self.blocks.iter().map(|b| b.j).sum()
    }

    pub fn length(&self) -> usize {
        self.blocks.len()
    }

    pub fn sets(&self) -> Vec<Subset> {
        self.blocks.iter().flat_map(|b| b.sets()).collect()
    }

    /// The monomial `X(B)`.
    pub fn word(&self) -> Word {
        self.sets().into_iter().map(GeneratorSymbol::x).collect()
    }
}

/// Splits into maximal runs where each set is the previous one minus its largest element.
pub fn decompose(sets: &[Subset]) -> Vec<StringBlock> {
    let mut blocks: Vec<StringBlock> = Vec::new();
    let mut last: Option<Subset> = None;
    for &s in sets {
        match (blocks.last_mut(), last) {
            (Some(b), Some(prev)) if prev.len() >= 2 && s == prev.drop_last(1) => b.j += 1,
            _ => blocks.push(StringBlock { set: s, j: 1 }),
        }
        last = Some(s);
    }
    blocks
}

impl TryFrom<Vec<StringBlock>> for AdmissibleString {
    type Error = Error;
    fn try_from(blocks: Vec<StringBlock>) -> Result<Self> {
        for b in &blocks {
            StringBlock::new(b.set, b.j)?;
        }
        Self::new(blocks)
    }
}

impl From<AdmissibleString> for Vec<StringBlock> {
    fn from(s: AdmissibleString) -> Self {
        s.blocks
    }
}

/// Weight, then length, then blocks lexicographically.
impl Ord for AdmissibleString {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight(), self.length(), &self.blocks).cmp(&(
            other.weight(),
            other.length(),
            &other.blocks,
        ))
    }
}

impl PartialOrd for AdmissibleString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AdmissibleString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("()");
        }
        for b in &self.blocks {
            write!(f, "({}:{})", b.set, b.j)?;
        }
        Ok(())
    }
}

/// All admissible strings over `[n]` of weight `d`, sorted.
pub fn enumerate_basis(n: u32, d: u32) -> Vec<AdmissibleString> {
    let mut candidates = Vec::new();
    for set in Subset::all(n, true) {
        for j in 1..=set.len() as u32 {
            candidates.push(StringBlock { set, j });
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend(&candidates, d, &mut current, &mut out);
    out.sort();
    out
}

fn extend(
    candidates: &[StringBlock],
    remaining: u32,
    current: &mut Vec<StringBlock>,
    out: &mut Vec<AdmissibleString>,
) {
    if remaining == 0 {
        out.push(AdmissibleString {
            blocks: current.clone(),
        });
        return;
    }
    for b in candidates {
        if b.j > remaining || current.last().is_some_and(|p| !junction_allowed(p, b)) {
            continue;
        }
        current.push(*b);
        extend(candidates, remaining - b.j, current, out);
        current.pop();
    }
}

/// `dim Q_{n,d}` counted from the basis.
pub fn hilbert_dim(n: u32, d: u32) -> usize {
    enumerate_basis(n, d).len()
}
