use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Finite set of positive integers below 64, ordered lexicographically by its
/// sorted elements (`{1} < {1,2} < {1,3} < {2}`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const MAX_ELEMENT: u32 = 63;

    pub fn empty() -> Self {
        Subset(0)
    }

    /// `{1, ..., n}`.
    pub fn range(n: u32) -> Self {
        Self::from_elements(1..=n)
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elems: I) -> Self {
        let mut bits = 0u64;
        for e in elems {
            assert!(
                (1..=Self::MAX_ELEMENT).contains(&e),
                "subset element {e} out of range"
            );
            bits |= 1 << e;
        }
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: u32) -> bool {
        e <= Self::MAX_ELEMENT && self.0 & (1 << e) != 0
    }

    pub fn with(self, e: u32) -> Self {
        Subset(self.0 | Self::from_elements([e]).0)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn largest(self) -> Option<u32> {
        (!self.is_empty()).then(|| 63 - self.0.leading_zeros())
    }

    pub fn elements(self) -> Vec<u32> {
        (1..=Self::MAX_ELEMENT)
            .filter(|&e| self.contains(e))
            .collect()
    }

    /// The first `k` elements.
    pub fn prefix(self, k: usize) -> Self {
        Self::from_elements(self.elements().into_iter().take(k))
    }

    /// Drops the largest `j` elements.
    pub fn drop_last(self, j: usize) -> Self {
        self.prefix(self.len().saturating_sub(j))
    }

    /// All subsets of `{1..n}`, nonempty ones only if `nonempty`, in set order.
    pub fn all(n: u32, nonempty: bool) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0u64..1 << n)
            .map(|m| Subset(m << 1))
            .filter(|s| !(nonempty && s.is_empty()))
            .collect();
        out.sort();
        out
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements().cmp(&other.elements())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let elems = Vec::<u32>::deserialize(d)?;
        if let Some(bad) = elems.iter().find(|&&e| e == 0 || e > Self::MAX_ELEMENT) {
            return Err(serde::de::Error::custom(format!(
                "subset element {bad} out of range"
            )));
        }
        Ok(Subset::from_elements(elems))
    }
}
