use std::fmt;

use serde::{Deserialize, Serialize};

use super::subset::Subset;

/// A free generator. The derived order (variant, then fields) is the
/// canonical order used for storing words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorSymbol {
    /// Pseudo-root generator `x_{A,i}` with `i ∉ A`.
    #[serde(rename = "x")]
    PseudoRoot {
        #[serde(rename = "A")]
        set: Subset,
        i: u32,
    },
    /// `X(A) = x_{∅,a_1} + x_{{a_1},a_2} + ...` for a nonempty sorted `A`.
    #[serde(rename = "X")]
    X(Subset),
    /// NSym generator `z_r`, `r >= 1`.
    #[serde(rename = "z")]
    Z(u32),
}

impl GeneratorSymbol {
    pub fn pseudo_root(set: Subset, i: u32) -> Self {
        assert!(!set.contains(i), "x_{{A,i}} needs i outside A");
        GeneratorSymbol::PseudoRoot { set, i }
    }

    pub fn x(set: Subset) -> Self {
        assert!(!set.is_empty(), "X(A) needs a nonempty A");
        GeneratorSymbol::X(set)
    }

    pub fn z(r: u32) -> Self {
        assert!(r >= 1, "z_0 is the unit, not a generator");
        GeneratorSymbol::Z(r)
    }

    pub fn degree(&self) -> u32 {
        match self {
            GeneratorSymbol::PseudoRoot { .. } | GeneratorSymbol::X(_) => 1,
            GeneratorSymbol::Z(r) => *r,
        }
    }

    /// Largest index mentioned by the symbol (the `n` it needs).
    pub fn max_index(&self) -> u32 {
        match self {
            GeneratorSymbol::PseudoRoot { set, i } => set.largest().unwrap_or(0).max(*i),
            GeneratorSymbol::X(set) => set.largest().unwrap_or(0),
            GeneratorSymbol::Z(r) => *r,
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &Subset| {
            s.elements()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            GeneratorSymbol::PseudoRoot { set, i } => write!(f, "x{{{};{}}}", list(set), i),
            GeneratorSymbol::X(set) => write!(f, "X{{{}}}", list(set)),
            GeneratorSymbol::Z(r) => write!(f, "z{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        let x = GeneratorSymbol::pseudo_root(Subset::from_elements([1, 2]), 3);
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"x":{"A":[1,2],"i":3}}"#
        );
        let big = GeneratorSymbol::x(Subset::from_elements([1, 2]));
        assert_eq!(serde_json::to_string(&big).unwrap(), r#"{"X":[1,2]}"#);
        assert_eq!(
            serde_json::to_string(&GeneratorSymbol::z(3)).unwrap(),
            r#"{"z":3}"#
        );
        let back: GeneratorSymbol = serde_json::from_str(r#"{"x":{"A":[],"i":1}}"#).unwrap();
        assert_eq!(back, GeneratorSymbol::pseudo_root(Subset::empty(), 1));
    }

    #[test]
    fn display_matches_literal_syntax() {
        assert_eq!(
            GeneratorSymbol::pseudo_root(Subset::empty(), 2).to_string(),
            "x{;2}"
        );
        assert_eq!(GeneratorSymbol::x(Subset::range(3)).to_string(), "X{1,2,3}");
        assert_eq!(GeneratorSymbol::Z(4).degree(), 4);
    }
}
