use crate::error::{Error, Result};
use crate::freealg::{FreeElement, GeneratorSymbol, Subset};

/// `X(A)`, with `X(∅) = 0`.
pub fn x_of(set: Subset) -> FreeElement {
    if set.is_empty() {
        FreeElement::zero()
    } else {
        GeneratorSymbol::x(set).into()
    }
}

/// `x_{A,i} = X(A ∪ {i}) - X(A)`.
pub fn gen_to_x(set: Subset, i: u32, n: u32) -> Result<FreeElement> {
    if set.contains(i) {
        return Err(Error::Invalid(format!("x{{{set};{i}}} needs i outside A")));
    }
    let top = set.with(i);
    if i == 0 || top.largest().unwrap_or(0) > n {
        return Err(Error::IndexOutOfRange(format!(
            "x_{{{set},{i}}} over [{n}]"
        )));
    }
    Ok(&x_of(top) - &x_of(set))
}

/// Chain generator `y_r = x_{[r-1], r} = X([r]) - X([r-1])`.
pub fn chain_generator(r: u32) -> FreeElement {
    &x_of(Subset::range(r)) - &x_of(Subset::range(r - 1))
}

/// Rewrites every `x_{A,i}` as `X`-symbols, and checks that all indices lie in `[n]`.
pub fn to_x_form(e: &FreeElement, n: u32) -> Result<FreeElement> {
    e.substitute(|g| match *g {
        GeneratorSymbol::PseudoRoot { set, i } => gen_to_x(set, i, n),
        GeneratorSymbol::X(set) if set.largest().unwrap_or(0) <= n => {
            Ok(FreeElement::generator(*g))
        }
        GeneratorSymbol::X(set) => Err(Error::IndexOutOfRange(format!("X{set} over [{n}]"))),
        GeneratorSymbol::Z(_) => Err(Error::Invalid(format!("{g} is not a generator of Q_n"))),
    })
}

/// One pair of relations, indexed by `A` and `i < j` outside `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RelationInstance {
    pub set: Subset,
    pub i: u32,
    pub j: u32,
}

impl RelationInstance {
    /// `(x_{A∪i,j}, x_{A,i})` as `(set, index)` pairs.
    pub fn left_pair(&self) -> [(Subset, u32); 2] {
        [(self.set.with(self.i), self.j), (self.set, self.i)]
    }

    /// `(x_{A∪j,i}, x_{A,j})`.
    pub fn right_pair(&self) -> [(Subset, u32); 2] {
        [(self.set.with(self.j), self.i), (self.set, self.j)]
    }

    fn gens(pair: [(Subset, u32); 2]) -> [FreeElement; 2] {
        pair.map(|(s, i)| GeneratorSymbol::pseudo_root(s, i).into())
    }

    /// `x_{A∪i,j} + x_{A,i} - x_{A∪j,i} - x_{A,j}`.
    pub fn sum_relation(&self) -> FreeElement {
        let [a, b] = Self::gens(self.left_pair());
        let [c, d] = Self::gens(self.right_pair());
        &(&a + &b) - &(&c + &d)
    }

    /// `x_{A∪i,j} x_{A,i} - x_{A∪j,i} x_{A,j}`.
    pub fn product_relation(&self) -> FreeElement {
        let [a, b] = Self::gens(self.left_pair());
        let [c, d] = Self::gens(self.right_pair());
        &(&a * &b) - &(&c * &d)
    }
}

impl std::fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "A={}, i={}, j={}", self.set, self.i, self.j)
    }
}

/// Every `(A, i, j)` with `i < j`, `i, j ∉ A`, `A ∪ {i, j} ⊆ [n]`.
pub fn relation_instances(n: u32) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for set in Subset::all(n, false) {
        for i in 1..=n {
            for j in i + 1..=n {
                if !set.contains(i) && !set.contains(j) {
                    out.push(RelationInstance { set, i, j });
                }
            }
        }
    }
    out
}

/// Every generator `x_{A,i}` of `Q_n`.
pub fn generators(n: u32) -> Vec<(Subset, u32)> {
    let mut out = Vec::new();
    for set in Subset::all(n, false) {
        for i in (1..=n).filter(|&i| !set.contains(i)) {
            out.push((set, i));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Subset {
        Subset::from_elements(v.iter().copied())
    }

    fn big_x(v: &[u32]) -> FreeElement {
        x_of(s(v))
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(gen_to_x(Subset::empty(), 1, 3).unwrap(), big_x(&[1]));
        assert_eq!(
            gen_to_x(s(&[1, 2]), 3, 3).unwrap(),
            &big_x(&[1, 2, 3]) - &big_x(&[1, 2])
        );
        assert_eq!(chain_generator(3), &big_x(&[1, 2, 3]) - &big_x(&[1, 2]));
        assert_eq!(
            gen_to_x(s(&[2]), 1, 2).unwrap(),
            &big_x(&[1, 2]) - &big_x(&[2])
        );
        assert!(gen_to_x(s(&[1]), 4, 3).is_err());
        assert!(gen_to_x(s(&[1]), 1, 3).is_err());
    }

    #[test]
    fn sum_relations_vanish_identically() {
        for n in 2..=4 {
            for r in relation_instances(n) {
                assert!(to_x_form(&r.sum_relation(), n).unwrap().is_zero(), "{r}");
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(generators(3).len(), 12);
        assert_eq!(generators(2).len(), 4);
        assert_eq!(relation_instances(3).len(), 6);
        assert_eq!(relation_instances(4).len(), 24);
    }

    #[test]
    fn z_symbols_are_rejected() {
        let e = FreeElement::generator(GeneratorSymbol::z(1));
        assert!(matches!(to_x_form(&e, 3), Err(Error::Invalid(_))));
    }
}
