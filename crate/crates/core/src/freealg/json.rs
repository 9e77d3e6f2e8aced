//! Canonical JSON: an element is a list of `{coeff: "p/q", word: [...]}`,
//! a tensor a list of `{coeff, left_word, right_word}`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::element::{FreeElement, Word};
use super::tensor::TensorElement;
use crate::scalars::{parse_rational, to_pq_string, Rational};

#[derive(Serialize, Deserialize)]
struct ElementTerm {
    coeff: String,
    word: Word,
}

#[derive(Serialize, Deserialize)]
struct TensorTerm {
    coeff: String,
    left_word: Word,
    right_word: Word,
}

fn coeff_from<E: serde::de::Error>(s: &str) -> Result<Rational, E> {
    parse_rational(s).map_err(|e| E::custom(e.to_string()))
}

impl Serialize for FreeElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<ElementTerm> = self
            .iter()
            .map(|(w, c)| ElementTerm {
                coeff: to_pq_string(c),
                word: w.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<ElementTerm>::deserialize(d)?;
        let mut out = FreeElement::zero();
        for t in terms {
            out.add_term(t.word, coeff_from::<D::Error>(&t.coeff)?);
        }
        Ok(out)
    }
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TensorTerm> = self
            .iter()
            .map(|([u, v], c)| TensorTerm {
                coeff: to_pq_string(c),
                left_word: u.clone(),
                right_word: v.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TensorTerm>::deserialize(d)?;
        let mut out = TensorElement::zero();
        for t in terms {
            if t.coeff.is_empty() {
                return Err(D::Error::custom("empty coefficient"));
            }
            out.add_term(
                [t.left_word, t.right_word],
                coeff_from::<D::Error>(&t.coeff)?,
            );
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{GeneratorSymbol, Subset};
    use crate::scalars::rat;

    #[test]
    fn element_json() {
        let e = FreeElement::from_terms([
            (
                vec![GeneratorSymbol::Z(2), GeneratorSymbol::Z(1)],
                rat(-3, 2),
            ),
            (vec![], rat(1, 1)),
        ]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"[{"coeff":"1/1","word":[]},{"coeff":"-3/2","word":[{"z":2},{"z":1}]}]"#
        );
        assert_eq!(serde_json::from_str::<FreeElement>(&s).unwrap(), e);
    }

    #[test]
    fn tensor_json() {
        let x = GeneratorSymbol::x(Subset::from_elements([1]));
        let t = TensorElement::basis([vec![x], vec![]], rat(2, 1));
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"[{"coeff":"2/1","left_word":[{"X":[1]}],"right_word":[]}]"#
        );
        assert_eq!(serde_json::from_str::<TensorElement>(&s).unwrap(), t);
        assert!(serde_json::from_str::<TensorElement>(
            r#"[{"coeff":"1/0","left_word":[],"right_word":[]}]"#
        )
        .is_err());
    }
}
