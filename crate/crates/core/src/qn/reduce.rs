use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::relations::{relation_instances, to_x_form};
use super::strings::AdmissibleString;
use crate::error::{Error, Result};
use crate::freealg::{FreeElement, GeneratorSymbol, Subset, TensorElement, Word};
use crate::linalg::{Echelon, SparseRow};
use crate::scalars::{to_pq_string, Rational};

/// Size caps for the per-degree linear algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_n: u32,
    pub max_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 4,
            max_degree: 4,
        }
    }
}

impl Limits {
    fn check(&self, n: u32, d: u32) -> Result<()> {
        if n == 0 || n > self.max_n {
            return Err(Error::LimitExceeded(format!(
                "n = {n} (allowed 1..={})",
                self.max_n
            )));
        }
        if d > self.max_degree {
            return Err(Error::LimitExceeded(format!(
                "degree {d} (allowed up to {})",
                self.max_degree
            )));
        }
        Ok(())
    }
}

/// The nonempty subsets of `[n]`, i.e. the letters `X(A)`, and their indices.
struct Alphabet {
    sets: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

impl Alphabet {
    fn new(n: u32) -> Self {
        let sets = Subset::all(n, true);
        let index = sets.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        Alphabet { sets, index }
    }

    fn len(&self) -> usize {
        self.sets.len()
    }

    /// Base-`m` code of a word, most significant letter first.
    fn code(&self, sets: &[Subset]) -> usize {
        sets.iter()
            .fold(0, |acc, s| acc * self.len() + self.index[s])
    }

    fn decode(&self, mut code: usize, d: u32) -> Vec<Subset> {
        let mut out = vec![Subset::empty(); d as usize];
        for slot in out.iter_mut().rev() {
            *slot = self.sets[code % self.len()];
            code /= self.len();
        }
        out
    }
}

/// The quadratic relations in `X`-form, as lists of `(two-letter code, coeff)`.
fn quadratic_relations(n: u32, alphabet: &Alphabet) -> Result<Vec<Vec<(usize, Rational)>>> {
    let mut out = Vec::new();
    for inst in relation_instances(n) {
        let rel = to_x_form(&inst.product_relation(), n)?;
        let row: Vec<(usize, Rational)> = rel
            .iter()
            .map(|(w, c)| (alphabet.code(&letters(w)), c.clone()))
            .collect();
        if !row.is_empty() {
            out.push(row);
        }
    }
    Ok(out)
}

fn letters(word: &[GeneratorSymbol]) -> Vec<Subset> {
    word.iter()
        .map(|g| match g {
            GeneratorSymbol::X(s) => *s,
            other => panic!("expected an X symbol, found {other}"),
        })
        .collect()
}

/// Inserts every `u · r · v` of total degree `d`; `column` maps word codes to columns.
fn span_consequences(
    n: u32,
    d: u32,
    alphabet: &Alphabet,
    column: impl Fn(usize) -> usize,
) -> Result<Echelon> {
    let mut ech = Echelon::new();
    if d < 2 {
        return Ok(ech);
    }
    let m = alphabet.len();
    let rels = quadratic_relations(n, alphabet)?;
    for left_len in 0..=d - 2 {
        let right_len = d - 2 - left_len;
        let right_count = m.pow(right_len);
        for u in 0..m.pow(left_len) {
            for v in 0..right_count {
                for rel in &rels {
                    let row: SparseRow = rel
                        .iter()
                        .map(|(w, c)| (column((u * m * m + w) * right_count + v), c.clone()))
                        .collect();
                    ech.insert(row);
                }
            }
        }
    }
    Ok(ech)
}

/// Normal forms of every degree-`d` word, by columns: non-admissible words
/// come first so they are the ones eliminated.
struct Reducer {
    alphabet: Alphabet,
    /// word code → column
    column: Vec<usize>,
    /// column - non_admissible → basis string
    admissible: Vec<AdmissibleString>,
    non_admissible: usize,
    /// column of a non-admissible word → its expansion over admissible columns
    table: HashMap<usize, Vec<(usize, Rational)>>,
}

impl Reducer {
    fn build(n: u32, d: u32) -> Result<Self> {
        let alphabet = Alphabet::new(n);
        let total = alphabet.len().pow(d);
        let mut strings: Vec<Option<AdmissibleString>> = Vec::with_capacity(total);
        for code in 0..total {
            strings.push(AdmissibleString::from_sets(&alphabet.decode(code, d)));
        }
        let non_admissible = strings.iter().filter(|s| s.is_none()).count();
        let mut column = vec![0; total];
        let mut admissible = Vec::with_capacity(total - non_admissible);
        let (mut next_bad, mut next_good) = (0, non_admissible);
        for (code, s) in strings.into_iter().enumerate() {
            match s {
                None => {
                    column[code] = next_bad;
                    next_bad += 1;
                }
                Some(s) => {
                    column[code] = next_good;
                    next_good += 1;
                    admissible.push(s);
                }
            }
        }

        let ech = span_consequences(n, d, &alphabet, |code| column[code])?;
        if let Some(col) = ech.rows().keys().find(|&&c| c >= non_admissible) {
            return Err(Error::Inconsistent(format!(
                "a relation consequence in degree {d} reduces onto basis string {}",
                admissible[col - non_admissible]
            )));
        }
        if ech.rank() != non_admissible {
            return Err(Error::Inconsistent(format!(
                "degree {d}: {} non-admissible words but relation rank {}",
                non_admissible,
                ech.rank()
            )));
        }
        let table = ech
            .rows()
            .iter()
            .map(|(&pivot, row)| {
                let expansion = row
                    .iter()
                    .filter(|(&c, _)| c != pivot)
                    .map(|(&c, v)| (c - non_admissible, -v))
                    .collect();
                (pivot, expansion)
            })
            .collect();
        Ok(Reducer {
            alphabet,
            column,
            admissible,
            non_admissible,
            table,
        })
    }

    fn reduce_word(
        &self,
        sets: &[Subset],
        c: &Rational,
        out: &mut BTreeMap<AdmissibleString, Rational>,
    ) {
        let col = self.column[self.alphabet.code(sets)];
        let mut add = |k: usize, v: Rational| {
            let e = out
                .entry(self.admissible[k].clone())
                .or_insert_with(Rational::zero);
            *e += v;
        };
        if col >= self.non_admissible {
            add(col - self.non_admissible, c.clone());
        } else {
            for (k, v) in &self.table[&col] {
                add(*k, v * c);
            }
        }
    }
}

type ReducerCache = RwLock<HashMap<(u32, u32), Arc<Reducer>>>;

fn reducer(n: u32, d: u32) -> Result<Arc<Reducer>> {
    static CACHE: OnceLock<ReducerCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.read().expect("reducer cache poisoned").get(&(n, d)) {
        return Ok(r.clone());
    }
    // Built outside the lock; concurrent builders produce identical tables.
    let built = Arc::new(Reducer::build(n, d)?);
    let mut w = cache.write().expect("reducer cache poisoned");
    Ok(w.entry((n, d)).or_insert(built).clone())
}

/// Checks once per `n` that the closed form for `x_{A,i}` respects both relation families.
fn self_test(n: u32) -> Result<()> {
    static DONE: OnceLock<RwLock<HashSet<u32>>> = OnceLock::new();
    let done = DONE.get_or_init(Default::default);
    if done.read().expect("self-test set poisoned").contains(&n) {
        return Ok(());
    }
    for inst in relation_instances(n) {
        if !to_x_form(&inst.sum_relation(), n)?.is_zero() {
            return Err(Error::Inconsistent(format!(
                "sum relation {inst} survives substitution"
            )));
        }
        let prod = to_x_form(&inst.product_relation(), n)?;
        if !reduce_x_form(&prod, n)?.is_empty() {
            return Err(Error::Inconsistent(format!(
                "product relation {inst} does not reduce to 0"
            )));
        }
    }
    done.write().expect("self-test set poisoned").insert(n);
    Ok(())
}

fn reduce_x_form(e: &FreeElement, n: u32) -> Result<BTreeMap<AdmissibleString, Rational>> {
    let mut out = BTreeMap::new();
    let mut reducers: HashMap<u32, Arc<Reducer>> = HashMap::new();
    for (w, c) in e.iter() {
        let d = w.len() as u32;
        if let Entry::Vacant(slot) = reducers.entry(d) {
            slot.insert(reducer(n, d)?);
        }
        reducers[&d].reduce_word(&letters(w), c, &mut out);
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Coordinates over the admissible-string basis of `Q_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QnNormalForm {
    n: u32,
    coords: BTreeMap<AdmissibleString, Rational>,
}

impl QnNormalForm {
    pub fn zero(n: u32) -> Self {
        QnNormalForm {
            n,
            coords: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &BTreeMap<AdmissibleString, Rational> {
        &self.coords
    }

    pub fn coeff(&self, s: &AdmissibleString) -> Rational {
        self.coords.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Back to a combination of `X`-monomials.
    pub fn to_free_element(&self) -> FreeElement {
        FreeElement::from_terms(self.coords.iter().map(|(s, c)| (s.word(), c.clone())))
    }

    /// Pieces `Q_{n,i}` by string weight.
    pub fn graded_components(&self) -> BTreeMap<u32, QnNormalForm> {
        let mut out: BTreeMap<u32, QnNormalForm> = BTreeMap::new();
        for (s, c) in &self.coords {
            out.entry(s.weight())
                .or_insert_with(|| QnNormalForm::zero(self.n))
                .coords
                .insert(s.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for QnNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_free_element(), f)
    }
}

#[derive(Serialize)]
struct StringTerm<'a> {
    coeff: String,
    string: &'a AdmissibleString,
}

impl Serialize for QnNormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<StringTerm> = self
            .coords
            .iter()
            .map(|(st, c)| StringTerm {
                coeff: to_pq_string(c),
                string: st,
            })
            .collect();
        let mut st = s.serialize_struct("QnNormalForm", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Reduces `e` (in `X`- or `x`-symbols) modulo the relations of `Q_n`.
pub fn normal_form(e: &FreeElement, n: u32) -> Result<QnNormalForm> {
    normal_form_with(e, n, &Limits::default())
}

pub fn normal_form_with(e: &FreeElement, n: u32, limits: &Limits) -> Result<QnNormalForm> {
    let x = to_x_form(e, n)?;
    let top = x.iter().map(|(w, _)| w.len() as u32).max().unwrap_or(0);
    limits.check(n, top)?;
    self_test(n)?;
    Ok(QnNormalForm {
        n,
        coords: reduce_x_form(&x, n)?,
    })
}

/// `dim Q_{n,d}` as (number of words) - (rank of the relation consequences),
/// computed without reference to admissible strings.
pub fn dimension_by_rank(n: u32, d: u32, limits: &Limits) -> Result<usize> {
    limits.check(n, d)?;
    let alphabet = Alphabet::new(n);
    let ech = span_consequences(n, d, &alphabet, |code| code)?;
    Ok(alphabet.len().pow(d) - ech.rank())
}

/// Coordinates of an element of `Q_n ⊗ Q_n` over pairs of basis strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QnTensorForm {
    n: u32,
    coords: BTreeMap<(AdmissibleString, AdmissibleString), Rational>,
}

impl QnTensorForm {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &BTreeMap<(AdmissibleString, AdmissibleString), Rational> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_tensor(&self) -> TensorElement {
        let mut t = TensorElement::zero();
        for ((a, b), c) in &self.coords {
            t.add_term([a.word(), b.word()], c.clone());
        }
        t
    }
}

impl fmt::Display for QnTensorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_tensor(), f)
    }
}

#[derive(Serialize)]
struct PairTerm<'a> {
    coeff: String,
    left: &'a AdmissibleString,
    right: &'a AdmissibleString,
}

impl Serialize for QnTensorForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<PairTerm> = self
            .coords
            .iter()
            .map(|((a, b), c)| PairTerm {
                coeff: to_pq_string(c),
                left: a,
                right: b,
            })
            .collect();
        let mut st = s.serialize_struct("QnTensorForm", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Normal form of each leg, expanded over pairs of basis strings.
pub fn tensor_normal_form(t: &TensorElement, n: u32) -> Result<QnTensorForm> {
    let mut legs: HashMap<Word, QnNormalForm> = HashMap::new();
    let mut coords: BTreeMap<(AdmissibleString, AdmissibleString), Rational> = BTreeMap::new();
    for ([u, v], c) in t.iter() {
        for w in [u, v] {
            if !legs.contains_key(w) {
                let nf = normal_form(&FreeElement::monomial(w.clone(), Rational::one()), n)?;
                legs.insert(w.clone(), nf);
            }
        }
        for (a, x) in legs[u].coords() {
            for (b, y) in legs[v].coords() {
                *coords
                    .entry((a.clone(), b.clone()))
                    .or_insert_with(Rational::zero) += c * x * y;
            }
        }
    }
    coords.retain(|_, v| !v.is_zero());
    Ok(QnTensorForm { n, coords })
}
