use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::freealg::Subset;
use crate::qn::{generators, relation_instances, AdmissibleString, RelationInstance};
use crate::scalars::{to_pq_string, Rational};

type Key = (Subset, u32);

fn label((set, i): Key) -> String {
    format!(
        "e(x{{{};{i}}})",
        set.elements()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// Values of a counit on every generator `x_{A,i}` of `Q_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounitAssignment {
    n: u32,
    values: BTreeMap<Key, Rational>,
}

impl CounitAssignment {
    pub fn new(n: u32, values: BTreeMap<Key, Rational>) -> Result<Self> {
        let expected = generators(n);
        if values.len() != expected.len() || expected.iter().any(|k| !values.contains_key(k)) {
            return Err(Error::Invalid(format!(
                "a counit on Q_{n} needs exactly one value per generator"
            )));
        }
        Ok(CounitAssignment { n, values })
    }

    pub fn zero(n: u32) -> Self {
        let values = generators(n)
            .into_iter()
            .map(|k| (k, Rational::zero()))
            .collect();
        CounitAssignment { n, values }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &BTreeMap<Key, Rational> {
        &self.values
    }

    pub fn value(&self, set: Subset, i: u32) -> Option<&Rational> {
        self.values.get(&(set, i))
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    /// Value on `X(A)`, which telescopes along the sorted elements of `A`.
    pub fn on_x(&self, set: Subset) -> Rational {
        set.elements()
            .iter()
            .enumerate()
            .map(|(k, &a)| self.values[&(set.prefix(k), a)].clone())
            .sum()
    }

    /// Value on a basis string, extended multiplicatively.
    pub fn on_string(&self, s: &AdmissibleString) -> Rational {
        s.sets().into_iter().map(|a| self.on_x(a)).product()
    }

    /// Value on the chain generator `y_r = x_{[r-1], r}`.
    pub fn on_chain(&self, r: u32) -> Rational {
        self.values[&(Subset::range(r - 1), r)].clone()
    }

    /// Every relation or normalization the assignment breaks.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for inst in relation_instances(self.n) {
            let [a, b] = inst.left_pair().map(|k| self.values[&k].clone());
            let [c, d] = inst.right_pair().map(|k| self.values[&k].clone());
            if &a + &b != &c + &d {
                out.push(format!("sum relation at {inst}"));
            }
            if &a * &b != &c * &d {
                out.push(format!("product relation at {inst}"));
            }
        }
        // e_r(v_1..v_n) = 0 for 1 <= r <= n
        let mut e = vec![Rational::zero(); self.n as usize + 1];
        e[0] = Rational::one();
        for m in 1..=self.n {
            let v = self.on_chain(m);
            for k in (1..=m as usize).rev() {
                e[k] = &e[k] + &v * &e[k - 1];
            }
        }
        for (r, value) in e.iter().enumerate().skip(1) {
            if !value.is_zero() {
                out.push(format!("counit of e_{r} is {value}"));
            }
        }
        out
    }
}

#[derive(Serialize)]
struct ValueEntry {
    #[serde(rename = "A")]
    set: Subset,
    i: u32,
    value: String,
}

impl Serialize for CounitAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<ValueEntry> = self
            .values
            .iter()
            .map(|(&(set, i), v)| ValueEntry {
                set,
                i,
                value: to_pq_string(v),
            })
            .collect();
        entries.serialize(s)
    }
}

impl fmt::Display for CounitAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(&k, v)| format!("{} = {v}", label(k)))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// One complete case of the vanishing-branch analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchTrace {
    /// Chain indices `r` in the order their `y_r` were chosen to vanish.
    pub order: Vec<u32>,
    pub steps: Vec<String>,
}

/// Outcome of counit forcing: every branch traced, and the common assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounitResult {
    pub n: u32,
    pub branches: Vec<BranchTrace>,
    pub assignment: CounitAssignment,
}

/// Determines the counit on all generators from `ε̃ ∘ Φ = ε` and the relations.
pub fn forced_counit(n: u32) -> Result<CounitResult> {
    forced_counit_with(n, &relation_instances(n))
}

/// As [`forced_counit`], visiting relation instances in the given order.
pub fn forced_counit_with(n: u32, instances: &[RelationInstance]) -> Result<CounitResult> {
    if n < 2 {
        return Err(Error::Invalid(format!(
            "counit forcing needs n >= 2, got {n}"
        )));
    }
    let mut branches = Vec::new();
    let mut order = Vec::new();
    let remaining: Vec<u32> = (1..=n).collect();
    enumerate_branches(&remaining, &mut order, &mut branches);

    let mut assignment: Option<CounitAssignment> = None;
    let mut traces = Vec::new();
    for (order, steps) in branches {
        let (found, steps) = propagate(n, &order, steps, instances)?;
        if let Some(prev) = &assignment {
            if *prev != found {
                return Err(Error::Inconsistent(format!(
                    "branch {order:?} forces a different counit"
                )));
            }
        }
        let bad = found.violations();
        if !bad.is_empty() {
            return Err(Error::Inconsistent(format!(
                "branch {order:?} breaks {}",
                bad.join("; ")
            )));
        }
        assignment = Some(found);
        traces.push(BranchTrace { order, steps });
    }
    Ok(CounitResult {
        n,
        branches: traces,
        assignment: assignment.expect("at least one branch"),
    })
}

/// With `v_r` for `r` in `remaining` unknown and all others zero, the
/// conditions `e_k = 0` leave `e_m(remaining) = Π v_r = 0`, so some factor vanishes.
fn enumerate_branches(
    remaining: &[u32],
    order: &mut Vec<u32>,
    out: &mut Vec<(Vec<u32>, Vec<String>)>,
) {
    if remaining.is_empty() {
        let mut steps = Vec::new();
        let mut left: Vec<u32> = order.clone();
        left.sort_unstable();
        for &r in order.iter() {
            let product: Vec<String> = left.iter().rev().map(|k| format!("v{k}")).collect();
            steps.push(format!(
                "e_{} restricted to the unknown chain values is {} = 0; case v{r} = 0",
                left.len(),
                product.join("*")
            ));
            left.retain(|&k| k != r);
        }
        out.push((order.clone(), steps));
        return;
    }
    for (idx, &r) in remaining.iter().enumerate() {
        let mut rest = remaining.to_vec();
        rest.remove(idx);
        order.push(r);
        enumerate_branches(&rest, order, out);
        order.pop();
    }
}

enum Deduction {
    Set(Vec<(Key, Rational)>),
    Stall,
}

/// `{v(p1), v(p2)} = {v(q1), v(q2)}` as multisets.
fn deduce(l: [(Key, Option<&Rational>); 2], r: [(Key, Option<&Rational>); 2]) -> Result<Deduction> {
    let unknown = |side: &[(Key, Option<&Rational>); 2]| -> Vec<Key> {
        side.iter()
            .filter(|(_, v)| v.is_none())
            .map(|(k, _)| *k)
            .collect()
    };
    let known = |side: &[(Key, Option<&Rational>); 2]| -> Vec<Rational> {
        side.iter().filter_map(|(_, v)| v.cloned()).collect()
    };
    let (lu, ru) = (unknown(&l), unknown(&r));
    let (lk, rk) = (known(&l), known(&r));
    let complete =
        |full: &[Rational], other_known: &[Rational], other_unknown: &[Key]| -> Result<Deduction> {
            match (other_known, other_unknown) {
                ([], [p, q]) if full[0] == full[1] => Ok(Deduction::Set(vec![
                    (*p, full[0].clone()),
                    (*q, full[0].clone()),
                ])),
                ([], _) => Ok(Deduction::Stall),
                ([c], [p]) => {
                    let rest = if *c == full[0] {
                        full[1].clone()
                    } else if *c == full[1] {
                        full[0].clone()
                    } else {
                        return Err(Error::Inconsistent(format!(
                            "value {c} cannot occur in the pair"
                        )));
                    };
                    Ok(Deduction::Set(vec![(*p, rest)]))
                }
                _ => {
                    let mut a = full.to_vec();
                    let mut b = other_known.to_vec();
                    a.sort();
                    b.sort();
                    if a == b {
                        Ok(Deduction::Set(Vec::new()))
                    } else {
                        Err(Error::Inconsistent("pairs differ as multisets".into()))
                    }
                }
            }
        };
    match (lk.len(), rk.len()) {
        (2, _) => complete(&lk, &rk, &ru),
        (_, 2) => complete(&rk, &lk, &lu),
        (1, 1) if lk[0] != rk[0] => {
            // {a, b} = {c, d} with a != c forces b = c and d = a.
            Ok(Deduction::Set(vec![
                (lu[0], rk[0].clone()),
                (ru[0], lk[0].clone()),
            ]))
        }
        _ => Ok(Deduction::Stall),
    }
}

fn propagate(
    n: u32,
    order: &[u32],
    mut steps: Vec<String>,
    instances: &[RelationInstance],
) -> Result<(CounitAssignment, Vec<String>)> {
    let mut values: BTreeMap<Key, Option<Rational>> =
        generators(n).into_iter().map(|k| (k, None)).collect();
    for &r in order {
        values.insert((Subset::range(r - 1), r), Some(Rational::zero()));
    }
    loop {
        let mut progress = false;
        for inst in instances {
            let look = |k: Key| (k, values[&k].as_ref());
            let deduction = deduce(inst.left_pair().map(look), inst.right_pair().map(look))
                .map_err(|e| Error::Inconsistent(format!("at {inst}: {e}")))?;
            if let Deduction::Set(found) = deduction {
                if found.is_empty() {
                    continue;
                }
                let [a, b] = inst.left_pair().map(label);
                let [c, d] = inst.right_pair().map(label);
                let mut conclusions = Vec::new();
                for (k, v) in found {
                    conclusions.push(format!("{} = {v}", label(k)));
                    values.insert(k, Some(v));
                }
                steps.push(format!(
                    "{inst}: {{{a}, {b}}} = {{{c}, {d}}} as multisets (equal sum and product) => {}",
                    conclusions.join(", ")
                ));
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let missing: Vec<String> = values
        .iter()
        .filter(|(_, v)| v.is_none())
        .map(|(&k, _)| label(k))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Underdetermined(format!(
            "branch {order:?} stalls with {} unknown: {}",
            missing.len(),
            missing.join(", ")
        )));
    }
    let values = values
        .into_iter()
        .map(|(k, v)| (k, v.expect("all fixed")))
        .collect();
    Ok((CounitAssignment { n, values }, steps))
}
