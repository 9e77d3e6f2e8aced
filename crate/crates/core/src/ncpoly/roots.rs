use rand::Rng;

use super::matrix::vandermonde_qd;
use super::poly::LeftPolynomial;
use crate::error::{Error, Result};
use crate::scalars::{random_quaternion, DivisionRing, Quaternion};

/// An ordered list of roots `x_1, ..., x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem<R> {
    roots: Vec<R>,
}

impl<R: DivisionRing> RootSystem<R> {
    pub fn new(roots: Vec<R>) -> Self {
        RootSystem { roots }
    }

    pub fn roots(&self) -> &[R] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// The same roots reordered: entry `k` of the result is `x_{order[k]}` (0-based).
    pub fn permuted(&self, order: &[usize]) -> Self {
        RootSystem {
            roots: order.iter().map(|&k| self.roots[k].clone()).collect(),
        }
    }

    /// True iff `V(x_{i_1}, ..., x_{i_r})` is defined and invertible for every
    /// ordered selection of distinct roots, of every length. Invertibility of
    /// the length-`r` values is what makes the length-`r+1` ones defined, and
    /// the pseudo-root formula needs it at the top length as well.
    pub fn is_independent(&self) -> bool {
        self.first_undefined().is_none()
    }

    fn first_undefined(&self) -> Option<Vec<usize>> {
        let n = self.roots.len();
        let mut used = vec![false; n];
        let mut seq = Vec::with_capacity(n);
        self.search_undefined(&mut used, &mut seq)
    }

    fn search_undefined(&self, used: &mut [bool], seq: &mut Vec<usize>) -> Option<Vec<usize>> {
        for k in 0..self.roots.len() {
            if used[k] {
                continue;
            }
            seq.push(k);
            let xs: Vec<R> = seq.iter().map(|&s| self.roots[s].clone()).collect();
            if vandermonde_qd(&xs).map_or(true, |v| v.is_zero()) {
                return Some(seq.clone());
            }
            used[k] = true;
            let found = self.search_undefined(used, seq);
            used[k] = false;
            seq.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn require_independent(&self) -> Result<()> {
        match self.first_undefined() {
            None => Ok(()),
            Some(seq) => {
                let labels: Vec<String> = seq.iter().map(|k| format!("x{}", k + 1)).collect();
                Err(Error::DependentRoots(format!(
                    "V({}) is undefined or zero",
                    labels.join(",")
                )))
            }
        }
    }

    /// `y_1, ..., y_n` with `y_r = V(x_1..x_r) x_r V(x_1..x_r)^-1`, so that
    /// `f = (t - y_n)...(t - y_1)` vanishes at every `x_i`.
    pub fn pseudo_roots(&self) -> Result<Vec<R>> {
        self.require_independent()?;
        (1..=self.roots.len())
            .map(|r| pseudo_root_of_sequence(&self.roots[..r]))
            .collect()
    }

    /// `y_{A,i}` for 1-based root indices: the last pseudo-root of the ordering
    /// (elements of `set` in increasing order, then `i`). Independent of how
    /// `set` is enumerated; see [`Self::pseudo_root_of_ordering`].
    pub fn pseudo_root_of_set(&self, set: &[usize], i: usize) -> Result<R> {
        let mut order: Vec<usize> = set.to_vec();
        order.sort_unstable();
        order.dedup();
        if order.len() != set.len() {
            return Err(Error::Invalid("repeated index in the set".into()));
        }
        if order.contains(&i) {
            return Err(Error::Invalid(format!("index {i} lies in the set")));
        }
        order.push(i);
        self.pseudo_root_of_ordering(&order)
    }

    /// Last pseudo-root of the 1-based ordering `order`.
    pub fn pseudo_root_of_ordering(&self, order: &[usize]) -> Result<R> {
        let n = self.roots.len();
        if let Some(bad) = order.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::IndexOutOfRange(format!(
                "root index {bad} with {n} roots"
            )));
        }
        let sub = self.permuted(&order.iter().map(|k| k - 1).collect::<Vec<_>>());
        sub.require_independent()?;
        pseudo_root_of_sequence(sub.roots())
    }
}

impl RootSystem<Quaternion> {
    /// Draws `n` roots with [`random_quaternion`] until they are independent.
    pub fn random<G: Rng + ?Sized>(rng: &mut G, n: usize) -> Self {
        loop {
            let rs = RootSystem::new((0..n).map(|_| random_quaternion(rng)).collect());
            if rs.is_independent() {
                return rs;
            }
        }
    }
}

fn pseudo_root_of_sequence<R: DivisionRing>(xs: &[R]) -> Result<R> {
    let last = xs.last().expect("nonempty sequence").clone();
    let v = vandermonde_qd(xs)?;
    let v_inv = v
        .inverse()
        .ok_or_else(|| Error::Undefined(format!("V of {} roots vanishes", xs.len())))?;
    Ok(v * last * v_inv)
}

/// Noncommutative elementary functions of `y_1..y_n`:
/// `e_r = sum over i_r > ... > i_1 of y_{i_r} ... y_{i_1}`.
pub fn vieta<R: DivisionRing>(ys: &[R]) -> Vec<R> {
    let n = ys.len();
    // e[r] over the prefix y_1..y_m; the newest (largest) index goes on the left.
    let mut e = vec![R::zero(); n + 1];
    e[0] = R::one();
    for (m, y) in ys.iter().enumerate() {
        for r in (1..=m + 1).rev() {
            e[r] = e[r].clone() + y.clone() * e[r - 1].clone();
        }
    }
    e.remove(0);
    e
}

/// `(t - y_n) ... (t - y_1)`.
pub fn expand_factors<R: DivisionRing>(ys: &[R]) -> LeftPolynomial<R> {
    ys.iter()
        .rev()
        .fold(LeftPolynomial::constant(R::one()), |acc, y| {
            acc.mul(&LeftPolynomial::linear(y.clone()))
        })
}
