use crate::error::{Error, Result};
use crate::scalars::DivisionRing;

/// Rectangular matrix over a division ring, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RingMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: DivisionRing> RingMatrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("matrix rows have different lengths".into()));
        }
        Ok(RingMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![R::zero(); n * n];
        for k in 0..n {
            data[k * n + k] = R::one();
        }
        RingMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Deletes row `p` and column `q`.
    pub fn minor(&self, p: usize, q: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != p) {
            for c in (0..self.cols).filter(|&c| c != q) {
                data.push(self.get(r, c).clone());
            }
        }
        RingMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Gauss-Jordan elimination using only left multiplications on rows.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Invalid("only square matrices are invertible".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<R>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut b: Vec<Vec<R>> = (0..n).map(|r| Self::identity(n).row(r).to_vec()).collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::Undefined(format!("singular at column {}", col + 1)))?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            let s = a[col][col].inverse().expect("pivot is nonzero");
            for v in a[col].iter_mut().chain(b[col].iter_mut()) {
                *v = s.clone() * v.clone();
            }
            for r in (0..n).filter(|&r| r != col) {
                let f = a[r][col].clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
                    b[r][c] = b[r][c].clone() - f.clone() * b[col][c].clone();
                }
            }
        }
        Ok(RingMatrix {
            rows: n,
            cols: n,
            data: b.into_iter().flatten().collect(),
        })
    }
}

/// The `(p, q)` quasideterminant (0-based):
/// `m_pq - r_p (M^pq)^-1 c_q` where `r_p` is row `p` without column `q`
/// and `c_q` is column `q` without row `p`.
///
/// Fails with [`Error::Undefined`] when the minor `M^pq` is singular.
pub fn quasidet<R: DivisionRing>(m: &RingMatrix<R>, p: usize, q: usize) -> Result<R> {
    if m.rows() != m.cols() || m.rows() == 0 {
        return Err(Error::Invalid(
            "quasideterminant needs a nonempty square matrix".into(),
        ));
    }
    if p >= m.rows() || q >= m.cols() {
        return Err(Error::IndexOutOfRange(format!(
            "({}, {}) in a {}x{} matrix",
            p + 1,
            q + 1,
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 1 {
        return Ok(m.get(0, 0).clone());
    }
    let inv = m.minor(p, q).inverse()?;
    let row: Vec<R> = (0..n)
        .filter(|&c| c != q)
        .map(|c| m.get(p, c).clone())
        .collect();
    let col: Vec<R> = (0..n)
        .filter(|&r| r != p)
        .map(|r| m.get(r, q).clone())
        .collect();
    let mut correction = R::zero();
    for (a, ra) in row.iter().enumerate() {
        for (b, cb) in col.iter().enumerate() {
            correction = correction + ra.clone() * inv.get(a, b).clone() * cb.clone();
        }
    }
    Ok(m.get(p, q).clone() - correction)
}

/// Rows `x^(r-1), ..., x, 1` over the columns `x_1, ..., x_r`.
pub fn vandermonde_matrix<R: DivisionRing>(xs: &[R]) -> RingMatrix<R> {
    let r = xs.len();
    let rows = (0..r)
        .map(|row| xs.iter().map(|x| x.pow((r - 1 - row) as u32)).collect())
        .collect();
    RingMatrix::from_rows(rows).expect("vandermonde rows are uniform")
}

/// The Vandermonde quasideterminant `V(x_1, ..., x_r)`: the quasideterminant
/// of [`vandermonde_matrix`] at the top-right entry.
pub fn vandermonde_qd<R: DivisionRing>(xs: &[R]) -> Result<R> {
    if xs.is_empty() {
        return Err(Error::Invalid(
            "vandermonde needs at least one element".into(),
        ));
    }
    quasidet(&vandermonde_matrix(xs), 0, xs.len() - 1)
}
