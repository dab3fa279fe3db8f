//! Dense exact linear algebra over a [`Field`].

use std::fmt;

use crate::field::Field;

/// A dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![F::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o = o.clone() + vi.clone() * m.clone();
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn right_apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a.get(col, col).inverse()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                a.sub_row_multiple(r, col, &f);
                inv.sub_row_multiple(r, col, &f);
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &F) {
        for j in 0..self.cols {
            let v = self.get(r, j).clone() * c.clone();
            self.set(r, j, v);
        }
    }

    /// row[target] -= f * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, f: &F) {
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(target, j).clone() - f.clone() * s.clone();
            self.set(target, j, v);
        }
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// A basis of a subspace of `F^d`, grown one vector at a time.
///
/// Keeps the inserted vectors as given, plus an echelon copy built by
/// fraction-free elimination: each row is 0 at the pivots of earlier rows
/// and is kept small by [`Field::normalize_vector`].
#[derive(Clone, Debug)]
pub struct EchelonBasis<F> {
    dim: usize,
    vectors: Vec<Vec<F>>,
    /// (pivot column, echelon row)
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            vectors: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    /// The `k`-th echelon row, in insertion order.
    pub fn row(&self, k: usize) -> &[F] {
        &self.rows[k].1
    }

    /// Fully reduced rows with their pivots: each row is 1 at its pivot and
    /// 0 at every other pivot, so a vector `v` of the span equals
    /// `Σ v[pivot]·row`.
    pub fn reduced_rows(&self) -> Vec<(usize, Vec<F>)> {
        let mut rows = self.rows.clone();
        for k in (0..rows.len()).rev() {
            let (done, rest) = rows.split_at_mut(k + 1);
            let (pivot, row) = &mut done[k];
            let inv = row[*pivot].inverse().unwrap();
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() * inv.clone();
                }
            }
            for (p, later) in rest.iter() {
                let f = row[*p].clone();
                if f.is_zero() {
                    continue;
                }
                for (a, b) in row.iter_mut().zip(later) {
                    if !b.is_zero() {
                        *a = a.clone() - f.clone() * b.clone();
                    }
                }
            }
        }
        rows
    }

    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut rem = v.to_vec();
        F::normalize_vector(&mut rem);
        for (pivot, row) in &self.rows {
            let f = rem[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            let g = row[*pivot].clone();
            for (r, x) in rem.iter_mut().zip(row) {
                *r = if x.is_zero() {
                    r.clone() * g.clone()
                } else {
                    r.clone() * g.clone() - f.clone() * x.clone()
                };
            }
            F::normalize_vector(&mut rem);
        }
        rem
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    /// Adds `v` if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut rem = self.reduce(&v);
        let Some(pivot) = rem.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        F::normalize_vector(&mut rem);
        self.rows.push((pivot, rem));
        self.vectors.push(v);
        true
    }

    /// Coordinates of `v` over [`EchelonBasis::reduced_rows`], if `v` lies
    /// in the span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        self.contains(v)
            .then(|| self.rows.iter().map(|(p, _)| v[*p].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Q};

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn echelon_coordinates() {
        let mut b = EchelonBasis::new(3);
        assert!(b.insert(vec![q(1), q(1), q(0)]));
        assert!(b.insert(vec![q(0), q(1), q(1)]));
        assert!(!b.insert(vec![q(1), q(2), q(1)]));
        let v = [q(2), q(5), q(3)];
        let c = b.coordinates(&v).unwrap();
        let mut back = vec![q(0); 3];
        for (x, (_, row)) in c.iter().zip(b.reduced_rows()) {
            let row = &row;
            for (o, r) in back.iter_mut().zip(row) {
                *o = o.clone() + x.clone() * r.clone();
            }
        }
        assert_eq!(back, v);
        assert!(b.coordinates(&[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn vector_products() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.left_apply(&[q(1), q(1)]), vec![q(4), q(6)]);
        assert_eq!(a.right_apply(&[q(1), q(1)]), vec![q(3), q(7)]);
        assert_eq!(a.transpose().get(0, 1), &q(3));
    }
}
