//! Exact sparse linear algebra over [`Field`] and small integer matrices.

use std::collections::HashMap;
use std::ops::{AddAssign, Mul};

use num_traits::{One, Zero};

use crate::field::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(field: &Field, dense: &[Scalar]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter_map(|(i, x)| {
            let x = field.normalize(x.clone());
            (!x.is_zero()).then_some((i, x))
        })
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparse_get(v: &SparseVec, i: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &v[k].1)
}

/// `y + a * x`
pub fn axpy(field: &Field, y: &SparseVec, a: &Scalar, x: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            let v = field.mul(a, &x[j].1);
            if !v.is_zero() {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&y[i].1, &field.mul(a, &x[j].1));
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(field: &Field, v: &SparseVec, a: &Scalar) -> SparseVec {
    if a.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(a, x))).collect()
}

/// Reduced row echelon basis of a subspace, pivoting on the largest index
/// of each row. Non-pivot coordinates give a normal-form basis of the
/// quotient by the subspace.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn pivot_row_of(&self, col: usize) -> Option<&SparseVec> {
        self.pivot_row.get(&col).map(|&r| &self.rows[r])
    }

    /// Normal form of `v` modulo the subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Scalar)> = v.iter().filter(|(i, _)| self.pivot_row.contains_key(i)).cloned().collect();
        let mut out = v.clone();
        for (col, _) in hits {
            let Some(c) = sparse_get(&out, col).cloned() else {
                continue;
            };
            let row = &self.rows[self.pivot_row[&col]];
            out = axpy(&self.field, &out, &self.field.neg(&c), row);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns `false` if it was already contained.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some(&(pivot, ref lead)) = r.last() else {
            return false;
        };
        let r = scale(&self.field, &r, &self.field.inv(lead));
        for row in self.rows.iter_mut() {
            if let Some(c) = sparse_get(row, pivot).cloned() {
                *row = axpy(&self.field, row, &self.field.neg(&c), &r);
            }
        }
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(r);
        true
    }
}

/// Rank of a list of sparse rows.
pub fn rank(field: &Field, rows: &[SparseVec]) -> usize {
    let mut pivots: HashMap<usize, SparseVec> = HashMap::new();
    for row in rows {
        let mut v = row.clone();
        while let Some((lead, c)) = v.last().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let f = field.div(&c, &p.last().unwrap().1);
                    v = axpy(field, &v, &field.neg(&f), p);
                }
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Basis of `{ c : sum_j c_j columns[j] = 0 }`, as sparse vectors indexed
/// by column.
pub fn kernel(field: &Field, columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut pivots: HashMap<usize, (SparseVec, SparseVec)> = HashMap::new();
    let mut out = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut comb: SparseVec = vec![(j, Scalar::one())];
        loop {
            let Some((lead, c)) = v.last().cloned() else {
                out.push(comb);
                break;
            };
            match pivots.get(&lead) {
                Some((p, pc)) => {
                    let f = field.neg(&field.div(&c, &p.last().unwrap().1));
                    v = axpy(field, &v, &f, p);
                    comb = axpy(field, &comb, &f, pc);
                }
                None => {
                    pivots.insert(lead, (v, comb));
                    break;
                }
            }
        }
    }
    out
}

/// Row-major sparse matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, T)>>,
}

pub type IntMatrix = SparseMatrix<i64>;
pub type Matrix = SparseMatrix<Scalar>;

impl<T> SparseMatrix<T>
where
    T: Clone + Zero + PartialEq + AddAssign + Mul<Output = T>,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self
    where
        T: One,
    {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, T::one()));
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.data[r]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &Vec<(usize, T)>> {
        self.data.iter()
    }

    /// Accumulates `value` into entry `(r, c)`.
    pub fn add_entry(&mut self, r: usize, c: usize, value: T) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        if value.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => {
                row[k].1 += value;
                if row[k].1.is_zero() {
                    row.remove(k);
                }
            }
            Err(k) => row.insert(k, (c, value)),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.data[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                t.data[*c].push((r, v.clone()));
            }
        }
        t
    }

    /// `self * other`
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<usize, T> = std::collections::BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let e = acc.entry(*c).or_insert_with(T::zero);
                    *e += a.clone() * b.clone();
                }
            }
            out.data[r] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    pub fn map<U, F>(&self, mut f: F) -> SparseMatrix<U>
    where
        U: Clone + Zero + PartialEq + AddAssign + Mul<Output = U>,
        F: FnMut(&T) -> U,
    {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| {
                    row.iter()
                        .filter_map(|(c, v)| {
                            let u = f(v);
                            (!u.is_zero()).then_some((*c, u))
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn from_dense(dense: &[Vec<T>], cols: usize) -> Self {
        let mut m = Self::zeros(dense.len(), cols);
        for (r, row) in dense.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.add_entry(r, c, v.clone());
            }
        }
        m
    }
}

impl IntMatrix {
    pub fn to_scalar(&self, field: &Field) -> Matrix {
        self.map(|v| field.normalize(crate::field::int(*v)))
    }
}

impl Matrix {
    pub fn normalized(&self, field: &Field) -> Matrix {
        self.map(|v| field.normalize(v.clone()))
    }

    /// Product followed by reduction into `field`.
    pub fn mul_in(&self, field: &Field, other: &Matrix) -> Matrix {
        self.mul(other).normalized(field)
    }

    pub fn sub_in(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, row) in other.data.iter().enumerate() {
            for (c, v) in row {
                out.add_entry(r, *c, -v.clone());
            }
        }
        out.normalized(field)
    }

    pub fn rank(&self, field: &Field) -> usize {
        let rows: Vec<SparseVec> = self.data.clone();
        rank(field, &rows)
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        self.data.clone()
    }

    /// Columns as sparse vectors.
    pub fn sparse_cols(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn from_sparse_rows(rows: Vec<SparseVec>, cols: usize) -> Matrix {
        SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_sparse_cols(cols: Vec<SparseVec>, rows: usize) -> Matrix {
        Self::from_sparse_rows(cols, rows).transpose()
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, field: &Field, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (c, a) in row {
                if let Some(x) = sparse_get(v, *c) {
                    acc += a * x;
                }
            }
            let acc = field.normalize(acc);
            if !acc.is_zero() {
                out.push((r, acc));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(i, x)| (*i, int(*x))).collect()
    }

    #[test]
    fn echelon_membership_and_normal_form() {
        let f = Field::Rational;
        let mut e = Echelon::new(f);
        assert!(e.insert(&sv(&[(0, 1), (1, -1)])));
        assert!(e.insert(&sv(&[(0, 1), (2, -1)])));
        assert!(!e.insert(&sv(&[(1, 1), (2, -1)])));
        assert!(e.contains(&sv(&[(0, 2), (1, -1), (2, -1)])));
        assert!(!e.contains(&sv(&[(0, 2), (1, -1)])));
        // pivots sit on the largest indices, leaving column 0 as the quotient basis
        assert!(e.is_pivot(1) && e.is_pivot(2) && !e.is_pivot(0));
        assert_eq!(e.reduce(&sv(&[(2, 1)])), sv(&[(0, 1)]));
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let f = Field::Rational;
        let cols = vec![sv(&[(0, 1)]), sv(&[(0, 2)]), sv(&[(1, 1)])];
        let k = kernel(&f, &cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], sv(&[(0, -2), (1, 1)]));
    }

    #[test]
    fn rank_mod_p_differs_from_rational() {
        let rows = vec![sv(&[(0, 1), (1, 1)]), sv(&[(0, 1), (1, -1)])];
        assert_eq!(rank(&Field::Rational, &rows), 2);
        let f2 = Field::prime(2).unwrap();
        let rows2: Vec<SparseVec> = rows
            .iter()
            .map(|r| r.iter().map(|(i, x)| (*i, f2.normalize(x.clone()))).collect())
            .collect();
        assert_eq!(rank(&f2, &rows2), 1);
    }

    #[test]
    fn matrix_product_and_transpose() {
        let a = IntMatrix::from_dense(&[vec![1, 2], vec![0, 1]], 2);
        let b = IntMatrix::from_dense(&[vec![1, -2], vec![0, 1]], 2);
        assert_eq!(a.mul(&b), IntMatrix::identity(2));
        assert_eq!(a.transpose().get(1, 0), 2);
    }
}
