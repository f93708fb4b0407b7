//! Smith normal form of integer matrices.
//!
//! [`smith_normal_form`] is the dense algorithm with unimodular transform
//! certificates. [`smith_invariants`] first peels off unit pivots on the
//! sparse matrix (boundary matrices are mostly `0, ±1`) and only runs the
//! dense algorithm on whatever is left.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::linalg::IntMatrix;

type Dense = Vec<Vec<BigInt>>;

/// Diagonal form `U * M * V = diag(divisors)`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d1 | d2 | ...`, all positive.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    pub left: Dense,
    pub right: Dense,
}

/// Rank and nonzero diagonal of the Smith normal form, without transforms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithInvariants {
    pub rank: usize,
    /// Full divisor chain, including the unit divisors.
    #[serde(skip)]
    pub divisors: Vec<BigInt>,
}

impl SmithInvariants {
    /// Divisors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Rank of the matrix reduced mod `p`.
    pub fn rank_mod(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.divisors.iter().filter(|d| !d.is_multiple_of(&p)).count()
    }
}

/// JSON number when it fits in an `i64`, decimal string otherwise.
pub fn bigint_json(d: &BigInt) -> serde_json::Value {
    match i64::try_from(d) {
        Ok(v) => v.into(),
        Err(_) => d.to_string().into(),
    }
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn to_dense(m: &IntMatrix) -> Dense {
    m.to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect()
}

struct Work {
    a: Dense,
    u: Option<Dense>,
    v: Option<Dense>,
}

impl Work {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols() {
            let t = &self.a[j][k] * c;
            self.a[i][k] += t;
        }
        if let Some(u) = self.u.as_mut() {
            for k in 0..u[0].len() {
                let t = &u[j][k] * c;
                u[i][k] += t;
            }
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for row in self.a.iter_mut() {
            let t = &row[j] * c;
            row[i] += t;
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                let t = &row[j] * c;
                row[i] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
    }

    fn run(&mut self) -> Vec<BigInt> {
        let (m, n) = (self.rows(), self.cols());
        let mut t = 0;
        while t < m.min(n) {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !self.a[i][j].is_zero() && best.is_none_or(|(bi, bj)| self.a[i][j].abs() < self.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            self.swap_rows(t, bi);
            self.swap_cols(t, bj);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.add_row(i, t, &-q);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.add_col(j, t, &-q);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // move the smallest leftover remainder into the pivot
                    let mut best = (t, t);
                    for i in t + 1..m {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..n {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility of the trailing block by the pivot
                let mut bad = None;
                'outer: for i in t + 1..m {
                    for j in t + 1..n {
                        if !self.a[i][j].is_multiple_of(&self.a[t][t]) {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        (0..t).map(|i| self.a[i][i].clone()).collect()
    }
}

/// Dense Smith normal form with transform certificates.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut w = Work {
        a: to_dense(m),
        u: Some(identity(m.nrows())),
        v: Some(identity(m.ncols())),
    };
    let divisors = w.run();
    SmithForm {
        rank: divisors.len(),
        divisors,
        left: w.u.unwrap(),
        right: w.v.unwrap(),
    }
}

impl SmithForm {
    /// Checks `U * M * V = diag(divisors)` and that `U`, `V` are unimodular
    /// (determinant `±1`, verified through their own Smith forms).
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let a = to_dense(m);
        let (rows, cols) = (m.nrows(), m.ncols());
        let mul = |x: &Dense, y: &Dense, r: usize, k: usize, c: usize| -> Dense {
            let mut out = vec![vec![BigInt::zero(); c]; r];
            for i in 0..r {
                for l in 0..k {
                    if x[i][l].is_zero() {
                        continue;
                    }
                    for j in 0..c {
                        out[i][j] += &x[i][l] * &y[l][j];
                    }
                }
            }
            out
        };
        let ua = mul(&self.left, &a, rows, rows, cols);
        let uav = mul(&ua, &self.right, rows, cols, cols);
        for (i, row) in uav.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j && i < self.divisors.len() {
                    self.divisors[i].clone()
                } else {
                    BigInt::zero()
                };
                if *x != expect {
                    return false;
                }
            }
        }
        let chain_ok = self.divisors.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        chain_ok && is_unimodular(&self.left) && is_unimodular(&self.right)
    }
}

fn is_unimodular(m: &Dense) -> bool {
    let n = m.len();
    let mut w = Work {
        a: m.clone(),
        u: None,
        v: None,
    };
    let d = w.run();
    d.len() == n && d.iter().all(|x| x.is_one())
}

/// Smith invariants via sparse unit-pivot elimination plus a dense finish.
pub fn smith_invariants(m: &IntMatrix) -> SmithInvariants {
    let mut rows: Vec<Option<Vec<(usize, BigInt)>>> = m
        .rows_iter()
        .map(|r| {
            let v: Vec<(usize, BigInt)> = r.iter().map(|(c, x)| (*c, BigInt::from(*x))).collect();
            (!v.is_empty()).then_some(v)
        })
        .collect();
    let mut units = 0usize;
    loop {
        // shortest live row holding a unit entry
        let mut pick: Option<(usize, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            if pick.is_some_and(|(_, _, len)| len <= row.len()) {
                continue;
            }
            if let Some(k) = row.iter().position(|(_, x)| x.abs().is_one()) {
                pick = Some((r, k, row.len()));
            }
        }
        let Some((r, k, _)) = pick else { break };
        let pivot_row = rows[r].take().unwrap();
        let (c, s) = pivot_row[k].clone();
        for row in rows.iter_mut() {
            let Some(v) = row else { continue };
            let Ok(pos) = v.binary_search_by_key(&c, |(j, _)| *j) else {
                continue;
            };
            let factor = &v[pos].1 * &s;
            let updated = sub_scaled(v, &factor, &pivot_row);
            *row = (!updated.is_empty()).then_some(updated);
        }
        units += 1;
    }
    let live: Vec<Vec<(usize, BigInt)>> = rows.into_iter().flatten().collect();
    let mut cols: Vec<usize> = live.iter().flat_map(|r| r.iter().map(|(c, _)| *c)).collect();
    cols.sort_unstable();
    cols.dedup();
    let mut dense = vec![vec![BigInt::zero(); cols.len()]; live.len()];
    for (i, r) in live.iter().enumerate() {
        for (c, x) in r {
            let j = cols.binary_search(c).unwrap();
            dense[i][j] = x.clone();
        }
    }
    let mut w = Work {
        a: dense,
        u: None,
        v: None,
    };
    let rest = w.run();
    let mut divisors = vec![BigInt::one(); units];
    divisors.extend(rest);
    SmithInvariants {
        rank: divisors.len(),
        divisors,
    }
}

/// `v - factor * w`
fn sub_scaled(v: &[(usize, BigInt)], factor: &BigInt, w: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j >= w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i >= v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, -(factor * &w[j].1)));
            j += 1;
        } else {
            let x = &v[i].1 - factor * &w[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
