//! The simplicial chain complex `SC_•(A)` of an algebra with a semi-normed
//! basis: `SC_0` the vertices, `SC_n` the tuples of non-identity basis
//! elements with nonzero product, and
//! `d(σ_1, ..., σ_n) = (σ_2, ...) + Σ_j (-1)^j (..., b(σ_j, σ_{j+1}), ...) + (-1)^n (..., σ_{n-1})`.

use std::collections::HashMap;

use num_traits::Zero;

use super::seminormed::SemiNormedAlgebra;
use crate::complex::{chain_cohomology, chain_homology, Coefficient, HomologyResult};
use crate::field::{Field, Scalar};
use crate::linalg::IntMatrix;
use crate::paths::PathTable;

#[derive(Debug, Clone)]
pub struct SimplicialComplexSC {
    vertices: usize,
    /// `tuples[n]` for `n ≥ 1`; `tuples[0]` is empty.
    tuples: Vec<Vec<Vec<usize>>>,
    /// `σ_1 ⋯ σ_n = Λ · b` per tuple.
    products: Vec<Vec<(Scalar, usize)>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    boundaries: Vec<IntMatrix>,
}

pub fn simplicial_complex(a: &SemiNormedAlgebra) -> SimplicialComplexSC {
    let vertices = a.basis().iter().filter(|b| b.identity).count();
    let mut tuples: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut products: Vec<Vec<(Scalar, usize)>> = vec![Vec::new()];
    let mut level: Vec<(Vec<usize>, (Scalar, usize))> = a.radical().map(|s| (vec![s], (Scalar::from_integer(1.into()), s))).collect();
    while !level.is_empty() {
        level.sort_by(|x, y| x.0.cmp(&y.0));
        let mut next = Vec::new();
        for (t, (lam, b)) in &level {
            let end = a.element(*b).target;
            for s in a.from_vertex(end) {
                if a.element(s).identity {
                    continue;
                }
                if let Some((l, c)) = a.product(*b, s) {
                    let mut u = t.clone();
                    u.push(s);
                    next.push((u, (a.field().mul(lam, &l), c)));
                }
            }
        }
        let (ts, ps): (Vec<_>, Vec<_>) = level.into_iter().unzip();
        tuples.push(ts);
        products.push(ps);
        level = next;
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = tuples
        .iter()
        .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
        .collect();
    let size = |n: usize| if n == 0 { vertices } else { tuples[n].len() };
    let mut boundaries = vec![IntMatrix::zeros(0, vertices)];
    for n in 1..tuples.len() {
        let mut m = IntMatrix::zeros(size(n - 1), size(n));
        for (j, t) in tuples[n].iter().enumerate() {
            if n == 1 {
                let e = a.element(t[0]);
                m.add_entry(e.target, j, 1);
                m.add_entry(e.source, j, -1);
                continue;
            }
            m.add_entry(index[n - 1][&t[1..]], j, 1);
            for k in 1..n {
                let (_, b) = a.product(t[k - 1], t[k]).expect("subproducts of a nonzero product are nonzero");
                let mut f = t[..k - 1].to_vec();
                f.push(b);
                f.extend_from_slice(&t[k + 1..]);
                m.add_entry(index[n - 1][&f], j, if k % 2 == 0 { 1 } else { -1 });
            }
            m.add_entry(index[n - 1][&t[..n - 1]], j, if n % 2 == 0 { 1 } else { -1 });
        }
        boundaries.push(m);
    }
    boundaries.push(IntMatrix::zeros(size(tuples.len() - 1), 0));
    SimplicialComplexSC {
        vertices,
        tuples,
        products,
        index,
        boundaries,
    }
}

impl SimplicialComplexSC {
    pub fn dim(&self) -> usize {
        self.tuples.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        match n {
            0 => self.vertices,
            _ => self.tuples.get(n).map_or(0, Vec::len),
        }
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.dim()).map(|n| self.count(n)).collect()
    }

    pub fn tuple(&self, n: usize, i: usize) -> &[usize] {
        &self.tuples[n][i]
    }

    pub fn tuples(&self, n: usize) -> &[Vec<usize>] {
        self.tuples.get(n).map_or(&[], Vec::as_slice)
    }

    /// `(Λ, b)` with `σ_1 ⋯ σ_n = Λ · b`.
    pub fn product(&self, n: usize, i: usize) -> &(Scalar, usize) {
        &self.products[n][i]
    }

    pub fn find(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t.len())?.get(t).copied()
    }

    /// `d_n: SC_n → SC_{n-1}`.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        match self.boundaries.get(n) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.count(n - 1), 0),
        }
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.boundaries.len() - 1).all(|n| self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero())
    }

    /// `SH_i(A; coefficient)`.
    pub fn homology(&self, coefficient: Coefficient) -> HomologyResult {
        chain_homology(&self.boundaries, coefficient)
    }

    /// `SH^i(A; coefficient)`.
    pub fn cohomology(&self, coefficient: Coefficient) -> HomologyResult {
        chain_cohomology(&self.boundaries, coefficient)
    }

    /// Source vertex (front of length 0) or target vertex (back of length
    /// 0) of a tuple.
    fn end_vertex(&self, a: &SemiNormedAlgebra, n: usize, i: usize, front: bool) -> usize {
        if n == 0 {
            return i;
        }
        let t = &self.tuples[n][i];
        if front {
            a.element(t[0]).source
        } else {
            a.element(t[n - 1]).target
        }
    }

    /// Cup product of a `p`-cochain and a `q`-cochain over a field.
    pub fn cup(&self, a: &SemiNormedAlgebra, field: &Field, p: usize, f: &[Scalar], q: usize, g: &[Scalar]) -> Vec<Scalar> {
        let n = p + q;
        (0..self.count(n))
            .map(|i| {
                let front = if p == 0 {
                    self.end_vertex(a, n, i, true)
                } else {
                    self.index[p][&self.tuples[n][i][..p]]
                };
                let x = &f[front];
                if x.is_zero() {
                    return Scalar::zero();
                }
                let back = if q == 0 {
                    self.end_vertex(a, n, i, false)
                } else {
                    self.index[q][&self.tuples[n][i][p..]]
                };
                field.mul(x, &g[back])
            })
            .collect()
    }

    pub fn spell_tuple(&self, a: &SemiNormedAlgebra, pt: &PathTable, n: usize, i: usize) -> String {
        if n == 0 {
            return pt.quiver().vertex_name(i).to_string();
        }
        let parts: Vec<String> = self.tuples[n][i].iter().map(|s| a.spell(pt, *s)).collect();
        format!("({})", parts.join(", "))
    }
}
