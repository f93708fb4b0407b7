//! Hochschild cohomology through the reduced (Cibils) complex
//! `C^n = Hom_{E^e}(rad A^{⊗_E n}, A)`.
//!
//! A basis of `C^n` is given by pairs `(t, τ)`: `t` a composable tuple of
//! non-identity basis elements from `x_0` to `x_n` (products may vanish)
//! and `τ` a basis element of `e_{x_0} A e_{x_n}`. In degree 0 the tuples
//! are the vertices. The coboundary is
//! `(bf)(σ_1, ..., σ_{n+1}) = σ_1 f(σ_2, ...) + Σ_j (-1)^j f(..., σ_j σ_{j+1}, ...) + (-1)^{n+1} f(..., σ_n) σ_{n+1}`.

use std::collections::HashMap;

use num_traits::Zero;

use super::seminormed::SemiNormedAlgebra;
use crate::field::{Field, Scalar};
use crate::linalg::{kernel, rank, Matrix, SparseVec};

#[derive(Debug, Clone)]
pub struct HochschildComplex {
    field: Field,
    /// `tuples[n]`; in degree 0 the single-vertex tuples `[x]`.
    tuples: Vec<Vec<Vec<usize>>>,
    tuple_index: Vec<HashMap<Vec<usize>, usize>>,
    /// Cochain basis `(tuple, τ)` per degree.
    basis: Vec<Vec<(usize, usize)>>,
    basis_index: Vec<HashMap<(usize, usize), usize>>,
    /// `b^n: C^n → C^{n+1}`, rows `C^{n+1}`.
    coboundaries: Vec<Matrix>,
}

impl HochschildComplex {
    pub fn field(&self) -> Field {
        self.field
    }

    /// Highest degree with a nonzero cochain space.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn cochain_dim(&self, n: usize) -> usize {
        self.basis.get(n).map_or(0, Vec::len)
    }

    pub fn tuples(&self, n: usize) -> &[Vec<usize>] {
        self.tuples.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn tuple_id(&self, n: usize, t: &[usize]) -> Option<usize> {
        self.tuple_index.get(n)?.get(t).copied()
    }

    pub fn basis(&self, n: usize) -> &[(usize, usize)] {
        self.basis.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn basis_id(&self, n: usize, tuple: usize, tau: usize) -> Option<usize> {
        self.basis_index.get(n)?.get(&(tuple, tau)).copied()
    }

    /// `b^n`; zero outside the computed range.
    pub fn coboundary(&self, n: usize) -> Matrix {
        match self.coboundaries.get(n) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.cochain_dim(n + 1), self.cochain_dim(n)),
        }
    }

    pub fn coboundary_squares_to_zero(&self) -> bool {
        (1..self.coboundaries.len()).all(|n| self.coboundaries[n].mul_in(&self.field, &self.coboundaries[n - 1]).is_zero())
    }

    /// `dim HH^n` for `n = 0..=dim`.
    pub fn hh_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.coboundaries.iter().map(|m| m.rank(&self.field)).collect();
        (0..=self.dim())
            .map(|n| {
                let out = ranks.get(n).copied().unwrap_or(0);
                let inc = if n == 0 { 0 } else { ranks[n - 1] };
                self.cochain_dim(n) - out - inc
            })
            .collect()
    }

    /// Basis of the cocycles `Z^n`, as sparse vectors over `C^n`.
    pub fn cocycles(&self, n: usize) -> Vec<SparseVec> {
        kernel(&self.field, &self.coboundary(n).sparse_cols())
    }

    /// Whether a cochain is a coboundary.
    pub fn is_coboundary(&self, n: usize, f: &SparseVec) -> bool {
        if n == 0 {
            return f.is_empty();
        }
        let cols = self.coboundary(n - 1).sparse_cols();
        let r = rank(&self.field, &cols);
        let mut with = cols;
        with.push(f.clone());
        rank(&self.field, &with) == r
    }
}

fn vertex_of(a: &SemiNormedAlgebra, n: usize, t: &[usize], front: bool) -> usize {
    if n == 0 {
        return t[0];
    }
    if front {
        a.element(t[0]).source
    } else {
        a.element(t[n - 1]).target
    }
}

pub fn hochschild_complex(a: &SemiNormedAlgebra) -> HochschildComplex {
    let field = a.field();
    let nv = a.basis().iter().filter(|b| b.identity).count();
    let mut tuples: Vec<Vec<Vec<usize>>> = vec![(0..nv).map(|x| vec![x]).collect()];
    let mut level: Vec<Vec<usize>> = a.radical().map(|s| vec![s]).collect();
    while !level.is_empty() {
        level.sort();
        let mut next = Vec::new();
        for t in &level {
            let end = a.element(*t.last().unwrap()).target;
            for s in a.from_vertex(end) {
                if !a.element(s).identity {
                    let mut u = t.clone();
                    u.push(s);
                    next.push(u);
                }
            }
        }
        tuples.push(level);
        level = next;
    }
    let tuple_index: Vec<HashMap<Vec<usize>, usize>> = tuples
        .iter()
        .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
        .collect();
    let mut basis: Vec<Vec<(usize, usize)>> = Vec::new();
    for (n, ts) in tuples.iter().enumerate() {
        let mut b = Vec::new();
        for (i, t) in ts.iter().enumerate() {
            let (x, y) = (vertex_of(a, n, t, true), vertex_of(a, n, t, false));
            for &tau in a.pair_basis(x, y) {
                b.push((i, tau));
            }
        }
        basis.push(b);
    }
    while basis.len() > 1 && basis.last().unwrap().is_empty() {
        basis.pop();
        tuples.pop();
    }
    let basis_index: Vec<HashMap<(usize, usize), usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(i, k)| (*k, i)).collect()).collect();
    let mut coboundaries = Vec::new();
    for n in 0..basis.len() {
        let rows = basis.get(n + 1).map_or(0, Vec::len);
        let mut m = Matrix::zeros(rows, basis[n].len());
        if n + 1 < basis.len() {
            for (ti, t) in tuples[n + 1].iter().enumerate() {
                let x0 = a.element(t[0]).source;
                let xe = a.element(t[n]).target;
                let mut add = |row_tau: usize, col: (usize, usize), c: Scalar| {
                    let r = basis_index[n + 1][&(ti, row_tau)];
                    let k = basis_index[n][&col];
                    m.add_entry(r, k, c);
                };
                // σ_1 f(σ_2, ..., σ_{n+1})
                let rest: Vec<usize> = if n == 0 { vec![a.element(t[0]).target] } else { t[1..].to_vec() };
                let ri = tuple_index[n][&rest];
                for &tau in a.pair_basis(a.element(t[0]).target, xe) {
                    if let Some((l, b)) = a.product(t[0], tau) {
                        add(b, (ri, tau), l);
                    }
                }
                // (-1)^j f(..., σ_j σ_{j+1}, ...)
                for j in 1..=n {
                    if let Some((l, b)) = a.product(t[j - 1], t[j]) {
                        let mut f = t[..j - 1].to_vec();
                        f.push(b);
                        f.extend_from_slice(&t[j + 1..]);
                        let fi = tuple_index[n][&f];
                        let c = if j % 2 == 0 { l } else { field.neg(&l) };
                        for &tau in a.pair_basis(x0, xe) {
                            add(tau, (fi, tau), c.clone());
                        }
                    }
                }
                // (-1)^{n+1} f(σ_1, ..., σ_n) σ_{n+1}
                let front: Vec<usize> = if n == 0 { vec![x0] } else { t[..n].to_vec() };
                let fi = tuple_index[n][&front];
                for &tau in a.pair_basis(x0, a.element(t[n]).source) {
                    if let Some((l, b)) = a.product(tau, t[n]) {
                        let c = if (n + 1) % 2 == 0 { l } else { field.neg(&l) };
                        add(b, (fi, tau), c);
                    }
                }
            }
        }
        coboundaries.push(m.normalized(&field));
    }
    HochschildComplex {
        field,
        tuples,
        tuple_index,
        basis,
        basis_index,
        coboundaries,
    }
}

/// `(f ⌣ g)(σ_1, ..., σ_{p+q}) = f(σ_1, ..., σ_p) · g(σ_{p+1}, ..., σ_{p+q})`.
pub fn hochschild_cup(a: &SemiNormedAlgebra, hc: &HochschildComplex, p: usize, f: &[Scalar], q: usize, g: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(f.len(), hc.cochain_dim(p), "f is not a {p}-cochain");
    assert_eq!(g.len(), hc.cochain_dim(q), "g is not a {q}-cochain");
    let field = hc.field;
    let n = p + q;
    let mut out = vec![Scalar::zero(); hc.cochain_dim(n)];
    for (ti, t) in hc.tuples(n).iter().enumerate() {
        let front: Vec<usize> = if p == 0 { vec![vertex_of(a, n, t, true)] } else { t[..p].to_vec() };
        let back: Vec<usize> = if q == 0 { vec![vertex_of(a, n, t, false)] } else { t[p..].to_vec() };
        let (fi, gi) = (hc.tuple_index[p][&front], hc.tuple_index[q][&back]);
        let fv: Vec<(usize, &Scalar)> = hc.basis[p]
            .iter()
            .enumerate()
            .filter(|(_, (tt, _))| *tt == fi)
            .map(|(k, (_, tau))| (*tau, &f[k]))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if fv.is_empty() {
            continue;
        }
        let gv: Vec<(usize, &Scalar)> = hc.basis[q]
            .iter()
            .enumerate()
            .filter(|(_, (tt, _))| *tt == gi)
            .map(|(k, (_, tau))| (*tau, &g[k]))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (s, cf) in &fv {
            for (u, cg) in &gv {
                if let Some((l, b)) = a.product(*s, *u) {
                    let k = hc.basis_index[n][&(ti, b)];
                    out[k] = field.add(&out[k], &field.mul(&field.mul(cf, cg), &l));
                }
            }
        }
    }
    out
}
