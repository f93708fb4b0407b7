//! The maps `ε: SC^•(A, k⁺) → C^•(A)` and `μ: C^•(A) → SC^•(A, k⁺)`.
//!
//! `ε_n(f)(σ_1 ⊗ ... ⊗ σ_n) = f(σ_1, ..., σ_n) σ_1 ⋯ σ_n`, and `μ_n(g)` takes
//! the coefficient `λ` in `g(σ_1 ⊗ ... ⊗ σ_n) = λ σ_1 ⋯ σ_n + a'`, with `a'`
//! in the span of the basis elements other than `b(σ_1 ⋯ σ_n)`.

use serde::Serialize;

use super::hochschild::HochschildComplex;
use super::seminormed::SemiNormedAlgebra;
use super::simplicial::SimplicialComplexSC;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel, rank, Matrix, SparseVec};
use crate::paths::PathTable;
use crate::properties::algebra_properties;

#[derive(Debug, Clone)]
pub struct EpsilonMu {
    pub epsilon: Vec<Matrix>,
    pub mu: Vec<Matrix>,
    pub report: EpsilonMuReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonMuReport {
    #[serde(rename = "SH")]
    pub sh: Vec<usize>,
    #[serde(rename = "HH")]
    pub hh: Vec<usize>,
    pub schurian: bool,
    pub semi_commutative: bool,
    pub mu_epsilon_identity: bool,
    pub epsilon_chain_map: bool,
    pub mu_chain_map: bool,
    pub epsilon_mu_identity: bool,
    /// `H^n(ε)` injective, per degree.
    pub epsilon_injective: Vec<bool>,
    /// `H^n(ε)` surjective, per degree.
    pub epsilon_surjective: Vec<bool>,
    pub epsilon_iso: bool,
}

/// `d^n = d_{n+1}ᵀ` over `field`, rows `SC^{n+1}`.
fn sc_coboundary(sc: &SimplicialComplexSC, field: &Field, n: usize) -> Matrix {
    sc.boundary(n + 1).transpose().to_scalar(field)
}

fn epsilon_matrix(a: &SemiNormedAlgebra, sc: &SimplicialComplexSC, hc: &HochschildComplex, n: usize) -> Matrix {
    let mut m = Matrix::zeros(hc.cochain_dim(n), sc.count(n));
    if n == 0 {
        for x in 0..sc.count(0) {
            m.add_entry(hc.basis_id(0, x, a.identity(x)).unwrap(), x, crate::field::int(1));
        }
        return m;
    }
    for (j, t) in sc.tuples(n).iter().enumerate() {
        let (lam, b) = sc.product(n, j);
        let ti = hc.tuple_id(n, t).expect("simplicial tuples are composable");
        m.add_entry(hc.basis_id(n, ti, *b).unwrap(), j, lam.clone());
    }
    m
}

fn mu_matrix(a: &SemiNormedAlgebra, sc: &SimplicialComplexSC, hc: &HochschildComplex, n: usize) -> Matrix {
    let field = hc.field();
    let mut m = Matrix::zeros(sc.count(n), hc.cochain_dim(n));
    if n == 0 {
        for x in 0..sc.count(0) {
            m.add_entry(x, hc.basis_id(0, x, a.identity(x)).unwrap(), crate::field::int(1));
        }
        return m;
    }
    for (j, t) in sc.tuples(n).iter().enumerate() {
        let (lam, b) = sc.product(n, j);
        let ti = hc.tuple_id(n, t).unwrap();
        m.add_entry(j, hc.basis_id(n, ti, *b).unwrap(), field.inv(lam));
    }
    m
}

fn is_identity(m: &Matrix) -> bool {
    m.nrows() == m.ncols() && *m == Matrix::identity(m.nrows())
}

/// Rank of `H^n(ε)`: `rk[ε Z^n_SC | B^n_HH] - rk B^n_HH`.
fn induced_rank(field: &Field, eps: &Matrix, sc_cocycles: &[SparseVec], hh_boundaries: &[SparseVec]) -> usize {
    let mut cols: Vec<SparseVec> = hh_boundaries.to_vec();
    let base = rank(field, &cols);
    cols.extend(sc_cocycles.iter().map(|z| eps.apply(field, z)));
    rank(field, &cols) - base
}

pub fn epsilon_mu(pt: &PathTable, a: &SemiNormedAlgebra, sc: &SimplicialComplexSC, hc: &HochschildComplex) -> Result<EpsilonMu> {
    let field = a.field();
    if hc.field() != field {
        return Err(Error::FieldMismatch(format!(
            "algebra over {} but Hochschild complex over {}",
            field.label(),
            hc.field().label()
        )));
    }
    let props = algebra_properties(pt);
    let top = sc.dim().max(hc.dim());
    let epsilon: Vec<Matrix> = (0..=top + 1).map(|n| epsilon_matrix(a, sc, hc, n)).collect();
    let mu: Vec<Matrix> = (0..=top + 1).map(|n| mu_matrix(a, sc, hc, n)).collect();
    let d: Vec<Matrix> = (0..=top).map(|n| sc_coboundary(sc, &field, n)).collect();
    let b: Vec<Matrix> = (0..=top).map(|n| hc.coboundary(n)).collect();
    let mu_epsilon_identity = (0..=top).all(|n| is_identity(&mu[n].mul_in(&field, &epsilon[n])));
    let epsilon_mu_identity = (0..=top).all(|n| is_identity(&epsilon[n].mul_in(&field, &mu[n])));
    let epsilon_chain_map = (0..=top).all(|n| b[n].mul_in(&field, &epsilon[n]) == epsilon[n + 1].mul_in(&field, &d[n]));
    let mu_chain_map = (0..=top).all(|n| mu[n + 1].mul_in(&field, &b[n]) == d[n].mul_in(&field, &mu[n]));
    let coeff = crate::complex::Coefficient::from(field);
    let mut sh = sc.cohomology(coeff).ranks();
    let mut hh = hc.hh_dims();
    sh.resize(top + 1, 0);
    hh.resize(top + 1, 0);
    let mut epsilon_injective = Vec::new();
    let mut epsilon_surjective = Vec::new();
    for n in 0..=top {
        let z = kernel(&field, &d[n].sparse_cols());
        let bounds = if n == 0 { Vec::new() } else { b[n - 1].sparse_cols() };
        let r = induced_rank(&field, &epsilon[n], &z, &bounds);
        epsilon_injective.push(r == sh[n]);
        epsilon_surjective.push(r == hh[n]);
    }
    let epsilon_iso = epsilon_injective.iter().chain(&epsilon_surjective).all(|x| *x);
    Ok(EpsilonMu {
        epsilon,
        mu,
        report: EpsilonMuReport {
            sh,
            hh,
            schurian: props.schurian,
            semi_commutative: props.semi_commutative,
            mu_epsilon_identity,
            epsilon_chain_map,
            mu_chain_map,
            epsilon_mu_identity,
            epsilon_injective,
            epsilon_surjective,
            epsilon_iso,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcohom::{find_semi_normed_basis, hochschild_complex, hochschild_cup, simplicial_complex};
    use crate::dsl::parse_quiver;
    use crate::field::{int, Scalar};
    use crate::homotopy::{minimal_relation_supports, natural_homotopy_classes};
    use crate::linalg::{sparse_from_dense, sparse_to_dense};
    use crate::paths::DEFAULT_PATH_CAP;

    fn run(src: &str) -> (SemiNormedAlgebra, SimplicialComplexSC, HochschildComplex, EpsilonMu) {
        let pt = PathTable::build(&parse_quiver(src).unwrap(), DEFAULT_PATH_CAP).unwrap();
        let mrs = minimal_relation_supports(&pt, 12).unwrap().relations;
        let nat = natural_homotopy_classes(&pt, &mrs);
        let a = find_semi_normed_basis(&pt, &nat).unwrap();
        let sc = simplicial_complex(&a);
        let hc = hochschild_complex(&a);
        let em = epsilon_mu(&pt, &a, &sc, &hc).unwrap();
        (a, sc, hc, em)
    }

    #[test]
    fn hh_gap() {
        let (_, _, _, em) = run("arrow al 1 2\narrow be 2 3\narrow ga 1 3\nrel al*be\n");
        let r = em.report;
        assert_eq!(r.sh[..3], [1, 1, 0]);
        assert_eq!(r.hh[..3], [1, 1, 1]);
        assert!(r.schurian && !r.semi_commutative);
        assert!(r.mu_epsilon_identity && r.epsilon_chain_map && r.mu_chain_map);
        assert!(!r.epsilon_surjective[2]);
        assert!(!r.epsilon_iso);
    }

    #[test]
    fn hh_eq() {
        let (_, _, _, em) =
            run("arrow a1 6 4\narrow a2 4 3\narrow a3 3 2\narrow a4 2 1\narrow b1 6 5\narrow b2 5 1\nrel a1*a2\nrel a3*a4\n");
        let r = em.report;
        assert_eq!(r.sh[..2], [1, 1]);
        assert!(r.sh[2..].iter().all(|x| *x == 0));
        assert_eq!(r.hh, r.sh);
        assert!(r.epsilon_iso);
    }

    #[test]
    fn incidence_algebra_is_iso() {
        let (_, _, _, em) = run("arrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrel a*b - c*d\n");
        let r = em.report;
        assert!(r.semi_commutative && r.schurian);
        assert!(r.epsilon_mu_identity && r.epsilon_iso);
    }

    #[test]
    fn epsilon_preserves_cups() {
        let (a, sc, hc, em) = run("arrow al 1 2\narrow be 2 3\narrow ga 1 3\narrow de 3 4\nrel al*be\n");
        let field = a.field();
        for p in 0..=2 {
            for q in 0..=(2 - p) {
                let f: Vec<Scalar> = (0..sc.count(p)).map(|i| int((i as i64 * 7 + 3) % 5 - 2)).collect();
                let g: Vec<Scalar> = (0..sc.count(q)).map(|i| int((i as i64 * 3 + 1) % 4 - 1)).collect();
                let lhs = em.epsilon[p + q].apply(&field, &sparse_from_dense(&field, &sc.cup(&a, &field, p, &f, q, &g)));
                let ef = sparse_to_dense(&em.epsilon[p].apply(&field, &sparse_from_dense(&field, &f)), hc.cochain_dim(p));
                let eg = sparse_to_dense(&em.epsilon[q].apply(&field, &sparse_from_dense(&field, &g)), hc.cochain_dim(q));
                let rhs = sparse_from_dense(&field, &hochschild_cup(&a, &hc, p, &ef, q, &eg));
                assert_eq!(lhs, rhs, "p={p} q={q}");
            }
        }
    }
}
