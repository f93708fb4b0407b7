//! The chain maps `φ: SC_•(A) → C_•(ℬ)`, `ψ: C_•(ℬ) → SC_•(A)` and
//! `φ♯: SC_•(A) → C_•(ℬ♯)`.
//!
//! `φ(σ_1, ..., σ_n) = (p(σ_1)~, ..., p(σ_n)~)` with classes taken in the
//! natural (resp. walk) table, and `ψ(σ̃_1, ..., σ̃_n) = (b(σ_1), ..., b(σ_n))`
//! evaluated on the stored witness factorisation.

use serde::Serialize;

use super::seminormed::SemiNormedAlgebra;
use super::simplicial::SimplicialComplexSC;
use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::homotopy::PathClassTable;
use crate::linalg::IntMatrix;
use crate::snf::smith_invariants;

#[derive(Debug, Clone)]
pub struct ComparisonMaps {
    pub phi: Vec<IntMatrix>,
    pub psi: Vec<IntMatrix>,
    pub phi_sharp: Vec<IntMatrix>,
    pub report: ComparisonReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub phi_chain_map: bool,
    pub psi_chain_map: bool,
    pub phi_psi_identity: bool,
    pub psi_phi_identity: bool,
    pub phi_sharp_chain_map: bool,
    pub phi_sharp_surjective: bool,
    /// `rk ker φ♯_n` per degree.
    pub kernel_ranks: Vec<usize>,
}

/// `φ_n` (or `φ♯_n`) with rows the cells and columns the tuples.
fn phi_matrix(a: &SemiNormedAlgebra, sc: &SimplicialComplexSC, classes: &PathClassTable, cx: &CellComplex, n: usize) -> Result<IntMatrix> {
    let mut m = IntMatrix::zeros(cx.count(n), sc.count(n));
    if n == 0 {
        for x in 0..sc.count(0) {
            m.add_entry(x, x, 1);
        }
        return Ok(m);
    }
    for (j, t) in sc.tuples(n).iter().enumerate() {
        let cls: Vec<usize> = t.iter().map(|s| classes.class_of(a.element(*s).path)).collect();
        let i = cx
            .find(&cls)
            .ok_or_else(|| Error::NoSemiNormedBasis("a tuple with nonzero product has no cell".into()))?;
        m.add_entry(i, j, 1);
    }
    Ok(m)
}

fn psi_matrix(a: &SemiNormedAlgebra, sc: &SimplicialComplexSC, cx: &CellComplex, n: usize) -> Result<IntMatrix> {
    let mut m = IntMatrix::zeros(sc.count(n), cx.count(n));
    if n == 0 {
        for x in 0..cx.count(0) {
            m.add_entry(x, x, 1);
        }
        return Ok(m);
    }
    for (j, c) in cx.cells(n).iter().enumerate() {
        let t: Vec<usize> = c
            .parts
            .iter()
            .map(|w| a.of_path(*w).map(|(_, b)| b))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::NoSemiNormedBasis("a cell factor is zero".into()))?;
        let i = sc
            .find(&t)
            .ok_or_else(|| Error::NoSemiNormedBasis("a cell has no simplicial tuple".into()))?;
        m.add_entry(i, j, 1);
    }
    Ok(m)
}

/// `δ_n f_n = f_{n-1} d_n` for all `n`.
fn is_chain_map(f: &[IntMatrix], source: &dyn Fn(usize) -> IntMatrix, target: &dyn Fn(usize) -> IntMatrix) -> bool {
    (1..f.len()).all(|n| target(n).mul(&f[n]) == f[n - 1].mul(&source(n)))
}

pub fn phi_psi_maps(
    a: &SemiNormedAlgebra,
    sc: &SimplicialComplexSC,
    natural: &PathClassTable,
    cx: &CellComplex,
    walk: &PathClassTable,
    cx_sharp: &CellComplex,
) -> Result<ComparisonMaps> {
    let top = sc.dim().max(cx.dim()).max(cx_sharp.dim());
    let mut phi = Vec::new();
    let mut psi = Vec::new();
    let mut phi_sharp = Vec::new();
    for n in 0..=top {
        phi.push(phi_matrix(a, sc, natural, cx, n)?);
        psi.push(psi_matrix(a, sc, cx, n)?);
        phi_sharp.push(phi_matrix(a, sc, walk, cx_sharp, n)?);
    }
    let scb = |n: usize| sc.boundary(n);
    let cxb = |n: usize| cx.boundary(n);
    let shb = |n: usize| cx_sharp.boundary(n);
    let identity = |m: &IntMatrix| m.nrows() == m.ncols() && *m == IntMatrix::identity(m.nrows());
    let mut kernel_ranks = Vec::new();
    let mut surjective = true;
    for (n, m) in phi_sharp.iter().enumerate() {
        let r = smith_invariants(m).rank;
        kernel_ranks.push(sc.count(n) - r);
        surjective &= (0..cx_sharp.count(n)).all(|i| !m.row(i).is_empty());
    }
    let report = ComparisonReport {
        phi_chain_map: is_chain_map(&phi, &scb, &cxb),
        psi_chain_map: is_chain_map(&psi, &cxb, &scb),
        phi_psi_identity: phi.iter().zip(&psi).all(|(f, g)| identity(&f.mul(g))),
        psi_phi_identity: phi.iter().zip(&psi).all(|(f, g)| identity(&g.mul(f))),
        phi_sharp_chain_map: is_chain_map(&phi_sharp, &scb, &shb),
        phi_sharp_surjective: surjective,
        kernel_ranks,
    };
    Ok(ComparisonMaps {
        phi,
        psi,
        phi_sharp,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcohom::{find_semi_normed_basis, simplicial_complex};
    use crate::complex::{build_complex, homology, Coefficient};
    use crate::dsl::parse_quiver;
    use crate::homotopy::{
        default_depth_bound, minimal_relation_supports, natural_homotopy_classes, walk_homotopy_classes, DEFAULT_STATE_BUDGET,
    };
    use crate::paths::{PathTable, DEFAULT_PATH_CAP};

    fn compare(src: &str) -> (SimplicialComplexSC, CellComplex, ComparisonReport) {
        let pt = PathTable::build(&parse_quiver(src).unwrap(), DEFAULT_PATH_CAP).unwrap();
        let mrs = minimal_relation_supports(&pt, 12).unwrap().relations;
        let nat = natural_homotopy_classes(&pt, &mrs);
        let walk = walk_homotopy_classes(&pt, &mrs, &nat, default_depth_bound(&pt), DEFAULT_STATE_BUDGET);
        let a = find_semi_normed_basis(&pt, &nat).unwrap();
        let sc = simplicial_complex(&a);
        let cx = build_complex(&pt, &nat, None);
        let cs = build_complex(&pt, &walk, None);
        let maps = phi_psi_maps(&a, &sc, &nat, &cx, &walk, &cs).unwrap();
        (sc, cx, maps.report)
    }

    #[test]
    fn ker_corpus() {
        let (sc, cx, r) = compare(
            "arrow al1 6 5\narrow al2 6 5\narrow be1 4 2\narrow be2 5 2\narrow be3 5 3\narrow ga1 2 1\narrow ga2 2 1\n\
             rel al1*be3 - al2*be3\nrel be1*ga1 - be1*ga2\n",
        );
        assert_eq!(r.kernel_ranks, vec![0, 7, 10, 3]);
        assert!(r.phi_chain_map && r.psi_chain_map && r.phi_psi_identity && r.psi_phi_identity);
        assert!(r.phi_sharp_chain_map && r.phi_sharp_surjective);
        assert_eq!(sc.homology(Coefficient::Z), homology(&cx, Coefficient::Z));
    }

    #[test]
    fn pres1_sh_equals_cellular() {
        let (sc, cx, r) = compare("arrow b 3 2\narrow g 3 2\narrow a 2 1\nrel b*a\n");
        assert!(r.phi_psi_identity && r.psi_phi_identity);
        assert_eq!(sc.homology(Coefficient::Z), homology(&cx, Coefficient::Z));
    }

    #[test]
    fn schurian_has_trivial_kernel() {
        let (_, _, r) = compare("arrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\nrel a*b - c*d\n");
        assert!(r.kernel_ranks.iter().all(|k| *k == 0));
    }
}
