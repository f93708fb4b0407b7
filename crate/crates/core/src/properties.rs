//! Algebraic properties of `A = kQ/I`.

use serde::Serialize;

use crate::paths::PathTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraProperties {
    pub admissible: bool,
    pub connected: bool,
    pub triangular: bool,
    pub almost_triangular: bool,
    pub schurian: bool,
    pub semi_commutative: bool,
    pub constricted: bool,
    /// `I` is spanned by the paths it contains.
    pub monomial: bool,
    /// `dims[x][y] = dim e_x A e_y`.
    pub dims: Vec<Vec<usize>>,
    pub bound: usize,
    pub nilpotency_index: usize,
    pub euler_characteristic: i64,
}

pub fn algebra_properties(pt: &PathTable) -> AlgebraProperties {
    let q = pt.quiver();
    let n = q.vertex_count();
    let dims: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| pt.dim(x, y)).collect()).collect();
    let rad = |x: usize, y: usize| dims[x][y] - usize::from(x == y);
    let almost_triangular = (0..n).all(|x| (0..n).all(|y| rad(x, y) == 0 || rad(y, x) == 0));
    let schurian = dims.iter().flatten().all(|d| *d <= 1);
    let semi_commutative = pt.pairs().all(|(_, pair)| {
        let zeros = pair.paths.iter().filter(|id| pt.is_zero_path(**id)).count();
        zeros == 0 || zeros == pair.paths.len()
    });
    let constricted = q.arrows().iter().all(|a| dims[a.source][a.target] == 1);
    let monomial = pt.pairs().all(|(_, pair)| {
        let zeros = pair.paths.iter().filter(|id| pt.is_zero_path(**id)).count();
        zeros == pair.rank()
    });
    AlgebraProperties {
        admissible: true,
        connected: q.is_connected(),
        triangular: q.is_acyclic(),
        almost_triangular,
        schurian,
        semi_commutative,
        constricted,
        monomial,
        dims,
        bound: pt.bound(),
        nilpotency_index: pt.nilpotency_index(),
        euler_characteristic: q.euler_characteristic(),
    }
}
