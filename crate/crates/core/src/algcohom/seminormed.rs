//! Semi-normed bases: a vertex-graded basis of `A` containing the
//! idempotents and the arrows and closed under products up to scalars.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{format_scalar, Field, Scalar};
use crate::homotopy::PathClassTable;
use crate::linalg::{rank, scale, SparseVec};
use crate::paths::PathTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    /// `p(v)`: the element is `scale · p(v)` in `A`.
    pub path: usize,
    pub scale: Scalar,
    pub identity: bool,
    coords: SparseVec,
}

#[derive(Debug, Clone)]
pub struct SemiNormedAlgebra {
    field: Field,
    basis: Vec<BasisElement>,
    by_pair: BTreeMap<(usize, usize), Vec<usize>>,
    identities: Vec<usize>,
    /// `σσ' = λ · b(σ, σ')`, `None` when the product is zero.
    products: HashMap<(usize, usize), Option<(Scalar, usize)>>,
    /// `w̄ = λ · b(w)` for every nonzero table path.
    of_path: Vec<Option<(Scalar, usize)>>,
}

/// `Some(λ)` with `a = λ b`, for a nonzero `b`.
fn proportion(field: &Field, a: &SparseVec, b: &SparseVec) -> Option<Scalar> {
    if a.is_empty() {
        return Some(Scalar::zero());
    }
    if a.len() != b.len() {
        return None;
    }
    let lambda = field.div(&a[0].1, &b[0].1);
    (scale(field, b, &lambda) == *a).then_some(lambda)
}

/// Heuristic: the idempotents and, for every nonzero natural class, the
/// image of its representative; then [`verify_semi_normed_basis`].
pub fn find_semi_normed_basis(pt: &PathTable, natural: &PathClassTable) -> Result<SemiNormedAlgebra> {
    let candidates: Vec<(Scalar, usize)> = natural
        .classes()
        .iter()
        .filter(|c| c.nonzero)
        .map(|c| (Scalar::one(), c.rep))
        .collect();
    verify_semi_normed_basis(pt, &candidates)
}

fn fail(msg: String) -> Error {
    Error::NoSemiNormedBasis(msg)
}

/// Checks that the elements `scale · path` form a semi-normed basis and
/// builds the structure table.
pub fn verify_semi_normed_basis(pt: &PathTable, candidates: &[(Scalar, usize)]) -> Result<SemiNormedAlgebra> {
    let q = pt.quiver();
    if !q.is_acyclic() {
        return Err(Error::TriangularRequired);
    }
    let field = pt.field();
    let spell = |s: &Scalar, p: usize| {
        if s.is_one() {
            pt.spell(p)
        } else {
            format!("{}*{}", format_scalar(s), pt.spell(p))
        }
    };
    let mut basis = Vec::new();
    for (s, p) in candidates {
        let s = field.normalize(s.clone());
        let e = pt.element(*p);
        if s.is_zero() || e.is_zero() {
            return Err(fail(format!("candidate {} is zero in A", spell(&s, *p))));
        }
        basis.push(BasisElement {
            source: e.source,
            target: e.target,
            path: *p,
            identity: pt.path(*p).is_stationary(),
            coords: scale(&field, &e.coords, &s),
            scale: s,
        });
    }
    let mut identities = Vec::new();
    for x in 0..q.vertex_count() {
        let e = pt.stationary_id(x);
        match basis.iter().position(|b| b.path == e && b.scale.is_one()) {
            Some(i) => identities.push(i),
            None => {
                basis.push(BasisElement {
                    source: x,
                    target: x,
                    path: e,
                    scale: Scalar::one(),
                    identity: true,
                    coords: pt.element(e).coords,
                });
                identities.push(basis.len() - 1);
            }
        }
    }
    for a in 0..q.arrow_count() {
        let id = pt.arrow_id(a);
        if !basis.iter().any(|b| b.path == id && b.scale.is_one()) {
            return Err(fail(format!("arrow {} is not a basis element", q.arrow_name(a))));
        }
    }
    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, b) in basis.iter().enumerate() {
        by_pair.entry((b.source, b.target)).or_default().push(i);
    }
    for ((x, y), pair) in pt.pairs() {
        let members = by_pair.get(&(*x, *y)).map_or(&[][..], Vec::as_slice);
        let (xn, yn) = (q.vertex_name(*x), q.vertex_name(*y));
        if members.len() != pair.dim() {
            return Err(fail(format!(
                "{} candidate(s) for e_{xn} A e_{yn} of dimension {}",
                members.len(),
                pair.dim()
            )));
        }
        let rows: Vec<SparseVec> = members.iter().map(|i| basis[*i].coords.clone()).collect();
        if rank(&field, &rows) != rows.len() {
            return Err(fail(format!("candidates in e_{xn} A e_{yn} are linearly dependent")));
        }
    }
    let mut products = HashMap::new();
    for (i, a) in basis.iter().enumerate() {
        for (&(_, z), right) in by_pair.range((a.target, 0)..(a.target + 1, 0)) {
            for &j in right {
                let b = &basis[j];
                let prod = pt
                    .mul(
                        &pt.element_from_coords(a.source, a.target, &a.coords),
                        &pt.element_from_coords(b.source, b.target, &b.coords),
                    )
                    .unwrap();
                let value = if prod.is_zero() {
                    None
                } else {
                    let hit = by_pair
                        .get(&(a.source, z))
                        .into_iter()
                        .flatten()
                        .find_map(|k| proportion(&field, &prod.coords, &basis[*k].coords).map(|l| (l, *k)));
                    match hit {
                        Some(h) => Some(h),
                        None => {
                            return Err(fail(format!(
                                "product {} · {} is not a multiple of a basis element",
                                spell(&a.scale, a.path),
                                spell(&b.scale, b.path)
                            )))
                        }
                    }
                };
                products.insert((i, j), value);
            }
        }
    }
    let mut of_path = Vec::with_capacity(pt.path_count());
    for (id, p) in pt.paths().iter().enumerate() {
        if pt.is_zero_path(id) {
            of_path.push(None);
            continue;
        }
        let e = pt.element(id);
        let hit = by_pair
            .get(&(p.source, p.target))
            .into_iter()
            .flatten()
            .find_map(|k| proportion(&field, &e.coords, &basis[*k].coords).map(|l| (l, *k)));
        match hit {
            Some(h) => of_path.push(Some(h)),
            None => return Err(fail(format!("path {} is not a multiple of a basis element", pt.spell(id)))),
        }
    }
    Ok(SemiNormedAlgebra {
        field,
        basis,
        by_pair,
        identities,
        products,
        of_path,
    })
}

impl SemiNormedAlgebra {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn pair_basis(&self, x: usize, y: usize) -> &[usize] {
        self.by_pair.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    /// Basis elements with source `x`.
    pub fn from_vertex(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.by_pair.range((x, 0)..(x + 1, 0)).flat_map(|(_, v)| v.iter().copied())
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    /// Non-identity elements in basis order.
    pub fn radical(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.basis.len()).filter(|i| !self.basis[*i].identity)
    }

    /// `σσ' = λ · b(σ, σ')`; `None` when zero. Panics unless composable.
    pub fn product(&self, a: usize, b: usize) -> Option<(Scalar, usize)> {
        self.products[&(a, b)].clone()
    }

    /// Product of a tuple: `Some((Λ, b))` with `σ_1 ⋯ σ_n = Λ · b`.
    pub fn tuple_product(&self, t: &[usize]) -> Option<(Scalar, usize)> {
        let mut acc = (Scalar::one(), t[0]);
        for &s in &t[1..] {
            let (l, b) = self.product(acc.1, s)?;
            acc = (self.field.mul(&acc.0, &l), b);
        }
        Some(acc)
    }

    /// `b(w)` with `w̄ = λ · b(w)` for a nonzero path `w`.
    pub fn of_path(&self, w: usize) -> Option<(Scalar, usize)> {
        self.of_path[w].clone()
    }

    pub fn spell(&self, pt: &PathTable, i: usize) -> String {
        let b = &self.basis[i];
        if b.scale.is_one() {
            pt.spell(b.path)
        } else {
            format!("{}*{}", format_scalar(&b.scale), pt.spell(b.path))
        }
    }
}
