//! Path enumeration and exact ideal membership.
//!
//! For every ordered vertex pair `(x, y)` the table lists the paths `x ⇝ y`
//! up to the nilpotency bound and keeps an echelon basis of `I(x, y)` in
//! path coordinates. Acyclic quivers take the bound `1 + longest path`.
//! With oriented cycles the bound is found by growing exact finite spans of
//! `{u·g·v}` until some length `L` has all of its paths inside; from then on
//! `F^L ⊆ I` and `I` below length `L` is spanned by truncated products.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{axpy, Echelon, SparseVec};
use crate::quiver::{BoundQuiver, Path, RelVector};

pub const DEFAULT_PATH_CAP: usize = 32;

/// Hard limit on enumerated paths while searching for the bound.
const PATH_LIMIT: usize = 2_000_000;

#[derive(Debug, Clone)]
pub struct PairIdeal {
    /// Global path ids `x ⇝ y`, in path order.
    pub paths: Vec<usize>,
    ideal: Echelon,
}

impl PairIdeal {
    pub fn rank(&self) -> usize {
        self.ideal.rank()
    }

    pub fn dim(&self) -> usize {
        self.paths.len() - self.ideal.rank()
    }

    pub fn ideal(&self) -> &Echelon {
        &self.ideal
    }

    /// Local indices of the paths forming the normal-form basis of `A(x, y)`.
    pub fn quotient_basis(&self) -> Vec<usize> {
        (0..self.paths.len()).filter(|i| !self.ideal.is_pivot(*i)).collect()
    }
}

/// An element of `e_x A e_y` in reduced local coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub source: usize,
    pub target: usize,
    pub coords: SparseVec,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct PathTable {
    quiver: BoundQuiver,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    local: Vec<usize>,
    zero: Vec<bool>,
    pairs: BTreeMap<(usize, usize), PairIdeal>,
    bound: usize,
    nilpotency_index: usize,
}

impl PathTable {
    /// Enumerates paths and computes `I(x, y)` for every vertex pair.
    pub fn build(quiver: &BoundQuiver, cap: usize) -> Result<PathTable> {
        for r in quiver.relations() {
            if let Some((p, _)) = r.terms.iter().find(|(p, _)| p.len() < 2) {
                return Err(Error::MalformedRelation(format!(
                    "path `{}` has length {} < 2",
                    quiver.spell(p),
                    p.len()
                )));
            }
        }
        if quiver.is_acyclic() {
            let longest = longest_path(quiver);
            let paths = enumerate(quiver, longest)?;
            let pairs = span_products(quiver, &paths, None);
            let mut table = PathTable::assemble(quiver, paths, pairs, longest + 1, true);
            table.nilpotency_index = (1..=longest + 1).find(|&l| table.all_of_length_in_ideal(l)).unwrap_or(longest + 1);
            return Ok(table);
        }
        let mut certified = None;
        for n in 2..=cap {
            let paths = enumerate(quiver, n)?;
            let pairs = span_products(quiver, &paths, None);
            let probe = PathTable::assemble(quiver, paths, pairs, n, false);
            if let Some(l) = (1..=n).find(|&l| probe.all_of_length_in_ideal(l)) {
                certified = Some(l);
                break;
            }
        }
        let Some(l0) = certified else {
            return Err(Error::Admissibility { cap });
        };
        let exact = PathTable::truncated(quiver, l0)?;
        let m = (1..=l0).find(|&l| exact.all_of_length_in_ideal(l)).expect("certified length");
        let mut table = if m == l0 { exact } else { PathTable::truncated(quiver, m)? };
        table.nilpotency_index = m;
        Ok(table)
    }

    /// Table for a quiver known to satisfy `F^l ⊆ I`.
    fn truncated(quiver: &BoundQuiver, l: usize) -> Result<PathTable> {
        let paths = enumerate(quiver, l)?;
        let pairs = span_products(quiver, &paths, Some(l));
        Ok(PathTable::assemble(quiver, paths, pairs, l, true))
    }

    fn assemble(
        quiver: &BoundQuiver,
        paths: Vec<Path>,
        mut pairs: BTreeMap<(usize, usize), PairIdeal>,
        bound: usize,
        bound_in_ideal: bool,
    ) -> PathTable {
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut local = vec![0; paths.len()];
        for pair in pairs.values() {
            for (k, &g) in pair.paths.iter().enumerate() {
                local[g] = k;
            }
        }
        for (i, p) in paths.iter().enumerate() {
            if bound_in_ideal && p.len() >= bound {
                let pair = pairs.get_mut(&(p.source, p.target)).unwrap();
                pair.ideal.insert(&vec![(local[i], Scalar::one())]);
            }
        }
        let zero = paths
            .iter()
            .enumerate()
            .map(|(i, p)| pairs[&(p.source, p.target)].ideal.contains(&vec![(local[i], Scalar::one())]))
            .collect();
        PathTable {
            quiver: quiver.clone(),
            paths,
            index,
            local,
            zero,
            pairs,
            bound,
            nilpotency_index: bound,
        }
    }

    fn all_of_length_in_ideal(&self, l: usize) -> bool {
        self.paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.len() == l)
            .all(|(i, _)| self.zero[i])
    }

    pub fn quiver(&self) -> &BoundQuiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.quiver.field()
    }

    /// Every path of length `bound()` lies in `I`; the table holds all
    /// paths of length at most `bound()`.
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Least `m` with `F^m ⊆ I`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, id: usize) -> &Path {
        &self.paths[id]
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn path_id(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn stationary_id(&self, x: usize) -> usize {
        self.index[&Path::stationary(x)]
    }

    pub fn arrow_id(&self, a: usize) -> usize {
        self.index[&self.quiver.arrow_path(a)]
    }

    pub fn path_id_by_names(&self, names: &[&str]) -> Result<usize> {
        let p = self.quiver.path_from_names(names)?;
        self.path_id(&p)
            .ok_or_else(|| Error::MalformedRelation(format!("path `{}` exceeds the bound", names.join("*"))))
    }

    pub fn spell(&self, id: usize) -> String {
        self.quiver.spell(&self.paths[id])
    }

    /// Position of a path within its vertex pair.
    pub fn local_index(&self, id: usize) -> usize {
        self.local[id]
    }

    /// Whether the path lies in `I`.
    pub fn is_zero_path(&self, id: usize) -> bool {
        self.zero[id]
    }

    pub fn pair(&self, x: usize, y: usize) -> Option<&PairIdeal> {
        self.pairs.get(&(x, y))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &PairIdeal)> {
        self.pairs.iter()
    }

    pub fn paths_between(&self, x: usize, y: usize) -> &[usize] {
        self.pairs.get(&(x, y)).map_or(&[], |p| &p.paths)
    }

    /// `dim e_x A e_y`.
    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.pairs.get(&(x, y)).map_or(0, PairIdeal::dim)
    }

    /// Composite path id, or `None` when the composite is longer than the
    /// bound (and therefore in `I`). Panics if the paths do not compose.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        let p = self.paths[a].concat(&self.paths[b]).expect("paths do not compose");
        self.index.get(&p).copied()
    }

    /// Whether `path · other` composes.
    pub fn composable(&self, a: usize, b: usize) -> bool {
        self.paths[a].target == self.paths[b].source
    }

    /// Local coordinates of a relation vector; terms past the bound vanish.
    pub fn rel_coords(&self, v: &RelVector) -> SparseVec {
        let field = self.field();
        let mut out: SparseVec = Vec::new();
        for (p, c) in &v.terms {
            assert!(p.source == v.source && p.target == v.target, "relation term is not parallel");
            if let Some(&id) = self.index.get(p) {
                out = axpy(&field, &out, &field.normalize(c.clone()), &vec![(self.local[id], Scalar::one())]);
            }
        }
        out
    }

    /// Exact membership in `I(x, y)`.
    pub fn ideal_membership(&self, v: &RelVector) -> bool {
        let coords = self.rel_coords(v);
        if coords.is_empty() {
            return true;
        }
        self.pairs[&(v.source, v.target)].ideal.contains(&coords)
    }

    /// Membership of a local coordinate vector in `I(x, y)`.
    pub fn contains_coords(&self, x: usize, y: usize, coords: &SparseVec) -> bool {
        coords.is_empty() || self.pairs.get(&(x, y)).is_some_and(|p| p.ideal.contains(coords))
    }

    pub fn reduce(&self, x: usize, y: usize, coords: &SparseVec) -> SparseVec {
        match self.pairs.get(&(x, y)) {
            Some(p) => p.ideal.reduce(coords),
            None => Vec::new(),
        }
    }

    /// Image of a path in `A`.
    pub fn element(&self, id: usize) -> Element {
        let p = &self.paths[id];
        Element {
            source: p.source,
            target: p.target,
            coords: self.reduce(p.source, p.target, &vec![(self.local[id], Scalar::one())]),
        }
    }

    pub fn element_from_coords(&self, x: usize, y: usize, coords: &SparseVec) -> Element {
        Element {
            source: x,
            target: y,
            coords: self.reduce(x, y, coords),
        }
    }

    pub fn zero_element(&self, x: usize, y: usize) -> Element {
        Element {
            source: x,
            target: y,
            coords: Vec::new(),
        }
    }

    /// Product in `A`; `None` if the endpoints do not match.
    pub fn mul(&self, a: &Element, b: &Element) -> Option<Element> {
        if a.target != b.source {
            return None;
        }
        let field = self.field();
        let (x, y, z) = (a.source, a.target, b.target);
        let left = &self.pairs[&(x, y)].paths;
        let right = &self.pairs[&(y, z)].paths;
        let mut out: SparseVec = Vec::new();
        for (i, ca) in &a.coords {
            for (j, cb) in &b.coords {
                if let Some(id) = self.compose(left[*i], right[*j]) {
                    out = axpy(&field, &out, &field.mul(ca, cb), &vec![(self.local[id], Scalar::one())]);
                }
            }
        }
        Some(self.element_from_coords(x, z, &out))
    }

    /// Scalar multiple of a path image: `Some(λ)` when `a = λ · path` in `A`.
    pub fn proportion(&self, a: &Element, id: usize) -> Option<Scalar> {
        let e = self.element(id);
        if e.source != a.source || e.target != a.target {
            return None;
        }
        if e.is_zero() {
            return a.is_zero().then(Scalar::zero);
        }
        let field = self.field();
        let (k, c) = &e.coords[0];
        let lambda = match crate::linalg::sparse_get(&a.coords, *k) {
            Some(v) => field.div(v, c),
            None => Scalar::zero(),
        };
        let check = crate::linalg::scale(&field, &e.coords, &lambda);
        (check == a.coords).then_some(lambda)
    }
}

fn longest_path(q: &BoundQuiver) -> usize {
    let order = q.topological_order().expect("acyclic");
    let mut best = vec![0usize; q.vertex_count()];
    for &x in order.iter().rev() {
        for a in q.out_arrows(x) {
            let t = q.arrows()[a].target;
            best[x] = best[x].max(best[t] + 1);
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// All paths of length at most `max_len`, in path order.
fn enumerate(q: &BoundQuiver, max_len: usize) -> Result<Vec<Path>> {
    let mut all: Vec<Path> = (0..q.vertex_count()).map(Path::stationary).collect();
    let mut frontier: Vec<Path> = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.out_arrows(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path {
                    source: p.source,
                    target: q.arrows()[a].target,
                    arrows,
                });
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        if all.len() > PATH_LIMIT {
            return Err(Error::Admissibility { cap: max_len });
        }
        frontier = next;
    }
    all.sort_by(|a, b| q.path_cmp(a, b));
    Ok(all)
}

/// Echelon bases of `span{u·g·v}` per vertex pair. With `truncate = Some(l)`
/// terms of length `>= l` are dropped; otherwise only products whose terms
/// all fit in the enumerated paths are used.
fn span_products(q: &BoundQuiver, paths: &[Path], truncate: Option<usize>) -> BTreeMap<(usize, usize), PairIdeal> {
    let field = q.field();
    let mut pairs: BTreeMap<(usize, usize), PairIdeal> = BTreeMap::new();
    let mut local = HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        let pair = pairs.entry((p.source, p.target)).or_insert_with(|| PairIdeal {
            paths: Vec::new(),
            ideal: Echelon::new(field),
        });
        local.insert(p.clone(), pair.paths.len());
        pair.paths.push(i);
    }
    let max_len = paths.iter().map(Path::len).max().unwrap_or(0);
    let mut ending: HashMap<usize, Vec<&Path>> = HashMap::new();
    let mut starting: HashMap<usize, Vec<&Path>> = HashMap::new();
    for p in paths {
        ending.entry(p.target).or_default().push(p);
        starting.entry(p.source).or_default().push(p);
    }
    for g in q.relations() {
        let min_g = g.terms.keys().map(Path::len).min().unwrap();
        let max_g = g.terms.keys().map(Path::len).max().unwrap();
        let budget = match truncate {
            Some(l) if min_g < l => l - 1 - min_g,
            Some(_) => continue,
            None if max_g <= max_len => max_len - max_g,
            None => continue,
        };
        for u in ending.get(&g.source).into_iter().flatten() {
            if u.len() > budget {
                continue;
            }
            for v in starting.get(&g.target).into_iter().flatten() {
                if u.len() + v.len() > budget {
                    continue;
                }
                let mut vec: SparseVec = Vec::new();
                for (w, c) in &g.terms {
                    let full = u.concat(w).unwrap().concat(v).unwrap();
                    if truncate.is_some_and(|l| full.len() >= l) {
                        continue;
                    }
                    let k = local[&full];
                    vec = axpy(&field, &vec, c, &vec![(k, Scalar::one())]);
                }
                if !vec.is_empty() {
                    pairs.get_mut(&(u.source, v.target)).unwrap().ideal.insert(&vec);
                }
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    fn quiver(arrows: &[(&str, &str, &str)], rels: &[&[(i64, &[&str])]]) -> BoundQuiver {
        let mut q = BoundQuiver::new(Field::Rational);
        for (a, s, t) in arrows {
            q.ensure_vertex(s).unwrap();
            q.ensure_vertex(t).unwrap();
            q.add_arrow(a, s, t).unwrap();
        }
        for r in rels {
            let terms: Vec<(Scalar, Vec<String>)> = r
                .iter()
                .map(|(c, p)| (int(*c), p.iter().map(|s| s.to_string()).collect()))
                .collect();
            q.add_relation(&terms).unwrap();
        }
        q
    }

    fn rel(pt: &PathTable, terms: &[(i64, &[&str])]) -> RelVector {
        let q = pt.quiver();
        let first = q.path_from_names(terms[0].1).unwrap();
        let mut v = RelVector::zero(first.source, first.target);
        for (c, p) in terms {
            v.add_term(&q.field(), q.path_from_names(p).unwrap(), &int(*c));
        }
        v
    }

    #[test]
    fn ex1_membership() {
        let q = quiver(
            &[("b", "3", "2"), ("g", "3", "2"), ("a", "2", "1")],
            &[&[(1, &["b", "a"]), (-1, &["g", "a"])]],
        );
        let pt = PathTable::build(&q, DEFAULT_PATH_CAP).unwrap();
        let (x3, x1) = (q.vertex_index("3").unwrap(), q.vertex_index("1").unwrap());
        let names: Vec<String> = pt.paths_between(x3, x1).iter().map(|i| pt.spell(*i)).collect();
        assert_eq!(names, ["b*a", "g*a"]);
        assert!(pt.ideal_membership(&rel(&pt, &[(1, &["b", "a"]), (-1, &["g", "a"])])));
        assert!(!pt.ideal_membership(&rel(&pt, &[(1, &["b", "a"])])));
        assert!(pt.ideal_membership(&RelVector::zero(x3, x1)));
        assert_eq!(pt.dim(x3, q.vertex_index("2").unwrap()), 2);
        assert_eq!(pt.bound(), 3);
    }

    #[test]
    fn single_arrow_has_zero_ideal() {
        let q = quiver(&[("a", "1", "2")], &[]);
        let pt = PathTable::build(&q, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(pt.path_count(), 3);
        assert!(pt.pairs().all(|(_, p)| p.rank() == 0));
    }

    #[test]
    fn ex3_membership() {
        let q = quiver(
            &[
                ("al", "6", "5"),
                ("b1", "5", "2"),
                ("b2", "5", "3"),
                ("b3", "5", "4"),
                ("g1", "2", "1"),
                ("g2", "3", "1"),
                ("g3", "4", "1"),
            ],
            &[&[(1, &["al", "b1"])], &[(1, &["b1", "g1"]), (1, &["b2", "g2"]), (1, &["b3", "g3"])]],
        );
        let pt = PathTable::build(&q, DEFAULT_PATH_CAP).unwrap();
        assert!(pt.is_zero_path(pt.path_id_by_names(&["al", "b1"]).unwrap()));
        assert!(!pt.is_zero_path(pt.path_id_by_names(&["al", "b2", "g2"]).unwrap()));
        assert!(!pt.is_zero_path(pt.path_id_by_names(&["b1", "g1"]).unwrap()));
        assert!(pt.is_zero_path(pt.path_id_by_names(&["al", "b1", "g1"]).unwrap()));
    }

    #[test]
    fn loop_with_square_zero() {
        let q = quiver(&[("x", "1", "1")], &[&[(1, &["x", "x"])]]);
        let pt = PathTable::build(&q, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(pt.nilpotency_index(), 2);
        assert_eq!(pt.bound(), 2);
        assert_eq!(pt.dim(0, 0), 2);
    }

    #[test]
    fn cyclic_non_homogeneous_relation_is_certified() {
        // x*y = y*x and x*x, y*y in I at a single vertex: nilpotent at length 3
        let q = quiver(
            &[("x", "1", "1"), ("y", "1", "1")],
            &[&[(1, &["x", "x"])], &[(1, &["y", "y"])], &[(1, &["x", "y"]), (-1, &["y", "x"])]],
        );
        let pt = PathTable::build(&q, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(pt.nilpotency_index(), 3);
        assert_eq!(pt.dim(0, 0), 4);
    }

    #[test]
    fn non_admissible_cycle_errors() {
        let q = quiver(&[("x", "1", "1")], &[]);
        assert_eq!(PathTable::build(&q, 6).unwrap_err(), Error::Admissibility { cap: 6 });
    }

    #[test]
    fn products_in_the_algebra() {
        let q = quiver(
            &[("b", "3", "2"), ("g", "3", "2"), ("a", "2", "1")],
            &[&[(1, &["b", "a"]), (-1, &["g", "a"])]],
        );
        let pt = PathTable::build(&q, DEFAULT_PATH_CAP).unwrap();
        let b = pt.element(pt.path_id_by_names(&["b"]).unwrap());
        let a = pt.element(pt.path_id_by_names(&["a"]).unwrap());
        let ba = pt.mul(&b, &a).unwrap();
        let ga = pt.path_id_by_names(&["g", "a"]).unwrap();
        assert_eq!(pt.proportion(&ba, ga), Some(int(1)));
        assert!(pt.mul(&a, &b).is_none());
    }
}
