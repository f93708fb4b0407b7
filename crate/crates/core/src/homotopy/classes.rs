//! Homotopy classes of paths.

use std::collections::HashMap;

use serde::Serialize;

use super::minimal::MinimalRelation;
use crate::paths::PathTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Natural,
    Walk,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathClass {
    pub source: usize,
    pub target: usize,
    /// Path ids in path order.
    pub members: Vec<usize>,
    /// Least nonzero member if there is one, else the least member.
    pub rep: usize,
    pub nonzero: bool,
    /// Contains a stationary path.
    pub identity: bool,
}

#[derive(Debug, Clone)]
pub struct PathClassTable {
    pub variant: Variant,
    class_of: Vec<usize>,
    classes: Vec<PathClass>,
    /// Walk variant: the walk length bound used.
    pub depth_bound: Option<usize>,
    /// Walk variant: some parallel classes were left apart by a truncated
    /// search and are not separated by an invariant.
    pub caveat: bool,
    /// Walk variant: number of such undecided parallel class pairs.
    pub undecided_pairs: usize,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns `true` if the sets were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl PathClassTable {
    /// Builds the table from a path partition.
    pub(crate) fn from_partition(pt: &PathTable, uf: &mut UnionFind, variant: Variant) -> PathClassTable {
        let n = pt.path_count();
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for p in 0..n {
            groups.entry(uf.find(p)).or_default().push(p);
        }
        let mut classes: Vec<PathClass> = groups
            .into_values()
            .map(|members| {
                let rep = members.iter().copied().find(|p| !pt.is_zero_path(*p)).unwrap_or(members[0]);
                let first = pt.path(members[0]);
                PathClass {
                    source: first.source,
                    target: first.target,
                    nonzero: !pt.is_zero_path(rep),
                    identity: members.iter().any(|p| pt.path(*p).is_stationary()),
                    rep,
                    members,
                }
            })
            .collect();
        classes.sort_by_key(|c| c.rep);
        let mut class_of = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for &p in &c.members {
                class_of[p] = i;
            }
        }
        PathClassTable {
            variant,
            class_of,
            classes,
            depth_bound: None,
            caveat: false,
            undecided_pairs: 0,
        }
    }

    pub fn class_of(&self, path: usize) -> usize {
        self.class_of[path]
    }

    pub fn class(&self, id: usize) -> &PathClass {
        &self.classes[id]
    }

    pub fn classes(&self) -> &[PathClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Class of a product of class representatives' witnesses.
    pub fn class_of_product(&self, pt: &PathTable, a: usize, b: usize) -> Option<usize> {
        pt.compose(a, b).map(|p| self.class_of[p])
    }

    /// `[p]` spelled through its representative, e.g. `~b*a`.
    pub fn spell(&self, pt: &PathTable, id: usize) -> String {
        format!("~{}", pt.spell(self.classes[id].rep))
    }
}

/// The congruence on paths generated by `w_1 ~ w_j` for every minimal
/// relation `Σ λ_i w_i`. Within the table one pass over the contexts
/// `u·w_1·v ↔ u·w_j·v` gives its equivalence closure.
pub fn natural_homotopy_classes(pt: &PathTable, mrs: &[MinimalRelation]) -> PathClassTable {
    let mut uf = UnionFind::new(pt.path_count());
    let pairs = generating_pairs(mrs);
    close_under_contexts(pt, &pairs, &mut uf);
    PathClassTable::from_partition(pt, &mut uf, Variant::Natural)
}

pub(crate) fn generating_pairs(mrs: &[MinimalRelation]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for r in mrs {
        let w1 = r.terms[0].0;
        for (wj, _) in &r.terms[1..] {
            pairs.push((w1, *wj));
        }
    }
    pairs
}

pub(crate) fn close_under_contexts(pt: &PathTable, pairs: &[(usize, usize)], uf: &mut UnionFind) {
    let mut ending: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut starting: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, p) in pt.paths().iter().enumerate() {
        ending.entry(p.target).or_default().push(i);
        starting.entry(p.source).or_default().push(i);
    }
    for &(a, b) in pairs {
        let (s, t) = (pt.path(a).source, pt.path(a).target);
        for &u in ending.get(&s).into_iter().flatten() {
            let (Some(ua), Some(ub)) = (pt.compose(u, a), pt.compose(u, b)) else {
                continue;
            };
            for &v in starting.get(&t).into_iter().flatten() {
                if let (Some(uav), Some(ubv)) = (pt.compose(ua, v), pt.compose(ub, v)) {
                    uf.union(uav, ubv);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_quiver;
    use crate::homotopy::minimal::minimal_relation_supports;
    use crate::paths::DEFAULT_PATH_CAP;

    fn natural(src: &str) -> (PathTable, PathClassTable) {
        let pt = PathTable::build(&parse_quiver(src).unwrap(), DEFAULT_PATH_CAP).unwrap();
        let mrs = minimal_relation_supports(&pt, 12).unwrap();
        let cl = natural_homotopy_classes(&pt, &mrs.relations);
        (pt, cl)
    }

    #[test]
    fn ex3_classes() {
        let (pt, cl) = natural(
            "arrow al 6 5\narrow b1 5 2\narrow b2 5 3\narrow b3 5 4\narrow g1 2 1\narrow g2 3 1\narrow g3 4 1\n\
             rel al*b1\nrel b1*g1 + b2*g2 + b3*g3\n",
        );
        let id = |n: &[&str]| pt.path_id_by_names(n).unwrap();
        assert!(cl.same_class(id(&["b1", "g1"]), id(&["b2", "g2"])));
        assert!(cl.same_class(id(&["b2", "g2"]), id(&["b3", "g3"])));
        assert!(cl.same_class(id(&["al", "b1", "g1"]), id(&["al", "b2", "g2"])));
        let c = cl.class(cl.class_of(id(&["al", "b1", "g1"])));
        assert!(c.nonzero);
        assert!(!pt.is_zero_path(c.rep));
        for a in 0..pt.quiver().arrow_count() {
            assert_eq!(cl.class(cl.class_of(pt.arrow_id(a))).members.len(), 1);
        }
    }

    #[test]
    fn ex1_arrows_stay_apart() {
        let (pt, cl) = natural("arrow b 3 2\narrow g 3 2\narrow a 2 1\nrel b*a - g*a\n");
        let id = |n: &[&str]| pt.path_id_by_names(n).unwrap();
        assert!(!cl.same_class(id(&["b"]), id(&["g"])));
        assert!(cl.same_class(id(&["b", "a"]), id(&["g", "a"])));
    }

    #[test]
    fn classes_are_parallel_and_compatible_with_composition() {
        let (pt, cl) = natural(
            "arrow a1 3 2\narrow b1 3 2\narrow a2 2 1\narrow b2 2 1\narrow c 4 3\narrow d 1 0\n\
             rel a1*a2 - b1*b2\nrel a1*b2 - b1*a2\n",
        );
        for c in cl.classes() {
            for &m in &c.members {
                assert_eq!((pt.path(m).source, pt.path(m).target), (c.source, c.target));
            }
        }
        for p in 0..pt.path_count() {
            for q in 0..pt.path_count() {
                if p == q || !cl.same_class(p, q) {
                    continue;
                }
                for u in 0..pt.path_count() {
                    if pt.composable(u, p) {
                        let (up, uq) = (pt.compose(u, p), pt.compose(u, q));
                        if let (Some(up), Some(uq)) = (up, uq) {
                            assert!(cl.same_class(up, uq));
                        }
                    }
                }
            }
        }
    }
}
