//! Presentations of `π₁(Q, I)`, Tietze simplification, abelianisation and
//! the van Kampen pushout.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::minimal::MinimalRelation;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::paths::PathTable;
use crate::quiver::BoundQuiver;
use crate::snf::{bigint_json, smith_invariants};

/// Letters are `±(generator + 1)`.
pub type Word = Vec<i32>;

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Cyclic reduction of a freely reduced word.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

pub fn cyclic_conjugates(w: &[i32]) -> Vec<Word> {
    (0..w.len())
        .map(|k| {
            let mut c = w[k..].to_vec();
            c.extend_from_slice(&w[..k]);
            c
        })
        .collect()
}

/// Least cyclic conjugate of the word or its inverse.
fn canonical(w: &[i32]) -> Word {
    let mut best = w.to_vec();
    for c in cyclic_conjugates(w).into_iter().chain(cyclic_conjugates(&inverse(w))) {
        if c < best {
            best = c;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    /// Arrows of the spanning tree.
    pub tree: Vec<String>,
    pub base: String,
}

impl GroupPresentation {
    pub fn spell_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| {
                let g = &self.generators[(l.unsigned_abs() - 1) as usize];
                if *l > 0 {
                    g.clone()
                } else {
                    format!("{g}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "generators": self.generators,
            "relators": self.relators.iter().map(|r| self.spell_word(r)).collect::<Vec<_>>(),
            "tree": self.tree,
            "base": self.base,
        })
    }
}

impl Serialize for GroupPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub rank: usize,
    /// `d_1 | d_2 | ...`, each greater than one.
    pub torsion: Vec<BigInt>,
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AbelianInvariants", 2)?;
        st.serialize_field("rank", &self.rank)?;
        let torsion: Vec<_> = self.torsion.iter().map(bigint_json).collect();
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

/// Arrows of a breadth-first spanning tree grown from `base`, extending
/// `seed` (a tree through `base`). Arrows are scanned in declared order.
pub fn bfs_tree(q: &BoundQuiver, base: usize, seed: &[usize]) -> Vec<usize> {
    let n = q.vertex_count();
    let mut visited = vec![false; n];
    let mut tree = seed.to_vec();
    visited[base] = true;
    let mut queue = VecDeque::from([base]);
    for &a in seed {
        for v in [q.arrows()[a].source, q.arrows()[a].target] {
            if !visited[v] {
                visited[v] = true;
            }
        }
    }
    queue.extend((0..n).filter(|v| visited[*v] && *v != base));
    while let Some(x) = queue.pop_front() {
        for (i, a) in q.arrows().iter().enumerate() {
            let y = if a.source == x {
                a.target
            } else if a.target == x {
                a.source
            } else {
                continue;
            };
            if !visited[y] {
                visited[y] = true;
                tree.push(i);
                queue.push_back(y);
            }
        }
    }
    tree
}

/// Spanning forest, one BFS tree per component.
pub fn spanning_forest(q: &BoundQuiver) -> Vec<usize> {
    let comp = q.components();
    let mut forest = Vec::new();
    let mut done = HashSet::new();
    for x in 0..q.vertex_count() {
        if !done.insert(comp[x]) {
            continue;
        }
        let sub: Vec<usize> = (0..q.vertex_count()).filter(|v| comp[*v] == comp[x]).collect();
        let (sq, vmap, amap) = q.full_subquiver(&sub);
        let base = vmap.iter().position(|v| *v == x).unwrap();
        forest.extend(bfs_tree(&sq, base, &[]).into_iter().map(|a| amap[a]));
    }
    forest.sort_unstable();
    forest
}

fn path_letters(arrows: &[usize]) -> Word {
    arrows.iter().map(|a| *a as i32 + 1).collect()
}

/// Presentation with generators the arrows of `q`, relators the tree
/// arrows and `w_1·w_j⁻¹` for each pair given as arrow sequences.
fn presentation_from(q: &BoundQuiver, pairs: &[(Vec<usize>, Vec<usize>)], base: usize, seed: &[usize]) -> GroupPresentation {
    let tree = bfs_tree(q, base, seed);
    let mut relators: Vec<Word> = tree.iter().map(|a| vec![*a as i32 + 1]).collect();
    for (w1, wj) in pairs {
        let mut r = path_letters(w1);
        r.extend(inverse(&path_letters(wj)));
        relators.push(r);
    }
    GroupPresentation {
        generators: q.arrows().iter().map(|a| a.name.clone()).collect(),
        relators,
        tree: tree.iter().map(|a| q.arrow_name(*a).to_string()).collect(),
        base: q.vertex_name(base).to_string(),
    }
}

fn relation_pairs(pt: &PathTable, mrs: &[MinimalRelation]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for r in mrs {
        let w1 = &pt.path(r.terms[0].0).arrows;
        for (wj, _) in &r.terms[1..] {
            out.push((w1.clone(), pt.path(*wj).arrows.clone()));
        }
    }
    out
}

/// The presentation of `π₁(Q, I, base)`: generators the arrows, relators
/// the spanning tree arrows and `w_1·w_j⁻¹` for each minimal relation.
pub fn pi1_presentation(pt: &PathTable, mrs: &[MinimalRelation], base: Option<usize>) -> Result<GroupPresentation> {
    let q = pt.quiver();
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let base = base.unwrap_or(0);
    Ok(presentation_from(q, &relation_pairs(pt, mrs), base, &[]))
}

/// Tietze simplification: free and cyclic reduction, removal of duplicate
/// relators up to conjugation and inversion, and elimination of generators
/// occurring exactly once in some relator whenever that does not lengthen
/// the presentation.
pub fn simplify_presentation(p: &GroupPresentation) -> GroupPresentation {
    let mut gens = p.generators.clone();
    let mut rels: Vec<Word> = p.relators.clone();
    loop {
        let mut seen = HashSet::new();
        rels = rels
            .iter()
            .map(|r| cyclic_reduce(&free_reduce(r)))
            .filter(|r| !r.is_empty() && seen.insert(canonical(r)))
            .collect();
        let mut order: Vec<usize> = (0..rels.len()).collect();
        order.sort_by_key(|i| (rels[*i].len(), *i));
        let mut chosen = None;
        'search: for &ri in &order {
            let r = &rels[ri];
            for g in 0..gens.len() {
                let letter = g as i32 + 1;
                let count = r.iter().filter(|l| l.abs() == letter).count();
                if count != 1 {
                    continue;
                }
                let elsewhere: usize = rels
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != ri)
                    .map(|(_, w)| w.iter().filter(|l| l.abs() == letter).count())
                    .sum();
                let growth = elsewhere * (r.len() - 1);
                if r.len() <= 2 || growth <= elsewhere + r.len() {
                    chosen = Some((ri, g));
                    break 'search;
                }
            }
        }
        let Some((ri, g)) = chosen else { break };
        let letter = g as i32 + 1;
        let r = rels.remove(ri);
        let k = r.iter().position(|l| l.abs() == letter).unwrap();
        let mut rot = r[k..].to_vec();
        rot.extend_from_slice(&r[..k]);
        let rest = &rot[1..];
        // g^ε · rest = 1
        let subst = if rot[0] > 0 { inverse(rest) } else { rest.to_vec() };
        let subst_inv = inverse(&subst);
        rels = rels
            .iter()
            .map(|w| {
                let mut out = Vec::with_capacity(w.len());
                for &l in w {
                    if l == letter {
                        out.extend_from_slice(&subst);
                    } else if l == -letter {
                        out.extend_from_slice(&subst_inv);
                    } else {
                        out.push(l);
                    }
                }
                out.into_iter().map(|l| if l.abs() > letter { l - l.signum() } else { l }).collect()
            })
            .collect();
        gens.remove(g);
    }
    GroupPresentation {
        generators: gens,
        relators: rels,
        tree: p.tree.clone(),
        base: p.base.clone(),
    }
}

/// Smith normal form of the relator × generator exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    let mut m = IntMatrix::zeros(p.relators.len(), p.generators.len());
    for (i, r) in p.relators.iter().enumerate() {
        for &l in r {
            m.add_entry(i, (l.unsigned_abs() - 1) as usize, l.signum() as i64);
        }
    }
    let inv = smith_invariants(&m);
    AbelianInvariants {
        rank: p.generators.len() - inv.rank,
        torsion: inv.divisors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[derive(Debug, Clone)]
pub struct VanKampen {
    pub first: GroupPresentation,
    pub second: GroupPresentation,
    pub intersection: GroupPresentation,
    pub pushout: GroupPresentation,
}

fn violated(msg: String) -> Error {
    Error::HypothesisViolated(msg)
}

/// Presentations of `π₁` of the full subquivers on `v1`, `v2`, `v1 ∩ v2`
/// with the restricted ideals, and their amalgamated sum. The spanning
/// trees of the two pieces extend the tree of the intersection, so the
/// inclusions send each shared arrow generator to itself.
pub fn van_kampen_pushout(pt: &PathTable, mrs: &[MinimalRelation], v1: &[usize], v2: &[usize]) -> Result<VanKampen> {
    let q = pt.quiver();
    let norm = |v: &[usize]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    let (v1, v2) = (norm(v1), norm(v2));
    let v0: Vec<usize> = v1.iter().copied().filter(|x| v2.contains(x)).collect();
    let names = |vs: &[usize]| vs.iter().map(|v| q.vertex_name(*v)).collect::<Vec<_>>().join(",");
    if v0.is_empty() {
        return Err(violated("the intersection Q0 is empty".into()));
    }
    for (label, vs) in [("Q1", &v1), ("Q2", &v2)] {
        for (id, p) in pt.paths().iter().enumerate() {
            if vs.contains(&p.source) && vs.contains(&p.target) {
                let outside = p.arrows.iter().any(|a| !vs.contains(&q.arrows()[*a].target));
                if outside {
                    return Err(violated(format!("{label} is not convex: path {} leaves it", pt.spell(id))));
                }
            }
        }
    }
    for (id, p) in pt.paths().iter().enumerate() {
        if pt.is_zero_path(id) {
            continue;
        }
        let mut verts = vec![p.source];
        verts.extend(p.arrows.iter().map(|a| q.arrows()[*a].target));
        if !verts.iter().all(|v| v1.contains(v)) && !verts.iter().all(|v| v2.contains(v)) {
            return Err(violated(format!("nonzero path {} lies in neither Q1 nor Q2", pt.spell(id))));
        }
    }
    let (q0, map0, amap0) = q.full_subquiver(&v0);
    if !q0.is_connected() {
        return Err(violated(format!("Q0 on {{{}}} is not connected", names(&v0))));
    }
    let base = v0[0];
    let sub = |vs: &[usize], seed_parent: &[usize]| -> Result<GroupPresentation> {
        let (sq, vmap, amap) = q.full_subquiver(vs);
        if !sq.is_connected() {
            return Err(violated(format!("subquiver on {{{}}} is not connected", names(vs))));
        }
        let local_arrow = |a: usize| amap.iter().position(|x| *x == a).unwrap();
        let pairs: Vec<(Vec<usize>, Vec<usize>)> = relation_pairs(
            pt,
            &mrs.iter()
                .filter(|r| vs.contains(&r.source) && vs.contains(&r.target))
                .cloned()
                .collect::<Vec<_>>(),
        )
        .into_iter()
        .map(|(a, b)| (a.into_iter().map(local_arrow).collect(), b.into_iter().map(local_arrow).collect()))
        .collect();
        let seed: Vec<usize> = seed_parent.iter().map(|a| local_arrow(*a)).collect();
        let b = vmap.iter().position(|v| *v == base).unwrap();
        Ok(presentation_from(&sq, &pairs, b, &seed))
    };
    let intersection = sub(&v0, &[])?;
    let b0 = map0.iter().position(|v| *v == base).unwrap();
    let tree0: Vec<usize> = bfs_tree(&q0, b0, &[]).into_iter().map(|a| amap0[a]).collect();
    let first = sub(&v1, &tree0)?;
    let second = sub(&v2, &tree0)?;
    let pushout = amalgamate(&first, &second, &intersection);
    Ok(VanKampen {
        first,
        second,
        intersection,
        pushout,
    })
}

fn amalgamate(a: &GroupPresentation, b: &GroupPresentation, shared: &GroupPresentation) -> GroupPresentation {
    let mut generators: Vec<String> = a.generators.iter().map(|g| format!("{g}.1")).collect();
    let off = generators.len() as i32;
    generators.extend(b.generators.iter().map(|g| format!("{g}.2")));
    let mut relators: Vec<Word> = a.relators.clone();
    for r in &b.relators {
        relators.push(r.iter().map(|l| l + l.signum() * off).collect());
    }
    for g in &shared.generators {
        let i = a.generators.iter().position(|x| x == g).unwrap() as i32 + 1;
        let j = b.generators.iter().position(|x| x == g).unwrap() as i32 + 1 + off;
        relators.push(vec![i, -j]);
    }
    let mut tree: Vec<String> = a.tree.iter().map(|g| format!("{g}.1")).collect();
    tree.extend(b.tree.iter().map(|g| format!("{g}.2")));
    GroupPresentation {
        generators,
        relators,
        tree,
        base: a.base.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_quiver;
    use crate::homotopy::minimal::minimal_relation_supports;
    use crate::paths::DEFAULT_PATH_CAP;

    const VK: &str = "arrow a1 3 2\narrow b1 3 2\narrow a2 2 1\narrow b2 2 1\narrow c1 2 4\narrow c2 2 5\n\
                      arrow d1 6 4\narrow d2 6 5\nrel a1*a2 - b1*b2\nrel a1*b2 - b1*a2\n";

    fn setup(src: &str) -> (PathTable, Vec<MinimalRelation>) {
        let pt = PathTable::build(&parse_quiver(src).unwrap(), DEFAULT_PATH_CAP).unwrap();
        let mrs = minimal_relation_supports(&pt, 12).unwrap().relations;
        (pt, mrs)
    }

    fn inv(rank: usize, torsion: &[i64]) -> AbelianInvariants {
        AbelianInvariants {
            rank,
            torsion: torsion.iter().map(|t| BigInt::from(*t)).collect(),
        }
    }

    #[test]
    fn vk_abelianization() {
        let (pt, mrs) = setup(VK);
        let p = pi1_presentation(&pt, &mrs, None).unwrap();
        assert_eq!(p.relators.len(), p.tree.len() + 2);
        assert_eq!(abelianization(&p), inv(1, &[2]));
        let s = simplify_presentation(&p);
        assert_eq!(abelianization(&s), inv(1, &[2]));
        assert_eq!(s.generators.len(), 2);
        assert_eq!(s.relators.len(), 1);
        assert_eq!(s.relators[0].len(), 2);
    }

    #[test]
    fn tree_quiver_is_trivial() {
        let (pt, mrs) = setup("arrow a 1 2\narrow b 2 3\narrow c 2 4\nrel a*b\n");
        let s = simplify_presentation(&pi1_presentation(&pt, &mrs, None).unwrap());
        assert!(s.generators.is_empty() && s.relators.is_empty());
    }

    #[test]
    fn free_reduction_then_elimination() {
        let p = GroupPresentation {
            generators: vec!["a".into(), "b".into()],
            relators: vec![vec![1, -1, 2]],
            tree: vec![],
            base: "x".into(),
        };
        let s = simplify_presentation(&p);
        assert_eq!(s.generators, vec!["a".to_string()]);
        assert!(s.relators.is_empty());
        let trivial = GroupPresentation {
            generators: vec![],
            relators: vec![],
            tree: vec![],
            base: "x".into(),
        };
        assert_eq!(simplify_presentation(&trivial), trivial);
    }

    #[test]
    fn free_abelianization() {
        let p = GroupPresentation {
            generators: vec!["a".into(), "b".into(), "c".into()],
            relators: vec![],
            tree: vec![],
            base: "x".into(),
        };
        assert_eq!(abelianization(&p), inv(3, &[]));
    }

    #[test]
    fn disconnected_is_an_error() {
        let (pt, mrs) = setup("arrow a 1 2\narrow b 3 4\n");
        assert_eq!(pi1_presentation(&pt, &mrs, None).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn vk_pushout() {
        let (pt, mrs) = setup(VK);
        let q = pt.quiver();
        let vs = |names: &[&str]| names.iter().map(|n| q.vertex_index(n).unwrap()).collect::<Vec<_>>();
        let vk = van_kampen_pushout(&pt, &mrs, &vs(&["2", "3", "4", "5", "6"]), &vs(&["1", "2", "3"])).unwrap();
        assert_eq!(abelianization(&vk.first), inv(2, &[]));
        assert_eq!(abelianization(&vk.second), inv(0, &[2]));
        assert_eq!(abelianization(&vk.intersection), inv(1, &[]));
        assert_eq!(abelianization(&vk.pushout), inv(1, &[2]));
    }

    #[test]
    fn degenerate_decomposition() {
        let (pt, mrs) = setup(VK);
        let all: Vec<usize> = (0..pt.quiver().vertex_count()).collect();
        let vk = van_kampen_pushout(&pt, &mrs, &[0], &all).unwrap();
        assert_eq!(abelianization(&vk.pushout), inv(1, &[2]));
    }

    #[test]
    fn hypothesis_violations() {
        let (pt, mrs) = setup(VK);
        let q = pt.quiver();
        let vs = |names: &[&str]| names.iter().map(|n| q.vertex_index(n).unwrap()).collect::<Vec<_>>();
        // nonzero path a1*a2 crosses between the pieces
        let err = van_kampen_pushout(&pt, &mrs, &vs(&["3", "2", "4", "5", "6"]), &vs(&["2", "1"])).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated(_)));
        // intersection {4, 5} is disconnected
        let err = van_kampen_pushout(&pt, &mrs, &vs(&["1", "2", "3", "4", "5"]), &vs(&["4", "5", "6"])).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated(_)));
    }
}
