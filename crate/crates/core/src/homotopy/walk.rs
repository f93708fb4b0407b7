//! Walk homotopy restricted to paths, by bounded rewriting.
//!
//! Walks are freely reduced words in the letters `±(a + 1)`. Every relator
//! `w_1·w_j⁻¹` is freely and cyclically reduced, and each cyclic conjugate
//! `c` of it or its inverse, split as `c = s·t⁻¹`, yields the move `s → t`
//! (with `s` empty: insert `t` where the walk sits at the base of `c`).
//! Breadth-first search from each natural class reaches only walks that are
//! homotopic to it, so every merge is certified. Parallel classes whose
//! difference is nonzero in the abelianised fundamental group are provably
//! distinct; the remaining unmerged pairs are counted as undecided.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::classes::{generating_pairs, PathClassTable, UnionFind, Variant};
use super::group::{cyclic_conjugates, cyclic_reduce, free_reduce, inverse, spanning_forest, Word};
use super::minimal::MinimalRelation;
use crate::linalg::IntMatrix;
use crate::paths::PathTable;
use crate::snf::{smith_normal_form, SmithForm};

pub const DEFAULT_STATE_BUDGET: usize = 20_000;

pub fn default_depth_bound(pt: &PathTable) -> usize {
    2 * pt.bound() + 4
}

struct Move {
    s: Word,
    t: Word,
    base: usize,
}

fn letter_source(pt: &PathTable, l: i32) -> usize {
    let a = &pt.quiver().arrows()[(l.unsigned_abs() - 1) as usize];
    if l > 0 {
        a.source
    } else {
        a.target
    }
}

fn letter_target(pt: &PathTable, l: i32) -> usize {
    let a = &pt.quiver().arrows()[(l.unsigned_abs() - 1) as usize];
    if l > 0 {
        a.target
    } else {
        a.source
    }
}

pub(crate) fn path_word(pt: &PathTable, id: usize) -> Word {
    pt.path(id).arrows.iter().map(|a| *a as i32 + 1).collect()
}

fn moves(pt: &PathTable, mrs: &[MinimalRelation]) -> Vec<Move> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (a, b) in generating_pairs(mrs) {
        let mut r = path_word(pt, a);
        r.extend(inverse(&path_word(pt, b)));
        let r = cyclic_reduce(&free_reduce(&r));
        if r.is_empty() {
            continue;
        }
        for base in [r.clone(), inverse(&r)] {
            for c in cyclic_conjugates(&base) {
                let b = letter_source(pt, c[0]);
                for k in 0..=c.len() {
                    let s = c[..k].to_vec();
                    let t = inverse(&c[k..]);
                    if seen.insert((s.clone(), t.clone(), b)) {
                        out.push(Move { s, t, base: b });
                    }
                }
            }
        }
    }
    out
}

/// Decides membership of exponent vectors in the relation lattice of the
/// abelianised fundamental group.
pub(crate) struct Separator {
    snf: SmithForm,
    arrows: usize,
}

impl Separator {
    pub(crate) fn new(pt: &PathTable, mrs: &[MinimalRelation]) -> Separator {
        let q = pt.quiver();
        let n = q.arrow_count();
        let mut cols: Vec<Vec<i64>> = Vec::new();
        for a in spanning_forest(q) {
            let mut v = vec![0; n];
            v[a] = 1;
            cols.push(v);
        }
        for (a, b) in generating_pairs(mrs) {
            let mut v = vec![0; n];
            for x in &pt.path(a).arrows {
                v[*x] += 1;
            }
            for x in &pt.path(b).arrows {
                v[*x] -= 1;
            }
            cols.push(v);
        }
        let mut m = IntMatrix::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.add_entry(i, j, *x);
            }
        }
        Separator {
            snf: smith_normal_form(&m),
            arrows: n,
        }
    }

    /// `true` when `p` and `q` have different images in `π₁^ab`.
    pub(crate) fn separated(&self, pt: &PathTable, p: usize, q: usize) -> bool {
        let mut v = vec![BigInt::zero(); self.arrows];
        for x in &pt.path(p).arrows {
            v[*x] += 1;
        }
        for x in &pt.path(q).arrows {
            v[*x] -= 1;
        }
        for (i, row) in self.snf.left.iter().enumerate() {
            let uv: BigInt = row.iter().zip(&v).map(|(a, b)| a * b).sum();
            let ok = match self.snf.divisors.get(i) {
                Some(d) => uv.is_multiple_of(d),
                None => uv.is_zero(),
            };
            if !ok {
                return true;
            }
        }
        false
    }
}

/// Walk homotopy classes, coarsening the natural ones.
pub fn walk_homotopy_classes(
    pt: &PathTable,
    mrs: &[MinimalRelation],
    natural: &PathClassTable,
    depth_bound: usize,
    state_budget: usize,
) -> PathClassTable {
    let mut uf = UnionFind::new(pt.path_count());
    for c in natural.classes() {
        for &m in &c.members[1..] {
            uf.union(c.members[0], m);
        }
    }
    let separator = Separator::new(pt, mrs);
    let mv = moves(pt, mrs);
    let mut by_first: HashMap<i32, Vec<usize>> = HashMap::new();
    let mut by_base: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, m) in mv.iter().enumerate() {
        match m.s.first() {
            Some(l) => by_first.entry(*l).or_default().push(i),
            None => by_base.entry(m.base).or_default().push(i),
        }
    }
    let reps: Vec<usize> = natural.classes().iter().map(|c| c.rep).collect();
    let mut index: HashMap<Word, usize> = HashMap::new();
    for (i, p) in pt.paths().iter().enumerate() {
        if !p.is_stationary() {
            index.insert(path_word(pt, i), i);
        }
    }
    // open(p): some parallel class still apart from p's and not separated
    let open = |uf: &mut UnionFind, p: usize| -> bool {
        let (s, t) = (pt.path(p).source, pt.path(p).target);
        reps.iter().any(|&r| {
            pt.path(r).source == s
                && pt.path(r).target == t
                && !pt.path(r).is_stationary()
                && uf.find(r) != uf.find(p)
                && !separator.separated(pt, r, p)
        })
    };
    let mut truncated = false;
    for &start in &reps {
        if pt.path(start).is_stationary() || !open(&mut uf, start) {
            continue;
        }
        let s_vertex = pt.path(start).source;
        let first = path_word(pt, start);
        let mut seen: HashSet<Word> = HashSet::from([first.clone()]);
        let mut queue = VecDeque::from([first]);
        'bfs: while let Some(w) = queue.pop_front() {
            let mut verts = Vec::with_capacity(w.len() + 1);
            verts.push(s_vertex);
            for l in &w {
                verts.push(letter_target(pt, *l));
            }
            for i in 0..=w.len() {
                let firsts = w.get(i).and_then(|l| by_first.get(l));
                let empties = by_base.get(&verts[i]);
                for &k in firsts.into_iter().flatten().chain(empties.into_iter().flatten()) {
                    let m = &mv[k];
                    if !w[i..].starts_with(&m.s) {
                        continue;
                    }
                    let mut next = w[..i].to_vec();
                    next.extend_from_slice(&m.t);
                    next.extend_from_slice(&w[i + m.s.len()..]);
                    let next = free_reduce(&next);
                    if next.len() > depth_bound {
                        truncated = true;
                        continue;
                    }
                    if seen.contains(&next) {
                        continue;
                    }
                    if seen.len() >= state_budget {
                        truncated = true;
                        break 'bfs;
                    }
                    // identity classes stay stationary
                    let hit = if !next.is_empty() && next.iter().all(|l| *l > 0) {
                        index.get(&next).copied()
                    } else {
                        None
                    };
                    if let Some(p) = hit {
                        if uf.union(start, p) && !open(&mut uf, start) {
                            break 'bfs;
                        }
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    let mut table = PathClassTable::from_partition(pt, &mut uf, Variant::Walk);
    let mut undecided = 0;
    let classes = table.classes();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if !a.identity && !b.identity && a.source == b.source && a.target == b.target && !separator.separated(pt, a.rep, b.rep) {
                undecided += 1;
            }
        }
    }
    table.depth_bound = Some(depth_bound);
    table.undecided_pairs = undecided;
    table.caveat = truncated && undecided > 0;
    table
}
