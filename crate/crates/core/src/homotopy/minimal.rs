//! Minimal relations.
//!
//! For a support `S` of nonzero parallel paths let `K_S` be the space of
//! coefficient vectors `c` with `Σ c_i w_i ∈ I`. A vector of `K_S` fails to
//! be a minimal relation exactly when it lies in some
//! `B_J = {c ∈ K_S : Σ_J c_i w_i ∈ I}` for a proper nonempty `J ⊂ S`, and
//! `B_J = ker M_J ⊕ ker M_{S∖J}` where `M_J` holds the images of the paths
//! in `J`. So `B_J = K_S` iff `rk M_J + rk M_{S∖J} = rk M_S`; when no `B_J`
//! fills `K_S` a point of the moment curve in `K_S` avoids all of them.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{axpy, kernel, rank, SparseVec};
use crate::paths::PathTable;
use crate::quiver::RelVector;

pub const DEFAULT_SUPPORT_CAP: usize = 12;

/// Support sets are bit masks over the nonzero paths of a vertex pair.
const MASK_BITS: usize = 63;

/// Limit on support sets examined per vertex pair.
const SUBSET_BUDGET: u128 = 200_000;

/// Limit on candidate vectors tried over a small prime field.
const FINITE_FIELD_TRIES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalRelation {
    pub source: usize,
    pub target: usize,
    /// `(path id, coefficient)`, by path id; the first coefficient is 1.
    pub terms: Vec<(usize, Scalar)>,
}

impl MinimalRelation {
    pub fn support(&self) -> Vec<usize> {
        self.terms.iter().map(|(p, _)| *p).collect()
    }

    pub fn to_rel_vector(&self, pt: &PathTable) -> RelVector {
        let mut v = RelVector::zero(self.source, self.target);
        for (p, c) in &self.terms {
            v.add_term(&pt.field(), pt.path(*p).clone(), c);
        }
        v
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SupportWarning {
    pub source: String,
    pub target: String,
    pub nonzero_paths: usize,
}

#[derive(Debug, Clone)]
pub struct MinimalRelations {
    pub relations: Vec<MinimalRelation>,
    pub support_cap: usize,
    /// Vertex pairs with more nonzero parallel paths than the cap.
    pub warnings: Vec<SupportWarning>,
    /// Supports where the finite-field search gave up.
    pub undecided: usize,
}

impl MinimalRelations {
    pub fn is_complete(&self) -> bool {
        self.warnings.is_empty() && self.undecided == 0
    }
}

/// Literal check: `v ∈ I`, support at least 2, no proper sub-sum in `I`.
pub fn is_minimal_relation(pt: &PathTable, v: &RelVector, cap: usize) -> Result<bool> {
    let m = v.support_size();
    if m > cap {
        return Err(Error::SupportTooLarge { size: m, cap });
    }
    if m < 2 || !pt.ideal_membership(v) {
        return Ok(false);
    }
    let terms: Vec<_> = v.terms.iter().collect();
    for mask in 1u32..(1u32 << m) - 1 {
        let mut sub = RelVector::zero(v.source, v.target);
        for (i, (p, c)) in terms.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sub.terms.insert((*p).clone(), (*c).clone());
            }
        }
        if pt.ideal_membership(&sub) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One minimal relation per support set that admits one.
pub fn minimal_relation_supports(pt: &PathTable, support_cap: usize) -> Result<MinimalRelations> {
    let field = pt.field();
    let q = pt.quiver();
    let mut relations = Vec::new();
    let mut warnings = Vec::new();
    let mut undecided = 0;
    for (&(x, y), pair) in pt.pairs() {
        let nonzero: Vec<usize> = pair.paths.iter().copied().filter(|p| !pt.is_zero_path(*p)).collect();
        let r = nonzero.len();
        if r < 2 {
            continue;
        }
        if r > support_cap || r > MASK_BITS || binomial_sum(r, support_cap) > SUBSET_BUDGET {
            warnings.push(SupportWarning {
                source: q.vertex_name(x).to_string(),
                target: q.vertex_name(y).to_string(),
                nonzero_paths: r,
            });
        }
        let images: Vec<SparseVec> = nonzero
            .iter()
            .map(|p| pt.reduce(x, y, &vec![(pt.local_index(*p), Scalar::one())]))
            .collect();
        if rank(&field, &images) == r {
            continue;
        }
        let mut ranks: HashMap<u64, usize> = HashMap::new();
        let mut rank_of = |mask: u64| -> usize {
            *ranks.entry(mask).or_insert_with(|| {
                let rows: Vec<SparseVec> = (0..r).filter(|i| mask & (1 << i) != 0).map(|i| images[i].clone()).collect();
                rank(&field, &rows)
            })
        };
        if r > MASK_BITS {
            continue;
        }
        let mut max_size = r.min(support_cap);
        while binomial_sum(r, max_size) > SUBSET_BUDGET {
            max_size -= 1;
        }
        for size in 2..=max_size {
            for subset in combinations(r, size) {
                let s_mask: u64 = subset.iter().map(|i| 1u64 << i).sum();
                let rk = rank_of(s_mask);
                if rk == size {
                    continue;
                }
                // J runs over proper subsets containing the first element
                let rest: Vec<usize> = subset[1..].to_vec();
                let mut blocked = Vec::new();
                let mut fills = false;
                for bits in 0..(1u64 << rest.len()) - 1 {
                    let mut j_mask = 1u64 << subset[0];
                    for (k, &i) in rest.iter().enumerate() {
                        if bits & (1 << k) != 0 {
                            j_mask |= 1 << i;
                        }
                    }
                    let c_mask = s_mask & !j_mask;
                    if rank_of(j_mask) + rank_of(c_mask) == rk {
                        fills = true;
                        break;
                    }
                    blocked.push(j_mask);
                }
                if fills {
                    continue;
                }
                let cols: Vec<SparseVec> = subset.iter().map(|i| images[*i].clone()).collect();
                let basis = kernel(&field, &cols);
                let c = match pick_generic(&field, &basis, size, |c| valid(&field, c, &subset, &images, &blocked)) {
                    Search::Found(c) => c,
                    Search::Exhausted => continue,
                    Search::GaveUp => {
                        undecided += 1;
                        continue;
                    }
                };
                let lead = c[0].clone();
                let c: Vec<Scalar> = c.iter().map(|v| field.div(v, &lead)).collect();
                let rel = MinimalRelation {
                    source: x,
                    target: y,
                    terms: subset.iter().map(|i| nonzero[*i]).zip(c).collect(),
                };
                relations.push(rel);
            }
        }
    }
    for rel in &relations {
        if rel.terms.len() <= support_cap && !is_minimal_relation(pt, &rel.to_rel_vector(pt), support_cap)? {
            return Err(Error::MalformedRelation("internal: candidate is not a minimal relation".into()));
        }
    }
    Ok(MinimalRelations {
        relations,
        support_cap,
        warnings,
        undecided,
    })
}

/// Dense coefficient vector is a minimal relation on `subset`.
fn valid(field: &Field, c: &[Scalar], subset: &[usize], images: &[SparseVec], blocked: &[u64]) -> bool {
    if c.iter().any(Zero::is_zero) {
        return false;
    }
    blocked.iter().all(|&j_mask| {
        let mut acc: SparseVec = Vec::new();
        for (k, &i) in subset.iter().enumerate() {
            if j_mask & (1 << i) != 0 {
                acc = axpy(field, &acc, &c[k], &images[i]);
            }
        }
        !acc.is_empty()
    })
}

enum Search {
    Found(Vec<Scalar>),
    Exhausted,
    GaveUp,
}

/// Searches `span(basis)` for a vector accepted by `ok`: moment curve first,
/// then exhaustive enumeration over a small prime field.
fn pick_generic<F: Fn(&[Scalar]) -> bool>(field: &Field, basis: &[SparseVec], len: usize, ok: F) -> Search {
    let d = basis.len();
    let combine = |coeffs: &[Scalar]| -> Vec<Scalar> {
        let mut acc: SparseVec = Vec::new();
        for (k, b) in coeffs.iter().zip(basis) {
            acc = axpy(field, &acc, k, b);
        }
        let mut dense = vec![Scalar::zero(); len];
        for (i, v) in acc {
            dense[i] = v;
        }
        dense
    };
    let tries = match field {
        Field::Rational => usize::MAX,
        Field::Prime(p) => *p as usize,
    };
    let limit = (1usize << len.min(20)) * d.max(1) + 2;
    for t in 1..=limit.min(tries) {
        let t = field.normalize(Scalar::from_integer((t as i64).into()));
        let mut coeffs = Vec::with_capacity(d);
        let mut power = Scalar::one();
        for _ in 0..d {
            coeffs.push(power.clone());
            power = field.mul(&power, &t);
        }
        let c = combine(&coeffs);
        if ok(&c) {
            return Search::Found(c);
        }
    }
    let Field::Prime(p) = field else { return Search::GaveUp };
    let total = match (*p as usize).checked_pow(d as u32) {
        Some(t) if t <= FINITE_FIELD_TRIES => t,
        _ => return Search::GaveUp,
    };
    for n in 0..total {
        let mut rem = n;
        let coeffs: Vec<Scalar> = (0..d)
            .map(|_| {
                let v = rem % *p as usize;
                rem /= *p as usize;
                Scalar::from_integer((v as i64).into())
            })
            .collect();
        let c = combine(&coeffs);
        if ok(&c) {
            return Search::Found(c);
        }
    }
    Search::Exhausted
}

/// Number of subsets of `0..n` with size in `2..=k`.
fn binomial_sum(n: usize, k: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for i in 0..=k.min(n) {
        if i >= 2 {
            total = total.saturating_add(c);
        }
        c = c.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    total
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_quiver;
    use crate::field::int;
    use crate::paths::DEFAULT_PATH_CAP;

    fn table(src: &str) -> PathTable {
        PathTable::build(&parse_quiver(src).unwrap(), DEFAULT_PATH_CAP).unwrap()
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

    const EX1: &str = "arrow b 3 2\narrow g 3 2\narrow a 2 1\nrel b*a - g*a\n";

    #[test]
    fn ex1_literal_check() {
        let pt = table(EX1);
        assert!(is_minimal_relation(&pt, &rel(&pt, &[(1, &["b", "a"]), (-1, &["g", "a"])]), 12).unwrap());
        assert!(!is_minimal_relation(&pt, &rel(&pt, &[(1, &["b", "a"])]), 12).unwrap());
    }

    #[test]
    fn two_dimensional_relation_space() {
        // I(1,4) spanned by w1 - w2 and w1 - w3
        let pt = table(
            "arrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\narrow e 1 5\narrow f 5 4\n\
             rel a*b - c*d\nrel a*b - e*f\n",
        );
        let v = rel(&pt, &[(2, &["a", "b"]), (-1, &["c", "d"]), (-1, &["e", "f"])]);
        assert!(is_minimal_relation(&pt, &v, 12).unwrap());
        assert_eq!(
            is_minimal_relation(&pt, &v, 2).unwrap_err(),
            Error::SupportTooLarge { size: 3, cap: 2 }
        );
        let mrs = minimal_relation_supports(&pt, 12).unwrap();
        // every 2-subset and the full support
        assert_eq!(mrs.relations.len(), 4);
    }

    #[test]
    fn ex3_has_one_relation_among_the_b_g() {
        let pt = table(
            "arrow al 6 5\narrow b1 5 2\narrow b2 5 3\narrow b3 5 4\narrow g1 2 1\narrow g2 3 1\narrow g3 4 1\n\
             rel al*b1\nrel b1*g1 + b2*g2 + b3*g3\n",
        );
        let mrs = minimal_relation_supports(&pt, 12).unwrap();
        let short: Vec<_> = mrs.relations.iter().filter(|r| pt.path(r.terms[0].0).len() == 2).collect();
        assert_eq!(short.len(), 1);
        assert_eq!(short[0].terms.len(), 3);
        assert!(mrs.is_complete());
    }

    #[test]
    fn monomial_ideal_has_none() {
        let pt = table("arrow a 1 2\narrow b 2 3\narrow c 1 3\nrel a*b\n");
        assert!(minimal_relation_supports(&pt, 12).unwrap().relations.is_empty());
    }

    #[test]
    fn vk_relations() {
        let pt = table(
            "arrow a1 3 2\narrow b1 3 2\narrow a2 2 1\narrow b2 2 1\narrow c1 2 4\narrow c2 2 5\narrow d1 6 4\narrow d2 6 5\n\
             rel a1*a2 - b1*b2\nrel a1*b2 - b1*a2\n",
        );
        let mrs = minimal_relation_supports(&pt, 12).unwrap();
        let spelled: Vec<String> = mrs
            .relations
            .iter()
            .map(|r| pt.quiver().spell_relation(&r.to_rel_vector(&pt)))
            .collect();
        assert_eq!(spelled, ["a1*a2 - b1*b2", "a1*b2 - b1*a2"]);
    }

    #[test]
    fn prime_field_search() {
        let src = "field Fp:2\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\narrow e 1 5\narrow f 5 4\n\
                   rel a*b + c*d\nrel a*b + e*f\n";
        let pt = table(src);
        let mrs = minimal_relation_supports(&pt, 12).unwrap();
        // over F2 the sum of all three is in I: a*b + c*d + a*b + e*f = c*d + e*f
        assert_eq!(mrs.relations.len(), 3);
        assert_eq!(mrs.undecided, 0);
    }
}
