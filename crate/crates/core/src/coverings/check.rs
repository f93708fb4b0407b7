//! Covering conditions 1-3 and Galois conditions 4-6 for a morphism
//! `p: (Q̂, Î) → (Q, I)`.
//!
//! Condition 3 is checked on the relation generators of `I`: a relation
//! `Σ u_i ρ_i v_i` lifts at `x̂` by lifting `u_i` and `v_i` uniquely around
//! the lifts of the `ρ_i`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::morphism::{GroupAction, PathLifter, QuiverMorphism};
use crate::paths::PathTable;
use crate::quiver::RelVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    pub(crate) fn from_witness(witness: Option<String>) -> Verdict {
        Verdict {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// A lift of a relation generator of `I` at a vertex of the fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationLift {
    pub relation: String,
    pub source: String,
    pub target: String,
    pub lift: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    /// `p(Î) ⊆ I`.
    pub bound_morphism: Verdict,
    pub nonempty_fibers: Verdict,
    pub local_bijections: Verdict,
    pub relation_lifting: Verdict,
    pub covering: bool,
    /// `(base vertex, |p⁻¹(x)|)`.
    pub vertex_fibers: Vec<(String, usize)>,
    pub lifts: Vec<RelationLift>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub galois: Option<GaloisReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisReport {
    pub group_order: usize,
    /// Every element maps `Î` into itself.
    pub preserves_ideal: Verdict,
    pub compatible: Verdict,
    pub transitive: Verdict,
    pub free: Verdict,
    pub galois: bool,
}

fn spell_rel(pt: &PathTable, r: &RelVector) -> String {
    pt.quiver().spell_relation(r)
}

pub fn check_covering(base: &PathTable, cover: &PathTable, p: &QuiverMorphism) -> CoveringReport {
    let (bq, cq) = (base.quiver(), cover.quiver());
    let bound_morphism = Verdict::from_witness(cq.relations().iter().find_map(|r| {
        let image = p.map_relation(bq, r);
        (!base.ideal_membership(&image)).then(|| {
            format!(
                "{} lies in the cover ideal but its image {} is not in the base ideal",
                spell_rel(cover, r),
                spell_rel(base, &image)
            )
        })
    }));

    let mut sizes = vec![0usize; bq.vertex_count()];
    for v in &p.vertices {
        sizes[*v] += 1;
    }
    let nonempty_fibers = Verdict::from_witness(
        sizes
            .iter()
            .position(|s| *s == 0)
            .map(|x| format!("vertex {} has an empty fiber", bq.vertex_name(x))),
    );

    let local = (0..cq.vertex_count()).find_map(|xh| {
        let x = p.vertices[xh];
        for (dir, cover_side, base_side) in [
            ("out", cq.out_arrows(xh).collect::<Vec<_>>(), bq.out_arrows(x).collect::<Vec<_>>()),
            ("in", cq.in_arrows(xh).collect::<Vec<_>>(), bq.in_arrows(x).collect::<Vec<_>>()),
        ] {
            let images: Vec<usize> = cover_side.iter().map(|a| p.arrows[*a]).collect();
            let distinct: BTreeSet<usize> = images.iter().copied().collect();
            let target: BTreeSet<usize> = base_side.into_iter().collect();
            if distinct.len() != images.len() || distinct != target {
                return Some(format!(
                    "{dir}-arrows of {} do not map bijectively onto those of {}",
                    cq.vertex_name(xh),
                    bq.vertex_name(x)
                ));
            }
        }
        None
    });
    let local_bijections = Verdict::from_witness(local);

    let lifter = PathLifter::new(cq, p);
    let mut lifts = Vec::new();
    let mut lift_failure = None;
    if local_bijections.holds {
        'outer: for r in bq.relations() {
            for xh in (0..cq.vertex_count()).filter(|xh| p.vertices[*xh] == r.source) {
                let terms: Vec<_> = r
                    .terms
                    .iter()
                    .map(|(w, c)| (lifter.lift(cq, w, xh).expect("local bijections give lifts"), c))
                    .collect();
                let ends: BTreeSet<usize> = terms.iter().map(|(w, _)| w.target).collect();
                if ends.len() != 1 {
                    lift_failure = Some(format!(
                        "the terms of {} lift at {} to paths with different targets",
                        spell_rel(base, r),
                        cq.vertex_name(xh)
                    ));
                    break 'outer;
                }
                let yh = terms[0].0.target;
                let mut lifted = RelVector::zero(xh, yh);
                for (w, c) in terms {
                    lifted.add_term(&cq.field(), w, c);
                }
                if !cover.ideal_membership(&lifted) {
                    lift_failure = Some(format!(
                        "{} has no lift at {}: {} is not in the cover ideal",
                        spell_rel(base, r),
                        cq.vertex_name(xh),
                        spell_rel(cover, &lifted)
                    ));
                    break 'outer;
                }
                lifts.push(RelationLift {
                    relation: spell_rel(base, r),
                    source: cq.vertex_name(xh).to_string(),
                    target: cq.vertex_name(yh).to_string(),
                    lift: spell_rel(cover, &lifted),
                });
            }
        }
    } else {
        lift_failure = Some("local bijections fail, so lifts are not defined".into());
    }
    let relation_lifting = Verdict::from_witness(lift_failure);
    let covering = bound_morphism.holds && nonempty_fibers.holds && local_bijections.holds && relation_lifting.holds;
    CoveringReport {
        bound_morphism,
        nonempty_fibers,
        local_bijections,
        relation_lifting,
        covering,
        vertex_fibers: bq.vertices().iter().cloned().zip(sizes).collect(),
        lifts,
        galois: None,
    }
}

/// Conditions 4-6 for `G` acting on the cover.
pub fn check_galois(base: &PathTable, cover: &PathTable, p: &QuiverMorphism, g: &GroupAction) -> GaloisReport {
    let (bq, cq) = (base.quiver(), cover.quiver());
    let preserves_ideal = Verdict::from_witness(g.elements.iter().enumerate().find_map(|(i, h)| {
        cq.relations().iter().find_map(|r| {
            let image = h.map_relation(cq, r);
            (!cover.ideal_membership(&image)).then(|| format!("`{}` maps {} out of the ideal", g.names[i], spell_rel(cover, r)))
        })
    }));
    let compatible = Verdict::from_witness(
        g.elements
            .iter()
            .enumerate()
            .find_map(|(i, h)| (h.then(p) != *p).then(|| format!("p∘{} differs from p", g.names[i]))),
    );
    let mut transitive = None;
    for x in 0..bq.vertex_count() {
        let fiber: BTreeSet<usize> = (0..cq.vertex_count()).filter(|v| p.vertices[*v] == x).collect();
        if let Some(v) = fiber.first() {
            if g.vertex_orbit(*v).into_iter().collect::<BTreeSet<_>>() != fiber {
                transitive = Some(format!(
                    "the orbit of {} has {} elements but the fiber over {} has {}",
                    cq.vertex_name(*v),
                    g.vertex_orbit(*v).len(),
                    bq.vertex_name(x),
                    fiber.len()
                ));
                break;
            }
        }
    }
    if transitive.is_none() {
        for a in 0..bq.arrow_count() {
            let fiber: BTreeSet<usize> = (0..cq.arrow_count()).filter(|b| p.arrows[*b] == a).collect();
            if let Some(b) = fiber.first() {
                if g.arrow_orbit(*b).into_iter().collect::<BTreeSet<_>>() != fiber {
                    transitive = Some(format!(
                        "the orbit of {} has {} elements but the fiber over {} has {}",
                        cq.arrow_name(*b),
                        g.arrow_orbit(*b).len(),
                        bq.arrow_name(a),
                        fiber.len()
                    ));
                    break;
                }
            }
        }
    }
    let transitive = Verdict::from_witness(transitive);
    let free = Verdict::from_witness(g.elements.iter().enumerate().filter(|(i, _)| *i != g.identity).find_map(|(i, h)| {
        if let Some(v) = (0..cq.vertex_count()).find(|v| h.vertices[*v] == *v) {
            return Some(format!("`{}` fixes vertex {}", g.names[i], cq.vertex_name(v)));
        }
        (0..cq.arrow_count())
            .find(|a| h.arrows[*a] == *a)
            .map(|a| format!("`{}` fixes arrow {}", g.names[i], cq.arrow_name(a)))
    }));
    let galois = preserves_ideal.holds && compatible.holds && transitive.holds && free.holds;
    GaloisReport {
        group_order: g.order(),
        preserves_ideal,
        compatible,
        transitive,
        free,
        galois,
    }
}
