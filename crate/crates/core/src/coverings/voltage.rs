//! Cyclic voltage covers: `Q̂_0 = Q_0 × ℤ/n`, an arrow `α: x → y` of voltage
//! `v` lifts to `(α, i): (x, i) → (y, i + v)`, and `ℤ/n` acts by shifting
//! the second coordinate.

use super::morphism::{GroupAction, QuiverMorphism};
use crate::error::{Error, Result};
use crate::quiver::{BoundQuiver, Path, RelVector};

#[derive(Debug, Clone)]
pub struct VoltageCover {
    pub cover: BoundQuiver,
    pub projection: QuiverMorphism,
    pub group: GroupAction,
}

/// The `ℤ/n` cover of `base` with the given arrow voltages. Every relation
/// must have terms of equal total voltage.
pub fn voltage_cover(base: &BoundQuiver, voltages: &[usize], n: usize) -> Result<VoltageCover> {
    if n == 0 || voltages.len() != base.arrow_count() {
        return Err(Error::InvalidMorphism("need one voltage per arrow and n ≥ 1".into()));
    }
    let nv = base.vertex_count();
    let na = base.arrow_count();
    let vid = |x: usize, i: usize| i * nv + x;
    let aid = |a: usize, i: usize| i * na + a;
    let mut cover = BoundQuiver::new(base.field());
    for i in 0..n {
        for x in base.vertices() {
            cover.add_vertex(&format!("{x}_{i}"))?;
        }
    }
    for i in 0..n {
        for (k, a) in base.arrows().iter().enumerate() {
            let j = (i + voltages[k]) % n;
            cover.add_arrow(
                &format!("{}_{i}", a.name),
                &format!("{}_{i}", base.vertex_name(a.source)),
                &format!("{}_{j}", base.vertex_name(a.target)),
            )?;
        }
    }
    let lift = |p: &Path, i: usize| -> Path {
        let mut at = i;
        let mut arrows = Vec::with_capacity(p.len());
        for a in &p.arrows {
            arrows.push(aid(*a, at));
            at = (at + voltages[*a]) % n;
        }
        Path {
            source: vid(p.source, i),
            target: vid(p.target, at),
            arrows,
        }
    };
    for r in base.relations() {
        for i in 0..n {
            let mut terms = r.terms.iter().map(|(p, c)| (lift(p, i), c));
            let (first, c0) = terms.next().expect("relations are nonzero");
            let mut v = RelVector::zero(first.source, first.target);
            v.add_term(&cover.field(), first, c0);
            for (p, c) in terms {
                if p.target != v.target {
                    return Err(Error::InvalidMorphism(format!(
                        "voltages are not constant on the terms of {}",
                        base.spell_relation(r)
                    )));
                }
                v.add_term(&cover.field(), p, c);
            }
            cover.add_relation_vector(v)?;
        }
    }
    let projection = QuiverMorphism {
        vertices: (0..n * nv).map(|v| v % nv).collect(),
        arrows: (0..n * na).map(|a| a % na).collect(),
    };
    let shift = |k: usize| QuiverMorphism {
        vertices: (0..n * nv).map(|v| vid(v % nv, (v / nv + k) % n)).collect(),
        arrows: (0..n * na).map(|a| aid(a % na, (a / na + k) % n)).collect(),
    };
    let group = GroupAction::new(&cover, (0..n).map(|k| format!("g{k}")).collect(), (0..n).map(shift).collect())?;
    Ok(VoltageCover { cover, projection, group })
}
