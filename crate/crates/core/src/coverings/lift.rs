//! The cell map `ℬp: ℬ(Q̂, Î) → ℬ(Q, I)` of a covering and the deck maps
//! `ℬg` of a Galois covering.
//!
//! `ℬp` sends `(ŝ̃_1, ..., ŝ̃_n)` to `(p(s_1)~, ..., p(s_n)~)`. The same code
//! runs on walk-class complexes for `ℬ♯`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::check::{CoveringReport, GaloisReport, Verdict};
use super::morphism::{GroupAction, QuiverMorphism};
use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::homotopy::PathClassTable;
use crate::paths::PathTable;

/// A bound quiver with its path classes and cell complex.
#[derive(Debug, Clone, Copy)]
pub struct ComplexData<'a> {
    pub paths: &'a PathTable,
    pub classes: &'a PathClassTable,
    pub complex: &'a CellComplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceRow {
    pub cover_vertex: String,
    pub base_vertex: String,
    /// Cells through `x̂`, counted with multiplicity, per dimension.
    pub cover_counts: Vec<usize>,
    pub base_counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellMapReport {
    /// `w_1 ~ w_2` iff `ŵ_1 ~ ŵ_2` for paths from a common `x̂`.
    pub class_partition: Verdict,
    pub faces_commute: Verdict,
    /// Cells through `x̂` correspond to cells through `p(x̂)`.
    pub local_bijection: Verdict,
    pub covering_space: bool,
    pub cover_counts: Vec<usize>,
    pub base_counts: Vec<usize>,
    /// Distinct sizes of `ℬp⁻¹(c)` over the `n`-cells `c`, per `n`.
    pub cell_fiber_sizes: Vec<Vec<usize>>,
    pub incidence: Vec<IncidenceRow>,
    pub cover_euler_characteristic: i64,
    pub base_euler_characteristic: i64,
}

#[derive(Debug, Clone)]
pub struct CellMap {
    /// `cells[n][i]` is the image of the cover `n`-cell `i`.
    pub cells: Vec<Vec<usize>>,
    pub report: CellMapReport,
}

/// Vertices `x_0, ..., x_n` of an `n`-cell.
fn cell_vertices(pt: &PathTable, cx: &CellComplex, n: usize, i: usize) -> Vec<usize> {
    let c = cx.cell(n, i);
    let mut v = vec![c.source];
    v.extend(c.parts.iter().map(|w| pt.path(*w).target));
    v
}

/// Image of a cover cell under a path map, as a cell index of `target`.
fn image_cell(from: &PathTable, to: ComplexData, f: &QuiverMorphism, cx: &CellComplex, n: usize, i: usize) -> Option<usize> {
    if n == 0 {
        return Some(f.vertices[i]);
    }
    let cls: Vec<usize> = cx
        .cell(n, i)
        .parts
        .iter()
        .map(|w| to.paths.path_id(&f.map_path(from.path(*w))).map(|id| to.classes.class_of(id)))
        .collect::<Option<_>>()?;
    to.complex.find(&cls)
}

fn faces_commute(
    src: &CellComplex,
    dst: &CellComplex,
    f: &QuiverMorphism,
    cells: &[Vec<usize>],
    spell: impl Fn(usize, usize) -> String,
) -> Option<String> {
    for n in 1..cells.len() {
        for (i, j) in cells[n].iter().enumerate() {
            let lhs: Vec<usize> = src
                .faces(n, i)
                .iter()
                .map(|k| if n == 1 { f.vertices[*k] } else { cells[n - 1][*k] })
                .collect();
            if lhs != dst.faces(n, *j) {
                return Some(format!("faces of {} are not carried to faces of its image", spell(n, i)));
            }
        }
    }
    None
}

fn class_partition(base: ComplexData, cover: ComplexData, p: &QuiverMorphism) -> Option<String> {
    let (bp, cp) = (base.paths, cover.paths);
    let mut by_start: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (id, w) in cp.paths().iter().enumerate() {
        if let Some(img) = bp.path_id(&p.map_path(w)) {
            by_start.entry((w.source, bp.path(img).target)).or_default().push((id, img));
        }
    }
    for group in by_start.values() {
        for (k, (a, ia)) in group.iter().enumerate() {
            for (b, ib) in &group[k + 1..] {
                if cover.classes.same_class(*a, *b) != base.classes.same_class(*ia, *ib) {
                    return Some(format!(
                        "{} and {} disagree with their images {} and {}",
                        cp.spell(*a),
                        cp.spell(*b),
                        bp.spell(*ia),
                        bp.spell(*ib)
                    ));
                }
            }
        }
    }
    None
}

/// Builds `ℬp` and checks that it is a covering map cell by cell.
pub fn lift_complex_map(base: ComplexData, cover: ComplexData, p: &QuiverMorphism, covering: &CoveringReport) -> Result<CellMap> {
    if !covering.covering {
        let w = [
            &covering.bound_morphism,
            &covering.nonempty_fibers,
            &covering.local_bijections,
            &covering.relation_lifting,
        ]
        .into_iter()
        .find_map(|v| v.witness.clone())
        .unwrap_or_default();
        return Err(Error::NotACovering(w));
    }
    let (bq, cq) = (base.paths.quiver(), cover.paths.quiver());
    let (bx, cx) = (base.complex, cover.complex);
    let spell_cover = |n: usize, i: usize| {
        if n == 0 {
            cq.vertex_name(i).to_string()
        } else {
            cx.spell_cell(cover.paths, cover.classes, n, i)
        }
    };
    let mut cells = Vec::new();
    for n in 0..=cx.dim() {
        let mut row = Vec::with_capacity(cx.count(n));
        for i in 0..cx.count(n) {
            row.push(
                image_cell(cover.paths, base, p, cx, n, i)
                    .ok_or_else(|| Error::NotACovering(format!("cell {} has no image cell", spell_cover(n, i))))?,
            );
        }
        cells.push(row);
    }
    let class_partition = Verdict::from_witness(class_partition(base, cover, p));
    let faces_commute = Verdict::from_witness(faces_commute(cx, bx, p, &cells, spell_cover));

    let top = cx.dim().max(bx.dim());
    let incidences = |d: ComplexData, n: usize| -> HashMap<usize, Vec<(usize, usize)>> {
        let mut m: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for i in 0..d.complex.count(n) {
            for (k, v) in cell_vertices(d.paths, d.complex, n, i).into_iter().enumerate() {
                m.entry(v).or_default().push((i, k));
            }
        }
        m
    };
    let mut incidence = Vec::new();
    let mut local = None;
    let cover_inc: Vec<_> = (0..=top).map(|n| incidences(cover, n)).collect();
    let base_inc: Vec<_> = (0..=top).map(|n| incidences(base, n)).collect();
    for xh in 0..cq.vertex_count() {
        let x = p.vertices[xh];
        let mut cc = Vec::new();
        let mut bc = Vec::new();
        for n in 0..=top {
            let ours = cover_inc[n].get(&xh).map_or(&[][..], Vec::as_slice);
            let theirs: BTreeSet<(usize, usize)> = base_inc[n].get(&x).map_or(&[][..], Vec::as_slice).iter().copied().collect();
            let images: BTreeSet<(usize, usize)> = ours.iter().map(|(i, k)| (cells[n][*i], *k)).collect();
            if local.is_none() && (images.len() != ours.len() || images != theirs) {
                local = Some(format!(
                    "{n}-cells through {} do not correspond to {n}-cells through {}",
                    cq.vertex_name(xh),
                    bq.vertex_name(x)
                ));
            }
            cc.push(ours.len());
            bc.push(theirs.len());
        }
        incidence.push(IncidenceRow {
            cover_vertex: cq.vertex_name(xh).to_string(),
            base_vertex: bq.vertex_name(x).to_string(),
            cover_counts: cc,
            base_counts: bc,
        });
    }
    let local_bijection = Verdict::from_witness(local);
    let cell_fiber_sizes = (0..=bx.dim())
        .map(|n| {
            let mut sizes = vec![0usize; bx.count(n)];
            for j in cells.get(n).map_or(&[][..], Vec::as_slice) {
                sizes[*j] += 1;
            }
            sizes.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
        })
        .collect();
    let covering_space = class_partition.holds && faces_commute.holds && local_bijection.holds;
    Ok(CellMap {
        cells,
        report: CellMapReport {
            class_partition,
            faces_commute,
            local_bijection,
            covering_space,
            cover_counts: cx.counts(),
            base_counts: bx.counts(),
            cell_fiber_sizes,
            incidence,
            cover_euler_characteristic: cx.euler_characteristic(),
            base_euler_characteristic: bx.euler_characteristic(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeckReport {
    pub group_order: usize,
    /// Each `ℬg` is a bijection on cells commuting with faces.
    pub automorphisms: Verdict,
    /// `ℬp ∘ ℬg = ℬp`.
    pub compatible: Verdict,
    pub distinct: Verdict,
    pub base_point: String,
    pub fiber: Vec<String>,
    pub transitive_on_fiber: Verdict,
    /// `χ(ℬ̂) = |G| χ(ℬ)`.
    pub euler_multiplicative: bool,
    pub regular: bool,
}

#[derive(Debug, Clone)]
pub struct DeckGroup {
    /// `maps[g][n][i]`: image of the cover `n`-cell `i` under `ℬg`.
    pub maps: Vec<Vec<Vec<usize>>>,
    pub report: DeckReport,
}

/// Builds `ℬg` for every `g ∈ G` and certifies `ℬp` as a regular covering.
pub fn deck_group(
    base: ComplexData,
    cover: ComplexData,
    p: &QuiverMorphism,
    cell_map: &CellMap,
    g: &GroupAction,
    galois: &GaloisReport,
    base_point: usize,
) -> Result<DeckGroup> {
    if !galois.galois {
        let w = [&galois.preserves_ideal, &galois.compatible, &galois.transitive, &galois.free]
            .into_iter()
            .find_map(|v| v.witness.clone())
            .unwrap_or_default();
        return Err(Error::NotGalois(w));
    }
    let (bq, cq) = (base.paths.quiver(), cover.paths.quiver());
    if !cq.is_connected() {
        return Err(Error::NotGalois("the cover is not connected".into()));
    }
    if base_point >= bq.vertex_count() {
        return Err(Error::UnknownVertex(base_point.to_string()));
    }
    let cx = cover.complex;
    let mut maps = Vec::new();
    let mut automorphisms = None;
    let mut compatible = None;
    for (h, name) in g.elements.iter().zip(&g.names) {
        let mut m = Vec::new();
        for n in 0..=cx.dim() {
            let row: Option<Vec<usize>> = (0..cx.count(n)).map(|i| image_cell(cover.paths, cover, h, cx, n, i)).collect();
            let Some(row) = row else {
                automorphisms.get_or_insert_with(|| format!("ℬ{name} sends a cell to a non-cell"));
                m.push(Vec::new());
                continue;
            };
            if row.iter().collect::<BTreeSet<_>>().len() != row.len() {
                automorphisms.get_or_insert_with(|| format!("ℬ{name} is not injective on {n}-cells"));
            }
            if row.iter().enumerate().any(|(i, j)| cell_map.cells[n][*j] != cell_map.cells[n][i]) {
                compatible.get_or_insert_with(|| format!("ℬp∘ℬ{name} differs from ℬp on {n}-cells"));
            }
            m.push(row);
        }
        if automorphisms.is_none() {
            if let Some(w) = faces_commute(cx, cx, h, &m, |n, i| cx.spell_cell(cover.paths, cover.classes, n, i)) {
                automorphisms = Some(format!("ℬ{name}: {w}"));
            }
        }
        maps.push(m);
    }
    let mut distinct = None;
    for a in 0..maps.len() {
        for b in a + 1..maps.len() {
            if maps[a] == maps[b] {
                distinct.get_or_insert_with(|| format!("ℬ{} = ℬ{}", g.names[a], g.names[b]));
            }
        }
    }
    let fiber: BTreeSet<usize> = (0..cq.vertex_count()).filter(|v| p.vertices[*v] == base_point).collect();
    let transitive = fiber.first().and_then(|x0| {
        let orbit: BTreeSet<usize> = maps.iter().filter_map(|m| m.first().map(|r| r[*x0])).collect();
        (orbit != fiber).then(|| {
            format!(
                "the deck maps move {} to {} of {} fiber points",
                cq.vertex_name(*x0),
                orbit.len(),
                fiber.len()
            )
        })
    });
    let transitive = match fiber.is_empty() {
        true => Some("the fiber over the base point is empty".into()),
        false => transitive,
    };
    let r = &cell_map.report;
    let euler_multiplicative = r.cover_euler_characteristic == g.order() as i64 * r.base_euler_characteristic;
    let automorphisms = Verdict::from_witness(automorphisms);
    let compatible = Verdict::from_witness(compatible);
    let distinct = Verdict::from_witness(distinct);
    let transitive_on_fiber = Verdict::from_witness(transitive);
    let regular = automorphisms.holds && compatible.holds && distinct.holds && transitive_on_fiber.holds;
    Ok(DeckGroup {
        maps,
        report: DeckReport {
            group_order: g.order(),
            automorphisms,
            compatible,
            distinct,
            base_point: bq.vertex_name(base_point).to_string(),
            fiber: fiber.iter().map(|v| cq.vertex_name(*v).to_string()).collect(),
            transitive_on_fiber,
            euler_multiplicative,
            regular,
        },
    })
}
