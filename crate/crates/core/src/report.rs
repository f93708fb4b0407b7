//! Analysis pipeline and versioned JSON reports.

use std::cell::OnceCell;

use serde_json::{json, Value};

use crate::algcohom::{epsilon_mu, find_semi_normed_basis, hochschild_complex, phi_psi_maps, simplicial_complex, SemiNormedAlgebra};
use crate::complex::{build_complex, cohomology, homology, CellComplex, Coefficient};
use crate::coverings::{check_covering, check_galois, deck_group, lift_complex_map, ComplexData, GroupAction, QuiverMorphism};
use crate::dsl::{parse_group, parse_morphism, parse_quiver};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homotopy::{
    abelianization, default_depth_bound, minimal_relation_supports, natural_homotopy_classes, pi1_presentation, simplify_presentation,
    van_kampen_pushout, walk_homotopy_classes, GroupPresentation, MinimalRelations, PathClassTable, DEFAULT_STATE_BUDGET,
    DEFAULT_SUPPORT_CAP,
};
use crate::paths::{PathTable, DEFAULT_PATH_CAP};
use crate::properties::algebra_properties;
use crate::quiver::BoundQuiver;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub path_cap: usize,
    pub support_cap: usize,
    /// Walk length bound; `None` picks a default from the quiver.
    pub walk_bound: Option<usize>,
    pub state_budget: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            path_cap: DEFAULT_PATH_CAP,
            support_cap: DEFAULT_SUPPORT_CAP,
            walk_bound: None,
            state_budget: DEFAULT_STATE_BUDGET,
        }
    }
}

/// A bound quiver with its path table, minimal relations and lazily
/// computed class tables.
pub struct Analysis {
    pub name: String,
    pub config: Config,
    pub paths: PathTable,
    pub minimal: MinimalRelations,
    natural: PathClassTable,
    walk: OnceCell<PathClassTable>,
    walk_used: OnceCell<()>,
}

impl Analysis {
    pub fn new(name: &str, quiver: &BoundQuiver, config: Config) -> Result<Analysis> {
        let paths = PathTable::build(quiver, config.path_cap)?;
        let minimal = minimal_relation_supports(&paths, config.support_cap)?;
        let natural = natural_homotopy_classes(&paths, &minimal.relations);
        Ok(Analysis {
            name: name.to_string(),
            config,
            paths,
            minimal,
            natural,
            walk: OnceCell::new(),
            walk_used: OnceCell::new(),
        })
    }

    pub fn from_text(name: &str, text: &str, config: Config) -> Result<Analysis> {
        Analysis::new(name, &parse_quiver(text)?, config)
    }

    pub fn quiver(&self) -> &BoundQuiver {
        self.paths.quiver()
    }

    pub fn natural(&self) -> &PathClassTable {
        &self.natural
    }

    pub fn walk(&self) -> &PathClassTable {
        let _ = self.walk_used.set(());
        self.walk.get_or_init(|| {
            let bound = self.config.walk_bound.unwrap_or_else(|| default_depth_bound(&self.paths));
            walk_homotopy_classes(&self.paths, &self.minimal.relations, &self.natural, bound, self.config.state_budget)
        })
    }

    pub fn classes(&self, sharp: bool) -> &PathClassTable {
        if sharp {
            self.walk()
        } else {
            self.natural()
        }
    }

    pub fn complex(&self, sharp: bool, max_dim: Option<usize>) -> CellComplex {
        build_complex(&self.paths, self.classes(sharp), max_dim)
    }

    pub fn data<'a>(&'a self, sharp: bool, cx: &'a CellComplex) -> ComplexData<'a> {
        ComplexData {
            paths: &self.paths,
            classes: self.classes(sharp),
            complex: cx,
        }
    }

    pub fn semi_normed_basis(&self) -> Result<SemiNormedAlgebra> {
        find_semi_normed_basis(&self.paths, &self.natural)
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.quiver()
            .vertex_index(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn caveats(&self) -> Value {
        let mut c = json!({
            "support_cap": self.minimal.support_cap,
            "support_cap_incomplete": !self.minimal.is_complete(),
            "support_warnings": self.minimal.warnings,
        });
        if self.walk_used.get().is_some() {
            let w = self.walk();
            c["walk_bound"] = json!(w.depth_bound);
            c["walk_truncated"] = json!(w.caveat);
            c["walk_undecided_pairs"] = json!(w.undecided_pairs);
        }
        c
    }

    pub fn input(&self) -> Value {
        let q = self.quiver();
        json!({
            "file": self.name,
            "field": q.field().label(),
            "vertices": q.vertices(),
            "arrows": q.arrows().iter().map(|a| json!([a.name, q.vertex_name(a.source), q.vertex_name(a.target)])).collect::<Vec<_>>(),
            "relations": q.relations().iter().map(|r| q.spell_relation(r)).collect::<Vec<_>>(),
        })
    }
}

/// `result` wrapped with schema and tool versions, input echo and caveats.
pub fn envelope(command: &str, a: &Analysis, result: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "bqtop", "version": env!("CARGO_PKG_VERSION")},
        "command": command,
        "input": a.input(),
        "config": {
            "path_cap": a.config.path_cap,
            "support_cap": a.config.support_cap,
            "walk_bound": a.config.walk_bound,
        },
        "result": result,
        "caveats": a.caveats(),
    })
}

pub fn check_report(a: &Analysis) -> Value {
    let props = algebra_properties(&a.paths);
    let pt = &a.paths;
    json!({
        "properties": props,
        "minimal_relations": a.minimal.relations.iter().map(|r| a.quiver().spell_relation(&r.to_rel_vector(pt))).collect::<Vec<_>>(),
        "natural_classes": a.natural().classes().iter().filter(|c| !c.identity && c.nonzero).count(),
    })
}

pub fn cells_report(a: &Analysis, sharp: bool, max_dim: Option<usize>) -> Value {
    let cx = a.complex(sharp, max_dim);
    let classes = a.classes(sharp);
    let cells: Vec<Vec<String>> = (0..=cx.dim())
        .map(|n| (0..cx.count(n)).map(|i| cx.spell_cell(&a.paths, classes, n, i)).collect())
        .collect();
    json!({
        "variant": classes.variant,
        "counts": cx.counts(),
        "euler_characteristic": cx.euler_characteristic(),
        "cells": cells,
        "caveat": cx.caveat,
    })
}

pub fn homology_report(a: &Analysis, coefficient: Coefficient, sharp: bool, co: bool) -> Value {
    let cx = a.complex(sharp, None);
    let h = if co {
        cohomology(&cx, coefficient)
    } else {
        homology(&cx, coefficient)
    };
    json!({
        "variant": a.classes(sharp).variant,
        "coefficient": coefficient.to_string(),
        "counts": cx.counts(),
        "groups": h.to_json(),
        "euler_characteristic": cx.euler_characteristic(),
    })
}

fn presentation_json(p: &GroupPresentation) -> Value {
    let s = simplify_presentation(p);
    json!({
        "presentation": s,
        "abelianization": abelianization(&s),
    })
}

pub fn pi1_report(a: &Analysis, base: Option<&str>, simplify: bool, abelian: bool) -> Result<Value> {
    let base = base.map(|b| a.vertex(b)).transpose()?;
    let p = pi1_presentation(&a.paths, &a.minimal.relations, base)?;
    let shown = if simplify { simplify_presentation(&p) } else { p.clone() };
    let mut out = json!({ "presentation": shown });
    if abelian {
        out["abelianization"] = json!(abelianization(&p));
    }
    Ok(out)
}

pub fn vankampen_report(a: &Analysis, v1: &[String], v2: &[String]) -> Result<Value> {
    let ids = |v: &[String]| v.iter().map(|n| a.vertex(n)).collect::<Result<Vec<_>>>();
    let vk = van_kampen_pushout(&a.paths, &a.minimal.relations, &ids(v1)?, &ids(v2)?)?;
    let whole = pi1_presentation(&a.paths, &a.minimal.relations, None)?;
    let pushout_ab = abelianization(&vk.pushout);
    let whole_ab = abelianization(&whole);
    Ok(json!({
        "first": presentation_json(&vk.first),
        "second": presentation_json(&vk.second),
        "intersection": presentation_json(&vk.intersection),
        "pushout": presentation_json(&vk.pushout),
        "whole": presentation_json(&whole),
        "abelianizations_agree": pushout_ab == whole_ab,
    }))
}

/// `(report, verdict)`; the verdict fails when no semi-normed basis exists.
pub fn simplicial_report(a: &Analysis) -> Result<(Value, bool)> {
    let alg = match a.semi_normed_basis() {
        Ok(alg) => alg,
        Err(Error::NoSemiNormedBasis(w)) => {
            return Ok((json!({"semi_normed_basis": {"found": false, "witness": w}}), false));
        }
        Err(e) => return Err(e),
    };
    let sc = simplicial_complex(&alg);
    let field = Coefficient::from(alg.field());
    Ok((
        json!({
            "semi_normed_basis": {
                "found": true,
                "basis": (0..alg.len()).map(|i| alg.spell(&a.paths, i)).collect::<Vec<_>>(),
            },
            "counts": sc.counts(),
            "homology": sc.homology(Coefficient::Z).to_json(),
            "cohomology": sc.cohomology(field).to_json(),
        }),
        true,
    ))
}

pub fn hochschild_report(a: &Analysis, field: Option<Field>) -> Result<(Value, bool)> {
    let owned;
    let a = match field {
        Some(f) if f != a.quiver().field() => {
            owned = Analysis::new(&a.name, &a.quiver().with_field(f)?, a.config)?;
            &owned
        }
        _ => a,
    };
    let alg = match a.semi_normed_basis() {
        Ok(alg) => alg,
        Err(Error::NoSemiNormedBasis(w)) => {
            return Ok((json!({"semi_normed_basis": {"found": false, "witness": w}}), false));
        }
        Err(e) => return Err(e),
    };
    let hc = hochschild_complex(&alg);
    Ok((
        json!({
            "field": alg.field().label(),
            "cochain_dims": (0..=hc.dim()).map(|n| hc.cochain_dim(n)).collect::<Vec<_>>(),
            "HH": hc.hh_dims(),
            "coboundary_squares_to_zero": hc.coboundary_squares_to_zero(),
        }),
        true,
    ))
}

/// SH against `H(ℬ)`, `H(ℬ♯)` and `HH` with the comparison map checks. The
/// verdict covers the identities that hold for every semi-normed basis.
pub fn compare_report(a: &Analysis) -> Result<(Value, bool)> {
    let alg = match a.semi_normed_basis() {
        Ok(alg) => alg,
        Err(Error::NoSemiNormedBasis(w)) => {
            let cx = a.complex(false, None);
            let cs = a.complex(true, None);
            return Ok((
                json!({
                    "semi_normed_basis": {"found": false, "witness": w},
                    "cellular": homology(&cx, Coefficient::Z).to_json(),
                    "cellular_sharp": homology(&cs, Coefficient::Z).to_json(),
                }),
                false,
            ));
        }
        Err(e) => return Err(e),
    };
    let sc = simplicial_complex(&alg);
    let cx = a.complex(false, None);
    let cs = a.complex(true, None);
    let maps = phi_psi_maps(&alg, &sc, a.natural(), &cx, a.walk(), &cs)?;
    let sh = sc.homology(Coefficient::Z);
    let hb = homology(&cx, Coefficient::Z);
    let mut out = json!({
        "semi_normed_basis": {"found": true, "size": alg.len()},
        "simplicial": sh.to_json(),
        "cellular": hb.to_json(),
        "cellular_sharp": homology(&cs, Coefficient::Z).to_json(),
        "sh_equals_cellular": sh.groups == hb.groups,
        "phi_psi": maps.report,
    });
    let mut verdict = maps.report.phi_chain_map
        && maps.report.psi_chain_map
        && maps.report.phi_psi_identity
        && maps.report.psi_phi_identity
        && maps.report.phi_sharp_chain_map;
    if a.quiver().is_acyclic() {
        let hc = hochschild_complex(&alg);
        let em = epsilon_mu(&a.paths, &alg, &sc, &hc)?;
        verdict &= em.report.mu_epsilon_identity && em.report.epsilon_chain_map;
        out["epsilon_mu"] = json!(em.report);
        out["SH"] = json!(em.report.sh);
        out["HH"] = json!(em.report.hh);
        out["epsilon_iso"] = json!(em.report.epsilon_iso);
        out["semi_commutative"] = json!(em.report.semi_commutative);
        out["schurian"] = json!(em.report.schurian);
    } else {
        out["epsilon_mu"] = json!({"skipped": Error::TriangularRequired.to_string()});
    }
    Ok((out, verdict))
}

/// Reads a base quiver, a cover quiver, a morphism file and optionally a
/// group file, and reports covering, Galois, cell map and deck checks.
pub struct CoverInputs<'a> {
    pub base: &'a Analysis,
    pub cover: &'a Analysis,
    pub morphism: &'a str,
    pub group: Option<&'a str>,
    pub base_point: Option<&'a str>,
}

pub fn cover_report(inp: &CoverInputs) -> Result<(Value, bool)> {
    let (b, c) = (inp.base, inp.cover);
    let p = QuiverMorphism::from_spec(c.quiver(), b.quiver(), &parse_morphism(inp.morphism)?)?;
    let mut report = check_covering(&b.paths, &c.paths, &p);
    let group = inp
        .group
        .map(|g| GroupAction::from_spec(c.quiver(), &parse_group(g)?))
        .transpose()?;
    if let Some(g) = &group {
        report.galois = Some(check_galois(&b.paths, &c.paths, &p, g));
    }
    let mut verdict = report.covering && report.galois.as_ref().is_none_or(|g| g.galois);
    let mut out = json!({ "covering": report });
    if report.covering {
        let (bx, cx) = (b.complex(false, None), c.complex(false, None));
        let cm = lift_complex_map(b.data(false, &bx), c.data(false, &cx), &p, &report)?;
        verdict &= cm.report.covering_space;
        out["cell_map"] = json!(cm.report);
        out["base_homology"] = homology(&bx, Coefficient::Z).to_json();
        out["cover_homology"] = homology(&cx, Coefficient::Z).to_json();
        if let (Some(g), Some(gr)) = (&group, &report.galois) {
            if gr.galois {
                let x0 = match inp.base_point {
                    Some(v) => b.vertex(v)?,
                    None => 0,
                };
                let deck = deck_group(b.data(false, &bx), c.data(false, &cx), &p, &cm, g, gr, x0)?;
                verdict &= deck.report.regular;
                out["deck"] = json!(deck.report);
            }
        }
    }
    let out = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "bqtop", "version": env!("CARGO_PKG_VERSION")},
        "command": "cover verify",
        "input": {"base": b.input(), "cover": c.input()},
        "result": out,
        "caveats": {"base": b.caveats(), "cover": c.caveats()},
    });
    Ok((out, verdict))
}

/// DOT text for the quiver, or for the 1-skeleton of `ℬ` with `skeleton`.
pub fn dot(a: &Analysis, skeleton: bool) -> String {
    let q = a.quiver();
    let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
    let mut out = String::from("digraph bqtop {\n");
    for v in q.vertices() {
        out.push_str(&format!("  \"{}\";\n", esc(v)));
    }
    if skeleton {
        let cx = a.complex(false, Some(1));
        for i in 0..cx.count(1) {
            let c = cx.cell(1, i);
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                esc(q.vertex_name(c.source)),
                esc(q.vertex_name(c.target)),
                esc(&a.natural().spell(&a.paths, c.classes[0]))
            ));
        }
    } else {
        for ar in q.arrows() {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                esc(q.vertex_name(ar.source)),
                esc(q.vertex_name(ar.target)),
                esc(&ar.name)
            ));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const RP2: &str = "arrow al1 3 2\narrow be1 3 2\narrow al2 2 1\narrow be2 2 1\n\
                       rel al1*al2 - be1*be2\nrel al1*be2 - be1*al2\n";

    #[test]
    fn homology_envelope() {
        let a = Analysis::from_text("rp2.bq", RP2, Config::default()).unwrap();
        let r = envelope("homology", &a, homology_report(&a, Coefficient::Z, false, false));
        assert_eq!(r["result"]["groups"].to_string(), r#"{"H0":[1,[]],"H1":[0,[2]],"H2":[0,[]]}"#);
        assert_eq!(r["schema_version"], 1);
        assert!(r["caveats"].get("walk_bound").is_none());
    }

    #[test]
    fn walk_caveats_appear_once_used() {
        let a = Analysis::from_text("rp2.bq", RP2, Config::default()).unwrap();
        let r = envelope("cells", &a, cells_report(&a, true, None));
        assert_eq!(r["caveats"]["walk_truncated"], false);
    }

    #[test]
    fn reports_are_deterministic() {
        let run = || {
            let a = Analysis::from_text("rp2.bq", RP2, Config::default()).unwrap();
            envelope("compare", &a, compare_report(&a).unwrap().0).to_string()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn dot_lists_arrows() {
        let a = Analysis::from_text("x.bq", "arrow a 1 2\n", Config::default()).unwrap();
        assert_eq!(
            dot(&a, false),
            "digraph bqtop {\n  \"1\";\n  \"2\";\n  \"1\" -> \"2\" [label=\"a\"];\n}\n"
        );
    }
}
