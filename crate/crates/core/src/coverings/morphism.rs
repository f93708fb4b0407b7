//! Quiver morphisms and finite groups of quiver automorphisms.

use std::collections::{HashMap, HashSet};

use crate::dsl::{GroupSpec, MapSpec};
use crate::error::{Error, Result};
use crate::quiver::{BoundQuiver, Path, RelVector};

/// Vertex and arrow maps, indexed by the domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuiverMorphism {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidMorphism(msg.into())
}

impl QuiverMorphism {
    pub fn identity(q: &BoundQuiver) -> QuiverMorphism {
        QuiverMorphism {
            vertices: (0..q.vertex_count()).collect(),
            arrows: (0..q.arrow_count()).collect(),
        }
    }

    /// Builds `domain → codomain` from named assignments. Entries left out
    /// go to the entry of the same name in `codomain`.
    pub fn from_spec(domain: &BoundQuiver, codomain: &BoundQuiver, spec: &MapSpec) -> Result<QuiverMorphism> {
        let mut vmap: HashMap<&str, &str> = HashMap::new();
        for (a, b) in &spec.vertices {
            if domain.vertex_index(a).is_none() {
                return Err(Error::UnknownVertex(a.clone()));
            }
            if vmap.insert(a, b).is_some() {
                return Err(invalid(format!("vertex `{a}` mapped twice")));
            }
        }
        let mut amap: HashMap<&str, &str> = HashMap::new();
        for (a, b) in &spec.arrows {
            if domain.arrow_index(a).is_none() {
                return Err(Error::UnknownArrow(a.clone()));
            }
            if amap.insert(a, b).is_some() {
                return Err(invalid(format!("arrow `{a}` mapped twice")));
            }
        }
        let vertices = domain
            .vertices()
            .iter()
            .map(|v| {
                let t = vmap.get(v.as_str()).copied().unwrap_or(v);
                codomain
                    .vertex_index(t)
                    .ok_or_else(|| invalid(format!("vertex `{v}` has no image (`{t}` is not a vertex)")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arrows = domain
            .arrows()
            .iter()
            .map(|a| {
                let t = amap.get(a.name.as_str()).copied().unwrap_or(&a.name);
                codomain
                    .arrow_index(t)
                    .ok_or_else(|| invalid(format!("arrow `{}` has no image (`{t}` is not an arrow)", a.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        let f = QuiverMorphism { vertices, arrows };
        f.check_endpoints(domain, codomain)?;
        Ok(f)
    }

    pub fn check_endpoints(&self, domain: &BoundQuiver, codomain: &BoundQuiver) -> Result<()> {
        if self.vertices.len() != domain.vertex_count() || self.arrows.len() != domain.arrow_count() {
            return Err(invalid("map does not cover the domain"));
        }
        for (i, a) in domain.arrows().iter().enumerate() {
            let b = &codomain.arrows()[self.arrows[i]];
            if self.vertices[a.source] != b.source || self.vertices[a.target] != b.target {
                return Err(invalid(format!(
                    "arrow `{}` goes to `{}` but its endpoints go to `{}` and `{}`",
                    a.name,
                    b.name,
                    codomain.vertex_name(self.vertices[a.source]),
                    codomain.vertex_name(self.vertices[a.target])
                )));
            }
        }
        Ok(())
    }

    pub fn map_path(&self, p: &Path) -> Path {
        Path {
            source: self.vertices[p.source],
            target: self.vertices[p.target],
            arrows: p.arrows.iter().map(|a| self.arrows[*a]).collect(),
        }
    }

    pub fn map_relation(&self, codomain: &BoundQuiver, r: &RelVector) -> RelVector {
        let field = codomain.field();
        let mut out = RelVector::zero(self.vertices[r.source], self.vertices[r.target]);
        for (p, c) in &r.terms {
            out.add_term(&field, self.map_path(p), c);
        }
        out
    }

    /// `self` then `other`.
    pub fn then(&self, other: &QuiverMorphism) -> QuiverMorphism {
        QuiverMorphism {
            vertices: self.vertices.iter().map(|v| other.vertices[*v]).collect(),
            arrows: self.arrows.iter().map(|a| other.arrows[*a]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let perm = |v: &[usize]| {
            let mut seen = vec![false; v.len()];
            v.iter().all(|i| *i < v.len() && !std::mem::replace(&mut seen[*i], true))
        };
        perm(&self.vertices) && perm(&self.arrows)
    }

    pub fn inverse(&self) -> Option<QuiverMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut vertices = vec![0; self.vertices.len()];
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[*v] = i;
        }
        let mut arrows = vec![0; self.arrows.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            arrows[*a] = i;
        }
        Some(QuiverMorphism { vertices, arrows })
    }

    pub fn to_spec(&self, domain: &BoundQuiver, codomain: &BoundQuiver) -> MapSpec {
        MapSpec {
            vertices: domain
                .vertices()
                .iter()
                .zip(&self.vertices)
                .map(|(v, w)| (v.clone(), codomain.vertex_name(*w).to_string()))
                .collect(),
            arrows: domain
                .arrows()
                .iter()
                .zip(&self.arrows)
                .map(|(a, b)| (a.name.clone(), codomain.arrow_name(*b).to_string()))
                .collect(),
        }
    }
}

/// Unique path lifting through a map that is bijective on arrows around
/// every vertex.
#[derive(Debug, Clone)]
pub struct PathLifter {
    /// `(cover vertex, base arrow) → cover arrow`.
    lifts: HashMap<(usize, usize), usize>,
}

impl PathLifter {
    pub fn new(cover: &BoundQuiver, p: &QuiverMorphism) -> PathLifter {
        let mut lifts = HashMap::new();
        for (i, a) in cover.arrows().iter().enumerate() {
            lifts.entry((a.source, p.arrows[i])).or_insert(i);
        }
        PathLifter { lifts }
    }

    /// Lift of `path` starting at `start`.
    pub fn lift(&self, cover: &BoundQuiver, path: &Path, start: usize) -> Option<Path> {
        let mut at = start;
        let mut arrows = Vec::with_capacity(path.len());
        for a in &path.arrows {
            let b = *self.lifts.get(&(at, *a))?;
            arrows.push(b);
            at = cover.arrows()[b].target;
        }
        Some(Path {
            source: start,
            target: at,
            arrows,
        })
    }
}

/// A finite group of automorphisms of a bound quiver, given by its elements.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub names: Vec<String>,
    pub elements: Vec<QuiverMorphism>,
    /// `compose[g][h]` is the index of `g` then `h`.
    pub compose: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    pub identity: usize,
}

impl GroupAction {
    pub fn trivial(q: &BoundQuiver) -> GroupAction {
        GroupAction {
            names: vec!["id".into()],
            elements: vec![QuiverMorphism::identity(q)],
            compose: vec![vec![0]],
            inverse: vec![0],
            identity: 0,
        }
    }

    /// Checks the elements are automorphisms of `(q, I)` closed under
    /// composition and inverses.
    pub fn new(q: &BoundQuiver, names: Vec<String>, elements: Vec<QuiverMorphism>) -> Result<GroupAction> {
        let pt_check = |g: &QuiverMorphism, name: &str| -> Result<()> {
            g.check_endpoints(q, q)?;
            if !g.is_bijective() {
                return Err(invalid(format!("element `{name}` is not bijective")));
            }
            Ok(())
        };
        for (g, n) in elements.iter().zip(&names) {
            pt_check(g, n)?;
        }
        let index: HashMap<&QuiverMorphism, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        if index.len() != elements.len() {
            return Err(invalid("group lists an element twice"));
        }
        let identity = *index
            .get(&QuiverMorphism::identity(q))
            .ok_or_else(|| invalid("group has no identity element"))?;
        let mut compose = Vec::with_capacity(elements.len());
        for (g, gn) in elements.iter().zip(&names) {
            let mut row = Vec::with_capacity(elements.len());
            for (h, hn) in elements.iter().zip(&names) {
                let gh = g.then(h);
                row.push(
                    *index
                        .get(&gh)
                        .ok_or_else(|| invalid(format!("`{gn}` then `{hn}` is not in the group")))?,
                );
            }
            compose.push(row);
        }
        let inverse = (0..elements.len())
            .map(|g| (0..elements.len()).find(|h| compose[g][*h] == identity).unwrap())
            .collect();
        Ok(GroupAction {
            names,
            elements,
            compose,
            inverse,
            identity,
        })
    }

    pub fn from_spec(q: &BoundQuiver, spec: &GroupSpec) -> Result<GroupAction> {
        let mut names = Vec::new();
        let mut elements = Vec::new();
        for (n, m) in &spec.elements {
            names.push(n.clone());
            elements.push(QuiverMorphism::from_spec(q, q, m)?);
        }
        if elements.is_empty() {
            return Ok(GroupAction::trivial(q));
        }
        GroupAction::new(q, names, elements)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Orbit of a vertex.
    pub fn vertex_orbit(&self, x: usize) -> HashSet<usize> {
        self.elements.iter().map(|g| g.vertices[x]).collect()
    }

    pub fn arrow_orbit(&self, a: usize) -> HashSet<usize> {
        self.elements.iter().map(|g| g.arrows[a]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_group, parse_morphism, parse_quiver};

    fn square() -> BoundQuiver {
        parse_quiver("arrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\n").unwrap()
    }

    #[test]
    fn endpoints_are_checked() {
        let q = square();
        let f = parse_morphism("amap a -> b\n").unwrap();
        assert!(matches!(QuiverMorphism::from_spec(&q, &q, &f), Err(Error::InvalidMorphism(_))));
        let id = QuiverMorphism::from_spec(&q, &q, &MapSpec::default()).unwrap();
        assert_eq!(id, QuiverMorphism::identity(&q));
    }

    #[test]
    fn reflection_group() {
        let q = square();
        let g =
            parse_group("element id\nelement s\nvmap 2 -> 3\nvmap 3 -> 2\namap a -> c\namap c -> a\namap b -> d\namap d -> b\n").unwrap();
        let g = GroupAction::from_spec(&q, &g).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.compose[1][1], g.identity);
        assert_eq!(g.inverse, vec![0, 1]);
        assert_eq!(g.vertex_orbit(1).len(), 2);
    }

    #[test]
    fn missing_inverse_is_rejected() {
        let q = square();
        let g = parse_group("element s\nvmap 2 -> 3\nvmap 3 -> 2\namap a -> c\namap c -> a\namap b -> d\namap d -> b\n").unwrap();
        assert!(GroupAction::from_spec(&q, &g).is_err());
    }

    #[test]
    fn lifting_follows_arrows() {
        let base = parse_quiver("arrow a 1 1\n").unwrap();
        let cover = parse_quiver("arrow a0 x y\narrow a1 y x\n").unwrap();
        let p = QuiverMorphism::from_spec(
            &cover,
            &base,
            &parse_morphism("vmap x -> 1\nvmap y -> 1\namap a0 -> a\namap a1 -> a\n").unwrap(),
        )
        .unwrap();
        let lifter = PathLifter::new(&cover, &p);
        let aaa = Path {
            source: 0,
            target: 0,
            arrows: vec![0, 0, 0],
        };
        let l = lifter.lift(&cover, &aaa, 1).unwrap();
        assert_eq!(l.arrows, vec![1, 0, 1]);
        assert_eq!(p.map_path(&l), aaa);
    }
}
