//! Quivers, paths and relation vectors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{format_scalar, Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path, composed left to right. The stationary path at `x` has no arrows
/// and `source == target == x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn stationary(x: usize) -> Path {
        Path {
            source: x,
            target: x,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Composite `self · other`, if the endpoints match.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }
}

/// A linear combination of parallel paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelVector {
    pub source: usize,
    pub target: usize,
    pub terms: BTreeMap<Path, Scalar>,
}

impl RelVector {
    pub fn zero(source: usize, target: usize) -> RelVector {
        RelVector {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · path`, dropping the term if it cancels.
    pub fn add_term(&mut self, field: &Field, path: Path, c: &Scalar) {
        assert!(
            path.source == self.source && path.target == self.target,
            "relation term is not parallel"
        );
        let entry = self.terms.entry(path.clone()).or_insert_with(Scalar::zero);
        *entry = field.add(entry, c);
        if entry.is_zero() {
            self.terms.remove(&path);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiver {
    field: Field,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<RelVector>,
}

impl BoundQuiver {
    pub fn new(field: Field) -> BoundQuiver {
        BoundQuiver {
            field,
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[RelVector] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if name.is_empty() {
            return Err(Error::MalformedQuiver("empty vertex name".into()));
        }
        if self.vertices.iter().any(|v| v == name) {
            return Err(Error::MalformedQuiver(format!("duplicate vertex `{name}`")));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    /// Returns the vertex index, declaring it first if needed.
    pub fn ensure_vertex(&mut self, name: &str) -> Result<usize> {
        match self.vertex_index(name) {
            Some(i) => Ok(i),
            None => self.add_vertex(name),
        }
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize> {
        if name.is_empty() {
            return Err(Error::MalformedQuiver("empty arrow name".into()));
        }
        if self.arrow_index(name).is_some() {
            return Err(Error::MalformedQuiver(format!("duplicate arrow `{name}`")));
        }
        let source = self.vertex_index(source).ok_or_else(|| Error::UnknownVertex(source.to_string()))?;
        let target = self.vertex_index(target).ok_or_else(|| Error::UnknownVertex(target.to_string()))?;
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    /// Adds a relation generator `Σ c_i w_i`, each `w_i` given by arrow names.
    pub fn add_relation(&mut self, terms: &[(Scalar, Vec<String>)]) -> Result<()> {
        let mut paths = Vec::with_capacity(terms.len());
        for (c, names) in terms {
            let p = self.path_from_names(names)?;
            if p.len() < 2 {
                return Err(Error::MalformedRelation(format!(
                    "path `{}` has length {} < 2",
                    self.spell(&p),
                    p.len()
                )));
            }
            let c = self.field.from_rational(c)?;
            paths.push((p, c));
        }
        let Some(first) = paths.first().map(|(p, _)| p.clone()) else {
            return Err(Error::MalformedRelation("empty relation".into()));
        };
        let (s, t) = (first.source, first.target);
        let mut rel = RelVector::zero(s, t);
        for (p, c) in paths {
            if p.source != s || p.target != t {
                return Err(Error::MalformedRelation(format!(
                    "paths `{}` and `{}` are not parallel",
                    self.spell(&first),
                    self.spell(&p)
                )));
            }
            rel.add_term(&self.field, p, &c);
        }
        if rel.is_zero() {
            return Err(Error::MalformedRelation("relation is zero".into()));
        }
        self.relations.push(rel);
        Ok(())
    }

    pub fn add_relation_vector(&mut self, rel: RelVector) -> Result<()> {
        if rel.is_zero() {
            return Err(Error::MalformedRelation("relation is zero".into()));
        }
        for (p, c) in &rel.terms {
            if p.len() < 2 {
                return Err(Error::MalformedRelation(format!(
                    "path `{}` has length {} < 2",
                    self.spell(p),
                    p.len()
                )));
            }
            if c.is_zero() || p.source != rel.source || p.target != rel.target {
                return Err(Error::MalformedRelation("bad relation vector".into()));
            }
        }
        self.relations.push(rel);
        Ok(())
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_name(&self, x: usize) -> &str {
        &self.vertices[x]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.arrows[a].name
    }

    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path> {
        let mut arrows = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            arrows.push(self.arrow_index(n).ok_or_else(|| Error::UnknownArrow(n.to_string()))?);
        }
        self.path_from_arrows(arrows)
    }

    pub fn path_from_arrows(&self, arrows: Vec<usize>) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::MalformedRelation("empty path".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::MalformedRelation(format!(
                    "arrows `{}` and `{}` do not compose",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        Ok(Path {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows,
        })
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        Path {
            source: self.arrows[a].source,
            target: self.arrows[a].target,
            arrows: vec![a],
        }
    }

    /// `b*a` style spelling; `e_x` for stationary paths.
    pub fn spell(&self, p: &Path) -> String {
        if p.is_stationary() {
            return format!("e_{}", self.vertices[p.source]);
        }
        p.arrows.iter().map(|a| self.arrows[*a].name.as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn spell_relation(&self, r: &RelVector) -> String {
        let mut out = String::new();
        for (i, (p, c)) in r.terms.iter().enumerate() {
            let s = format_scalar(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(&self.spell(p));
        }
        out
    }

    /// Deterministic path order: length, then arrow names lexicographically,
    /// then source vertex.
    pub fn path_cmp(&self, a: &Path, b: &Path) -> Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| {
                let an = a.arrows.iter().map(|x| self.arrows[*x].name.as_str());
                let bn = b.arrows.iter().map(|x| self.arrows[*x].name.as_str());
                an.cmp(bn)
            })
            .then_with(|| a.source.cmp(&b.source))
    }

    pub fn out_arrows(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |a| self.arrows[*a].source == x)
    }

    pub fn in_arrows(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |a| self.arrows[*a].target == x)
    }

    /// Connected components of the underlying graph, as a vertex labelling.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for a in &self.arrows {
                    let y = if a.source == x {
                        a.target
                    } else if a.target == x {
                        a.source
                    } else {
                        continue;
                    };
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// No oriented cycles (loops included).
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|x| indeg[*x] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for a in &self.arrows {
                if a.source == x {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        queue.push_back(a.target);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// `1 - |Q0| + |Q1|`.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.vertices.len() as i64 + self.arrows.len() as i64
    }

    /// Whether the underlying graph is a tree.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.arrows.len() + 1 == self.vertices.len()
    }

    /// Full subquiver on `keep` (in the parent's vertex order), without
    /// relations. Returns it with the vertex and arrow index maps into the
    /// parent.
    pub fn full_subquiver(&self, keep: &[usize]) -> (BoundQuiver, Vec<usize>, Vec<usize>) {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut sub = BoundQuiver::new(self.field);
        for &x in &keep {
            sub.vertices.push(self.vertices[x].clone());
        }
        let mut arrow_map = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            let (Ok(s), Ok(t)) = (keep.binary_search(&a.source), keep.binary_search(&a.target)) else {
                continue;
            };
            sub.arrows.push(Arrow {
                name: a.name.clone(),
                source: s,
                target: t,
            });
            arrow_map.push(i);
        }
        (sub, keep, arrow_map)
    }

    /// The same quiver over another field, coefficients read as rationals.
    pub fn with_field(&self, field: Field) -> Result<BoundQuiver> {
        let mut q = BoundQuiver {
            field,
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            relations: Vec::new(),
        };
        for r in &self.relations {
            let mut v = RelVector::zero(r.source, r.target);
            for (p, c) in &r.terms {
                v.add_term(&field, p.clone(), &field.from_rational(c)?);
            }
            if !v.is_zero() {
                q.relations.push(v);
            }
        }
        Ok(q)
    }

    /// Replaces the relation list; used when restricting to subquivers.
    pub fn with_relations(mut self, relations: Vec<RelVector>) -> BoundQuiver {
        self.relations = relations;
        self
    }
}

impl fmt::Display for BoundQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field != Field::Rational {
            writeln!(f, "field {}", self.field)?;
        }
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for a in &self.arrows {
            writeln!(f, "arrow {} {} {}", a.name, self.vertices[a.source], self.vertices[a.target])?;
        }
        for r in &self.relations {
            writeln!(f, "rel {}", self.spell_relation(r))?;
        }
        Ok(())
    }
}
