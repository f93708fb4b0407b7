//! Helpers shared by the integration suites: corpus access, a seeded random
//! bound quiver generator and the property checks run over it.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use bqtop_core::algcohom::{epsilon_mu, hochschild_complex, simplicial_complex};
use bqtop_core::complex::{homology, Coefficient, HomologyResult};
use bqtop_core::homotopy::{abelianization, pi1_presentation};
use bqtop_core::report::{Analysis, Config};
use bqtop_core::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_b001;
pub const CASES: usize = 240;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus_path(file: &str) -> PathBuf {
    corpus_dir().join(file)
}

pub fn corpus(file: &str) -> String {
    std::fs::read_to_string(corpus_path(file)).unwrap_or_else(|e| panic!("{file}: {e}"))
}

pub fn analyze(file: &str) -> Analysis {
    Analysis::from_text(file, &corpus(file), Config::default()).unwrap_or_else(|e| panic!("{file}: {e}"))
}

/// Every `.bq` file in the corpus, sorted by name.
pub fn corpus_quivers() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(".bq"))
        .collect();
    names.sort();
    names
}

/// `[rank_0, rank_1, ...]` with torsion divisors, as printed by the CLI.
pub fn groups(h: &HomologyResult) -> Vec<(usize, Vec<i64>)> {
    h.groups
        .iter()
        .map(|g| (g.rank, g.torsion.iter().map(|d| i64::try_from(d).unwrap()).collect()))
        .collect()
}

/// Ranks of a graph: `(components, cycle rank)` by union-find.
pub fn graph_ranks(vertices: usize, edges: &[(usize, usize)]) -> (usize, usize) {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut components = vertices;
    for &(s, t) in edges {
        let (a, b) = (root(&mut parent, s), root(&mut parent, t));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    (components, edges.len() + components - vertices)
}

/// A generated bound quiver in `.bq` text with its underlying graph.
#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub text: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub monomial: bool,
}

fn paths_from(arrows: &[(usize, usize)], x: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    for (i, &(s, t)) in arrows.iter().enumerate() {
        if s == x {
            prefix.push(i);
            if prefix.len() >= 2 {
                out.push(prefix.clone());
            }
            paths_from(arrows, t, prefix, out);
            prefix.pop();
        }
    }
}

fn spell(p: &[usize]) -> String {
    p.iter().map(|a| format!("a{a}")).collect::<Vec<_>>().join("*")
}

/// A connected acyclic quiver on 2 to 6 vertices with random relations.
/// Monomial cases only get zero relations.
pub fn random_case(rng: &mut ChaCha8Rng, index: usize, monomial: bool) -> Case {
    let n = rng.gen_range(2..=6);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|k| (rng.gen_range(0..k), k)).collect();
    for _ in 0..rng.gen_range(0..=3) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            edges.push((i.min(j), i.max(j)));
        }
    }
    edges.shuffle(rng);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut text = String::new();
    for (i, &(s, t)) in edges.iter().enumerate() {
        text += &format!("arrow a{i} v{} v{}\n", label[s], label[t]);
    }
    let mut long = Vec::new();
    for x in 0..n {
        paths_from(&edges, x, &mut Vec::new(), &mut long);
    }
    let zero_rate = if monomial { 0.35 } else { 0.15 };
    for p in &long {
        if rng.gen_bool(zero_rate) {
            text += &format!("rel {}\n", spell(p));
        }
    }
    if !monomial {
        let mut parallel: BTreeMap<(usize, usize), Vec<&Vec<usize>>> = BTreeMap::new();
        for p in &long {
            parallel.entry((edges[p[0]].0, edges[*p.last().unwrap()].1)).or_default().push(p);
        }
        for ps in parallel.values().filter(|ps| ps.len() >= 2) {
            if rng.gen_bool(0.6) {
                let c = ["- ", "+ ", "- 2*"][rng.gen_range(0..3)];
                text += &format!("rel {} {c}{}\n", spell(ps[0]), spell(ps[1]));
            }
        }
    }
    Case {
        name: format!("case{index}"),
        text,
        vertices: n,
        edges,
        monomial,
    }
}

/// `count` cases from `seed`, every third one monomial.
pub fn random_cases(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_case(&mut rng, i, i % 3 == 0)).collect()
}

/// Monomial cases only.
pub fn monomial_cases(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_case(&mut rng, i, true)).collect()
}

/// Tally of one property over many inputs.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: &'static str,
    pub passed: usize,
    pub total: usize,
    pub failure: Option<String>,
}

impl Check {
    pub fn new(label: &'static str) -> Check {
        Check {
            label,
            passed: 0,
            total: 0,
            failure: None,
        }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    pub fn holds(&self) -> bool {
        self.passed == self.total && self.total > 0
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}/{}", self.label, self.passed, self.total)?;
        if let Some(w) = &self.failure {
            write!(f, " (first failure: {w})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Suite {
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl Suite {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(Check::holds) && self.elapsed < Duration::from_secs(60)
    }

    pub fn summary(&self) -> String {
        let parts: Vec<String> = self.checks.iter().map(ToString::to_string).collect();
        format!("{} in {:.1}s: {}", self.name, self.elapsed.as_secs_f64(), parts.join("; "))
    }
}

fn trimmed(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Boundary squares and Euler characteristics of ℬ, ℬ♯, SC and the Cibils complex.
pub fn complexes_suite(cases: &[Case]) -> Suite {
    let start = Instant::now();
    let mut delta = Check::new("cellular d^2=0");
    let mut d = Check::new("simplicial d^2=0");
    let mut b = Check::new("Hochschild b^2=0");
    let mut euler = Check::new("Euler characteristic");
    for c in cases {
        let a = Analysis::from_text(&c.name, &c.text, Config::default()).unwrap();
        for sharp in [false, true] {
            let cx = a.complex(sharp, None);
            delta.record(cx.boundary_squares_to_zero(), || c.name.clone());
            let h = homology(&cx, Coefficient::Q);
            euler.record(h.euler_characteristic() == cx.euler_characteristic(), || c.name.clone());
        }
        let alg = match a.semi_normed_basis() {
            Ok(alg) => alg,
            Err(Error::NoSemiNormedBasis(_)) => continue,
            Err(e) => panic!("{}: {e}", c.name),
        };
        let sc = simplicial_complex(&alg);
        d.record(sc.boundary_squares_to_zero(), || c.name.clone());
        let counts = sc.counts();
        let chi: i64 = counts
            .iter()
            .enumerate()
            .map(|(i, n)| if i % 2 == 0 { *n as i64 } else { -(*n as i64) })
            .sum();
        euler.record(sc.homology(Coefficient::Q).euler_characteristic() == chi, || c.name.clone());
        b.record(hochschild_complex(&alg).coboundary_squares_to_zero(), || c.name.clone());
    }
    Suite {
        name: "complexes",
        checks: vec![delta, d, b, euler],
        elapsed: start.elapsed(),
    }
}

/// The comparison maps between SC and the Cibils complex.
pub fn comparison_suite(cases: &[Case]) -> Suite {
    let start = Instant::now();
    let mut me = Check::new("mu eps = id");
    let mut eps = Check::new("eps chain map");
    let mut mu = Check::new("schurian => mu chain map");
    let mut em = Check::new("schurian + semi-commutative => eps mu = id, SH = HH");
    for c in cases {
        let a = Analysis::from_text(&c.name, &c.text, Config::default()).unwrap();
        let Ok(alg) = a.semi_normed_basis() else { continue };
        let sc = simplicial_complex(&alg);
        let hc = hochschild_complex(&alg);
        let r = epsilon_mu(&a.paths, &alg, &sc, &hc).unwrap().report;
        me.record(r.mu_epsilon_identity, || c.name.clone());
        eps.record(r.epsilon_chain_map, || c.name.clone());
        if r.schurian {
            mu.record(r.mu_chain_map, || c.name.clone());
            if r.semi_commutative {
                em.record(r.epsilon_mu_identity && trimmed(&r.sh) == trimmed(&r.hh), || c.name.clone());
            }
        }
    }
    Suite {
        name: "comparison",
        checks: vec![me, eps, mu, em],
        elapsed: start.elapsed(),
    }
}

/// Monomial bound quivers against the graph of `Q`.
pub fn monomial_suite(cases: &[Case]) -> Suite {
    let start = Instant::now();
    let mut hom = Check::new("monomial => graph homology");
    let mut pi = Check::new("monomial => free abelianized pi1");
    for c in cases.iter().filter(|c| c.monomial) {
        let a = Analysis::from_text(&c.name, &c.text, Config::default()).unwrap();
        let (components, cycles) = graph_ranks(c.vertices, &c.edges);
        let h = groups(&homology(&a.complex(false, None), Coefficient::Z));
        let mut expected = vec![(components, vec![]), (cycles, vec![])];
        let mut got = h.clone();
        got.resize(2.max(got.len()), (0, vec![]));
        expected.resize(got.len(), (0, vec![]));
        hom.record(got == expected, || format!("{}: {h:?}", c.name));
        let p = abelianization(&pi1_presentation(&a.paths, &a.minimal.relations, None).unwrap());
        pi.record(p.rank == cycles && p.torsion.is_empty(), || format!("{}: {p:?}", c.name));
    }
    Suite {
        name: "monomial",
        checks: vec![hom, pi],
        elapsed: start.elapsed(),
    }
}

/// `H₁(ℬ)` against the abelianized presentation of `π₁` over the corpus.
pub fn corpus_suite() -> Suite {
    let start = Instant::now();
    let mut h1 = Check::new("H1 = abelianized pi1");
    let mut euler = Check::new("Euler characteristic");
    for file in corpus_quivers() {
        let a = analyze(&file);
        let cx = a.complex(false, None);
        let h = homology(&cx, Coefficient::Z);
        euler.record(h.euler_characteristic() == cx.euler_characteristic(), || file.clone());
        let g = h.groups.get(1).cloned().unwrap_or_else(|| bqtop_core::complex::Group::free(0));
        let p = abelianization(&pi1_presentation(&a.paths, &a.minimal.relations, None).unwrap());
        h1.record(g.rank == p.rank && g.torsion == p.torsion, || format!("{file}: {g} vs {p:?}"));
    }
    Suite {
        name: "corpus",
        checks: vec![h1, euler],
        elapsed: start.elapsed(),
    }
}

pub const FAMILY: [&str; 5] = [
    "family_tree1.bq",
    "family_tree2.bq",
    "family_cycle1.bq",
    "family_cycle2.bq",
    "family_cycle3.bq",
];

fn is_subpath(a: &[usize], b: &[usize]) -> bool {
    a.len() <= b.len() && b.windows(a.len()).any(|w| w == a)
}

/// Every monomial ideal of `file`'s quiver, as `.bq` texts. Ideals are
/// listed by their minimal generators: sets of paths of length at least two
/// with none a subpath of another.
pub fn monomial_ideals(file: &str) -> Vec<String> {
    let q = bqtop_core::dsl::parse_quiver(&corpus(file)).unwrap();
    let edges: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
    let mut long = Vec::new();
    for x in 0..q.vertex_count() {
        paths_from(&edges, x, &mut Vec::new(), &mut long);
    }
    let arrows: String = q
        .arrows()
        .iter()
        .map(|a| format!("arrow {} {} {}\n", a.name, q.vertex_name(a.source), q.vertex_name(a.target)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << long.len()) {
        let chosen: Vec<&Vec<usize>> = (0..long.len()).filter(|i| mask >> i & 1 == 1).map(|i| &long[i]).collect();
        let antichain = chosen
            .iter()
            .all(|a| chosen.iter().all(|b| std::ptr::eq(*a, *b) || !is_subpath(a, b)));
        if antichain {
            let rels: String = chosen
                .iter()
                .map(|p| format!("rel {}\n", p.iter().map(|a| q.arrow_name(*a)).collect::<Vec<_>>().join("*")))
                .collect();
            out.push(format!("{arrows}{rels}"));
        }
    }
    out
}

/// Hochschild cohomology of monomial algebras on trees and on quivers with cycles.
pub fn family_suite() -> Suite {
    let start = Instant::now();
    let mut tree = Check::new("tree <=> HH1=0 <=> HHi=0 for i>0");
    let mut chi = Check::new("schurian semi-commutative => dim HH1 = chi(Q)");
    for file in FAMILY {
        let q = bqtop_core::dsl::parse_quiver(&corpus(file)).unwrap();
        let edges: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
        let (_, cycles) = graph_ranks(q.vertex_count(), &edges);
        for (i, text) in monomial_ideals(file).iter().enumerate() {
            let name = format!("{file}#{i}");
            let a = Analysis::from_text(&name, text, Config::default()).unwrap();
            let props = bqtop_core::properties::algebra_properties(&a.paths);
            assert!(props.monomial, "{name}");
            let hh = hochschild_complex(&a.semi_normed_basis().unwrap()).hh_dims();
            let h1 = hh.get(1).copied().unwrap_or(0);
            let higher_zero = hh.iter().skip(1).all(|d| *d == 0);
            tree.record((cycles == 0) == (h1 == 0) && (h1 == 0) == higher_zero, || {
                format!("{name}: HH {hh:?}")
            });
            if props.schurian && props.semi_commutative {
                let expected = usize::try_from(props.euler_characteristic).unwrap();
                chi.record(h1 == expected, || format!("{name}: HH {hh:?}, chi {expected}"));
            }
        }
    }
    Suite {
        name: "monomial family",
        checks: vec![tree, chi],
        elapsed: start.elapsed(),
    }
}
