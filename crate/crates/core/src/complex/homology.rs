//! Cellular homology and cohomology with coefficients in `ℤ`, `ℚ`, `𝔽_p`
//! or `ℤ/m`, by Smith normal form of the boundary matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::cells::CellComplex;
use crate::error::{Error, Result};
use crate::field::{is_prime, Field};
use crate::linalg::IntMatrix;
use crate::snf::{bigint_json, smith_invariants, SmithInvariants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Z,
    Q,
    Fp(u64),
    Zmod(u64),
}

impl Coefficient {
    /// The coefficient field, if it is one.
    pub fn field(&self) -> Option<Field> {
        match self {
            Coefficient::Q => Some(Field::Rational),
            Coefficient::Fp(p) => Some(Field::Prime(*p)),
            _ => None,
        }
    }
}

impl From<Field> for Coefficient {
    fn from(f: Field) -> Self {
        match f {
            Field::Rational => Coefficient::Q,
            Field::Prime(p) => Coefficient::Fp(p),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Z => write!(f, "Z"),
            Coefficient::Q => write!(f, "Q"),
            Coefficient::Fp(p) => write!(f, "Fp:{p}"),
            Coefficient::Zmod(m) => write!(f, "Zmod:{m}"),
        }
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidField(s.to_string());
        match s {
            "Z" => return Ok(Coefficient::Z),
            "Q" => return Ok(Coefficient::Q),
            _ => {}
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p.parse().map_err(|_| bad())?;
            return if is_prime(p) { Ok(Coefficient::Fp(p)) } else { Err(bad()) };
        }
        if let Some(m) = s.strip_prefix("Zmod:") {
            let m: u64 = m.parse().map_err(|_| bad())?;
            return if m >= 2 { Ok(Coefficient::Zmod(m)) } else { Err(bad()) };
        }
        Err(bad())
    }
}

/// One degree: a free part of the given rank plus cyclic torsion summands.
/// Over a field `rank` is the dimension; over `ℤ/m` every summand,
/// including the full `ℤ/m` ones, is listed in `torsion`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Group {
    pub fn free(rank: usize) -> Group {
        Group { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// `[rank, [divisors]]`
    pub fn to_json(&self) -> serde_json::Value {
        let t: Vec<_> = self.torsion.iter().map(bigint_json).collect();
        serde_json::json!([self.rank, t])
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub coefficient: Coefficient,
    pub cohomology: bool,
    pub groups: Vec<Group>,
}

impl HomologyResult {
    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    /// `{"H0": [rank, [divisors]], ...}`, or `H^0`, ... for cohomology.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (i, g) in self.groups.iter().enumerate() {
            let key = if self.cohomology { format!("H^{i}") } else { format!("H{i}") };
            m.insert(key, g.to_json());
        }
        serde_json::Value::Object(m)
    }

    /// `Σ (-1)^i rank_i`
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(i, g)| if i % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }
}

impl Serialize for HomologyResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// A finite free complex `C_0, ..., C_top` given by its sizes and, for each
/// degree, the Smith invariants of the outgoing and incoming differential.
struct Graded {
    sizes: Vec<usize>,
    outgoing: Vec<SmithInvariants>,
    incoming: Vec<SmithInvariants>,
}

impl Graded {
    fn integral(&self, i: usize) -> Group {
        Group {
            rank: self.sizes[i] - self.outgoing[i].rank - self.incoming[i].rank,
            torsion: self.incoming[i].torsion(),
        }
    }

    fn over_field(&self, i: usize, p: Option<u64>) -> Group {
        let r = |s: &SmithInvariants| match p {
            None => s.rank,
            Some(p) => s.rank_mod(p),
        };
        Group::free(self.sizes[i] - r(&self.outgoing[i]) - r(&self.incoming[i]))
    }

    /// `H_i ⊗ ℤ/m ⊕ Tor(H_next, ℤ/m)`, `next` the degree the differential
    /// points to.
    fn mod_m(&self, i: usize, next: Option<usize>, m: u64) -> Group {
        let m = BigInt::from(m);
        let h = self.integral(i);
        let mut torsion = vec![m.clone(); h.rank];
        torsion.extend(h.torsion.iter().map(|d| d.gcd(&m)));
        if let Some(j) = next {
            torsion.extend(self.integral(j).torsion.iter().map(|d| d.gcd(&m)));
        }
        torsion.retain(|d| !d.is_one());
        torsion.sort();
        Group { rank: 0, torsion }
    }

    fn compute(&self, coefficient: Coefficient, cohomology: bool) -> Vec<Group> {
        let top = self.sizes.len();
        (0..top)
            .map(|i| match coefficient {
                Coefficient::Z => self.integral(i),
                Coefficient::Q => self.over_field(i, None),
                Coefficient::Fp(p) => self.over_field(i, Some(p)),
                Coefficient::Zmod(m) => {
                    let next = if cohomology {
                        (i + 1 < top).then_some(i + 1)
                    } else {
                        i.checked_sub(1)
                    };
                    self.mod_m(i, next, m)
                }
            })
            .collect()
    }
}

fn cell_boundaries(cx: &CellComplex) -> Vec<IntMatrix> {
    (0..=cx.dim() + 1).map(|n| cx.boundary(n)).collect()
}

fn sizes(boundaries: &[IntMatrix]) -> Vec<usize> {
    boundaries[..boundaries.len() - 1].iter().map(IntMatrix::ncols).collect()
}

/// Homology of `0 ← C_0 ← C_1 ← ... ← C_top ← 0` given `boundaries[n]:
/// C_n → C_{n-1}` for `n = 0..=top+1` (the outer two empty).
pub fn chain_homology(boundaries: &[IntMatrix], coefficient: Coefficient) -> HomologyResult {
    let sizes = sizes(boundaries);
    let inv: Vec<SmithInvariants> = boundaries.iter().map(smith_invariants).collect();
    let g = Graded {
        outgoing: (0..sizes.len()).map(|n| inv[n].clone()).collect(),
        incoming: (0..sizes.len()).map(|n| inv[n + 1].clone()).collect(),
        sizes,
    };
    HomologyResult {
        coefficient,
        cohomology: false,
        groups: g.compute(coefficient, false),
    }
}

/// Cohomology of the dual complex, coboundaries `boundaries[n+1]ᵀ`.
pub fn chain_cohomology(boundaries: &[IntMatrix], coefficient: Coefficient) -> HomologyResult {
    let sizes = sizes(boundaries);
    let inv: Vec<SmithInvariants> = boundaries.iter().map(|m| smith_invariants(&m.transpose())).collect();
    let g = Graded {
        outgoing: (0..sizes.len()).map(|n| inv[n + 1].clone()).collect(),
        incoming: (0..sizes.len()).map(|n| inv[n].clone()).collect(),
        sizes,
    };
    HomologyResult {
        coefficient,
        cohomology: true,
        groups: g.compute(coefficient, true),
    }
}

/// `H_i(cx; coefficient)` for `i = 0..=dim`.
pub fn homology(cx: &CellComplex, coefficient: Coefficient) -> HomologyResult {
    chain_homology(&cell_boundaries(cx), coefficient)
}

/// `H^i(cx; coefficient)`.
pub fn cohomology(cx: &CellComplex, coefficient: Coefficient) -> HomologyResult {
    chain_cohomology(&cell_boundaries(cx), coefficient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::dsl::parse_quiver;
    use crate::homotopy::{
        default_depth_bound, minimal_relation_supports, natural_homotopy_classes, walk_homotopy_classes, DEFAULT_STATE_BUDGET,
    };
    use crate::paths::{PathTable, DEFAULT_PATH_CAP};

    fn complexes(src: &str) -> (CellComplex, CellComplex) {
        let pt = PathTable::build(&parse_quiver(src).unwrap(), DEFAULT_PATH_CAP).unwrap();
        let mrs = minimal_relation_supports(&pt, 12).unwrap().relations;
        let nat = natural_homotopy_classes(&pt, &mrs);
        let walk = walk_homotopy_classes(&pt, &mrs, &nat, default_depth_bound(&pt), DEFAULT_STATE_BUDGET);
        (build_complex(&pt, &nat, None), build_complex(&pt, &walk, None))
    }

    fn z(groups: &[(usize, &[i64])]) -> Vec<Group> {
        groups
            .iter()
            .map(|(r, t)| Group {
                rank: *r,
                torsion: t.iter().map(|d| BigInt::from(*d)).collect(),
            })
            .collect()
    }

    const RP2: &str = "arrow a1 3 2\narrow b1 3 2\narrow a2 2 1\narrow b2 2 1\nrel a1*a2 - b1*b2\nrel a1*b2 - b1*a2\n";
    const NOSN: &str = "arrow a1 x1 x2\narrow b1 x1 x2\narrow a2 x2 x3\narrow b2 x2 x3\n\
                        rel a1*b2 + b1*b2 - b1*a2\nrel a1*a2 + b1*a2 - b1*b2\n";

    #[test]
    fn rp2_homology_and_cohomology() {
        let (cx, _) = complexes(RP2);
        assert_eq!(cx.counts(), vec![3, 6, 4]);
        assert_eq!(homology(&cx, Coefficient::Z).groups, z(&[(1, &[]), (0, &[2]), (0, &[])]));
        assert_eq!(cohomology(&cx, Coefficient::Q).ranks(), vec![1, 0, 0]);
        assert_eq!(cohomology(&cx, Coefficient::Fp(2)).ranks(), vec![1, 1, 1]);
        assert_eq!(cohomology(&cx, Coefficient::Z).groups, z(&[(1, &[]), (0, &[]), (0, &[2])]));
        assert_eq!(homology(&cx, Coefficient::Zmod(4)).groups, z(&[(0, &[4]), (0, &[2]), (0, &[2])]));
        assert_eq!(cohomology(&cx, Coefficient::Zmod(2)).groups, z(&[(0, &[2]), (0, &[2]), (0, &[2])]));
        assert!(smith_invariants(&cx.boundary(2)).torsion().contains(&BigInt::from(2)));
    }

    #[test]
    fn nosn_homology() {
        let (nat, walk) = complexes(NOSN);
        assert_eq!(homology(&nat, Coefficient::Z).groups, z(&[(1, &[]), (0, &[]), (1, &[])]));
        assert_eq!(walk.counts(), vec![3, 3, 1]);
        assert_eq!(homology(&walk, Coefficient::Z).groups, z(&[(1, &[]), (0, &[]), (0, &[])]));
    }

    #[test]
    fn euler_identity() {
        for src in [RP2, NOSN] {
            let (cx, _) = complexes(src);
            assert_eq!(homology(&cx, Coefficient::Q).euler_characteristic(), cx.euler_characteristic());
            assert_eq!(homology(&cx, Coefficient::Z).euler_characteristic(), cx.euler_characteristic());
        }
    }

    #[test]
    fn components_in_degree_zero() {
        let (cx, _) = complexes("arrow a 1 2\narrow b 3 4\nvertex 5\n");
        assert_eq!(cohomology(&cx, Coefficient::Z).groups[0], Group::free(3));
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("Fp:7".parse::<Coefficient>().unwrap(), Coefficient::Fp(7));
        assert_eq!("Zmod:6".parse::<Coefficient>().unwrap(), Coefficient::Zmod(6));
        assert!("Fp:6".parse::<Coefficient>().is_err());
        assert!("R".parse::<Coefficient>().is_err());
        assert_eq!(Coefficient::Zmod(6).to_string(), "Zmod:6");
    }

    #[test]
    fn json_shape() {
        let (cx, _) = complexes(RP2);
        let j = homology(&cx, Coefficient::Z).to_json();
        assert_eq!(j.to_string(), r#"{"H0":[1,[]],"H1":[0,[2]],"H2":[0,[]]}"#);
    }
}
