//! Cells and face maps of `ℬ(Q, I)` and `ℬ♯(Q, I)`.
//!
//! An `n`-cell is a tuple of non-identity path classes `(σ̃_1, ..., σ̃_n)`
//! having representatives whose composite is a nonzero path. Cells are
//! found by cutting every nonzero path into `n` non-stationary pieces; the
//! first witnessing factorisation is kept. Faces: `∂_0` drops the first
//! class, `∂_n` the last, `∂_i` replaces `σ̃_i, σ̃_{i+1}` by the class of
//! their product. A 1-cell has `∂_0` its target and `∂_1` its source.

use std::collections::HashMap;

use crate::homotopy::{PathClassTable, Variant};
use crate::linalg::IntMatrix;
use crate::paths::PathTable;
use crate::quiver::Path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Class ids; empty for a 0-cell.
    pub classes: Vec<usize>,
    pub source: usize,
    pub target: usize,
    /// Nonzero path realising the cell.
    pub witness: usize,
    /// Representatives of the classes whose composite is the witness.
    pub parts: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CellComplex {
    pub variant: Variant,
    /// Inherited from a truncated walk class table.
    pub caveat: bool,
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    boundaries: Vec<IntMatrix>,
}

fn subpath(pt: &PathTable, arrows: &[usize]) -> usize {
    let q = pt.quiver();
    let p = Path {
        source: q.arrows()[arrows[0]].source,
        target: q.arrows()[*arrows.last().unwrap()].target,
        arrows: arrows.to_vec(),
    };
    pt.path_id(&p).expect("subpaths of table paths are in the table")
}

/// Builds the cell complex over `classes`, up to dimension `max_dim`.
pub fn build_complex(pt: &PathTable, classes: &PathClassTable, max_dim: Option<usize>) -> CellComplex {
    let q = pt.quiver();
    let limit = max_dim.unwrap_or(usize::MAX);
    let mut found: Vec<HashMap<Vec<usize>, Cell>> = vec![HashMap::new()];
    for (id, p) in pt.paths().iter().enumerate() {
        if p.is_stationary() || pt.is_zero_path(id) {
            continue;
        }
        let len = p.len();
        for mask in 0u64..(1u64 << (len - 1)) {
            let n = mask.count_ones() as usize + 1;
            if n > limit {
                continue;
            }
            let mut parts = Vec::with_capacity(n);
            let mut start = 0;
            for k in 1..=len {
                if k == len || mask & (1 << (k - 1)) != 0 {
                    parts.push(subpath(pt, &p.arrows[start..k]));
                    start = k;
                }
            }
            let cls: Vec<usize> = parts.iter().map(|s| classes.class_of(*s)).collect();
            if cls.iter().any(|c| classes.class(*c).identity) {
                continue;
            }
            while found.len() <= n {
                found.push(HashMap::new());
            }
            found[n].entry(cls.clone()).or_insert(Cell {
                classes: cls,
                source: p.source,
                target: p.target,
                witness: id,
                parts,
            });
        }
    }
    while found.len() > 1 && found.last().unwrap().is_empty() {
        found.pop();
    }
    let mut cells: Vec<Vec<Cell>> = vec![(0..q.vertex_count())
        .map(|x| Cell {
            classes: Vec::new(),
            source: x,
            target: x,
            witness: pt.stationary_id(x),
            parts: Vec::new(),
        })
        .collect()];
    for level in found.into_iter().skip(1) {
        let mut v: Vec<Cell> = level.into_values().collect();
        v.sort_by(|a, b| a.classes.cmp(&b.classes));
        cells.push(v);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = cells
        .iter()
        .enumerate()
        .map(|(n, cs)| {
            if n == 0 {
                HashMap::new()
            } else {
                cs.iter().enumerate().map(|(i, c)| (c.classes.clone(), i)).collect()
            }
        })
        .collect();
    let mut faces: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); cells[0].len()]];
    for n in 1..cells.len() {
        let level = cells[n]
            .iter()
            .map(|c| {
                if n == 1 {
                    return vec![c.target, c.source];
                }
                (0..=n)
                    .map(|i| {
                        let face: Vec<usize> = if i == 0 {
                            c.classes[1..].to_vec()
                        } else if i == n {
                            c.classes[..n - 1].to_vec()
                        } else {
                            let prod = pt
                                .compose(c.parts[i - 1], c.parts[i])
                                .expect("factor of a nonzero path is in the table");
                            let mut f = c.classes[..i - 1].to_vec();
                            f.push(classes.class_of(prod));
                            f.extend_from_slice(&c.classes[i + 1..]);
                            f
                        };
                        *index[n - 1].get(&face).expect("every face of a cell is a cell")
                    })
                    .collect()
            })
            .collect();
        faces.push(level);
    }
    let mut boundaries = vec![IntMatrix::zeros(0, cells[0].len())];
    for n in 1..cells.len() {
        let mut m = IntMatrix::zeros(cells[n - 1].len(), cells[n].len());
        for (j, fs) in faces[n].iter().enumerate() {
            for (i, f) in fs.iter().enumerate() {
                m.add_entry(*f, j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        boundaries.push(m);
    }
    boundaries.push(IntMatrix::zeros(cells.last().unwrap().len(), 0));
    CellComplex {
        variant: classes.variant,
        caveat: classes.caveat,
        cells,
        index,
        faces,
        boundaries,
    }
}

impl CellComplex {
    /// Highest dimension carrying a cell.
    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.cells.get(n).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cells(&self, n: usize) -> &[Cell] {
        self.cells.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn cell(&self, n: usize, i: usize) -> &Cell {
        &self.cells[n][i]
    }

    /// Index of the `n`-cell with these classes (`n ≥ 1`).
    pub fn find(&self, classes: &[usize]) -> Option<usize> {
        self.index.get(classes.len())?.get(classes).copied()
    }

    /// `∂_0, ..., ∂_n` of an `n`-cell as indices of `(n-1)`-cells.
    pub fn faces(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    /// `δ_n`, rows the `(n-1)`-cells and columns the `n`-cells. Zero
    /// outside `1..=dim`.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        match self.boundaries.get(n) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.count(n - 1), 0),
        }
    }

    /// `Σ (-1)^n |C_n|`
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }

    pub fn spell_cell(&self, pt: &PathTable, classes: &PathClassTable, n: usize, i: usize) -> String {
        let c = &self.cells[n][i];
        if n == 0 {
            return pt.quiver().vertex_name(c.source).to_string();
        }
        let parts: Vec<String> = c.classes.iter().map(|k| classes.spell(pt, *k)).collect();
        format!("({})", parts.join(", "))
    }

    /// First violation of `∂_i ∂_j = ∂_{j-1} ∂_i` for `i < j` on cells of
    /// dimension at least 2, as `(n, cell, i, j)`.
    pub fn face_identity_violation(&self) -> Option<(usize, usize, usize, usize)> {
        for n in 2..self.cells.len() {
            for (c, fs) in self.faces[n].iter().enumerate() {
                for j in 1..=n {
                    for i in 0..j {
                        if self.faces[n - 1][fs[j]][i] != self.faces[n - 1][fs[i]][j - 1] {
                            return Some((n, c, i, j));
                        }
                    }
                }
            }
        }
        None
    }

    /// `true` when `δ_{n-1} δ_n = 0` for all `n`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.cells.len()).all(|n| self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero())
    }
}
