//! Cellular cochains and the cup product
//! `(f ⌣ g)(σ̃_1, ..., σ̃_{p+q}) = f(σ̃_1, ..., σ̃_p) · g(σ̃_{p+1}, ..., σ̃_{p+q})`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::cells::CellComplex;
use super::homology::Coefficient;
use crate::field::Scalar;

/// Values on the `n`-cells, in cell order.
pub type Cochain = Vec<Scalar>;

/// Reduces a value into the coefficient ring.
pub fn reduce(coefficient: Coefficient, x: Scalar) -> Scalar {
    match coefficient {
        Coefficient::Z | Coefficient::Q => x,
        Coefficient::Fp(p) => crate::field::Field::Prime(p).normalize(x),
        Coefficient::Zmod(m) => {
            assert!(x.is_integer(), "Z/m values must be integers");
            Scalar::from_integer(x.to_integer().mod_floor(&BigInt::from(m)))
        }
    }
}

/// Index of the cell formed by classes `lo..hi` of an `n`-cell. An empty
/// range is the source vertex at the front and the target at the back.
fn sub_cell(cx: &CellComplex, n: usize, i: usize, lo: usize, hi: usize) -> usize {
    let c = cx.cell(n, i);
    if lo == hi {
        return if lo == 0 { c.source } else { c.target };
    }
    cx.find(&c.classes[lo..hi]).expect("sub-tuples of cells are cells")
}

/// `f ⌣ g` for a `p`-cochain `f` and a `q`-cochain `g`.
pub fn cup_product(cx: &CellComplex, p: usize, f: &[Scalar], q: usize, g: &[Scalar], coefficient: Coefficient) -> Cochain {
    assert_eq!(f.len(), cx.count(p), "f is not a {p}-cochain");
    assert_eq!(g.len(), cx.count(q), "g is not a {q}-cochain");
    let n = p + q;
    (0..cx.count(n))
        .map(|i| {
            let a = &f[sub_cell(cx, n, i, 0, p)];
            if a.is_zero() {
                return Scalar::zero();
            }
            let b = &g[sub_cell(cx, n, i, p, n)];
            reduce(coefficient, a * b)
        })
        .collect()
}

/// `(δf)(c) = Σ (-1)^i f(∂_i c)` for a `p`-cochain `f`.
pub fn coboundary(cx: &CellComplex, p: usize, f: &[Scalar], coefficient: Coefficient) -> Cochain {
    assert_eq!(f.len(), cx.count(p), "f is not a {p}-cochain");
    (0..cx.count(p + 1))
        .map(|i| {
            let mut acc = Scalar::zero();
            for (k, face) in cx.faces(p + 1, i).iter().enumerate() {
                if k % 2 == 0 {
                    acc += &f[*face];
                } else {
                    acc -= &f[*face];
                }
            }
            reduce(coefficient, acc)
        })
        .collect()
}
