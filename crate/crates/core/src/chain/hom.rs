//! The internal hom complex.
//!
//! `Hom(A, B)_n = ⊕_i Hom(A_i, B_{i+n})`, components in increasing `i`, each
//! matrix flattened row-major. The differential is `dφ = d_B φ - (-1)^n φ d_A`,
//! so degree-0 cycles are exactly the chain maps `A -> B`.

use super::{ChainComplex, ChainMap};
use crate::linalg::Matrix;

/// Offset of the `Hom(A_i, B_{i+n})` block inside `Hom(A, B)_n`.
pub fn hom_offset(a: &ChainComplex, b: &ChainComplex, n: i32, i: i32) -> usize {
    (a.lo()..i).map(|k| a.dim(k) * b.dim(k + n)).sum()
}

fn hom_dim(a: &ChainComplex, b: &ChainComplex, n: i32) -> usize {
    a.degrees().map(|k| a.dim(k) * b.dim(k + n)).sum()
}

pub fn hom_complex(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    assert_eq!(a.p(), b.p());
    let p = a.p();
    let lo = b.lo() - a.hi();
    let hi = b.hi() - a.lo();
    let dim = |n: i32| hom_dim(a, b, n);
    ChainComplex::from_fn(p, lo, hi, &dim, &|n| {
        let rows = if n > lo { dim(n - 1) } else { 0 };
        let mut m = Matrix::zeros(p, rows, dim(n));
        if n == lo {
            return m;
        }
        let s = if n.rem_euclid(2) == 0 { p - 1 } else { 1 };
        for i in a.degrees() {
            let (ai, bi) = (a.dim(i), b.dim(i + n));
            if ai * bi == 0 {
                continue;
            }
            let col = hom_offset(a, b, n, i);
            if b.dim(i + n - 1) > 0 {
                let blk = b.diff(i + n).kron(&Matrix::identity(p, ai));
                m.add_block(hom_offset(a, b, n - 1, i), col, &blk);
            }
            if a.dim(i + 1) > 0 && i < a.hi() {
                let blk = Matrix::identity(p, bi).kron(&a.diff(i + 1).transpose()).scale(s);
                m.add_block(hom_offset(a, b, n - 1, i + 1), col, &blk);
            }
        }
        m
    })
}

/// A chain map as a degree-0 cycle (column vector) of `Hom(A, B)`.
pub fn map_to_hom_cycle(f: &ChainMap) -> Matrix {
    let (a, b) = (f.src(), f.dst());
    let mut v = Matrix::zeros(f.p(), hom_dim(a, b, 0), 1);
    for i in a.degrees() {
        let off = hom_offset(a, b, 0, i);
        for (k, &x) in f.comp(i).vectorize().iter().enumerate() {
            v.set(off + k, 0, x);
        }
    }
    v
}

/// Inverse of [`map_to_hom_cycle`]; the result need not commute with `d`
/// unless the vector is a cycle.
pub fn hom_cycle_to_map(a: &ChainComplex, b: &ChainComplex, v: &Matrix) -> ChainMap {
    ChainMap::from_fn(a, b, |i| {
        if i < a.lo() || i > a.hi() {
            return Matrix::zeros(a.p(), b.dim(i), a.dim(i));
        }
        let off = hom_offset(a, b, 0, i);
        let entries: Vec<u64> = (0..a.dim(i) * b.dim(i)).map(|k| v.get(off + k, 0)).collect();
        Matrix::from_vec(a.p(), b.dim(i), a.dim(i), &entries)
    })
}

/// `g_*: Hom(A, B) -> Hom(A, B')`, `φ ↦ g φ`.
pub fn post_compose(g: &ChainMap, a: &ChainComplex) -> ChainMap {
    let (b, b2) = (g.src(), g.dst());
    let src = hom_complex(a, b);
    let dst = hom_complex(a, b2);
    let p = a.p();
    ChainMap::from_fn(&src, &dst, |n| {
        let mut m = Matrix::zeros(p, dst.dim(n), src.dim(n));
        for i in a.degrees() {
            if a.dim(i) == 0 {
                continue;
            }
            let blk = g.comp(i + n).kron(&Matrix::identity(p, a.dim(i)));
            m.add_block(hom_offset(a, b2, n, i), hom_offset(a, b, n, i), &blk);
        }
        m
    })
}

/// `f^*: Hom(A, B) -> Hom(A', B)`, `φ ↦ φ f` for `f: A' -> A`.
pub fn pre_compose(f: &ChainMap, b: &ChainComplex) -> ChainMap {
    let (a2, a) = (f.src(), f.dst());
    let src = hom_complex(a, b);
    let dst = hom_complex(a2, b);
    let p = b.p();
    ChainMap::from_fn(&src, &dst, |n| {
        let mut m = Matrix::zeros(p, dst.dim(n), src.dim(n));
        let lo = a.lo().min(a2.lo());
        let hi = a.hi().max(a2.hi());
        for i in lo..=hi {
            if a.dim(i) * a2.dim(i) * b.dim(i + n) == 0 {
                continue;
            }
            let blk = Matrix::identity(p, b.dim(i + n)).kron(&f.comp(i).transpose());
            m.add_block(hom_offset(a2, b, n, i), hom_offset(a, b, n, i), &blk);
        }
        m
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::tensor_complex;

    #[test]
    fn hom_is_complex_and_cycles_are_maps() {
        let p = 5;
        let d = ChainComplex::disk(p, 1);
        let h = hom_complex(&d, &d);
        h.validate().unwrap();
        // chain endomorphisms of D^1 are scalars: 1-dimensional cycle space
        let z = h.diff(0).kernel_basis();
        assert_eq!(z.cols(), 1);
        let f = hom_cycle_to_map(&d, &d, &z);
        f.validate().unwrap();
        assert_eq!(map_to_hom_cycle(&f), z);
    }

    #[test]
    fn hom_of_tensor_validates() {
        let p = 3;
        let d = ChainComplex::disk(p, 2);
        let s = ChainComplex::sphere(p, -1);
        let t = tensor_complex(&d, &s);
        hom_complex(&t, &d).validate().unwrap();
        hom_complex(&s, &t).validate().unwrap();
    }

    #[test]
    fn composition_functors_are_chain_maps() {
        let p = 7;
        let d = ChainComplex::disk(p, 1);
        let s = ChainComplex::sphere(p, 0);
        let inc = ChainMap::from_fn(&s, &d, |n| {
            if n == 0 {
                Matrix::identity(p, 1)
            } else {
                Matrix::zeros(p, d.dim(n), s.dim(n))
            }
        });
        inc.validate().unwrap();
        post_compose(&inc, &d).validate().unwrap();
        pre_compose(&inc, &d).validate().unwrap();
    }
}
