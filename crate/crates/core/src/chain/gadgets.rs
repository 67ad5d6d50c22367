//! Mapping cones, cylinders and path objects.

use super::{direct_sum, ChainComplex, ChainMap, DirectSum, Layout};
use crate::linalg::Matrix;

fn ident(p: u64, n: usize) -> Matrix {
    Matrix::identity(p, n)
}

/// `cone(f)_n = B_n ⊕ A_{n-1}`, `d(b, a) = (db + fa, -da)`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub obj: ChainComplex,
    pub incl: ChainMap,
}

pub fn cone(f: &ChainMap) -> Cone {
    let (a, b) = (f.src(), f.dst());
    let p = f.p();
    let lay = Layout::new(vec![(b, 0), (a, 1)]);
    let obj = lay.assemble(p, |n, from, to| match (from, to) {
        (0, 0) => Some(b.diff(n)),
        (1, 0) => Some(f.comp(n - 1)),
        (1, 1) => Some(a.diff(n - 1).neg()),
        _ => None,
    });
    let incl = ChainMap::from_fn(b, &obj, |n| {
        let mut m = Matrix::zeros(p, obj.dim(n), b.dim(n));
        m.set_block(0, 0, &ident(p, b.dim(n)));
        m
    });
    Cone { obj, incl }
}

/// `Cyl_n = A_n ⊕ A_{n-1} ⊕ B_n` with `d(a, a', b) = (da + a', -da', db - fa')`.
///
/// `f = proj ∘ incl` with `incl` injective and `proj` a homotopy equivalence.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub obj: ChainComplex,
    pub incl: ChainMap,
    pub proj: ChainMap,
    pub section: ChainMap,
}

pub fn cylinder(f: &ChainMap) -> Cylinder {
    let (a, b) = (f.src(), f.dst());
    let p = f.p();
    let lay = Layout::new(vec![(a, 0), (a, 1), (b, 0)]);
    let obj = lay.assemble(p, |n, from, to| match (from, to) {
        (0, 0) => Some(a.diff(n)),
        (1, 0) => Some(ident(p, a.dim(n - 1))),
        (1, 1) => Some(a.diff(n - 1).neg()),
        (1, 2) => Some(f.comp(n - 1).neg()),
        (2, 2) => Some(b.diff(n)),
        _ => None,
    });
    let incl = ChainMap::from_fn(a, &obj, |n| {
        let mut m = Matrix::zeros(p, obj.dim(n), a.dim(n));
        m.set_block(0, 0, &ident(p, a.dim(n)));
        m
    });
    let proj = ChainMap::from_fn(&obj, b, |n| {
        let mut m = Matrix::zeros(p, b.dim(n), obj.dim(n));
        m.set_block(0, 0, &f.comp(n));
        m.set_block(0, lay.offset(n, 2), &ident(p, b.dim(n)));
        m
    });
    let section = ChainMap::from_fn(b, &obj, |n| {
        let mut m = Matrix::zeros(p, obj.dim(n), b.dim(n));
        m.set_block(lay.offset(n, 2), 0, &ident(p, b.dim(n)));
        m
    });
    Cylinder {
        obj,
        incl,
        proj,
        section,
    }
}

/// `PB_n = B_n ⊕ B_{n+1}`, `d(b, c) = (db, b - dc)`, with `ev(b, c) = b`.
pub fn path_space(b: &ChainComplex) -> (ChainComplex, ChainMap) {
    let p = b.p();
    let lay = Layout::new(vec![(b, 0), (b, -1)]);
    let obj = lay.assemble(p, |n, from, to| match (from, to) {
        (0, 0) => Some(b.diff(n)),
        (0, 1) => Some(ident(p, b.dim(n))),
        (1, 1) => Some(b.diff(n + 1).neg()),
        _ => None,
    });
    let ev = ChainMap::from_fn(&obj, b, |n| {
        let mut m = Matrix::zeros(p, b.dim(n), obj.dim(n));
        m.set_block(0, 0, &ident(p, b.dim(n)));
        m
    });
    (obj, ev)
}

/// `A -> A ⊕ PB -> B`: an injective quasi-isomorphism followed by `(f, ev)`.
#[derive(Clone, Debug)]
pub struct MappingPath {
    pub obj: ChainComplex,
    pub incl: ChainMap,
    pub proj: ChainMap,
}

pub fn mapping_path(f: &ChainMap) -> MappingPath {
    let (pb, ev) = path_space(f.dst());
    let sum = direct_sum(&[f.src(), &pb]);
    let proj = sum.copair(&[f, &ev]);
    MappingPath {
        obj: sum.obj.clone(),
        incl: sum.inj[0].clone(),
        proj,
    }
}

/// `X^I_n = X_n ⊕ X_n ⊕ X_{n+1}`, `d(x, y, h) = (dx, dy, x - y - dh)`.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub obj: ChainComplex,
    pub diag: ChainMap,
    pub ends: ChainMap,
    pub sum: DirectSum,
}

pub fn path_object(x: &ChainComplex) -> PathObject {
    let p = x.p();
    let lay = Layout::new(vec![(x, 0), (x, 0), (x, -1)]);
    let obj = lay.assemble(p, |n, from, to| match (from, to) {
        (0, 0) | (1, 1) => Some(x.diff(n)),
        (0, 2) => Some(ident(p, x.dim(n))),
        (1, 2) => Some(ident(p, x.dim(n)).neg()),
        (2, 2) => Some(x.diff(n + 1).neg()),
        _ => None,
    });
    let diag = ChainMap::from_fn(x, &obj, |n| {
        let mut m = Matrix::zeros(p, obj.dim(n), x.dim(n));
        m.set_block(0, 0, &ident(p, x.dim(n)));
        m.set_block(x.dim(n), 0, &ident(p, x.dim(n)));
        m
    });
    let sum = direct_sum(&[x, x]);
    let ends = ChainMap::from_fn(&obj, &sum.obj, |n| {
        let mut m = Matrix::zeros(p, sum.obj.dim(n), obj.dim(n));
        m.set_block(0, 0, &ident(p, 2 * x.dim(n)));
        m
    });
    PathObject { obj, diag, ends, sum }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology, is_quasi_iso};

    fn sample(p: u64) -> ChainMap {
        let s = ChainComplex::sphere(p, 0);
        let d = ChainComplex::disk(p, 1);
        ChainMap::from_fn(&s, &d, |n| {
            if n == 0 {
                ident(p, 1)
            } else {
                Matrix::zeros(p, d.dim(n), s.dim(n))
            }
        })
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let p = 5;
        let d = ChainComplex::disk(p, 1);
        let c = cone(&ChainMap::identity(&d));
        c.obj.validate().unwrap();
        c.incl.validate().unwrap();
        assert!(homology(&c.obj).is_acyclic());
        let c2 = cone(&sample(p));
        c2.obj.validate().unwrap();
        assert_eq!(homology(&c2.obj).dim(1), 1);
    }

    #[test]
    fn cylinder_factors() {
        for p in [2, 3, 101] {
            let f = sample(p);
            let c = cylinder(&f);
            c.obj.validate().unwrap();
            for m in [&c.incl, &c.proj, &c.section] {
                m.validate().unwrap();
            }
            assert_eq!(c.proj.compose(&c.incl), f);
            assert!(c.incl.is_injective());
            assert!(is_quasi_iso(&c.proj));
        }
    }

    #[test]
    fn path_factorization() {
        let p = 3;
        let f = sample(p);
        let m = mapping_path(&f);
        m.obj.validate().unwrap();
        m.proj.validate().unwrap();
        assert_eq!(m.proj.compose(&m.incl), f);
        assert!(m.incl.is_injective() && is_quasi_iso(&m.incl));
        assert!(m.proj.is_surjective());
    }

    #[test]
    fn path_object_validates() {
        let p = 7;
        let x = ChainComplex::disk(p, 2);
        let po = path_object(&x);
        po.obj.validate().unwrap();
        po.diag.validate().unwrap();
        po.ends.validate().unwrap();
        assert!(is_quasi_iso(&po.diag));
        assert!(po.ends.is_surjective());
    }
}
