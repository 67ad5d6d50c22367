//! Finite limits and colimits of complexes, computed degreewise.

use super::{ChainComplex, ChainMap, Layout};
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub obj: ChainComplex,
    pub inj: Vec<ChainMap>,
    pub proj: Vec<ChainMap>,
}

pub fn direct_sum(parts: &[&ChainComplex]) -> DirectSum {
    assert!(!parts.is_empty());
    let p = parts[0].p();
    let layout = Layout::new(parts.iter().map(|c| (*c, 0)).collect());
    let obj = layout.assemble(p, |n, from, to| (from == to).then(|| parts[from].diff(n)));
    let inj = (0..parts.len())
        .map(|k| {
            ChainMap::from_fn(parts[k], &obj, |n| {
                let mut m = Matrix::zeros(p, obj.dim(n), parts[k].dim(n));
                m.set_block(layout.offset(n, k), 0, &Matrix::identity(p, parts[k].dim(n)));
                m
            })
        })
        .collect();
    let proj = (0..parts.len())
        .map(|k| {
            ChainMap::from_fn(&obj, parts[k], |n| {
                let mut m = Matrix::zeros(p, parts[k].dim(n), obj.dim(n));
                m.set_block(0, layout.offset(n, k), &Matrix::identity(p, parts[k].dim(n)));
                m
            })
        })
        .collect();
    DirectSum { obj, inj, proj }
}

impl DirectSum {
    /// `[u_0 ... u_k]: ⊕ X_i -> Z`.
    pub fn copair(&self, maps: &[&ChainMap]) -> ChainMap {
        assert_eq!(maps.len(), self.proj.len());
        let mut acc = maps[0].compose(&self.proj[0]);
        for (m, pr) in maps.iter().zip(&self.proj).skip(1) {
            acc = acc.add(&m.compose(pr));
        }
        acc
    }

    /// `(u_0, ..., u_k): Z -> ⊕ X_i`.
    pub fn pair(&self, maps: &[&ChainMap]) -> ChainMap {
        assert_eq!(maps.len(), self.inj.len());
        let mut acc = self.inj[0].compose(maps[0]);
        for (m, inj) in maps.iter().zip(&self.inj).skip(1) {
            acc = acc.add(&inj.compose(m));
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub obj: ChainComplex,
    pub incl: ChainMap,
}

pub fn kernel(f: &ChainMap) -> Kernel {
    let a = f.src();
    let p = f.p();
    let lo = a.lo();
    let bases: Vec<Matrix> = a.degrees().map(|n| f.comp(n).kernel_basis()).collect();
    let basis = |n: i32| -> Matrix {
        if n < lo || n > a.hi() {
            Matrix::zeros(p, a.dim(n), 0)
        } else {
            bases[(n - lo) as usize].clone()
        }
    };
    let obj = ChainComplex::from_fn(p, lo, a.hi(), &|n| basis(n).cols(), &|n| {
        let rhs = &a.diff(n) * &basis(n);
        basis(n - 1)
            .solve(&rhs)
            .expect("shapes agree")
            .expect("d preserves the kernel")
    });
    let incl = ChainMap::from_fn(&obj, a, basis);
    Kernel { obj, incl }
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub obj: ChainComplex,
    pub proj: ChainMap,
}

pub fn cokernel(f: &ChainMap) -> Cokernel {
    let b = f.dst();
    let p = f.p();
    let lo = b.lo();
    // (section, projection) per degree
    let parts: Vec<(Matrix, Matrix)> = b
        .degrees()
        .map(|n| {
            let im = f.comp(n).column_basis();
            let comp = im.complement_basis();
            let full = Matrix::hstack(p, b.dim(n), &[&im, &comp]);
            let inv = full.inverse().expect("image plus complement is a basis");
            let r = im.cols();
            let proj = inv.block(r, 0, comp.cols(), b.dim(n));
            (comp, proj)
        })
        .collect();
    let part = |n: i32| -> (Matrix, Matrix) {
        if n < lo || n > b.hi() {
            (Matrix::zeros(p, b.dim(n), 0), Matrix::zeros(p, 0, b.dim(n)))
        } else {
            parts[(n - lo) as usize].clone()
        }
    };
    let obj = ChainComplex::from_fn(p, lo, b.hi(), &|n| part(n).0.cols(), &|n| {
        &(&part(n - 1).1 * &b.diff(n)) * &part(n).0
    });
    let proj = ChainMap::from_fn(b, &obj, |n| part(n).1);
    Cokernel { obj, proj }
}

/// The unique `X` with `X ∘ surj = g`, if one exists and is a chain map.
pub fn descend(surj: &ChainMap, g: &ChainMap) -> Option<ChainMap> {
    assert!(surj.src() == g.src(), "descend: maps with different sources");
    let (q, z) = (surj.dst(), g.dst());
    let mut comps = std::collections::BTreeMap::new();
    let lo = q.lo().min(z.lo()).min(g.src().lo());
    let hi = q.hi().max(z.hi()).max(g.src().hi());
    for n in lo..=hi {
        let x = if q.dim(n) == 0 || z.dim(n) == 0 {
            let zero = Matrix::zeros(q.p(), z.dim(n), q.dim(n));
            if !(&zero * &surj.comp(n) == g.comp(n)) {
                return None;
            }
            zero
        } else {
            surj.comp(n).solve_left(&g.comp(n)).expect("shapes agree")?
        };
        comps.insert(n, x);
    }
    ChainMap::new(q, z, comps).ok()
}

/// The unique `X` with `inj ∘ X = g`, if one exists and is a chain map.
pub fn factor_through(inj: &ChainMap, g: &ChainMap) -> Option<ChainMap> {
    assert!(inj.dst() == g.dst(), "factor_through: maps with different targets");
    let (k, z) = (inj.src(), g.src());
    let mut comps = std::collections::BTreeMap::new();
    let lo = k.lo().min(z.lo()).min(g.dst().lo());
    let hi = k.hi().max(z.hi()).max(g.dst().hi());
    for n in lo..=hi {
        let x = if k.dim(n) == 0 || z.dim(n) == 0 {
            if !g.comp(n).is_zero() {
                return None;
            }
            Matrix::zeros(k.p(), k.dim(n), z.dim(n))
        } else {
            inj.comp(n).solve(&g.comp(n)).expect("shapes agree")?
        };
        comps.insert(n, x);
    }
    ChainMap::new(z, k, comps).ok()
}

/// Pushout of `B <-f- A -g-> C`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub obj: ChainComplex,
    pub inl: ChainMap,
    pub inr: ChainMap,
    pub sum: DirectSum,
    pub quotient: ChainMap,
}

pub fn pushout(f: &ChainMap, g: &ChainMap) -> Pushout {
    assert!(f.src() == g.src(), "pushout: legs with different sources");
    let sum = direct_sum(&[f.dst(), g.dst()]);
    let rel = sum.pair(&[f, &g.neg()]);
    let ck = cokernel(&rel);
    let inl = ck.proj.compose(&sum.inj[0]);
    let inr = ck.proj.compose(&sum.inj[1]);
    Pushout {
        obj: ck.obj,
        inl,
        inr,
        sum,
        quotient: ck.proj,
    }
}

impl Pushout {
    /// The map out of the pushout restricting to `u` and `v`.
    pub fn mediate(&self, u: &ChainMap, v: &ChainMap) -> Option<ChainMap> {
        descend(&self.quotient, &self.sum.copair(&[u, v]))
    }
}

/// Pullback of `B -f-> D <-g- C`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub obj: ChainComplex,
    pub pl: ChainMap,
    pub pr: ChainMap,
    pub sum: DirectSum,
    pub incl: ChainMap,
}

pub fn pullback(f: &ChainMap, g: &ChainMap) -> Pullback {
    assert!(f.dst() == g.dst(), "pullback: legs with different targets");
    let sum = direct_sum(&[f.src(), g.src()]);
    let rel = sum.copair(&[f, &g.neg()]);
    let k = kernel(&rel);
    let pl = sum.proj[0].compose(&k.incl);
    let pr = sum.proj[1].compose(&k.incl);
    Pullback {
        obj: k.obj,
        pl,
        pr,
        sum,
        incl: k.incl,
    }
}

impl Pullback {
    /// The map into the pullback with components `u` and `v`.
    pub fn mediate(&self, u: &ChainMap, v: &ChainMap) -> Option<ChainMap> {
        factor_through(&self.incl, &self.sum.pair(&[u, v]))
    }
}
