//! Small algebras with known ideals, and generators built from them.
//!
//! Random algebras are square-zero extensions `S ⊕ M` or truncated polynomial
//! algebras; arbitrary multiplication tables are almost never associative.

use rand::Rng;

use super::{add_linear_constraint, composite_equation, DGAlgebra, DGBimodule, RightModule, SmithIdeal, SmithModule};
use crate::chain::{
    associator, bilinear_map, direct_sum, map_space, right_unitor, tensor_complex, tensor_map, ChainComplex, ChainMap,
};
use crate::gen::{random_complex, random_map, GenConfig};
use crate::linalg::LinearSystem;

fn basis_vector(len: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

/// A Smith ideal with an augmentation `ε: R -> S` that kills `j(I)`.
#[derive(Clone, Debug)]
pub struct Augmented {
    pub ideal: SmithIdeal,
    pub aug: ChainMap,
}

pub fn field_algebra(p: u64) -> DGAlgebra {
    let s = ChainComplex::unit(p);
    DGAlgebra {
        mult: crate::chain::left_unitor(&s),
        unit: ChainMap::identity(&s),
        carrier: s,
    }
}

fn square_zero_parts(m: &ChainComplex) -> (crate::chain::DirectSum, DGAlgebra) {
    let p = m.p();
    let s = ChainComplex::unit(p);
    let sum = direct_sum(&[&s, m]);
    let r = sum.obj.clone();
    // the unit is basis vector 0 in degree 0
    let mult = bilinear_map(&r, &r, &r, |i, x, j, y| {
        if i == 0 && x == 0 {
            basis_vector(r.dim(j), y)
        } else if j == 0 && y == 0 {
            basis_vector(r.dim(i), x)
        } else {
            vec![0; r.dim(i + j)]
        }
    });
    let alg = DGAlgebra {
        carrier: r,
        mult,
        unit: sum.inj[0].clone(),
    };
    (sum, alg)
}

/// `S ⊕ M` with `M · M = 0`.
pub fn square_zero_algebra(m: &ChainComplex) -> DGAlgebra {
    square_zero_parts(m).1
}

/// `M ⊂ S ⊕ M` as a Smith ideal.
pub fn square_zero_ideal(m: &ChainComplex) -> Augmented {
    let (sum, alg) = square_zero_parts(m);
    let r = &alg.carrier;
    let left = bilinear_map(r, m, m, |i, x, j, y| {
        if i == 0 && x == 0 {
            basis_vector(m.dim(j), y)
        } else {
            vec![0; m.dim(i + j)]
        }
    });
    let right = bilinear_map(m, r, m, |i, x, j, y| {
        if j == 0 && y == 0 {
            basis_vector(m.dim(i), x)
        } else {
            vec![0; m.dim(i + j)]
        }
    });
    Augmented {
        ideal: SmithIdeal {
            alg,
            ideal: DGBimodule {
                carrier: m.clone(),
                left,
                right,
            },
            j: sum.inj[1].clone(),
        },
        aug: sum.proj[0].clone(),
    }
}

/// Basis `x^a` of `F_p[x]/x^k` with `|x| = d`: position of `x^a` is
/// `(a d, a)` when `d = 0` and `(a d, 0)` otherwise.
struct Poly {
    k: usize,
    d: i32,
}

impl Poly {
    fn locate(&self, a: usize) -> (i32, usize) {
        if self.d == 0 {
            (0, a)
        } else {
            (a as i32 * self.d, 0)
        }
    }

    fn exponent(&self, n: i32, x: usize) -> usize {
        if self.d == 0 {
            x
        } else {
            (n / self.d) as usize
        }
    }

    /// The span of `x^a` for `a` in `from..k`.
    fn span(&self, p: u64, from: usize) -> ChainComplex {
        if from >= self.k {
            return ChainComplex::zero(p);
        }
        let spheres: Vec<ChainComplex> = (from..self.k)
            .map(|a| ChainComplex::sphere(p, a as i32 * self.d))
            .collect();
        direct_sum(&spheres.iter().collect::<Vec<_>>()).obj
    }

    fn product_into(&self, c: &ChainComplex, from: usize, n: i32, a: usize, b: usize) -> Vec<u64> {
        let mut v = vec![0; c.dim(n)];
        if a + b < self.k {
            let (deg, idx) = self.locate(a + b);
            debug_assert_eq!(deg, n);
            let idx = if self.d == 0 { idx - from } else { idx };
            v[idx] = 1;
        }
        v
    }
}

/// `F_p[x]/x^k` with `x` in degree `d ≥ 0` and zero differential.
pub fn truncated_polynomial(p: u64, k: usize, d: i32) -> DGAlgebra {
    assert!(k >= 1 && d >= 0);
    let poly = Poly { k, d };
    let r = poly.span(p, 0);
    let mult = bilinear_map(&r, &r, &r, |i, x, j, y| {
        poly.product_into(&r, 0, i + j, poly.exponent(i, x), poly.exponent(j, y))
    });
    let unit = ChainMap::from_fn(&ChainComplex::unit(p), &r, |n| {
        let mut m = crate::linalg::Matrix::zeros(p, r.dim(n), usize::from(n == 0));
        if n == 0 {
            m.set(0, 0, 1);
        }
        m
    });
    DGAlgebra { carrier: r, mult, unit }
}

/// The ideal `(x^m)` of `F_p[x]/x^k`, `1 ≤ m`.
pub fn ideal_of_power(p: u64, k: usize, d: i32, m: usize) -> Augmented {
    assert!(m >= 1);
    let poly = Poly { k, d };
    let alg = truncated_polynomial(p, k, d);
    let r = alg.carrier.clone();
    let i = poly.span(p, m);
    // exponents inside I are shifted by m when d = 0
    let exp_i = |n: i32, x: usize| if d == 0 { x + m } else { poly.exponent(n, x) };
    let left = bilinear_map(&r, &i, &i, |a, x, b, y| {
        poly.product_into(&i, m, a + b, poly.exponent(a, x), exp_i(b, y))
    });
    let right = bilinear_map(&i, &r, &i, |a, x, b, y| {
        poly.product_into(&i, m, a + b, exp_i(a, x), poly.exponent(b, y))
    });
    let j = ChainMap::from_fn(&i, &r, |n| {
        let mut mat = crate::linalg::Matrix::zeros(p, r.dim(n), i.dim(n));
        for x in 0..i.dim(n) {
            let (_, idx) = poly.locate(exp_i(n, x));
            mat.set(idx, x, 1);
        }
        mat
    });
    let aug = ChainMap::from_fn(&r, &ChainComplex::unit(p), |n| {
        let mut mat = crate::linalg::Matrix::zeros(p, usize::from(n == 0), r.dim(n));
        if n == 0 {
            mat.set(0, 0, 1);
        }
        mat
    });
    Augmented {
        ideal: SmithIdeal {
            alg,
            ideal: DGBimodule {
                carrier: i,
                left,
                right,
            },
            j,
        },
        aug,
    }
}

/// `F_p[x]/x²` acting on `I = R` on the left as usual and on the right
/// through `x ↦ c x`, with `j` multiplication by `x`. For `c ≠ 1` this is a
/// bimodule map whose two products `I ⊗ I -> I` disagree.
pub fn twisted_ideal(p: u64, c: u64) -> SmithIdeal {
    let alg = truncated_polynomial(p, 2, 0);
    let r = alg.carrier.clone();
    let right = bilinear_map(&r, &r, &r, |_, x, _, y| {
        let mut v = vec![0; 2];
        match (x, y) {
            (0, 0) => v[0] = 1,
            (1, 0) => v[1] = 1,
            (0, 1) => v[1] = c % p,
            _ => {}
        }
        v
    });
    let j = ChainMap::from_fn(&r, &r, |_| {
        crate::linalg::Matrix::from_rows(p, &[vec![0, 0], vec![1, 0]])
    });
    SmithIdeal {
        ideal: DGBimodule {
            carrier: r.clone(),
            left: alg.mult.clone(),
            right,
        },
        alg,
        j,
    }
}

/// A random square-zero or truncated polynomial ideal inside `cfg`'s window.
pub fn random_smith_ideal(cfg: &GenConfig, rng: &mut impl Rng) -> Augmented {
    let p = cfg.p;
    let room = cfg.hi.max(0);
    if cfg.lo <= 0 && rng.gen_bool(0.4) {
        let d = if room == 0 { 0 } else { rng.gen_range(0..=room.min(1)) };
        let kmax = if d == 0 {
            cfg.max_dim.max(2)
        } else {
            (room / d) as usize + 1
        };
        let k = rng.gen_range(2..=kmax.clamp(2, 4));
        let m = rng.gen_range(1..k);
        return ideal_of_power(p, k, d, m);
    }
    let m = random_complex(&cfg.with_max_dim(cfg.max_dim.saturating_sub(1).max(1)), rng);
    square_zero_ideal(&m)
}

/// Two square-zero ideals `M ⊂ S ⊕ M`, `M' ⊂ S ⊕ M'` and the map induced by a
/// random chain map `h: M -> M'`, as `(a0, a1) = (h, 1 ⊕ h)`.
pub fn random_square_zero_pair(cfg: &GenConfig, rng: &mut impl Rng) -> (Augmented, Augmented, ChainMap, ChainMap) {
    let small = cfg.with_max_dim(cfg.max_dim.saturating_sub(1).max(1));
    let m = random_complex(&small, rng);
    let m2 = random_complex(&small, rng);
    let h = random_map(&m, &m2, rng);
    let (src, dst) = (square_zero_ideal(&m), square_zero_ideal(&m2));
    let sum = direct_sum(&[&ChainComplex::unit(cfg.p), &m]);
    let a1 = sum.copair(&[&dst.ideal.alg.unit, &dst.ideal.j.compose(&h)]);
    (src, dst, h, a1)
}

fn trivial_action(m: &ChainComplex, aug: &ChainMap) -> RightModule {
    RightModule {
        carrier: m.clone(),
        act: right_unitor(m).compose(&tensor_map(&ChainMap::identity(m), aug)),
    }
}

/// `R` acting on `M_0`, `M_1` through the augmentation.
pub fn trivial_module(s: &Augmented, f: &ChainMap, phi: &ChainMap) -> SmithModule {
    SmithModule {
        over: s.ideal.clone(),
        m0: trivial_action(f.src(), &s.aug),
        m1: trivial_action(f.dst(), &s.aug),
        f: f.clone(),
        phi: phi.clone(),
    }
}

/// `j` as a module over itself.
pub fn unit_module(s: &SmithIdeal) -> SmithModule {
    SmithModule {
        over: s.clone(),
        m0: s.ideal.right_module(),
        m1: s.alg.as_right_module(),
        f: s.j.clone(),
        phi: s.ideal.left.clone(),
    }
}

/// A module with augmentation actions and a uniformly random admissible `φ`.
pub fn random_smith_module(s: &Augmented, cfg: &GenConfig, rng: &mut impl Rng) -> SmithModule {
    let a = random_complex(cfg, rng);
    let b = random_complex(cfg, rng);
    let f = random_map(&a, &b, rng);
    let base = trivial_module(s, &f, &ChainMap::zero(&tensor_complex(&b, &s.ideal.ideal.carrier), &a));
    let (m0, m1) = (&base.m0, &base.m1);
    let ideal = &s.ideal;
    let (i, rc) = (&ideal.ideal.carrier, &ideal.alg.carrier);
    let mut sys = LinearSystem::new(cfg.p);
    let phi = map_space(&mut sys, &tensor_complex(&b, i), &a);
    let id = |x: &ChainComplex| ChainMap::identity(x);
    composite_equation(
        &mut sys,
        &[(&f, &phi, &id(&phi.src))],
        &m1.act.compose(&tensor_map(&id(&b), &ideal.j)),
    );
    composite_equation(
        &mut sys,
        &[(&id(&a), &phi, &tensor_map(&f, &id(i)))],
        &m0.act.compose(&tensor_map(&id(&a), &ideal.j)),
    );
    let desc_l = tensor_map(&m1.act, &id(i));
    let desc_r = tensor_map(&id(&b), &ideal.ideal.left).compose(&associator(&b, rc, i));
    composite_equation(
        &mut sys,
        &[(&id(&a), &phi, &desc_l), (&id(&a).neg(), &phi, &desc_r)],
        &ChainMap::zero(desc_l.src(), &a),
    );
    let lin_l = tensor_map(&id(&b), &ideal.ideal.right).compose(&associator(&b, i, rc));
    let act0 = m0.act.clone();
    let rcc = rc.clone();
    let lhs = move |g: &ChainMap| g.compose(&lin_l);
    let rhs = move |g: &ChainMap| act0.compose(&tensor_map(g, &ChainMap::identity(&rcc))).neg();
    let zero = ChainMap::zero(&tensor_complex(&tensor_complex(&b, i), rc), &a);
    add_linear_constraint(&mut sys, &[(&phi, &lhs), (&phi, &rhs)], &zero).expect("linearity equation");
    let sol = sys.random_solution(rng).expect("φ = 0 is admissible");
    trivial_module(s, &f, &phi.extract(&sol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn polynomial_algebras_are_valid() {
        for (k, d) in [(1, 0), (2, 0), (3, 0), (3, 1), (4, 1)] {
            let r = truncated_polynomial(3, k, d);
            r.validate().unwrap();
            for m in 1..k {
                ideal_of_power(3, k, d, m).ideal.validate().unwrap();
            }
        }
    }

    #[test]
    fn generated_ideals_and_modules_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [2, 3, 5, 101] {
            let cfg = GenConfig::new(p, -1, 2, 2);
            for _ in 0..4 {
                let s = random_smith_ideal(&cfg, &mut rng);
                s.ideal.validate().unwrap();
                unit_module(&s.ideal).validate().unwrap();
                random_smith_module(&s, &cfg, &mut rng).validate().unwrap();
            }
        }
    }
}
