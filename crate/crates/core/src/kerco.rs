//! Cokernel and kernel as functors on arrows, and how they interact with the
//! two monoidal structures.
//!
//! `coker(f: A -> B) = (B -> coker f)` and `ker(p: X -> Y) = (ker p -> X)`.
//! Cokernel is left adjoint to kernel and turns `□` into `⊗`.

use crate::arrow::{
    box_square, pushout_product, tensor_arrow, tensor_square, ArrowObject, ArrowSquare, PushoutProduct,
};
use crate::chain::{cokernel, descend, factor_through, kernel, tensor_map, ChainMap, Cokernel, Kernel};
use crate::error::{violation, Result};

#[derive(Clone, Debug)]
pub struct CokerArrow {
    pub arrow: ArrowObject,
    pub cokernel: Cokernel,
}

pub fn coker_arrow(f: &ArrowObject) -> CokerArrow {
    let ck = cokernel(f.map());
    CokerArrow {
        arrow: ArrowObject::from_map(ck.proj.clone()),
        cokernel: ck,
    }
}

/// `coker α: coker f -> coker f'`.
pub fn coker_square(a: &ArrowSquare) -> ArrowSquare {
    let (src, dst) = (coker_arrow(&a.src), coker_arrow(&a.dst));
    let induced = descend(src.arrow.map(), &dst.arrow.map().compose(&a.a1)).expect("α_1 preserves images");
    ArrowSquare::from_parts(&src.arrow, &dst.arrow, a.a1.clone(), induced)
}

#[derive(Clone, Debug)]
pub struct KerArrow {
    pub arrow: ArrowObject,
    pub kernel: Kernel,
}

pub fn ker_arrow(p: &ArrowObject) -> KerArrow {
    let k = kernel(p.map());
    KerArrow {
        arrow: ArrowObject::from_map(k.incl.clone()),
        kernel: k,
    }
}

/// `ker α: ker p -> ker p'`.
pub fn ker_square(a: &ArrowSquare) -> ArrowSquare {
    let (src, dst) = (ker_arrow(&a.src), ker_arrow(&a.dst));
    let induced = factor_through(dst.arrow.map(), &a.a0.compose(src.arrow.map())).expect("α_0 preserves kernels");
    ArrowSquare::from_parts(&src.arrow, &dst.arrow, induced, a.a0.clone())
}

/// `η_f: f -> ker coker f`.
pub fn coker_ker_unit(f: &ArrowObject) -> ArrowSquare {
    let c = coker_arrow(f);
    let k = ker_arrow(&c.arrow);
    let a0 = factor_through(k.arrow.map(), f.map()).expect("f lands in the kernel of its cokernel");
    ArrowSquare::from_parts(f, &k.arrow, a0, ChainMap::identity(f.ev1()))
}

/// `ε_p: coker ker p -> p`.
pub fn coker_ker_counit(p: &ArrowObject) -> ArrowSquare {
    let k = ker_arrow(p);
    let c = coker_arrow(&k.arrow);
    let a1 = descend(c.arrow.map(), p.map()).expect("p kills its kernel");
    ArrowSquare::from_parts(&c.arrow, p, ChainMap::identity(p.ev0()), a1)
}

/// Hom-dimension equality and both triangle identities for `coker ⊣ ker`.
pub fn coker_ker_adjunction_check(f: &ArrowObject, p: &ArrowObject) -> bool {
    let cf = coker_arrow(f).arrow;
    let kp = ker_arrow(p).arrow;
    if crate::arrow::square_space_dim(&cf, p) != crate::arrow::square_space_dim(f, &kp) {
        return false;
    }
    let t1 = coker_ker_counit(&cf).compose(&coker_square(&coker_ker_unit(f))) == ArrowSquare::identity(&cf);
    let t2 = ker_square(&coker_ker_counit(p)).compose(&coker_ker_unit(&kp)) == ArrowSquare::identity(&kp);
    t1 && t2
}

/// The certified isomorphism `coker(f □ g) -> coker f ⊗ coker g`.
#[derive(Clone, Debug)]
pub struct MonoidalComparison {
    pub pushout_product: PushoutProduct,
    pub square: ArrowSquare,
    pub inverse: ArrowSquare,
}

/// Built by quotienting `X_1 ⊗ Y_1` first by the image of `X_0 ⊗ Y_1`, then by
/// the image of `X_1 ⊗ Y_0`, and comparing with `π_f ⊗ π_g`. The inverse comes
/// from the universal property of `π_f ⊗ π_g`.
pub fn monoidal_comparison(f: &ArrowObject, g: &ArrowObject) -> Result<MonoidalComparison> {
    let pp = pushout_product(f, g);
    let lhs = coker_arrow(&pp.arrow);
    let (cf, cg) = (coker_arrow(f), coker_arrow(g));
    let rhs = tensor_arrow(&cf.arrow, &cg.arrow);
    let (x1, y1) = (f.ev1(), g.ev1());

    // horizontal: X_1 ⊗ Y_1 -> H = coker(f ⊗ 1)
    let q1 = cokernel(&tensor_map(f.map(), &ChainMap::identity(y1))).proj;
    // vertical: H -> V = coker(q1 ∘ (1 ⊗ g))
    let q2 = cokernel(&q1.compose(&tensor_map(&ChainMap::identity(x1), g.map()))).proj;
    let q = q2.compose(&q1);
    // coker(f □ g) -> V
    let to_v = descend(lhs.arrow.map(), &q).ok_or_else(|| violation("iterated quotient does not kill the corner"))?;
    // V -> coker f ⊗ coker g, through H
    let pi = rhs.map();
    let h_to = descend(&q1, pi).ok_or_else(|| violation("π_f ⊗ π_g does not factor through H"))?;
    let v_to = descend(&q2, &h_to).ok_or_else(|| violation("π_f ⊗ π_g does not factor through V"))?;
    let a1 = v_to.compose(&to_v);
    let back = descend(pi, lhs.arrow.map()).ok_or_else(|| violation("coker(f□g) does not factor through π_f ⊗ π_g"))?;
    if back.compose(&a1) != ChainMap::identity(lhs.arrow.ev1()) || a1.compose(&back) != ChainMap::identity(rhs.ev1()) {
        return Err(violation("comparison is not an isomorphism"));
    }
    let id = ChainMap::identity(pp.arrow.ev1());
    let square = ArrowSquare::new(&lhs.arrow, &rhs, id.clone(), a1)?;
    let inverse = ArrowSquare::new(&rhs, &lhs.arrow, id, back)?;
    Ok(MonoidalComparison {
        pushout_product: pp,
        square,
        inverse,
    })
}

/// Naturality of the comparison along `α: f -> f'`, `β: g -> g'`.
pub fn comparison_naturality_check(a: &ArrowSquare, b: &ArrowSquare) -> Result<bool> {
    let c = monoidal_comparison(&a.src, &b.src)?;
    let c2 = monoidal_comparison(&a.dst, &b.dst)?;
    let left = c2.square.compose(&coker_square(&box_square(a, b)));
    let right = tensor_square(&coker_square(a), &coker_square(b)).compose(&c.square);
    Ok(left == right)
}

/// The lax structure map `ker f □ ker g -> ker(f ⊗ g)`.
pub fn kernel_lax_structure(f: &ArrowObject, g: &ArrowObject) -> ArrowSquare {
    let (kf, kg) = (ker_arrow(f), ker_arrow(g));
    let pp = pushout_product(&kf.arrow, &kg.arrow);
    let kfg = ker_arrow(&tensor_arrow(f, g));
    let a0 = factor_through(kfg.arrow.map(), pp.arrow.map()).expect("f ⊗ g kills the corner");
    ArrowSquare::from_parts(&pp.arrow, &kfg.arrow, a0, ChainMap::identity(pp.arrow.ev1()))
}

/// `ε_{f⊗g} ∘ coker(lax) = (ε_f ⊗ ε_g) ∘ comparison`.
pub fn lax_structure_check(f: &ArrowObject, g: &ArrowObject) -> Result<bool> {
    let lax = kernel_lax_structure(f, g);
    let lhs = coker_ker_counit(&tensor_arrow(f, g)).compose(&coker_square(&lax));
    let (kf, kg) = (ker_arrow(f), ker_arrow(g));
    let cmp = monoidal_comparison(&kf.arrow, &kg.arrow)?;
    let rhs = tensor_square(&coker_ker_counit(f), &coker_ker_counit(g)).compose(&cmp.square);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::gen::{random_arrow, random_square, random_surjection, GenConfig};
    use crate::linalg::Matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn incl(p: u64) -> ArrowObject {
        let s = ChainComplex::sphere(p, 0);
        let d = ChainComplex::disk(p, 1);
        ArrowObject::new(ChainMap::from_fn(&s, &d, |n| {
            if n == 0 {
                Matrix::identity(p, 1)
            } else {
                Matrix::zeros(p, d.dim(n), s.dim(n))
            }
        }))
        .unwrap()
    }

    #[test]
    fn cokernel_of_unit_arrow_is_identity() {
        let p = 5;
        let s = ChainComplex::unit(p);
        assert_eq!(coker_arrow(&ArrowObject::l1(&s)).arrow, ArrowObject::l0(&s));
        let c = coker_arrow(&incl(p)).arrow;
        assert_eq!(c.ev1(), &ChainComplex::sphere(p, 1));
    }

    #[test]
    fn kernels_of_trivial_arrows() {
        let p = 3;
        let x = ChainComplex::disk(p, 2);
        assert_eq!(ker_arrow(&ArrowObject::u0(&x)).arrow, ArrowObject::l0(&x));
        assert!(ker_arrow(&ArrowObject::l0(&x)).arrow.ev0().is_zero());
    }

    #[test]
    fn adjunction_comparison_and_lax_on_random_arrows() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = GenConfig::new(3, -1, 1, 2);
        for _ in 0..5 {
            let f = random_arrow(&cfg, &mut rng);
            let g = random_arrow(&cfg, &mut rng);
            assert!(coker_ker_adjunction_check(&f, &g));
            monoidal_comparison(&f, &g).unwrap();
            assert!(lax_structure_check(&f, &g).unwrap());
            let a = random_square(&f, &f, &mut rng);
            let b = random_square(&g, &g, &mut rng);
            assert!(comparison_naturality_check(&a, &b).unwrap());
        }
    }

    #[test]
    fn counit_iso_on_surjections_and_unit_iso_on_injections() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cfg = GenConfig::new(5, -1, 2, 2);
        let x = crate::gen::random_complex(&cfg, &mut rng);
        let s = ArrowObject::new(random_surjection(&x, &cfg, &mut rng)).unwrap();
        assert!(coker_ker_counit(&s).is_iso());
        let i = incl(5);
        assert!(coker_ker_unit(&i).is_iso());
    }
}
