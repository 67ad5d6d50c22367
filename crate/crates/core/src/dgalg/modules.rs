//! Modules over Smith ideals and over monoid homomorphisms, and the functors
//! between them induced by cokernel and kernel.

use super::{
    add_linear_constraint, composite_equation, kernel_smith_ideal, quotient_dga, right_module_map_space, RightModule,
    SmithIdeal, SmithModule, TensorMonoidModule,
};
use crate::arrow::{pushout_product, tensor_arrow, ArrowObject, ArrowSquare, PushoutProduct};
use crate::chain::{direct_sum, tensor_map, ChainMap};
use crate::error::{violation, Result};
use crate::kerco::{coker_arrow, coker_square, ker_square, kernel_lax_structure, monoidal_comparison};
use crate::linalg::LinearSystem;

/// The action `f □ j -> f` of a module, with the pushout product it starts from.
pub fn smith_action_square(m: &SmithModule) -> Result<(PushoutProduct, ArrowSquare)> {
    let f = ArrowObject::from_map(m.f.clone());
    let pp = pushout_product(&f, &m.over.arrow());
    // M_0 ⊗ R -> M_0 and M_1 ⊗ I -> M_0
    let a0 = pp
        .mediate(&m.m0.act, &m.phi)
        .ok_or_else(|| violation("φ (f ⊗ 1) != act_0 (1 ⊗ j)"))?;
    let sq = ArrowSquare::new(&pp.arrow, &f, a0, m.m1.act.clone())?;
    Ok((pp, sq))
}

/// Unwinds an action square `f □ j -> f` into module data.
pub fn smith_module_from_action(over: &SmithIdeal, pp: &PushoutProduct, action: &ArrowSquare) -> Result<SmithModule> {
    let f = action.dst.map();
    let m = SmithModule {
        over: over.clone(),
        m0: RightModule {
            carrier: f.src().clone(),
            act: action.a0.compose(&pp.inj_left),
        },
        m1: RightModule {
            carrier: f.dst().clone(),
            act: action.a1.clone(),
        },
        f: f.clone(),
        phi: action.a0.compose(&pp.inj_right),
    };
    m.validate()?;
    Ok(m)
}

/// `coker f` as a module over `R -> R/I`.
pub fn module_coker(m: &SmithModule) -> Result<TensorMonoidModule> {
    let over = quotient_dga(&m.over)?;
    let (_, act) = smith_action_square(m)?;
    let f = &act.dst;
    let cmp = monoidal_comparison(f, &m.over.arrow())?;
    let induced = coker_square(&act).compose(&cmp.inverse);
    let cf = coker_arrow(f).arrow;
    let n = TensorMonoidModule {
        over,
        m0: RightModule {
            carrier: cf.ev0().clone(),
            act: induced.a0,
        },
        m1: RightModule {
            carrier: cf.ev1().clone(),
            act: induced.a1,
        },
        f: cf.map().clone(),
    };
    n.validate()?;
    Ok(n)
}

/// The square `f ⊗ p -> f` given by the two actions.
pub fn tensor_action_square(n: &TensorMonoidModule) -> Result<ArrowSquare> {
    let f = ArrowObject::from_map(n.f.clone());
    let p = ArrowObject::from_map(n.over.map.clone());
    ArrowSquare::new(&tensor_arrow(&f, &p), &f, n.m0.act.clone(), n.m1.act.clone())
}

/// `ker f` as a module over the Smith ideal `ker p`.
pub fn module_ker(n: &TensorMonoidModule) -> Result<SmithModule> {
    let over = kernel_smith_ideal(&n.over)?;
    let act = tensor_action_square(n)?;
    let p = ArrowObject::from_map(n.over.map.clone());
    let action = ker_square(&act).compose(&kernel_lax_structure(&act.dst, &p));
    // the action starts at ker f □ ker p and ends at ker f
    let pp = pushout_product(&action.dst, &over.arrow());
    smith_module_from_action(&over, &pp, &action)
}

/// Dimension of the space of module maps `M -> N` over the same Smith ideal.
pub fn module_hom_dim(m: &SmithModule, n: &SmithModule) -> usize {
    let r = &m.over.alg;
    let mut sys = LinearSystem::new(r.p());
    let g0 = right_module_map_space(&mut sys, &m.m0, &n.m0, r);
    let g1 = right_module_map_space(&mut sys, &m.m1, &n.m1, r);
    let id0 = ChainMap::identity(&m.m0.carrier);
    let id1 = ChainMap::identity(n.f.dst());
    composite_equation(
        &mut sys,
        &[(&id1, &g1, &m.f), (&n.f.neg(), &g0, &id0)],
        &ChainMap::zero(&m.m0.carrier, n.f.dst()),
    );
    let i = m.over.ideal.carrier.clone();
    let phi_m = m.phi.clone();
    let phi_n = n.phi.clone();
    let lhs = move |g: &ChainMap| g.compose(&phi_m);
    let rhs = move |g: &ChainMap| phi_n.compose(&tensor_map(g, &ChainMap::identity(&i))).neg();
    add_linear_constraint(
        &mut sys,
        &[(&g0, &lhs), (&g1, &rhs)],
        &ChainMap::zero(m.phi.src(), &n.m0.carrier),
    )
    .expect("φ-compatibility equation");
    sys.nullity()
}

/// Dimension of the space of module maps over the same monoid homomorphism.
pub fn tensor_module_hom_dim(m: &TensorMonoidModule, n: &TensorMonoidModule) -> usize {
    let mut sys = LinearSystem::new(m.over.src.p());
    let g0 = right_module_map_space(&mut sys, &m.m0, &n.m0, &m.over.src);
    let g1 = right_module_map_space(&mut sys, &m.m1, &n.m1, &m.over.dst);
    composite_equation(
        &mut sys,
        &[
            (&ChainMap::identity(n.f.dst()), &g1, &m.f),
            (&n.f.neg(), &g0, &ChainMap::identity(m.f.src())),
        ],
        &ChainMap::zero(m.f.src(), n.f.dst()),
    );
    sys.nullity()
}

fn sum_action(
    a: &RightModule,
    b: &RightModule,
    other: &crate::chain::ChainComplex,
) -> (crate::chain::ChainComplex, ChainMap) {
    let s = direct_sum(&[&a.carrier, &b.carrier]);
    let id = ChainMap::identity(other);
    let act = s.inj[0]
        .compose(&a.act)
        .compose(&tensor_map(&s.proj[0], &id))
        .add(&s.inj[1].compose(&b.act).compose(&tensor_map(&s.proj[1], &id)));
    (s.obj, act)
}

/// Direct sum of two modules over the same Smith ideal.
pub fn module_direct_sum(a: &SmithModule, b: &SmithModule) -> SmithModule {
    let r = &a.over.alg.carrier;
    let i = &a.over.ideal.carrier;
    let (c0, act0) = sum_action(&a.m0, &b.m0, r);
    let (c1, act1) = sum_action(&a.m1, &b.m1, r);
    let s0 = direct_sum(&[&a.m0.carrier, &b.m0.carrier]);
    let s1 = direct_sum(&[&a.m1.carrier, &b.m1.carrier]);
    let f = s1.inj[0]
        .compose(&a.f)
        .compose(&s0.proj[0])
        .add(&s1.inj[1].compose(&b.f).compose(&s0.proj[1]));
    let id = ChainMap::identity(i);
    let phi = s0.inj[0]
        .compose(&a.phi)
        .compose(&tensor_map(&s1.proj[0], &id))
        .add(&s0.inj[1].compose(&b.phi).compose(&tensor_map(&s1.proj[1], &id)));
    SmithModule {
        over: a.over.clone(),
        m0: RightModule { carrier: c0, act: act0 },
        m1: RightModule { carrier: c1, act: act1 },
        f,
        phi,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgalg::{ideal_of_power, random_smith_ideal, random_smith_module, trivial_module, unit_module};
    use crate::gen::GenConfig;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_module_cokernel_is_the_quotient() {
        let s = ideal_of_power(3, 3, 0, 1).ideal;
        let u = unit_module(&s);
        let c = module_coker(&u).unwrap();
        let q = quotient_dga(&s).unwrap();
        assert_eq!(c.m1.carrier, q.dst.carrier);
        assert_eq!(c.m1.act, q.dst.mult);
        assert_eq!(c.f, q.map);
    }

    #[test]
    fn zero_module_goes_to_zero() {
        let a = ideal_of_power(5, 2, 0, 1);
        let z = crate::chain::ChainComplex::zero(5);
        let f = ChainMap::zero(&z, &z);
        let m = trivial_module(
            &a,
            &f,
            &ChainMap::zero(&crate::chain::tensor_complex(&z, &a.ideal.ideal.carrier), &z),
        );
        m.validate().unwrap();
        let c = module_coker(&m).unwrap();
        assert!(c.m0.carrier.is_zero() && c.m1.carrier.is_zero());
        let k = module_ker(&c).unwrap();
        assert!(k.m0.carrier.is_zero() && k.m1.carrier.is_zero());
    }

    #[test]
    fn random_modules_transport() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let cfg = GenConfig::new(3, -1, 1, 2);
        for _ in 0..4 {
            let s = random_smith_ideal(&cfg, &mut rng);
            let m = module_direct_sum(&random_smith_module(&s, &cfg, &mut rng), &unit_module(&s.ideal));
            m.validate().unwrap();
            let c = module_coker(&m).unwrap();
            let k = module_ker(&c).unwrap();
            k.validate().unwrap();
            assert!(module_hom_dim(&m, &m) >= 1);
            assert!(tensor_module_hom_dim(&c, &c) >= 1 || c.m0.carrier.is_zero());
        }
    }
}
