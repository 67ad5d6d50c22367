//! Restriction and extension of scalars along a map of Smith ideals.
//!
//! Extension is computed twice: once from the explicit pushout description
//! (`M_1 ⊗_R R'` on top, a pushout of `M_0 ⊗_R R'` and `M_1 ⊗_R I'` below) and
//! once as the coequalizer of `M □ j □ j' ⇉ M □ j'` in the arrow category.
//! Both are quotients of the same generators, so an isomorphism is certified
//! by descending each quotient map through the other.

use super::{smith_action_square, RightModule, SmithIdeal, SmithModule};
use crate::arrow::{associativity_certificate, box_square_between, pushout_product, ArrowSquare, PushoutProduct};
use crate::chain::{associator, cokernel, descend, direct_sum, tensor_map, ChainComplex, ChainMap};
use crate::error::{violation, Result};

/// A map of Smith ideals `j -> j'`: a monoid map on `R` and a compatible
/// bimodule map on `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithMap {
    pub src: SmithIdeal,
    pub dst: SmithIdeal,
    pub a0: ChainMap,
    pub a1: ChainMap,
}

impl SmithMap {
    pub fn identity(s: &SmithIdeal) -> Self {
        SmithMap {
            src: s.clone(),
            dst: s.clone(),
            a0: ChainMap::identity(&s.ideal.carrier),
            a1: ChainMap::identity(&s.alg.carrier),
        }
    }
}

pub fn validate_smith_map(a: &SmithMap) -> Result<()> {
    a.src.validate()?;
    a.dst.validate()?;
    super::MonoidHom {
        src: a.src.alg.clone(),
        dst: a.dst.alg.clone(),
        map: a.a1.clone(),
    }
    .validate()?;
    if a.a0.src() != &a.src.ideal.carrier || a.a0.dst() != &a.dst.ideal.carrier {
        return Err(violation("α_0 has the wrong source or target"));
    }
    a.a0.validate()?;
    if a.dst.j.compose(&a.a0) != a.a1.compose(&a.src.j) {
        return Err(violation("α does not commute with j"));
    }
    let (l, r) = (&a.src.ideal, &a.dst.ideal);
    if a.a0.compose(&l.left) != r.left.compose(&tensor_map(&a.a1, &a.a0))
        || a.a0.compose(&l.right) != r.right.compose(&tensor_map(&a.a0, &a.a1))
    {
        return Err(violation("α_0 is not a bimodule map"));
    }
    Ok(())
}

fn id(x: &ChainComplex) -> ChainMap {
    ChainMap::identity(x)
}

/// `U N`: the same arrow with actions restricted along `α`.
pub fn restrict_scalars(a: &SmithMap, n: &SmithModule) -> Result<SmithModule> {
    validate_smith_map(a)?;
    let u = SmithModule {
        over: a.src.clone(),
        m0: n.m0.restrict(&a.a1),
        m1: n.m1.restrict(&a.a1),
        f: n.f.clone(),
        phi: n.phi.compose(&tensor_map(&id(&n.m1.carrier), &a.a0)),
    };
    u.validate()?;
    Ok(u)
}

/// `M □_j j'` with the quotient maps it is presented by.
#[derive(Clone, Debug)]
pub struct Extension {
    pub module: SmithModule,
    /// `M_0 ⊗ R' ⊕ M_1 ⊗ I' -> E_0`.
    pub quotient0: ChainMap,
    /// `M_1 ⊗ R' -> E_1`.
    pub quotient1: ChainMap,
}

/// Right actions on `M_0 ⊗ R' ⊕ M_1 ⊗ I'` by `R'`.
fn generator_action(m0: &ChainComplex, m1: &ChainComplex, dst: &SmithIdeal) -> (crate::chain::DirectSum, ChainMap) {
    let (rp, ip) = (&dst.alg.carrier, &dst.ideal.carrier);
    let a = crate::chain::tensor_complex(m0, rp);
    let b = crate::chain::tensor_complex(m1, ip);
    let g = direct_sum(&[&a, &b]);
    let idr = id(rp);
    let act = g.inj[0]
        .compose(&tensor_map(&id(m0), &dst.alg.mult))
        .compose(&associator(m0, rp, rp))
        .compose(&tensor_map(&g.proj[0], &idr))
        .add(
            &g.inj[1]
                .compose(&tensor_map(&id(m1), &dst.ideal.right))
                .compose(&associator(m1, ip, rp))
                .compose(&tensor_map(&g.proj[1], &idr)),
        );
    (g, act)
}

/// Relations making `M_1 ⊗ R'` into `M_1 ⊗_R R'`.
fn balanced_relations(m1: &RightModule, a: &SmithMap) -> ChainMap {
    let rp = &a.dst.alg.carrier;
    let left_rp = a.dst.alg.mult.compose(&tensor_map(&a.a1, &id(rp)));
    tensor_map(&m1.act, &id(rp)).sub(&tensor_map(&id(&m1.carrier), &left_rp).compose(&associator(
        &m1.carrier,
        &a.src.alg.carrier,
        rp,
    )))
}

fn extension_top(m: &SmithModule, a: &SmithMap) -> (ChainMap, ChainMap) {
    let rp = &a.dst.alg.carrier;
    let q1 = cokernel(&balanced_relations(&m.m1, a)).proj;
    let e1 = q1.dst().clone();
    let act = descend(
        &tensor_map(&q1, &id(rp)),
        &q1.compose(&tensor_map(&id(&m.m1.carrier), &a.dst.alg.mult))
            .compose(&associator(&m.m1.carrier, rp, rp)),
    )
    .expect("right multiplication respects balancing");
    debug_assert_eq!(act.dst(), &e1);
    (q1, act)
}

pub fn extend_scalars(a: &SmithMap, m: &SmithModule) -> Result<Extension> {
    validate_smith_map(a)?;
    m.validate()?;
    let (m0, m1) = (&m.m0.carrier, &m.m1.carrier);
    let (r, rp, i, ip) = (
        &a.src.alg.carrier,
        &a.dst.alg.carrier,
        &a.src.ideal.carrier,
        &a.dst.ideal.carrier,
    );
    let (g, g_act) = generator_action(m0, m1, &a.dst);

    let left_ip = a.dst.ideal.left.compose(&tensor_map(&a.a1, &id(ip)));
    let r1 = g.inj[0].compose(&balanced_relations(&m.m0, a));
    let r2 = g.inj[1]
        .compose(&tensor_map(&m.m1.act, &id(ip)).sub(&tensor_map(&id(m1), &left_ip).compose(&associator(m1, r, ip))));
    let r3 = g.inj[1]
        .compose(&tensor_map(&m.f, &id(ip)))
        .sub(&g.inj[0].compose(&tensor_map(&id(m0), &a.dst.j)));
    let right_ip = a.dst.ideal.right.compose(&tensor_map(&a.a0, &id(rp)));
    let r4 = g.inj[1]
        .compose(&tensor_map(&id(m1), &right_ip))
        .compose(&associator(m1, i, rp))
        .sub(&g.inj[0].compose(&tensor_map(&m.phi, &id(rp))));
    let rels = [r1, r2, r3, r4];
    let rel_sum = direct_sum(&rels.iter().map(|x| x.src()).collect::<Vec<_>>());
    let q0 = cokernel(&rel_sum.copair(&rels.iter().collect::<Vec<_>>())).proj;

    let (q1, act1) = extension_top(m, a);
    let f = descend(
        &q0,
        &g.copair(&[
            &q1.compose(&tensor_map(&m.f, &id(rp))),
            &q1.compose(&tensor_map(&id(m1), &a.dst.j)),
        ]),
    )
    .ok_or_else(|| violation("structure map does not descend to the pushout"))?;
    let act0 = descend(&tensor_map(&q0, &id(rp)), &q0.compose(&g_act))
        .ok_or_else(|| violation("R'-action does not descend to E_0"))?;
    let phi = descend(
        &tensor_map(&q1, &id(ip)),
        &q0.compose(&g.inj[1])
            .compose(&tensor_map(&id(m1), &a.dst.ideal.left))
            .compose(&associator(m1, rp, ip)),
    )
    .ok_or_else(|| violation("φ does not descend to E_1 ⊗ I'"))?;
    let module = SmithModule {
        over: a.dst.clone(),
        m0: RightModule {
            carrier: q0.dst().clone(),
            act: act0,
        },
        m1: RightModule {
            carrier: q1.dst().clone(),
            act: act1,
        },
        f,
        phi,
    };
    module.validate()?;
    Ok(Extension {
        module,
        quotient0: q0,
        quotient1: q1,
    })
}

/// The coequalizer of `M □ j □ j' ⇉ M □ j'` with its quotient maps.
#[derive(Clone, Debug)]
pub struct ExtensionOracle {
    pub module: SmithModule,
    pub pushout_product: PushoutProduct,
    /// `ev0(M □ j') -> O_0`.
    pub quotient0: ChainMap,
    /// `M_1 ⊗ R' -> O_1`.
    pub quotient1: ChainMap,
}

/// `j` acting on `j'` from the left through `α`: `j □ j' -> j'`.
fn left_action_on_target(a: &SmithMap) -> Result<(PushoutProduct, ArrowSquare)> {
    let (j, jp) = (a.src.arrow(), a.dst.arrow());
    let rp = &a.dst.alg.carrier;
    let ip = &a.dst.ideal.carrier;
    let pp = pushout_product(&j, &jp);
    let a0 = pp
        .mediate(
            &a.dst.ideal.right.compose(&tensor_map(&a.a0, &id(rp))),
            &a.dst.ideal.left.compose(&tensor_map(&a.a1, &id(ip))),
        )
        .ok_or_else(|| violation("α does not make j' a left j-module"))?;
    let a1 = a.dst.alg.mult.compose(&tensor_map(&a.a1, &id(rp)));
    let sq = ArrowSquare::new(&pp.arrow, &jp, a0, a1)?;
    Ok((pp, sq))
}

pub fn extend_scalars_oracle(a: &SmithMap, m: &SmithModule) -> Result<ExtensionOracle> {
    validate_smith_map(a)?;
    let (_, act_m) = smith_action_square(m)?;
    let (_, act_j) = left_action_on_target(a)?;
    let f = act_m.dst.clone();
    let (j, jp) = (a.src.arrow(), a.dst.arrow());
    let target = pushout_product(&f, &jp);
    let cert = associativity_certificate(&f, &j, &jp)?;
    let first = box_square_between(&cert.left, &target, &act_m, &ArrowSquare::identity(&jp));
    let second = box_square_between(&cert.right, &target, &ArrowSquare::identity(&f), &act_j);
    // both out of the cube colimit
    let first = first.compose(&cert.to_left);
    let second = second.compose(&cert.to_right);
    let q0 = cokernel(&first.a0.sub(&second.a0)).proj;
    let q1 = cokernel(&first.a1.sub(&second.a1)).proj;
    let map =
        descend(&q0, &q1.compose(target.arrow.map())).ok_or_else(|| violation("coequalizer arrow does not descend"))?;

    let (rp, ip) = (&a.dst.alg.carrier, &a.dst.ideal.carrier);
    let (m0, m1) = (f.ev0(), f.ev1());
    let (_, g_act) = generator_action(m0, m1, &a.dst);
    let po = &target.pushout;
    let p_act = descend(&tensor_map(&po.quotient, &id(rp)), &po.quotient.compose(&g_act))
        .ok_or_else(|| violation("R'-action does not descend to M □ j'"))?;
    let act0 = descend(&tensor_map(&q0, &id(rp)), &q0.compose(&p_act))
        .ok_or_else(|| violation("R'-action does not descend to O_0"))?;
    let act1 = descend(
        &tensor_map(&q1, &id(rp)),
        &q1.compose(&tensor_map(&id(m1), &a.dst.alg.mult))
            .compose(&associator(m1, rp, rp)),
    )
    .ok_or_else(|| violation("R'-action does not descend to O_1"))?;
    let phi = descend(
        &tensor_map(&q1, &id(ip)),
        &q0.compose(&target.inj_right)
            .compose(&tensor_map(&id(m1), &a.dst.ideal.left))
            .compose(&associator(m1, rp, ip)),
    )
    .ok_or_else(|| violation("φ does not descend to O_1 ⊗ I'"))?;
    let module = SmithModule {
        over: a.dst.clone(),
        m0: RightModule {
            carrier: q0.dst().clone(),
            act: act0,
        },
        m1: RightModule {
            carrier: q1.dst().clone(),
            act: act1,
        },
        f: map,
        phi,
    };
    module.validate()?;
    Ok(ExtensionOracle {
        module,
        pushout_product: target,
        quotient0: q0,
        quotient1: q1,
    })
}

/// Module isomorphism `E -> O` between the two constructions, checked on
/// both components, the structure map, both actions and `φ`.
pub fn extension_iso(e: &Extension, o: &ExtensionOracle) -> Result<(ChainMap, ChainMap)> {
    let via = o.quotient0.compose(&o.pushout_product.pushout.quotient);
    let e0 = descend(&e.quotient0, &via).ok_or_else(|| violation("E_0 -> O_0 does not descend"))?;
    let back0 = descend(&via, &e.quotient0).ok_or_else(|| violation("O_0 -> E_0 does not descend"))?;
    let e1 = descend(&e.quotient1, &o.quotient1).ok_or_else(|| violation("E_1 -> O_1 does not descend"))?;
    let back1 = descend(&o.quotient1, &e.quotient1).ok_or_else(|| violation("O_1 -> E_1 does not descend"))?;
    let (em, om) = (&e.module, &o.module);
    if back0.compose(&e0) != id(&em.m0.carrier)
        || e0.compose(&back0) != id(&om.m0.carrier)
        || back1.compose(&e1) != id(&em.m1.carrier)
        || e1.compose(&back1) != id(&om.m1.carrier)
    {
        return Err(violation("comparison maps are not inverse"));
    }
    if e1.compose(&em.f) != om.f.compose(&e0) {
        return Err(violation("comparison does not commute with the structure maps"));
    }
    let r = &em.over.alg;
    if !RightModule::is_linear_map(&e0, &em.m0, &om.m0, r) || !RightModule::is_linear_map(&e1, &em.m1, &om.m1, r) {
        return Err(violation("comparison is not R'-linear"));
    }
    if e0.compose(&em.phi) != om.phi.compose(&tensor_map(&e1, &id(&em.over.ideal.carrier))) {
        return Err(violation("comparison does not respect φ"));
    }
    Ok((e0, e1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgalg::{ideal_of_power, module_hom_dim, random_smith_module, random_square_zero_pair, unit_module};
    use crate::gen::GenConfig;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_extension_is_the_module() {
        let s = ideal_of_power(3, 3, 0, 1);
        let a = SmithMap::identity(&s.ideal);
        let cfg = GenConfig::new(3, 0, 1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_smith_module(&s, &cfg, &mut rng);
        assert_eq!(restrict_scalars(&a, &m).unwrap(), m);
        let e = extend_scalars(&a, &m).unwrap();
        let o = extend_scalars_oracle(&a, &m).unwrap();
        extension_iso(&e, &o).unwrap();
        assert_eq!(e.module.m1.carrier.graded_dims(), m.m1.carrier.graded_dims());
        assert_eq!(e.module.m0.carrier.graded_dims(), m.m0.carrier.graded_dims());
    }

    #[test]
    fn extension_along_random_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cfg = GenConfig::new(3, -1, 1, 2);
        for _ in 0..3 {
            let (s, t, h, a1) = random_square_zero_pair(&cfg, &mut rng);
            let a = SmithMap {
                src: s.ideal.clone(),
                dst: t.ideal.clone(),
                a0: h,
                a1,
            };
            validate_smith_map(&a).unwrap();
            let m = random_smith_module(&s, &cfg, &mut rng);
            let e = extend_scalars(&a, &m).unwrap();
            let o = extend_scalars_oracle(&a, &m).unwrap();
            extension_iso(&e, &o).unwrap();
            // unit module goes to the unit module
            let u = extend_scalars(&a, &unit_module(&s.ideal)).unwrap();
            assert_eq!(u.module.m1.carrier.graded_dims(), t.ideal.alg.carrier.graded_dims());
            let n = random_smith_module(&t, &cfg, &mut rng);
            let un = restrict_scalars(&a, &n).unwrap();
            assert_eq!(module_hom_dim(&e.module, &n), module_hom_dim(&m, &un));
        }
    }
}
