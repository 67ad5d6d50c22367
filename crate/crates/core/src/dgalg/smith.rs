//! Smith ideals as monoids for `□`, and the quotient/kernel correspondence
//! with monoid homomorphisms.

use super::{DGAlgebra, DGBimodule, MonoidHom, SmithIdeal};
use crate::arrow::{
    associativity_certificate, box_square_between, box_symmetry, box_unitor, pushout_product, tensor_arrow,
    ArrowObject, ArrowSquare,
};
use crate::chain::{descend, factor_through, tensor_map, ChainComplex, ChainMap};
use crate::error::{violation, Result};
use crate::kerco::{coker_arrow, coker_square, ker_arrow, ker_square, kernel_lax_structure, monoidal_comparison};

/// A monoid `(j, μ, η)` for the pushout product: `μ: j □ j -> j`, `η: L_1 S -> j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMonoid {
    pub arrow: ArrowObject,
    pub mult: ArrowSquare,
    pub unit: ArrowSquare,
}

fn unit_arrow(p: u64) -> ArrowObject {
    ArrowObject::l1(&ChainComplex::unit(p))
}

pub fn smith_to_square_monoid(s: &SmithIdeal) -> Result<SquareMonoid> {
    let j = s.arrow();
    let pp = pushout_product(&j, &j);
    // I ⊗ R -> I on the left leg, R ⊗ I -> I on the right leg
    let a0 = pp
        .mediate(&s.ideal.right, &s.ideal.left)
        .ok_or_else(|| violation("the two products I ⊗ I -> I disagree"))?;
    let mult = ArrowSquare::new(&pp.arrow, &j, a0, s.alg.mult.clone())?;
    let u = unit_arrow(s.p());
    let unit = ArrowSquare::new(&u, &j, ChainMap::zero(u.ev0(), j.ev0()), s.alg.unit.clone())?;
    Ok(SquareMonoid { arrow: j, mult, unit })
}

pub fn validate_square_monoid(m: &SquareMonoid) -> Result<()> {
    let j = &m.arrow;
    let pp = pushout_product(j, j);
    if m.mult.src != pp.arrow || m.mult.dst != *j {
        return Err(violation("multiplication is not a square j □ j -> j"));
    }
    if m.unit.src != unit_arrow(j.p()) || m.unit.dst != *j {
        return Err(violation("unit is not a square L_1 S -> j"));
    }
    m.mult.validate()?;
    m.unit.validate()?;
    let id = ArrowSquare::identity(j);
    let cert = associativity_certificate(j, j, j)?;
    let lhs = m
        .mult
        .compose(&box_square_between(&cert.left, &pp, &m.mult, &id))
        .compose(&cert.to_left);
    let rhs = m
        .mult
        .compose(&box_square_between(&cert.right, &pp, &id, &m.mult))
        .compose(&cert.to_right);
    if lhs != rhs {
        return Err(violation("□-multiplication is not associative"));
    }
    let u = unit_arrow(j.p());
    let uj = pushout_product(&u, j);
    if m.mult.compose(&box_square_between(&uj, &pp, &m.unit, &id)) != box_unitor(j) {
        return Err(violation("□-unit is not a left unit"));
    }
    let ju = pushout_product(j, &u);
    let right_unitor = box_unitor(j).compose(&box_symmetry(&ju, &uj));
    if m.mult.compose(&box_square_between(&ju, &pp, &id, &m.unit)) != right_unitor {
        return Err(violation("□-unit is not a right unit"));
    }
    Ok(())
}

pub fn smith_from_square_monoid(m: &SquareMonoid) -> Result<SmithIdeal> {
    validate_square_monoid(m)?;
    let pp = pushout_product(&m.arrow, &m.arrow);
    let s = SmithIdeal {
        alg: DGAlgebra {
            carrier: m.arrow.ev1().clone(),
            mult: m.mult.a1.clone(),
            unit: m.unit.a1.clone(),
        },
        ideal: DGBimodule {
            carrier: m.arrow.ev0().clone(),
            left: m.mult.a0.compose(&pp.inj_right),
            right: m.mult.a0.compose(&pp.inj_left),
        },
        j: m.arrow.map().clone(),
    };
    s.validate()?;
    Ok(s)
}

/// `R -> R/I` with the multiplication carried across the monoidal comparison.
pub fn quotient_dga(s: &SmithIdeal) -> Result<MonoidHom> {
    let sm = smith_to_square_monoid(s)?;
    let cmp = monoidal_comparison(&sm.arrow, &sm.arrow)?;
    let ck = coker_square(&sm.mult);
    let mult = ck.a1.compose(&cmp.inverse.a1);
    let pi = coker_arrow(&sm.arrow).cokernel.proj;
    let unit = pi.compose(&s.alg.unit);
    let h = MonoidHom {
        src: s.alg.clone(),
        dst: DGAlgebra {
            carrier: pi.dst().clone(),
            mult,
            unit,
        },
        map: pi,
    };
    h.validate()?;
    Ok(h)
}

/// The □-monoid on `ker p` induced by the lax structure of the kernel.
pub fn kernel_smith_ideal(h: &MonoidHom) -> Result<SmithIdeal> {
    h.validate()?;
    let p = ArrowObject::from_map(h.map.clone());
    let mult_sq = ArrowSquare::new(&tensor_arrow(&p, &p), &p, h.src.mult.clone(), h.dst.mult.clone())?;
    let mult = ker_square(&mult_sq).compose(&kernel_lax_structure(&p, &p));
    let k = ker_arrow(&p).arrow;
    let u = unit_arrow(h.src.p());
    let unit = ArrowSquare::new(&u, &k, ChainMap::zero(u.ev0(), k.ev0()), h.src.unit.clone())?;
    smith_from_square_monoid(&SquareMonoid { arrow: k, mult, unit })
}

fn is_monoid_map(g: &ChainMap, a: &DGAlgebra, b: &DGAlgebra) -> bool {
    g.compose(&a.mult) == b.mult.compose(&tensor_map(g, g)) && g.compose(&a.unit) == b.unit
}

/// For degreewise surjective `p`, the algebra isomorphism `R/ker p -> target`.
pub fn quotient_kernel_iso(h: &MonoidHom) -> Result<ChainMap> {
    let q = quotient_dga(&kernel_smith_ideal(h)?)?;
    let iso = descend(&q.map, &h.map).ok_or_else(|| violation("p does not kill its kernel"))?;
    if !iso.is_iso() {
        return Err(violation("R/ker p -> target is not an isomorphism"));
    }
    if !is_monoid_map(&iso, &q.dst, &h.dst) {
        return Err(violation("R/ker p -> target is not multiplicative"));
    }
    Ok(iso)
}

/// For injective `j`, the bimodule isomorphism `I -> ker(R -> R/I)`.
pub fn kernel_quotient_iso(s: &SmithIdeal) -> Result<ChainMap> {
    let k = kernel_smith_ideal(&quotient_dga(s)?)?;
    let iso = factor_through(&k.j, &s.j).ok_or_else(|| violation("j does not land in the kernel"))?;
    if !iso.is_iso() {
        return Err(violation("I -> ker(R -> R/I) is not an isomorphism"));
    }
    let idr = ChainMap::identity(&s.alg.carrier);
    if iso.compose(&s.ideal.left) != k.ideal.left.compose(&tensor_map(&idr, &iso))
        || iso.compose(&s.ideal.right) != k.ideal.right.compose(&tensor_map(&iso, &idr))
    {
        return Err(violation("I -> ker(R -> R/I) is not a bimodule map"));
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgalg::{field_algebra, ideal_of_power, random_smith_ideal, square_zero_ideal};
    use crate::gen::GenConfig;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_monoid_round_trips() {
        let p = 3;
        let r = field_algebra(p);
        let s = SmithIdeal {
            ideal: DGBimodule {
                carrier: ChainComplex::zero(p),
                left: ChainMap::zero(
                    &crate::chain::tensor_complex(&r.carrier, &ChainComplex::zero(p)),
                    &ChainComplex::zero(p),
                ),
                right: ChainMap::zero(
                    &crate::chain::tensor_complex(&ChainComplex::zero(p), &r.carrier),
                    &ChainComplex::zero(p),
                ),
            },
            j: ChainMap::zero(&ChainComplex::zero(p), &r.carrier),
            alg: r,
        };
        s.validate().unwrap();
        let m = smith_to_square_monoid(&s).unwrap();
        assert_eq!(m.arrow, unit_arrow(p));
        assert_eq!(smith_from_square_monoid(&m).unwrap(), s);
    }

    #[test]
    fn dual_numbers_quotient_to_the_field() {
        let p = 5;
        let s = ideal_of_power(p, 2, 0, 1).ideal;
        let m = smith_to_square_monoid(&s).unwrap();
        assert_eq!(smith_from_square_monoid(&m).unwrap(), s);
        assert_eq!(
            smith_to_square_monoid(&smith_from_square_monoid(&m).unwrap()).unwrap(),
            m
        );
        let q = quotient_dga(&s).unwrap();
        assert_eq!(q.dst.carrier.total_dim(), 1);
        assert_eq!(q.map.comp(0).rank(), 1);
        // x ↦ 0
        assert!(q.map.comp(0).get(0, 1) == 0);
        let k = kernel_smith_ideal(&q).unwrap();
        assert_eq!(k.ideal.carrier.total_dim(), 1);
        kernel_quotient_iso(&s).unwrap();
        quotient_kernel_iso(&q).unwrap();
    }

    #[test]
    fn extreme_ideals() {
        let p = 3;
        let m = ChainComplex::disk(p, 1);
        let s = square_zero_ideal(&m).ideal;
        // I = R
        let all = SmithIdeal {
            ideal: s.alg.as_bimodule(),
            j: ChainMap::identity(&s.alg.carrier),
            alg: s.alg.clone(),
        };
        let q = quotient_dga(&all).unwrap();
        assert!(q.dst.carrier.is_zero());
        // p = id
        let k = kernel_smith_ideal(&MonoidHom::identity(&s.alg)).unwrap();
        assert!(k.ideal.carrier.is_zero());
        let q = quotient_dga(&k).unwrap();
        assert!(q.map.is_iso());
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cfg = GenConfig::new(3, -1, 1, 2);
        for _ in 0..4 {
            let s = random_smith_ideal(&cfg, &mut rng).ideal;
            let m = smith_to_square_monoid(&s).unwrap();
            assert_eq!(smith_from_square_monoid(&m).unwrap(), s);
            kernel_quotient_iso(&s).unwrap();
        }
    }
}
