//! The tensor and pushout-product structures on arrows.

use super::{ArrowObject, ArrowSquare};
use crate::chain::{associator, left_unitor, pushout, symmetry_iso, tensor_map, ChainComplex, ChainMap, Pushout};

/// `(f ⊗ g): X_0 ⊗ Y_0 -> X_1 ⊗ Y_1`.
pub fn tensor_arrow(f: &ArrowObject, g: &ArrowObject) -> ArrowObject {
    ArrowObject::from_map(tensor_map(f.map(), g.map()))
}

pub fn tensor_square(a: &ArrowSquare, b: &ArrowSquare) -> ArrowSquare {
    ArrowSquare::from_parts(
        &tensor_arrow(&a.src, &b.src),
        &tensor_arrow(&a.dst, &b.dst),
        tensor_map(&a.a0, &b.a0),
        tensor_map(&a.a1, &b.a1),
    )
}

pub fn tensor_symmetry(f: &ArrowObject, g: &ArrowObject) -> ArrowSquare {
    ArrowSquare::from_parts(
        &tensor_arrow(f, g),
        &tensor_arrow(g, f),
        symmetry_iso(f.ev0(), g.ev0()),
        symmetry_iso(f.ev1(), g.ev1()),
    )
}

/// `L_0 S ⊗ f -> f`.
pub fn tensor_unitor(f: &ArrowObject) -> ArrowSquare {
    let u = ArrowObject::l0(&ChainComplex::unit(f.p()));
    ArrowSquare::from_parts(&tensor_arrow(&u, f), f, left_unitor(f.ev0()), left_unitor(f.ev1()))
}

/// `(f ⊗ g) ⊗ h -> f ⊗ (g ⊗ h)`.
pub fn tensor_associator(f: &ArrowObject, g: &ArrowObject, h: &ArrowObject) -> ArrowSquare {
    ArrowSquare::from_parts(
        &tensor_arrow(&tensor_arrow(f, g), h),
        &tensor_arrow(f, &tensor_arrow(g, h)),
        associator(f.ev0(), g.ev0(), h.ev0()),
        associator(f.ev1(), g.ev1(), h.ev1()),
    )
}

/// `f □ g` together with the pushout it is built from.
#[derive(Clone, Debug)]
pub struct PushoutProduct {
    pub f: ArrowObject,
    pub g: ArrowObject,
    pub arrow: ArrowObject,
    /// Pushout of `X_0 ⊗ Y_1 <- X_0 ⊗ Y_0 -> X_1 ⊗ Y_0`.
    pub pushout: Pushout,
    /// `X_0 ⊗ Y_1 -> P`.
    pub inj_left: ChainMap,
    /// `X_1 ⊗ Y_0 -> P`.
    pub inj_right: ChainMap,
}

pub fn pushout_product(f: &ArrowObject, g: &ArrowObject) -> PushoutProduct {
    let (x0, x1, y0, y1) = (f.ev0(), f.ev1(), g.ev0(), g.ev1());
    let leg_l = tensor_map(&ChainMap::identity(x0), g.map());
    let leg_r = tensor_map(f.map(), &ChainMap::identity(y0));
    let po = pushout(&leg_l, &leg_r);
    let corner = po
        .mediate(
            &tensor_map(f.map(), &ChainMap::identity(y1)),
            &tensor_map(&ChainMap::identity(x1), g.map()),
        )
        .expect("the corner cocone commutes");
    PushoutProduct {
        f: f.clone(),
        g: g.clone(),
        arrow: ArrowObject::from_map(corner),
        inj_left: po.inl.clone(),
        inj_right: po.inr.clone(),
        pushout: po,
    }
}

impl PushoutProduct {
    pub fn ev0(&self) -> &ChainComplex {
        self.arrow.ev0()
    }

    /// Maps out of `P` determined by their restrictions to both legs.
    pub fn mediate(&self, left: &ChainMap, right: &ChainMap) -> Option<ChainMap> {
        self.pushout.mediate(left, right)
    }
}

/// `α □ β` between already computed pushout products.
pub fn box_square_between(src: &PushoutProduct, dst: &PushoutProduct, a: &ArrowSquare, b: &ArrowSquare) -> ArrowSquare {
    let a1 = tensor_map(&a.a1, &b.a1);
    let a0 = src
        .mediate(
            &dst.inj_left.compose(&tensor_map(&a.a0, &b.a1)),
            &dst.inj_right.compose(&tensor_map(&a.a1, &b.a0)),
        )
        .expect("induced cocone commutes");
    ArrowSquare::from_parts(&src.arrow, &dst.arrow, a0, a1)
}

pub fn box_square(a: &ArrowSquare, b: &ArrowSquare) -> ArrowSquare {
    let src = pushout_product(&a.src, &b.src);
    let dst = pushout_product(&a.dst, &b.dst);
    box_square_between(&src, &dst, a, b)
}

/// Symmetry `f □ g -> g □ f`.
pub fn box_symmetry(fg: &PushoutProduct, gf: &PushoutProduct) -> ArrowSquare {
    let (f, g) = (&fg.f, &fg.g);
    let a0 = fg
        .mediate(
            &gf.inj_right.compose(&symmetry_iso(f.ev0(), g.ev1())),
            &gf.inj_left.compose(&symmetry_iso(f.ev1(), g.ev0())),
        )
        .expect("swapped cocone commutes");
    ArrowSquare::from_parts(&fg.arrow, &gf.arrow, a0, symmetry_iso(f.ev1(), g.ev1()))
}

/// `L_1 S □ f -> f`.
pub fn box_unitor(f: &ArrowObject) -> ArrowSquare {
    let u = ArrowObject::l1(&ChainComplex::unit(f.p()));
    let pp = pushout_product(&u, f);
    let zero = ChainMap::zero(pp.inj_left.src(), f.ev0());
    let a0 = pp.mediate(&zero, &left_unitor(f.ev0())).expect("unit cocone commutes");
    ArrowSquare::from_parts(&pp.arrow, f, a0, left_unitor(f.ev1()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

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
    fn unit_box_unit() {
        let p = 5;
        let u = ArrowObject::l1(&ChainComplex::unit(p));
        let pp = pushout_product(&u, &u);
        assert!(pp.ev0().is_zero());
        assert_eq!(pp.arrow.ev1(), &ChainComplex::unit(p));
    }

    #[test]
    fn boundary_inclusion_box_itself() {
        // (S^0 -> D^1) □ (S^0 -> D^1) is the inclusion of the boundary of a square cell
        let p = 3;
        let i = incl(p);
        let pp = pushout_product(&i, &i);
        pp.arrow.map().validate().unwrap();
        assert!(pp.arrow.map().is_injective());
        assert_eq!(pp.ev0().dim(0), 1);
        assert_eq!(pp.ev0().dim(1), 2);
        assert_eq!(pp.arrow.ev1().dim(2), 1);
    }

    #[test]
    fn unitors_and_symmetries_are_isos() {
        let p = 7;
        let i = incl(p);
        for sq in [box_unitor(&i), tensor_unitor(&i)] {
            sq.validate().unwrap();
            assert!(sq.is_iso());
        }
        let pp = pushout_product(&i, &i);
        let s = box_symmetry(&pp, &pp);
        s.validate().unwrap();
        assert_eq!(s.compose(&s), ArrowSquare::identity(&pp.arrow));
    }
}
