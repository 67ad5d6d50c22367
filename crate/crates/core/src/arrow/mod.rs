//! The arrow category: objects are chain maps, morphisms commuting squares.

mod closed;
mod cube;
mod monoidal;

pub use closed::{curry, hom_pushout, hom_tensor, pushout_adjunction_check, tensor_adjunction_check, uncurry};
pub use cube::{associativity_certificate, AssociativityCertificate, CubeColimit};
pub use monoidal::{
    box_square, box_square_between, box_symmetry, box_unitor, pushout_product, tensor_arrow, tensor_associator,
    tensor_square, tensor_symmetry, tensor_unitor, PushoutProduct,
};

use crate::chain::{add_composite_equation, map_space, ChainComplex, ChainMap, ChainMapUnknown};
use crate::error::{Error, Result};
use crate::linalg::LinearSystem;

/// An object `f: X_0 -> X_1` of the arrow category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowObject {
    f: ChainMap,
}

impl ArrowObject {
    pub fn new(f: ChainMap) -> Result<Self> {
        f.validate()?;
        Ok(ArrowObject { f })
    }

    pub(crate) fn from_map(f: ChainMap) -> Self {
        ArrowObject { f }
    }

    pub fn map(&self) -> &ChainMap {
        &self.f
    }

    pub fn p(&self) -> u64 {
        self.f.p()
    }

    pub fn ev0(&self) -> &ChainComplex {
        self.f.src()
    }

    pub fn ev1(&self) -> &ChainComplex {
        self.f.dst()
    }

    /// `L_0 X = U_1 X = id_X`.
    pub fn l0(x: &ChainComplex) -> Self {
        ArrowObject::from_map(ChainMap::identity(x))
    }

    /// `L_1 X = (0 -> X)`.
    pub fn l1(x: &ChainComplex) -> Self {
        ArrowObject::from_map(ChainMap::zero(&ChainComplex::zero(x.p()), x))
    }

    /// `U_0 X = (X -> 0)`.
    pub fn u0(x: &ChainComplex) -> Self {
        ArrowObject::from_map(ChainMap::zero(x, &ChainComplex::zero(x.p())))
    }

    pub fn u1(x: &ChainComplex) -> Self {
        Self::l0(x)
    }
}

/// A square `α: f -> g` with `g α_0 = α_1 f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowSquare {
    pub src: ArrowObject,
    pub dst: ArrowObject,
    pub a0: ChainMap,
    pub a1: ChainMap,
}

impl ArrowSquare {
    pub fn new(src: &ArrowObject, dst: &ArrowObject, a0: ChainMap, a1: ChainMap) -> Result<Self> {
        let sq = ArrowSquare {
            src: src.clone(),
            dst: dst.clone(),
            a0,
            a1,
        };
        sq.validate()?;
        Ok(sq)
    }

    pub(crate) fn from_parts(src: &ArrowObject, dst: &ArrowObject, a0: ChainMap, a1: ChainMap) -> Self {
        debug_assert!(a0.src() == src.ev0() && a0.dst() == dst.ev0());
        debug_assert!(a1.src() == src.ev1() && a1.dst() == dst.ev1());
        ArrowSquare {
            src: src.clone(),
            dst: dst.clone(),
            a0,
            a1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.a0.src() != self.src.ev0()
            || self.a0.dst() != self.dst.ev0()
            || self.a1.src() != self.src.ev1()
            || self.a1.dst() != self.dst.ev1()
        {
            return Err(Error::DimensionMismatch(
                "square components do not match the arrows".into(),
            ));
        }
        self.a0.validate()?;
        self.a1.validate()?;
        if self.dst.map().compose(&self.a0) != self.a1.compose(self.src.map()) {
            return Err(Error::Violation("square does not commute".into()));
        }
        Ok(())
    }

    pub fn identity(f: &ArrowObject) -> Self {
        Self::from_parts(f, f, ChainMap::identity(f.ev0()), ChainMap::identity(f.ev1()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ArrowSquare) -> ArrowSquare {
        assert!(other.dst == self.src, "square composition mismatch");
        Self::from_parts(
            &other.src,
            &self.dst,
            self.a0.compose(&other.a0),
            self.a1.compose(&other.a1),
        )
    }

    pub fn is_iso(&self) -> bool {
        self.a0.is_iso() && self.a1.is_iso()
    }

    pub fn inverse(&self) -> Option<ArrowSquare> {
        Some(Self::from_parts(
            &self.dst,
            &self.src,
            self.a0.inverse()?,
            self.a1.inverse()?,
        ))
    }

    /// `Ev_0` and `Ev_1` on squares.
    pub fn ev0(&self) -> &ChainMap {
        &self.a0
    }

    pub fn ev1(&self) -> &ChainMap {
        &self.a1
    }
}

/// `L_0` on a chain map: the square `(h, h): id_X -> id_Y`.
pub fn l0_map(h: &ChainMap) -> ArrowSquare {
    ArrowSquare::from_parts(
        &ArrowObject::l0(h.src()),
        &ArrowObject::l0(h.dst()),
        h.clone(),
        h.clone(),
    )
}

pub fn l1_map(h: &ChainMap) -> ArrowSquare {
    let (a, b) = (ArrowObject::l1(h.src()), ArrowObject::l1(h.dst()));
    ArrowSquare::from_parts(&a, &b, ChainMap::zero(a.ev0(), b.ev0()), h.clone())
}

pub fn u0_map(h: &ChainMap) -> ArrowSquare {
    let (a, b) = (ArrowObject::u0(h.src()), ArrowObject::u0(h.dst()));
    ArrowSquare::from_parts(&a, &b, h.clone(), ChainMap::zero(a.ev1(), b.ev1()))
}

pub fn u1_map(h: &ChainMap) -> ArrowSquare {
    l0_map(h)
}

/// Unknown square `f -> g` registered in a linear system.
pub struct SquareUnknown {
    pub a0: ChainMapUnknown,
    pub a1: ChainMapUnknown,
    pub src: ArrowObject,
    pub dst: ArrowObject,
}

pub fn square_space(sys: &mut LinearSystem, f: &ArrowObject, g: &ArrowObject) -> SquareUnknown {
    let a0 = map_space(sys, f.ev0(), g.ev0());
    let a1 = map_space(sys, f.ev1(), g.ev1());
    let id0 = ChainMap::identity(f.ev0());
    let minus = ChainMap::identity(g.ev1()).neg();
    let zero = ChainMap::zero(f.ev0(), g.ev1());
    add_composite_equation(sys, &[(g.map(), &a0, &id0), (&minus, &a1, f.map())], &zero)
        .expect("square equation shapes agree");
    SquareUnknown {
        a0,
        a1,
        src: f.clone(),
        dst: g.clone(),
    }
}

impl SquareUnknown {
    pub fn extract(&self, sol: &[crate::linalg::Matrix]) -> ArrowSquare {
        ArrowSquare::from_parts(&self.src, &self.dst, self.a0.extract(sol), self.a1.extract(sol))
    }
}

/// `dim Arr(f, g)`.
pub fn square_space_dim(f: &ArrowObject, g: &ArrowObject) -> usize {
    let mut sys = LinearSystem::new(f.p());
    square_space(&mut sys, f, g);
    sys.nullity()
}

/// `dim C(A, B)`.
pub fn map_space_dim(a: &ChainComplex, b: &ChainComplex) -> usize {
    let mut sys = LinearSystem::new(a.p());
    map_space(&mut sys, a, b);
    sys.nullity()
}

/// The four evaluation adjunctions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalAdjunction {
    /// `L_0 ⊣ Ev_0`
    L0Ev0,
    /// `L_1 ⊣ Ev_1`
    L1Ev1,
    /// `Ev_0 ⊣ U_0`
    Ev0U0,
    /// `Ev_1 ⊣ U_1`
    Ev1U1,
}

impl EvalAdjunction {
    pub const ALL: [EvalAdjunction; 4] = [Self::L0Ev0, Self::L1Ev1, Self::Ev0U0, Self::Ev1U1];

    pub fn name(self) -> &'static str {
        match self {
            Self::L0Ev0 => "L0 -| Ev0",
            Self::L1Ev1 => "L1 -| Ev1",
            Self::Ev0U0 => "Ev0 -| U0",
            Self::Ev1U1 => "Ev1 -| U1",
        }
    }
}

/// Unit `x -> Ev_i L_i x` and counit `L_i Ev_i f -> f` of `L_i ⊣ Ev_i`.
fn left_unit_counit(i: usize, x: &ChainComplex, f: &ArrowObject) -> (ChainMap, ArrowSquare) {
    let unit = ChainMap::identity(x);
    let counit = if i == 0 {
        let l = ArrowObject::l0(f.ev0());
        ArrowSquare::from_parts(&l, f, ChainMap::identity(f.ev0()), f.map().clone())
    } else {
        let l = ArrowObject::l1(f.ev1());
        ArrowSquare::from_parts(&l, f, ChainMap::zero(l.ev0(), f.ev0()), ChainMap::identity(f.ev1()))
    };
    (unit, counit)
}

/// Unit `f -> U_i Ev_i f` and counit `Ev_i U_i x -> x` of `Ev_i ⊣ U_i`.
fn right_unit_counit(i: usize, x: &ChainComplex, f: &ArrowObject) -> (ArrowSquare, ChainMap) {
    let unit = if i == 0 {
        let u = ArrowObject::u0(f.ev0());
        ArrowSquare::from_parts(f, &u, ChainMap::identity(f.ev0()), ChainMap::zero(f.ev1(), u.ev1()))
    } else {
        let u = ArrowObject::u1(f.ev1());
        ArrowSquare::from_parts(f, &u, f.map().clone(), ChainMap::identity(f.ev1()))
    };
    (unit, ChainMap::identity(x))
}

/// Hom-dimension equality plus both triangle identities, as matrix equalities.
pub fn adjunction_check(kind: EvalAdjunction, x: &ChainComplex, f: &ArrowObject) -> bool {
    match kind {
        EvalAdjunction::L0Ev0 | EvalAdjunction::L1Ev1 => {
            let i = if kind == EvalAdjunction::L0Ev0 { 0 } else { 1 };
            let (lx, ev) = if i == 0 {
                (ArrowObject::l0(x), f.ev0())
            } else {
                (ArrowObject::l1(x), f.ev1())
            };
            if square_space_dim(&lx, f) != map_space_dim(x, ev) {
                return false;
            }
            let (eta_x, _) = left_unit_counit(i, x, f);
            // ε_{L x} ∘ L(η_x) = id_{L x}
            let (_, eps_lx) = left_unit_counit(i, x, &lx);
            let l_eta = if i == 0 { l0_map(&eta_x) } else { l1_map(&eta_x) };
            let t1 = eps_lx.compose(&l_eta) == ArrowSquare::identity(&lx);
            // Ev(ε_f) ∘ η_{Ev f} = id
            let (eta_ev, eps_f) = left_unit_counit(i, ev, f);
            let ev_eps = if i == 0 { eps_f.ev0() } else { eps_f.ev1() };
            let t2 = ev_eps.compose(&eta_ev) == ChainMap::identity(ev);
            t1 && t2
        }
        EvalAdjunction::Ev0U0 | EvalAdjunction::Ev1U1 => {
            let i = if kind == EvalAdjunction::Ev0U0 { 0 } else { 1 };
            let (ux, ev) = if i == 0 {
                (ArrowObject::u0(x), f.ev0())
            } else {
                (ArrowObject::u1(x), f.ev1())
            };
            if square_space_dim(f, &ux) != map_space_dim(ev, x) {
                return false;
            }
            // ε_{Ev f} ∘ Ev(η_f) = id_{Ev f}
            let (eta_f, _) = right_unit_counit(i, ev, f);
            let ev_eta = if i == 0 { eta_f.ev0() } else { eta_f.ev1() };
            let (_, eps_ev) = right_unit_counit(i, ev, f);
            let t1 = eps_ev.compose(ev_eta) == ChainMap::identity(ev);
            // U(ε_x) ∘ η_{U x} = id_{U x}
            let (eta_ux, eps_x) = right_unit_counit(i, x, &ux);
            let u_eps = if i == 0 { u0_map(&eps_x) } else { u1_map(&eps_x) };
            let t2 = u_eps.compose(&eta_ux) == ArrowSquare::identity(&ux);
            t1 && t2
        }
    }
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
    fn evaluations_of_unit_arrows() {
        let p = 5;
        let s = ChainComplex::unit(p);
        let l1 = ArrowObject::l1(&s);
        assert!(l1.ev0().is_zero());
        assert_eq!(l1.ev1(), &s);
        assert_eq!(ArrowObject::l0(&s).map(), &ChainMap::identity(&s));
        assert!(ArrowObject::u0(&s).ev1().is_zero());
    }

    #[test]
    fn all_adjunctions_on_small_inputs() {
        let p = 3;
        let f = incl(p);
        for x in [
            ChainComplex::unit(p),
            ChainComplex::disk(p, 1),
            ChainComplex::sphere(p, 1),
        ] {
            for kind in EvalAdjunction::ALL {
                assert!(adjunction_check(kind, &x, &f), "{} on {:?}", kind.name(), x);
            }
        }
    }

    #[test]
    fn non_commuting_square_rejected() {
        let p = 5;
        let f = incl(p);
        let id = ArrowSquare::identity(&f);
        assert!(id.validate().is_ok());
        let bad = ArrowSquare::new(&f, &f, ChainMap::identity(f.ev0()), ChainMap::zero(f.ev1(), f.ev1()));
        assert!(bad.is_err());
    }
}
