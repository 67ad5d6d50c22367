//! DG algebras, bimodules, Smith ideals and their modules.
//!
//! A Smith ideal is a bimodule map `j: I -> R` whose two induced products
//! `I ⊗ I -> I` agree: `left ∘ (j ⊗ 1) = right ∘ (1 ⊗ j)`. Modules over a Smith
//! ideal are stored with the undescended map `φ̃: M_1 ⊗ I -> M_0`; validation
//! checks that it descends to `M_1 ⊗_R I` and is right `R`-linear.

mod examples;
mod free;
mod modules;
mod scalars;
mod smith;
mod strong;

pub use examples::{
    field_algebra, ideal_of_power, random_smith_ideal, random_smith_module, random_square_zero_pair,
    square_zero_algebra, square_zero_ideal, trivial_module, truncated_polynomial, twisted_ideal, unit_module,
    Augmented,
};
pub use free::{free_smith_ideal_truncated, TruncatedFree};
pub use modules::{
    module_coker, module_direct_sum, module_hom_dim, module_ker, smith_action_square, smith_module_from_action,
    tensor_action_square, tensor_module_hom_dim,
};
pub use scalars::{
    extend_scalars, extend_scalars_oracle, extension_iso, restrict_scalars, validate_smith_map, Extension,
    ExtensionOracle, SmithMap,
};
pub use smith::{
    kernel_quotient_iso, kernel_smith_ideal, quotient_dga, quotient_kernel_iso, smith_from_square_monoid,
    smith_to_square_monoid, validate_square_monoid, SquareMonoid,
};
pub use strong::{strong_quotient_check, StrongQuotientReport, Verdict};

use crate::chain::{
    add_composite_equation, associator, left_unitor, map_space, right_unitor, tensor_complex, tensor_map, ChainComplex,
    ChainMap, ChainMapUnknown,
};
use crate::error::{violation, Error, Result};
use crate::linalg::{LinearSystem, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGAlgebra {
    pub carrier: ChainComplex,
    /// `μ: R ⊗ R -> R`
    pub mult: ChainMap,
    /// `η: S -> R`
    pub unit: ChainMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    pub carrier: ChainComplex,
    /// `M ⊗ R -> M`
    pub act: ChainMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGBimodule {
    pub carrier: ChainComplex,
    /// `R ⊗ I -> I`
    pub left: ChainMap,
    /// `I ⊗ R -> I`
    pub right: ChainMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    pub src: DGAlgebra,
    pub dst: DGAlgebra,
    pub map: ChainMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithIdeal {
    pub alg: DGAlgebra,
    pub ideal: DGBimodule,
    pub j: ChainMap,
}

/// A right module over a Smith ideal `j: I -> R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithModule {
    pub over: SmithIdeal,
    pub m0: RightModule,
    pub m1: RightModule,
    pub f: ChainMap,
    /// `φ̃: M_1 ⊗ I -> M_0`, before descent to `M_1 ⊗_R I`.
    pub phi: ChainMap,
}

/// A module over a monoid homomorphism `p: R_0 -> R_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorMonoidModule {
    pub over: MonoidHom,
    pub m0: RightModule,
    pub m1: RightModule,
    pub f: ChainMap,
}

fn id(x: &ChainComplex) -> ChainMap {
    ChainMap::identity(x)
}

fn expect_endpoints(m: &ChainMap, src: &ChainComplex, dst: &ChainComplex, what: &str) -> Result<()> {
    if m.src() != src || m.dst() != dst {
        return Err(Error::DimensionMismatch(format!(
            "{what} has the wrong source or target"
        )));
    }
    m.validate()
        .map_err(|e| violation(format!("{what} is not a chain map: {e}")))
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(violation(what))
    }
}

impl DGAlgebra {
    pub fn p(&self) -> u64 {
        self.carrier.p()
    }

    pub fn validate(&self) -> Result<()> {
        let r = &self.carrier;
        r.validate()?;
        let rr = tensor_complex(r, r);
        expect_endpoints(&self.mult, &rr, r, "multiplication")?;
        expect_endpoints(&self.unit, &ChainComplex::unit(r.p()), r, "unit")?;
        let mu = &self.mult;
        let lhs = mu.compose(&tensor_map(mu, &id(r)));
        let rhs = mu.compose(&tensor_map(&id(r), mu)).compose(&associator(r, r, r));
        require(lhs == rhs, "multiplication is not associative")?;
        require(
            mu.compose(&tensor_map(&self.unit, &id(r))) == left_unitor(r),
            "unit is not a left unit",
        )?;
        require(
            mu.compose(&tensor_map(&id(r), &self.unit)) == right_unitor(r),
            "unit is not a right unit",
        )
    }

    /// `R` as a right module over itself.
    pub fn as_right_module(&self) -> RightModule {
        RightModule {
            carrier: self.carrier.clone(),
            act: self.mult.clone(),
        }
    }

    pub fn as_bimodule(&self) -> DGBimodule {
        DGBimodule {
            carrier: self.carrier.clone(),
            left: self.mult.clone(),
            right: self.mult.clone(),
        }
    }
}

impl RightModule {
    pub fn validate(&self, r: &DGAlgebra) -> Result<()> {
        let (m, rc) = (&self.carrier, &r.carrier);
        m.validate()?;
        expect_endpoints(&self.act, &tensor_complex(m, rc), m, "right action")?;
        let a = &self.act;
        let lhs = a.compose(&tensor_map(a, &id(rc)));
        let rhs = a.compose(&tensor_map(&id(m), &r.mult)).compose(&associator(m, rc, rc));
        require(lhs == rhs, "right action is not associative")?;
        require(
            a.compose(&tensor_map(&id(m), &r.unit)) == right_unitor(m),
            "right action is not unital",
        )
    }

    /// The module obtained by restricting scalars along `h: R' -> R`.
    pub fn restrict(&self, h: &ChainMap) -> RightModule {
        RightModule {
            carrier: self.carrier.clone(),
            act: self.act.compose(&tensor_map(&id(&self.carrier), h)),
        }
    }

    /// Checks that `g: M -> N` is right `R`-linear.
    pub fn is_linear_map(g: &ChainMap, m: &RightModule, n: &RightModule, r: &DGAlgebra) -> bool {
        g.compose(&m.act) == n.act.compose(&tensor_map(g, &id(&r.carrier)))
    }
}

impl DGBimodule {
    pub fn validate(&self, r: &DGAlgebra) -> Result<()> {
        let (i, rc) = (&self.carrier, &r.carrier);
        i.validate()?;
        expect_endpoints(&self.left, &tensor_complex(rc, i), i, "left action")?;
        expect_endpoints(&self.right, &tensor_complex(i, rc), i, "right action")?;
        RightModule {
            carrier: i.clone(),
            act: self.right.clone(),
        }
        .validate(r)?;
        let l = &self.left;
        let lhs = l.compose(&tensor_map(&r.mult, &id(i)));
        let rhs = l.compose(&tensor_map(&id(rc), l)).compose(&associator(rc, rc, i));
        require(lhs == rhs, "left action is not associative")?;
        require(
            l.compose(&tensor_map(&r.unit, &id(i))) == left_unitor(i),
            "left action is not unital",
        )?;
        // (r i) r' = r (i r')
        let lhs = self.right.compose(&tensor_map(l, &id(rc)));
        let rhs = l
            .compose(&tensor_map(&id(rc), &self.right))
            .compose(&associator(rc, i, rc));
        require(lhs == rhs, "left and right actions do not commute")
    }

    pub fn right_module(&self) -> RightModule {
        RightModule {
            carrier: self.carrier.clone(),
            act: self.right.clone(),
        }
    }
}

impl MonoidHom {
    pub fn validate(&self) -> Result<()> {
        self.src.validate()?;
        self.dst.validate()?;
        expect_endpoints(&self.map, &self.src.carrier, &self.dst.carrier, "monoid homomorphism")?;
        let p = &self.map;
        require(
            p.compose(&self.src.mult) == self.dst.mult.compose(&tensor_map(p, p)),
            "map does not preserve multiplication",
        )?;
        require(
            p.compose(&self.src.unit) == self.dst.unit,
            "map does not preserve the unit",
        )
    }

    pub fn identity(r: &DGAlgebra) -> Self {
        MonoidHom {
            src: r.clone(),
            dst: r.clone(),
            map: id(&r.carrier),
        }
    }
}

impl SmithIdeal {
    pub fn p(&self) -> u64 {
        self.alg.p()
    }

    pub fn validate(&self) -> Result<()> {
        let r = &self.alg;
        r.validate()?;
        self.ideal.validate(r)?;
        let (i, rc) = (&self.ideal.carrier, &r.carrier);
        expect_endpoints(&self.j, i, rc, "j")?;
        let j = &self.j;
        require(
            j.compose(&self.ideal.left) == r.mult.compose(&tensor_map(&id(rc), j)),
            "j is not a left module map",
        )?;
        require(
            j.compose(&self.ideal.right) == r.mult.compose(&tensor_map(j, &id(rc))),
            "j is not a right module map",
        )?;
        require(
            self.ideal.left.compose(&tensor_map(j, &id(i))) == self.ideal.right.compose(&tensor_map(&id(i), j)),
            "the two products I ⊗ I -> I disagree",
        )
    }

    /// `j` as an arrow.
    pub fn arrow(&self) -> crate::arrow::ArrowObject {
        crate::arrow::ArrowObject::from_map(self.j.clone())
    }
}

impl SmithModule {
    pub fn validate(&self) -> Result<()> {
        let s = &self.over;
        let r = &s.alg;
        let (m0, m1, i) = (&self.m0.carrier, &self.m1.carrier, &s.ideal.carrier);
        let rc = &r.carrier;
        self.m0.validate(r)?;
        self.m1.validate(r)?;
        expect_endpoints(&self.f, m0, m1, "f")?;
        require(
            RightModule::is_linear_map(&self.f, &self.m0, &self.m1, r),
            "f is not R-linear",
        )?;
        expect_endpoints(&self.phi, &tensor_complex(m1, i), m0, "φ")?;
        let phi = &self.phi;
        // descent to M_1 ⊗_R I
        let lhs = phi.compose(&tensor_map(&self.m1.act, &id(i)));
        let rhs = phi
            .compose(&tensor_map(&id(m1), &s.ideal.left))
            .compose(&associator(m1, rc, i));
        require(lhs == rhs, "φ does not descend to M_1 ⊗_R I")?;
        // right R-linearity
        let lhs = phi
            .compose(&tensor_map(&id(m1), &s.ideal.right))
            .compose(&associator(m1, i, rc));
        let rhs = self.m0.act.compose(&tensor_map(phi, &id(rc)));
        require(lhs == rhs, "φ is not R-linear")?;
        require(
            self.f.compose(phi) == self.m1.act.compose(&tensor_map(&id(m1), &s.j)),
            "f φ != act_1 (1 ⊗ j)",
        )?;
        require(
            phi.compose(&tensor_map(&self.f, &id(i))) == self.m0.act.compose(&tensor_map(&id(m0), &s.j)),
            "φ (f ⊗ 1) != act_0 (1 ⊗ j)",
        )
    }
}

impl TensorMonoidModule {
    pub fn validate(&self) -> Result<()> {
        self.over.validate()?;
        self.m0.validate(&self.over.src)?;
        self.m1.validate(&self.over.dst)?;
        expect_endpoints(&self.f, &self.m0.carrier, &self.m1.carrier, "f")?;
        require(
            self.f.compose(&self.m0.act) == self.m1.act.compose(&tensor_map(&self.f, &self.over.map)),
            "f is not R_0-linear",
        )
    }
}

/// Adds `Σ F_k(X_k) = rhs` for linear functions `F_k` of chain-map unknowns,
/// by evaluating each `F_k` on unit matrices.
pub fn add_linear_constraint(
    sys: &mut LinearSystem,
    terms: &[(&ChainMapUnknown, &dyn Fn(&ChainMap) -> ChainMap)],
    rhs: &ChainMap,
) -> Result<()> {
    let degrees: Vec<i32> = {
        let lo = rhs.src().lo().min(rhs.dst().lo());
        let hi = rhs.src().hi().max(rhs.dst().hi());
        (lo..=hi).filter(|&n| rhs.src().dim(n) * rhs.dst().dim(n) > 0).collect()
    };
    let flatten = |m: &ChainMap| -> Vec<u64> { degrees.iter().flat_map(|&n| m.comp(n).vectorize()).collect() };
    let rhs_vec = flatten(rhs);
    let p = rhs.p();
    let mut coeffs = Vec::new();
    for (x, f) in terms {
        let lo = x.src.lo().max(x.dst.lo());
        let hi = x.src.hi().min(x.dst.hi());
        for n in lo..=hi {
            let Some(u) = x.unknown(n) else { continue };
            let (r, c) = (x.dst.dim(n), x.src.dim(n));
            let mut block = Matrix::zeros(p, rhs_vec.len(), r * c);
            for a in 0..r {
                for b in 0..c {
                    let probe = ChainMap::from_fn(&x.src, &x.dst, |k| {
                        let mut m = Matrix::zeros(p, x.dst.dim(k), x.src.dim(k));
                        if k == n {
                            m.set(a, b, 1);
                        }
                        m
                    });
                    let img = flatten(&f(&probe));
                    for (row, v) in img.into_iter().enumerate() {
                        block.set(row, a * c + b, v);
                    }
                }
            }
            coeffs.push((u, block));
        }
    }
    sys.add_raw(coeffs, rhs_vec)
}

pub(crate) fn right_module_map_space(
    sys: &mut LinearSystem,
    m: &RightModule,
    n: &RightModule,
    r: &DGAlgebra,
) -> ChainMapUnknown {
    let x = map_space(sys, &m.carrier, &n.carrier);
    let zero = ChainMap::zero(m.act.src(), &n.carrier);
    let rc = r.carrier.clone();
    let n_act = n.act.clone();
    let m_act = m.act.clone();
    let lhs = move |g: &ChainMap| g.compose(&m_act);
    let rhs = move |g: &ChainMap| n_act.compose(&tensor_map(g, &ChainMap::identity(&rc))).neg();
    add_linear_constraint(sys, &[(&x, &lhs), (&x, &rhs)], &zero).expect("module map equation");
    x
}

pub(crate) fn composite_equation(
    sys: &mut LinearSystem,
    terms: &[(&ChainMap, &ChainMapUnknown, &ChainMap)],
    rhs: &ChainMap,
) {
    add_composite_equation(sys, terms, rhs).expect("composite equation shapes agree");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_is_a_dga() {
        for p in [2, 3, 101] {
            field_algebra(p).validate().unwrap();
        }
    }

    #[test]
    fn square_zero_ideal_in_dual_numbers() {
        let p = 5;
        let s = ideal_of_power(p, 2, 0, 1).ideal;
        s.validate().unwrap();
        assert_eq!(s.alg.carrier.dim(0), 2);
        assert_eq!(s.ideal.carrier.dim(0), 1);
    }

    #[test]
    fn twisted_ideal_fails_only_the_product_square() {
        let p = 5;
        let s = twisted_ideal(p, 2);
        s.alg.validate().unwrap();
        s.ideal.validate(&s.alg).unwrap();
        let e = s.validate().unwrap_err();
        assert_eq!(e, violation("the two products I ⊗ I -> I disagree"));
    }
}
