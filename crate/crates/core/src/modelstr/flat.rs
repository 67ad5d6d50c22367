//! Left modules, the balanced tensor product `M ⊗_R N`, finite cell modules
//! and the flatness check `M ⊗_R -` on weak equivalences.

use crate::chain::{
    associator, bilinear_map, cokernel, cone, descend, direct_sum, is_quasi_iso, left_unitor, tensor_complex,
    tensor_index, tensor_map, ChainComplex, ChainMap,
};
use crate::dgalg::{DGAlgebra, RightModule};
use crate::error::{violation, Error, Result};
use crate::linalg::Matrix;

fn id(x: &ChainComplex) -> ChainMap {
    ChainMap::identity(x)
}

/// A left module: `act: R ⊗ N -> N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    pub carrier: ChainComplex,
    pub act: ChainMap,
}

impl LeftModule {
    pub fn validate(&self, r: &DGAlgebra) -> Result<()> {
        let (n, rc) = (&self.carrier, &r.carrier);
        n.validate()?;
        if self.act.src() != &tensor_complex(rc, n) || self.act.dst() != n {
            return Err(Error::DimensionMismatch("left action has the wrong shape".into()));
        }
        self.act.validate()?;
        let a = &self.act;
        let lhs = a.compose(&tensor_map(&r.mult, &id(n)));
        let rhs = a.compose(&tensor_map(&id(rc), a)).compose(&associator(rc, rc, n));
        if lhs != rhs {
            return Err(violation("left action is not associative"));
        }
        if a.compose(&tensor_map(&r.unit, &id(n))) != left_unitor(n) {
            return Err(violation("left action is not unital"));
        }
        Ok(())
    }

    /// `R` acting on itself from the left.
    pub fn regular(r: &DGAlgebra) -> Self {
        LeftModule {
            carrier: r.carrier.clone(),
            act: r.mult.clone(),
        }
    }

    /// `x` with `R` acting through an augmentation `R -> S`.
    pub fn trivial(x: &ChainComplex, aug: &ChainMap) -> Self {
        LeftModule {
            carrier: x.clone(),
            act: left_unitor(x).compose(&tensor_map(aug, &id(x))),
        }
    }

    pub fn is_linear_map(&self, f: &ChainMap, dst: &LeftModule, r: &DGAlgebra) -> bool {
        f.compose(&self.act) == dst.act.compose(&tensor_map(&id(&r.carrier), f))
    }
}

/// Direct sum of left modules, with the projections and injections.
pub fn left_direct_sum(parts: &[&LeftModule], r: &DGAlgebra) -> (LeftModule, crate::chain::DirectSum) {
    let sum = direct_sum(&parts.iter().map(|m| &m.carrier).collect::<Vec<_>>());
    let rc = &r.carrier;
    let mut act = ChainMap::zero(&tensor_complex(rc, &sum.obj), &sum.obj);
    for (k, m) in parts.iter().enumerate() {
        act = act.add(&sum.inj[k].compose(&m.act).compose(&tensor_map(&id(rc), &sum.proj[k])));
    }
    (
        LeftModule {
            carrier: sum.obj.clone(),
            act,
        },
        sum,
    )
}

/// `M ⊗_R N = coker((M ⊗ R) ⊗ N -> M ⊗ N)`, `(m r) n - m (r n)`.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    pub obj: ChainComplex,
    pub quotient: ChainMap,
}

pub fn balanced_tensor(m: &RightModule, r: &DGAlgebra, n: &LeftModule) -> BalancedTensor {
    let (mc, nc) = (&m.carrier, &n.carrier);
    let left = tensor_map(&m.act, &id(nc));
    let right = tensor_map(&id(mc), &n.act).compose(&associator(mc, &r.carrier, nc));
    let ck = cokernel(&left.sub(&right));
    BalancedTensor {
        obj: ck.obj,
        quotient: ck.proj,
    }
}

/// `M ⊗_R f` for a map of left modules `f: N -> N'`.
pub fn balanced_tensor_map(
    m: &RightModule,
    r: &DGAlgebra,
    src: &LeftModule,
    dst: &LeftModule,
    f: &ChainMap,
) -> ChainMap {
    let (s, t) = (balanced_tensor(m, r, src), balanced_tensor(m, r, dst));
    descend(&s.quotient, &t.quotient.compose(&tensor_map(&id(&m.carrier), f))).expect("f is R-linear")
}

/// Whether `M ⊗_R f` is a quasi-isomorphism, for a weak equivalence `f`.
pub fn flatness_check(
    r: &DGAlgebra,
    m: &RightModule,
    src: &LeftModule,
    dst: &LeftModule,
    f: &ChainMap,
) -> Result<bool> {
    r.validate()?;
    m.validate(r)?;
    src.validate(r)?;
    dst.validate(r)?;
    if f.src() != &src.carrier || f.dst() != &dst.carrier || !src.is_linear_map(f, dst, r) {
        return Err(violation("flatness: f is not a map of left modules"));
    }
    if !is_quasi_iso(f) {
        return Err(violation("flatness: f is not a weak equivalence"));
    }
    Ok(is_quasi_iso(&balanced_tensor_map(m, r, src, dst, f)))
}

/// Attaching `S^{n-1} ⊗ R -> D^n ⊗ R` along the cycle `z ∈ M_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellAttachment {
    pub degree: i32,
    pub cycle: Vec<u64>,
}

/// `S^n ⊗ R` with `R` acting on the right.
pub fn free_module(r: &DGAlgebra, n: i32) -> RightModule {
    let s = ChainComplex::sphere(r.p(), n);
    let carrier = tensor_complex(&s, &r.carrier);
    let act = tensor_map(&id(&s), &r.mult).compose(&associator(&s, &r.carrier, &r.carrier));
    RightModule { carrier, act }
}

/// `Cone(φ)` for a module map `φ: A -> B`, acting blockwise.
pub fn cone_module(r: &DGAlgebra, a: &RightModule, b: &RightModule, phi: &ChainMap) -> RightModule {
    let c = cone(phi).obj;
    let rc = &r.carrier;
    let act = bilinear_map(&c, rc, &c, |i, x, j, y| {
        let mut v = vec![0; c.dim(i + j)];
        let bi = b.carrier.dim(i);
        let (src, act, deg, idx, off) = if x < bi {
            (&b.carrier, &b.act, i, x, 0)
        } else {
            (&a.carrier, &a.act, i - 1, x - bi, b.carrier.dim(i + j))
        };
        let col = tensor_index(src, rc, deg, idx, j, y);
        let m = act.comp(deg + j);
        for row in 0..m.rows() {
            v[off + row] = m.get(row, col);
        }
        v
    });
    RightModule { carrier: c, act }
}

/// Builds `0 = M_0 -> M_1 -> ...` by attaching cells in order.
pub fn cell_module(r: &DGAlgebra, cells: &[CellAttachment]) -> Result<RightModule> {
    let p = r.p();
    let z = ChainComplex::zero(p);
    let mut m = RightModule {
        act: ChainMap::zero(&tensor_complex(&z, &r.carrier), &z),
        carrier: z,
    };
    for cell in cells {
        let n = cell.degree;
        let mc = &m.carrier;
        if cell.cycle.len() != mc.dim(n - 1) {
            return Err(Error::DimensionMismatch(format!("attaching cycle in degree {}", n - 1)));
        }
        let col = Matrix::column(p, &cell.cycle);
        if !mc.diff(n - 1).mul(&col)?.is_zero() {
            return Err(violation(format!(
                "attaching vector in degree {} is not a cycle",
                n - 1
            )));
        }
        let sph = ChainComplex::sphere(p, n - 1);
        let pick = ChainMap::from_fn(&sph, mc, |k| {
            if k == n - 1 {
                col.clone()
            } else {
                Matrix::zeros(p, mc.dim(k), sph.dim(k))
            }
        });
        let free = free_module(r, n - 1);
        let phi = m.act.compose(&tensor_map(&pick, &id(&r.carrier)));
        m = cone_module(r, &free, &m, &phi);
    }
    m.validate(r)?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgalg::{field_algebra, ideal_of_power, truncated_polynomial};

    #[test]
    fn free_module_is_flat_against_an_acyclic_summand() {
        let aug = ideal_of_power(3, 2, 0, 1);
        let r = aug.ideal.alg.clone();
        let reg = LeftModule::regular(&r);
        let d = LeftModule::trivial(&ChainComplex::disk(3, 1), &aug.aug);
        let (sum, parts) = left_direct_sum(&[&reg, &d], &r);
        sum.validate(&r).unwrap();
        let f = parts.proj[0].clone();
        let m = r.as_right_module();
        assert!(flatness_check(&r, &m, &sum, &reg, &f).unwrap());
        let cells = cell_module(
            &r,
            &[CellAttachment {
                degree: 0,
                cycle: vec![],
            }],
        )
        .unwrap();
        assert_eq!(cells.carrier, m.carrier);
    }

    #[test]
    fn balanced_tensor_with_the_regular_module_is_the_module() {
        let r = truncated_polynomial(5, 3, 0);
        let m = free_module(&r, 1);
        let bt = balanced_tensor(&m, &r, &LeftModule::regular(&r));
        assert_eq!(bt.obj.graded_dims(), m.carrier.graded_dims());
    }

    #[test]
    fn non_cycle_attachment_is_rejected() {
        let r = field_algebra(2);
        let m = cell_module(
            &r,
            &[CellAttachment {
                degree: 1,
                cycle: vec![],
            }],
        )
        .unwrap();
        // M = S^1; attach along the generator in degree 1, then again along a
        // non-cycle of the resulting D^2
        let m2 = cell_module(
            &r,
            &[
                CellAttachment {
                    degree: 1,
                    cycle: vec![],
                },
                CellAttachment {
                    degree: 2,
                    cycle: vec![1],
                },
            ],
        )
        .unwrap();
        assert!(crate::chain::homology(&m2.carrier).is_acyclic());
        assert_eq!(m.carrier.dim(1), 1);
        let bad = cell_module(
            &r,
            &[
                CellAttachment {
                    degree: 1,
                    cycle: vec![],
                },
                CellAttachment {
                    degree: 2,
                    cycle: vec![1],
                },
                CellAttachment {
                    degree: 3,
                    cycle: vec![1],
                },
            ],
        );
        assert!(bad.is_err());
    }

    /// The residue field over the dual numbers is not flat: tensoring the
    /// exact sequence `F -> R -x-> R -> F` with it leaves homology.
    #[test]
    fn residue_field_over_dual_numbers_is_not_flat() {
        let p = 3;
        let aug = ideal_of_power(p, 2, 0, 1);
        let r = aug.ideal.alg.clone();
        // basis of R_0: [1, x]
        let d = |n: i32| -> Matrix {
            match n {
                3 => Matrix::from_rows(p, &[vec![0], vec![1]]),
                2 => Matrix::from_rows(p, &[vec![0, 0], vec![1, 0]]),
                1 => Matrix::from_rows(p, &[vec![1, 0]]),
                _ => Matrix::zeros(p, 0, 0),
            }
        };
        let diffs = (1..=3).map(|n| (n, d(n))).collect();
        let c = ChainComplex::new(p, 0, vec![1, 2, 2, 1], diffs).unwrap();
        assert!(crate::chain::homology(&c).is_acyclic());
        // x kills the F's and multiplies on the R's
        let act = bilinear_map(&r.carrier, &c, &c, |_, a, j, y| {
            let mut v = vec![0; c.dim(j)];
            match (a, j) {
                (0, _) => v[y] = 1,
                (1, 1) | (1, 2) if y == 0 => v[1] = 1,
                _ => {}
            }
            v
        });
        let n = LeftModule { carrier: c, act };
        n.validate(&r).unwrap();
        let zero = ChainComplex::zero(p);
        let z = LeftModule::trivial(&zero, &aug.aug);
        let f = ChainMap::zero(&n.carrier, &zero);
        let field = RightModule {
            carrier: ChainComplex::unit(p),
            act: right_unitor_through(&aug.aug),
        };
        field.validate(&r).unwrap();
        assert!(!flatness_check(&r, &field, &n, &z, &f).unwrap());
        // while the free module is fine
        assert!(flatness_check(&r, &r.as_right_module(), &n, &z, &f).unwrap());
    }

    fn right_unitor_through(aug: &ChainMap) -> ChainMap {
        let s = aug.dst().clone();
        crate::chain::right_unitor(&s).compose(&tensor_map(&id(&s), aug))
    }
}
