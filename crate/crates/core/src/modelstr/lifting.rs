//! Lifting problems in `C` and in `Arr C`, decided by linear algebra.
//!
//! A lift `h` is a chain map (or square) constrained by `h i = top`,
//! `p h = bottom` and the commutation law built into its unknown.

use crate::arrow::{square_space, ArrowSquare};
use crate::chain::{add_composite_equation, map_space, ChainMap};
use crate::error::{violation, Result};
use crate::linalg::LinearSystem;

/// ```text
/// A --top--> X
/// |i         |p
/// B -bottom> Y
/// ```
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub i: ChainMap,
    pub p: ChainMap,
    pub top: ChainMap,
    pub bottom: ChainMap,
}

impl LiftingProblem {
    pub fn validate(&self) -> Result<()> {
        if self.top.src() != self.i.src()
            || self.top.dst() != self.p.src()
            || self.bottom.src() != self.i.dst()
            || self.bottom.dst() != self.p.dst()
        {
            return Err(violation("lifting problem: maps do not form a square"));
        }
        if self.p.compose(&self.top) != self.bottom.compose(&self.i) {
            return Err(violation("lifting problem: outer square does not commute"));
        }
        Ok(())
    }
}

pub fn solve_lifting(prob: &LiftingProblem) -> Result<Option<ChainMap>> {
    prob.validate()?;
    let (b, x) = (prob.i.dst(), prob.p.src());
    let mut sys = LinearSystem::new(b.p());
    let h = map_space(&mut sys, b, x);
    add_composite_equation(&mut sys, &[(&ChainMap::identity(x), &h, &prob.i)], &prob.top)?;
    add_composite_equation(&mut sys, &[(&prob.p, &h, &ChainMap::identity(b))], &prob.bottom)?;
    Ok(sys.solve().map(|sol| h.extract(&sol)))
}

/// The same shape in `Arr C`: every entry is a square.
#[derive(Clone, Debug)]
pub struct SquareLiftingProblem {
    pub i: ArrowSquare,
    pub p: ArrowSquare,
    pub top: ArrowSquare,
    pub bottom: ArrowSquare,
}

impl SquareLiftingProblem {
    pub fn validate(&self) -> Result<()> {
        for s in [&self.i, &self.p, &self.top, &self.bottom] {
            s.validate()?;
        }
        if self.top.src != self.i.src
            || self.top.dst != self.p.src
            || self.bottom.src != self.i.dst
            || self.bottom.dst != self.p.dst
        {
            return Err(violation("lifting problem: squares do not form a square"));
        }
        if self.p.compose(&self.top) != self.bottom.compose(&self.i) {
            return Err(violation("lifting problem: outer square does not commute"));
        }
        Ok(())
    }
}

pub fn solve_square_lifting(prob: &SquareLiftingProblem) -> Result<Option<ArrowSquare>> {
    prob.validate()?;
    let (g, u) = (&prob.i.dst, &prob.p.src);
    let mut sys = LinearSystem::new(g.p());
    let h = square_space(&mut sys, g, u);
    let pairs = [
        (&h.a0, &prob.i.a0, &prob.p.a0, &prob.top.a0, &prob.bottom.a0),
        (&h.a1, &prob.i.a1, &prob.p.a1, &prob.top.a1, &prob.bottom.a1),
    ];
    for (hk, ik, pk, tk, bk) in pairs {
        add_composite_equation(&mut sys, &[(&ChainMap::identity(&hk.dst), hk, ik)], tk)?;
        add_composite_equation(&mut sys, &[(pk, hk, &ChainMap::identity(&hk.src))], bk)?;
    }
    Ok(sys.solve().map(|sol| h.extract(&sol)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::gen::{random_complex, random_injection, random_map, GenConfig};
    use crate::linalg::Matrix;
    use crate::modelstr::{classify_base, MapClass};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn iso_on_the_right_lifts_through_the_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = GenConfig::new(5, -1, 1, 3);
        let a = random_complex(&cfg, &mut rng);
        let b = random_complex(&cfg, &mut rng);
        let x = random_complex(&cfg, &mut rng);
        let i = random_map(&a, &b, &mut rng);
        let bottom = random_map(&b, &x, &mut rng);
        let p = ChainMap::identity(&x);
        let top = bottom.compose(&i);
        let h = solve_lifting(&LiftingProblem {
            i,
            p,
            top,
            bottom: bottom.clone(),
        })
        .unwrap()
        .unwrap();
        assert_eq!(h, bottom);
    }

    #[test]
    fn non_commuting_input_is_an_error() {
        let s = ChainComplex::sphere(3, 0);
        let id = ChainMap::identity(&s);
        let zero = ChainMap::zero(&s, &s);
        let prob = LiftingProblem {
            i: id.clone(),
            p: id.clone(),
            top: id,
            bottom: zero,
        };
        assert!(solve_lifting(&prob).is_err());
    }

    #[test]
    fn sphere_into_disk_against_sphere_to_zero_has_no_lift() {
        let p = 2;
        let s = ChainComplex::sphere(p, 0);
        let d = ChainComplex::disk(p, 1);
        let z = ChainComplex::zero(p);
        let i = ChainMap::from_fn(&s, &d, |n| {
            if n == 0 {
                Matrix::identity(p, 1)
            } else {
                Matrix::zeros(p, d.dim(n), s.dim(n))
            }
        });
        let prob = LiftingProblem {
            i,
            p: ChainMap::zero(&s, &z),
            top: ChainMap::identity(&s),
            bottom: ChainMap::zero(&d, &z),
        };
        assert!(solve_lifting(&prob).unwrap().is_none());
    }

    #[test]
    fn cofibrations_lift_against_trivial_fibrations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cfg = GenConfig::new(3, -1, 1, 2);
        for _ in 0..10 {
            let a = random_complex(&cfg, &mut rng);
            let i = random_injection(&a, &cfg, &mut rng);
            // trivial fibration: projection Y ⊕ D -> Y with D acyclic
            let y = random_complex(&cfg, &mut rng);
            let acyc = crate::chain::direct_sum(&[&y, &ChainComplex::disk(3, 0)]);
            let p = acyc.proj[0].clone();
            assert!(classify_base(&p, MapClass::TrivialFibration));
            let top = random_map(&a, &acyc.obj, &mut rng);
            // bottom agreeing on the image of i: extend p ∘ top along i
            let mut sys = LinearSystem::new(3);
            let bx = map_space(&mut sys, i.dst(), &y);
            add_composite_equation(&mut sys, &[(&ChainMap::identity(&y), &bx, &i)], &p.compose(&top)).unwrap();
            let bottom = bx.extract(&sys.random_solution(&mut rng).expect("extension along an injection"));
            let prob = LiftingProblem { i, p, top, bottom };
            assert!(solve_lifting(&prob).unwrap().is_some());
        }
    }
}
