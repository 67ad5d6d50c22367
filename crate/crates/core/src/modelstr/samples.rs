//! Seeded instances for the model-structure checks: lifting problems with
//! classified-positive legs, engineered problems without lifts, gluing and
//! sequential diagrams, cell modules and weak equivalences of left modules.

use rand::Rng;

use super::flat::{cell_module, left_direct_sum, CellAttachment, LeftModule};
use super::pure::{GluingDiagram, SequentialDiagram};
use super::replace::{factor_square, FactorMode};
use super::SquareLiftingProblem;
use crate::arrow::{l0_map, l1_map, square_space, u0_map, ArrowObject, ArrowSquare};
use crate::chain::{add_composite_equation, direct_sum, ChainComplex, ChainMap};
use crate::dgalg::{Augmented, DGAlgebra, RightModule};
use crate::error::Result;
use crate::gen::{random_arrow, random_complex, random_injection, random_map, random_square, GenConfig};
use crate::linalg::{LinearSystem, Matrix};

/// A random acyclic complex: disks inside the window, with a change of basis.
pub fn random_acyclic(cfg: &GenConfig, rng: &mut impl Rng) -> ChainComplex {
    let p = cfg.p;
    if cfg.lo >= cfg.hi {
        return ChainComplex::zero(p);
    }
    let count = rng.gen_range(0..=cfg.max_dim.min(3));
    let disks: Vec<ChainComplex> = (0..count)
        .map(|_| ChainComplex::disk(p, rng.gen_range(cfg.lo + 1..=cfg.hi)))
        .collect();
    if disks.is_empty() {
        return ChainComplex::zero(p);
    }
    let sum = direct_sum(&disks.iter().collect::<Vec<_>>()).obj;
    let changes: Vec<Matrix> = sum
        .degrees()
        .map(|n| Matrix::random_invertible(p, sum.dim(n), rng))
        .collect();
    let lo = sum.lo();
    sum.conjugate(&|n| changes[(n - lo) as usize].clone()).0
}

/// A uniformly random commuting pair `(top, bottom)` for the legs `i: f -> g`
/// and `p: u -> v`, i.e. `p ∘ top = bottom ∘ i`.
pub fn random_commuting_pair(i: &ArrowSquare, p: &ArrowSquare, rng: &mut impl Rng) -> (ArrowSquare, ArrowSquare) {
    let mut sys = LinearSystem::new(i.src.p());
    let top = square_space(&mut sys, &i.src, &p.src);
    let bottom = square_space(&mut sys, &i.dst, &p.dst);
    for (t, b, ik, pk) in [(&top.a0, &bottom.a0, &i.a0, &p.a0), (&top.a1, &bottom.a1, &i.a1, &p.a1)] {
        let minus = ChainMap::identity(&b.dst).neg();
        let zero = ChainMap::zero(&t.src, &b.dst);
        add_composite_equation(
            &mut sys,
            &[(pk, t, &ChainMap::identity(&t.src)), (&minus, b, ik)],
            &zero,
        )
        .expect("shapes agree");
    }
    let sol = sys.random_solution(rng).expect("homogeneous system");
    (top.extract(&sol), bottom.extract(&sol))
}

/// Which pair of classes a lifting problem is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftingKind {
    pub projective: bool,
    /// `true`: trivial cofibration against fibration.
    pub trivial_left: bool,
}

/// A lifting problem whose legs come from factoring two random squares, so
/// the left leg is a (trivial) cofibration and the right leg a (trivial)
/// fibration in the chosen structure.
pub fn random_positive_lifting(cfg: &GenConfig, kind: LiftingKind, rng: &mut impl Rng) -> SquareLiftingProblem {
    // the left leg of one factorization and the right leg of another, same mode
    let mode = if kind.trivial_left {
        FactorMode::TrivCofFib
    } else {
        FactorMode::CofTrivFib
    };
    let sq = |rng: &mut _| {
        let f = random_arrow(cfg, rng);
        let g = random_arrow(cfg, rng);
        random_square(&f, &g, rng)
    };
    let a = sq(rng);
    let b = sq(rng);
    let (i, _) = factor_square(&a, mode, kind.projective);
    let (_, p) = factor_square(&b, mode, kind.projective);
    let (top, bottom) = random_commuting_pair(&i, &p, rng);
    SquareLiftingProblem { i, p, top, bottom }
}

/// A lifting problem with random legs and random commuting data.
pub fn random_lifting(cfg: &GenConfig, rng: &mut impl Rng) -> SquareLiftingProblem {
    let sq = |rng: &mut _| {
        let f = random_arrow(cfg, rng);
        let g = random_arrow(cfg, rng);
        random_square(&f, &g, rng)
    };
    let i = sq(rng);
    let p = sq(rng);
    let (top, bottom) = random_commuting_pair(&i, &p, rng);
    SquareLiftingProblem { i, p, top, bottom }
}

fn sphere_into_disk(p: u64, n: i32) -> ChainMap {
    let (s, d) = (ChainComplex::sphere(p, n - 1), ChainComplex::disk(p, n));
    ChainMap::from_fn(&s, &d, |k| {
        if k == n - 1 {
            Matrix::identity(p, 1)
        } else {
            Matrix::zeros(p, d.dim(k), s.dim(k))
        }
    })
}

fn disk_onto_sphere(p: u64, n: i32) -> ChainMap {
    let (d, s) = (ChainComplex::disk(p, n), ChainComplex::sphere(p, n));
    ChainMap::from_fn(&d, &s, |k| {
        if k == n {
            Matrix::identity(p, 1)
        } else {
            Matrix::zeros(p, s.dim(k), d.dim(k))
        }
    })
}

fn zero_square(f: &ArrowObject, g: &ArrowObject) -> ArrowSquare {
    ArrowSquare::new(f, g, ChainMap::zero(f.ev0(), g.ev0()), ChainMap::zero(f.ev1(), g.ev1())).expect("zero square")
}

/// Lifting problems in `Arr C` with no solution, each with a short label.
///
/// Families, for `n` and `p` varying:
/// - `L_0(S^{n-1} -> D^n)` against `L_0(S^{n-1} -> 0)`, top the identity;
/// - the same through `L_1`;
/// - the same through `U_0` (injective structure);
/// - `L_0(0 -> D^n)` against the non-surjective `L_0(0 -> S^n)`;
/// - `(0 -> S^n) -> id` (injective cofibration with a non-injective pushout
///   corner) against `L_1(D^{n+1} -> 0)` (componentwise trivial fibration
///   with a non-surjective pullback corner), top the inclusion.
pub fn engineered_negatives() -> Vec<(String, SquareLiftingProblem)> {
    let mut out = Vec::new();
    let cases = [(2u64, -1), (3, 0), (5, 1), (101, 2)];
    for &(p, n) in &cases {
        let inc = sphere_into_disk(p, n);
        let s = ChainComplex::sphere(p, n - 1);
        let z = ChainComplex::zero(p);
        let to_zero = ChainMap::zero(&s, &z);
        let functors: [(&str, fn(&ChainMap) -> ArrowSquare); 3] = [("L0", l0_map), ("L1", l1_map), ("U0", u0_map)];
        for (name, lift) in functors {
            let i = lift(&inc);
            let q = lift(&to_zero);
            let top = lift(&ChainMap::identity(&s));
            let bottom = zero_square(&i.dst, &q.dst);
            out.push((
                format!("{name}(S^{} -> D^{n}) vs {name}(S^{} -> 0), p = {p}", n - 1, n - 1),
                SquareLiftingProblem { i, p: q, top, bottom },
            ));
        }

        let d = ChainComplex::disk(p, n);
        let sn = ChainComplex::sphere(p, n);
        let i = l0_map(&ChainMap::zero(&z, &d));
        let q = l0_map(&ChainMap::zero(&z, &sn));
        let top = zero_square(&i.src, &q.src);
        let bottom = l0_map(&disk_onto_sphere(p, n));
        out.push((
            format!("L0(0 -> D^{n}) vs L0(0 -> S^{n}), p = {p}"),
            SquareLiftingProblem { i, p: q, top, bottom },
        ));

        let f = ArrowObject::l1(&sn);
        let g = ArrowObject::l0(&sn);
        let i = ArrowSquare::new(&f, &g, ChainMap::zero(&z, &sn), ChainMap::identity(&sn)).expect("square");
        let d1 = ChainComplex::disk(p, n + 1);
        let q = l1_map(&ChainMap::zero(&d1, &z));
        let incl = sphere_into_disk(p, n + 1);
        let top = ArrowSquare::new(&f, &q.src, ChainMap::zero(&z, &z), incl).expect("square");
        let bottom = zero_square(&g, &q.dst);
        out.push((
            format!("(0 -> S^{n}) -> id vs L1(D^{} -> 0), p = {p}", n + 1),
            SquareLiftingProblem { i, p: q, top, bottom },
        ));
    }
    out
}

/// Two spans related by weak equivalences `w = (id, λ): X ⊕ D -> X`, where the
/// enlarged span mixes its acyclic summands into the original legs.
pub fn random_gluing(cfg: &GenConfig, rng: &mut impl Rng) -> GluingDiagram {
    let a = random_complex(cfg, rng);
    let f = random_injection(&a, cfg, rng);
    let c = random_complex(cfg, rng);
    let g = random_map(&a, &c, rng);
    let b = f.dst().clone();

    let da = random_acyclic(cfg, rng);
    let db_extra = random_acyclic(cfg, rng);
    let dc = random_acyclic(cfg, rng);
    let dbs = direct_sum(&[&da, &db_extra]);
    let ef = dbs.pair(&[&ChainMap::identity(&da), &random_map(&da, &db_extra, rng)]);
    let eg = random_map(&da, &dc, rng);
    let (la, lb, lc) = (
        random_map(&da, &a, rng),
        random_map(&dbs.obj, &b, rng),
        random_map(&dc, &c, rng),
    );

    let sa = direct_sum(&[&a, &da]);
    let sb = direct_sum(&[&b, &dbs.obj]);
    let sc = direct_sum(&[&c, &dc]);
    let w = |s: &crate::chain::DirectSum, x: &ChainComplex, l: &ChainMap| s.copair(&[&ChainMap::identity(x), l]);
    let (wa, wb, wc) = (w(&sa, &a, &la), w(&sb, &b, &lb), w(&sc, &c, &lc));
    // (x, d) ↦ (f x + (f λ_A - λ_B e) d, e d)
    let cf = f.compose(&la).sub(&lb.compose(&ef));
    let cg = g.compose(&la).sub(&lc.compose(&eg));
    let leg =
        |s: &crate::chain::DirectSum, t: &crate::chain::DirectSum, main: &ChainMap, mix: &ChainMap, e: &ChainMap| {
            let first = t.inj[0].compose(&main.compose(&s.proj[0]).add(&mix.compose(&s.proj[1])));
            first.add(&t.inj[1].compose(e).compose(&s.proj[1]))
        };
    let f_big = leg(&sa, &sb, &f, &cf, &ef);
    let g_big = leg(&sa, &sc, &g, &cg, &eg);
    GluingDiagram {
        f: f_big,
        g: g_big,
        f2: f,
        g2: g,
        wa,
        wb,
        wc,
    }
}

/// Chains of length `len` of injections, enlarged by acyclic summands in the
/// same way as [`random_gluing`].
pub fn random_sequential(cfg: &GenConfig, len: usize, rng: &mut impl Rng) -> SequentialDiagram {
    let mut xs_small: Vec<ChainMap> = Vec::new();
    let mut objs = vec![random_complex(cfg, rng)];
    for k in 0..len {
        let i = random_injection(&objs[k], cfg, rng);
        objs.push(i.dst().clone());
        xs_small.push(i);
    }
    let mut ds = vec![random_acyclic(cfg, rng)];
    let mut es = Vec::new();
    for k in 0..len {
        let extra = random_acyclic(cfg, rng);
        let s = direct_sum(&[&ds[k], &extra]);
        es.push(s.pair(&[&ChainMap::identity(&ds[k]), &random_map(&ds[k], &extra, rng)]));
        ds.push(s.obj.clone());
    }
    let ls: Vec<ChainMap> = (0..=len).map(|k| random_map(&ds[k], &objs[k], rng)).collect();
    let sums: Vec<_> = (0..=len).map(|k| direct_sum(&[&objs[k], &ds[k]])).collect();
    let ws: Vec<ChainMap> = (0..=len)
        .map(|k| sums[k].copair(&[&ChainMap::identity(&objs[k]), &ls[k]]))
        .collect();
    let xs = (0..len)
        .map(|k| {
            let (s, t) = (&sums[k], &sums[k + 1]);
            let mix = xs_small[k].compose(&ls[k]).sub(&ls[k + 1].compose(&es[k]));
            let first = t.inj[0].compose(&xs_small[k].compose(&s.proj[0]).add(&mix.compose(&s.proj[1])));
            first.add(&t.inj[1].compose(&es[k]).compose(&s.proj[1]))
        })
        .collect();
    SequentialDiagram { xs, ys: xs_small, ws }
}

/// A cell module with `cells` cells, each attached along a random cycle.
pub fn random_cell_module(r: &DGAlgebra, cells: usize, cfg: &GenConfig, rng: &mut impl Rng) -> Result<RightModule> {
    let mut plan: Vec<CellAttachment> = Vec::new();
    let mut m = cell_module(r, &plan)?;
    for _ in 0..cells {
        let n = rng.gen_range(cfg.lo..=cfg.hi);
        let z = m.carrier.diff(n - 1).kernel_basis();
        let coeffs = Matrix::random(r.p(), z.cols(), 1, rng);
        let cycle = z.mul(&coeffs)?.vectorize();
        let cycle = if cycle.len() == m.carrier.dim(n - 1) {
            cycle
        } else {
            vec![0; m.carrier.dim(n - 1)]
        };
        plan.push(CellAttachment { degree: n, cycle });
        m = cell_module(r, &plan)?;
    }
    Ok(m)
}

/// A weak equivalence of left modules between `B ⊕ D` and `B`, in either
/// direction, with `B` regular, trivial or both and `D` acyclic and trivial.
pub fn random_left_weq(aug: &Augmented, cfg: &GenConfig, rng: &mut impl Rng) -> (LeftModule, LeftModule, ChainMap) {
    let r = &aug.ideal.alg;
    let reg = LeftModule::regular(r);
    let triv = LeftModule::trivial(&random_complex(cfg, rng), &aug.aug);
    let base = match rng.gen_range(0..3) {
        0 => reg,
        1 => triv,
        _ => left_direct_sum(&[&reg, &triv], r).0,
    };
    let acyc = LeftModule::trivial(&random_acyclic(cfg, rng), &aug.aug);
    let (big, sum) = left_direct_sum(&[&base, &acyc], r);
    if rng.gen_bool(0.5) {
        (big, base, sum.proj[0].clone())
    } else {
        (base, big, sum.inj[0].clone())
    }
}
