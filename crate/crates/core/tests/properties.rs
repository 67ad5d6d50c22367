//! Randomized invariants over seeded instances. Proptest picks seeds and
//! primes; the library generators build the objects from them.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use smith_arrow::arrow::ArrowSquare;
use smith_arrow::chain::{cokernel, cone, cylinder, homology, kernel, tensor_complex, ChainComplex};
use smith_arrow::cliio::{from_json, run_suites, to_json, Artifact, SuiteConfig};
use smith_arrow::dgalg::{random_smith_ideal, random_smith_module, SmithIdeal, SmithModule};
use smith_arrow::gen::{random_arrow, random_complex, random_map, random_square, GenConfig};
use smith_arrow::kerco::coker_ker_adjunction_check;
use smith_arrow::linalg::Matrix;
use smith_arrow::modelstr::{
    factor_map, factor_square, injective_cofibration, injective_fibration, projective_cofibration, FactorMode,
};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 101])
}

fn setup(seed: u64, p: u64, max_dim: usize) -> (GenConfig, ChaCha8Rng) {
    (GenConfig::new(p, -2, 2, max_dim), ChaCha8Rng::seed_from_u64(seed))
}

fn round_trip<T: Artifact>(x: &T) -> Result<(), TestCaseError> {
    let text = to_json(x);
    let back: T = from_json(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(to_json(&back), text);
    Ok(())
}

fn euler(c: &ChainComplex, dim: impl Fn(i32) -> usize) -> i64 {
    c.degrees()
        .map(|n| {
            if n.rem_euclid(2) == 0 {
                dim(n) as i64
            } else {
                -(dim(n) as i64)
            }
        })
        .sum()
}

fn d_squared_zero(c: &ChainComplex) -> bool {
    c.validate().is_ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn serialization_is_stable(seed in any::<u64>(), p in prime()) {
        let (cfg, mut rng) = setup(seed, p, 3);
        let c = random_complex(&cfg, &mut rng);
        round_trip(&c)?;
        let d = random_complex(&cfg, &mut rng);
        round_trip(&random_map(&c, &d, &mut rng))?;
        let f = random_arrow(&cfg, &mut rng);
        let g = random_arrow(&cfg, &mut rng);
        round_trip(&f)?;
        round_trip(&random_square(&f, &g, &mut rng))?;
        let small = cfg.with_max_dim(2).with_window(-1, 1);
        let s = random_smith_ideal(&small, &mut rng);
        round_trip(&s.ideal.alg)?;
        round_trip::<SmithIdeal>(&s.ideal)?;
        round_trip::<SmithModule>(&random_smith_module(&s, &small, &mut rng))?;
    }

    #[test]
    fn generated_objects_are_valid(seed in any::<u64>(), p in prime(), max_dim in 1usize..=6) {
        let (cfg, mut rng) = setup(seed, p, max_dim);
        let c = random_complex(&cfg, &mut rng);
        prop_assert!(c.validate().is_ok());
        prop_assert_eq!(c.p(), p);
        for n in c.degrees() {
            prop_assert!(c.dim(n) <= max_dim);
            prop_assert!(c.dim(n) == 0 || (-2..=2).contains(&n));
        }
        let f = random_arrow(&cfg, &mut rng);
        let g = random_arrow(&cfg, &mut rng);
        prop_assert!(f.map().validate().is_ok());
        prop_assert!(random_square(&f, &g, &mut rng).validate().is_ok());
        let small = cfg.with_max_dim(2).with_window(-1, 1);
        let s = random_smith_ideal(&small, &mut rng);
        prop_assert!(s.ideal.validate().is_ok());
        prop_assert!(random_smith_module(&s, &small, &mut rng).validate().is_ok());
    }

    #[test]
    fn fixed_seed_fixed_instance(seed in any::<u64>(), p in prime()) {
        let (cfg, mut a) = setup(seed, p, 4);
        let (_, mut b) = setup(seed, p, 4);
        let f = random_arrow(&cfg, &mut a);
        let g = random_arrow(&cfg, &mut b);
        prop_assert_eq!(to_json(&f), to_json(&g));
    }

    #[test]
    fn rank_nullity_and_inverses(seed in any::<u64>(), p in prime(), r in 0usize..6, c in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::random(p, r, c, &mut rng);
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), c);
        prop_assert!((&m * &k).is_zero());
        let a = Matrix::random_invertible(p, r, &mut rng);
        let inv = a.inverse().expect("invertible");
        prop_assert!((&a * &inv).is_identity());
        prop_assert!((&inv * &a).is_identity());
    }

    #[test]
    fn constructions_square_to_zero(seed in any::<u64>(), p in prime()) {
        let (cfg, mut rng) = setup(seed, p, 3);
        let a = random_complex(&cfg, &mut rng);
        let b = random_complex(&cfg, &mut rng);
        prop_assert!(d_squared_zero(&tensor_complex(&a, &b)));
        let f = random_map(&a, &b, &mut rng);
        let cn = cone(&f);
        prop_assert!(d_squared_zero(&cn.obj));
        prop_assert!(cn.incl.validate().is_ok());
        let cy = cylinder(&f);
        prop_assert!(d_squared_zero(&cy.obj));
        prop_assert_eq!(cy.proj.compose(&cy.incl), f);
    }

    #[test]
    fn homology_keeps_euler_characteristic(seed in any::<u64>(), p in prime(), max_dim in 1usize..=6) {
        let (cfg, mut rng) = setup(seed, p, max_dim);
        let c = random_complex(&cfg, &mut rng);
        let h = homology(&c);
        prop_assert_eq!(euler(&c, |n| c.dim(n)), euler(&c, |n| h.dim(n)));
    }

    #[test]
    fn kernel_and_cokernel_are_exact(seed in any::<u64>(), p in prime()) {
        let (cfg, mut rng) = setup(seed, p, 4);
        let a = random_complex(&cfg, &mut rng);
        let b = random_complex(&cfg, &mut rng);
        let f = random_map(&a, &b, &mut rng);
        let k = kernel(&f);
        let ck = cokernel(&f);
        prop_assert!(f.compose(&k.incl).is_zero());
        prop_assert!(ck.proj.compose(&f).is_zero());
        prop_assert!(k.incl.is_injective());
        prop_assert!(ck.proj.is_surjective());
        for n in a.degrees() {
            let r = f.comp(n).rank();
            prop_assert_eq!(k.obj.dim(n) + r, a.dim(n));
        }
        for n in b.degrees() {
            prop_assert_eq!(ck.obj.dim(n) + f.comp(n).rank(), b.dim(n));
        }
    }

    #[test]
    fn squares_compose_associatively(seed in any::<u64>(), p in prime()) {
        let (cfg, mut rng) = setup(seed, p, 3);
        let f: Vec<_> = (0..4).map(|_| random_arrow(&cfg, &mut rng)).collect();
        let a = random_square(&f[0], &f[1], &mut rng);
        let b = random_square(&f[1], &f[2], &mut rng);
        let c = random_square(&f[2], &f[3], &mut rng);
        prop_assert_eq!(c.compose(&b).compose(&a), c.compose(&b.compose(&a)));
        prop_assert_eq!(a.compose(&ArrowSquare::identity(&f[0])), a.clone());
        prop_assert_eq!(ArrowSquare::identity(&f[1]).compose(&a), a);
    }

    #[test]
    fn coker_is_left_adjoint_to_ker(seed in any::<u64>(), p in prime()) {
        let (cfg, mut rng) = setup(seed, p, 2);
        let cfg = cfg.with_window(-1, 1);
        let f = random_arrow(&cfg, &mut rng);
        let g = random_arrow(&cfg, &mut rng);
        prop_assert!(coker_ker_adjunction_check(&f, &g));
    }

    #[test]
    fn factorizations_compose_back(seed in any::<u64>(), p in prime(), projective in any::<bool>()) {
        let (cfg, mut rng) = setup(seed, p, 2);
        let cfg = cfg.with_window(-1, 1);
        let a = random_complex(&cfg, &mut rng);
        let b = random_complex(&cfg, &mut rng);
        let f = random_map(&a, &b, &mut rng);
        for mode in [FactorMode::CofTrivFib, FactorMode::TrivCofFib] {
            let (i, q) = factor_map(&f, mode);
            prop_assert_eq!(q.compose(&i), f.clone());
            prop_assert!(i.is_injective() && q.is_surjective());
        }
        let f0 = random_arrow(&cfg, &mut rng);
        let f1 = random_arrow(&cfg, &mut rng);
        let sq = random_square(&f0, &f1, &mut rng);
        let (i, q) = factor_square(&sq, FactorMode::CofTrivFib, projective);
        prop_assert_eq!(q.compose(&i), sq);
        if projective {
            prop_assert!(projective_cofibration(&i, false));
        } else {
            prop_assert!(injective_cofibration(&i, false));
        }
    }

    #[test]
    fn corner_classes_imply_componentwise_classes(seed in any::<u64>(), p in prime()) {
        let (cfg, mut rng) = setup(seed, p, 2);
        let cfg = cfg.with_window(-1, 1);
        let f0 = random_arrow(&cfg, &mut rng);
        let f1 = random_arrow(&cfg, &mut rng);
        let sq = random_square(&f0, &f1, &mut rng);
        let (i, _) = factor_square(&sq, FactorMode::TrivCofFib, true);
        let (_, q) = factor_square(&sq, FactorMode::CofTrivFib, false);
        for a in [&sq, &i, &q] {
            if projective_cofibration(a, false) {
                prop_assert!(a.a0.is_injective() && a.a1.is_injective());
            }
            if injective_fibration(a, false) {
                prop_assert!(a.a0.is_surjective() && a.a1.is_surjective());
            }
        }
        prop_assert!(projective_cofibration(&i, true));
        prop_assert!(injective_fibration(&q, true));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn reports_replay(seed in any::<u64>(), p in prime(), k in 0usize..4) {
        let cfg = SuiteConfig::new(&["eval-adjoints", "left-quillen-coker"], seed, 4, p);
        let a = run_suites(&cfg).unwrap();
        prop_assert_eq!(&a, &run_suites(&cfg).unwrap());
        let mut one = cfg.clone();
        one.only_trial = Some(k);
        let r = run_suites(&one).unwrap();
        for (full, single) in a.suites.iter().zip(&r.suites) {
            prop_assert_eq!(single.trials, 1);
            let failed_here = full.failures.iter().any(|f| f.trial == Some(k));
            prop_assert_eq!(single.failed == 1, failed_here);
        }
    }
}
