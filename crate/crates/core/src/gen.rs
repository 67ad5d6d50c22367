//! Seeded random complexes, maps and arrows.
//!
//! Complexes are direct sums of spheres and disks inside a window, conjugated
//! by random changes of basis so that differentials are not in normal form.

use rand::Rng;

use crate::arrow::{square_space, ArrowObject, ArrowSquare};
use crate::chain::{direct_sum, map_space, ChainComplex, ChainMap};
use crate::linalg::{LinearSystem, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub p: u64,
    pub lo: i32,
    pub hi: i32,
    /// Upper bound on the dimension in each degree.
    pub max_dim: usize,
}

impl GenConfig {
    pub fn new(p: u64, lo: i32, hi: i32, max_dim: usize) -> Self {
        assert!(lo <= hi);
        GenConfig { p, lo, hi, max_dim }
    }

    pub fn with_max_dim(self, max_dim: usize) -> Self {
        GenConfig { max_dim, ..self }
    }

    pub fn with_window(self, lo: i32, hi: i32) -> Self {
        GenConfig { lo, hi, ..self }
    }
}

/// A random complex with dimensions at most `max_dim` in every degree.
pub fn random_complex(cfg: &GenConfig, rng: &mut impl Rng) -> ChainComplex {
    let p = cfg.p;
    let width = (cfg.hi - cfg.lo + 1) as usize;
    let mut used = vec![0usize; width];
    let mut pieces: Vec<ChainComplex> = Vec::new();
    let attempts = rng.gen_range(0..=2 * cfg.max_dim.max(1));
    for _ in 0..attempts {
        let n = rng.gen_range(cfg.lo..=cfg.hi);
        let k = (n - cfg.lo) as usize;
        if rng.gen_bool(0.5) && n > cfg.lo {
            if used[k] < cfg.max_dim && used[k - 1] < cfg.max_dim {
                used[k] += 1;
                used[k - 1] += 1;
                pieces.push(ChainComplex::disk(p, n));
            }
        } else if used[k] < cfg.max_dim {
            used[k] += 1;
            pieces.push(ChainComplex::sphere(p, n));
        }
    }
    if pieces.is_empty() {
        return ChainComplex::zero(p);
    }
    let sum = direct_sum(&pieces.iter().collect::<Vec<_>>()).obj;
    let changes: Vec<Matrix> = sum
        .degrees()
        .map(|n| Matrix::random_invertible(p, sum.dim(n), rng))
        .collect();
    let lo = sum.lo();
    sum.conjugate(&|n| changes[(n - lo) as usize].clone()).0
}

/// A uniformly random chain map `A -> B`.
pub fn random_map(a: &ChainComplex, b: &ChainComplex, rng: &mut impl Rng) -> ChainMap {
    let mut sys = LinearSystem::new(a.p());
    let x = map_space(&mut sys, a, b);
    let sol = sys.random_solution(rng).expect("homogeneous system");
    x.extract(&sol)
}

pub fn random_arrow(cfg: &GenConfig, rng: &mut impl Rng) -> ArrowObject {
    let a = random_complex(cfg, rng);
    let b = random_complex(cfg, rng);
    ArrowObject::from_map(random_map(&a, &b, rng))
}

/// A uniformly random square `f -> g`.
pub fn random_square(f: &ArrowObject, g: &ArrowObject, rng: &mut impl Rng) -> ArrowSquare {
    let mut sys = LinearSystem::new(f.p());
    let u = square_space(&mut sys, f, g);
    let sol = sys.random_solution(rng).expect("homogeneous system");
    u.extract(&sol)
}

/// A degreewise injective map out of `a`: the inclusion into `a ⊕ c`
/// followed by a random automorphism-like twist of the target.
pub fn random_injection(a: &ChainComplex, cfg: &GenConfig, rng: &mut impl Rng) -> ChainMap {
    let c = random_complex(cfg, rng);
    let sum = direct_sum(&[a, &c]);
    let mix = random_map(a, &c, rng);
    // (x) ↦ (x, mix x) is still injective
    sum.pair(&[&ChainMap::identity(a), &mix])
}

/// A degreewise surjective map onto `b`.
pub fn random_surjection(b: &ChainComplex, cfg: &GenConfig, rng: &mut impl Rng) -> ChainMap {
    let c = random_complex(cfg, rng);
    let sum = direct_sum(&[b, &c]);
    let mix = random_map(&c, b, rng);
    sum.copair(&[&ChainMap::identity(b), &mix])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2, 3, 5, 101] {
            let cfg = GenConfig::new(p, -3, 3, 4);
            for _ in 0..10 {
                let c = random_complex(&cfg, &mut rng);
                c.validate().unwrap();
                assert!(c.degrees().all(|n| c.dim(n) <= 4));
                let f = random_arrow(&cfg, &mut rng);
                f.map().validate().unwrap();
                let i = random_injection(&c, &cfg, &mut rng);
                assert!(i.is_injective());
                let s = random_surjection(&c, &cfg, &mut rng);
                assert!(s.is_surjective());
                random_square(&f, &f, &mut rng).validate().unwrap();
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = GenConfig::new(5, -2, 2, 3);
        let a = random_arrow(&cfg, &mut ChaCha8Rng::seed_from_u64(11));
        let b = random_arrow(&cfg, &mut ChaCha8Rng::seed_from_u64(11));
        assert_eq!(a, b);
    }
}
