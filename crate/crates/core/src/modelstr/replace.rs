//! Functorial factorizations, arrow replacements and the stable adjunct test.

use serde::{Deserialize, Serialize};

use super::arrow_weq;
use crate::arrow::{ArrowObject, ArrowSquare};
use crate::chain::{cylinder, mapping_path, pullback, pushout, ChainComplex, ChainMap};
use crate::error::{violation, Result};
use crate::kerco::{coker_arrow, coker_ker_unit, ker_square};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorMode {
    /// cofibration followed by a trivial fibration (mapping cylinder)
    CofTrivFib,
    /// trivial cofibration followed by a fibration (mapping path space)
    TrivCofFib,
}

/// `f = p ∘ i` with the classes given by `mode`.
pub fn factor_map(f: &ChainMap, mode: FactorMode) -> (ChainMap, ChainMap) {
    match mode {
        FactorMode::CofTrivFib => {
            let c = cylinder(f);
            (c.incl, c.proj)
        }
        FactorMode::TrivCofFib => {
            let m = mapping_path(f);
            (m.incl, m.proj)
        }
    }
}

/// Factorization of a square in one of the two arrow structures.
///
/// Projective: factor `α_0`, then the pushout corner. Injective: factor
/// `α_1`, then the pullback corner. Returns `(i, p)` with `α = p ∘ i`.
pub fn factor_square(a: &ArrowSquare, mode: FactorMode, projective: bool) -> (ArrowSquare, ArrowSquare) {
    let (f, g) = (a.src.map(), a.dst.map());
    if projective {
        let (i0, p0) = factor_map(&a.a0, mode);
        let po = pushout(f, &i0);
        let corner = po.mediate(&a.a1, &g.compose(&p0)).expect("the square commutes");
        let (j, q) = factor_map(&corner, mode);
        let mid = ArrowObject::from_map(j.compose(&po.inr));
        let i = ArrowSquare::from_parts(&a.src, &mid, i0, j.compose(&po.inl));
        let p = ArrowSquare::from_parts(&mid, &a.dst, p0, q);
        (i, p)
    } else {
        let (i1, p1) = factor_map(&a.a1, mode);
        let pb = pullback(&p1, g);
        let corner = pb.mediate(&i1.compose(f), &a.a0).expect("the square commutes");
        let (j, q) = factor_map(&corner, mode);
        let mid = ArrowObject::from_map(pb.pl.compose(&q));
        let i = ArrowSquare::from_parts(&a.src, &mid, j, i1);
        let p = ArrowSquare::from_parts(&mid, &a.dst, pb.pr.compose(&q), p1);
        (i, p)
    }
}

/// Cofibrant replacement in the projective structure: an injective arrow
/// `f'` with a componentwise quasi-isomorphism `f' -> f`.
pub fn arrow_cofibrant_replacement(f: &ArrowObject) -> (ArrowObject, ArrowSquare) {
    if f.map().is_injective() {
        return (f.clone(), ArrowSquare::identity(f));
    }
    let c = cylinder(f.map());
    let g = ArrowObject::from_map(c.incl);
    let w = ArrowSquare::from_parts(&g, f, ChainMap::identity(f.ev0()), c.proj);
    (g, w)
}

/// Fibrant replacement in the injective structure: a surjective arrow `p'`
/// with a componentwise quasi-isomorphism `p -> p'`.
pub fn arrow_fibrant_replacement(p: &ArrowObject) -> (ArrowObject, ArrowSquare) {
    if p.map().is_surjective() {
        return (p.clone(), ArrowSquare::identity(p));
    }
    let m = mapping_path(p.map());
    let q = ArrowObject::from_map(m.proj);
    let w = ArrowSquare::from_parts(p, &q, m.incl, ChainMap::identity(p.ev1()));
    (q, w)
}

/// For `α: coker f -> p` with `f` injective and `p` surjective, returns
/// whether `α` and its adjunct `β: f -> ker p` are weak equivalences.
pub fn stable_adjunct_check(f: &ArrowObject, p: &ArrowObject, a: &ArrowSquare) -> Result<(bool, bool)> {
    if !f.map().is_injective() {
        return Err(violation("stable adjunct: f is not a cofibration"));
    }
    if !p.map().is_surjective() {
        return Err(violation("stable adjunct: p is not a fibration"));
    }
    a.validate()?;
    if a.src != coker_arrow(f).arrow || &a.dst != p {
        return Err(violation("stable adjunct: α is not a square coker f -> p"));
    }
    let b = ker_square(a).compose(&coker_ker_unit(f));
    Ok((arrow_weq(a), arrow_weq(&b)))
}

/// Whether `f' -> ker T(coker f')` is a weak equivalence, where `f'` is the
/// cofibrant replacement of `f` and `T` is fibrant replacement.
pub fn unit_after_replacement(f: &ArrowObject) -> bool {
    let (fc, _) = arrow_cofibrant_replacement(f);
    let c = coker_arrow(&fc).arrow;
    let (_, w) = arrow_fibrant_replacement(&c);
    let unit = ker_square(&w).compose(&coker_ker_unit(&fc));
    arrow_weq(&unit)
}

/// The zero object `0 -> 0` of `Arr C`, and the squares into and out of it.
pub fn zero_arrow(p: u64) -> ArrowObject {
    ArrowObject::l0(&ChainComplex::zero(p))
}

pub fn square_from_zero(f: &ArrowObject) -> ArrowSquare {
    let z = zero_arrow(f.p());
    ArrowSquare::from_parts(
        &z,
        f,
        ChainMap::zero(z.ev0(), f.ev0()),
        ChainMap::zero(z.ev1(), f.ev1()),
    )
}

pub fn square_to_zero(f: &ArrowObject) -> ArrowSquare {
    let z = zero_arrow(f.p());
    ArrowSquare::from_parts(
        f,
        &z,
        ChainMap::zero(f.ev0(), z.ev0()),
        ChainMap::zero(f.ev1(), z.ev1()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{cone, homology, is_quasi_iso};
    use crate::gen::{random_arrow, random_square, GenConfig};
    use crate::modelstr::{
        classify_base, injective_cofibration, injective_fibration, projective_cofibration, projective_fibration,
        MapClass,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factorizations_compose_and_are_certified() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = GenConfig::new(5, -2, 2, 3);
        for _ in 0..10 {
            let f = random_arrow(&cfg, &mut rng);
            let (i, p) = factor_map(f.map(), FactorMode::CofTrivFib);
            assert_eq!(&p.compose(&i), f.map());
            assert!(classify_base(&i, MapClass::Cofibration) && classify_base(&p, MapClass::TrivialFibration));
            let (i, p) = factor_map(f.map(), FactorMode::TrivCofFib);
            assert_eq!(&p.compose(&i), f.map());
            assert!(classify_base(&i, MapClass::TrivialCofibration) && classify_base(&p, MapClass::Fibration));
        }
    }

    #[test]
    fn identity_factors_through_contractible_padding() {
        let x = ChainComplex::disk(3, 1);
        let (i, p) = factor_map(&ChainMap::identity(&x), FactorMode::CofTrivFib);
        assert!(i.is_injective() && p.is_surjective() && is_quasi_iso(&i));
    }

    #[test]
    fn square_factorizations() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let cfg = GenConfig::new(3, -1, 1, 2);
        for _ in 0..6 {
            let f = random_arrow(&cfg, &mut rng);
            let g = random_arrow(&cfg, &mut rng);
            let a = random_square(&f, &g, &mut rng);
            for projective in [true, false] {
                for mode in [FactorMode::CofTrivFib, FactorMode::TrivCofFib] {
                    let (i, p) = factor_square(&a, mode, projective);
                    i.validate().unwrap();
                    p.validate().unwrap();
                    assert_eq!(p.compose(&i), a);
                    let trivial_left = mode == FactorMode::TrivCofFib;
                    if projective {
                        assert!(projective_cofibration(&i, trivial_left));
                        assert!(projective_fibration(&p, !trivial_left));
                    } else {
                        assert!(injective_cofibration(&i, trivial_left));
                        assert!(injective_fibration(&p, !trivial_left));
                    }
                }
            }
        }
    }

    #[test]
    fn cofibrant_replacement_of_a_zero_map_is_a_cone() {
        let x = ChainComplex::sphere(2, 1);
        let f = ArrowObject::u0(&x);
        let (g, w) = arrow_cofibrant_replacement(&f);
        assert!(g.map().is_injective());
        assert!(arrow_weq(&w));
        assert!(homology(g.ev1()).is_acyclic());
        assert_eq!(g.ev1().graded_dims(), cone(&ChainMap::identity(&x)).obj.graded_dims());
        assert!(projective_cofibration(&square_from_zero(&g), false));
    }

    #[test]
    fn fibrant_replacement_of_zero_source() {
        let x = ChainComplex::sphere(5, 0);
        let p = ArrowObject::l1(&x);
        let (q, w) = arrow_fibrant_replacement(&p);
        assert!(q.map().is_surjective() && arrow_weq(&w));
        assert!(homology(q.ev0()).is_acyclic());
        assert!(injective_fibration(&square_to_zero(&q), false));
    }

    #[test]
    fn counit_and_zero_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let cfg = GenConfig::new(3, -1, 1, 2);
        let f = arrow_cofibrant_replacement(&random_arrow(&cfg, &mut rng)).0;
        let c = coker_arrow(&f).arrow;
        let id = ArrowSquare::identity(&c);
        assert_eq!(stable_adjunct_check(&f, &c, &id).unwrap(), (true, true));
        let s = ChainComplex::sphere(3, 0);
        let f = ArrowObject::l1(&s);
        let c = coker_arrow(&f).arrow;
        let z = ArrowSquare::from_parts(
            &c,
            &c,
            ChainMap::zero(c.ev0(), c.ev0()),
            ChainMap::zero(c.ev1(), c.ev1()),
        );
        assert_eq!(stable_adjunct_check(&f, &c, &z).unwrap(), (false, false));
        assert!(unit_after_replacement(&random_arrow(&cfg, &mut rng)));
    }
}
