//! The free □-monoid on an arrow, truncated at a finite level.
//!
//! Level `k` is `f^{□k}`, computed as the punctured-cube colimit mapping to
//! `X_1^{⊗k}`. Products concatenate factors and vanish above the truncation.

use super::{DGAlgebra, DGBimodule, SmithIdeal};
use crate::arrow::{ArrowObject, CubeColimit};
use crate::chain::{
    descend, direct_sum, left_unitor, rebracket, right_unitor, tensor_map, Bracket, ChainComplex, ChainMap,
};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct TruncatedFree {
    pub ideal: SmithIdeal,
    /// `f^{□k}` for `k = 0..=n`.
    pub powers: Vec<ArrowObject>,
}

fn nest(labels: std::ops::Range<usize>) -> Bracket {
    let mut it = labels.map(Bracket::leaf);
    let first = it.next().expect("nonempty bracket");
    it.fold(first, Bracket::pair)
}

/// `A_1 ⊗ ... ⊗ A_a` paired with `B_1 ⊗ ... ⊗ B_b`, rebracketed to the left.
fn concat(left: &[ChainComplex], right: &[ChainComplex]) -> ChainMap {
    let (a, b) = (left.len(), right.len());
    let factors: Vec<ChainComplex> = left.iter().chain(right).cloned().collect();
    rebracket(&Bracket::pair(nest(0..a), nest(a..a + b)), &nest(0..a + b), &factors)
}

fn ends(f: &ArrowObject, e: &[u8]) -> Vec<ChainComplex> {
    e.iter()
        .map(|&x| if x == 0 { f.ev0().clone() } else { f.ev1().clone() })
        .collect()
}

pub fn free_smith_ideal_truncated(f: &ArrowObject, n: usize) -> Result<TruncatedFree> {
    let p = f.p();
    let s = ChainComplex::unit(p);
    let cubes: Vec<Option<CubeColimit>> = (0..=n)
        .map(|k| (k > 0).then(|| CubeColimit::new(&vec![f.clone(); k])))
        .collect();
    let tops: Vec<ChainComplex> = (0..=n)
        .map(|k| match &cubes[k] {
            Some(c) => c.arrow.ev1().clone(),
            None => s.clone(),
        })
        .collect();
    let powers: Vec<ArrowObject> = (0..=n)
        .map(|k| match &cubes[k] {
            Some(c) => c.arrow.clone(),
            None => ArrowObject::l1(&s),
        })
        .collect();
    let ones = |k: usize| vec![f.ev1().clone(); k];

    let rsum = direct_sum(&tops.iter().collect::<Vec<_>>());
    let r = rsum.obj.clone();
    let mut mult = ChainMap::zero(&crate::chain::tensor_complex(&r, &r), &r);
    for a in 0..=n {
        for b in 0..=n - a {
            let m = match (a, b) {
                (0, _) => left_unitor(&tops[b]),
                (_, 0) => right_unitor(&tops[a]),
                _ => concat(&ones(a), &ones(b)),
            };
            mult = mult.add(
                &rsum.inj[a + b]
                    .compose(&m)
                    .compose(&tensor_map(&rsum.proj[a], &rsum.proj[b])),
            );
        }
    }
    let alg = DGAlgebra {
        carrier: r.clone(),
        mult,
        unit: rsum.inj[0].clone(),
    };

    let ideal = if n == 0 {
        let z = ChainComplex::zero(p);
        SmithIdeal {
            ideal: DGBimodule {
                left: ChainMap::zero(&crate::chain::tensor_complex(&r, &z), &z),
                right: ChainMap::zero(&crate::chain::tensor_complex(&z, &r), &z),
                carrier: z.clone(),
            },
            j: ChainMap::zero(&z, &r),
            alg,
        }
    } else {
        let cube = |k: usize| cubes[k].as_ref().expect("positive level");
        let isum = direct_sum(&(1..=n).map(|k| &cube(k).obj).collect::<Vec<_>>());
        let i = isum.obj.clone();
        let (ip, ii) = (|k: usize| &isum.proj[k - 1], |k: usize| &isum.inj[k - 1]);
        let mut right = ChainMap::zero(&crate::chain::tensor_complex(&i, &r), &i);
        let mut left = ChainMap::zero(&crate::chain::tensor_complex(&r, &i), &i);
        for a in 1..=n {
            for b in 0..=n - a {
                // Q_a ⊗ T_b -> Q_{a+b}
                let ra = if b == 0 {
                    right_unitor(&cube(a).obj)
                } else {
                    let (ca, cab) = (cube(a), cube(a + b));
                    let id = ChainMap::identity(&tops[b]);
                    let mut acc = ChainMap::zero(&crate::chain::tensor_complex(&ca.sum.obj, &tops[b]), &cab.obj);
                    for (k, e) in ca.vertices.iter().enumerate() {
                        let mut e2 = e.clone();
                        e2.extend(std::iter::repeat_n(1, b));
                        let piece = cab
                            .injection(&e2)
                            .compose(&concat(&ends(f, e), &ones(b)))
                            .compose(&tensor_map(&ca.sum.proj[k], &id));
                        acc = acc.add(&piece);
                    }
                    descend(&tensor_map(&ca.quotient, &id), &acc).expect("right action respects the cube relations")
                };
                right = right.add(&ii(a + b).compose(&ra).compose(&tensor_map(ip(a), &rsum.proj[b])));
                // T_b ⊗ Q_a -> Q_{b+a}
                let la = if b == 0 {
                    left_unitor(&cube(a).obj)
                } else {
                    let (ca, cab) = (cube(a), cube(a + b));
                    let id = ChainMap::identity(&tops[b]);
                    let mut acc = ChainMap::zero(&crate::chain::tensor_complex(&tops[b], &ca.sum.obj), &cab.obj);
                    for (k, e) in ca.vertices.iter().enumerate() {
                        let mut e2 = vec![1; b];
                        e2.extend(e.iter().copied());
                        let piece = cab
                            .injection(&e2)
                            .compose(&concat(&ones(b), &ends(f, e)))
                            .compose(&tensor_map(&id, &ca.sum.proj[k]));
                        acc = acc.add(&piece);
                    }
                    descend(&tensor_map(&id, &ca.quotient), &acc).expect("left action respects the cube relations")
                };
                left = left.add(&ii(a + b).compose(&la).compose(&tensor_map(&rsum.proj[b], ip(a))));
            }
        }
        let mut j = ChainMap::zero(&i, &r);
        for k in 1..=n {
            j = j.add(&rsum.inj[k].compose(cube(k).arrow.map()).compose(ip(k)));
        }
        SmithIdeal {
            ideal: DGBimodule {
                carrier: i,
                left,
                right,
            },
            j,
            alg,
        }
    };
    ideal.validate()?;
    Ok(TruncatedFree { ideal, powers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::pushout_product;
    use crate::chain::tensor_complex;
    use crate::gen::{random_arrow, GenConfig};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn level_zero_is_the_unit() {
        let f = ArrowObject::l0(&ChainComplex::sphere(3, 1));
        let t = free_smith_ideal_truncated(&f, 0).unwrap();
        assert_eq!(t.ideal.alg.carrier, ChainComplex::unit(3));
        assert!(t.ideal.ideal.carrier.is_zero());
    }

    #[test]
    fn l1_gives_the_truncated_tensor_algebra() {
        let x = ChainComplex::disk(5, 1);
        let t = free_smith_ideal_truncated(&ArrowObject::l1(&x), 2).unwrap();
        assert!(t.ideal.ideal.carrier.is_zero());
        let expected = direct_sum(&[&ChainComplex::unit(5), &x, &tensor_complex(&x, &x)]).obj;
        assert_eq!(t.ideal.alg.carrier, expected);
    }

    #[test]
    fn powers_match_pushout_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = GenConfig::new(3, 0, 1, 1);
        let f = random_arrow(&cfg, &mut rng);
        let t = free_smith_ideal_truncated(&f, 2).unwrap();
        let ff = pushout_product(&f, &f);
        assert_eq!(t.powers[2].ev1(), ff.arrow.ev1());
        assert_eq!(t.powers[2].ev0().graded_dims(), ff.arrow.ev0().graded_dims());
        assert_eq!(t.powers[1], f);
    }
}
