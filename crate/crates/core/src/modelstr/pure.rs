//! Purity checks for the class of degreewise injections: stability under
//! pushout, gluing along weak equivalences, and finite sequential colimits.

use crate::chain::{cokernel, direct_sum, is_quasi_iso, pushout, ChainComplex, ChainMap};
use crate::error::{violation, Result};

/// A pushout of the injection `f` along `g` is again an injection.
pub fn pushout_stability_check(f: &ChainMap, g: &ChainMap) -> Result<bool> {
    if f.src() != g.src() {
        return Err(violation("pushout stability: legs have different sources"));
    }
    if !f.is_injective() {
        return Err(violation("pushout stability: f is not injective"));
    }
    Ok(pushout(f, g).inr.is_injective())
}

/// Two spans `B <-f- A -g-> C` and `B' <-f'- A' -g'-> C'` with `f, f'`
/// injective and weak equivalences `w_A, w_B, w_C` between them.
#[derive(Clone, Debug)]
pub struct GluingDiagram {
    pub f: ChainMap,
    pub g: ChainMap,
    pub f2: ChainMap,
    pub g2: ChainMap,
    pub wa: ChainMap,
    pub wb: ChainMap,
    pub wc: ChainMap,
}

impl GluingDiagram {
    pub fn validate(&self) -> Result<()> {
        if !self.f.is_injective() || !self.f2.is_injective() {
            return Err(violation("gluing: a horizontal leg is not injective"));
        }
        for w in [&self.wa, &self.wb, &self.wc] {
            if !is_quasi_iso(w) {
                return Err(violation("gluing: a vertical map is not a weak equivalence"));
            }
        }
        if self.wb.compose(&self.f) != self.f2.compose(&self.wa)
            || self.wc.compose(&self.g) != self.g2.compose(&self.wa)
        {
            return Err(violation("gluing: the diagram does not commute"));
        }
        Ok(())
    }

    /// The induced map `B ⊔_A C -> B' ⊔_{A'} C'`.
    pub fn induced(&self) -> ChainMap {
        let (p, q) = (pushout(&self.f, &self.g), pushout(&self.f2, &self.g2));
        p.mediate(&q.inl.compose(&self.wb), &q.inr.compose(&self.wc))
            .expect("the diagram commutes")
    }
}

pub fn gluing_check(d: &GluingDiagram) -> Result<bool> {
    d.validate()?;
    Ok(is_quasi_iso(&d.induced()))
}

/// Chains `X_0 -> ... -> X_k` and `Y_0 -> ... -> Y_k` of injections with
/// weak equivalences `w_i: X_i -> Y_i`.
#[derive(Clone, Debug)]
pub struct SequentialDiagram {
    pub xs: Vec<ChainMap>,
    pub ys: Vec<ChainMap>,
    pub ws: Vec<ChainMap>,
}

/// Colimit of a finite chain as `coker(⊕_{i<k} X_i -> ⊕_i X_i)`, together
/// with the maps from each stage.
pub fn sequential_colimit(chain: &[ChainMap], objs: &[ChainComplex]) -> (ChainComplex, Vec<ChainMap>) {
    let sum = direct_sum(&objs.iter().collect::<Vec<_>>());
    let lower = direct_sum(&objs[..objs.len() - 1].iter().collect::<Vec<_>>());
    let mut rel = ChainMap::zero(&lower.obj, &sum.obj);
    for (i, s) in chain.iter().enumerate() {
        let piece = sum.inj[i].sub(&sum.inj[i + 1].compose(s)).compose(&lower.proj[i]);
        rel = rel.add(&piece);
    }
    let ck = cokernel(&rel);
    let legs = sum.inj.iter().map(|j| ck.proj.compose(j)).collect();
    (ck.obj, legs)
}

impl SequentialDiagram {
    fn objects(maps: &[ChainMap], first: &ChainComplex) -> Vec<ChainComplex> {
        std::iter::once(first.clone())
            .chain(maps.iter().map(|m| m.dst().clone()))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.xs.len();
        if self.ys.len() != k || self.ws.len() != k + 1 {
            return Err(violation("sequential: chains of different lengths"));
        }
        for i in 0..k {
            if !self.xs[i].is_injective() || !self.ys[i].is_injective() {
                return Err(violation("sequential: a chain map is not injective"));
            }
            if self.ys[i].compose(&self.ws[i]) != self.ws[i + 1].compose(&self.xs[i]) {
                return Err(violation(format!("sequential: square {i} does not commute")));
            }
        }
        if self.ws.iter().any(|w| !is_quasi_iso(w)) {
            return Err(violation("sequential: a vertical map is not a weak equivalence"));
        }
        Ok(())
    }

    pub fn induced(&self) -> ChainMap {
        let xo = Self::objects(&self.xs, self.ws[0].src());
        let yo = Self::objects(&self.ys, self.ws[0].dst());
        let (_, xl) = sequential_colimit(&self.xs, &xo);
        let (_, yl) = sequential_colimit(&self.ys, &yo);
        let sum = direct_sum(&xo.iter().collect::<Vec<_>>());
        let quotient = {
            let maps: Vec<&ChainMap> = xl.iter().collect();
            sum.copair(&maps)
        };
        let image: Vec<ChainMap> = self.ws.iter().zip(&yl).map(|(w, l)| l.compose(w)).collect();
        let target = sum.copair(&image.iter().collect::<Vec<_>>());
        crate::chain::descend(&quotient, &target).expect("the squares commute")
    }
}

pub fn sequential_check(d: &SequentialDiagram) -> Result<bool> {
    d.validate()?;
    Ok(is_quasi_iso(&d.induced()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_complex, random_injection, random_map, GenConfig};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_gluing() {
        let x = ChainComplex::sphere(3, 1);
        let id = ChainMap::identity(&x);
        let d = GluingDiagram {
            f: id.clone(),
            g: id.clone(),
            f2: id.clone(),
            g2: id.clone(),
            wa: id.clone(),
            wb: id.clone(),
            wc: id,
        };
        assert!(gluing_check(&d).unwrap());
    }

    #[test]
    fn gluing_along_an_acyclic_leg() {
        // B <- 0 -> C against B <- 0 -> D^1 ⊕ C
        let p = 5;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cfg = GenConfig::new(p, -1, 1, 2);
        let b = random_complex(&cfg, &mut rng);
        let c = random_complex(&cfg, &mut rng);
        let z = ChainComplex::zero(p);
        let cd = direct_sum(&[&c, &ChainComplex::disk(p, 1)]);
        let d = GluingDiagram {
            f: ChainMap::zero(&z, &b),
            g: ChainMap::zero(&z, &c),
            f2: ChainMap::zero(&z, &b),
            g2: ChainMap::zero(&z, &cd.obj),
            wa: ChainMap::identity(&z),
            wb: ChainMap::identity(&b),
            wc: cd.inj[0].clone(),
        };
        assert!(gluing_check(&d).unwrap());
    }

    #[test]
    fn pushouts_of_injections() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cfg = GenConfig::new(2, -1, 1, 2);
        for _ in 0..5 {
            let a = random_complex(&cfg, &mut rng);
            let f = random_injection(&a, &cfg, &mut rng);
            let c = random_complex(&cfg, &mut rng);
            let g = random_map(&a, &c, &mut rng);
            assert!(pushout_stability_check(&f, &g).unwrap());
        }
    }

    #[test]
    fn sequential_colimit_of_a_chain_is_its_last_stage() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = GenConfig::new(3, -1, 1, 1);
        let a = random_complex(&cfg, &mut rng);
        let i0 = random_injection(&a, &cfg, &mut rng);
        let i1 = random_injection(i0.dst(), &cfg, &mut rng);
        let objs = vec![a.clone(), i0.dst().clone(), i1.dst().clone()];
        let (colim, legs) = sequential_colimit(&[i0, i1], &objs);
        assert_eq!(colim.graded_dims(), objs[2].graded_dims());
        assert!(legs[2].is_iso());
    }

    #[test]
    fn non_injective_leg_is_rejected() {
        let x = ChainComplex::sphere(2, 0);
        let z = ChainComplex::zero(2);
        assert!(pushout_stability_check(&ChainMap::zero(&x, &z), &ChainMap::identity(&x)).is_err());
    }
}
