//! Finite evidence for the strong quotient condition: for a monoid map
//! `p: R -> T` and a `T`-module `N`, is `N ⊗^L_R T -> N` a quasi-isomorphism?
//!
//! The derived tensor product is modelled by the bar construction
//! `B(N, R, T) = ⊕_k N ⊗ R^{⊗k} ⊗ T` (total degree shifted by `k`), cut off
//! at `k ≤ K`. Homology of the truncation agrees with the full construction
//! in a band of low degrees, and only that band is reported on. Nothing is
//! claimed about modules outside the supplied list.

use serde::Serialize;

use super::{MonoidHom, RightModule};
use crate::chain::{cone, homology, rebracket, tensor_map, Bracket, ChainComplex, ChainMap, Layout};
use crate::error::{violation, Result};
use crate::linalg::Matrix;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum Verdict {
    /// The bar construction is finite and the map is a quasi-isomorphism.
    Equivalence,
    /// No homology of the cone in degrees `≤ band_top`; higher degrees unknown.
    NoDefectInBand { band_top: i32 },
    /// The cone has homology in this degree, inside the reliable band.
    Defect { degree: i32 },
    /// `R` has negative degrees, so no degree range is reliable.
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongQuotientReport {
    pub bar_length: usize,
    pub verdicts: Vec<Verdict>,
}

impl StrongQuotientReport {
    pub fn no_defect_found(&self) -> bool {
        self.verdicts
            .iter()
            .all(|v| matches!(v, Verdict::Equivalence | Verdict::NoDefectInBand { .. }))
    }
}

fn nest(k: usize) -> Bracket {
    (1..k).fold(Bracket::leaf(0), |acc, i| Bracket::pair(acc, Bracket::leaf(i)))
}

/// `N ⊗ R^{⊗k} ⊗ T`, left nested.
fn bar_factors(n: &ChainComplex, r: &ChainComplex, t: &ChainComplex, k: usize) -> Vec<ChainComplex> {
    let mut v = vec![n.clone()];
    v.extend(std::iter::repeat_n(r.clone(), k));
    v.push(t.clone());
    v
}

/// Face `d_i: B_k -> B_{k-1}` multiplying factors `i` and `i + 1`.
fn face(factors: &[ChainComplex], i: usize, product: &ChainMap) -> ChainMap {
    let len = factors.len();
    // ((..(F_0 F_1)..) F_{i-1}) (F_i F_{i+1}) ...) left nested with the pair as one leaf
    let mut items: Vec<Bracket> = Vec::new();
    let mut c = 0;
    while c < len {
        if c == i {
            items.push(Bracket::pair(Bracket::leaf(c), Bracket::leaf(c + 1)));
            c += 2;
        } else {
            items.push(Bracket::leaf(c));
            c += 1;
        }
    }
    let grouped = items.into_iter().reduce(Bracket::pair).expect("at least one factor");
    let to_grouped = rebracket(&nest(len), &grouped, factors);
    // the product on the grouped leaf, identities elsewhere, along the left spine
    let mut map: Option<ChainMap> = None;
    let mut c = 0;
    while c < len {
        let (piece, width) = if c == i {
            (product.clone(), 2)
        } else {
            (ChainMap::identity(&factors[c]), 1)
        };
        map = Some(match map {
            None => piece,
            Some(acc) => tensor_map(&acc, &piece),
        });
        c += width;
    }
    map.expect("nonempty").compose(&to_grouped)
}

/// The truncated bar complex together with its augmentation to `N`.
fn truncated_bar(p: &MonoidHom, n: &RightModule, t_act: &ChainMap, len: usize) -> ChainMap {
    let (r, t) = (&p.src.carrier, &p.dst.carrier);
    let nc = &n.carrier;
    let pr = n.act.compose(&tensor_map(&ChainMap::identity(nc), &p.map));
    let left_t = p.dst.mult.compose(&tensor_map(&p.map, &ChainMap::identity(t)));
    let levels: Vec<ChainComplex> = (0..=len)
        .map(|k| nest(k + 2).complex(&bar_factors(nc, r, t, k)))
        .collect();
    let bar_diffs: Vec<Option<ChainMap>> = (0..=len)
        .map(|k| {
            (k > 0).then(|| {
                let factors = bar_factors(nc, r, t, k);
                let mut acc = ChainMap::zero(&levels[k], &levels[k - 1]);
                for i in 0..=k {
                    let product = if i == 0 {
                        &pr
                    } else if i == k {
                        &left_t
                    } else {
                        &p.src.mult
                    };
                    let d = face(&factors, i, product).retarget(&levels[k], &levels[k - 1]);
                    acc = if i % 2 == 0 { acc.add(&d) } else { acc.sub(&d) };
                }
                acc
            })
        })
        .collect();
    let layout = Layout::new(levels.iter().enumerate().map(|(k, c)| (c, k as i32)).collect());
    let prime = r.p();
    let total = layout.assemble(prime, |deg, from, to| {
        if from == to {
            let d = levels[from].diff(deg - from as i32);
            Some(if from % 2 == 0 { d } else { d.neg() })
        } else if to + 1 == from {
            Some(
                bar_diffs[from]
                    .as_ref()
                    .expect("positive level")
                    .comp(deg - from as i32),
            )
        } else {
            None
        }
    });
    ChainMap::from_fn(&total, nc, |deg| {
        let mut m = Matrix::zeros(prime, nc.dim(deg), total.dim(deg));
        m.set_block(0, layout.offset(deg, 0), &t_act.comp(deg));
        m
    })
}

fn min_degree(c: &ChainComplex) -> Option<i32> {
    c.degrees().find(|&n| c.dim(n) > 0)
}

/// Runs the check with bar length `len` against each supplied module.
pub fn strong_quotient_check(p: &MonoidHom, modules: &[RightModule], len: usize) -> Result<StrongQuotientReport> {
    p.validate()?;
    let mut verdicts = Vec::new();
    for n in modules {
        n.validate(&p.dst)?;
        let aug = truncated_bar(p, n, &n.act, len);
        aug.validate()
            .map_err(|e| violation(format!("bar augmentation: {e}")))?;
        let h = homology(&cone(&aug).obj);
        let (rmin, nmin, tmin) = (
            min_degree(&p.src.carrier),
            min_degree(&n.carrier),
            min_degree(&p.dst.carrier),
        );
        let verdict = match (rmin, nmin, tmin) {
            // some factor vanishes, so every level above 0 is zero
            (None, _, _) | (_, None, _) | (_, _, None) => {
                if h.is_acyclic() {
                    Verdict::Equivalence
                } else {
                    Verdict::Defect {
                        degree: *h.betti.keys().next().expect("nonzero homology"),
                    }
                }
            }
            (Some(rm), Some(nm), Some(tm)) if rm >= 0 => {
                let first_missing = (len as i32 + 1) * (1 + rm) + nm + tm;
                let band_top = first_missing - 2;
                match h.betti.keys().find(|&&d| d <= band_top) {
                    Some(&degree) => Verdict::Defect { degree },
                    None => Verdict::NoDefectInBand { band_top },
                }
            }
            _ => Verdict::Undetermined,
        };
        verdicts.push(verdict);
    }
    Ok(StrongQuotientReport {
        bar_length: len,
        verdicts,
    })
}
