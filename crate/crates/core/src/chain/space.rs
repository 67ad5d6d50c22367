//! Chain maps as unknowns in a [`LinearSystem`].

use std::collections::BTreeMap;

use super::{ChainComplex, ChainMap};
use crate::error::Result;
use crate::linalg::{LinearSystem, Matrix, Unknown};

#[derive(Clone, Debug)]
pub struct ChainMapUnknown {
    pub src: ChainComplex,
    pub dst: ChainComplex,
    comps: BTreeMap<i32, Unknown>,
}

/// Registers an unknown chain map `A -> B`, together with its commutation law.
pub fn map_space(sys: &mut LinearSystem, a: &ChainComplex, b: &ChainComplex) -> ChainMapUnknown {
    let lo = a.lo().max(b.lo());
    let hi = a.hi().min(b.hi());
    let mut comps = BTreeMap::new();
    for n in lo..=hi {
        if a.dim(n) * b.dim(n) > 0 {
            comps.insert(n, sys.add_unknown(b.dim(n), a.dim(n)));
        }
    }
    let x = ChainMapUnknown {
        src: a.clone(),
        dst: b.clone(),
        comps,
    };
    let p = a.p();
    for n in lo..=hi + 1 {
        let (r, c) = (b.dim(n - 1), a.dim(n));
        if r * c == 0 {
            continue;
        }
        let db = b.diff(n);
        let da = a.diff(n);
        let id_a = Matrix::identity(p, c);
        let minus = Matrix::identity(p, r).neg();
        let mut terms = Vec::new();
        if let Some(u) = x.unknown(n) {
            terms.push((&db, u, &id_a));
        }
        if let Some(u) = x.unknown(n - 1) {
            terms.push((&minus, u, &da));
        }
        if !terms.is_empty() {
            sys.add_equation(&terms, &Matrix::zeros(p, r, c)).expect("shapes agree");
        }
    }
    x
}

impl ChainMapUnknown {
    pub fn unknown(&self, n: i32) -> Option<Unknown> {
        self.comps.get(&n).copied()
    }

    pub fn extract(&self, sol: &[Matrix]) -> ChainMap {
        let p = self.src.p();
        ChainMap::from_fn(&self.src, &self.dst, |n| match self.unknown(n) {
            Some(u) => sol[u.index()].clone(),
            None => Matrix::zeros(p, self.dst.dim(n), self.src.dim(n)),
        })
    }
}

/// Adds `Σ_k left_k ∘ X_k ∘ right_k = rhs` degree by degree.
pub fn add_composite_equation(
    sys: &mut LinearSystem,
    terms: &[(&ChainMap, &ChainMapUnknown, &ChainMap)],
    rhs: &ChainMap,
) -> Result<()> {
    let (s, t) = (rhs.src(), rhs.dst());
    let lo = s.lo().max(t.lo());
    let hi = s.hi().min(t.hi());
    for n in lo..=hi {
        if s.dim(n) * t.dim(n) == 0 {
            continue;
        }
        let mats: Vec<(Matrix, Unknown, Matrix)> = terms
            .iter()
            .filter_map(|(l, x, r)| x.unknown(n).map(|u| (l.comp(n), u, r.comp(n))))
            .collect();
        let refs: Vec<(&Matrix, Unknown, &Matrix)> = mats.iter().map(|(l, u, r)| (l, *u, r)).collect();
        if refs.is_empty() {
            if !rhs.comp(n).is_zero() {
                // unsatisfiable: record an impossible equation
                sys.add_raw(Vec::new(), rhs.comp(n).vectorize())?;
            }
            continue;
        }
        sys.add_equation(&refs, &rhs.comp(n))?;
    }
    Ok(())
}
