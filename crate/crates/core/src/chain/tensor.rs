//! Tensor products with the Koszul sign rule.
//!
//! Degree `n` of `A ⊗ B` is `⊕_i A_i ⊗ B_{n-i}` with summands ordered by
//! decreasing `i`; inside a summand the basis vector `a ⊗ b` sits at
//! `a · dim B_{n-i} + b`.

use super::{ChainComplex, ChainMap};
use crate::linalg::Matrix;

fn sign(p: u64, odd: bool) -> u64 {
    if odd {
        p - 1
    } else {
        1 % p
    }
}

fn odd(n: i32) -> bool {
    n.rem_euclid(2) == 1
}

/// Offset of summand `A_i ⊗ B_{n-i}` inside `(A ⊗ B)_n`.
pub(crate) fn summand_offset(a: &ChainComplex, b: &ChainComplex, n: i32, i: i32) -> usize {
    ((i + 1)..=a.hi()).map(|k| a.dim(k) * b.dim(n - k)).sum()
}

/// Index of `e_x ⊗ e_y` with `x ∈ A_i`, `y ∈ B_j`, inside `(A ⊗ B)_{i+j}`.
pub fn tensor_index(a: &ChainComplex, b: &ChainComplex, i: i32, x: usize, j: i32, y: usize) -> usize {
    summand_offset(a, b, i + j, i) + x * b.dim(j) + y
}

pub fn tensor_complex(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    assert_eq!(a.p(), b.p(), "tensor over different fields");
    let p = a.p();
    let lo = a.lo() + b.lo();
    let hi = a.hi() + b.hi();
    let dim = |n: i32| -> usize { (a.lo()..=a.hi()).map(|i| a.dim(i) * b.dim(n - i)).sum() };
    ChainComplex::from_fn(p, lo, hi, &dim, &|n| {
        let rows = if n > lo { dim(n - 1) } else { 0 };
        let mut m = Matrix::zeros(p, rows, dim(n));
        if n == lo {
            return m;
        }
        for i in a.degrees() {
            let j = n - i;
            let (da, db) = (a.dim(i), b.dim(j));
            if da * db == 0 {
                continue;
            }
            let col = summand_offset(a, b, n, i);
            if a.dim(i - 1) > 0 {
                let blk = a.diff(i).kron(&Matrix::identity(p, db));
                m.add_block(summand_offset(a, b, n - 1, i - 1), col, &blk);
            }
            if b.dim(j - 1) > 0 {
                let blk = Matrix::identity(p, da).kron(&b.diff(j)).scale(sign(p, odd(i)));
                m.add_block(summand_offset(a, b, n - 1, i), col, &blk);
            }
        }
        m
    })
}

/// `f ⊗ g` between the corresponding tensor products.
pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let src = tensor_complex(f.src(), g.src());
    let dst = tensor_complex(f.dst(), g.dst());
    tensor_map_between(f, g, &src, &dst)
}

pub(crate) fn tensor_map_between(f: &ChainMap, g: &ChainMap, src: &ChainComplex, dst: &ChainComplex) -> ChainMap {
    let (a, b, a2, b2) = (f.src(), g.src(), f.dst(), g.dst());
    let lo = a.lo().min(a2.lo());
    let hi = a.hi().max(a2.hi());
    ChainMap::from_fn(src, dst, |n| {
        let mut m = Matrix::zeros(src.p(), dst.dim(n), src.dim(n));
        for i in lo..=hi {
            let j = n - i;
            if a.dim(i) * b.dim(j) == 0 || a2.dim(i) * b2.dim(j) == 0 {
                continue;
            }
            let blk = f.comp(i).kron(&g.comp(j));
            m.add_block(summand_offset(a2, b2, n, i), summand_offset(a, b, n, i), &blk);
        }
        m
    })
}

/// Map `A ⊗ B -> C` given on basis pairs: `f(i, x, j, y)` is the image of
/// `e_x ⊗ e_y` as a coordinate vector in `C_{i+j}`.
pub fn bilinear_map(
    a: &ChainComplex,
    b: &ChainComplex,
    c: &ChainComplex,
    f: impl Fn(i32, usize, i32, usize) -> Vec<u64>,
) -> ChainMap {
    let src = tensor_complex(a, b);
    let p = a.p();
    let mut comps: Vec<(i32, Matrix)> = src
        .degrees()
        .map(|n| (n, Matrix::zeros(p, c.dim(n), src.dim(n))))
        .collect();
    for i in a.degrees() {
        for j in b.degrees() {
            let n = i + j;
            let k = (n - src.lo()) as usize;
            for x in 0..a.dim(i) {
                for y in 0..b.dim(j) {
                    let v = f(i, x, j, y);
                    assert_eq!(v.len(), c.dim(n), "bilinear image length");
                    let col = tensor_index(a, b, i, x, j, y);
                    for (r, &e) in v.iter().enumerate() {
                        comps[k].1.set(r, col, e % p);
                    }
                }
            }
        }
    }
    ChainMap::from_fn(&src, c, |n| {
        if n < src.lo() || n > src.hi() {
            Matrix::zeros(p, c.dim(n), src.dim(n))
        } else {
            comps[(n - src.lo()) as usize].1.clone()
        }
    })
}

/// A binary bracketing of labelled factors, e.g. `((0 1) 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    Leaf(usize),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn leaf(i: usize) -> Self {
        Bracket::Leaf(i)
    }

    pub fn pair(l: Bracket, r: Bracket) -> Self {
        Bracket::Pair(Box::new(l), Box::new(r))
    }

    /// Labels in left-to-right order.
    pub fn labels(&self) -> Vec<usize> {
        match self {
            Bracket::Leaf(i) => vec![*i],
            Bracket::Pair(l, r) => {
                let mut v = l.labels();
                v.extend(r.labels());
                v
            }
        }
    }

    pub fn complex(&self, factors: &[ChainComplex]) -> ChainComplex {
        match self {
            Bracket::Leaf(i) => factors[*i].clone(),
            Bracket::Pair(l, r) => tensor_complex(&l.complex(factors), &r.complex(factors)),
        }
    }

    fn layout(&self, factors: &[ChainComplex]) -> Node {
        match self {
            Bracket::Leaf(i) => Node::Leaf(*i, factors[*i].clone()),
            Bracket::Pair(l, r) => {
                let (l, r) = (l.layout(factors), r.layout(factors));
                let c = tensor_complex(l.complex(), r.complex());
                Node::Pair(Box::new(l), Box::new(r), c)
            }
        }
    }
}

enum Node {
    Leaf(usize, ChainComplex),
    Pair(Box<Node>, Box<Node>, ChainComplex),
}

impl Node {
    fn complex(&self) -> &ChainComplex {
        match self {
            Node::Leaf(_, c) | Node::Pair(_, _, c) => c,
        }
    }

    /// Degree and index of the basis tensor picked out by `tuple[label]`.
    fn locate(&self, tuple: &[(i32, usize)]) -> (i32, usize) {
        match self {
            Node::Leaf(i, _) => tuple[*i],
            Node::Pair(l, r, _) => {
                let (dl, xl) = l.locate(tuple);
                let (dr, xr) = r.locate(tuple);
                (dl + dr, tensor_index(l.complex(), r.complex(), dl, xl, dr, xr))
            }
        }
    }
}

/// The canonical isomorphism between two bracketings of the same labels,
/// permuting factors with the Koszul sign.
pub fn rebracket(src: &Bracket, dst: &Bracket, factors: &[ChainComplex]) -> ChainMap {
    let (sl, dl) = (src.labels(), dst.labels());
    let mut sorted_s = sl.clone();
    let mut sorted_d = dl.clone();
    sorted_s.sort_unstable();
    sorted_d.sort_unstable();
    assert_eq!(sorted_s, sorted_d, "bracketings over different labels");
    let p = factors[sl[0]].p();
    let (sn, dn) = (src.layout(factors), dst.layout(factors));
    let (sc, dc) = (sn.complex().clone(), dn.complex().clone());
    let pos_in_dst: Vec<usize> = {
        let mut v = vec![0; factors.len()];
        for (k, &l) in dl.iter().enumerate() {
            v[l] = k;
        }
        v
    };
    // pairs of labels that swap order
    let mut swaps = Vec::new();
    for x in 0..sl.len() {
        for y in x + 1..sl.len() {
            if pos_in_dst[sl[x]] > pos_in_dst[sl[y]] {
                swaps.push((sl[x], sl[y]));
            }
        }
    }
    let mut comps: std::collections::BTreeMap<i32, Matrix> = sc
        .degrees()
        .map(|n| (n, Matrix::zeros(p, dc.dim(n), sc.dim(n))))
        .collect();
    let mut tuple = vec![(0i32, 0usize); factors.len()];
    let basis: Vec<Vec<(i32, usize)>> = sl
        .iter()
        .map(|&l| {
            let c = &factors[l];
            c.degrees().flat_map(|n| (0..c.dim(n)).map(move |x| (n, x))).collect()
        })
        .collect();
    let mut idx = vec![0usize; sl.len()];
    if basis.iter().any(|b| b.is_empty()) {
        return ChainMap::zero(&sc, &dc);
    }
    loop {
        for (k, &l) in sl.iter().enumerate() {
            tuple[l] = basis[k][idx[k]];
        }
        let (n, s) = sn.locate(&tuple);
        let (_, d) = dn.locate(&tuple);
        let neg = swaps
            .iter()
            .filter(|&&(x, y)| odd(tuple[x].0) && odd(tuple[y].0))
            .count()
            % 2
            == 1;
        comps.get_mut(&n).unwrap().set(d, s, sign(p, neg));
        // odometer
        let mut k = sl.len();
        loop {
            if k == 0 {
                return ChainMap::from_fn(&sc, &dc, |n| {
                    comps
                        .get(&n)
                        .cloned()
                        .unwrap_or_else(|| Matrix::zeros(p, dc.dim(n), sc.dim(n)))
                });
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < basis[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// `τ: A ⊗ B -> B ⊗ A`, `a ⊗ b ↦ (-1)^{|a||b|} b ⊗ a`.
pub fn symmetry_iso(a: &ChainComplex, b: &ChainComplex) -> ChainMap {
    rebracket(
        &Bracket::pair(Bracket::leaf(0), Bracket::leaf(1)),
        &Bracket::pair(Bracket::leaf(1), Bracket::leaf(0)),
        &[a.clone(), b.clone()],
    )
}

/// `(A ⊗ B) ⊗ C -> A ⊗ (B ⊗ C)`.
pub fn associator(a: &ChainComplex, b: &ChainComplex, c: &ChainComplex) -> ChainMap {
    rebracket(
        &Bracket::pair(Bracket::pair(Bracket::leaf(0), Bracket::leaf(1)), Bracket::leaf(2)),
        &Bracket::pair(Bracket::leaf(0), Bracket::pair(Bracket::leaf(1), Bracket::leaf(2))),
        &[a.clone(), b.clone(), c.clone()],
    )
}

/// `S ⊗ X -> X`.
pub fn left_unitor(x: &ChainComplex) -> ChainMap {
    let s = tensor_complex(&ChainComplex::unit(x.p()), x);
    ChainMap::from_fn(&s, x, |n| Matrix::identity(x.p(), x.dim(n)))
}

/// `X ⊗ S -> X`.
pub fn right_unitor(x: &ChainComplex) -> ChainMap {
    let s = tensor_complex(x, &ChainComplex::unit(x.p()));
    ChainMap::from_fn(&s, x, |n| Matrix::identity(x.p(), x.dim(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term(p: u64) -> ChainComplex {
        // F^2 in degree 1 -> F in degree 0 via [1 1]
        let mut d = std::collections::BTreeMap::new();
        d.insert(1, Matrix::from_rows(p, &[vec![1, 1]]));
        ChainComplex::new(p, 0, vec![1, 2], d).unwrap()
    }

    #[test]
    fn tensor_is_a_complex() {
        for p in [2, 3, 5] {
            let a = two_term(p);
            let b = ChainComplex::disk(p, 2);
            let t = tensor_complex(&a, &b);
            t.validate().unwrap();
            assert_eq!(t.total_dim(), a.total_dim() * b.total_dim());
        }
    }

    #[test]
    fn koszul_sign_on_disks() {
        // D^1 ⊗ D^1: d(e1 ⊗ e1) = e0 ⊗ e1 - e1 ⊗ e0
        let p = 5;
        let d = ChainComplex::disk(p, 1);
        let t = tensor_complex(&d, &d);
        let m = t.diff(2);
        // degree 1 summands: i=1 (e1⊗e0) first, then i=0 (e0⊗e1)
        assert_eq!(m.to_rows(), vec![vec![4], vec![1]]);
    }

    #[test]
    fn symmetry_squares_to_identity_and_signs() {
        let p = 7;
        let s1 = ChainComplex::sphere(p, 1);
        let tau = symmetry_iso(&s1, &s1);
        tau.validate().unwrap();
        assert_eq!(tau.comp(2).to_rows(), vec![vec![6]]);
        let a = two_term(p);
        let b = ChainComplex::disk(p, 1);
        let t1 = symmetry_iso(&a, &b);
        let t2 = symmetry_iso(&b, &a);
        assert!(t2.compose(&t1) == ChainMap::identity(t1.src()));
    }

    #[test]
    fn associator_is_chain_iso() {
        let p = 3;
        let a = two_term(p);
        let b = ChainComplex::disk(p, 1);
        let c = ChainComplex::sphere(p, -1);
        let al = associator(&a, &b, &c);
        al.validate().unwrap();
        assert!(al.is_iso());
    }
}
