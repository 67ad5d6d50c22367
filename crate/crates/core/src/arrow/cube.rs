//! Colimits over punctured cubes and the associativity of `□`.
//!
//! For arrows `f_1, ..., f_k` the vertex `ε ∈ {0,1}^k` carries the left-nested
//! tensor product of the `ε_c` ends. The colimit over all vertices except
//! `(1, ..., 1)` maps to that last vertex; for `k = 3` this arrow is the triple
//! pushout product under either bracketing.

use super::{pushout_product, ArrowObject, ArrowSquare, PushoutProduct};
use crate::chain::{
    associator, cokernel, descend, direct_sum, tensor_complex, tensor_map, ChainComplex, ChainMap, DirectSum,
};
use crate::error::{violation, Result};

fn end(f: &ArrowObject, e: u8) -> &ChainComplex {
    if e == 0 {
        f.ev0()
    } else {
        f.ev1()
    }
}

/// `X_e -> X_{e'}` for `e ≤ e'`.
fn step(f: &ArrowObject, e: u8, e2: u8) -> ChainMap {
    if e < e2 {
        f.map().clone()
    } else {
        ChainMap::identity(end(f, e))
    }
}

#[derive(Clone, Debug)]
pub struct CubeColimit {
    pub arrows: Vec<ArrowObject>,
    /// Every vertex except the terminal one, in binary order.
    pub vertices: Vec<Vec<u8>>,
    pub vertex_objects: Vec<ChainComplex>,
    pub obj: ChainComplex,
    /// `V_ε -> Q`.
    pub injections: Vec<ChainMap>,
    /// `Q -> V_{(1,...,1)}`.
    pub arrow: ArrowObject,
    pub(crate) sum: DirectSum,
    pub(crate) quotient: ChainMap,
}

impl CubeColimit {
    pub fn new(arrows: &[ArrowObject]) -> Self {
        let k = arrows.len();
        assert!(k >= 1);
        let p = arrows[0].p();
        let vertices: Vec<Vec<u8>> = (0..(1usize << k) - 1)
            .map(|m| (0..k).map(|c| ((m >> (k - 1 - c)) & 1) as u8).collect())
            .collect();
        let vertex_objects: Vec<ChainComplex> = vertices.iter().map(|e| Self::vertex(arrows, e)).collect();
        let sum = direct_sum(&vertex_objects.iter().collect::<Vec<_>>());
        let index = |e: &[u8]| vertices.iter().position(|v| v == e);
        let mut edges = Vec::new();
        for (s, e) in vertices.iter().enumerate() {
            for c in 0..k {
                if e[c] == 0 {
                    let mut t = e.clone();
                    t[c] = 1;
                    if let Some(ti) = index(&t) {
                        edges.push((s, ti, Self::vertex_map(arrows, e, &t)));
                    }
                }
            }
        }
        let rel = if edges.is_empty() {
            ChainMap::zero(&ChainComplex::zero(p), &sum.obj)
        } else {
            let esum = direct_sum(&edges.iter().map(|(s, _, _)| &vertex_objects[*s]).collect::<Vec<_>>());
            let parts: Vec<ChainMap> = edges
                .iter()
                .map(|(s, t, m)| sum.inj[*t].compose(m).sub(&sum.inj[*s]))
                .collect();
            esum.copair(&parts.iter().collect::<Vec<_>>())
        };
        let ck = cokernel(&rel);
        let injections: Vec<ChainMap> = sum.inj.iter().map(|i| ck.proj.compose(i)).collect();
        let top = vec![1u8; k];
        let to_top: Vec<ChainMap> = vertices.iter().map(|e| Self::vertex_map(arrows, e, &top)).collect();
        let corner = descend(&ck.proj, &sum.copair(&to_top.iter().collect::<Vec<_>>())).expect("cube cocone commutes");
        CubeColimit {
            arrows: arrows.to_vec(),
            vertices,
            vertex_objects,
            obj: ck.obj,
            injections,
            arrow: ArrowObject::from_map(corner),
            sum,
            quotient: ck.proj,
        }
    }

    /// Left-nested tensor product at vertex `e` (any vertex, terminal included).
    pub fn vertex(arrows: &[ArrowObject], e: &[u8]) -> ChainComplex {
        let mut acc = end(&arrows[0], e[0]).clone();
        for (f, &x) in arrows.iter().zip(e).skip(1) {
            acc = tensor_complex(&acc, end(f, x));
        }
        acc
    }

    /// The structure map `V_e -> V_{e'}` for `e ≤ e'`.
    pub fn vertex_map(arrows: &[ArrowObject], e: &[u8], e2: &[u8]) -> ChainMap {
        let mut acc = step(&arrows[0], e[0], e2[0]);
        for c in 1..arrows.len() {
            acc = tensor_map(&acc, &step(&arrows[c], e[c], e2[c]));
        }
        acc
    }

    pub fn injection(&self, e: &[u8]) -> &ChainMap {
        let i = self
            .vertices
            .iter()
            .position(|v| v == e)
            .expect("not a punctured-cube vertex");
        &self.injections[i]
    }

    /// The map out of `Q` restricting to `maps[i]` on vertex `i`.
    pub fn mediate(&self, maps: &[ChainMap]) -> Option<ChainMap> {
        descend(&self.quotient, &self.sum.copair(&maps.iter().collect::<Vec<_>>()))
    }
}

/// Isomorphisms `(f □ g) □ h ≅ Q ≅ f □ (g □ h)` of arrows, built from
/// universal properties and checked to be mutually inverse.
#[derive(Clone, Debug)]
pub struct AssociativityCertificate {
    pub cube: CubeColimit,
    pub left: PushoutProduct,
    pub right: PushoutProduct,
    /// `cube.arrow -> (f □ g) □ h`.
    pub to_left: ArrowSquare,
    /// `cube.arrow -> f □ (g □ h)`.
    pub to_right: ArrowSquare,
}

/// `X_i ⊗ Y_j -> ev0(f □ g)` for `(i, j) ≠ (1, 1)`.
fn pp_vertex(pp: &PushoutProduct, i: u8, j: u8) -> ChainMap {
    match (i, j) {
        (0, 1) => pp.inj_left.clone(),
        (1, 0) => pp.inj_right.clone(),
        (0, 0) => pp
            .inj_left
            .compose(&tensor_map(&ChainMap::identity(pp.f.ev0()), pp.g.map())),
        _ => unreachable!("terminal vertex"),
    }
}

/// Map out of `ev0(pp) ⊗ Z` (or `Z ⊗ ev0(pp)`) given on both summands.
fn descend_tensored(
    pp: &PushoutProduct,
    z: &ChainComplex,
    on_left: bool,
    l: &ChainMap,
    r: &ChainMap,
) -> Option<ChainMap> {
    let id = ChainMap::identity(z);
    let sum = &pp.pushout.sum;
    let (q, pl, pr) = if on_left {
        (
            tensor_map(&pp.pushout.quotient, &id),
            tensor_map(&sum.proj[0], &id),
            tensor_map(&sum.proj[1], &id),
        )
    } else {
        (
            tensor_map(&id, &pp.pushout.quotient),
            tensor_map(&id, &sum.proj[0]),
            tensor_map(&id, &sum.proj[1]),
        )
    };
    descend(&q, &l.compose(&pl).add(&r.compose(&pr)))
}

pub fn associativity_certificate(
    f: &ArrowObject,
    g: &ArrowObject,
    h: &ArrowObject,
) -> Result<AssociativityCertificate> {
    let cube = CubeColimit::new(&[f.clone(), g.clone(), h.clone()]);
    let fg = pushout_product(f, g);
    let left = pushout_product(&fg.arrow, h);
    let gh = pushout_product(g, h);
    let right = pushout_product(f, &gh.arrow);
    let (x, y, z) = (f, g, h);

    // cube -> (f □ g) □ h
    let phi_l: Vec<ChainMap> = cube
        .vertices
        .iter()
        .map(|e| {
            let (i, j, k) = (e[0], e[1], e[2]);
            if k == 1 {
                left.inj_left
                    .compose(&tensor_map(&pp_vertex(&fg, i, j), &ChainMap::identity(z.ev1())))
            } else {
                let to11 = tensor_map(&step(x, i, 1), &step(y, j, 1));
                left.inj_right.compose(&tensor_map(&to11, &ChainMap::identity(z.ev0())))
            }
        })
        .collect();
    let phi_l = cube
        .mediate(&phi_l)
        .ok_or_else(|| violation("cube -> (f□g)□h cocone"))?;
    let u = descend_tensored(
        &fg,
        z.ev1(),
        true,
        cube.injection(&[0, 1, 1]),
        cube.injection(&[1, 0, 1]),
    )
    .ok_or_else(|| violation("P_fg ⊗ Z_1 -> cube"))?;
    let psi_l = left
        .mediate(&u, cube.injection(&[1, 1, 0]))
        .ok_or_else(|| violation("(f□g)□h -> cube cocone"))?;

    // cube -> f □ (g □ h)
    let phi_r: Vec<ChainMap> = cube
        .vertices
        .iter()
        .map(|e| {
            let (i, j, k) = (e[0], e[1], e[2]);
            let a = associator(end(x, i), end(y, j), end(z, k));
            if i == 0 {
                let to11 = tensor_map(&step(y, j, 1), &step(z, k, 1));
                right
                    .inj_left
                    .compose(&tensor_map(&ChainMap::identity(x.ev0()), &to11))
                    .compose(&a)
            } else {
                right
                    .inj_right
                    .compose(&tensor_map(&ChainMap::identity(x.ev1()), &pp_vertex(&gh, j, k)))
                    .compose(&a)
            }
        })
        .collect();
    let phi_r = cube
        .mediate(&phi_r)
        .ok_or_else(|| violation("cube -> f□(g□h) cocone"))?;
    let inv = |i: u8, j: u8, k: u8| {
        associator(end(x, i), end(y, j), end(z, k))
            .inverse()
            .expect("associator is invertible")
    };
    let u = cube.injection(&[0, 1, 1]).compose(&inv(0, 1, 1));
    let v = descend_tensored(
        &gh,
        x.ev1(),
        false,
        &cube.injection(&[1, 0, 1]).compose(&inv(1, 0, 1)),
        &cube.injection(&[1, 1, 0]).compose(&inv(1, 1, 0)),
    )
    .ok_or_else(|| violation("X_1 ⊗ P_gh -> cube"))?;
    let psi_r = right
        .mediate(&u, &v)
        .ok_or_else(|| violation("f□(g□h) -> cube cocone"))?;

    let id_q = ChainMap::identity(&cube.obj);
    if psi_l.compose(&phi_l) != id_q || phi_l.compose(&psi_l) != ChainMap::identity(left.ev0()) {
        return Err(violation("cube and (f□g)□h are not inverse"));
    }
    if psi_r.compose(&phi_r) != id_q || phi_r.compose(&psi_r) != ChainMap::identity(right.ev0()) {
        return Err(violation("cube and f□(g□h) are not inverse"));
    }
    let top = ChainMap::identity(cube.arrow.ev1());
    let to_left = ArrowSquare::from_parts(&cube.arrow, &left.arrow, phi_l, top);
    let to_right = ArrowSquare::from_parts(&cube.arrow, &right.arrow, phi_r, associator(x.ev1(), y.ev1(), z.ev1()));
    to_left.validate()?;
    to_right.validate()?;
    Ok(AssociativityCertificate {
        cube,
        left,
        right,
        to_left,
        to_right,
    })
}
