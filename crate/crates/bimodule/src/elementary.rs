//! The identity bimodule and the two crossing bimodules.
//!
//! `M_{σ_i^-}` is the cone of the coevaluation `A_n → P ⊗_K Q`, where `P`
//! and `Q` are the two-dimensional modules supported on vertices `i-1` and
//! `i`, with `x_{i-1,i}` connecting their two basis vectors.
//!
//! `M_{σ_i^+}` should be the cone of multiplication `P ⊗_K Q → A_n`. That
//! map is not a map of bimodules on `P ⊗_K Q` itself, so `P ⊗_K Q` is
//! replaced by a free resolution with four generators
//! `g_{i,i-1}, g_{i,i}, g_{i-1,i-1}, g_{i-1,i}` and the augmentation is
//! composed with multiplication.

use std::sync::Arc;

use f2linalg::Bigrading;
use quiver::KoszulPair;

use crate::braid::{Letter, Sign};
use crate::module::{DgBimodule, Generator};
use crate::BimoduleError;

/// Overall shift of the projective summand of `M_{σ^-}`.
pub const NEG_SHIFT: Bigrading = Bigrading::new(2, 1);
/// Overall shift of `M_{σ^+}`.
pub const POS_SHIFT: Bigrading = Bigrading::new(1, 1);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A one-sided module over `A_n` given by arrow actions.
#[derive(Debug, Clone)]
pub struct SideModule {
    pub side: Side,
    /// `(vertex, bigrading, name)` per basis vector.
    pub gens: Vec<(usize, Bigrading, String)>,
    /// `act[α][g]`: the result of acting by arrow `α` on `g`.
    pub act: Vec<Vec<Vec<u32>>>,
}

/// `A_n` as a bimodule over itself.
pub fn identity(ring: &Arc<KoszulPair>) -> DgBimodule {
    let a = &ring.a;
    let gens = (0..a.dim())
        .map(|i| Generator {
            left: a.left_vertex(i),
            right: a.right_vertex(i),
            bigrading: a.bigrading(i),
            name: a.label(i).to_string(),
        })
        .collect();
    let table = |f: &dyn Fn(usize, usize) -> Option<usize>| -> Vec<Vec<Vec<u32>>> {
        (0..a.arrow_count())
            .map(|k| {
                let ar = a.arrow_element(k);
                (0..a.dim())
                    .map(|g| f(ar, g).map(|p| vec![p as u32]).unwrap_or_default())
                    .collect()
            })
            .collect()
    };
    let left = table(&|ar, g| a.mul(ar, g));
    let right = table(&|ar, g| a.mul(g, ar));
    DgBimodule::from_parts_unchecked(ring.clone(), gens, left, right, vec![Vec::new(); a.dim()])
}

fn check_index(ring: &KoszulPair, i: usize) -> Result<(), BimoduleError> {
    if i == 0 || i > ring.n() {
        return Err(BimoduleError::IndexOutOfRange { index: i, n: ring.n() });
    }
    Ok(())
}

/// The left module `P` and right module `Q` attached to crossing `i`.
///
/// `P` has basis `v*` (vertex `i-1`) and `u* = x·v*` (vertex `i`). `Q` has
/// basis `u` (vertex `i`) and `v = u·x` (vertex `i-1`). Every other arrow
/// acts by zero.
pub fn projectives(ring: &KoszulPair, i: usize) -> Result<(SideModule, SideModule), BimoduleError> {
    check_index(ring, i)?;
    let a = &ring.a;
    let x = a.nilpotent_arrow(i - 1);
    let xg = a.quiver().arrows[x].bigrading;
    let mut act = vec![vec![Vec::new(); 2]; a.arrow_count()];
    act[x][0] = vec![1];
    let p = SideModule {
        side: Side::Left,
        gens: vec![(i - 1, Bigrading::ZERO, "v*".into()), (i, xg, "u*".into())],
        act: act.clone(),
    };
    let q = SideModule {
        side: Side::Right,
        gens: vec![(i, Bigrading::ZERO, "u".into()), (i - 1, xg, "v".into())],
        act,
    };
    Ok((p, q))
}

/// `P ⊗_K Q`, with generator `(p, q)` at index `2p + q` named `p⊗q`.
pub fn outer_product(ring: &Arc<KoszulPair>, p: &SideModule, q: &SideModule) -> DgBimodule {
    assert_eq!((p.side, q.side), (Side::Left, Side::Right));
    let nq = q.gens.len();
    let idx = |i: usize, j: usize| (i * nq + j) as u32;
    let mut gens = Vec::new();
    for (pv, pg, pn) in &p.gens {
        for (qv, qg, qn) in &q.gens {
            gens.push(Generator {
                left: *pv,
                right: *qv,
                bigrading: *pg + *qg,
                name: format!("{pn}⊗{qn}"),
            });
        }
    }
    let arrows = ring.a.arrow_count();
    let mut left = vec![vec![Vec::new(); gens.len()]; arrows];
    let mut right = vec![vec![Vec::new(); gens.len()]; arrows];
    for k in 0..arrows {
        for i in 0..p.gens.len() {
            for j in 0..nq {
                left[k][idx(i, j) as usize] = p.act[k][i].iter().map(|&i2| idx(i2 as usize, j)).collect();
                right[k][idx(i, j) as usize] = q.act[k][j].iter().map(|&j2| idx(i, j2 as usize)).collect();
            }
        }
    }
    let d = vec![Vec::new(); gens.len()];
    DgBimodule::from_parts_unchecked(ring.clone(), gens, left, right, d)
}

/// Short names for the four generators of `P ⊗_K Q`, in index order.
pub const PROJECTIVE_ALIASES: [(&str, &str); 4] = [("v*⊗u", "t"), ("v*⊗v", "v"), ("u*⊗u", "u"), ("u*⊗v", "s")];

/// `A_n ⊕ (P ⊗_K Q)`, with `P ⊗_K Q` appended after the basis of `A_n`
/// and shifted by `NEG_SHIFT`. The differential is `a ↦ a·(u + v)`.
pub fn sigma_minus(ring: &Arc<KoszulPair>, i: usize) -> Result<DgBimodule, BimoduleError> {
    let (p, q) = projectives(ring, i)?;
    let proj = outer_product(ring, &p, &q).shift(NEG_SHIFT.h, NEG_SHIFT.q);
    let base = identity(ring);
    let offset = base.len() as u32;
    let mut gens = base.gens.clone();
    gens.extend(proj.gens.iter().cloned().map(|mut g| {
        let alias = PROJECTIVE_ALIASES
            .iter()
            .find(|(long, _)| *long == g.name)
            .map(|(_, s)| *s);
        if let Some(s) = alias {
            g.name = s.to_string();
        }
        g
    }));
    let shift = |v: &[u32]| v.iter().map(|&x| x + offset).collect::<Vec<u32>>();
    let mut left = base.left.clone();
    let mut right = base.right.clone();
    for k in 0..left.len() {
        left[k].extend(proj.left[k].iter().map(|v| shift(v)));
        right[k].extend(proj.right[k].iter().map(|v| shift(v)));
    }
    let a = &ring.a;
    // v*⊗v and u*⊗u
    let unit_image = [1u32, 2];
    let mut d: Vec<Vec<u32>> = (0..a.dim())
        .map(|g| {
            let mut acc = Vec::new();
            for &target in &unit_image {
                acc.extend(proj.act_left(g, target as usize).into_iter().map(|x| x + offset));
            }
            acc
        })
        .collect();
    d.extend(vec![Vec::new(); proj.len()]);
    DgBimodule::from_parts(ring.clone(), gens, left, right, d)
}

/// Pre-shift bigradings of the free generators of the `σ^+` resolution,
/// keyed by `(a, b)` relative to the crossing: offsets of `a` and `b` from
/// `i - 1`.
const POS_GENERATORS: [((usize, usize), Bigrading); 4] = [
    ((1, 0), Bigrading::new(-2, 1)),
    ((1, 1), Bigrading::new(-1, 0)),
    ((0, 0), Bigrading::new(-1, 0)),
    ((0, 1), Bigrading::new(0, -1)),
];

/// `A_n ⊕ ⨁ A e_a ⊗ e_b A`, shifted as a whole by `POS_SHIFT`.
pub fn sigma_plus(ring: &Arc<KoszulPair>, i: usize) -> Result<DgBimodule, BimoduleError> {
    check_index(ring, i)?;
    let a = &ring.a;
    let base = identity(ring);
    let mut gens = base.gens.clone();
    // Index of p ⊗ g_ab ⊗ q, for each of the four generator slots.
    let mut slot: Vec<std::collections::HashMap<(usize, usize), u32>> = Vec::new();
    for &((da, db), deg) in &POS_GENERATORS {
        let (va, vb) = (i - 1 + da, i - 1 + db);
        let mut map = std::collections::HashMap::new();
        for p in (0..a.dim()).filter(|&p| a.right_vertex(p) == va) {
            for q in (0..a.dim()).filter(|&q| a.left_vertex(q) == vb) {
                map.insert((p, q), gens.len() as u32);
                gens.push(Generator {
                    left: a.left_vertex(p),
                    right: a.right_vertex(q),
                    bigrading: deg + a.bigrading(p) + a.bigrading(q),
                    name: format!("{}|g{va}{vb}|{}", a.label(p), a.label(q)),
                });
            }
        }
        slot.push(map);
    }
    let len = gens.len();
    let arrows = a.arrow_count();
    let mut left = vec![vec![Vec::new(); len]; arrows];
    let mut right = vec![vec![Vec::new(); len]; arrows];
    for k in 0..arrows {
        left[k][..a.dim()].clone_from_slice(&base.left[k]);
        right[k][..a.dim()].clone_from_slice(&base.right[k]);
        let ar = a.arrow_element(k);
        for map in &slot {
            for (&(p, q), &g) in map {
                if let Some(pp) = a.mul(ar, p) {
                    left[k][g as usize] = vec![map[&(pp, q)]];
                }
                if let Some(qq) = a.mul(q, ar) {
                    right[k][g as usize] = vec![map[&(p, qq)]];
                }
            }
        }
    }
    let iota = a.arrow_element(a.plain_arrow(i - 1));
    let mut d = vec![Vec::new(); len];
    let [s10, s11, s00, s01] = [&slot[0], &slot[1], &slot[2], &slot[3]];
    for (&(p, q), &g) in s10 {
        let out = &mut d[g as usize];
        if let Some(pi) = a.mul(p, iota) {
            out.push(s00[&(pi, q)]);
        }
        if let Some(iq) = a.mul(iota, q) {
            out.push(s11[&(p, iq)]);
        }
    }
    for (&(p, q), &g) in s00 {
        let out = &mut d[g as usize];
        if let Some(iq) = a.mul(iota, q) {
            out.push(s01[&(p, iq)]);
        }
        if let Some(pq) = a.mul(p, q) {
            out.push(pq as u32);
        }
    }
    for (&(p, q), &g) in s11 {
        let out = &mut d[g as usize];
        if let Some(pi) = a.mul(p, iota) {
            out.push(s01[&(pi, q)]);
        }
        if let Some(pq) = a.mul(p, q) {
            out.push(pq as u32);
        }
    }
    let m = DgBimodule::from_parts(ring.clone(), gens, left, right, d)?;
    Ok(m.shift(POS_SHIFT.h, POS_SHIFT.q))
}

pub fn elementary(ring: &Arc<KoszulPair>, letter: Letter) -> Result<DgBimodule, BimoduleError> {
    match letter.sign {
        Sign::Pos => sigma_plus(ring, letter.index),
        Sign::Neg => sigma_minus(ring, letter.index),
    }
}
