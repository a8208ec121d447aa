use std::collections::HashMap;

use bimodule::FreeBimodule;
use f2linalg::ChainComplex;

use crate::{DoubledComplex, HochschildComplex};

/// Hochschild complex of a free model `A ⊗ Z ⊗ A`: generators `(z|c)` with
/// `c ∈ e_{r(z)} A e_{l(z)}` and `d(z|c) = Σ (z'|α'·c·α)` over the terms
/// `α⊗z'⊗α'` of `δz`.
pub fn free_hochschild(z: &FreeBimodule) -> HochschildComplex {
    let a = &z.ring().a;
    let mut index: HashMap<(u32, u32), u32> = HashMap::new();
    let mut pairs = Vec::new();
    let mut grading = Vec::new();
    let mut labels = Vec::new();
    for (g, x) in z.generators().iter().enumerate() {
        for c in a.between(x.right, x.left) {
            index.insert((g as u32, c as u32), pairs.len() as u32);
            pairs.push((g, c));
            grading.push(x.bigrading + a.bigrading(c));
            labels.push(format!("(z{}|{})", g, a.label(c)));
        }
    }
    let images = pairs
        .iter()
        .map(|&(g, c)| {
            z.delta(g)
                .iter()
                .filter_map(|t| {
                    let c2 = a.mul(a.mul(t.b as usize, c)?, t.a as usize)?;
                    Some(index[&(t.z, c2 as u32)])
                })
                .collect()
        })
        .collect();
    HochschildComplex {
        complex: ChainComplex::from_images(grading, images),
        labels,
    }
}

/// Hochschild complex of `Z ⊗_A Z` for a free model `Z`, with generators
/// `(z1|c1|z2|c2)` and the swap `τ(z1|c1|z2|c2) = (z2|c2|z1|c1)`.
pub fn free_doubled(z: &FreeBimodule) -> DoubledComplex {
    let a = &z.ring().a;
    let gens = z.generators();
    let mut index: HashMap<(u32, u32, u32, u32), u32> = HashMap::new();
    let mut quads = Vec::new();
    let mut grading = Vec::new();
    let mut labels = Vec::new();
    for (g1, x1) in gens.iter().enumerate() {
        for (g2, x2) in gens.iter().enumerate() {
            for c1 in a.between(x1.right, x2.left) {
                for c2 in a.between(x2.right, x1.left) {
                    let key = (g1 as u32, c1 as u32, g2 as u32, c2 as u32);
                    index.insert(key, quads.len() as u32);
                    quads.push(key);
                    grading.push(x1.bigrading + a.bigrading(c1) + x2.bigrading + a.bigrading(c2));
                    labels.push(format!("(z{}|{}|z{}|{})", g1, a.label(c1), g2, a.label(c2)));
                }
            }
        }
    }
    let images = quads
        .iter()
        .map(|&(g1, c1, g2, c2)| {
            let mut out = Vec::new();
            for t in z.delta(g1 as usize) {
                if let (Some(n1), Some(n2)) = (a.mul(t.b as usize, c1 as usize), a.mul(c2 as usize, t.a as usize)) {
                    out.push(index[&(t.z, n1 as u32, g2, n2 as u32)]);
                }
            }
            for t in z.delta(g2 as usize) {
                if let (Some(n1), Some(n2)) = (a.mul(c1 as usize, t.a as usize), a.mul(t.b as usize, c2 as usize)) {
                    out.push(index[&(g1, n1 as u32, t.z, n2 as u32)]);
                }
            }
            out
        })
        .collect();
    let tau = quads.iter().map(|&(g1, c1, g2, c2)| index[&(g2, c2, g1, c1)]).collect();
    DoubledComplex {
        complex: ChainComplex::from_images(grading, images),
        labels,
        tau,
    }
}
