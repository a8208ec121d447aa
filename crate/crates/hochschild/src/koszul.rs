use std::collections::HashMap;

use bimodule::DgBimodule;
use f2linalg::{ChainComplex, RankTable};
use quiver::KoszulPair;

use crate::{DoubledComplex, HochschildComplex, HochschildError};

/// The Koszul bimodule resolution `A ⊗_K B* ⊗_K A` of `A_n`.
#[derive(Debug, Clone)]
pub struct KoszulResolution {
    pub complex: ChainComplex,
    pub labels: Vec<String>,
    /// Length of the `B*` factor of each generator.
    pub length: Vec<usize>,
}

/// Builds `A ⊗_K B* ⊗_K A` with
/// `d(a|β|b) = Σ_top a·ξ|γ|b + Σ_bottom a|γ|ξ·b`.
pub fn koszul_resolution(ring: &KoszulPair) -> KoszulResolution {
    let (a, bs) = (&ring.a, &ring.dual);
    let mut index: HashMap<(usize, usize, usize), u32> = HashMap::new();
    let mut triples = Vec::new();
    let mut grading = Vec::new();
    let mut labels = Vec::new();
    let mut length = Vec::new();
    for beta in 0..bs.dim() {
        for x in (0..a.dim()).filter(|&x| a.right_vertex(x) == bs.left_vertex(beta)) {
            for y in (0..a.dim()).filter(|&y| a.left_vertex(y) == bs.right_vertex(beta)) {
                index.insert((x, beta, y), triples.len() as u32);
                triples.push((x, beta, y));
                grading.push(a.bigrading(x) + bs.bigrading(beta) + a.bigrading(y));
                labels.push(format!("({}|{}|{})", a.label(x), bs.short_label(beta), a.label(y)));
                length.push(bs.elem(beta).len);
            }
        }
    }
    let images = triples
        .iter()
        .map(|&(x, beta, y)| {
            let mut out = Vec::new();
            for s in bs.top_splits(beta) {
                if let Some(x2) = a.mul(x, a.arrow_element(s.partner)) {
                    out.push(index[&(x2, s.rest, y)]);
                }
            }
            for s in bs.bottom_splits(beta) {
                if let Some(y2) = a.mul(a.arrow_element(s.partner), y) {
                    out.push(index[&(x, s.rest, y2)]);
                }
            }
            out
        })
        .collect();
    KoszulResolution {
        complex: ChainComplex::from_images(grading, images),
        labels,
        length,
    }
}

impl KoszulResolution {
    /// Returns the homology ranks if they agree with the bigraded dimensions
    /// of `A_n`, which is what the augmentation onto `A_n` requires.
    pub fn check_augmentation(&self, ring: &KoszulPair) -> Result<Option<RankTable>, HochschildError> {
        let homology = self.complex.homology()?;
        let mut expected = RankTable::new();
        for i in 0..ring.a.dim() {
            *expected.entry(ring.a.bigrading(i)).or_default() += 1;
        }
        Ok((homology == expected).then_some(homology))
    }
}

/// The Hochschild complex `M ⊗_{A^e} (A ⊗ B* ⊗ A)`, with generators
/// `(m|β)` and
/// `d(m|β) = (dm|β) + Σ_top (m·ξ|γ) + Σ_bottom (ξ·m|γ)`.
pub fn hochschild_complex(m: &DgBimodule) -> HochschildComplex {
    let bs = &m.ring().dual;
    let mut index: HashMap<(u32, u32), u32> = HashMap::new();
    let mut pairs = Vec::new();
    let mut grading = Vec::new();
    let mut labels = Vec::new();
    for (g, x) in m.generators().iter().enumerate() {
        for beta in bs.between(x.right, x.left) {
            index.insert((g as u32, beta as u32), pairs.len() as u32);
            pairs.push((g, beta));
            grading.push(x.bigrading + bs.bigrading(beta));
            labels.push(format!("({}|{})", x.name, bs.short_label(beta)));
        }
    }
    let images = pairs
        .iter()
        .map(|&(g, beta)| {
            let mut out: Vec<u32> = m.differential(g).iter().map(|&g2| index[&(g2, beta as u32)]).collect();
            for s in bs.top_splits(beta) {
                out.extend(
                    m.arrow_right(g, s.partner)
                        .iter()
                        .map(|&g2| index[&(g2, s.rest as u32)]),
                );
            }
            for s in bs.bottom_splits(beta) {
                out.extend(m.arrow_left(s.partner, g).iter().map(|&g2| index[&(g2, s.rest as u32)]));
            }
            out
        })
        .collect();
    HochschildComplex {
        complex: ChainComplex::from_images(grading, images),
        labels,
    }
}

pub fn hochschild_homology(m: &DgBimodule) -> Result<RankTable, HochschildError> {
    hochschild_complex(m).homology()
}

/// The Hochschild complex of `M ⊗^L M`, generators `(m1|β1|m2|β2)`, with
/// `τ(m1|β1|m2|β2) = (m2|β2|m1|β1)`.
pub fn doubled_complex(m: &DgBimodule) -> DoubledComplex {
    let bs = &m.ring().dual;
    let gens = m.generators();
    let mut index: HashMap<(u32, u32, u32, u32), u32> = HashMap::new();
    let mut quads = Vec::new();
    let mut grading = Vec::new();
    let mut labels = Vec::new();
    for (g1, x1) in gens.iter().enumerate() {
        for (g2, x2) in gens.iter().enumerate() {
            for b1 in bs.between(x1.right, x2.left) {
                for b2 in bs.between(x2.right, x1.left) {
                    let key = (g1 as u32, b1 as u32, g2 as u32, b2 as u32);
                    index.insert(key, quads.len() as u32);
                    quads.push(key);
                    grading.push(x1.bigrading + bs.bigrading(b1) + x2.bigrading + bs.bigrading(b2));
                    labels.push(format!(
                        "({}|{}|{}|{})",
                        x1.name,
                        bs.short_label(b1),
                        x2.name,
                        bs.short_label(b2)
                    ));
                }
            }
        }
    }
    let images = quads
        .iter()
        .map(|&(g1, b1, g2, b2)| {
            let mut out = Vec::new();
            out.extend(m.differential(g1 as usize).iter().map(|&h| index[&(h, b1, g2, b2)]));
            out.extend(m.differential(g2 as usize).iter().map(|&h| index[&(g1, b1, h, b2)]));
            for s in bs.top_splits(b1 as usize) {
                out.extend(
                    m.arrow_right(g1 as usize, s.partner)
                        .iter()
                        .map(|&h| index[&(h, s.rest as u32, g2, b2)]),
                );
            }
            for s in bs.bottom_splits(b1 as usize) {
                out.extend(
                    m.arrow_left(s.partner, g2 as usize)
                        .iter()
                        .map(|&h| index[&(g1, s.rest as u32, h, b2)]),
                );
            }
            for s in bs.top_splits(b2 as usize) {
                out.extend(
                    m.arrow_right(g2 as usize, s.partner)
                        .iter()
                        .map(|&h| index[&(g1, b1, h, s.rest as u32)]),
                );
            }
            for s in bs.bottom_splits(b2 as usize) {
                out.extend(
                    m.arrow_left(s.partner, g1 as usize)
                        .iter()
                        .map(|&h| index[&(h, b1, g2, s.rest as u32)]),
                );
            }
            out
        })
        .collect();
    let tau = quads.iter().map(|&(g1, b1, g2, b2)| index[&(g2, b2, g1, b1)]).collect();
    DoubledComplex {
        complex: ChainComplex::from_images(grading, images),
        labels,
        tau,
    }
}
