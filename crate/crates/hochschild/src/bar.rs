use std::collections::HashMap;

use bimodule::DgBimodule;
use f2linalg::{ChainComplex, RankTable};
use quiver::PathAlgebra;

use crate::{HochschildComplex, HochschildError};

/// Result of the bar-complex computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarReport {
    pub ranks: RankTable,
    /// Longest chain `(m|a_1|...|a_k)` that occurs. Every radical element
    /// of `A_n` strictly lowers the vertex index, so `k ≤ n` always, and the
    /// truncated complex is the full normalized bar complex once the cap is
    /// at least this value.
    pub longest_chain: usize,
    pub generators: usize,
}

/// Radical chains `a_1, ..., a_k` from vertex `from` down to vertex `to`,
/// where `left(a_1) = from`, `right(a_i) = left(a_{i+1})` and
/// `right(a_k) = to`.
fn chains(a: &PathAlgebra, from: usize, to: usize) -> Vec<Vec<u32>> {
    if from == to {
        return vec![Vec::new()];
    }
    if from < to {
        return Vec::new();
    }
    let mut out = Vec::new();
    for x in a
        .radical()
        .filter(|&x| a.left_vertex(x) == from && a.right_vertex(x) >= to)
    {
        for mut rest in chains(a, a.right_vertex(x), to) {
            rest.insert(0, x as u32);
            out.push(rest);
        }
    }
    out
}

/// The normalized bar Hochschild complex of `M`, with chains of length at
/// most `cap` (all chains when `cap` is `None`).
pub fn bar_complex(m: &DgBimodule, cap: Option<usize>) -> Result<(HochschildComplex, usize), HochschildError> {
    let a = m.algebra();
    let mut index: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
    let mut keys: Vec<(u32, Vec<u32>)> = Vec::new();
    let mut grading = Vec::new();
    let mut labels = Vec::new();
    let mut longest = 0;
    let mut cache: HashMap<(usize, usize), Vec<Vec<u32>>> = HashMap::new();
    for (g, x) in m.generators().iter().enumerate() {
        let list = cache
            .entry((x.right, x.left))
            .or_insert_with(|| chains(a, x.right, x.left));
        for chain in list.iter() {
            longest = longest.max(chain.len());
            if cap.is_some_and(|c| chain.len() > c) {
                continue;
            }
            let deg = chain
                .iter()
                .fold(x.bigrading, |acc, &c| acc + a.bigrading(c as usize))
                .shifted(-(chain.len() as i32), 0);
            let mut label = format!("({}", x.name);
            for &c in chain {
                label.push('|');
                label.push_str(a.label(c as usize));
            }
            label.push(')');
            index.insert((g as u32, chain.clone()), keys.len() as u32);
            keys.push((g as u32, chain.clone()));
            grading.push(deg);
            labels.push(label);
        }
    }
    if let Some(c) = cap {
        if longest > c {
            return Err(HochschildError::TruncationInsufficient {
                cap: c,
                needed: longest,
            });
        }
    }
    let images = keys
        .iter()
        .map(|(g, chain)| {
            let g = *g as usize;
            let mut out: Vec<u32> = m.differential(g).iter().map(|&h| index[&(h, chain.clone())]).collect();
            let k = chain.len();
            if k > 0 {
                let tail = chain[1..].to_vec();
                for h in m.act_right(g, chain[0] as usize) {
                    out.push(index[&(h, tail.clone())]);
                }
                for i in 0..k - 1 {
                    if let Some(p) = a.mul(chain[i] as usize, chain[i + 1] as usize) {
                        let mut merged = chain[..i].to_vec();
                        merged.push(p as u32);
                        merged.extend_from_slice(&chain[i + 2..]);
                        out.push(index[&(g as u32, merged)]);
                    }
                }
                let head = chain[..k - 1].to_vec();
                for h in m.act_left(chain[k - 1] as usize, g) {
                    out.push(index[&(h, head.clone())]);
                }
            }
            out
        })
        .collect();
    let complex = HochschildComplex {
        complex: ChainComplex::from_images(grading, images),
        labels,
    };
    Ok((complex, longest))
}

/// Hochschild homology from the normalized bar complex.
///
/// With `cap = Some(c)` the computation fails with
/// [`HochschildError::TruncationInsufficient`] if chains longer than `c`
/// exist, since then the truncation would not be certified.
pub fn bar_hochschild(m: &DgBimodule, cap: Option<usize>) -> Result<BarReport, HochschildError> {
    let (c, longest) = bar_complex(m, cap)?;
    Ok(BarReport {
        ranks: c.homology()?,
        longest_chain: longest,
        generators: c.len(),
    })
}
