use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use f2linalg::vec::{normalize, xor};
use quiver::KoszulPair;

use crate::braid::BraidWord;
use crate::elementary::{elementary, identity};
use crate::module::{DgBimodule, Generator};
use crate::BimoduleError;

fn same_ring(m: &DgBimodule, n: &DgBimodule) -> Result<(), BimoduleError> {
    if !Arc::ptr_eq(&m.ring, &n.ring) && m.n() != n.n() {
        return Err(BimoduleError::AlgebraMismatch(m.n(), n.n()));
    }
    Ok(())
}

/// How far `m` sits inside `M·rad(A)`: 0 if `m` is not a right multiple of
/// an arrow, otherwise one more than the deepest generator it comes from.
fn right_depth(m: &DgBimodule) -> Vec<usize> {
    let mut depth = vec![0usize; m.len()];
    loop {
        let mut changed = false;
        for table in &m.right {
            for (g, image) in table.iter().enumerate() {
                for &t in image {
                    if depth[t as usize] < depth[g] + 1 {
                        depth[t as usize] = depth[g] + 1;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return depth;
        }
    }
}

/// Row-reduced relation space with one pivot column per row.
struct Quotient {
    rows: HashMap<u32, Vec<u32>>,
}

impl Quotient {
    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        for &x in v {
            if let Some(row) = self.rows.get(&x) {
                out = xor(&out, row);
            }
        }
        out
    }
}

/// The underived tensor product `M ⊗_A N`: the quotient of `M ⊗_K N` by
/// `m·a ⊗ k ~ m ⊗ a·k`.
///
/// The quotient basis keeps tensors whose left factor is as far from
/// `M·rad(A)` as possible, so algebra elements are pushed into the right
/// factor. For `M = A` this gives `e_v ⊗ k`.
pub fn tensor(m: &DgBimodule, n: &DgBimodule) -> Result<DgBimodule, BimoduleError> {
    same_ring(m, n)?;
    let ring = m.ring.clone();
    let a = &ring.a;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize), u32> = HashMap::new();
    for i in 0..m.len() {
        for j in 0..n.len() {
            if m.gens[i].right == n.gens[j].left {
                index.insert((i, j), pairs.len() as u32);
                pairs.push((i, j));
            }
        }
    }
    let depth = right_depth(m);
    let weight = |t: u32| (depth[pairs[t as usize].0], t);
    let mut q = Quotient { rows: HashMap::new() };
    for (k, arrow) in a.quiver().arrows.iter().enumerate() {
        for i in (0..m.len()).filter(|&i| m.gens[i].right == arrow.head) {
            for j in (0..n.len()).filter(|&j| n.gens[j].left == arrow.tail) {
                let mut rel: Vec<u32> = m.right[k][i].iter().map(|&i2| index[&(i2 as usize, j)]).collect();
                rel.extend(n.left[k][j].iter().map(|&j2| index[&(i, j2 as usize)]));
                let rel = q.reduce(&normalize(rel));
                let Some(&pivot) = rel.iter().max_by_key(|&&t| weight(t)) else {
                    continue;
                };
                for row in q.rows.values_mut() {
                    if row.binary_search(&pivot).is_ok() {
                        *row = xor(row, &rel);
                    }
                }
                q.rows.insert(pivot, rel);
            }
        }
    }
    let keep: Vec<u32> = (0..pairs.len() as u32).filter(|t| !q.rows.contains_key(t)).collect();
    let mut local = vec![u32::MAX; pairs.len()];
    for (pos, &t) in keep.iter().enumerate() {
        local[t as usize] = pos as u32;
    }
    let project = |v: Vec<u32>| -> Vec<u32> {
        let mut out: Vec<u32> = q.reduce(&normalize(v)).iter().map(|&t| local[t as usize]).collect();
        out.sort_unstable();
        out
    };
    let gens: Vec<Generator> = keep
        .iter()
        .map(|&t| {
            let (i, j) = pairs[t as usize];
            let (x, y) = (&m.gens[i], &n.gens[j]);
            Generator {
                left: x.left,
                right: y.right,
                bigrading: x.bigrading + y.bigrading,
                name: format!("{}⊗{}", x.name, y.name),
            }
        })
        .collect();
    let arrows = a.arrow_count();
    let mut left = vec![Vec::with_capacity(keep.len()); arrows];
    let mut right = vec![Vec::with_capacity(keep.len()); arrows];
    let mut d = Vec::with_capacity(keep.len());
    for &t in &keep {
        let (i, j) = pairs[t as usize];
        for k in 0..arrows {
            left[k].push(project(
                m.left[k][i].iter().map(|&i2| index[&(i2 as usize, j)]).collect(),
            ));
            right[k].push(project(
                n.right[k][j].iter().map(|&j2| index[&(i, j2 as usize)]).collect(),
            ));
        }
        let mut dv: Vec<u32> = m.d[i].iter().map(|&i2| index[&(i2 as usize, j)]).collect();
        dv.extend(n.d[j].iter().map(|&j2| index[&(i, j2 as usize)]));
        d.push(project(dv));
    }
    Ok(DgBimodule::from_parts_unchecked(ring, gens, left, right, d))
}

/// The derived tensor product `M ⊗_K B* ⊗_K N`, which resolves the middle
/// `A_n` by its Koszul resolution.
///
/// `d(m|β|k) = dm|β|k + m|β|dk + Σ m·ξ|γ|k + Σ m|γ|ξ·k`, the first sum over
/// top splits of `β` and the second over bottom splits.
pub fn derived_tensor(m: &DgBimodule, n: &DgBimodule) -> Result<DgBimodule, BimoduleError> {
    same_ring(m, n)?;
    let ring = m.ring.clone();
    let (a, bs) = (&ring.a, &ring.dual);
    let mut index: HashMap<(u32, u32, u32), u32> = HashMap::new();
    let mut triples: Vec<(u32, u32, u32)> = Vec::new();
    let mut gens = Vec::new();
    let mut n_by_left: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, g) in n.gens.iter().enumerate() {
        n_by_left.entry(g.left).or_default().push(j);
    }
    for (i, x) in m.gens.iter().enumerate() {
        for beta in (0..bs.dim()).filter(|&b| bs.left_vertex(b) == x.right) {
            for &j in n_by_left.get(&bs.right_vertex(beta)).into_iter().flatten() {
                let y = &n.gens[j];
                let key = (i as u32, beta as u32, j as u32);
                index.insert(key, triples.len() as u32);
                triples.push(key);
                gens.push(Generator {
                    left: x.left,
                    right: y.right,
                    bigrading: x.bigrading + bs.bigrading(beta) + y.bigrading,
                    name: format!("{}|{}|{}", x.name, bs.short_label(beta), y.name),
                });
            }
        }
    }
    let arrows = a.arrow_count();
    let mut left = vec![vec![Vec::new(); gens.len()]; arrows];
    let mut right = vec![vec![Vec::new(); gens.len()]; arrows];
    let mut d = vec![Vec::new(); gens.len()];
    for (g, &(i, beta, j)) in triples.iter().enumerate() {
        for k in 0..arrows {
            left[k][g] = m.left[k][i as usize].iter().map(|&i2| index[&(i2, beta, j)]).collect();
            right[k][g] = n.right[k][j as usize].iter().map(|&j2| index[&(i, beta, j2)]).collect();
        }
        let out = &mut d[g];
        out.extend(m.d[i as usize].iter().map(|&i2| index[&(i2, beta, j)]));
        out.extend(n.d[j as usize].iter().map(|&j2| index[&(i, beta, j2)]));
        for s in bs.top_splits(beta as usize) {
            let gamma = s.rest as u32;
            out.extend(m.right[s.partner][i as usize].iter().map(|&i2| index[&(i2, gamma, j)]));
        }
        for s in bs.bottom_splits(beta as usize) {
            let gamma = s.rest as u32;
            out.extend(n.left[s.partner][j as usize].iter().map(|&j2| index[&(i, gamma, j2)]));
        }
    }
    Ok(DgBimodule::from_parts_unchecked(ring, gens, left, right, d))
}

/// `M_w = M_{w_1} ⊗ ... ⊗ M_{w_k}` with derived tensor products, or `A_n`
/// for the empty word.
pub fn braid_bimodule(ring: &Arc<KoszulPair>, w: &BraidWord) -> Result<DgBimodule, BimoduleError> {
    if w.n() != ring.n() {
        return Err(BimoduleError::AlgebraMismatch(ring.n(), w.n()));
    }
    let mut letters = w.letters().iter();
    let Some(&first) = letters.next() else {
        return Ok(identity(ring));
    };
    let mut acc = elementary(ring, first)?;
    for &l in letters {
        acc = derived_tensor(&acc, &elementary(ring, l)?)?;
    }
    Ok(acc)
}
