//! Free models: bimodules of the form `A ⊗_K Z ⊗_K A` with a twisted
//! differential, written down by its values on the generators `Z`.
//!
//! A term `(α, z', α')` in `δ(z)` means that `d(1⊗z⊗1)` contains
//! `α⊗z'⊗α'`. Free models can be tensored without any quotient and
//! shrunk by cancelling unit terms, which keeps long braid words
//! tractable.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use f2linalg::Bigrading;
use quiver::KoszulPair;

use crate::braid::{BraidWord, Letter};
use crate::elementary::elementary;
use crate::module::DgBimodule;
use crate::BimoduleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGen {
    pub left: usize,
    pub right: usize,
    pub bigrading: Bigrading,
}

/// `a ⊗ z ⊗ b`, ordered by target generator first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub z: u32,
    pub a: u32,
    pub b: u32,
}

#[derive(Debug, Clone)]
pub struct FreeBimodule {
    ring: Arc<KoszulPair>,
    gens: Vec<FreeGen>,
    delta: Vec<Vec<Term>>,
}

fn toggle<T: Ord>(set: &mut BTreeSet<T>, t: T) {
    if !set.remove(&t) {
        set.insert(t);
    }
}

fn normalize_terms(terms: Vec<Term>) -> Vec<Term> {
    let mut set = BTreeSet::new();
    for t in terms {
        toggle(&mut set, t);
    }
    set.into_iter().collect()
}

impl FreeBimodule {
    pub fn from_parts(ring: Arc<KoszulPair>, gens: Vec<FreeGen>, delta: Vec<Vec<Term>>) -> Self {
        let delta = delta.into_iter().map(normalize_terms).collect();
        Self { ring, gens, delta }
    }

    pub fn ring(&self) -> &Arc<KoszulPair> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[FreeGen] {
        &self.gens
    }

    pub fn delta(&self, z: usize) -> &[Term] {
        &self.delta[z]
    }

    pub fn shift(&self, dh: i32, dq: i32) -> Self {
        let mut out = self.clone();
        for g in &mut out.gens {
            g.bigrading = g.bigrading.shifted(dh, dq);
        }
        out
    }

    /// The Koszul resolution `A ⊗_K B* ⊗_K A` of `A_n`.
    pub fn koszul(ring: &Arc<KoszulPair>) -> Self {
        let (a, bs) = (&ring.a, &ring.dual);
        let gens = (0..bs.dim())
            .map(|b| FreeGen {
                left: bs.left_vertex(b),
                right: bs.right_vertex(b),
                bigrading: bs.bigrading(b),
            })
            .collect();
        let delta = (0..bs.dim())
            .map(|b| {
                let (l, r) = (
                    a.idempotent(bs.left_vertex(b)) as u32,
                    a.idempotent(bs.right_vertex(b)) as u32,
                );
                let top = bs.top_splits(b).iter().map(|s| Term {
                    z: s.rest as u32,
                    a: a.arrow_element(s.partner) as u32,
                    b: r,
                });
                let bottom = bs.bottom_splits(b).iter().map(|s| Term {
                    z: s.rest as u32,
                    a: l,
                    b: a.arrow_element(s.partner) as u32,
                });
                top.chain(bottom).collect()
            })
            .collect();
        Self::from_parts(ring.clone(), gens, delta)
    }

    /// The two-sided Koszul resolution `A ⊗ B* ⊗ M ⊗ B* ⊗ A` of `M`, with
    /// generators `(β, m, β')`.
    pub fn resolve(m: &DgBimodule) -> Self {
        let ring = m.ring().clone();
        let (a, bs) = (&ring.a, &ring.dual);
        let mut index: HashMap<(u32, u32, u32), u32> = HashMap::new();
        let mut triples = Vec::new();
        let mut gens = Vec::new();
        for (g, x) in m.generators().iter().enumerate() {
            for beta in (0..bs.dim()).filter(|&b| bs.right_vertex(b) == x.left) {
                for beta2 in (0..bs.dim()).filter(|&b| bs.left_vertex(b) == x.right) {
                    let key = (beta as u32, g as u32, beta2 as u32);
                    index.insert(key, triples.len() as u32);
                    triples.push(key);
                    gens.push(FreeGen {
                        left: bs.left_vertex(beta),
                        right: bs.right_vertex(beta2),
                        bigrading: bs.bigrading(beta) + x.bigrading + bs.bigrading(beta2),
                    });
                }
            }
        }
        let delta = triples
            .iter()
            .zip(&gens)
            .map(|(&(beta, g, beta2), fg)| {
                let el = a.idempotent(fg.left) as u32;
                let er = a.idempotent(fg.right) as u32;
                let unit = |z: u32| Term { z, a: el, b: er };
                let mut out = Vec::new();
                for s in bs.top_splits(beta as usize) {
                    out.push(Term {
                        z: index[&(s.rest as u32, g, beta2)],
                        a: a.arrow_element(s.partner) as u32,
                        b: er,
                    });
                }
                for s in bs.bottom_splits(beta as usize) {
                    for &g2 in m.arrow_left(s.partner, g as usize) {
                        out.push(unit(index[&(s.rest as u32, g2, beta2)]));
                    }
                }
                for &g2 in m.differential(g as usize) {
                    out.push(unit(index[&(beta, g2, beta2)]));
                }
                for s in bs.top_splits(beta2 as usize) {
                    for &g2 in m.arrow_right(g as usize, s.partner) {
                        out.push(unit(index[&(beta, g2, s.rest as u32)]));
                    }
                }
                for s in bs.bottom_splits(beta2 as usize) {
                    out.push(Term {
                        z: index[&(beta, g, s.rest as u32)],
                        a: el,
                        b: a.arrow_element(s.partner) as u32,
                    });
                }
                out
            })
            .collect();
        Self::from_parts(ring, gens, delta)
    }

    /// `d(α⊗z⊗α')` for a term `(α, z, α')`, as a list of terms.
    fn apply_term(&self, t: &Term) -> Vec<Term> {
        let a = &self.ring.a;
        self.delta[t.z as usize]
            .iter()
            .filter_map(|s| {
                let left = a.mul(t.a as usize, s.a as usize)?;
                let right = a.mul(s.b as usize, t.b as usize)?;
                Some(Term {
                    z: s.z,
                    a: left as u32,
                    b: right as u32,
                })
            })
            .collect()
    }

    /// Checks vertex and degree compatibility and `d² = 0`.
    pub fn validate(&self) -> Result<(), BimoduleError> {
        let a = &self.ring.a;
        for (z, terms) in self.delta.iter().enumerate() {
            let g = &self.gens[z];
            for t in terms {
                let h = &self.gens[t.z as usize];
                let (ta, tb) = (t.a as usize, t.b as usize);
                let vertices_ok = a.left_vertex(ta) == g.left
                    && a.right_vertex(ta) == h.left
                    && a.left_vertex(tb) == h.right
                    && a.right_vertex(tb) == g.right;
                let degree_ok = h.bigrading + a.bigrading(ta) + a.bigrading(tb) == g.bigrading.shifted(1, 0);
                if !vertices_ok || !degree_ok {
                    return Err(BimoduleError::BadDifferential(z));
                }
            }
            let square: Vec<Term> = terms.iter().flat_map(|t| self.apply_term(t)).collect();
            if !normalize_terms(square).is_empty() {
                return Err(BimoduleError::NotSquareZero(z));
            }
        }
        Ok(())
    }

    /// Tensor product `Z ⊗_A W` of free models. Generators are `(z, c, y)`
    /// with `c` a basis element of `e_{r(z)} A e_{l(y)}`, and
    /// `δ(z, c, y) = Σ α ⊗ (z', α'c, y) ⊗ 1 + Σ 1 ⊗ (z, cβ, y') ⊗ β'`.
    pub fn tensor(&self, other: &Self) -> Result<Self, BimoduleError> {
        if self.ring.n() != other.ring.n() {
            return Err(BimoduleError::AlgebraMismatch(self.ring.n(), other.ring.n()));
        }
        let a = &self.ring.a;
        let mut index: HashMap<(u32, u32, u32), u32> = HashMap::new();
        let mut triples = Vec::new();
        let mut gens = Vec::new();
        for (z, g) in self.gens.iter().enumerate() {
            for (y, h) in other.gens.iter().enumerate() {
                for c in a.between(g.right, h.left) {
                    let key = (z as u32, c as u32, y as u32);
                    index.insert(key, triples.len() as u32);
                    triples.push(key);
                    gens.push(FreeGen {
                        left: g.left,
                        right: h.right,
                        bigrading: g.bigrading + a.bigrading(c) + h.bigrading,
                    });
                }
            }
        }
        let delta = triples
            .iter()
            .zip(&gens)
            .map(|(&(z, c, y), fg)| {
                let el = a.idempotent(fg.left) as u32;
                let er = a.idempotent(fg.right) as u32;
                let mut out = Vec::new();
                for t in &self.delta[z as usize] {
                    if let Some(c2) = a.mul(t.b as usize, c as usize) {
                        out.push(Term {
                            z: index[&(t.z, c2 as u32, y)],
                            a: t.a,
                            b: er,
                        });
                    }
                }
                for t in &other.delta[y as usize] {
                    if let Some(c2) = a.mul(c as usize, t.a as usize) {
                        out.push(Term {
                            z: index[&(z, c2 as u32, t.z)],
                            a: el,
                            b: t.b,
                        });
                    }
                }
                out
            })
            .collect();
        Ok(Self::from_parts(self.ring.clone(), gens, delta))
    }

    /// Cancels unit terms `1⊗a⊗1 ∈ δ(b)` until none remain.
    ///
    /// Cancelling `b → a` replaces every term `α⊗a⊗α'` in some `δ(x)` by
    /// `Σ αβ⊗y⊗β'α'` over the terms `β⊗y⊗β'` of `δ(b)` with `y ∉ {a, b}`,
    /// then deletes `a` and `b`.
    pub fn reduce(&self) -> Self {
        let a = &self.ring.a;
        let is_unit = |t: &Term| a.is_idempotent(t.a as usize) && a.is_idempotent(t.b as usize);
        let len = self.len();
        let mut delta: Vec<BTreeSet<Term>> = self.delta.iter().map(|v| v.iter().copied().collect()).collect();
        let mut inc: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); len];
        for (x, terms) in delta.iter().enumerate() {
            for t in terms {
                inc[t.z as usize].insert(x as u32);
            }
        }
        let mut alive = vec![true; len];
        let range = |set: &BTreeSet<Term>, z: u32| -> Vec<Term> {
            set.range(Term { z, a: 0, b: 0 }..Term { z: z + 1, a: 0, b: 0 })
                .copied()
                .collect()
        };
        let mut pending: BTreeSet<u32> = (0..len as u32).collect();
        while let Some(b) = pending.pop_first() {
            if !alive[b as usize] {
                continue;
            }
            let Some(target) = delta[b as usize].iter().find(|t| t.z != b && is_unit(t)).map(|t| t.z) else {
                continue;
            };
            let r: Vec<Term> = delta[b as usize]
                .iter()
                .filter(|t| t.z != target && t.z != b)
                .copied()
                .collect();
            let sources: Vec<u32> = inc[target as usize]
                .iter()
                .copied()
                .filter(|&x| x != b && x != target && alive[x as usize])
                .collect();
            for &x in &sources {
                let into_a = range(&delta[x as usize], target);
                if into_a.is_empty() {
                    continue;
                }
                for t in &into_a {
                    delta[x as usize].remove(t);
                    for s in &r {
                        let (Some(l), Some(rr)) =
                            (a.mul(t.a as usize, s.a as usize), a.mul(s.b as usize, t.b as usize))
                        else {
                            continue;
                        };
                        toggle(
                            &mut delta[x as usize],
                            Term {
                                z: s.z,
                                a: l as u32,
                                b: rr as u32,
                            },
                        );
                        inc[s.z as usize].insert(x);
                    }
                }
                pending.insert(x);
            }
            for dead in [target, b] {
                alive[dead as usize] = false;
                for x in std::mem::take(&mut inc[dead as usize]) {
                    for t in range(&delta[x as usize], dead) {
                        delta[x as usize].remove(&t);
                    }
                }
                delta[dead as usize].clear();
            }
        }
        let keep: Vec<usize> = (0..len).filter(|&g| alive[g]).collect();
        let mut local = vec![u32::MAX; len];
        for (i, &g) in keep.iter().enumerate() {
            local[g] = i as u32;
        }
        let gens = keep.iter().map(|&g| self.gens[g]).collect();
        let delta = keep
            .iter()
            .map(|&g| {
                delta[g]
                    .iter()
                    .map(|t| Term {
                        z: local[t.z as usize],
                        ..*t
                    })
                    .collect()
            })
            .collect();
        Self::from_parts(self.ring.clone(), gens, delta)
    }
}

/// Reduced free models of crossing bimodules, built once per letter.
#[derive(Debug)]
pub struct LetterModels {
    ring: Arc<KoszulPair>,
    memo: HashMap<Letter, FreeBimodule>,
}

impl LetterModels {
    pub fn new(ring: Arc<KoszulPair>) -> Self {
        Self {
            ring,
            memo: HashMap::new(),
        }
    }

    pub fn ring(&self) -> &Arc<KoszulPair> {
        &self.ring
    }

    pub fn letter(&mut self, l: Letter) -> Result<&FreeBimodule, BimoduleError> {
        if !self.memo.contains_key(&l) {
            let m = elementary(&self.ring, l)?;
            self.memo.insert(l, FreeBimodule::resolve(&m).reduce());
        }
        Ok(&self.memo[&l])
    }

    /// A reduced free model of `M_w`.
    pub fn word(&mut self, w: &BraidWord) -> Result<FreeBimodule, BimoduleError> {
        if w.n() != self.ring.n() {
            return Err(BimoduleError::AlgebraMismatch(self.ring.n(), w.n()));
        }
        let mut letters = w.letters().iter();
        let Some(&first) = letters.next() else {
            return Ok(FreeBimodule::koszul(&self.ring).reduce());
        };
        let mut acc = self.letter(first)?.clone();
        for &l in letters {
            acc = acc.tensor(self.letter(l)?)?.reduce();
        }
        Ok(acc)
    }
}
