use std::collections::BTreeSet;

use crate::complex::{Bigrading, ChainComplex};
use crate::matrix::SparseMatF2;
use crate::F2Error;

/// Mutable workspace for Gaussian cancellation.
///
/// Keeps both outgoing and incoming adjacency so that a cancellation costs
/// time proportional to the number of edges it touches. Self-loops are
/// allowed. They appear in filtered complexes, where an entry `g -> g`
/// stands for a map between different shifted copies of `g`.
#[derive(Debug, Clone)]
pub struct Reducer {
    ids: Vec<usize>,
    grading: Vec<Bigrading>,
    out: Vec<BTreeSet<u32>>,
    inc: Vec<BTreeSet<u32>>,
    alive: Vec<bool>,
}

impl Reducer {
    pub fn from_complex(c: &ChainComplex) -> Self {
        let images = (0..c.len()).map(|g| c.image(g).to_vec()).collect();
        Self::from_images(c.ids().to_vec(), c.grading().to_vec(), images)
    }

    /// `images[g]` is the (GF(2)-normalized) differential of `g`.
    pub fn from_images(ids: Vec<usize>, grading: Vec<Bigrading>, images: Vec<Vec<u32>>) -> Self {
        let n = grading.len();
        let mut out = vec![BTreeSet::new(); n];
        let mut inc = vec![BTreeSet::new(); n];
        for (g, image) in images.into_iter().enumerate() {
            for t in image {
                if !out[g].insert(t) {
                    out[g].remove(&t);
                }
            }
            for &t in &out[g] {
                inc[t as usize].insert(g as u32);
            }
        }
        Self {
            ids,
            grading,
            out,
            inc,
            alive: vec![true; n],
        }
    }

    pub fn len(&self) -> usize {
        self.grading.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grading.is_empty()
    }

    pub fn is_alive(&self, g: usize) -> bool {
        self.alive[g]
    }

    pub fn grading(&self, g: usize) -> Bigrading {
        self.grading[g]
    }

    pub fn id(&self, g: usize) -> usize {
        self.ids[g]
    }

    pub fn out(&self, g: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[g].iter().map(|&t| t as usize)
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.out[from].contains(&(to as u32))
    }

    pub fn alive_generators(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&g| self.alive[g])
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BTreeSet::len).sum()
    }

    fn toggle(&mut self, x: usize, y: usize) {
        if self.out[x].remove(&(y as u32)) {
            self.inc[y].remove(&(x as u32));
        } else {
            self.out[x].insert(y as u32);
            self.inc[y].insert(x as u32);
        }
    }

    fn detach(&mut self, g: usize) {
        for t in std::mem::take(&mut self.out[g]) {
            self.inc[t as usize].remove(&(g as u32));
        }
        for s in std::mem::take(&mut self.inc[g]) {
            self.out[s as usize].remove(&(g as u32));
        }
        self.alive[g] = false;
    }

    /// Cancels the unit entry `b -> a`, returning the generators whose
    /// differential changed.
    ///
    /// With `d(b) = a + r` and `d(x) = λ·a + s`, every remaining `x` gets
    /// `d'(x) = s + λ·r`, where entries into `a` or `b` are discarded.
    pub fn cancel(&mut self, b: usize, a: usize) -> Result<Vec<usize>, F2Error> {
        let n = self.len();
        for g in [a, b] {
            if g >= n || !self.alive[g] {
                return Err(F2Error::NoSuchGenerator(g));
            }
        }
        if a == b || !self.out[b].contains(&(a as u32)) {
            return Err(F2Error::InvalidCancellation { b, a });
        }
        let skip = |t: &u32| *t as usize != a && *t as usize != b;
        let sources: Vec<usize> = self.inc[a].iter().filter(|t| skip(t)).map(|&t| t as usize).collect();
        let targets: Vec<usize> = self.out[b].iter().filter(|t| skip(t)).map(|&t| t as usize).collect();
        self.detach(a);
        self.detach(b);
        for &x in &sources {
            for &y in &targets {
                self.toggle(x, y);
            }
        }
        Ok(sources)
    }

    /// Cancels every entry accepted by `allow`, always taking the pending
    /// source with the smallest priority and, within it, the smallest target.
    /// Returns the number of cancelled pairs.
    pub fn reduce_where<F>(&mut self, priority: &[usize], mut allow: F) -> usize
    where
        F: FnMut(&Reducer, usize, usize) -> bool,
    {
        assert_eq!(priority.len(), self.len());
        let mut pending: BTreeSet<(usize, usize)> = self
            .alive_generators()
            .filter(|&g| !self.out[g].is_empty())
            .map(|g| (priority[g], g))
            .collect();
        let mut count = 0;
        while let Some((_, b)) = pending.pop_first() {
            if !self.alive[b] {
                continue;
            }
            let pivot = self.out[b]
                .iter()
                .map(|&t| t as usize)
                .filter(|&t| t != b && allow(self, b, t))
                .min_by_key(|&t| (priority[t], t));
            let Some(a) = pivot else { continue };
            for x in self.cancel(b, a).expect("pivot is a live unit entry") {
                pending.insert((priority[x], x));
            }
            count += 1;
        }
        count
    }

    /// Full cancellation, lowest id first.
    pub fn reduce_all(&mut self) -> usize {
        let priority: Vec<usize> = (0..self.len()).collect();
        self.reduce_where(&priority, |_, _, _| true)
    }

    /// Full cancellation in the order given by `priority`.
    pub fn reduce_with_priority(&mut self, priority: &[usize]) -> usize {
        self.reduce_where(priority, |_, _, _| true)
    }

    /// Compacts the surviving generators into a complex.
    pub fn into_complex(self) -> ChainComplex {
        let keep: Vec<usize> = self.alive_generators().collect();
        let mut local = vec![u32::MAX; self.len()];
        for (i, &g) in keep.iter().enumerate() {
            local[g] = i as u32;
        }
        let rows = keep
            .iter()
            .map(|&g| self.out[g].iter().map(|&t| local[t as usize]).collect())
            .collect();
        let d = SparseMatF2::from_rows(keep.len(), rows).expect("local index");
        ChainComplex::new_unchecked(
            keep.iter().map(|&g| self.ids[g]).collect(),
            keep.iter().map(|&g| self.grading[g]).collect(),
            d,
        )
    }
}
