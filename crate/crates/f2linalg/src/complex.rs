use std::collections::BTreeMap;
use std::fmt;

use crate::matrix::SparseMatF2;
use crate::reducer::Reducer;
use crate::vec::normalize;
use crate::F2Error;

/// (homological, quantum) grading. The differential has bigrading (+1, 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bigrading {
    pub h: i32,
    pub q: i32,
}

impl Bigrading {
    pub const ZERO: Bigrading = Bigrading { h: 0, q: 0 };

    pub const fn new(h: i32, q: i32) -> Self {
        Self { h, q }
    }

    pub const fn shifted(self, dh: i32, dq: i32) -> Self {
        Self {
            h: self.h + dh,
            q: self.q + dq,
        }
    }
}

impl std::ops::Add for Bigrading {
    type Output = Bigrading;
    fn add(self, o: Bigrading) -> Bigrading {
        Bigrading::new(self.h + o.h, self.q + o.q)
    }
}

impl std::ops::Sub for Bigrading {
    type Output = Bigrading;
    fn sub(self, o: Bigrading) -> Bigrading {
        Bigrading::new(self.h - o.h, self.q - o.q)
    }
}

impl std::ops::Neg for Bigrading {
    type Output = Bigrading;
    fn neg(self) -> Bigrading {
        Bigrading::new(-self.h, -self.q)
    }
}

impl fmt::Display for Bigrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h, self.q)
    }
}

/// Ranks indexed by bigrading; zero ranks are never stored.
pub type RankTable = BTreeMap<Bigrading, usize>;

/// A finite bigraded chain complex over GF(2).
///
/// Row `g` of the differential lists the generators appearing in `d(g)`.
/// Each generator also carries a stable external id, which survives
/// cancellation so that reduced complexes can be traced back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ids: Vec<usize>,
    grading: Vec<Bigrading>,
    d: SparseMatF2,
}

impl ChainComplex {
    /// Checks that `d` has bigrading (+1, 0) and squares to zero.
    pub fn new(grading: Vec<Bigrading>, d: SparseMatF2) -> Result<Self, F2Error> {
        let ids = (0..grading.len()).collect();
        Self::with_ids(ids, grading, d)
    }

    pub fn with_ids(ids: Vec<usize>, grading: Vec<Bigrading>, d: SparseMatF2) -> Result<Self, F2Error> {
        assert_eq!(ids.len(), grading.len());
        let c = Self::new_unchecked(ids, grading, d);
        c.validate()?;
        Ok(c)
    }

    /// Skips validation. Callers that build large complexes whose shape is
    /// guaranteed by construction use this and validate in tests.
    pub fn new_unchecked(ids: Vec<usize>, grading: Vec<Bigrading>, d: SparseMatF2) -> Self {
        assert_eq!(d.rows(), grading.len());
        assert_eq!(d.cols(), grading.len());
        Self { ids, grading, d }
    }

    /// Builds a complex from per-generator image lists, without validation.
    pub fn from_images(grading: Vec<Bigrading>, images: Vec<Vec<u32>>) -> Self {
        let n = grading.len();
        let d = SparseMatF2::from_rows(n, images).expect("image index out of range");
        Self::new_unchecked((0..n).collect(), grading, d)
    }

    pub fn validate(&self) -> Result<(), F2Error> {
        for g in 0..self.len() {
            for &t in self.d.row(g) {
                let dh = self.grading[t as usize] - self.grading[g];
                if dh != Bigrading::new(1, 0) {
                    return Err(F2Error::BadDegree {
                        from: g,
                        to: t as usize,
                        dh: (dh.h, dh.q),
                    });
                }
            }
        }
        for g in 0..self.len() {
            let mut acc = Vec::new();
            for &t in self.d.row(g) {
                acc.extend_from_slice(self.d.row(t as usize));
            }
            if !normalize(acc).is_empty() {
                return Err(F2Error::NotSquareZero(g));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.grading.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grading.is_empty()
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn grading(&self) -> &[Bigrading] {
        &self.grading
    }

    pub fn differential(&self) -> &SparseMatF2 {
        &self.d
    }

    pub fn image(&self, g: usize) -> &[u32] {
        self.d.row(g)
    }

    /// Number of generators in each bigrading.
    pub fn generator_counts(&self) -> RankTable {
        let mut out = RankTable::new();
        for &b in &self.grading {
            *out.entry(b).or_default() += 1;
        }
        out
    }

    /// The subcomplex spanned by generators of one quantum grading.
    pub fn quantum_slice(&self, q: i32) -> ChainComplex {
        let keep: Vec<usize> = (0..self.len()).filter(|&g| self.grading[g].q == q).collect();
        self.restrict(&keep)
    }

    /// Restriction to a set of generators closed under the differential.
    fn restrict(&self, keep: &[usize]) -> ChainComplex {
        let mut local = vec![u32::MAX; self.len()];
        for (i, &g) in keep.iter().enumerate() {
            local[g] = i as u32;
        }
        let images = keep
            .iter()
            .map(|&g| {
                self.d
                    .row(g)
                    .iter()
                    .map(|&t| {
                        let l = local[t as usize];
                        assert!(l != u32::MAX, "restriction is not a subcomplex");
                        l
                    })
                    .collect()
            })
            .collect();
        let d = SparseMatF2::from_rows(keep.len(), images).expect("local index");
        ChainComplex::new_unchecked(
            keep.iter().map(|&g| self.ids[g]).collect(),
            keep.iter().map(|&g| self.grading[g]).collect(),
            d,
        )
    }

    /// Homology ranks from the ranks of the differential's bigraded blocks.
    pub fn homology(&self) -> Result<RankTable, F2Error> {
        self.validate()?;
        Ok(self.homology_unchecked())
    }

    /// As [`ChainComplex::homology`], trusting that the complex is valid.
    pub fn homology_unchecked(&self) -> RankTable {
        let mut blocks: BTreeMap<Bigrading, Vec<usize>> = BTreeMap::new();
        for (g, &b) in self.grading.iter().enumerate() {
            blocks.entry(b).or_default().push(g);
        }
        let mut local = vec![0u32; self.len()];
        for members in blocks.values() {
            for (i, &g) in members.iter().enumerate() {
                local[g] = i as u32;
            }
        }
        let mut ranks: BTreeMap<Bigrading, usize> = BTreeMap::new();
        for (&b, members) in &blocks {
            let target = b.shifted(1, 0);
            let Some(tmembers) = blocks.get(&target) else {
                continue;
            };
            let rows = members
                .iter()
                .map(|&g| self.d.row(g).iter().map(|&t| local[t as usize]).collect())
                .collect();
            let m = SparseMatF2::from_rows(tmembers.len(), rows).expect("block index");
            ranks.insert(b, m.rank());
        }
        let mut out = RankTable::new();
        for (&b, members) in &blocks {
            let out_rank = ranks.get(&b).copied().unwrap_or(0);
            let in_rank = ranks.get(&b.shifted(-1, 0)).copied().unwrap_or(0);
            let h = members.len() - out_rank - in_rank;
            if h > 0 {
                out.insert(b, h);
            }
        }
        out
    }

    /// Cancels `b -> a` and returns the complex on the remaining generators.
    pub fn cancel_pair(&self, b: usize, a: usize) -> Result<ChainComplex, F2Error> {
        let mut r = Reducer::from_complex(self);
        r.cancel(b, a)?;
        Ok(r.into_complex())
    }

    /// Cancels until the differential vanishes. Pivots are chosen with the
    /// lowest-id source first and, within it, the lowest-id target.
    pub fn reduce(&self) -> ChainComplex {
        let mut r = Reducer::from_complex(self);
        r.reduce_all();
        r.into_complex()
    }
}
