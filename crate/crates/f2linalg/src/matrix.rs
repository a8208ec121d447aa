use std::collections::HashMap;

use crate::vec::{normalize, xor};
use crate::F2Error;

/// A matrix over GF(2) stored as one sorted column list per row.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatF2 {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u32>>,
}

/// Above this many cells the rank computation stays sparse instead of
/// packing rows into bitsets.
const DENSE_CELL_LIMIT: usize = 1 << 24;

impl SparseMatF2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n as u32).map(|i| vec![i]).collect(),
        }
    }

    /// Builds a matrix from `(row, col)` pairs. Repeated pairs add up mod 2.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, F2Error> {
        let mut data = vec![Vec::new(); rows];
        for (r, c) in entries {
            if r >= rows || c >= cols {
                return Err(F2Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            data[r].push(c as u32);
        }
        let data = data.into_iter().map(normalize).collect();
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from already-sorted rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<u32>>) -> Result<Self, F2Error> {
        for (r, row) in rows.iter().enumerate() {
            if let Some(&c) = row.iter().max() {
                if c as usize >= cols {
                    return Err(F2Error::IndexOutOfRange {
                        row: r,
                        col: c as usize,
                        rows: rows.len(),
                        cols,
                    });
                }
            }
        }
        let data = rows.into_iter().map(normalize).collect::<Vec<_>>();
        Ok(Self {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].binary_search(&(c as u32)).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&c| (r, c as usize)))
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, c) in self.entries() {
            data[c].push(r as u32);
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = Vec::new();
                for &k in row {
                    acc.extend_from_slice(&other.data[k as usize]);
                }
                normalize(acc)
            })
            .collect();
        Self {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows.saturating_mul(self.cols) <= DENSE_CELL_LIMIT && self.nnz() * 16 > self.rows {
            self.rank_bitset()
        } else {
            self.rank_sparse()
        }
    }

    /// A set of rows whose sum is `target`, if one exists (`target` must be
    /// sorted).
    pub fn solve_rows(&self, target: &[u32]) -> Option<Vec<u32>> {
        let mut pivots: HashMap<u32, (Vec<u32>, Vec<u32>)> = HashMap::new();
        for (r, row) in self.data.iter().enumerate() {
            let (mut v, mut combo) = (row.clone(), vec![r as u32]);
            while let Some(&lead) = v.first() {
                match pivots.get(&lead) {
                    Some((p, c)) => {
                        v = xor(&v, p);
                        combo = xor(&combo, c);
                    }
                    None => {
                        pivots.insert(lead, (v, combo));
                        break;
                    }
                }
            }
        }
        let (mut v, mut combo) = (target.to_vec(), Vec::new());
        while let Some(&lead) = v.first() {
            let (p, c) = pivots.get(&lead)?;
            v = xor(&v, p);
            combo = xor(&combo, c);
        }
        Some(combo)
    }

    fn rank_sparse(&self) -> usize {
        let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
        for row in &self.data {
            let mut v = row.clone();
            while let Some(&lead) = v.first() {
                match pivots.get(&lead) {
                    Some(p) => v = xor(&v, p),
                    None => {
                        pivots.insert(lead, v);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }

    fn rank_bitset(&self) -> usize {
        let words = self.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = self
            .data
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let mut bits = vec![0u64; words];
                for &c in r {
                    bits[c as usize / 64] |= 1 << (c % 64);
                }
                bits
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[w] & bit != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot).skip(w) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }
}
