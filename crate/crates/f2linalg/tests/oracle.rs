//! Cross-checks of the sparse routines against a plain dense elimination.

use f2linalg::{Bigrading, ChainComplex, Reducer, SparseMatF2};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Textbook row reduction on a matrix of booleans.
fn dense_rank(rows: usize, cols: usize, entries: &[(usize, usize)]) -> usize {
    let mut m = vec![vec![false; cols]; rows];
    for &(r, c) in entries {
        m[r][c] ^= true;
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c]) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c] {
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A random complex `C^0 -> C^1 -> C^2` in one quantum grading, built as
/// `d1 = A`, `d2 = B` with `B*A = 0` enforced by taking `B` from the left
/// kernel of `A`'s image.
fn random_complex(seed: u64, sizes: [usize; 3]) -> ChainComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let [n0, n1, n2] = sizes;
    let a: Vec<Vec<bool>> = (0..n0).map(|_| (0..n1).map(|_| rng.gen_bool(0.4)).collect()).collect();
    // Rows of `a` span im(d1). Pick d2 columns as random vectors orthogonal
    // to every row of `a`, i.e. elements of the annihilator of the image.
    let mut annihilator: Vec<Vec<bool>> = Vec::new();
    for _ in 0..200 {
        let v: Vec<bool> = (0..n1).map(|_| rng.gen_bool(0.5)).collect();
        if a.iter()
            .all(|row| row.iter().zip(&v).filter(|(x, y)| **x && **y).count() % 2 == 0)
        {
            annihilator.push(v);
        }
        if annihilator.len() == n2 {
            break;
        }
    }
    let n2 = annihilator.len();
    let n = n0 + n1 + n2;
    let mut grading = vec![Bigrading::new(0, 0); n0];
    grading.extend(vec![Bigrading::new(1, 0); n1]);
    grading.extend(vec![Bigrading::new(2, 0); n2]);
    let mut entries = Vec::new();
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x {
                entries.push((i, n0 + j));
            }
        }
    }
    for (k, col) in annihilator.iter().enumerate() {
        for (j, &x) in col.iter().enumerate() {
            if x {
                entries.push((n0 + j, n0 + n1 + k));
            }
        }
    }
    ChainComplex::new(grading, SparseMatF2::from_entries(n, n, entries).unwrap()).unwrap()
}

fn dense_homology(c: &ChainComplex) -> Vec<usize> {
    let sizes: Vec<usize> = (0..3)
        .map(|h| c.grading().iter().filter(|b| b.h == h).count())
        .collect();
    let offset = [0, sizes[0], sizes[0] + sizes[1]];
    let block = |h: usize| -> usize {
        if h >= 2 {
            return 0;
        }
        let entries: Vec<(usize, usize)> = c
            .differential()
            .entries()
            .filter(|&(r, _)| r >= offset[h] && r < offset[h] + sizes[h])
            .map(|(r, t)| (r - offset[h], t - offset[h + 1]))
            .collect();
        dense_rank(sizes[h], sizes[h + 1], &entries)
    };
    let r0 = block(0);
    let r1 = block(1);
    vec![sizes[0] - r0, sizes[1] - r1 - r0, sizes[2] - r1]
}

#[test]
fn random_8x8_rank_matches_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let entries: Vec<(usize, usize)> = (0..8)
            .flat_map(|r| (0..8).map(move |c| (r, c)))
            .filter(|_| rng.gen_bool(0.3))
            .collect();
        let m = SparseMatF2::from_entries(8, 8, entries.iter().copied()).unwrap();
        assert_eq!(m.rank(), dense_rank(8, 8, &entries));
        assert_eq!(m.transpose().rank(), m.rank());
    }
}

#[test]
fn random_20_generator_homology_matches_dense() {
    for seed in 0..50 {
        let c = random_complex(seed, [6, 8, 6]);
        let expected = dense_homology(&c);
        let got = c.homology().unwrap();
        for (h, &e) in expected.iter().enumerate() {
            let g = got.get(&Bigrading::new(h as i32, 0)).copied().unwrap_or(0);
            assert_eq!(g, e, "seed {seed}, degree {h}");
        }
    }
}

#[test]
fn cancellation_order_does_not_change_homology() {
    for seed in 0..30 {
        let c = random_complex(100 + seed, [7, 9, 5]);
        let expected = c.homology().unwrap();
        let full = c.reduce();
        assert!(full.differential().is_zero());
        assert_eq!(full.generator_counts(), expected);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..3 {
            let mut priority: Vec<usize> = (0..c.len()).collect();
            priority.shuffle(&mut rng);
            let mut r = Reducer::from_complex(&c);
            r.reduce_with_priority(&priority);
            let reduced = r.into_complex();
            assert!(reduced.differential().is_zero());
            assert_eq!(reduced.generator_counts(), expected);
        }
    }
}

proptest! {
    #[test]
    fn any_legal_cancellation_preserves_homology(seed in 0u64..10_000, pick in 0usize..1000) {
        let c = random_complex(seed, [5, 7, 4]);
        let arrows: Vec<(usize, usize)> = c.differential().entries().collect();
        prop_assume!(!arrows.is_empty());
        let (b, a) = arrows[pick % arrows.len()];
        let before = c.homology().unwrap();
        let after = c.cancel_pair(b, a).unwrap();
        prop_assert_eq!(after.homology().unwrap(), before);
        prop_assert!(after.ids().iter().all(|&i| i != a && i != b));
    }

    #[test]
    fn rank_is_bounded_by_shape(rows in 1usize..30, cols in 1usize..30, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries: Vec<(usize, usize)> = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .filter(|_| rng.gen_bool(0.2))
            .collect();
        let m = SparseMatF2::from_entries(rows, cols, entries.iter().copied()).unwrap();
        let r = m.rank();
        prop_assert!(r <= rows.min(cols));
        prop_assert_eq!(r, dense_rank(rows, cols, &entries));
    }
}
