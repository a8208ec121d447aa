//! Hochschild complexes of dg bimodules over `A_n`.
//!
//! The main route resolves `A_n` by its Koszul resolution
//! `A ⊗_K B* ⊗_K A`, so the Hochschild complex of `M` has generators
//! `(m|β)` with `β ∈ B*` and matching idempotents on both sides. The
//! doubled complex of `M ⊗^L M` has generators `(m1|β1|m2|β2)` and carries
//! the swap involution `τ`. A normalized bar complex gives an independent
//! cross-check, and the free-model versions handle long braid words.

mod bar;
mod free;
mod koszul;

pub use bar::{bar_hochschild, BarReport};
pub use free::{free_doubled, free_hochschild};
pub use koszul::{doubled_complex, hochschild_complex, hochschild_homology, koszul_resolution, KoszulResolution};

use f2linalg::{Bigrading, ChainComplex, F2Error, RankTable};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error(transparent)]
    Linear(#[from] F2Error),
    #[error("bar complex truncated at length {cap} but chains of length {needed} exist")]
    TruncationInsufficient { cap: usize, needed: usize },
}

/// A Hochschild chain complex with a readable label per generator.
#[derive(Debug, Clone)]
pub struct HochschildComplex {
    pub complex: ChainComplex,
    pub labels: Vec<String>,
}

impl HochschildComplex {
    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn homology(&self) -> Result<RankTable, HochschildError> {
        Ok(self.complex.homology()?)
    }

    pub fn shift(&self, by: Bigrading) -> Self {
        Self {
            complex: shift_complex(&self.complex, by),
            labels: self.labels.clone(),
        }
    }
}

/// The Hochschild complex of `M ⊗^L M` together with the involution that
/// swaps the two halves.
#[derive(Debug, Clone)]
pub struct DoubledComplex {
    pub complex: ChainComplex,
    pub labels: Vec<String>,
    pub tau: Vec<u32>,
}

impl DoubledComplex {
    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn shift(&self, by: Bigrading) -> Self {
        Self {
            complex: shift_complex(&self.complex, by),
            labels: self.labels.clone(),
            tau: self.tau.clone(),
        }
    }

    pub fn tau_is_involution(&self) -> bool {
        self.tau
            .iter()
            .enumerate()
            .all(|(g, &t)| self.tau[t as usize] as usize == g)
    }

    /// `τ∂ = ∂τ` on every generator.
    pub fn tau_commutes(&self) -> bool {
        let d = self.complex.differential();
        (0..self.len()).all(|g| {
            let mut lhs: Vec<u32> = d.row(g).iter().map(|&t| self.tau[t as usize]).collect();
            lhs.sort_unstable();
            lhs == d.row(self.tau[g] as usize)
        })
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

pub(crate) fn shift_complex(c: &ChainComplex, by: Bigrading) -> ChainComplex {
    ChainComplex::new_unchecked(
        c.ids().to_vec(),
        c.grading().iter().map(|&g| g + by).collect(),
        c.differential().clone(),
    )
}
