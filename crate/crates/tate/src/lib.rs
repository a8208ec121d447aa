//! The Tate spectral sequence of a doubled Hochschild complex.
//!
//! Every column of the Tate bicomplex is the Hochschild complex of
//! `N ⊗^L N`, the vertical differential is `∂` and the horizontal one is
//! `1 + τ`. Since the columns are all equal, the bicomplex is stored as a
//! single column in which an entry `g → g'` carries an implicit column
//! shift `h(g) + 1 − h(g')`. Pages come from cancelling entries in order of
//! increasing shift.

mod pages;
mod pi;

pub use pages::{default_max_pages, pages, TatePage, TateSequence};
pub use pi::{pi_formality_replay, shape_label, xy_phenomenon_holds, PiFormalityReport, PiStep, QuadTensor};

use bimodule::{DgBimodule, FreeBimodule};
use f2linalg::{Bigrading, F2Error};
use hochschild::{doubled_complex, free_doubled, DoubledComplex};
use quiver::QuiverError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TateError {
    #[error(transparent)]
    Linear(#[from] F2Error),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("τ is not an involution at generator {0}")]
    NotInvolution(usize),
    #[error("τ does not commute with ∂ at generator {0}")]
    TauDoesNotCommute(usize),
    #[error("spectral sequence has differentials beyond page {max_pages}")]
    NoConvergence { max_pages: usize },
    #[error("page {page} differential does not square to zero")]
    PageNotSquareZero { page: usize },
    #[error("step {step}: ∂ of the representative is not in the image of 1 + τ")]
    NotPiFormal { step: usize },
    #[error("replay did not reach zero within {max_iter} steps")]
    ReplayUnfinished { max_iter: usize },
    #[error("generator {0} is not a ∂-cycle")]
    NotACycle(usize),
}

/// A doubled Hochschild complex with a checked involution.
#[derive(Debug, Clone)]
pub struct TateComplex {
    doubled: DoubledComplex,
}

impl TateComplex {
    /// Checks `τ² = 1`, `τ∂ = ∂τ` and `∂² = 0` before accepting the complex.
    pub fn new(doubled: DoubledComplex) -> Result<Self, TateError> {
        doubled.complex.validate()?;
        let tau = &doubled.tau;
        if tau.len() != doubled.len() {
            return Err(TateError::NotInvolution(tau.len().min(doubled.len())));
        }
        if let Some(g) = (0..tau.len()).find(|&g| tau[tau[g] as usize] as usize != g) {
            return Err(TateError::NotInvolution(g));
        }
        let d = doubled.complex.differential();
        for g in 0..doubled.len() {
            let mut image: Vec<u32> = d.row(g).iter().map(|&t| tau[t as usize]).collect();
            image.sort_unstable();
            if image != d.row(tau[g] as usize) {
                return Err(TateError::TauDoesNotCommute(g));
            }
        }
        Ok(Self { doubled })
    }

    /// The Tate complex of `N ⊗^L N` via the Koszul resolution.
    pub fn from_bimodule(n: &DgBimodule) -> Result<Self, TateError> {
        Self::new(doubled_complex(n))
    }

    /// The Tate complex of `Z ⊗_A Z` for a free model `Z`.
    pub fn from_free(z: &FreeBimodule) -> Result<Self, TateError> {
        Self::new(free_doubled(z))
    }

    pub fn shift(&self, by: Bigrading) -> Self {
        Self {
            doubled: self.doubled.shift(by),
        }
    }

    pub fn doubled(&self) -> &DoubledComplex {
        &self.doubled
    }

    pub fn len(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled.is_empty()
    }

    pub fn tau(&self, g: usize) -> usize {
        self.doubled.tau[g] as usize
    }

    pub fn label(&self, g: usize) -> &str {
        &self.doubled.labels[g]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.doubled.find(label)
    }

    pub fn grading(&self, g: usize) -> Bigrading {
        self.doubled.complex.grading()[g]
    }

    /// `(1 + τ)` applied to a sorted vector.
    pub fn one_plus_tau(&self, v: &[u32]) -> Vec<u32> {
        f2linalg::vec::normalize(v.iter().flat_map(|&g| [g, self.doubled.tau[g as usize]]).collect())
    }

    /// `∂` applied to a sorted vector.
    pub fn boundary(&self, v: &[u32]) -> Vec<u32> {
        let d = self.doubled.complex.differential();
        f2linalg::vec::normalize(v.iter().flat_map(|&g| d.row(g as usize).iter().copied()).collect())
    }

    /// The class of `d²[x]` for a ∂-cycle `x` on which `1 + τ` is a
    /// boundary: solve `∂z = (1 + τ)x` and return `(1 + τ)z`.
    ///
    /// Returns `Ok(None)` if `(1 + τ)x` is not a boundary, meaning `d¹[x]`
    /// is already nonzero.
    pub fn second_differential(&self, x: &[u32]) -> Result<Option<Vec<u32>>, TateError> {
        if let Some(&g) = self.boundary(x).first() {
            return Err(TateError::NotACycle(g as usize));
        }
        let target = self.one_plus_tau(x);
        Ok(self
            .doubled
            .complex
            .differential()
            .solve_rows(&target)
            .map(|z| self.one_plus_tau(&z)))
    }

    /// Whether `v` is a boundary.
    pub fn is_boundary(&self, v: &[u32]) -> bool {
        self.doubled.complex.differential().solve_rows(v).is_some()
    }
}
