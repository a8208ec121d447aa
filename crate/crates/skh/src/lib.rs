//! Sutured annular Khovanov homology of braid closures in the next-to-top
//! winding grading, computed as Hochschild homology of braid bimodules.
//!
//! For an `(n+1)`-strand braid `w`,
//! `SKh(ŵ; n−1) ≅ HH(A_n, M_{m(w)})` shifted by
//! `(−n_−, (n−1) + n_+ − 2n_−)`, where `m` is the mirror and `n_±` count
//! the letters of `w` by sign. The Tate spectral sequence of the doubled
//! complex of `M_{m(w)}` runs from `SKh` of the closure of `w²` to `SKh` of
//! the closure of `w`.

mod poly;
mod report;

pub use poly::LaurentPoly;
pub use report::{DecatReport, QuantumComparison, SpectralReport};

use std::sync::Arc;

use bimodule::{braid_bimodule, BimoduleError, BraidError, BraidWord, FreeBimodule, LetterModels};
use f2linalg::{Bigrading, RankTable};
use hochschild::{free_hochschild, hochschild_homology, HochschildComplex, HochschildError};
use quiver::{KoszulPair, QuiverError};
use tate::{default_max_pages, pages, TateComplex, TateError, TateSequence};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkhError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Tate(#[from] TateError),
    #[error("braid has {got} strands but the engine was built for {expected}")]
    StrandMismatch { expected: usize, got: usize },
    #[error("spectral sequence check failed for {braid}: {what}")]
    SpectralMismatch { braid: String, what: String },
}

/// How the bimodule of a braid word is modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Derived tensor products through the Koszul resolution. Exact name
    /// for every generator, but large for long words.
    Koszul,
    /// Reduced free models, built letter by letter.
    Free,
    /// Koszul for words of length at most one, free otherwise.
    Auto,
}

impl Route {
    /// The concrete route used for `w`.
    pub fn resolve(self, w: &BraidWord) -> Route {
        match self {
            Route::Auto if w.len() <= 1 => Route::Koszul,
            Route::Auto => Route::Free,
            r => r,
        }
    }
}

/// `SKh` of a braid closure in winding grading `n − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkhResult {
    pub braid: BraidWord,
    /// The winding grading, `n − 1` for `n + 1` strands.
    pub winding_label: usize,
    pub ranks: RankTable,
    /// The shift applied to `HH(A_n, M_{m(w)})`.
    pub shift: Bigrading,
}

impl SkhResult {
    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// Poincaré polynomial, e.g. `q^2 + t^1 q^4 + t^2 q^4 + t^2 q^6`.
    pub fn poincare(&self) -> String {
        poincare(&self.ranks)
    }
}

/// Renders a rank table as a Poincaré polynomial in `t` (homological) and
/// `q` (quantum).
pub fn poincare(ranks: &RankTable) -> String {
    if ranks.is_empty() {
        return "0".to_string();
    }
    let terms: Vec<String> = ranks
        .iter()
        .map(|(b, &c)| {
            let mut s = String::new();
            if c != 1 {
                s.push_str(&format!("{c} "));
            }
            if b.h != 0 {
                s.push_str(&format!("t^{} ", b.h));
            }
            s.push_str(&format!("q^{}", b.q));
            s
        })
        .collect();
    terms.join(" + ")
}

/// The shift `(−n_−, (n−1) + n_+ − 2n_−)` of a braid word.
pub fn closure_shift(w: &BraidWord) -> Bigrading {
    let (np, nm) = (w.n_plus() as i32, w.n_minus() as i32);
    Bigrading::new(-nm, w.n() as i32 - 1 + np - 2 * nm)
}

fn shifted(ranks: &RankTable, by: Bigrading) -> RankTable {
    ranks.iter().map(|(&b, &c)| (b + by, c)).collect()
}

/// `q_{L,n−1} = Σ (−1)^h y^q rk SKh^{h,q}`.
pub fn euler_characteristic(s: &SkhResult) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (b, &c) in &s.ranks {
        p.add_term(b.q, if b.h.rem_euclid(2) == 0 { c as i64 } else { -(c as i64) });
    }
    p
}

/// Computation engine for one strand count. Free models of the crossing
/// bimodules are built once and reused across words.
#[derive(Debug)]
pub struct Skh {
    ring: Arc<KoszulPair>,
    models: LetterModels,
}

impl Skh {
    pub fn new(strands: usize) -> Result<Self, SkhError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands).into());
        }
        let ring = Arc::new(KoszulPair::new(strands - 1)?);
        Ok(Self {
            models: LetterModels::new(ring.clone()),
            ring,
        })
    }

    pub fn ring(&self) -> &Arc<KoszulPair> {
        &self.ring
    }

    pub fn strands(&self) -> usize {
        self.ring.n() + 1
    }

    fn check(&self, w: &BraidWord) -> Result<(), SkhError> {
        if w.strands() != self.strands() {
            return Err(SkhError::StrandMismatch {
                expected: self.strands(),
                got: w.strands(),
            });
        }
        Ok(())
    }

    /// Reduced free model of `M_{m(w)}`.
    pub fn free_model(&mut self, w: &BraidWord) -> Result<FreeBimodule, SkhError> {
        self.check(w)?;
        Ok(self.models.word(&w.mirror())?)
    }

    /// Unshifted Hochschild complex of the free model of `M_{m(w)}`.
    pub fn hochschild_complex(&mut self, w: &BraidWord) -> Result<HochschildComplex, SkhError> {
        Ok(free_hochschild(&self.free_model(w)?))
    }

    /// `SKh(ŵ; n−1)` through free models.
    pub fn skh(&mut self, w: &BraidWord) -> Result<SkhResult, SkhError> {
        let hc = self.hochschild_complex(w)?;
        self.skh_from(w, &hc)
    }

    /// `SKh(ŵ; n−1)` from a Hochschild complex of `M_{m(w)}` built
    /// elsewhere, e.g. loaded from a cache.
    pub fn skh_from(&self, w: &BraidWord, hc: &HochschildComplex) -> Result<SkhResult, SkhError> {
        self.check(w)?;
        Ok(self.result(w, &hc.homology()?))
    }

    /// `SKh(ŵ; n−1)` through the Koszul route, with every derived tensor
    /// product written out.
    pub fn skh_explicit(&self, w: &BraidWord) -> Result<SkhResult, SkhError> {
        self.check(w)?;
        let m = braid_bimodule(&self.ring, &w.mirror())?;
        Ok(self.result(w, &hochschild_homology(&m)?))
    }

    fn result(&self, w: &BraidWord, hh: &RankTable) -> SkhResult {
        let shift = closure_shift(w);
        SkhResult {
            braid: w.clone(),
            winding_label: self.ring.n() - 1,
            ranks: shifted(hh, shift),
            shift,
        }
    }

    /// The Tate complex of `M_{m(w)} ⊗^L M_{m(w)}`, shifted so that its
    /// `E¹` page is `SKh` of the closure of `w²`.
    pub fn tate_complex(&mut self, w: &BraidWord, route: Route) -> Result<TateComplex, SkhError> {
        self.check(w)?;
        let t = match route.resolve(w) {
            Route::Koszul => TateComplex::from_bimodule(&braid_bimodule(&self.ring, &w.mirror())?)?,
            _ => TateComplex::from_free(&self.free_model(w)?)?,
        };
        Ok(t.shift(closure_shift(&w.squared())))
    }

    pub fn tate_pages(
        &mut self,
        w: &BraidWord,
        route: Route,
        max_pages: Option<usize>,
    ) -> Result<(TateComplex, TateSequence), SkhError> {
        let t = self.tate_complex(w, route)?;
        let cap = max_pages.unwrap_or_else(|| default_max_pages(&t));
        let seq = pages(&t, cap)?;
        Ok((t, seq))
    }

    /// Compares `y^{n−1} q(ŵ²)` with `q(ŵ)²` mod 2.
    pub fn decat(&mut self, w: &BraidWord) -> Result<DecatReport, SkhError> {
        let sigma = self.skh(w)?;
        let square = self.skh(&w.squared())?;
        Ok(DecatReport::new(&sigma, &square, self.ring.n()))
    }

    pub fn spectral(
        &mut self,
        w: &BraidWord,
        route: Route,
        max_pages: Option<usize>,
    ) -> Result<SpectralReport, SkhError> {
        let (t, seq) = self.tate_pages(w, route, max_pages)?;
        let sigma = self.skh(w)?;
        let square = self.skh(&w.squared())?;
        self.spectral_from(&t, &seq, sigma, square)
    }

    /// The spectral report for pages already computed from `t` (as
    /// returned by [`Skh::tate_complex`]) and both ends computed
    /// separately.
    pub fn spectral_from(
        &self,
        t: &TateComplex,
        seq: &TateSequence,
        sigma: SkhResult,
        square: SkhResult,
    ) -> Result<SpectralReport, SkhError> {
        self.check(&sigma.braid)?;
        Ok(SpectralReport::new(t.len(), seq, sigma, square, self.ring.n()))
    }
}

/// [`Skh::skh`] for a single word.
pub fn skh_next_to_top(w: &BraidWord) -> Result<SkhResult, SkhError> {
    Skh::new(w.strands())?.skh(w)
}

/// [`Skh::decat`] for a single word.
pub fn decat_check(w: &BraidWord) -> Result<DecatReport, SkhError> {
    Skh::new(w.strands())?.decat(w)
}

/// [`Skh::spectral`] for a single word, choosing the route automatically.
pub fn spectral_report(w: &BraidWord) -> Result<SpectralReport, SkhError> {
    Skh::new(w.strands())?.spectral(w, Route::Auto, None)
}
