use std::collections::BTreeSet;

use bimodule::BraidWord;
use f2linalg::RankTable;
use tate::{TatePage, TateSequence};

use crate::{euler_characteristic, LaurentPoly, SkhError, SkhResult};

/// The mod-2 comparison of `y^{n−1} q(ŵ²)` with `q(ŵ)²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecatReport {
    pub braid: BraidWord,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub congruent: bool,
}

impl DecatReport {
    /// Compares the Euler characteristics of `sigma = SKh(ŵ)` and
    /// `square = SKh(ŵ²)` over `A_n`.
    pub fn new(sigma: &SkhResult, square: &SkhResult, n: usize) -> Self {
        let q = euler_characteristic(sigma);
        let lhs = euler_characteristic(square).shift(n as i32 - 1);
        let rhs = &q * &q;
        Self {
            braid: sigma.braid.clone(),
            congruent: lhs.congruent_mod2(&rhs),
            lhs,
            rhs,
        }
    }
}

/// Quantum gradings of `E^∞` next to those of `SKh(ŵ)`, doubled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumComparison {
    /// Quantum gradings of `E^∞`, with multiplicity, ascending.
    pub e_infinity: Vec<i32>,
    /// Twice the quantum gradings of `SKh(ŵ)`, ascending.
    pub doubled_skh: Vec<i32>,
    /// `doubled_skh − e_infinity` when it is the same for every entry.
    pub offset: Option<i32>,
    /// `(q + n − 1) / 2` for each `E^∞` grading, written as a fraction
    /// when it is not an integer.
    pub shifted_halves: Vec<String>,
    /// The shifted halves are exactly the quantum gradings of `SKh(ŵ)`.
    pub halving_matches: bool,
}

impl QuantumComparison {
    fn new(e_inf: &RankTable, sigma: &SkhResult, n: usize) -> Self {
        let expand = |t: &RankTable, f: &dyn Fn(i32) -> i32| {
            let mut v: Vec<i32> = t.iter().flat_map(|(b, &c)| std::iter::repeat_n(f(b.q), c)).collect();
            v.sort_unstable();
            v
        };
        let e_infinity = expand(e_inf, &|q| q);
        let doubled_skh = expand(&sigma.ranks, &|q| 2 * q);
        let offsets: BTreeSet<i32> = e_infinity.iter().zip(&doubled_skh).map(|(e, d)| d - e).collect();
        let offset = match offsets.len() {
            1 if e_infinity.len() == doubled_skh.len() => offsets.first().copied(),
            0 if e_infinity.is_empty() && doubled_skh.is_empty() => Some(0),
            _ => None,
        };
        let halving_matches = e_infinity.len() == doubled_skh.len()
            && e_infinity.iter().zip(&doubled_skh).all(|(e, d)| e + n as i32 - 1 == *d);
        let shifted_halves = e_infinity
            .iter()
            .map(|&q| {
                let s = q + n as i32 - 1;
                if s % 2 == 0 {
                    (s / 2).to_string()
                } else {
                    format!("{s}/2")
                }
            })
            .collect();
        Self {
            e_infinity,
            doubled_skh,
            offset,
            shifted_halves,
            halving_matches,
        }
    }
}

/// The spectral sequence from `SKh(ŵ²)` to `SKh(ŵ)` set against both ends
/// computed directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralReport {
    pub braid: BraidWord,
    pub e0_generators: usize,
    pub pages: Vec<TatePage>,
    pub stable_page: usize,
    pub skh_sigma: SkhResult,
    pub skh_sigma_squared: SkhResult,
    /// `E¹` equals `SKh(ŵ²)` as a rank table.
    pub e1_matches: bool,
    /// `E^∞` has the total rank of `SKh(ŵ)`.
    pub rank_matches: bool,
    pub euler_mod2_constant: bool,
    pub odd_differentials_vanish: bool,
    pub quantum: QuantumComparison,
}

impl SpectralReport {
    pub(crate) fn new(
        e0_generators: usize,
        seq: &TateSequence,
        skh_sigma: SkhResult,
        skh_sigma_squared: SkhResult,
        n: usize,
    ) -> Self {
        let e_inf = seq.e_infinity();
        Self {
            braid: skh_sigma.braid.clone(),
            e0_generators,
            pages: seq.pages.clone(),
            stable_page: seq.stable_page(),
            e1_matches: seq.page(1).ranks == skh_sigma_squared.ranks,
            rank_matches: e_inf.total_rank() == skh_sigma.total_rank(),
            euler_mod2_constant: seq.euler_mod2_constant(),
            odd_differentials_vanish: seq.odd_differentials_vanish(),
            quantum: QuantumComparison::new(&e_inf.ranks, &skh_sigma, n),
            skh_sigma,
            skh_sigma_squared,
        }
    }

    pub fn e1(&self) -> &RankTable {
        &self.page(1).ranks
    }

    pub fn e_infinity(&self) -> &RankTable {
        &self.pages.last().expect("E⁰ is always present").ranks
    }

    pub fn page(&self, r: usize) -> &TatePage {
        self.pages
            .get(r)
            .unwrap_or_else(|| self.pages.last().expect("E⁰ is always present"))
    }

    /// Fails on the checks that must hold for every braid. The quantum
    /// comparison and odd differentials are reported but not enforced.
    pub fn verify(&self) -> Result<(), SkhError> {
        let fail = |what: &str| {
            Err(SkhError::SpectralMismatch {
                braid: self.braid.to_string(),
                what: what.to_string(),
            })
        };
        if !self.e1_matches {
            return fail("E1 differs from SKh of the squared closure");
        }
        if !self.rank_matches {
            return fail("E-infinity rank differs from SKh of the closure");
        }
        if !self.euler_mod2_constant {
            return fail("mod-2 Euler characteristic changes between pages");
        }
        Ok(())
    }
}
