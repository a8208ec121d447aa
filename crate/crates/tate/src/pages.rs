use std::collections::BTreeMap;

use f2linalg::{Bigrading, RankTable, Reducer};

use crate::{TateComplex, TateError};

/// One page `E^r`: the generators that survive all cancellations of
/// column shift below `r`, and the entries of `d^r` between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TatePage {
    pub r: usize,
    /// Indices into the `E⁰` generators.
    pub generators: Vec<usize>,
    pub ranks: RankTable,
    /// Entries `(from, to)` of `d^r`, again as `E⁰` indices.
    pub differential: Vec<(usize, usize)>,
}

impl TatePage {
    pub fn total_rank(&self) -> usize {
        self.generators.len()
    }

    /// Rank mod 2 in each quantum grading.
    pub fn euler_mod2(&self) -> Vec<(i32, bool)> {
        quantum_totals(self).into_iter().map(|(q, c)| (q, c % 2 == 1)).collect()
    }
}

/// All pages from `E⁰` up to the first page with no further differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateSequence {
    pub pages: Vec<TatePage>,
}

impl TateSequence {
    /// `E^r`; pages past the last computed one equal `E^∞`.
    pub fn page(&self, r: usize) -> &TatePage {
        self.pages.get(r).unwrap_or_else(|| self.e_infinity())
    }

    /// The limit page.
    pub fn e_infinity(&self) -> &TatePage {
        self.pages.last().expect("at least E⁰ is present")
    }

    /// The first `r` with `E^r = E^∞`.
    pub fn stable_page(&self) -> usize {
        let total = self.e_infinity().total_rank();
        self.pages.iter().position(|p| p.total_rank() == total).unwrap_or(0)
    }

    /// `d^r = 0` for every odd `r`.
    pub fn odd_differentials_vanish(&self) -> bool {
        self.pages
            .iter()
            .filter(|p| p.r % 2 == 1)
            .all(|p| p.differential.is_empty())
    }

    /// The mod-2 rank in every quantum grading agrees on all pages.
    pub fn euler_mod2_constant(&self) -> bool {
        let normal = |p: &TatePage| -> Vec<i32> {
            p.euler_mod2()
                .into_iter()
                .filter(|&(_, odd)| odd)
                .map(|(q, _)| q)
                .collect()
        };
        let first = normal(&self.pages[0]);
        self.pages.iter().all(|p| normal(p) == first)
    }

    /// In every quantum grading the rank never grows from one page to the
    /// next, and drops by an even amount.
    pub fn ranks_shrink_in_pairs(&self) -> bool {
        self.pages.windows(2).all(|w| {
            let (before, after) = (quantum_totals(&w[0]), quantum_totals(&w[1]));
            before.iter().all(|(q, &b)| {
                let a = after.get(q).copied().unwrap_or(0);
                a <= b && (b - a) % 2 == 0
            }) && after.keys().all(|q| before.contains_key(q))
        })
    }
}

fn quantum_totals(p: &TatePage) -> BTreeMap<i32, usize> {
    let mut by_q = BTreeMap::new();
    for (b, &c) in &p.ranks {
        *by_q.entry(b.q).or_default() += c;
    }
    by_q
}

/// Enough pages for any complex: a `d^r` entry drops the homological
/// degree by `r − 1`, so `r` is at most the spread of `h` plus one.
pub fn default_max_pages(t: &TateComplex) -> usize {
    let hs = t.doubled().complex.grading().iter().map(|b| b.h);
    match (hs.clone().min(), hs.max()) {
        (Some(lo), Some(hi)) => (hi - lo) as usize + 2,
        _ => 1,
    }
}

fn shift_of(grading: &[Bigrading], from: usize, to: usize) -> i32 {
    grading[from].h + 1 - grading[to].h
}

/// Computes the pages by filtered cancellation.
///
/// `∂` entries have shift 0 and the entries `g → g`, `g → τg` of `1 + τ`
/// have shift 1. Cancelling a shift-`r` entry `b → a` creates entries
/// `x → y` of shift `s(x,a) + s(b,y) − r`, so once every entry below shift
/// `r` is gone the remaining shift-`r` entries are exactly `d^r`. Beyond
/// page `max_pages` the computation stops with
/// [`TateError::NoConvergence`].
pub fn pages(t: &TateComplex, max_pages: usize) -> Result<TateSequence, TateError> {
    let c = &t.doubled().complex;
    let grading = c.grading().to_vec();
    let images = (0..t.len())
        .map(|g| {
            let mut image = c.image(g).to_vec();
            if t.tau(g) != g {
                image.push(g as u32);
                image.push(t.tau(g) as u32);
            }
            image
        })
        .collect();
    let mut red = Reducer::from_images((0..t.len()).collect(), grading.clone(), images);
    let priority: Vec<usize> = (0..t.len()).collect();
    let mut out = Vec::new();
    for r in 0.. {
        let generators: Vec<usize> = red.alive_generators().collect();
        let differential: Vec<(usize, usize)> = generators
            .iter()
            .flat_map(|&g| red.out(g).map(move |h| (g, h)))
            .filter(|&(g, h)| shift_of(&grading, g, h) == r as i32)
            .collect();
        let mut ranks = RankTable::new();
        for &g in &generators {
            *ranks.entry(grading[g]).or_default() += 1;
        }
        out.push(TatePage {
            r,
            generators,
            ranks,
            differential,
        });
        if red.edge_count() == 0 {
            break;
        }
        if r >= max_pages {
            return Err(TateError::NoConvergence { max_pages });
        }
        red.reduce_where(&priority, |_, b, a| shift_of(&grading, b, a) == r as i32);
        let leftover = red
            .alive_generators()
            .any(|g| red.out(g).any(|h| shift_of(&grading, g, h) <= r as i32));
        if leftover {
            return Err(TateError::PageNotSquareZero { page: r });
        }
    }
    Ok(TateSequence { pages: out })
}
