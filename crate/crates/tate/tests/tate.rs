use std::collections::BTreeSet;
use std::sync::Arc;

use bimodule::{braid_bimodule, identity, sigma_minus, BraidWord, LetterModels};
use f2linalg::{Bigrading, RankTable};
use hochschild::hochschild_homology;
use quiver::{KoszulPair, PathAlgebra};
use tate::{default_max_pages, pages, pi_formality_replay, xy_phenomenon_holds, QuadTensor, TateComplex, TateError};

fn ring(n: usize) -> Arc<KoszulPair> {
    Arc::new(KoszulPair::new(n).unwrap())
}

fn table(entries: &[(i32, i32)]) -> RankTable {
    entries.iter().map(|&(h, q)| (Bigrading::new(h, q), 1)).collect()
}

fn hopf() -> TateComplex {
    TateComplex::from_bimodule(&sigma_minus(&ring(1), 1).unwrap())
        .unwrap()
        .shift(Bigrading::new(0, 2))
}

#[test]
fn tau_swaps_the_dashed_pair() {
    let t = hopf();
    let a = t.find("(e1|w10|t|1)").unwrap();
    let b = t.find("(t|1|e1|w10)").unwrap();
    assert_eq!(t.tau(a), b);
    assert_eq!(t.tau(b), a);
    assert!((0..t.len()).all(|g| t.tau(t.tau(g)) == g));
    let diagonal = t.find("(u|1|u|1)").unwrap();
    assert_eq!(t.tau(diagonal), diagonal);
}

#[test]
fn hopf_pages() {
    let t = hopf();
    let seq = pages(&t, 10).unwrap();
    assert_eq!(seq.page(0).total_rank(), 34);
    let e1 = table(&[(0, 2), (1, 4), (2, 4), (2, 6)]);
    assert_eq!(seq.page(1).ranks, e1);
    assert!(seq.page(1).differential.is_empty());
    assert_eq!(seq.page(2).ranks, e1);
    assert_eq!(seq.e_infinity().ranks, table(&[(0, 2), (2, 6)]));
    assert_eq!(seq.stable_page(), 3);
    // d² runs from (2,4) to (1,4): down one in h, two columns across.
    let d2 = &seq.page(2).differential;
    assert_eq!(d2.len(), 1);
    let (from, to) = d2[0];
    assert_eq!(t.grading(from), Bigrading::new(2, 4));
    assert_eq!(t.grading(to), Bigrading::new(1, 4));
    assert!(seq.odd_differentials_vanish());
}

#[test]
fn hopf_second_differential_zigzag() {
    let t = hopf();
    let x = t.find("(u|y10|t|1)").unwrap();
    let target = t.find("(t|y10|t|w10)").unwrap();
    // The surviving generators of E² are joined by exactly this entry.
    let seq = pages(&t, 10).unwrap();
    assert_eq!(seq.page(2).differential, vec![(x, target)]);
    // Independently: solve ∂z = (1 + τ)x by linear algebra. The cycle
    // (1 + τ)z is not a boundary and involves the target generator.
    let d2 = t.second_differential(&[x as u32]).unwrap().expect("d¹ vanishes on x");
    assert!(t.boundary(&d2).is_empty());
    assert!(!t.is_boundary(&d2));
    assert!(d2.contains(&(target as u32)));
    assert!(d2.iter().all(|&g| t.grading(g as usize) == Bigrading::new(1, 4)));
}

#[test]
fn identity_braid_first_page_is_hochschild_homology() {
    let r = ring(1);
    let a = identity(&r);
    let seq = pages(&TateComplex::from_bimodule(&a).unwrap(), 10).unwrap();
    let aa = bimodule::derived_tensor(&a, &a).unwrap();
    assert_eq!(seq.page(1).ranks, hochschild_homology(&aa).unwrap());
}

#[test]
fn page_invariants_on_small_words() {
    for n in 1..=2 {
        let r = ring(n);
        let mut models = LetterModels::new(r.clone());
        for len in 0..=2 {
            for w in BraidWord::all_of_length(n + 1, len) {
                let t = if len <= 1 {
                    TateComplex::from_bimodule(&braid_bimodule(&r, &w).unwrap()).unwrap()
                } else {
                    TateComplex::from_free(&models.word(&w).unwrap()).unwrap()
                };
                let seq = pages(&t, default_max_pages(&t)).unwrap();
                assert!(seq.euler_mod2_constant(), "{w}");
                assert!(seq.ranks_shrink_in_pairs(), "{w}");
                assert!(seq.stable_page() <= 3, "{w}");
            }
        }
    }
}

#[test]
fn odd_differentials_vanish_on_two_strands() {
    let r = ring(1);
    let mut models = LetterModels::new(r.clone());
    for len in 0..=3 {
        for w in BraidWord::all_of_length(2, len) {
            let t = TateComplex::from_free(&models.word(&w).unwrap()).unwrap();
            assert!(
                pages(&t, default_max_pages(&t)).unwrap().odd_differentials_vanish(),
                "{w}"
            );
        }
    }
}

#[test]
fn first_differential_can_be_nonzero_on_three_strands() {
    // τ swaps two pairs of classes of HH(N ⊗ N) for N = M_{s1 S2}, so d¹ is
    // nonzero; the limit still has the rank of HH(N).
    let r = ring(2);
    let n = braid_bimodule(&r, &BraidWord::parse("s1 S2", 3).unwrap()).unwrap();
    let seq = pages(&TateComplex::from_bimodule(&n).unwrap(), 10).unwrap();
    assert!(!seq.page(1).differential.is_empty());
    assert_eq!(seq.page(1).total_rank(), 8);
    assert_eq!(seq.page(2).total_rank(), 4);
    let hh: usize = hochschild_homology(&n).unwrap().values().sum();
    assert_eq!(seq.e_infinity().total_rank(), hh);
}

#[test]
fn page_cap_is_enforced() {
    assert_eq!(
        pages(&hopf(), 1).unwrap_err(),
        TateError::NoConvergence { max_pages: 1 }
    );
}

#[test]
fn malformed_involution_is_rejected() {
    let mut d = hopf().doubled().clone();
    d.tau.swap(0, 1);
    assert!(TateComplex::new(d).is_err());
}

fn find_tensor(a: &PathAlgebra, b: &PathAlgebra, parts: [(usize, usize, bool); 4]) -> QuadTensor {
    let [p, q, r, s] = parts;
    QuadTensor {
        a1: a.find(p.0, p.1, p.2).unwrap(),
        b1: b.find(q.0, q.1, q.2).unwrap(),
        a2: a.find(r.0, r.1, r.2).unwrap(),
        b2: b.find(s.0, s.1, s.2).unwrap(),
    }
}

#[test]
fn pi_formality_replay_reaches_zero() {
    for n in 1..=4 {
        let report = pi_formality_replay(n, 8).unwrap();
        assert!(report.terminated);
        assert!(report.steps.len() <= 4, "n = {n}");
        // Each boundary is (1 + τ) of the chosen representative.
        for step in &report.steps {
            let mut doubled: BTreeSet<QuadTensor> = BTreeSet::new();
            for &t in &step.representative {
                assert_ne!(t, t.tau());
                doubled.insert(t);
                doubled.insert(t.tau());
            }
            assert_eq!(doubled, step.boundary.iter().copied().collect());
        }
    }
}

#[test]
fn pi_formality_intermediate_representatives() {
    for n in 1..=4 {
        let report = pi_formality_replay(n, 8).unwrap();
        let (a, b) = (report.a(), report.b());
        // After two steps: Σ_i (x|w|ι|y) + (x|y|ι|w) over single arrows.
        let second: BTreeSet<_> = report.steps[1].representative.iter().copied().collect();
        for i in 0..n {
            let x = (i, i + 1, true);
            let io = (i, i + 1, false);
            let w = (i + 1, i, false);
            let y = (i + 1, i, true);
            assert!(second.contains(&find_tensor(a, b, [x, w, io, y])));
            assert!(second.contains(&find_tensor(a, b, [x, y, io, w])));
        }
        // Fourth representative: Σ_i (x2|y3|x2|y1).
        if n >= 3 {
            let fourth: BTreeSet<_> = report.steps[3].representative.iter().copied().collect();
            for p in 0..=n - 3 {
                let t = find_tensor(
                    a,
                    b,
                    [
                        (p, p + 2, true),
                        (p + 3, p, true),
                        (p + 1, p + 3, true),
                        (p + 2, p + 1, true),
                    ],
                );
                assert_eq!(report.shape(&t), "(x2|y3|x2|y1)");
                assert!(fourth.contains(&t), "n = {n}, p = {p}");
            }
            assert_eq!(fourth.len(), n - 2);
        }
    }
}

#[test]
fn xy_phenomenon() {
    for n in 1..=5 {
        assert!(xy_phenomenon_holds(n).unwrap());
    }
}
