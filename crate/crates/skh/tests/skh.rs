use bimodule::BraidWord;
use f2linalg::{Bigrading, RankTable};
use hochschild::{bar_hochschild, hochschild_homology};
use skh::{euler_characteristic, skh_next_to_top, spectral_report, LaurentPoly, Route, Skh, SkhError};

fn word(s: &str, strands: usize) -> BraidWord {
    BraidWord::parse(s, strands).unwrap()
}

fn table(entries: &[((i32, i32), usize)]) -> RankTable {
    entries.iter().map(|&((h, q), c)| (Bigrading::new(h, q), c)).collect()
}

fn words_up_to(strands: usize, max_len: usize) -> Vec<BraidWord> {
    (0..=max_len)
        .flat_map(|l| BraidWord::all_of_length(strands, l))
        .collect()
}

#[test]
fn hopf_link() {
    let s = skh_next_to_top(&word("s1 s1", 2)).unwrap();
    assert_eq!(s.ranks, table(&[((0, 2), 1), ((1, 4), 1), ((2, 4), 1), ((2, 6), 1)]));
    assert_eq!(s.winding_label, 0);
    assert_eq!(s.poincare(), "q^2 + t^1 q^4 + t^2 q^4 + t^2 q^6");
    let mut expected = LaurentPoly::monomial(2, 1);
    expected.add_term(6, 1);
    assert_eq!(euler_characteristic(&s), expected);
}

#[test]
fn single_crossing_has_two_generators() {
    let s = skh_next_to_top(&word("s1", 2)).unwrap();
    assert_eq!(s.total_rank(), 2);
}

#[test]
fn empty_word_is_unshifted_algebra_homology() {
    let mut e = Skh::new(2).unwrap();
    let s = e.skh(&word("", 2)).unwrap();
    let a = bimodule::identity(e.ring());
    assert_eq!(s.ranks, bar_hochschild(&a, None).unwrap().ranks);
    assert_eq!(s.shift, Bigrading::new(0, 0));
}

#[test]
fn euler_characteristic_edge_cases() {
    let mut e = Skh::new(2).unwrap();
    let mut s = e.skh(&word("", 2)).unwrap();
    s.ranks = RankTable::new();
    assert!(euler_characteristic(&s).is_zero());
    s.ranks = table(&[((0, 0), 1)]);
    assert_eq!(euler_characteristic(&s), LaurentPoly::monomial(0, 1));
}

#[test]
fn free_route_matches_explicit_route() {
    for strands in [2, 3] {
        let mut e = Skh::new(strands).unwrap();
        for w in words_up_to(strands, 2) {
            assert_eq!(e.skh(&w).unwrap(), e.skh_explicit(&w).unwrap(), "{w}");
        }
    }
}

#[test]
fn explicit_route_uses_the_mirror() {
    let e = Skh::new(2).unwrap();
    let w = word("s1", 2);
    let m = bimodule::braid_bimodule(e.ring(), &w.mirror()).unwrap();
    let hh = hochschild_homology(&m).unwrap();
    let s = e.skh_explicit(&w).unwrap();
    let shifted: RankTable = hh.iter().map(|(&b, &c)| (b + s.shift, c)).collect();
    assert_eq!(s.ranks, shifted);
}

#[test]
fn conjugation_invariance_on_three_strands() {
    let mut e = Skh::new(3).unwrap();
    for w in words_up_to(3, 2) {
        let base = e.skh(&w).unwrap().ranks;
        for s in ["s1", "s2", "S1", "S2"] {
            let g = word(s, 3);
            // For a single letter the mirror is the inverse.
            let conj = g.concat(&w).unwrap().concat(&g.mirror()).unwrap();
            assert_eq!(e.skh(&conj).unwrap().ranks, base, "{g} {w} {g}^-1");
        }
    }
}

#[test]
fn braid_relations_preserve_ranks() {
    let mut e = Skh::new(3).unwrap();
    let cases = [
        ("s1 s2 s1", "s2 s1 s2"),
        ("S1 S2 S1", "S2 S1 S2"),
        ("s1 S1", ""),
        ("S2 s2", ""),
        ("s1 s2 S2", "s1"),
        ("s2 s1 S2 S1 s1", "s2 s1 S2"),
    ];
    for (a, b) in cases {
        assert_eq!(
            e.skh(&word(a, 3)).unwrap().ranks,
            e.skh(&word(b, 3)).unwrap().ranks,
            "{a} vs {b}"
        );
    }
}

#[test]
fn decategorification_congruence() {
    for strands in [2, 3] {
        let mut e = Skh::new(strands).unwrap();
        for w in words_up_to(strands, 3) {
            let d = e.decat(&w).unwrap();
            assert!(d.congruent, "{w}: {} vs {}", d.lhs, d.rhs);
        }
    }
    let d = skh::decat_check(&word("s1", 2)).unwrap();
    assert_eq!(d.lhs.to_string(), "y^2 + y^6");
}

#[test]
fn hopf_spectral_report() {
    let r = spectral_report(&word("s1", 2)).unwrap();
    r.verify().unwrap();
    assert_eq!(r.e0_generators, 34);
    assert_eq!(r.stable_page, 3);
    assert_eq!(r.e1(), &table(&[((0, 2), 1), ((1, 4), 1), ((2, 4), 1), ((2, 6), 1)]));
    assert_eq!(r.e_infinity(), &table(&[((0, 2), 1), ((2, 6), 1)]));
    assert_eq!(r.quantum.e_infinity, vec![2, 6]);
    assert_eq!(r.quantum.doubled_skh, vec![2, 6]);
    assert_eq!(r.quantum.offset, Some(0));
    assert_eq!(r.quantum.shifted_halves, vec!["1", "3"]);
    assert!(r.quantum.halving_matches);
}

#[test]
fn spectral_reports_hold_on_small_words() {
    for strands in [2, 3] {
        let mut e = Skh::new(strands).unwrap();
        let max_len = if strands == 2 { 3 } else { 2 };
        for w in words_up_to(strands, max_len) {
            let r = e.spectral(&w, Route::Free, None).unwrap();
            r.verify().unwrap();
            let total = |t: &RankTable| t.values().sum::<usize>();
            assert!(total(r.e_infinity()) <= total(r.e1()), "{w}");
            assert_eq!(r.quantum.offset, Some(strands as i32 - 2), "{w}");
            assert!(r.quantum.halving_matches, "{w}");
        }
    }
}

#[test]
fn empty_word_has_no_higher_differentials() {
    let r = spectral_report(&word("", 2)).unwrap();
    assert_eq!(r.e1(), r.e_infinity());
}

#[test]
fn strand_count_is_checked() {
    let mut e = Skh::new(2).unwrap();
    assert_eq!(
        e.skh(&word("s1", 3)),
        Err(SkhError::StrandMismatch { expected: 2, got: 3 })
    );
}
