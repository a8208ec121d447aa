//! Acceptance criteria 1 to 8, one pass/fail line each.
//!
//! This target has no test harness, so `cargo test -p cli --test
//! acceptance` prints the lines directly. Every criterion is evaluated even
//! if an earlier one fails, and the process exits nonzero if any line says
//! FAIL.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bimodule::{braid_bimodule, BraidWord, LetterModels};
use f2linalg::{Bigrading, ChainComplex, RankTable, Reducer};
use hochschild::{
    bar_hochschild, doubled_complex, free_doubled, free_hochschild, hochschild_complex, hochschild_homology,
};
use quiver::KoszulPair;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skh::{Route, Skh};
use tate::{pages, pi_formality_replay, TateComplex};

/// Runtime limits. Every other comparison is exact.
const HOPF_E0_LIMIT: Duration = Duration::from_secs(1);
const PI_REPLAY_N4_LIMIT: Duration = Duration::from_secs(10);
const PI_MAX_STEPS: usize = 4;
const RANDOM_ORDERS: usize = 3;

type Check = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(entries: &[((i32, i32), usize)]) -> RankTable {
    entries.iter().map(|&((h, q), c)| (Bigrading::new(h, q), c)).collect()
}

fn word(s: &str, strands: usize) -> BraidWord {
    BraidWord::parse(s, strands).expect("valid braid")
}

fn words_up_to(strands: usize, max_len: usize) -> Vec<BraidWord> {
    (0..=max_len)
        .flat_map(|l| BraidWord::all_of_length(strands, l))
        .collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The Hopf link is the closure of `w²` for `w = s1`. Its `E⁰` is the
/// doubled complex of the mirrored single-crossing bimodule.
fn hopf_tate() -> Result<TateComplex, String> {
    Skh::new(2)
        .map_err(err)?
        .tate_complex(&word("s1", 2), Route::Auto)
        .map_err(err)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let t = hopf_tate()?;
    let elapsed = start.elapsed();
    let counts = t.doubled().complex.generator_counts();
    let expected = table(&[
        ((0, 2), 7),
        ((1, 2), 10),
        ((2, 2), 4),
        ((1, 4), 6),
        ((2, 4), 6),
        ((2, 6), 1),
    ]);
    ensure(t.len() == 34, || format!("E0 has {} generators, expected 34", t.len()))?;
    ensure(counts == expected, || format!("distribution {counts:?}"))?;
    ensure(elapsed < HOPF_E0_LIMIT, || {
        format!("took {elapsed:?}, limit {HOPF_E0_LIMIT:?}")
    })?;
    Ok(format!("34 generators with the expected distribution in {elapsed:?}"))
}

fn criterion_2() -> Check {
    let t = hopf_tate()?;
    let seq = pages(&t, tate::default_max_pages(&t)).map_err(err)?;
    let e1 = table(&[((0, 2), 1), ((1, 4), 1), ((2, 4), 1), ((2, 6), 1)]);
    let einf = table(&[((0, 2), 1), ((2, 6), 1)]);
    ensure(seq.page(1).ranks == e1, || format!("E1 = {:?}", seq.page(1).ranks))?;
    ensure(seq.e_infinity().ranks == einf, || {
        format!("E-infinity = {:?}", seq.e_infinity().ranks)
    })?;
    ensure(seq.stable_page() == 3, || format!("stable at E{}", seq.stable_page()))?;
    Ok("E1 4 generators, E-infinity {(0,2),(2,6)}, stable at E3".into())
}

fn criterion_3() -> Check {
    let t = hopf_tate()?;
    let seq = pages(&t, tate::default_max_pages(&t)).map_err(err)?;
    let sigma = Skh::new(2).map_err(err)?.skh_explicit(&word("s1", 2)).map_err(err)?;
    let (a, b) = (seq.e_infinity().total_rank(), sigma.total_rank());
    ensure(a == 2 && b == 2, || format!("E-infinity rank {a}, SKh(s1) rank {b}"))?;
    Ok(format!("E-infinity rank {a} equals SKh rank {b} for the closure of s1"))
}

fn criterion_4() -> Check {
    let mut notes = Vec::new();
    for n in 1..=4 {
        let start = Instant::now();
        let r = pi_formality_replay(n, PI_MAX_STEPS).map_err(err)?;
        let elapsed = start.elapsed();
        ensure(r.terminated, || format!("n={n} did not reach 0"))?;
        ensure(r.steps.len() <= PI_MAX_STEPS, || {
            format!("n={n} took {} steps", r.steps.len())
        })?;
        if n >= 3 {
            let rep = &r.steps[3].representative;
            ensure(rep.len() == n - 2, || format!("n={n}: step 3 has {} terms", rep.len()))?;
            ensure(rep.iter().all(|t| r.shape(t) == "(x2|y3|x2|y1)"), || {
                format!(
                    "n={n}: step 3 is {:?}",
                    rep.iter().map(|t| r.shape(t)).collect::<Vec<_>>()
                )
            })?;
        }
        if n == 4 {
            ensure(elapsed < PI_REPLAY_N4_LIMIT, || format!("n=4 took {elapsed:?}"))?;
        }
        notes.push(format!("n={n}: {} steps", r.steps.len()));
    }
    Ok(format!("{}; step 3 is a sum of (x2|y3|x2|y1)", notes.join(", ")))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for strands in [2, 3] {
        let mut e = Skh::new(strands).map_err(err)?;
        for w in words_up_to(strands, 4) {
            let d = e.decat(&w).map_err(err)?;
            ensure(d.congruent, || format!("{w}: {} vs {}", d.lhs, d.rhs))?;
            count += 1;
        }
    }
    Ok(format!("{count} words congruent mod 2 in {:?}", start.elapsed()))
}

fn criterion_6() -> Check {
    let mut count = 0;
    for n in 1..=2 {
        let ring = Arc::new(KoszulPair::new(n).map_err(err)?);
        for w in words_up_to(n + 1, 2) {
            let m = braid_bimodule(&ring, &w).map_err(err)?;
            let koszul = hochschild_homology(&m).map_err(err)?;
            let bar = bar_hochschild(&m, None).map_err(err)?;
            ensure(koszul == bar.ranks, || {
                format!("n={n} {w}: {koszul:?} vs {:?}", bar.ranks)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} braid bimodules agree"))
}

fn random_orders_agree(c: &ChainComplex, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let expected = c.homology().map_err(err)?;
    for _ in 0..RANDOM_ORDERS {
        let mut priority: Vec<usize> = (0..c.len()).collect();
        priority.shuffle(rng);
        let mut r = Reducer::from_complex(c);
        r.reduce_with_priority(&priority);
        let reduced = r.into_complex();
        ensure(
            reduced.differential().is_zero() && reduced.generator_counts() == expected,
            || "homology depends on cancellation order".to_string(),
        )?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut complexes = 0;
    for n in 1..=2 {
        let ring = Arc::new(KoszulPair::new(n).map_err(err)?);
        let mut models = LetterModels::new(ring.clone());
        for w in words_up_to(n + 1, 2) {
            let m = braid_bimodule(&ring, &w).map_err(err)?;
            let z = models.word(&w).map_err(err)?;
            let single = [hochschild_complex(&m), free_hochschild(&z)];
            for hc in &single {
                hc.complex.validate().map_err(|e| format!("{w}: {e}"))?;
                random_orders_agree(&hc.complex, &mut rng).map_err(|e| format!("{w}: {e}"))?;
                complexes += 1;
            }
            let mut doubled = vec![free_doubled(&z)];
            if w.len() <= 1 {
                doubled.push(doubled_complex(&m));
            }
            for d in doubled {
                ensure(d.tau_is_involution(), || format!("{w}: tau is not an involution"))?;
                ensure(d.tau_commutes(), || format!("{w}: tau does not commute with d"))?;
                random_orders_agree(&d.complex, &mut rng).map_err(|e| format!("{w}: {e}"))?;
                TateComplex::new(d).map_err(|e| format!("{w}: {e}"))?;
                complexes += 1;
            }
        }
    }
    let mut e = Skh::new(3).map_err(err)?;
    let relations = [
        ("s1 s2 s1", "s2 s1 s2"),
        ("S1 S2 S1", "S2 S1 S2"),
        ("s1 S1", ""),
        ("S1 s1", ""),
        ("s2 S2", ""),
        ("S2 s2", ""),
    ];
    let mut pairs = 0;
    for u in words_up_to(3, 1) {
        for (a, b) in relations {
            let lhs = e.skh(&u.concat(&word(a, 3)).map_err(err)?).map_err(err)?.ranks;
            let rhs = e.skh(&u.concat(&word(b, 3)).map_err(err)?).map_err(err)?.ranks;
            ensure(lhs == rhs, || format!("{u} | {a} vs {b}"))?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{complexes} complexes checked, {pairs} relation instances invariant"
    ))
}

fn criterion_8() -> Check {
    let mut count = 0;
    for (strands, max_len) in [(2, 3), (3, 2)] {
        let mut e = Skh::new(strands).map_err(err)?;
        for w in words_up_to(strands, max_len) {
            let (_, seq) = e.tate_pages(&w, Route::Auto, None).map_err(err)?;
            ensure(seq.euler_mod2_constant(), || {
                format!("{w}: mod-2 Euler characteristic changes")
            })?;
            ensure(seq.ranks_shrink_in_pairs(), || {
                format!("{w}: ranks do not shrink in pairs")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} words, constant on every page"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "Hopf E0", criterion_1),
        (2, "Hopf pages", criterion_2),
        (3, "E-infinity rank", criterion_3),
        (4, "pi-formality replay", criterion_4),
        (5, "decategorification", criterion_5),
        (6, "Koszul vs bar", criterion_6),
        (7, "structural properties", criterion_7),
        (8, "mod-2 Euler characteristic of pages", criterion_8),
    ];
    let mut results = BTreeMap::new();
    for (k, name, f) in criteria {
        let outcome = f();
        match &outcome {
            Ok(detail) => println!("criterion {k} ({name}): PASS: {detail}"),
            Err(detail) => println!("criterion {k} ({name}): FAIL: {detail}"),
        }
        results.insert(k, outcome.is_ok());
    }
    let failed: Vec<usize> = results.iter().filter(|(_, &ok)| !ok).map(|(&k, _)| k).collect();
    if failed.is_empty() {
        println!("all {} criteria pass", results.len());
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
