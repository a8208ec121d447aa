use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::Result;
use bimodule::{braid_bimodule, BraidWord};
use f2linalg::{Bigrading, ChainComplex, RankTable};
use hochschild::{free_hochschild, hochschild_complex, HochschildComplex};
use quiver::{KoszulPair, PathAlgebra};
use serde_json::{json, Value};
use skh::{euler_characteristic, poincare, DecatReport, Route, Skh, SkhResult, SpectralReport};
use tate::{default_max_pages, pages, pi_formality_replay, TateComplex, TateSequence};

use crate::{Ctx, DumpLevel, Mode, Section};

fn ranks_json(t: &RankTable) -> Value {
    t.iter()
        .map(|(b, &c)| json!({ "h": b.h, "q": b.q, "rank": c }))
        .collect()
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Koszul => "koszul",
        Route::Free => "free",
        Route::Auto => "auto",
    }
}

impl Ctx<'_> {
    fn route(&self, w: &BraidWord) -> Route {
        Route::from(self.cfg.route).resolve(w)
    }

    /// Unshifted Hochschild complex of `M_{m(w)}`.
    fn hochschild(&self, engine: &mut Skh, w: &BraidWord, warnings: &mut Vec<String>) -> Result<HochschildComplex> {
        let route = self.route(w);
        let mut make = || -> Result<HochschildComplex, skh::SkhError> {
            match route {
                Route::Koszul => Ok(hochschild_complex(&braid_bimodule(engine.ring(), &w.mirror())?)),
                _ => Ok(free_hochschild(&engine.free_model(w)?)),
            }
        };
        match self.cache {
            Some(c) => {
                let key = format!("hochschild|{}|{}|{}", route_name(route), w.strands(), w);
                c.hochschild(&key, warnings, make)
            }
            None => Ok(make()?),
        }
    }

    fn skh(&self, engine: &mut Skh, w: &BraidWord, warnings: &mut Vec<String>) -> Result<SkhResult> {
        let hc = self.hochschild(engine, w, warnings)?;
        Ok(engine.skh_from(w, &hc)?)
    }

    fn tate(&self, engine: &mut Skh, w: &BraidWord, warnings: &mut Vec<String>) -> Result<TateComplex> {
        let route = self.route(w);
        let mut make = || engine.tate_complex(w, route);
        match self.cache {
            Some(c) => {
                let key = format!("tate|{}|{}|{}", route_name(route), w.strands(), w);
                c.tate(&key, warnings, make)
            }
            None => Ok(make()?),
        }
    }
}

fn braid_text(w: &BraidWord) -> String {
    if w.is_empty() {
        "(empty)".to_string()
    } else {
        w.to_string()
    }
}

fn skh_json(s: &SkhResult) -> Value {
    json!({
        "braid": s.braid.to_string(),
        "strands": s.braid.strands(),
        "winding_label": s.winding_label,
        "shift": { "h": s.shift.h, "q": s.shift.q },
        "ranks": ranks_json(&s.ranks),
        "total_rank": s.total_rank(),
        "poincare": s.poincare(),
        "euler": euler_characteristic(s).to_string(),
    })
}

fn decat_json(d: &DecatReport) -> Value {
    json!({ "lhs": d.lhs.to_string(), "rhs": d.rhs.to_string(), "congruent": d.congruent })
}

pub(crate) fn word(ctx: &Ctx, engine: &mut Skh, w: &BraidWord, warnings: &mut Vec<String>) -> Result<Section> {
    match ctx.cfg.mode {
        Mode::Skh => {
            let s = ctx.skh(engine, w, warnings)?;
            let text = format!(
                "SKh of the closure of {} ({} strands, winding grading {}):\n  {}\n  Euler characteristic: {}\n",
                braid_text(w),
                w.strands(),
                s.winding_label,
                s.poincare(),
                euler_characteristic(&s)
            );
            let mut j = skh_json(&s);
            j["mode"] = json!("skh");
            Ok(Section {
                json: j,
                text,
                passed: true,
            })
        }
        Mode::Decat => {
            let sigma = ctx.skh(engine, w, warnings)?;
            let square = ctx.skh(engine, &w.squared(), warnings)?;
            let d = DecatReport::new(&sigma, &square, w.n());
            let text = format!(
                "decategorification for {}:\n  y^{} q(closure of w^2) = {}\n  q(closure of w)^2 = {}\n  congruent mod 2: {}\n",
                braid_text(w),
                w.n() - 1,
                d.lhs,
                d.rhs,
                d.congruent
            );
            let mut j = decat_json(&d);
            j["mode"] = json!("decat");
            j["braid"] = json!(w.to_string());
            j["strands"] = json!(w.strands());
            Ok(Section {
                json: j,
                text,
                passed: d.congruent,
            })
        }
        Mode::Pages => pages_section(ctx, engine, w, warnings),
        Mode::Dump => dump_word(ctx, engine, w, warnings),
        Mode::PiFormal => unreachable!("handled before braids are parsed"),
    }
}

fn pages_section(ctx: &Ctx, engine: &mut Skh, w: &BraidWord, warnings: &mut Vec<String>) -> Result<Section> {
    let t = ctx.tate(engine, w, warnings)?;
    let cap = ctx.cfg.max_pages.unwrap_or_else(|| default_max_pages(&t));
    let seq = pages(&t, cap)?;
    let sigma = ctx.skh(engine, w, warnings)?;
    let square = ctx.skh(engine, &w.squared(), warnings)?;
    let decat = DecatReport::new(&sigma, &square, w.n());
    let report = engine.spectral_from(&t, &seq, sigma, square)?;
    let check = report.verify();
    let passed = check.is_ok() && decat.congruent;

    let page_json: Vec<Value> = seq
        .pages
        .iter()
        .map(|p| {
            json!({
                "r": p.r,
                "total_rank": p.total_rank(),
                "ranks": ranks_json(&p.ranks),
                "generators": p.generators.iter().map(|&g| t.label(g)).collect::<Vec<_>>(),
                "differential": p.differential.iter().map(|&(a, b)| [t.label(a), t.label(b)]).collect::<Vec<_>>(),
            })
        })
        .collect();
    let q = &report.quantum;
    let j = json!({
        "mode": "pages",
        "braid": w.to_string(),
        "strands": w.strands(),
        "route": route_name(ctx.route(w)),
        "e0_generators": report.e0_generators,
        "pages": page_json,
        "stable_page": report.stable_page,
        "skh_sigma": skh_json(&report.skh_sigma),
        "skh_sigma_squared": skh_json(&report.skh_sigma_squared),
        "decat": decat_json(&decat),
        "checks": {
            "e1_matches_skh_sigma_squared": report.e1_matches,
            "e_infinity_rank_matches_skh_sigma": report.rank_matches,
            "euler_mod2_constant": report.euler_mod2_constant,
            "odd_differentials_vanish": report.odd_differentials_vanish,
        },
        "quantum": {
            "e_infinity": q.e_infinity,
            "doubled_skh_sigma": q.doubled_skh,
            "offset": q.offset,
            "shifted_halves": q.shifted_halves,
            "halving_matches": q.halving_matches,
        },
        "error": check.as_ref().err().map(|e| e.to_string()),
    });
    Ok(Section {
        json: j,
        text: pages_text(w, &t, &seq, &report, &decat, check.err()),
        passed,
    })
}

fn pages_text(
    w: &BraidWord,
    t: &TateComplex,
    seq: &TateSequence,
    report: &SpectralReport,
    decat: &DecatReport,
    error: Option<skh::SkhError>,
) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "Tate spectral sequence for {} ({} strands)",
        braid_text(w),
        w.strands()
    );
    for p in &seq.pages {
        let _ = writeln!(s, "  E{}: {} ({} generators)", p.r, poincare(&p.ranks), p.total_rank());
        // d0 is the Hochschild differential, listed in JSON only.
        for &(a, b) in p.differential.iter().filter(|_| p.r > 0) {
            let _ = writeln!(s, "    d{}: {} -> {}", p.r, t.label(a), t.label(b));
        }
    }
    let _ = writeln!(s, "  stable from E{}", report.stable_page);
    let _ = writeln!(s, "  SKh(closure of w)   = {}", report.skh_sigma.poincare());
    let _ = writeln!(s, "  SKh(closure of w^2) = {}", report.skh_sigma_squared.poincare());
    let q = &report.quantum;
    let _ = writeln!(
        s,
        "  quantum gradings: E-infinity {:?}, doubled SKh {:?}, (q + n - 1)/2 = [{}]",
        q.e_infinity,
        q.doubled_skh,
        q.shifted_halves.join(", ")
    );
    let _ = writeln!(
        s,
        "  odd differentials vanish: {}; decategorification congruent: {}",
        report.odd_differentials_vanish, decat.congruent
    );
    match error {
        Some(e) => {
            let _ = writeln!(s, "  FAILED: {e}");
        }
        None => {
            let _ = writeln!(
                s,
                "  E1 = SKh(w^2), rank E-infinity = rank SKh(w), mod-2 Euler constant: ok"
            );
        }
    }
    s
}

fn complex_json(c: &ChainComplex, labels: &[String], tau: Option<&[u32]>) -> Value {
    let gens: Vec<Value> = (0..c.len())
        .map(|g| {
            let b: Bigrading = c.grading()[g];
            let mut v = json!({ "label": labels[g], "h": b.h, "q": b.q });
            if let Some(tau) = tau {
                v["tau"] = json!(labels[tau[g] as usize]);
            }
            v
        })
        .collect();
    let edges: Vec<[&str; 2]> = c
        .differential()
        .entries()
        .map(|(a, b)| [labels[a].as_str(), labels[b].as_str()])
        .collect();
    json!({
        "generators": gens,
        "counts": ranks_json(&c.generator_counts()),
        "differential": edges,
    })
}

fn algebra_json(a: &PathAlgebra) -> Value {
    (0..a.dim())
        .map(|i| {
            let b = a.bigrading(i);
            json!({
                "label": a.label(i),
                "h": b.h,
                "q": b.q,
                "left": a.left_vertex(i),
                "right": a.right_vertex(i),
            })
        })
        .collect()
}

pub(crate) fn dump_algebra(strands: usize) -> Result<Section> {
    anyhow::ensure!(strands >= 2, "--strands must be at least 2");
    let ring = KoszulPair::new(strands - 1)?;
    let j = json!({
        "mode": "dump",
        "level": "algebra",
        "n": ring.n(),
        "a": algebra_json(&ring.a),
        "b": algebra_json(&ring.b),
    });
    let mut text = String::new();
    for (name, alg) in [("A", &ring.a), ("B", &ring.b)] {
        let _ = writeln!(text, "{name}_{} basis ({} elements):", ring.n(), alg.dim());
        for i in 0..alg.dim() {
            let _ = writeln!(text, "  {} {}", alg.label(i), alg.bigrading(i));
        }
    }
    Ok(Section {
        json: j,
        text,
        passed: true,
    })
}

fn dump_word(ctx: &Ctx, engine: &mut Skh, w: &BraidWord, warnings: &mut Vec<String>) -> Result<Section> {
    let hc = ctx.hochschild(engine, w, warnings)?;
    let mut j = json!({
        "mode": "dump",
        "braid": w.to_string(),
        "strands": w.strands(),
        "route": route_name(ctx.route(w)),
        "hochschild": complex_json(&hc.complex, &hc.labels, None),
        "skh_shift": { "h": skh::closure_shift(w).h, "q": skh::closure_shift(w).q },
    });
    let mut text = format!(
        "Hochschild complex of the mirror of {} ({} generators)\n",
        braid_text(w),
        hc.len()
    );
    push_complex_text(&mut text, &hc.complex, &hc.labels, None);
    if ctx.cfg.dump_level == DumpLevel::Doubled {
        let t = ctx.tate(engine, w, warnings)?;
        let d = t.doubled();
        j["level"] = json!("doubled");
        j["doubled"] = complex_json(&d.complex, &d.labels, Some(&d.tau));
        let _ = writeln!(text, "Doubled complex, Tate E0 ({} generators)", d.len());
        push_complex_text(&mut text, &d.complex, &d.labels, Some(&d.tau));
    } else {
        j["level"] = json!("complex");
    }
    Ok(Section {
        json: j,
        text,
        passed: true,
    })
}

fn push_complex_text(s: &mut String, c: &ChainComplex, labels: &[String], tau: Option<&[u32]>) {
    for g in 0..c.len() {
        let _ = write!(s, "  {} {}", labels[g], c.grading()[g]);
        if let Some(tau) = tau {
            let _ = write!(s, "  tau {}", labels[tau[g] as usize]);
        }
        let image: Vec<&str> = c.image(g).iter().map(|&t| labels[t as usize].as_str()).collect();
        if !image.is_empty() {
            let _ = write!(s, "  d = {}", image.join(" + "));
        }
        s.push('\n');
    }
}

pub(crate) fn pi_formal(n: usize, max_iter: usize) -> Result<Section> {
    let report = pi_formality_replay(n, max_iter)?;
    let labels = |v: &[tate::QuadTensor]| v.iter().map(|t| report.label(t)).collect::<Vec<_>>();
    let shapes = |v: &[tate::QuadTensor]| v.iter().map(|t| report.shape(t)).collect::<Vec<_>>();
    let steps: Vec<Value> = report
        .steps
        .iter()
        .enumerate()
        .map(|(k, s)| {
            json!({
                "step": k,
                "boundary": labels(&s.boundary),
                "representative": labels(&s.representative),
                "representative_shapes": shapes(&s.representative),
            })
        })
        .collect();
    let j = json!({
        "mode": "pi-formal",
        "n": n,
        "start": labels(&report.start),
        "steps": steps,
        "terminated": report.terminated,
    });
    let mut text = format!(
        "pi-formality replay over A_{n}\n  start: {}\n",
        labels(&report.start).join(" + ")
    );
    for (k, s) in report.steps.iter().enumerate() {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for sh in shapes(&s.representative) {
            *counts.entry(sh).or_default() += 1;
        }
        let grouped: Vec<String> = counts.iter().map(|(sh, c)| format!("{c}×{sh}")).collect();
        let _ = writeln!(
            text,
            "  step {k}: boundary has {} terms, representative {} terms: {}",
            s.boundary.len(),
            s.representative.len(),
            grouped.join(" + ")
        );
    }
    let _ = writeln!(text, "  terminates at 0 after {} factorings", report.steps.len());
    Ok(Section {
        json: j,
        text,
        passed: report.terminated,
    })
}
