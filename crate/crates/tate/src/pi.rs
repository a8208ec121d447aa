//! Mechanical replay of the computation showing that every even
//! differential vanishes on the class of `1`.
//!
//! The space is `A ⊗ B ⊗ A ⊗ B / ∼`, where the relation
//! `a1⊗b1⊗a2⊗b2·z ∼ z·a1⊗b1⊗a2⊗b2` lets us use tensors
//! `(a1|b1|a2|b2)` of basis elements whose neighbouring vertices match
//! cyclically. With `(ξ, ξ')` running over the pairs `(ι, y)` and `(x, w)`
//! of dual arrows,
//!
//! ```text
//! ∂(a1|b1|a2|b2) = Σ (a1ξ|ξ'b1|a2|b2) + (a1|b1ξ'|ξa2|b2)
//!                  + (a1|b1|a2ξ|ξ'b2) + (ξa1|b1|a2|b2ξ').
//! ```
//!
//! Starting from `Σ_v (v|v|v|v)`, each step writes `∂(rep)` as
//! `(1 + τ)(rep')` and continues with `rep'`.

use std::collections::BTreeSet;

use quiver::{PathAlgebra, QuiverError};

use crate::TateError;

/// A tensor `(a1|b1|a2|b2)` with `a_i ∈ A_n` and `b_i ∈ B_n` basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadTensor {
    pub a1: usize,
    pub b1: usize,
    pub a2: usize,
    pub b2: usize,
}

impl QuadTensor {
    pub fn tau(self) -> Self {
        Self {
            a1: self.a2,
            b1: self.b2,
            a2: self.a1,
            b2: self.b1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiStep {
    /// `∂` of the previous representative.
    pub boundary: Vec<QuadTensor>,
    /// The chosen preimage under `1 + τ`.
    pub representative: Vec<QuadTensor>,
}

#[derive(Debug, Clone)]
pub struct PiFormalityReport {
    pub n: usize,
    pub start: Vec<QuadTensor>,
    pub steps: Vec<PiStep>,
    /// Whether `∂` of the final representative vanished.
    pub terminated: bool,
    a: PathAlgebra,
    b: PathAlgebra,
}

impl PiFormalityReport {
    pub fn a(&self) -> &PathAlgebra {
        &self.a
    }

    pub fn b(&self) -> &PathAlgebra {
        &self.b
    }

    /// Full label such as `(x12*i01|y21|i12|y10)`.
    pub fn label(&self, t: &QuadTensor) -> String {
        format!(
            "({}|{}|{}|{})",
            self.a.label(t.a1),
            self.b.label(t.b1),
            self.a.label(t.a2),
            self.b.label(t.b2)
        )
    }

    /// Length-only label such as `(x2|y3|x2|y1)`.
    pub fn shape(&self, t: &QuadTensor) -> String {
        shape_label(&self.a, &self.b, t)
    }
}

fn letter_shape(alg: &PathAlgebra, i: usize, plain: char, nil: char) -> String {
    let p = alg.path(i);
    if p.is_idempotent() {
        "1".to_string()
    } else {
        format!("{}{}", if p.nilpotent { nil } else { plain }, p.len())
    }
}

/// The label that only records the letter type and length of each factor.
pub fn shape_label(a: &PathAlgebra, b: &PathAlgebra, t: &QuadTensor) -> String {
    format!(
        "({}|{}|{}|{})",
        letter_shape(a, t.a1, 'i', 'x'),
        letter_shape(b, t.b1, 'w', 'y'),
        letter_shape(a, t.a2, 'i', 'x'),
        letter_shape(b, t.b2, 'w', 'y')
    )
}

struct Replay {
    a: PathAlgebra,
    b: PathAlgebra,
    /// `(ξ, ξ')` as basis indices of `A` and `B`.
    pairs: Vec<(usize, usize)>,
}

impl Replay {
    fn new(n: usize) -> Result<Self, QuiverError> {
        let a = PathAlgebra::build_a(n)?;
        let b = PathAlgebra::build_b(n)?;
        let pairs = (0..a.arrow_count())
            .map(|k| (a.arrow_element(k), b.arrow_element(quiver::partner_arrow(k))))
            .collect();
        Ok(Self { a, b, pairs })
    }

    fn boundary(&self, t: QuadTensor) -> Vec<QuadTensor> {
        let (a, b) = (&self.a, &self.b);
        let mut out = Vec::new();
        for &(xi, xp) in &self.pairs {
            let candidates = [
                (a.mul(t.a1, xi), b.mul(xp, t.b1), Some(t.a2), Some(t.b2)),
                (Some(t.a1), b.mul(t.b1, xp), a.mul(xi, t.a2), Some(t.b2)),
                (Some(t.a1), Some(t.b1), a.mul(t.a2, xi), b.mul(xp, t.b2)),
                (a.mul(xi, t.a1), Some(t.b1), Some(t.a2), b.mul(t.b2, xp)),
            ];
            for c in candidates {
                if let (Some(a1), Some(b1), Some(a2), Some(b2)) = c {
                    out.push(QuadTensor { a1, b1, a2, b2 });
                }
            }
        }
        out
    }

    fn boundary_of(&self, v: &BTreeSet<QuadTensor>) -> BTreeSet<QuadTensor> {
        let mut acc = BTreeSet::new();
        for &t in v {
            for s in self.boundary(t) {
                if !acc.remove(&s) {
                    acc.insert(s);
                }
            }
        }
        acc
    }

    /// Ordering used to pick one tensor from each τ-orbit: a non-unit
    /// first `B` factor, then the longer first half, then the longer first
    /// `A` factor, then an `x` letter in the first `A` factor.
    fn preference(&self, t: &QuadTensor) -> (bool, usize, usize, bool, QuadTensor) {
        let (p1, q1) = (self.a.path(t.a1), self.b.path(t.b1));
        (!q1.is_idempotent(), p1.len() + q1.len(), p1.len(), p1.nilpotent, *t)
    }

    fn factor(&self, c: &BTreeSet<QuadTensor>, step: usize) -> Result<BTreeSet<QuadTensor>, TateError> {
        let mut rep = BTreeSet::new();
        for &t in c {
            let s = t.tau();
            if s == t || !c.contains(&s) {
                return Err(TateError::NotPiFormal { step });
            }
            if self.preference(&t) > self.preference(&s) {
                rep.insert(t);
            }
        }
        Ok(rep)
    }
}

/// Whenever `(ξ, ξ')` and `(η, η')` are dual arrow pairs with `ξη ≠ 0` and
/// `η'ξ' ≠ 0`, the products are an `x` word and a `y` word, and each such
/// pair of products arises exactly twice.
pub fn xy_phenomenon_holds(n: usize) -> Result<bool, QuiverError> {
    let r = Replay::new(n)?;
    let mut counts: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    for &(xi, xp) in &r.pairs {
        for &(eta, ep) in &r.pairs {
            if let (Some(p), Some(q)) = (r.a.mul(xi, eta), r.b.mul(ep, xp)) {
                if !r.a.path(p).nilpotent || !r.b.path(q).nilpotent {
                    return Ok(false);
                }
                *counts.entry((p, q)).or_default() += 1;
            }
        }
    }
    Ok(counts.values().all(|&c| c == 2))
}

/// Runs the replay for `A_n`, stopping with an error if some boundary is
/// not in the image of `1 + τ` or if `max_iter` steps do not reach zero.
pub fn pi_formality_replay(n: usize, max_iter: usize) -> Result<PiFormalityReport, TateError> {
    let r = Replay::new(n)?;
    let start: BTreeSet<QuadTensor> = (0..r.a.vertex_count())
        .map(|v| {
            let (e, f) = (r.a.idempotent(v), r.b.idempotent(v));
            QuadTensor {
                a1: e,
                b1: f,
                a2: e,
                b2: f,
            }
        })
        .collect();
    let mut rep = start.clone();
    let mut steps = Vec::new();
    for step in 0..=max_iter {
        let c = r.boundary_of(&rep);
        if c.is_empty() {
            return Ok(PiFormalityReport {
                n,
                start: start.into_iter().collect(),
                steps,
                terminated: true,
                a: r.a,
                b: r.b,
            });
        }
        if step == max_iter {
            break;
        }
        rep = r.factor(&c, step)?;
        steps.push(PiStep {
            boundary: c.into_iter().collect(),
            representative: rep.iter().copied().collect(),
        });
    }
    Err(TateError::ReplayUnfinished { max_iter })
}
