//! The graded dual `B_n*` of `B_n`, viewed as a coalgebra.
//!
//! Only the part of the comultiplication that splits off one letter is
//! stored, since that is all the Koszul differential uses. For a dual
//! element `β*` the *top* splits are the factorizations `β = γ·η` with `η`
//! a single arrow applied first, and the *bottom* splits are `β = η·γ` with
//! `η` applied last. Each split also records the `A_n` arrow paired with
//! `η` (`w` with `x`, `y` with `ι`), which is the arrow inserted into the
//! neighbouring tensor factor.

use std::collections::HashMap;

use crate::{Bigrading, Family, PathAlgebra, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualElem {
    /// Index of the `B_n` basis path this element is dual to.
    pub dual_of: usize,
    /// Tail of the dual path (its upper vertex).
    pub left: usize,
    /// Head of the dual path (its lower vertex).
    pub right: usize,
    pub nilpotent: bool,
    pub len: usize,
    pub bigrading: Bigrading,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    /// The dual element of the remaining factor `γ`.
    pub rest: usize,
    /// The `B_n` arrow that was split off.
    pub letter: usize,
    /// The `A_n` arrow paired with `letter`.
    pub partner: usize,
}

#[derive(Debug, Clone)]
pub struct KoszulDual {
    n: usize,
    elems: Vec<DualElem>,
    top: Vec<Vec<Split>>,
    bottom: Vec<Vec<Split>>,
    lookup: HashMap<(usize, usize, bool), usize>,
}

/// The `A_n` arrow whose dual is the `B_n` arrow `b`.
///
/// Arrow ids sit in pairs `2i` (plain) and `2i + 1` (nilpotent) in both
/// algebras, and `w` pairs with `x` while `y` pairs with `ι`.
pub fn partner_arrow(b: usize) -> usize {
    b ^ 1
}

/// Builds `B_n*` from `B_n`.
pub fn dualize(b: &PathAlgebra) -> Result<KoszulDual, QuiverError> {
    if b.family() != Family::B {
        return Err(QuiverError::NotB);
    }
    let elems: Vec<DualElem> = b
        .basis()
        .iter()
        .enumerate()
        .map(|(i, p)| DualElem {
            dual_of: i,
            left: p.tail,
            right: p.head,
            nilpotent: p.nilpotent,
            len: p.len(),
            bigrading: -p.bigrading,
            label: format!("{}^*", p.label),
        })
        .collect();
    let mut top = vec![Vec::new(); elems.len()];
    let mut bottom = vec![Vec::new(); elems.len()];
    for beta in 0..b.dim() {
        for letter in 0..b.arrow_count() {
            let eta = b.arrow_element(letter);
            for gamma in 0..b.dim() {
                if b.mul(gamma, eta) == Some(beta) {
                    top[beta].push(Split {
                        rest: gamma,
                        letter,
                        partner: partner_arrow(letter),
                    });
                }
                if b.mul(eta, gamma) == Some(beta) {
                    bottom[beta].push(Split {
                        rest: gamma,
                        letter,
                        partner: partner_arrow(letter),
                    });
                }
            }
        }
    }
    let lookup = elems
        .iter()
        .enumerate()
        .map(|(i, e)| ((e.left, e.right, e.nilpotent), i))
        .collect();
    Ok(KoszulDual {
        n: b.n(),
        elems,
        top,
        bottom,
        lookup,
    })
}

impl KoszulDual {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[DualElem] {
        &self.elems
    }

    pub fn elem(&self, i: usize) -> &DualElem {
        &self.elems[i]
    }

    pub fn left_vertex(&self, i: usize) -> usize {
        self.elems[i].left
    }

    pub fn right_vertex(&self, i: usize) -> usize {
        self.elems[i].right
    }

    pub fn bigrading(&self, i: usize) -> Bigrading {
        self.elems[i].bigrading
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elems[i].label
    }

    /// `1` for vertex idempotents, otherwise the label of the dual path.
    pub fn short_label(&self, i: usize) -> &str {
        let label = &self.elems[i].label;
        if self.is_idempotent(i) {
            "1"
        } else {
            label.strip_suffix("^*").unwrap_or(label)
        }
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.elems[i].len == 0
    }

    /// Vertex idempotent `e_v*`.
    pub fn unit(&self, v: usize) -> usize {
        self.lookup[&(v, v, false)]
    }

    pub fn find(&self, left: usize, right: usize, nilpotent: bool) -> Option<usize> {
        self.lookup.get(&(left, right, nilpotent)).copied()
    }

    pub fn top_splits(&self, i: usize) -> &[Split] {
        &self.top[i]
    }

    pub fn bottom_splits(&self, i: usize) -> &[Split] {
        &self.bottom[i]
    }

    /// The dual pairing between `B_n*` and `B_n` on basis elements.
    pub fn pairing(&self, dual: usize, b: usize) -> bool {
        self.elems[dual].dual_of == b
    }

    /// Elements with the given left and right vertices.
    pub fn between(&self, l: usize, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| self.elems[i].left == l && self.elems[i].right == r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradings_of_dual_arrows() {
        let b = PathAlgebra::build_b(1).unwrap();
        let d = dualize(&b).unwrap();
        let w = d.find(1, 0, false).unwrap();
        let y = d.find(1, 0, true).unwrap();
        assert_eq!(d.bigrading(w), Bigrading::new(-2, -1));
        assert_eq!(d.bigrading(y), Bigrading::new(-1, 1));
        assert_eq!(d.label(w), "w10^*");
    }

    #[test]
    fn rejects_a() {
        let a = PathAlgebra::build_a(1).unwrap();
        assert_eq!(dualize(&a).unwrap_err(), QuiverError::NotB);
    }

    #[test]
    fn length_two_element_has_two_splits_each_side() {
        let b = PathAlgebra::build_b(2).unwrap();
        let d = dualize(&b).unwrap();
        let wy = d.find(2, 0, true).unwrap();
        assert_eq!(d.top_splits(wy).len(), 2);
        assert_eq!(d.bottom_splits(wy).len(), 2);
        let ww = d.find(2, 0, false).unwrap();
        let partners: Vec<usize> = d.top_splits(ww).iter().map(|s| s.partner).collect();
        // w21 is split off the top and pairs with x12.
        assert_eq!(partners, [3]);
    }
}
