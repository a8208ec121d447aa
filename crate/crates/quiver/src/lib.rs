//! The bigraded quiver algebras `A_n` and `B_n` and the Koszul dual
//! coalgebra `B_n*`.
//!
//! `A_n` lives on the linear quiver with vertices `0..=n` and two arrows
//! `ι_{i,i+1}`, `x_{i,i+1}` from `i` to `i+1`. It has relations
//! `ι·x = x·ι` and `x·x = 0`. `B_n` has the reversed arrows `w_{i+1,i}` and
//! `y_{i+1,i}`, with `w·y = y·w` and `y·y = 0`. In both, a product `ab`
//! means "first `b`, then `a`". An element is written `e_head · a · e_tail`,
//! so its left vertex is its head and its right vertex its tail.
//!
//! After rewriting, a nonzero path is determined by its endpoints and by
//! whether it contains the nilpotent letter (`x` or `y`). The normal form
//! puts that letter leftmost.

mod dual;

pub use dual::{dualize, partner_arrow, DualElem, KoszulDual, Split};
pub use f2linalg::Bigrading;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("n must be at least 1 (got {0})")]
    Unsupported(usize),
    #[error("dualize expects a B_n algebra")]
    NotB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
}

/// Whether a letter commutes past its neighbours (`ι`, `w`) or squares to
/// zero (`x`, `y`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LetterKind {
    Plain,
    Nilpotent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub tail: usize,
    pub head: usize,
    pub kind: LetterKind,
    pub bigrading: Bigrading,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

/// A normal-form basis path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub tail: usize,
    pub head: usize,
    pub nilpotent: bool,
    /// Arrow ids in written order: the leftmost letter is applied last.
    pub word: Vec<usize>,
    pub bigrading: Bigrading,
    pub label: String,
}

// An empty path is an idempotent, so `is_idempotent` plays the role of
// `is_empty`.
#[allow(clippy::len_without_is_empty)]
impl Path {
    /// Number of arrows.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_idempotent(&self) -> bool {
        self.word.is_empty()
    }
}

/// One of `A_n`, `B_n` with its multiplication table.
#[derive(Debug, Clone)]
pub struct PathAlgebra {
    family: Family,
    n: usize,
    quiver: Quiver,
    basis: Vec<Path>,
    lookup: HashMap<(usize, usize, bool), usize>,
    mult: Vec<Option<u32>>,
}

pub(crate) fn vertex_pair(a: usize, b: usize) -> String {
    if a < 10 && b < 10 {
        format!("{a}{b}")
    } else {
        format!("{a}_{b}")
    }
}

impl PathAlgebra {
    pub fn build_a(n: usize) -> Result<Self, QuiverError> {
        Self::build(Family::A, n)
    }

    pub fn build_b(n: usize) -> Result<Self, QuiverError> {
        Self::build(Family::B, n)
    }

    fn build(family: Family, n: usize) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::Unsupported(n));
        }
        let mut arrows = Vec::with_capacity(2 * n);
        for i in 0..n {
            let pair = match family {
                Family::A => vertex_pair(i, i + 1),
                Family::B => vertex_pair(i + 1, i),
            };
            let (tail, head) = match family {
                Family::A => (i, i + 1),
                Family::B => (i + 1, i),
            };
            let (plain, nil, gp, gn) = match family {
                Family::A => ("i", "x", Bigrading::new(0, 1), Bigrading::new(-1, -1)),
                // Negatives of the B* gradings, so that B pairs with B* in degree 0.
                Family::B => ("w", "y", Bigrading::new(2, 1), Bigrading::new(1, -1)),
            };
            arrows.push(Arrow {
                label: format!("{plain}{pair}"),
                tail,
                head,
                kind: LetterKind::Plain,
                bigrading: gp,
            });
            arrows.push(Arrow {
                label: format!("{nil}{pair}"),
                tail,
                head,
                kind: LetterKind::Nilpotent,
                bigrading: gn,
            });
        }
        let quiver = Quiver {
            vertex_count: n + 1,
            arrows,
        };

        let mut basis = Vec::new();
        for tail in 0..=n {
            for head in 0..=n {
                let ok = match family {
                    Family::A => head >= tail,
                    Family::B => head <= tail,
                };
                if !ok {
                    continue;
                }
                let nil_options: &[bool] = if head == tail { &[false] } else { &[false, true] };
                for &nil in nil_options {
                    basis.push(Self::normal_path(&quiver, family, tail, head, nil));
                }
            }
        }
        let lookup = basis
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.tail, p.head, p.nilpotent), i))
            .collect::<HashMap<_, _>>();
        let d = basis.len();
        let mut mult = vec![None; d * d];
        for (ia, a) in basis.iter().enumerate() {
            for (ib, b) in basis.iter().enumerate() {
                if a.tail != b.head || (a.nilpotent && b.nilpotent) {
                    continue;
                }
                let key = (b.tail, a.head, a.nilpotent || b.nilpotent);
                mult[ia * d + ib] = lookup.get(&key).map(|&i| i as u32);
            }
        }
        Ok(Self {
            family,
            n,
            quiver,
            basis,
            lookup,
            mult,
        })
    }

    fn normal_path(quiver: &Quiver, family: Family, tail: usize, head: usize, nil: bool) -> Path {
        // Steps listed in application order, starting at `tail`.
        let steps: Vec<usize> = match family {
            Family::A => (tail..head).collect(),
            Family::B => (head..tail).rev().collect(),
        };
        let mut word: Vec<usize> = steps.iter().map(|&i| 2 * i).collect();
        if nil {
            *word.last_mut().expect("nonempty path") += 1;
        }
        word.reverse();
        let bigrading = word
            .iter()
            .fold(Bigrading::ZERO, |acc, &a| acc + quiver.arrows[a].bigrading);
        let label = if word.is_empty() {
            format!("e{tail}")
        } else {
            word.iter()
                .map(|&a| quiver.arrows[a].label.as_str())
                .collect::<Vec<_>>()
                .join("*")
        };
        Path {
            tail,
            head,
            nilpotent: nil,
            word,
            bigrading,
            label,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 1
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn bigrading(&self, i: usize) -> Bigrading {
        self.basis[i].bigrading
    }

    /// Head of the path, i.e. the vertex idempotent acting on the left.
    pub fn left_vertex(&self, i: usize) -> usize {
        self.basis[i].head
    }

    /// Tail of the path, i.e. the vertex idempotent acting on the right.
    pub fn right_vertex(&self, i: usize) -> usize {
        self.basis[i].tail
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.lookup[&(v, v, false)]
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.basis[i].is_idempotent()
    }

    /// Basis element of a single arrow.
    pub fn arrow_element(&self, arrow: usize) -> usize {
        let a = &self.quiver.arrows[arrow];
        self.lookup[&(a.tail, a.head, a.kind == LetterKind::Nilpotent)]
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }

    /// Arrow from vertex `i` to its neighbour in the quiver's direction.
    pub fn plain_arrow(&self, i: usize) -> usize {
        2 * i
    }

    pub fn nilpotent_arrow(&self, i: usize) -> usize {
        2 * i + 1
    }

    pub fn find(&self, tail: usize, head: usize, nilpotent: bool) -> Option<usize> {
        self.lookup.get(&(tail, head, nilpotent)).copied()
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|p| p.label == label)
    }

    /// The product `a·b` (apply `b`, then `a`), or `None` if it vanishes.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.mult[a * self.dim() + b].map(|x| x as usize)
    }

    /// Basis elements with left vertex `l` and right vertex `r`.
    pub fn between(&self, l: usize, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| self.left_vertex(i) == l && self.right_vertex(i) == r)
    }

    /// Basis elements that are not idempotents.
    pub fn radical(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(move |&i| !self.is_idempotent(i))
    }
}

impl fmt::Display for PathAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::A => "A",
            Family::B => "B",
        };
        write!(f, "{name}_{} (dim {})", self.n, self.dim())
    }
}

/// `A_n` together with `B_n` and the dual coalgebra `B_n*`, the data every
/// bimodule computation over `A_n` needs.
#[derive(Debug, Clone)]
pub struct KoszulPair {
    pub a: PathAlgebra,
    pub b: PathAlgebra,
    pub dual: KoszulDual,
}

impl KoszulPair {
    pub fn new(n: usize) -> Result<Self, QuiverError> {
        let a = PathAlgebra::build_a(n)?;
        let b = PathAlgebra::build_b(n)?;
        let dual = dualize(&b)?;
        Ok(Self { a, b, dual })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }
}
