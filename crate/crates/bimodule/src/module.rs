use std::collections::BTreeMap;
use std::sync::Arc;

use f2linalg::vec::normalize;
use f2linalg::Bigrading;
use quiver::{KoszulPair, PathAlgebra};

use crate::BimoduleError;

/// A basis element of a bimodule, living in `e_left · M · e_right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub left: usize,
    pub right: usize,
    pub bigrading: Bigrading,
    pub name: String,
}

/// A finite dg bimodule over `A_n`.
///
/// The actions are stored on arrows only; `left[α][g]` is `α·g` and
/// `right[α][g]` is `g·α`, each as a sorted list of generators. Actions of
/// longer paths are composites of these.
#[derive(Debug, Clone)]
pub struct DgBimodule {
    pub(crate) ring: Arc<KoszulPair>,
    pub(crate) gens: Vec<Generator>,
    pub(crate) left: Vec<Vec<Vec<u32>>>,
    pub(crate) right: Vec<Vec<Vec<u32>>>,
    pub(crate) d: Vec<Vec<u32>>,
}

impl DgBimodule {
    /// Assembles a bimodule from raw tables and checks every axiom.
    pub fn from_parts(
        ring: Arc<KoszulPair>,
        gens: Vec<Generator>,
        left: Vec<Vec<Vec<u32>>>,
        right: Vec<Vec<Vec<u32>>>,
        d: Vec<Vec<u32>>,
    ) -> Result<Self, BimoduleError> {
        let m = Self::from_parts_unchecked(ring, gens, left, right, d);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts_unchecked(
        ring: Arc<KoszulPair>,
        gens: Vec<Generator>,
        left: Vec<Vec<Vec<u32>>>,
        right: Vec<Vec<Vec<u32>>>,
        d: Vec<Vec<u32>>,
    ) -> Self {
        let norm = |t: Vec<Vec<Vec<u32>>>| -> Vec<Vec<Vec<u32>>> {
            t.into_iter()
                .map(|per| per.into_iter().map(normalize).collect())
                .collect()
        };
        Self {
            left: norm(left),
            right: norm(right),
            d: d.into_iter().map(normalize).collect(),
            ring,
            gens,
        }
    }

    /// The zero bimodule.
    pub fn zero(ring: Arc<KoszulPair>) -> Self {
        let arrows = ring.a.arrow_count();
        Self {
            ring,
            gens: Vec::new(),
            left: vec![Vec::new(); arrows],
            right: vec![Vec::new(); arrows],
            d: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<KoszulPair> {
        &self.ring
    }

    pub fn algebra(&self) -> &PathAlgebra {
        &self.ring.a
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, g: usize) -> &Generator {
        &self.gens[g]
    }

    pub fn differential(&self, g: usize) -> &[u32] {
        &self.d[g]
    }

    pub fn arrow_left(&self, arrow: usize, g: usize) -> &[u32] {
        &self.left[arrow][g]
    }

    pub fn arrow_right(&self, g: usize, arrow: usize) -> &[u32] {
        &self.right[arrow][g]
    }

    /// `a · g` for a basis element `a` of `A_n`.
    pub fn act_left(&self, a: usize, g: usize) -> Vec<u32> {
        let path = self.algebra().path(a);
        if path.is_idempotent() {
            return if self.gens[g].left == path.head {
                vec![g as u32]
            } else {
                Vec::new()
            };
        }
        let mut v = vec![g as u32];
        for &arrow in path.word.iter().rev() {
            v = self.apply(&self.left[arrow], &v);
            if v.is_empty() {
                break;
            }
        }
        v
    }

    /// `g · a` for a basis element `a` of `A_n`.
    pub fn act_right(&self, g: usize, a: usize) -> Vec<u32> {
        let path = self.algebra().path(a);
        if path.is_idempotent() {
            return if self.gens[g].right == path.tail {
                vec![g as u32]
            } else {
                Vec::new()
            };
        }
        let mut v = vec![g as u32];
        for &arrow in &path.word {
            v = self.apply(&self.right[arrow], &v);
            if v.is_empty() {
                break;
            }
        }
        v
    }

    fn apply(&self, table: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
        let mut acc = Vec::new();
        for &x in v {
            acc.extend_from_slice(&table[x as usize]);
        }
        normalize(acc)
    }

    fn apply_d(&self, v: &[u32]) -> Vec<u32> {
        self.apply(&self.d, v)
    }

    /// Translates every bigrading by `(dh, dq)`.
    pub fn shift(&self, dh: i32, dq: i32) -> Self {
        let mut out = self.clone();
        for g in &mut out.gens {
            g.bigrading = g.bigrading.shifted(dh, dq);
        }
        out
    }

    /// Number of generators per bigrading.
    pub fn graded_dims(&self) -> BTreeMap<Bigrading, usize> {
        let mut out = BTreeMap::new();
        for g in &self.gens {
            *out.entry(g.bigrading).or_default() += 1;
        }
        out
    }

    /// Checks vertex and grading compatibility of the actions, the defining
    /// relations of `A_n`, that the two actions commute, and that `d` has
    /// degree `(1, 0)`, squares to zero and commutes with both actions.
    pub fn validate(&self) -> Result<(), BimoduleError> {
        let a = self.algebra();
        let arrows = &a.quiver().arrows;
        let len = self.len();
        if self.d.len() != len || self.left.len() != arrows.len() || self.right.len() != arrows.len() {
            return Err(BimoduleError::Shape);
        }
        for (k, arrow) in arrows.iter().enumerate() {
            if self.left[k].len() != len || self.right[k].len() != len {
                return Err(BimoduleError::Shape);
            }
            for g in 0..len {
                let src = &self.gens[g];
                for &t in &self.left[k][g] {
                    let t = &self.gens[t as usize];
                    if src.left != arrow.tail
                        || t.left != arrow.head
                        || t.right != src.right
                        || t.bigrading != src.bigrading + arrow.bigrading
                    {
                        return Err(BimoduleError::BadAction {
                            gen: g,
                            arrow: k,
                            side: "left",
                        });
                    }
                }
                for &t in &self.right[k][g] {
                    let t = &self.gens[t as usize];
                    if src.right != arrow.head
                        || t.right != arrow.tail
                        || t.left != src.left
                        || t.bigrading != src.bigrading + arrow.bigrading
                    {
                        return Err(BimoduleError::BadAction {
                            gen: g,
                            arrow: k,
                            side: "right",
                        });
                    }
                }
            }
        }
        // Relations: composable pairs with equal (or vanishing) products in
        // A_n must act identically.
        for g in 0..len {
            let mut by_product_l: BTreeMap<Option<usize>, Vec<Vec<u32>>> = BTreeMap::new();
            let mut by_product_r: BTreeMap<Option<usize>, Vec<Vec<u32>>> = BTreeMap::new();
            for (k1, a1) in arrows.iter().enumerate() {
                for (k2, a2) in arrows.iter().enumerate() {
                    if a2.tail != a1.head {
                        continue;
                    }
                    let product = a.mul(a.arrow_element(k2), a.arrow_element(k1));
                    if self.gens[g].left == a1.tail {
                        let v = self.apply(&self.left[k2], &self.left[k1][g]);
                        by_product_l.entry(product).or_default().push(v);
                    }
                    if self.gens[g].right == a2.head {
                        let v = self.apply(&self.right[k1], &self.right[k2][g]);
                        by_product_r.entry(product).or_default().push(v);
                    }
                }
            }
            for (product, vs) in by_product_l.iter().chain(&by_product_r) {
                let consistent = match product {
                    None => vs.iter().all(Vec::is_empty),
                    Some(_) => vs.windows(2).all(|w| w[0] == w[1]),
                };
                if !consistent {
                    return Err(BimoduleError::RelationViolated(g));
                }
            }
        }
        for g in 0..len {
            for k1 in 0..arrows.len() {
                for k2 in 0..arrows.len() {
                    let lr = self.apply(&self.right[k2], &self.left[k1][g]);
                    let rl = self.apply(&self.left[k1], &self.right[k2][g]);
                    if lr != rl {
                        return Err(BimoduleError::ActionsDoNotCommute(g));
                    }
                }
            }
        }
        for g in 0..len {
            for &t in &self.d[g] {
                if self.gens[t as usize].bigrading != self.gens[g].bigrading.shifted(1, 0)
                    || self.gens[t as usize].left != self.gens[g].left
                    || self.gens[t as usize].right != self.gens[g].right
                {
                    return Err(BimoduleError::BadDifferential(g));
                }
            }
            if !self.apply_d(&self.d[g]).is_empty() {
                return Err(BimoduleError::NotSquareZero(g));
            }
            for k in 0..arrows.len() {
                let dl = self.apply_d(&self.left[k][g]);
                let ld = self.apply(&self.left[k], &self.d[g]);
                let dr = self.apply_d(&self.right[k][g]);
                let rd = self.apply(&self.right[k], &self.d[g]);
                if dl != ld || dr != rd {
                    return Err(BimoduleError::NotDgMap(g));
                }
            }
        }
        Ok(())
    }

    /// The action tables of `self` and `other` agree after relabelling by
    /// `perm` (`perm[g]` is the image of generator `g`).
    pub fn is_isomorphic_via(&self, other: &Self, perm: &[usize]) -> bool {
        if self.len() != other.len() || perm.len() != self.len() {
            return false;
        }
        let map = |v: &[u32]| {
            let mut out: Vec<u32> = v.iter().map(|&x| perm[x as usize] as u32).collect();
            out.sort_unstable();
            out
        };
        (0..self.len()).all(|g| {
            let h = perm[g];
            self.gens[g].bigrading == other.gens[h].bigrading
                && map(&self.d[g]) == other.d[h]
                && (0..self.left.len())
                    .all(|k| map(&self.left[k][g]) == other.left[k][h] && map(&self.right[k][g]) == other.right[k][h])
        })
    }
}
