//! Binary relations over `0..size` as row bitsets.

use std::fmt;

/// A binary relation on a finite carrier `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    size: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        let words_per_row = size.div_ceil(64).max(1);
        Relation {
            size,
            words_per_row,
            bits: vec![0; words_per_row * size],
        }
    }

    pub fn full(size: usize) -> Self {
        let mut r = Relation::empty(size);
        for a in 0..size {
            for b in 0..size {
                r.insert(a, b);
            }
        }
        r
    }

    pub fn identity(size: usize) -> Self {
        let mut r = Relation::empty(size);
        for a in 0..size {
            r.insert(a, a);
        }
        r
    }

    pub fn diversity(size: usize) -> Self {
        Relation::identity(size).complement()
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(size);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn slot(&self, a: usize, b: usize) -> (usize, u64) {
        assert!(a < self.size && b < self.size, "pair outside the carrier");
        (a * self.words_per_row + b / 64, 1u64 << (b % 64))
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let (w, m) = self.slot(a, b);
        self.bits[w] & m != 0
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        let (w, m) = self.slot(a, b);
        self.bits[w] |= m;
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words_per_row..(a + 1) * self.words_per_row]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if self.contains(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn zip(&self, other: &Relation, f: impl Fn(u64, u64) -> u64) -> Relation {
        assert_eq!(self.size, other.size, "relations over different carriers");
        Relation {
            size: self.size,
            words_per_row: self.words_per_row,
            bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn complement(&self) -> Relation {
        let mut out = Relation::empty(self.size);
        for a in 0..self.size {
            for b in 0..self.size {
                if !self.contains(a, b) {
                    out.insert(a, b);
                }
            }
        }
        out
    }

    pub fn converse(&self) -> Relation {
        let mut out = Relation::empty(self.size);
        for (a, b) in self.pairs() {
            out.insert(b, a);
        }
        out
    }

    pub fn meet(&self, other: &Relation) -> Relation {
        self.zip(other, |a, b| a & b)
    }

    pub fn join(&self, other: &Relation) -> Relation {
        self.zip(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &Relation) -> Relation {
        self.zip(other, |a, b| a & !b)
    }

    /// Relative product: `(a, b)` such that some `c` has `(a, c)` in `self`
    /// and `(c, b)` in `other`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.size, other.size, "relations over different carriers");
        let mut out = Relation::empty(self.size);
        let w = self.words_per_row;
        for a in 0..self.size {
            for c in 0..self.size {
                if self.contains(a, c) {
                    let src = other.row(c).to_vec();
                    for (k, word) in src.into_iter().enumerate() {
                        out.bits[a * w + k] |= word;
                    }
                }
            }
        }
        out
    }

    /// Relative sum: `(a, b)` such that every `c` has `(a, c)` in `self` or
    /// `(c, b)` in `other`.
    pub fn rel_sum(&self, other: &Relation) -> Relation {
        self.complement().compose(&other.complement()).complement()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0)
    }

    /// Smallest pair (in row-major order) of `self` missing from `other`.
    pub fn first_missing_from(&self, other: &Relation) -> Option<(usize, usize)> {
        self.difference(other).pairs().into_iter().next()
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(Relation::full(3).len(), 9);
        assert_eq!(Relation::identity(3).pairs(), vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(Relation::diversity(2).pairs(), vec![(0, 1), (1, 0)]);
        assert!(Relation::empty(4).is_empty());
    }

    #[test]
    fn composition_by_hand() {
        let r = Relation::from_pairs(3, [(0, 1), (1, 2)]);
        let s = Relation::from_pairs(3, [(2, 0), (1, 1)]);
        assert_eq!(r.compose(&s).pairs(), vec![(0, 1), (1, 0)]);
        assert_eq!(r.converse().pairs(), vec![(1, 0), (2, 1)]);
    }

    #[test]
    fn relative_sum_brute_force() {
        // (a, b) with every c: (a, c) in p or (c, b) in q.
        let p = Relation::from_pairs(2, [(0, 0)]);
        let q = Relation::empty(2);
        assert!(p.rel_sum(&q).is_empty());
        let p = Relation::from_pairs(2, [(0, 0), (0, 1)]);
        assert_eq!(p.rel_sum(&q).pairs(), vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn wide_carrier() {
        let mut r = Relation::empty(70);
        r.insert(3, 69);
        r.insert(69, 0);
        assert_eq!(r.compose(&r).pairs(), vec![(3, 0)]);
        assert_eq!(r.complement().len(), 70 * 70 - 2);
    }

    #[test]
    fn subset_and_witness() {
        let a = Relation::from_pairs(2, [(0, 1), (1, 1)]);
        let b = Relation::from_pairs(2, [(1, 1)]);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.first_missing_from(&b), Some((0, 1)));
    }
}
