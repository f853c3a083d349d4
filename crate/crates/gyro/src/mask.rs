//! Subsets of a finite carrier as fixed-width bit masks.

use std::fmt;

/// Largest carrier order a mask can represent.
pub const MAX_ORDER: usize = 128;

/// A subset of `{0, .., n-1}` backed by a `u128`.
///
/// All set algebra requires both operands to share the same parent order;
/// mixing parents is a programming error and panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u128,
    n: usize,
}

impl SubsetMask {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "carrier order {n} exceeds {MAX_ORDER}");
        SubsetMask { bits: 0, n }
    }

    pub fn full(n: usize) -> Self {
        let mut m = Self::empty(n);
        m.bits = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        m
    }

    pub fn singleton(n: usize, e: usize) -> Self {
        let mut m = Self::empty(n);
        m.insert(e);
        m
    }

    pub fn from_elems(n: usize, elems: &[usize]) -> Self {
        let mut m = Self::empty(n);
        for &e in elems {
            m.insert(e);
        }
        m
    }

    pub fn parent_order(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < self.n, "element {e} out of range for order {}", self.n);
        self.bits |= 1u128 << e;
    }

    pub fn remove(&mut self, e: usize) {
        assert!(e < self.n);
        self.bits &= !(1u128 << e);
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.n && self.bits & (1u128 << e) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_parent(other);
        SubsetMask { bits: self.bits | other.bits, n: self.n }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.check_parent(other);
        SubsetMask { bits: self.bits & other.bits, n: self.n }
    }

    pub fn complement(&self) -> Self {
        let full = Self::full(self.n);
        SubsetMask { bits: full.bits & !self.bits, n: self.n }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_parent(other);
        self.bits & !other.bits == 0
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&e| self.contains(e))
    }

    pub fn elems(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Raw bits, used for canonical ordering of subset lists.
    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn from_bits(n: usize, bits: u128) -> Self {
        let mut m = Self::empty(n);
        assert_eq!(bits & !Self::full(n).bits, 0, "bits out of range");
        m.bits = bits;
        m
    }

    fn check_parent(&self, other: &Self) {
        assert_eq!(self.n, other.n, "subset masks have different parent orders");
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra_basics() {
        let a = SubsetMask::from_elems(4, &[0, 2]);
        let b = SubsetMask::from_elems(4, &[2, 3]);
        assert_eq!(a.union(&b).elems(), vec![0, 2, 3]);
        assert_eq!(a.intersect(&b).elems(), vec![2]);
        assert_eq!(a.complement().elems(), vec![1, 3]);
        assert!(a.intersect(&b).is_subset(&a));
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn full_and_empty() {
        assert_eq!(SubsetMask::full(6).len(), 6);
        assert!(SubsetMask::empty(6).is_empty());
        assert_eq!(SubsetMask::full(128).len(), 128);
    }
}
