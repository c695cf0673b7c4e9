//! Subsets of a ground set {1..n} as bitmasks, n <= 24.

use std::fmt;

/// Hard cap on ground-set size so that a subset fits a machine word and
/// genericity of a weight can be decided by full subset enumeration.
pub const MAX_GROUND: u32 = 24;

/// A subset of the ground set {1..n}. Bit i-1 of `bits` encodes element i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: u32,
    n: u8,
}

impl Subset {
    /// Builds a subset from a raw bitmask. Panics if a bit above n is set
    /// or n exceeds the ground-set cap; callers validate untrusted input.
    pub fn new(bits: u32, n: u32) -> Self {
        assert!(n <= MAX_GROUND, "ground set larger than {MAX_GROUND}");
        assert!(
            bits & !Self::full_mask(n) == 0,
            "subset has an element above the ground set"
        );
        Subset { bits, n: n as u8 }
    }

    /// The empty subset of {1..n}.
    pub fn empty(n: u32) -> Self {
        Self::new(0, n)
    }

    /// The full ground set {1..n}.
    pub fn full(n: u32) -> Self {
        Self::new(Self::full_mask(n), n)
    }

    /// Builds a subset from 1-based element labels.
    pub fn from_elems(elems: &[u32], n: u32) -> Self {
        let mut bits = 0u32;
        for &e in elems {
            assert!(e >= 1 && e <= n, "element {e} outside 1..={n}");
            bits |= 1 << (e - 1);
        }
        Self::new(bits, n)
    }

    fn full_mask(n: u32) -> u32 {
        if n == 0 {
            0
        } else {
            (1u32 << n).wrapping_sub(1)
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn ground_size(&self) -> u32 {
        self.n as u32
    }

    pub fn card(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == Self::full_mask(self.n as u32)
    }

    pub fn contains(&self, e: u32) -> bool {
        debug_assert!(e >= 1 && e <= self.n as u32);
        self.bits & (1 << (e - 1)) != 0
    }

    pub fn insert(&self, e: u32) -> Self {
        assert!(e >= 1 && e <= self.n as u32);
        Self::new(self.bits | (1 << (e - 1)), self.n as u32)
    }

    pub fn union(&self, other: &Subset) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self::new(self.bits | other.bits, self.n as u32)
    }

    pub fn inter(&self, other: &Subset) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self::new(self.bits & other.bits, self.n as u32)
    }

    pub fn minus(&self, other: &Subset) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self::new(self.bits & !other.bits, self.n as u32)
    }

    pub fn complement(&self) -> Self {
        Self::new(Self::full_mask(self.n as u32) & !self.bits, self.n as u32)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & !other.bits == 0
    }

    pub fn is_proper_subset_of(&self, other: &Subset) -> bool {
        self.is_subset_of(other) && self.bits != other.bits
    }

    /// 1-based element labels in increasing order.
    pub fn elems(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.card() as usize);
        let mut b = self.bits;
        while b != 0 {
            let e = b.trailing_zeros() + 1;
            out.push(e);
            b &= b - 1;
        }
        out
    }

    /// All subsets of {1..n} in increasing bitmask order (2^n of them).
    pub fn all(n: u32) -> impl Iterator<Item = Subset> {
        assert!(n <= MAX_GROUND);
        (0..=Self::full_mask(n)).map(move |b| Subset::new(b, n))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems().iter().enumerate() {
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
    fn basic_ops() {
        let s = Subset::from_elems(&[1, 3], 4);
        let t = Subset::from_elems(&[3, 4], 4);
        assert_eq!(s.card(), 2);
        assert_eq!(s.union(&t).elems(), vec![1, 3, 4]);
        assert_eq!(s.inter(&t).elems(), vec![3]);
        assert_eq!(s.complement().elems(), vec![2, 4]);
        assert!(s.inter(&t).is_subset_of(&t));
        assert_eq!(format!("{s}"), "{1,3}");
    }

    #[test]
    fn enumeration() {
        assert_eq!(Subset::all(3).count(), 8);
        assert!(Subset::full(3).is_full());
        assert!(Subset::empty(3).is_empty());
    }

    #[test]
    #[should_panic]
    fn rejects_out_of_range() {
        Subset::from_elems(&[5], 4);
    }
}
