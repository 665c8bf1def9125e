use std::fmt;

/// Largest number of worlds a frame may have.
pub const MAX_WORLDS: usize = 64;

/// A set of worlds, stored as a 64-bit mask. World `i` is bit `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WorldSet(pub u64);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    /// All worlds `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_WORLDS);
        if n == MAX_WORLDS {
            WorldSet(u64::MAX)
        } else {
            WorldSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(w: usize) -> Self {
        WorldSet(1u64 << w)
    }

    pub fn from_worlds<I: IntoIterator<Item = usize>>(worlds: I) -> Self {
        worlds.into_iter().fold(WorldSet::EMPTY, |s, w| s.with(w))
    }

    #[inline]
    pub fn contains(self, w: usize) -> bool {
        w < MAX_WORLDS && self.0 >> w & 1 == 1
    }

    #[inline]
    pub fn with(self, w: usize) -> Self {
        WorldSet(self.0 | 1u64 << w)
    }

    #[inline]
    pub fn insert(&mut self, w: usize) {
        self.0 |= 1u64 << w;
    }

    #[inline]
    pub fn remove(&mut self, w: usize) {
        self.0 &= !(1u64 << w);
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: WorldSet) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn union(self, other: WorldSet) -> Self {
        WorldSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: WorldSet) -> Self {
        WorldSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: WorldSet) -> Self {
        WorldSet(self.0 & !other.0)
    }

    /// Complement relative to `0..n`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        WorldSet(!self.0 & WorldSet::full(n).0)
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let w = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(w)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl IntoIterator for WorldSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for WorldSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        WorldSet::from_worlds(iter)
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_ops() {
        let a = WorldSet::from_worlds([0, 2, 5]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(2) && !a.contains(1));
        assert_eq!(a.to_vec(), vec![0, 2, 5]);
        assert_eq!(a.complement(6).to_vec(), vec![1, 3, 4]);
        assert!(WorldSet::singleton(2).is_subset(a));
        assert_eq!(WorldSet::full(64).len(), 64);
        assert_eq!(WorldSet::EMPTY.first(), None);
    }
}
