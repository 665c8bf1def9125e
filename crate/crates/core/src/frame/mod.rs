//! Finite Kripke frames.
//!
//! A frame is a world count plus an accessibility relation stored as one
//! successor bitset per world. No frame property is assumed globally: the
//! recognizers in [`properties`] decide membership in each class.

mod canon;
mod enumerate;
mod props;

use std::fmt;

use thiserror::Error;

use crate::worldset::{WorldSet, MAX_WORLDS};

pub use canon::{canonical_code, canonical_form, isomorphic, MAX_CANON_WORLDS};
pub use enumerate::{enumerate, enumerate_with_cap, DEFAULT_FRAME_CAP};
pub use props::{check_class, properties, FrameClass, Properties};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("a frame needs at least one world")]
    Empty,
    #[error("frames are limited to {MAX_WORLDS} worlds, got {0}")]
    TooLarge(usize),
    #[error("edge ({0}, {1}) has an endpoint outside the frame of {2} world(s)")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("world {0} is outside the frame of {1} world(s)")]
    WorldOutOfRange(usize, usize),
    #[error("enumeration exceeded the cap of {0} frames")]
    CapExceeded(usize),
    #[error("isomorphism reduction supports at most {max} worlds, got {got}")]
    CanonTooLarge { max: usize, got: usize },
    #[error("unknown frame class `{0}`")]
    UnknownClass(String),
}

/// A finite Kripke frame on worlds `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    size: usize,
    rows: Vec<WorldSet>,
}

impl Frame {
    /// A frame with the given relation pairs.
    pub fn new(size: usize, edges: &[(usize, usize)]) -> Result<Frame, FrameError> {
        let mut frame = Frame::empty(size)?;
        for &(a, b) in edges {
            if a >= size || b >= size {
                return Err(FrameError::EdgeOutOfRange(a, b, size));
            }
            frame.rows[a].insert(b);
        }
        Ok(frame)
    }

    /// A frame with no relation pairs.
    pub fn empty(size: usize) -> Result<Frame, FrameError> {
        if size == 0 {
            return Err(FrameError::Empty);
        }
        if size > MAX_WORLDS {
            return Err(FrameError::TooLarge(size));
        }
        Ok(Frame {
            size,
            rows: vec![WorldSet::EMPTY; size],
        })
    }

    /// Builds a frame from successor sets. Bits at or above `rows.len()` are dropped.
    pub fn from_rows(rows: Vec<WorldSet>) -> Result<Frame, FrameError> {
        let size = rows.len();
        let mut frame = Frame::empty(size)?;
        let full = WorldSet::full(size);
        for (row, src) in frame.rows.iter_mut().zip(rows) {
            *row = src.intersection(full);
        }
        Ok(frame)
    }

    /// Builds a frame from a predicate on world pairs.
    pub fn from_fn(size: usize, rel: impl Fn(usize, usize) -> bool) -> Result<Frame, FrameError> {
        let mut frame = Frame::empty(size)?;
        for a in 0..size {
            for b in 0..size {
                if rel(a, b) {
                    frame.rows[a].insert(b);
                }
            }
        }
        Ok(frame)
    }

    /// The reflexive-transitive chain `0 ≤ 1 ≤ … ≤ n-1`.
    ///
    /// # Panics
    /// If `n` is zero or above [`MAX_WORLDS`].
    pub fn chain(n: usize) -> Frame {
        Frame::from_fn(n, |a, b| a <= b).expect("chain size")
    }

    /// `n` reflexive, mutually unrelated worlds.
    ///
    /// # Panics
    /// If `n` is zero or above [`MAX_WORLDS`].
    pub fn antichain(n: usize) -> Frame {
        Frame::from_fn(n, |a, b| a == b).expect("antichain size")
    }

    /// `n` mutually accessible worlds.
    ///
    /// # Panics
    /// If `n` is zero or above [`MAX_WORLDS`].
    pub fn cluster(n: usize) -> Frame {
        Frame::from_fn(n, |_, _| true).expect("cluster size")
    }

    /// Inclusion order on the subsets of `{0..k-1}`; world `i` is the subset
    /// whose bitmask is `i`.
    ///
    /// # Panics
    /// If `k > 6`.
    pub fn powerset(k: usize) -> Frame {
        assert!(k <= 6, "powerset frames are limited to 6 atoms");
        Frame::from_fn(1 << k, |a, b| a & !b == 0).expect("powerset size")
    }

    /// The four-element Boolean lattice `⊥ < a, b < ⊤` with worlds `0, 1, 2, 3`.
    pub fn diamond() -> Frame {
        Frame::powerset(2)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn worlds(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn all(&self) -> WorldSet {
        WorldSet::full(self.size)
    }

    #[inline]
    pub fn relates(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    #[inline]
    pub fn successors(&self, w: usize) -> WorldSet {
        self.rows[w]
    }

    pub fn predecessors(&self, w: usize) -> WorldSet {
        self.worlds().filter(|&a| self.relates(a, w)).collect()
    }

    pub fn rows(&self) -> &[WorldSet] {
        &self.rows
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.worlds()
            .flat_map(|a| self.rows[a].iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn check_world(&self, w: usize) -> Result<(), FrameError> {
        if w < self.size {
            Ok(())
        } else {
            Err(FrameError::WorldOutOfRange(w, self.size))
        }
    }

    /// Worlds reachable from `w` in zero or more steps.
    pub fn reachable(&self, w: usize) -> WorldSet {
        let mut seen = WorldSet::singleton(w);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = WorldSet::EMPTY;
            for v in frontier {
                next = next.union(self.rows[v]);
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen
    }

    /// Smallest superset of the relation with the requested closure properties.
    pub fn closure(&self, reflexive: bool, transitive: bool) -> Frame {
        let mut rows = self.rows.clone();
        if reflexive {
            for (w, row) in rows.iter_mut().enumerate() {
                row.insert(w);
            }
        }
        if transitive {
            // Warshall on bit rows.
            for k in 0..self.size {
                let via = rows[k];
                for row in rows.iter_mut() {
                    if row.contains(k) {
                        *row = row.union(via);
                    }
                }
            }
        }
        Frame {
            size: self.size,
            rows,
        }
    }

    /// The subframe generated by `w`: worlds reachable from `w`, with `w`
    /// renumbered to 0 and the rest in increasing original order. The second
    /// component maps new indices to original ones.
    pub fn generated_subframe(&self, w: usize) -> (Frame, Vec<usize>) {
        let reach = self.reachable(w);
        let mut map = vec![w];
        map.extend(reach.iter().filter(|&v| v != w));
        (self.induced(&map), map)
    }

    /// The subframe on the listed worlds, renumbered in list order.
    pub fn induced(&self, worlds: &[usize]) -> Frame {
        let rows = worlds
            .iter()
            .map(|&a| {
                worlds
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| self.relates(a, b))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Frame {
            size: worlds.len(),
            rows,
        }
    }

    /// Relabels worlds: old world `perm[i]` becomes new world `i`.
    pub fn permuted(&self, perm: &[usize]) -> Frame {
        debug_assert_eq!(perm.len(), self.size);
        self.induced(perm)
    }

    /// Common upper bounds of `set` (every world when `set` is empty).
    pub fn upper_bounds(&self, set: WorldSet) -> WorldSet {
        set.iter().fold(self.all(), |acc, s| acc.intersection(self.rows[s]))
    }

    /// Common lower bounds of `set` (every world when `set` is empty).
    pub fn lower_bounds(&self, set: WorldSet) -> WorldSet {
        set.iter()
            .fold(self.all(), |acc, s| acc.intersection(self.predecessors(s)))
    }

    /// Least upper bound of `set`, if any. On a poset `sup(∅)` is the least
    /// element, which is what the button labeling uses for its root label.
    pub fn sup(&self, set: WorldSet) -> Option<usize> {
        let ub = self.upper_bounds(set);
        ub.iter().find(|&u| ub.is_subset(self.rows[u]))
    }

    /// Greatest lower bound of `set`, if any; `inf(∅)` is the greatest element.
    pub fn inf(&self, set: WorldSet) -> Option<usize> {
        let lb = self.lower_bounds(set);
        lb.iter().find(|&l| lb.iter().all(|m| self.relates(m, l)))
    }

    /// A world related to every world, if any.
    pub fn greatest(&self) -> Option<usize> {
        self.worlds().find(|&w| self.predecessors(w) == self.all())
    }

    /// A world relating to every world, if any.
    pub fn least(&self) -> Option<usize> {
        self.worlds().find(|&w| self.rows[w] == self.all())
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({}; {:?})", self.size, self.edges())
    }
}
