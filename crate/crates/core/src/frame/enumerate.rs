//! Exhaustive enumeration of frame classes.
//!
//! Frames on `m + 1` worlds are produced by adding world `m` to every frame
//! on `m` worlds of a hereditary base family (deleting a world keeps a frame
//! inside the family), so each labeled frame arises exactly once. Up to
//! isomorphism, each level is reduced to canonical representatives before
//! being extended; extensions of isomorphic frames are isomorphic, so no
//! class is lost. The requested class is then filtered from the base family.

use std::collections::{HashMap, HashSet};

use super::canon::{canonical_code, canonical_form};
use super::props::{is_transitive, FrameClass};
use super::{check_class, Frame, FrameError};
use crate::worldset::WorldSet;

/// Default cap on frames generated per enumeration level.
pub const DEFAULT_FRAME_CAP: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Base {
    All,
    Transitive,
    Alt1,
    Preorder,
    Poset,
}

fn base_of(class: FrameClass) -> Option<Base> {
    Some(match class {
        FrameClass::Arbitrary => Base::All,
        FrameClass::Transitive => Base::Transitive,
        FrameClass::Alt1 => Base::Alt1,
        FrameClass::Preorder | FrameClass::DirectedPreorder | FrameClass::LinearPreorder => {
            Base::Preorder
        }
        FrameClass::Poset
        | FrameClass::DirectedPoset
        | FrameClass::Lattice
        | FrameClass::LinearOrder
        | FrameClass::Tree
        | FrameClass::BaledTree => Base::Poset,
        FrameClass::BooleanAlgebra => return None,
    })
}

/// All frames of `class` with exactly `n` worlds, one per isomorphism class
/// when `up_to_iso` is set. Representatives are in canonical form, ordered by
/// canonical code; labeled output is in generation order.
pub fn enumerate(class: FrameClass, n: usize, up_to_iso: bool) -> Result<Vec<Frame>, FrameError> {
    enumerate_with_cap(class, n, up_to_iso, DEFAULT_FRAME_CAP)
}

pub fn enumerate_with_cap(
    class: FrameClass,
    n: usize,
    up_to_iso: bool,
    cap: usize,
) -> Result<Vec<Frame>, FrameError> {
    if n == 0 {
        return Err(FrameError::Empty);
    }
    let Some(base) = base_of(class) else {
        return boolean_algebras(n, up_to_iso, cap);
    };
    let mut level = seeds(base);
    if up_to_iso {
        level = reduce(level)?;
    }
    for _ in 1..n {
        let mut next = Vec::new();
        for frame in &level {
            extend(base, frame, &mut next, cap)?;
        }
        level = if up_to_iso { reduce(next)? } else { next };
    }
    Ok(level
        .into_iter()
        .filter(|f| class == FrameClass::Arbitrary || check_class(f, class))
        .collect())
}

fn seeds(base: Base) -> Vec<Frame> {
    let point = Frame::empty(1).expect("one world");
    let reflexive = Frame::chain(1);
    match base {
        Base::All | Base::Transitive | Base::Alt1 => vec![point, reflexive],
        Base::Preorder | Base::Poset => vec![reflexive],
    }
}

fn reduce(frames: Vec<Frame>) -> Result<Vec<Frame>, FrameError> {
    let mut seen: HashMap<u64, Frame> = HashMap::new();
    for f in frames {
        let code = canonical_code(&f)?;
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(code) {
            e.insert(canonical_form(&f)?);
        }
    }
    let mut reps: Vec<(u64, Frame)> = seen.into_iter().collect();
    reps.sort_by_key(|(code, _)| *code);
    Ok(reps.into_iter().map(|(_, f)| f).collect())
}

fn push(out: &mut Vec<Frame>, frame: Frame, cap: usize) -> Result<(), FrameError> {
    if out.len() >= cap {
        return Err(FrameError::CapExceeded(cap));
    }
    out.push(frame);
    Ok(())
}

/// Appends every frame of the base family that restricts to `frame` when its
/// last world is deleted.
fn extend(base: Base, frame: &Frame, out: &mut Vec<Frame>, cap: usize) -> Result<(), FrameError> {
    let m = frame.size();
    let x = m;
    let subsets = || (0u64..1 << m).map(WorldSet);
    let grow = |into_x: WorldSet, from_x: WorldSet| -> Result<Frame, FrameError> {
        let mut rows: Vec<WorldSet> = frame.rows().to_vec();
        for w in into_x {
            rows[w].insert(x);
        }
        rows.push(from_x);
        Frame::from_rows(rows)
    };
    match base {
        Base::Preorder | Base::Poset => {
            // x sits above the down-closed set `below` and under the up-closed set `above`.
            let down: Vec<WorldSet> = subsets()
                .filter(|s| s.iter().all(|d| frame.predecessors(d).is_subset(*s)))
                .collect();
            let up: Vec<WorldSet> = subsets()
                .filter(|s| s.iter().all(|u| frame.successors(u).is_subset(*s)))
                .collect();
            for &below in &down {
                for &above in &up {
                    if base == Base::Poset && below.intersects(above) {
                        continue;
                    }
                    if !below.iter().all(|d| above.is_subset(frame.successors(d))) {
                        continue;
                    }
                    push(out, grow(below, above.with(x))?, cap)?;
                }
            }
        }
        Base::All | Base::Transitive | Base::Alt1 => {
            for into_x in subsets() {
                if base == Base::Alt1 && into_x.iter().any(|w| !frame.successors(w).is_empty()) {
                    continue;
                }
                for from_x in subsets() {
                    for looped in [false, true] {
                        let row = if looped { from_x.with(x) } else { from_x };
                        if base == Base::Alt1 && row.len() > 1 {
                            continue;
                        }
                        let f = grow(into_x, row)?;
                        if base == Base::Transitive && !is_transitive(&f) {
                            continue;
                        }
                        push(out, f, cap)?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn boolean_algebras(n: usize, up_to_iso: bool, cap: usize) -> Result<Vec<Frame>, FrameError> {
    if !n.is_power_of_two() {
        return Ok(Vec::new());
    }
    let k = n.trailing_zeros() as usize;
    if k > 6 {
        return Err(FrameError::TooLarge(n));
    }
    let cube = Frame::powerset(k);
    // One isomorphism type; the subset order itself is the representative.
    if up_to_iso {
        return Ok(vec![cube]);
    }
    // n! / k! distinct labelings; refuse before generating too many.
    let labelings = (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i)).unwrap_or(usize::MAX)
        / (1..=k).product::<usize>();
    if labelings > cap {
        return Err(FrameError::CapExceeded(cap));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permutations(&mut perm, n, &mut |p| {
        let f = cube.permuted(p);
        if seen.insert(f.clone()) {
            out.push(f);
        }
    });
    out.sort_by(|a, b| a.rows().cmp(b.rows()));
    Ok(out)
}

fn heap_permutations(v: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        f(v);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(v, k - 1, f);
        if k.is_multiple_of(2) {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
    }
    heap_permutations(v, k - 1, f);
}
