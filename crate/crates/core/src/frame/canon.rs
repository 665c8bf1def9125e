//! Canonical forms of small frames.
//!
//! The code of a labeled frame is its relation bit-matrix read row by row
//! (row 0 most significant). The canonical code is the minimum code over all
//! vertex orders that list colour classes of an iterated degree refinement in
//! increasing colour order. The colouring is isomorphism invariant, so the
//! minimum is a complete invariant; restricting to colour-respecting orders
//! only shrinks the search.

use std::collections::BTreeMap;

use super::{Frame, FrameError};

/// Largest frame the canonical form handles (the code must fit in 64 bits).
pub const MAX_CANON_WORLDS: usize = 8;

fn code_under(frame: &Frame, perm: &[usize]) -> u64 {
    let mut code = 0u64;
    for &a in perm {
        let row = frame.successors(a);
        for &b in perm {
            code = code << 1 | row.contains(b) as u64;
        }
    }
    code
}

fn refine_colours(frame: &Frame) -> Vec<usize> {
    let n = frame.size();
    let initial: Vec<(bool, usize, usize)> = frame
        .worlds()
        .map(|w| (frame.relates(w, w), frame.successors(w).len(), frame.predecessors(w).len()))
        .collect();
    let mut colours = rank(&initial);
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|w| {
                let mut out: Vec<usize> = frame.successors(w).iter().map(|v| colours[v]).collect();
                let mut inc: Vec<usize> = frame.predecessors(w).iter().map(|v| colours[v]).collect();
                out.sort_unstable();
                inc.sort_unstable();
                (colours[w], out, inc)
            })
            .collect();
        let next = rank(&sigs);
        let distinct_before = colours.iter().max().map_or(0, |m| m + 1);
        let distinct_after = next.iter().max().map_or(0, |m| m + 1);
        colours = next;
        if distinct_after == distinct_before {
            return colours;
        }
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let ranks: BTreeMap<T, usize> = {
        let mut sorted: Vec<T> = sigs.to_vec();
        sorted.sort();
        sorted.dedup();
        sorted.into_iter().enumerate().map(|(i, s)| (s, i)).collect()
    };
    sigs.iter().map(|s| ranks[s]).collect()
}

/// Canonical code and the vertex order achieving it.
fn canonical(frame: &Frame) -> Result<(u64, Vec<usize>), FrameError> {
    let n = frame.size();
    if n > MAX_CANON_WORLDS {
        return Err(FrameError::CanonTooLarge {
            max: MAX_CANON_WORLDS,
            got: n,
        });
    }
    let colours = refine_colours(frame);
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (w, &c) in colours.iter().enumerate() {
        cells.entry(c).or_default().push(w);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();

    let mut best = (u64::MAX, Vec::new());
    let mut perm = Vec::with_capacity(n);
    let mut cell_state: Vec<Vec<usize>> = cells.clone();
    search(frame, &mut cell_state, 0, &mut perm, &mut best);
    Ok(best)
}

fn search(
    frame: &Frame,
    cells: &mut Vec<Vec<usize>>,
    cell: usize,
    perm: &mut Vec<usize>,
    best: &mut (u64, Vec<usize>),
) {
    if cell == cells.len() {
        let code = code_under(frame, perm);
        if code < best.0 || best.1.is_empty() {
            *best = (code, perm.clone());
        }
        return;
    }
    if cells[cell].is_empty() {
        search(frame, cells, cell + 1, perm, best);
        return;
    }
    for i in 0..cells[cell].len() {
        let w = cells[cell].remove(i);
        perm.push(w);
        search(frame, cells, cell, perm, best);
        perm.pop();
        cells[cell].insert(i, w);
    }
}

/// Isomorphism-invariant code of a frame with at most [`MAX_CANON_WORLDS`] worlds.
pub fn canonical_code(frame: &Frame) -> Result<u64, FrameError> {
    canonical(frame).map(|(code, _)| code)
}

/// The canonical relabeling of `frame`.
pub fn canonical_form(frame: &Frame) -> Result<Frame, FrameError> {
    let (_, perm) = canonical(frame)?;
    Ok(frame.permuted(&perm))
}

pub fn isomorphic(a: &Frame, b: &Frame) -> Result<bool, FrameError> {
    Ok(a.size() == b.size() && canonical_code(a)? == canonical_code(b)?)
}
