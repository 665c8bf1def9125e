//! Bisimulations between finite models over a chosen vocabulary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::model::{Model, PointedModel};
use crate::worldset::WorldSet;

/// A set of world pairs `(world of the first model, world of the second)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Relation(BTreeSet<(usize, usize)>);

impl Relation {
    pub fn new() -> Self {
        Relation(BTreeSet::new())
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.0.insert((a, b));
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.0.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.0.is_subset(&other.0)
    }

    /// The relation pairing new world `i` with `map[i]`.
    pub fn from_map(map: &[usize]) -> Relation {
        map.iter().enumerate().map(|(i, &j)| (i, j)).collect()
    }
}

impl FromIterator<(usize, usize)> for Relation {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        Relation(iter.into_iter().collect())
    }
}

/// Builds a vocabulary from variable names.
pub fn vocabulary<I, S>(vars: I) -> BTreeSet<String>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    vars.into_iter().map(Into::into).collect()
}

/// The greatest bisimulation between `m1` and `m2` for `vocab`, computed by
/// partition refinement on the disjoint union: worlds start grouped by their
/// atoms, then blocks split by the set of blocks their successors reach until
/// nothing splits.
pub fn largest_bisimulation(m1: &Model, m2: &Model, vocab: &BTreeSet<String>) -> Relation {
    let n1 = m1.frame.size();
    let n2 = m2.frame.size();
    let side = |w: usize| if w < n1 { (m1, w) } else { (m2, w - n1) };
    let successors: Vec<Vec<usize>> = (0..n1 + n2)
        .map(|w| {
            let (m, local) = side(w);
            let offset = if w < n1 { 0 } else { n1 };
            m.frame.successors(local).iter().map(|v| v + offset).collect()
        })
        .collect();

    let atoms: Vec<Vec<bool>> = (0..n1 + n2)
        .map(|w| {
            let (m, local) = side(w);
            vocab.iter().map(|v| m.value(v).contains(local)).collect()
        })
        .collect();
    let mut blocks = rank(&atoms);
    let mut count = distinct(&blocks);
    loop {
        let sigs: Vec<(usize, BTreeSet<usize>)> = (0..n1 + n2)
            .map(|w| (blocks[w], successors[w].iter().map(|&v| blocks[v]).collect()))
            .collect();
        let next = rank(&sigs);
        let next_count = distinct(&next);
        blocks = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }

    let mut z = Relation::new();
    for a in 0..n1 {
        for b in 0..n2 {
            if blocks[a] == blocks[n1 + b] {
                z.insert(a, b);
            }
        }
    }
    z
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    let ids: BTreeMap<T, usize> = sorted.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    sigs.iter().map(|s| ids[s]).collect()
}

fn distinct(blocks: &[usize]) -> usize {
    blocks.iter().collect::<BTreeSet<_>>().len()
}

pub fn are_bisimilar(p1: &PointedModel, p2: &PointedModel, vocab: &BTreeSet<String>) -> bool {
    largest_bisimulation(&p1.model, &p2.model, vocab).contains(p1.point(), p2.point())
}

/// Why a relation fails to be a bisimulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// A pair endpoint lies outside its model.
    OutOfRange,
    /// The pair disagrees on this variable.
    Atom(String),
    /// This successor of the first world has no related successor of the second.
    Forth(usize),
    /// This successor of the second world has no related successor of the first.
    Back(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimViolation {
    pub pair: (usize, usize),
    pub kind: ViolationKind,
}

impl fmt::Display for BisimViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.pair;
        match &self.kind {
            ViolationKind::OutOfRange => write!(f, "pair ({a}, {b}) is out of range"),
            ViolationKind::Atom(v) => write!(f, "pair ({a}, {b}) disagrees on `{v}`"),
            ViolationKind::Forth(s) => write!(f, "pair ({a}, {b}): successor {s} of {a} has no match"),
            ViolationKind::Back(s) => write!(f, "pair ({a}, {b}): successor {s} of {b} has no match"),
        }
    }
}

/// Checks atom agreement, forth and back for every pair of `z`, in pair
/// order, and reports the first failure.
pub fn is_bisimulation(
    z: &Relation,
    m1: &Model,
    m2: &Model,
    vocab: &BTreeSet<String>,
) -> Result<(), BisimViolation> {
    let n1 = m1.frame.size();
    let n2 = m2.frame.size();
    let image = |a: usize| -> WorldSet { z.iter().filter(|&(x, _)| x == a).map(|(_, y)| y).collect() };
    for (a, b) in z.iter() {
        let fail = |kind| Err(BisimViolation { pair: (a, b), kind });
        if a >= n1 || b >= n2 {
            return fail(ViolationKind::OutOfRange);
        }
        if let Some(v) = vocab
            .iter()
            .find(|v| m1.value(v).contains(a) != m2.value(v).contains(b))
        {
            return fail(ViolationKind::Atom(v.clone()));
        }
        let succ_b = m2.frame.successors(b);
        if let Some(s) = m1
            .frame
            .successors(a)
            .iter()
            .find(|&s| !image(s).intersects(succ_b))
        {
            return fail(ViolationKind::Forth(s));
        }
        let succ_a = m1.frame.successors(a);
        if let Some(t) = succ_b
            .iter()
            .find(|&t| !succ_a.iter().any(|s| z.contains(s, t)))
        {
            return fail(ViolationKind::Back(t));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;

    fn p() -> BTreeSet<String> {
        vocabulary(["p"])
    }

    #[test]
    fn model_is_bisimilar_to_itself() {
        let m = Model::bare(Frame::diamond()).with("p", WorldSet::from_worlds([1, 3])).unwrap();
        let z = largest_bisimulation(&m, &m, &p());
        for w in 0..4 {
            assert!(z.contains(w, w));
        }
        assert_eq!(is_bisimulation(&z, &m, &m, &p()), Ok(()));
    }

    #[test]
    fn chains_with_same_top_behaviour() {
        let m2 = Model::bare(Frame::chain(2)).with("p", WorldSet::singleton(1)).unwrap();
        let m3 = Model::bare(Frame::chain(3)).with("p", WorldSet::from_worlds([1, 2])).unwrap();
        let z = largest_bisimulation(&m2, &m3, &p());
        assert!(z.contains(0, 0));
        assert!(z.contains(1, 1) && z.contains(1, 2));
        assert!(are_bisimilar(&m2.at(0).unwrap(), &m3.at(0).unwrap(), &p()));
    }

    #[test]
    fn cluster_collapses_without_atoms() {
        let c = Model::bare(Frame::cluster(2));
        let dot = Model::bare(Frame::chain(1));
        let z = largest_bisimulation(&c, &dot, &p());
        assert_eq!(z.len(), 2);
    }

    #[test]
    fn full_relation_with_differing_atoms_fails() {
        let a = Model::bare(Frame::chain(2)).with("p", WorldSet::singleton(0)).unwrap();
        let b = Model::bare(Frame::chain(2));
        let all: Relation = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).collect();
        let err = is_bisimulation(&all, &a, &b, &p()).unwrap_err();
        assert_eq!(err.kind, ViolationKind::Atom("p".into()));
        assert_eq!(err.pair, (0, 0));
    }

    #[test]
    fn forth_and_back_failures() {
        let chain = Model::bare(Frame::chain(2)).with("p", WorldSet::singleton(1)).unwrap();
        let dot = Model::bare(Frame::chain(1));
        let z: Relation = [(0, 0)].into_iter().collect();
        let err = is_bisimulation(&z, &chain, &dot, &p()).unwrap_err();
        assert_eq!(err.kind, ViolationKind::Forth(1));
        let z: Relation = [(0, 0)].into_iter().collect();
        let err = is_bisimulation(&z, &dot, &chain, &p()).unwrap_err();
        assert_eq!(err.kind, ViolationKind::Back(1));
    }
}
