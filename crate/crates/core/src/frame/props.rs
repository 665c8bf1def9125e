use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Frame, FrameError};
use crate::worldset::WorldSet;

/// Structural flags of a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Properties {
    pub reflexive: bool,
    pub transitive: bool,
    /// No two distinct worlds see each other. On preorders this is fatness one,
    /// and on finite preorders it also coincides with converse wellfoundedness.
    pub antisymmetric: bool,
    /// Every two worlds have a common successor.
    pub directed: bool,
    /// Every two worlds are comparable.
    pub linear: bool,
    pub lattice: bool,
    pub boolean_algebra: bool,
    pub tree: bool,
    pub baled_tree: bool,
    /// Every world has at most one successor.
    pub alt1: bool,
    pub has_least: bool,
    pub has_greatest: bool,
}

impl Properties {
    pub fn preorder(&self) -> bool {
        self.reflexive && self.transitive
    }

    pub fn poset(&self) -> bool {
        self.preorder() && self.antisymmetric
    }
}

pub fn properties(frame: &Frame) -> Properties {
    let n = frame.size();
    let reflexive = frame.worlds().all(|w| frame.relates(w, w));
    let transitive = is_transitive(frame);
    let antisymmetric = frame
        .worlds()
        .all(|a| frame.successors(a).iter().all(|b| a == b || !frame.relates(b, a)));
    let directed = frame.worlds().all(|a| {
        frame
            .worlds()
            .all(|b| frame.successors(a).intersects(frame.successors(b)))
    });
    let linear = frame
        .worlds()
        .all(|a| frame.worlds().all(|b| frame.relates(a, b) || frame.relates(b, a)));
    let alt1 = frame.rows().iter().all(|r| r.len() <= 1);
    let has_least = frame.least().is_some();
    let has_greatest = frame.greatest().is_some();
    let poset = reflexive && transitive && antisymmetric;

    let lattice = poset
        && frame.worlds().all(|a| {
            frame.worlds().all(|b| {
                let pair = WorldSet::from_worlds([a, b]);
                frame.sup(pair).is_some() && frame.inf(pair).is_some()
            })
        });
    let boolean_algebra = lattice && n.is_power_of_two() && is_boolean(frame);
    let tree = poset && is_tree(frame, frame.all());
    let baled_tree = poset
        && match frame.greatest() {
            Some(top) => is_tree(frame, frame.all().difference(WorldSet::singleton(top))),
            None => false,
        };

    Properties {
        reflexive,
        transitive,
        antisymmetric,
        directed,
        linear,
        lattice,
        boolean_algebra,
        tree,
        baled_tree,
        alt1,
        has_least,
        has_greatest,
    }
}

pub(crate) fn is_transitive(frame: &Frame) -> bool {
    frame.worlds().all(|a| {
        let succ = frame.successors(a);
        succ.iter().all(|b| frame.successors(b).is_subset(succ))
    })
}

/// Whether the sub-poset on `worlds` has a least element and every principal
/// down-set is a chain. The empty set is not a tree.
fn is_tree(frame: &Frame, worlds: WorldSet) -> bool {
    let has_root = worlds
        .iter()
        .any(|r| worlds.is_subset(frame.successors(r)));
    has_root
        && worlds.iter().all(|w| {
            let down = frame.predecessors(w).intersection(worlds);
            down.iter()
                .all(|a| down.iter().all(|b| frame.relates(a, b) || frame.relates(b, a)))
        })
}

/// Bounded, complemented and distributive; assumes `frame` is a lattice.
fn is_boolean(frame: &Frame) -> bool {
    let (Some(bottom), Some(top)) = (frame.least(), frame.greatest()) else {
        return false;
    };
    let join = |a: usize, b: usize| frame.sup(WorldSet::from_worlds([a, b])).expect("lattice");
    let meet = |a: usize, b: usize| frame.inf(WorldSet::from_worlds([a, b])).expect("lattice");
    let complemented = frame
        .worlds()
        .all(|a| frame.worlds().any(|b| join(a, b) == top && meet(a, b) == bottom));
    let distributive = frame.worlds().all(|a| {
        frame
            .worlds()
            .all(|b| frame.worlds().all(|c| meet(a, join(b, c)) == join(meet(a, b), meet(a, c))))
    });
    complemented && distributive
}

/// Classes of frames with decidable membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameClass {
    Arbitrary,
    Transitive,
    Preorder,
    DirectedPreorder,
    LinearPreorder,
    Poset,
    DirectedPoset,
    Lattice,
    BooleanAlgebra,
    LinearOrder,
    Tree,
    BaledTree,
    Alt1,
}

impl FrameClass {
    pub const ALL: [FrameClass; 13] = [
        FrameClass::Arbitrary,
        FrameClass::Transitive,
        FrameClass::Preorder,
        FrameClass::DirectedPreorder,
        FrameClass::LinearPreorder,
        FrameClass::Poset,
        FrameClass::DirectedPoset,
        FrameClass::Lattice,
        FrameClass::BooleanAlgebra,
        FrameClass::LinearOrder,
        FrameClass::Tree,
        FrameClass::BaledTree,
        FrameClass::Alt1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameClass::Arbitrary => "arbitrary",
            FrameClass::Transitive => "transitive",
            FrameClass::Preorder => "preorder",
            FrameClass::DirectedPreorder => "directed-preorder",
            FrameClass::LinearPreorder => "linear-preorder",
            FrameClass::Poset => "poset",
            FrameClass::DirectedPoset => "directed-poset",
            FrameClass::Lattice => "lattice",
            FrameClass::BooleanAlgebra => "boolean",
            FrameClass::LinearOrder => "linear",
            FrameClass::Tree => "tree",
            FrameClass::BaledTree => "baled-tree",
            FrameClass::Alt1 => "alt1",
        }
    }

    pub fn holds(self, p: &Properties) -> bool {
        match self {
            FrameClass::Arbitrary => true,
            FrameClass::Transitive => p.transitive,
            FrameClass::Preorder => p.preorder(),
            FrameClass::DirectedPreorder => p.preorder() && p.directed,
            FrameClass::LinearPreorder => p.preorder() && p.linear,
            FrameClass::Poset => p.poset(),
            FrameClass::DirectedPoset => p.poset() && p.directed,
            FrameClass::Lattice => p.lattice,
            FrameClass::BooleanAlgebra => p.boolean_algebra,
            FrameClass::LinearOrder => p.poset() && p.linear,
            FrameClass::Tree => p.tree,
            FrameClass::BaledTree => p.baled_tree,
            FrameClass::Alt1 => p.alt1,
        }
    }
}

impl fmt::Display for FrameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameClass {
    type Err = FrameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        let class = match key.as_str() {
            "arbitrary" | "all" | "k" => FrameClass::Arbitrary,
            "transitive" | "k4" => FrameClass::Transitive,
            "preorder" => FrameClass::Preorder,
            "directed-preorder" => FrameClass::DirectedPreorder,
            "linear-preorder" => FrameClass::LinearPreorder,
            "poset" => FrameClass::Poset,
            "directed-poset" | "directed" => FrameClass::DirectedPoset,
            "lattice" => FrameClass::Lattice,
            "boolean" | "boolean-algebra" => FrameClass::BooleanAlgebra,
            "linear" | "linear-order" => FrameClass::LinearOrder,
            "tree" => FrameClass::Tree,
            "baled-tree" | "baled" => FrameClass::BaledTree,
            "alt1" => FrameClass::Alt1,
            _ => return Err(FrameError::UnknownClass(s.to_string())),
        };
        Ok(class)
    }
}

pub fn check_class(frame: &Frame, class: FrameClass) -> bool {
    class.holds(&properties(frame))
}
