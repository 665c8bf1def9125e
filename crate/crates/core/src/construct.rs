//! Model constructions: baled-tree and tree unravelings, the powerset button
//! model and ratchet chains.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bisim::Relation;
use crate::formula::Formula;
use crate::frame::{properties, Frame};
use crate::model::{Model, ModelError, PointedModel};
use crate::worldset::{WorldSet, MAX_WORLDS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("construction needs {needed} worlds, above the limit of {limit}")]
    Cap { needed: usize, limit: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A constructed model together with the world each new world copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnravelResult {
    /// The new model, pointed at the copy of the source point.
    pub model: PointedModel,
    /// `copy_map[i]` is the source world copied by new world `i`.
    pub copy_map: Vec<usize>,
}

impl UnravelResult {
    /// The copy map as a relation from new worlds to source worlds.
    pub fn copy_relation(&self) -> Relation {
        Relation::from_map(&self.copy_map)
    }
}

/// `(a, b)` with `b` covering `a`: `a < b` and nothing strictly between.
fn covers(frame: &Frame) -> Vec<WorldSet> {
    frame
        .worlds()
        .map(|a| {
            let above = frame.successors(a).difference(WorldSet::singleton(a));
            above
                .iter()
                .filter(|&b| {
                    !above
                        .iter()
                        .any(|c| c != b && frame.relates(c, b))
                })
                .collect()
        })
        .collect()
}

/// Nodes of the unraveling tree in depth-first preorder: each node is a
/// maximal chain from the root, i.e. a path of covering steps.
struct PathTree {
    paths: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl PathTree {
    fn build(frame: &Frame, root: usize) -> Result<PathTree, ConstructError> {
        let cover = covers(frame);
        let mut tree = PathTree {
            paths: Vec::new(),
            parent: Vec::new(),
            children: Vec::new(),
        };
        tree.visit(&cover, vec![root], None)?;
        Ok(tree)
    }

    fn visit(
        &mut self,
        cover: &[WorldSet],
        path: Vec<usize>,
        parent: Option<usize>,
    ) -> Result<usize, ConstructError> {
        if self.paths.len() >= MAX_WORLDS {
            return Err(ConstructError::Cap {
                needed: self.paths.len() + 1,
                limit: MAX_WORLDS,
            });
        }
        let id = self.paths.len();
        let last = *path.last().expect("paths are non-empty");
        self.paths.push(path.clone());
        self.parent.push(parent);
        self.children.push(Vec::new());
        if let Some(p) = parent {
            self.children[p].push(id);
        }
        for next in cover[last] {
            let mut longer = path.clone();
            longer.push(next);
            self.visit(cover, longer, Some(id))?;
        }
        Ok(id)
    }

    fn len(&self) -> usize {
        self.paths.len()
    }

    fn source(&self, i: usize) -> usize {
        *self.paths[i].last().expect("paths are non-empty")
    }
}

fn copy_valuation(source: &Model, copy_map: &[usize]) -> BTreeMap<String, WorldSet> {
    source
        .valuation()
        .iter()
        .map(|(var, set)| {
            let copies = copy_map
                .iter()
                .enumerate()
                .filter(|&(_, &src)| set.contains(src))
                .map(|(i, _)| i)
                .collect();
            (var.clone(), copies)
        })
        .collect()
}

/// Partial tree unraveling of a model on a finite directed poset.
///
/// New worlds are the pairs `⟨u, t⟩` with `t` a maximal chain from the point
/// to `u`, plus a bale copying the greatest world `g`. `⟨u, t⟩ ≤ ⟨u', t'⟩`
/// iff `u ≤ u'` and `t'` end-extends `t`; every world lies below the bale.
/// For maximal chains the end-extension already forces `u ≤ u'`; both are
/// checked anyway. The bale is the last world and the copy of the point is
/// world 0.
pub fn unravel_baled(p: &PointedModel) -> Result<UnravelResult, ConstructError> {
    let frame = p.frame();
    let props = properties(frame);
    if !props.poset() {
        return Err(ConstructError::Precondition("frame is not a partial order"));
    }
    if !props.directed {
        return Err(ConstructError::Precondition("frame is not directed"));
    }
    let top = frame.greatest().expect("finite directed posets have a greatest element");
    let tree = PathTree::build(frame, p.point())?;
    let bale = tree.len();
    if bale + 1 > MAX_WORLDS {
        return Err(ConstructError::Cap {
            needed: bale + 1,
            limit: MAX_WORLDS,
        });
    }
    let frame_out = Frame::from_fn(bale + 1, |i, j| {
        if j == bale {
            return true;
        }
        if i == bale {
            return false;
        }
        let (t, t2) = (&tree.paths[i], &tree.paths[j]);
        frame.relates(tree.source(i), tree.source(j)) && t2.starts_with(t)
    })
    .expect("size checked");
    let mut copy_map: Vec<usize> = (0..bale).map(|i| tree.source(i)).collect();
    copy_map.push(top);
    let model = Model::new(frame_out, copy_valuation(&p.model, &copy_map))?;
    Ok(UnravelResult {
        model: PointedModel::new(model, 0)?,
        copy_map,
    })
}

/// Tree unraveling of a model on a finite poset along covering paths.
///
/// With `regularize`, the tree is padded to a full `b`-ary tree of uniform
/// depth `d` (`b` the largest branching, `d` the longest path): nodes with
/// too few children get duplicates of their existing children, and leaves
/// above depth `d` get copies of themselves. Duplicates copy the same source
/// world, so the result stays bisimilar to the source.
pub fn unravel_tree(p: &PointedModel, regularize: bool) -> Result<UnravelResult, ConstructError> {
    let frame = p.frame();
    if !properties(frame).poset() {
        return Err(ConstructError::Precondition("frame is not a partial order"));
    }
    let tree = PathTree::build(frame, p.point())?;
    let (sources, parents): (Vec<usize>, Vec<Option<usize>>) = if regularize {
        let b = tree.children.iter().map(Vec::len).max().unwrap_or(0);
        let d = tree.paths.iter().map(|t| t.len() - 1).max().unwrap_or(0);
        let needed = (0..=d as u32).map(|i| (b as u128).pow(i)).sum::<u128>();
        if needed > MAX_WORLDS as u128 {
            return Err(ConstructError::Cap {
                needed: needed.min(usize::MAX as u128) as usize,
                limit: MAX_WORLDS,
            });
        }
        let mut out = Vec::new();
        pad(&tree, 0, 0, None, b, d, &mut out);
        out.into_iter().unzip()
    } else {
        ((0..tree.len()).map(|i| tree.source(i)).collect(), tree.parent.clone())
    };
    let n = sources.len();
    let mut ancestors: Vec<WorldSet> = Vec::with_capacity(n);
    for (i, parent) in parents.iter().enumerate() {
        let up = parent.map_or(WorldSet::EMPTY, |q| ancestors[q]);
        ancestors.push(up.with(i));
    }
    let frame_out = Frame::from_fn(n, |i, j| ancestors[j].contains(i)).expect("size checked");
    let model = Model::new(frame_out, copy_valuation(&p.model, &sources))?;
    Ok(UnravelResult {
        model: PointedModel::new(model, 0)?,
        copy_map: sources,
    })
}

fn pad(
    tree: &PathTree,
    node: usize,
    depth: usize,
    parent: Option<usize>,
    b: usize,
    d: usize,
    out: &mut Vec<(usize, Option<usize>)>,
) {
    let id = out.len();
    out.push((tree.source(node), parent));
    if depth == d {
        return;
    }
    let kids = &tree.children[node];
    for i in 0..b {
        let child = if kids.is_empty() { node } else { kids[i % kids.len()] };
        pad(tree, child, depth + 1, Some(id), b, d, out);
    }
}

/// Branching and depth of a full regular tree: the frame is a tree whose
/// internal nodes all have exactly `b` children and whose leaves all sit at
/// depth `d`. `None` when the frame is not of that shape.
pub fn regular_tree_shape(frame: &Frame) -> Option<(usize, usize)> {
    if !properties(frame).tree {
        return None;
    }
    let depth = |w: usize| frame.predecessors(w).len() - 1;
    let children = |w: usize| {
        frame
            .successors(w)
            .iter()
            .filter(|&c| c != w && depth(c) == depth(w) + 1)
            .count()
    };
    let leaves: Vec<usize> = frame.worlds().filter(|&w| children(w) == 0).collect();
    let d = depth(leaves[0]);
    let b = frame.worlds().map(children).max().unwrap_or(0);
    let uniform = leaves.iter().all(|&l| depth(l) == d)
        && frame.worlds().all(|w| children(w) == 0 || children(w) == b);
    uniform.then_some((b, d))
}

/// Variable name of button `i`.
pub fn button_name(i: usize) -> String {
    format!("b{i}")
}

/// Variable name of ratchet button `i`.
pub fn ratchet_name(i: usize) -> String {
    format!("r{i}")
}

/// Largest button count [`powerset_button_model`] accepts.
pub const MAX_POWERSET_BUTTONS: usize = 6;

/// Inclusion order on the subsets of `{0..n-1}`, pointed at the empty set,
/// with `b_i` true exactly at the subsets containing `i`.
pub fn powerset_button_model(n: usize) -> Result<(PointedModel, Vec<Formula>), ConstructError> {
    if n > MAX_POWERSET_BUTTONS {
        return Err(ConstructError::Cap {
            needed: 1 << n.min(63),
            limit: 1 << MAX_POWERSET_BUTTONS,
        });
    }
    let frame = Frame::powerset(n);
    let valuation = (0..n)
        .map(|i| {
            let set = frame.worlds().filter(|&w| w >> i & 1 == 1).collect();
            (button_name(i), set)
        })
        .collect();
    let model = Model::new(frame, valuation)?;
    let buttons = (0..n).map(|i| Formula::var(button_name(i))).collect();
    Ok((PointedModel::new(model, 0)?, buttons))
}

/// Chain `w_0 < … < w_{n-1}` with `r_i` true from `w_i` upwards, pointed at
/// `w_0`. At `w_j` exactly `r_0 … r_j` are necessary.
pub fn ratchet_chain_model(n: usize) -> Result<(PointedModel, Vec<Formula>), ConstructError> {
    if n == 0 {
        return Err(ConstructError::Precondition("a ratchet needs at least one button"));
    }
    if n > MAX_WORLDS {
        return Err(ConstructError::Cap {
            needed: n,
            limit: MAX_WORLDS,
        });
    }
    let frame = Frame::chain(n);
    let valuation = (0..n)
        .map(|i| (ratchet_name(i), (i..n).collect()))
        .collect();
    let model = Model::new(frame, valuation)?;
    let ratchet = (0..n).map(|i| Formula::var(ratchet_name(i))).collect();
    Ok((PointedModel::new(model, 0)?, ratchet))
}
