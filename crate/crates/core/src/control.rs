//! Control statements (buttons, switches, ratchets) and frame and model
//! labelings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bisim::are_bisimilar;
use crate::formula::{jankov_fine, jankov_variable, theta, Formula, SchemaError, Substitution};
use crate::frame::{properties, Frame};
use crate::model::{Model, ModelError, PointedModel};
use crate::worldset::WorldSet;

/// Largest statement count for the independence kinds, which sweep all
/// `2^n` patterns.
pub const MAX_INDEPENDENT: usize = 5;

/// Largest lattice [`labeling_from_buttons`] accepts; each label is a
/// disjunction over subsets of the other nodes.
pub const MAX_BUTTON_LABELING_NODES: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ControlError {
    #[error("{kind} takes at most {cap} statements, got {got}")]
    TooManyStatements { kind: ControlKind, got: usize, cap: usize },
    #[error("{0} needs at least one statement")]
    NoStatements(ControlKind),
    #[error("frame is not a lattice")]
    NotLattice,
    #[error("frame is not a finite linear order")]
    NotLinear,
    #[error("node {0} is not the least element")]
    RootNotLeast(usize),
    #[error("{nodes} node(s) need {needed} button(s), got {got}")]
    TooFewButtons { nodes: usize, needed: usize, got: usize },
    #[error("frame has {nodes} node(s) but {got} ratchet button(s) were given")]
    LengthMismatch { nodes: usize, got: usize },
    #[error("labeling has {labels} label(s) for {worlds} world(s)")]
    LabelCount { labels: usize, worlds: usize },
    #[error("node {node} is outside the frame of {size} world(s)")]
    NodeOutOfRange { node: usize, size: usize },
    #[error("model has {model} world(s) but the labeling's frame has {frame}")]
    FrameMismatch { model: usize, frame: usize },
    #[error("lattice of {nodes} nodes is above the cap of {cap}")]
    Cap { nodes: usize, cap: usize },
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControlKind {
    Button,
    Switch,
    IndependentButtons,
    IndependentSwitches,
    Ratchet,
}

impl ControlKind {
    pub const ALL: [ControlKind; 5] = [
        ControlKind::Button,
        ControlKind::Switch,
        ControlKind::IndependentButtons,
        ControlKind::IndependentSwitches,
        ControlKind::Ratchet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ControlKind::Button => "button",
            ControlKind::Switch => "switch",
            ControlKind::IndependentButtons => "independent_buttons",
            ControlKind::IndependentSwitches => "independent_switches",
            ControlKind::Ratchet => "ratchet",
        }
    }
}

impl fmt::Display for ControlKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ControlKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        ControlKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| format!("unknown control kind `{s}`"))
    }
}

/// One formula a control statement must satisfy at the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub name: String,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlReport {
    pub kind: ControlKind,
    /// Conditions that fail at the point, in the order they were generated.
    pub failures: Vec<Condition>,
}

impl ControlReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn pattern(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// `Σ_A`: exactly the switches in `A` are on.
fn sigma(switches: &[Formula], mask: usize) -> Formula {
    Formula::conj(switches.iter().enumerate().map(|(i, s)| {
        if mask >> i & 1 == 1 {
            s.clone()
        } else {
            s.clone().not()
        }
    }))
}

fn fmt_pattern(mask: usize, n: usize) -> String {
    let items: Vec<String> = pattern(mask, n).iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// The formulas defining `kind` for `stmts`, split into separately checkable
/// conjuncts.
pub fn control_conditions(kind: ControlKind, stmts: &[Formula]) -> Result<Vec<Condition>, ControlError> {
    let n = stmts.len();
    let independent = matches!(kind, ControlKind::IndependentButtons | ControlKind::IndependentSwitches);
    if independent && n > MAX_INDEPENDENT {
        return Err(ControlError::TooManyStatements {
            kind,
            got: n,
            cap: MAX_INDEPENDENT,
        });
    }
    if kind == ControlKind::Ratchet && n == 0 {
        return Err(ControlError::NoStatements(kind));
    }
    let cond = |name: String, formula: Formula| Condition { name, formula };
    let pushed = |i: usize| stmts[i].clone().boxed();
    let mut out = Vec::new();
    match kind {
        ControlKind::Button => {
            for (i, b) in stmts.iter().enumerate() {
                out.push(cond(format!("button {i}"), b.clone().boxed().diamond().boxed()));
            }
        }
        ControlKind::Switch => {
            for (i, s) in stmts.iter().enumerate() {
                let f = s.clone().diamond().and(s.clone().not().diamond()).boxed();
                out.push(cond(format!("switch {i}"), f));
            }
        }
        ControlKind::IndependentButtons => {
            for i in 0..n {
                out.push(cond(format!("button {i} unpushed"), pushed(i).not()));
            }
            for a in 0..1usize << n {
                let reach = Formula::conj(
                    (0..1usize << n)
                        .filter(|&b| b & a == a)
                        .map(|b| theta(stmts, &pattern(b, n)).map(Formula::diamond))
                        .collect::<Result<Vec<_>, _>>()?,
                );
                let f = theta(stmts, &pattern(a, n))?.implies(reach).boxed();
                out.push(cond(format!("pattern {} extends", fmt_pattern(a, n)), f));
            }
        }
        ControlKind::IndependentSwitches => {
            for a in 0..1usize << n {
                let f = sigma(stmts, a).diamond().boxed();
                out.push(cond(format!("pattern {} reachable", fmt_pattern(a, n)), f));
            }
        }
        ControlKind::Ratchet => {
            out.push(cond(
                "initially only button 0".into(),
                Formula::conj(std::iter::once(pushed(0)).chain((1..n).map(|i| pushed(i).not()))),
            ));
            for j in 0..n {
                for i in 0..j {
                    let f = pushed(j).implies(pushed(i)).boxed();
                    out.push(cond(format!("button {j} pushed implies {i} pushed"), f));
                }
            }
            for i in 0..n {
                let volume = Formula::conj(std::iter::once(pushed(i)).chain((i + 1..n).map(|j| pushed(j).not())));
                let f = pushed(i).not().implies(volume.diamond()).boxed();
                out.push(cond(format!("button {i} pushable alone"), f));
            }
        }
    }
    Ok(out)
}

/// Model-checks every condition of `kind` at the point of `p`.
pub fn check_control(kind: ControlKind, p: &PointedModel, stmts: &[Formula]) -> Result<ControlReport, ControlError> {
    let failures = control_conditions(kind, stmts)?
        .into_iter()
        .filter(|c| !p.satisfies(&c.formula))
        .collect();
    Ok(ControlReport { kind, failures })
}

/// An assertion `Φ_w` for every node `w` of a frame, with a designated node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub frame: Frame,
    pub root: usize,
    pub labels: Vec<Formula>,
}

impl Labeling {
    pub fn new(frame: Frame, root: usize, labels: Vec<Formula>) -> Result<Labeling, ControlError> {
        if labels.len() != frame.size() {
            return Err(ControlError::LabelCount {
                labels: labels.len(),
                worlds: frame.size(),
            });
        }
        if root >= frame.size() {
            return Err(ControlError::NodeOutOfRange {
                node: root,
                size: frame.size(),
            });
        }
        Ok(Labeling { frame, root, labels })
    }

    pub fn label(&self, w: usize) -> &Formula {
        &self.labels[w]
    }

    /// Interprets Jankov–Fine variable `w<i>` as `Φ_i`.
    pub fn jankov_substitution(&self) -> Substitution {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, f)| (jankov_variable(i), f.clone()))
            .collect()
    }

    /// The Jankov–Fine formula of the frame with every node variable replaced
    /// by its label.
    pub fn jankov_fine_instance(&self) -> Formula {
        jankov_fine(&self.frame, self.root)
            .expect("root checked on construction")
            .substitute(&self.jankov_substitution())
    }
}

/// A failed labeling condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelingViolation {
    /// The point does not satisfy the root's label.
    Initial,
    /// At `world`, where `Φ_node` holds, `◇Φ_target` is `possible` although
    /// `node ≤ target` is the opposite.
    Accessibility {
        world: usize,
        node: usize,
        target: usize,
        possible: bool,
    },
    /// At `world` the labels of `nodes` hold; exactly one should.
    Uniqueness { world: usize, nodes: Vec<usize> },
}

impl fmt::Display for LabelingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelingViolation::Initial => write!(f, "point does not satisfy the root label"),
            LabelingViolation::Accessibility {
                world,
                node,
                target,
                possible,
            } => {
                let (poss, rel) = if *possible { ("possible", "not below") } else { ("impossible", "below") };
                write!(f, "world {world} (label {node}): label {target} is {poss} but {node} is {rel} {target}")
            }
            LabelingViolation::Uniqueness { world, nodes } => {
                write!(f, "world {world}: {} labels hold {nodes:?}", nodes.len())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelingReport {
    pub violations: Vec<LabelingViolation>,
}

impl LabelingReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the three frame-labeling conditions against `n` at every world
/// reachable from its point, reporting every violation found.
pub fn check_frame_labeling(labeling: &Labeling, n: &PointedModel) -> LabelingReport {
    let frame = &labeling.frame;
    let ext: Vec<WorldSet> = labeling.labels.iter().map(|f| n.model.extension(f)).collect();
    let poss: Vec<WorldSet> = labeling
        .labels
        .iter()
        .map(|f| n.model.extension(&f.clone().diamond()))
        .collect();
    let mut violations = Vec::new();
    if !ext[labeling.root].contains(n.point()) {
        violations.push(LabelingViolation::Initial);
    }
    for u in n.reachable() {
        let holding: Vec<usize> = frame.worlds().filter(|&w| ext[w].contains(u)).collect();
        if holding.len() != 1 {
            violations.push(LabelingViolation::Uniqueness {
                world: u,
                nodes: holding.clone(),
            });
        }
        for &w in &holding {
            for target in frame.worlds() {
                let possible = poss[target].contains(u);
                if possible != frame.relates(w, target) {
                    violations.push(LabelingViolation::Accessibility {
                        world: u,
                        node: w,
                        target,
                        possible,
                    });
                }
            }
        }
    }
    LabelingReport { violations }
}

/// Button labeling of a finite lattice: node `w ≠ w0` is assigned button
/// `b_w` (the non-root nodes in index order take the buttons in order), and
/// `Φ_w` is the disjunction of the patterns `b_S` with `sup S = w`, where
/// `b_S` says exactly the buttons of `S` are pushed. Subsets are visited in
/// bitmask order.
pub fn labeling_from_buttons(frame: &Frame, root: usize, buttons: &[Formula]) -> Result<Labeling, ControlError> {
    frame.check_world(root).map_err(ModelError::from)?;
    if !properties(frame).lattice {
        return Err(ControlError::NotLattice);
    }
    if frame.least() != Some(root) {
        return Err(ControlError::RootNotLeast(root));
    }
    let size = frame.size();
    if size > MAX_BUTTON_LABELING_NODES {
        return Err(ControlError::Cap {
            nodes: size,
            cap: MAX_BUTTON_LABELING_NODES,
        });
    }
    let k = size - 1;
    if buttons.len() < k {
        return Err(ControlError::TooFewButtons {
            nodes: size,
            needed: k,
            got: buttons.len(),
        });
    }
    let nodes: Vec<usize> = frame.worlds().filter(|&w| w != root).collect();
    let used = &buttons[..k];
    let mut disjuncts: Vec<Vec<Formula>> = vec![Vec::new(); size];
    for mask in 0..1usize << k {
        let s = pattern(mask, k);
        let sup = frame
            .sup(s.iter().map(|&i| nodes[i]).collect())
            .expect("lattices have all finite sups");
        disjuncts[sup].push(theta(used, &s)?);
    }
    let labels = disjuncts.into_iter().map(Formula::disj).collect();
    Labeling::new(frame.clone(), root, labels)
}

/// Ratchet labeling of a finite linear order: the `i`-th node from the
/// bottom is labeled "pushed exactly up to `r_i`".
pub fn labeling_from_ratchet(frame: &Frame, ratchet: &[Formula]) -> Result<Labeling, ControlError> {
    let props = properties(frame);
    if !(props.poset() && props.linear) {
        return Err(ControlError::NotLinear);
    }
    let n = frame.size();
    if ratchet.len() != n {
        return Err(ControlError::LengthMismatch {
            nodes: n,
            got: ratchet.len(),
        });
    }
    let mut labels = vec![Formula::top(); n];
    for w in frame.worlds() {
        let i = frame.predecessors(w).len() - 1;
        let pushed = ratchet[i].clone().boxed();
        labels[w] = match ratchet.get(i + 1) {
            Some(next) => pushed.and(next.clone().boxed().not()),
            None => pushed,
        };
    }
    let root = frame.least().expect("non-empty chains have a least element");
    Labeling::new(frame.clone(), root, labels)
}

/// `ψ_p = ⋁ {Φ_w : p holds at w in m}` for each variable of `m`.
pub fn model_labeling_from_frame_labeling(
    m: &Model,
    labeling: &Labeling,
) -> Result<BTreeMap<String, Formula>, ControlError> {
    if m.frame.size() != labeling.frame.size() {
        return Err(ControlError::FrameMismatch {
            model: m.frame.size(),
            frame: labeling.frame.size(),
        });
    }
    Ok(m.vars()
        .map(|p| {
            let psi = Formula::disj(m.value(p).iter().map(|w| labeling.labels[w].clone()));
            (p.to_string(), psi)
        })
        .collect())
}

/// Decides whether `psi` is a model labeling of `(m, w0)` in `n`: the model
/// on `n`'s frame interpreting each variable `p` of `m` as `ψ_p` must be
/// bisimilar to `(m, w0)` over the variables of `m`. A variable without an
/// entry in `psi` is read as itself.
pub fn verify_model_labeling(
    m: &Model,
    w0: usize,
    n: &PointedModel,
    psi: &BTreeMap<String, Formula>,
) -> Result<bool, ControlError> {
    let start = m.clone().at(w0)?;
    let vocab: BTreeSet<String> = m.vars().map(str::to_string).collect();
    let valuation = vocab
        .iter()
        .map(|p| {
            let ext = match psi.get(p) {
                Some(f) => n.model.extension(f),
                None => n.model.value(p),
            };
            (p.clone(), ext)
        })
        .collect();
    let relabeled = Model::new(n.model.frame.clone(), valuation)?.at(n.point())?;
    Ok(are_bisimilar(&start, &relabeled, &vocab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{powerset_button_model, ratchet_chain_model};
    use crate::formula::parse;

    #[test]
    fn powerset_buttons_are_independent() {
        for n in 0..=3 {
            let (p, buttons) = powerset_button_model(n).unwrap();
            let r = check_control(ControlKind::IndependentButtons, &p, &buttons).unwrap();
            assert!(r.holds(), "n={n}: {:?}", r.failures);
            assert!(check_control(ControlKind::Button, &p, &buttons).unwrap().holds());
        }
    }

    #[test]
    fn ratchet_chain_is_a_ratchet() {
        for n in 1..=4 {
            let (p, r) = ratchet_chain_model(n).unwrap();
            assert!(check_control(ControlKind::Ratchet, &p, &r).unwrap().holds());
        }
        let (p, mut r) = ratchet_chain_model(3).unwrap();
        r.swap(1, 2);
        assert!(!check_control(ControlKind::Ratchet, &p, &r).unwrap().holds());
    }

    #[test]
    fn switch_needs_both_values() {
        let p = Model::bare(Frame::chain(1)).at(0).unwrap();
        let r = check_control(ControlKind::Switch, &p, &[Formula::var("p")]).unwrap();
        assert!(!r.holds());
        let c = Model::bare(Frame::cluster(2)).with("s", WorldSet::singleton(1)).unwrap().at(0).unwrap();
        assert!(check_control(ControlKind::Switch, &c, &[Formula::var("s")]).unwrap().holds());
    }

    #[test]
    fn independent_switches_on_a_cluster() {
        let c = Model::bare(Frame::cluster(4))
            .with("s", WorldSet::from_worlds([1, 3]))
            .unwrap()
            .with("t", WorldSet::from_worlds([2, 3]))
            .unwrap()
            .at(0)
            .unwrap();
        let st = [Formula::var("s"), Formula::var("t")];
        assert!(check_control(ControlKind::IndependentSwitches, &c, &st).unwrap().holds());
        let c3 = Model::bare(Frame::cluster(3))
            .with("s", WorldSet::from_worlds([1, 2]))
            .unwrap()
            .with("t", WorldSet::singleton(2))
            .unwrap()
            .at(0)
            .unwrap();
        let r = check_control(ControlKind::IndependentSwitches, &c3, &st).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].name, "pattern {1} reachable");
    }

    #[test]
    fn independence_cap() {
        let six: Vec<Formula> = (0..6).map(|i| Formula::var(format!("b{i}"))).collect();
        let p = Model::bare(Frame::chain(1)).at(0).unwrap();
        assert!(matches!(
            check_control(ControlKind::IndependentButtons, &p, &six),
            Err(ControlError::TooManyStatements { .. })
        ));
    }

    #[test]
    fn two_chain_button_labeling() {
        let (n, buttons) = powerset_button_model(1).unwrap();
        let l = labeling_from_buttons(&Frame::chain(2), 0, &buttons).unwrap();
        assert_eq!(l.labels[0].print(), "~[]b0");
        assert_eq!(l.labels[1].print(), "[]b0");
        assert!(check_frame_labeling(&l, &n).holds());
    }

    #[test]
    fn diamond_button_labeling() {
        let (n, buttons) = powerset_button_model(3).unwrap();
        let l = labeling_from_buttons(&Frame::diamond(), 0, &buttons).unwrap();
        assert!(check_frame_labeling(&l, &n).holds());
        assert!(n.satisfies(&l.jankov_fine_instance()));
        assert_eq!(
            labeling_from_buttons(&Frame::antichain(2), 0, &buttons),
            Err(ControlError::NotLattice)
        );
    }

    #[test]
    fn swapped_labels_fail() {
        let (n, buttons) = powerset_button_model(1).unwrap();
        let mut l = labeling_from_buttons(&Frame::chain(2), 0, &buttons).unwrap();
        l.labels.swap(0, 1);
        let report = check_frame_labeling(&l, &n);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, LabelingViolation::Accessibility { .. })));
        assert!(!n.satisfies(&l.jankov_fine_instance()));
    }

    #[test]
    fn self_labeling() {
        let frame = Frame::diamond();
        let mut m = Model::bare(frame.clone());
        for w in frame.worlds() {
            m.set(jankov_variable(w), WorldSet::singleton(w)).unwrap();
        }
        let labels = frame.worlds().map(|w| Formula::var(jankov_variable(w))).collect();
        let l = Labeling::new(frame, 0, labels).unwrap();
        let n = m.at(0).unwrap();
        assert!(check_frame_labeling(&l, &n).holds());
    }

    #[test]
    fn ratchet_labelings() {
        let l = labeling_from_ratchet(&Frame::chain(1), &[Formula::var("r0")]).unwrap();
        assert_eq!(l.labels[0].print(), "[]r0");
        let (n, r) = ratchet_chain_model(3).unwrap();
        let l = labeling_from_ratchet(&Frame::chain(3), &r).unwrap();
        assert_eq!(l.labels[1].print(), "[]r1 & ~[]r2");
        assert!(check_frame_labeling(&l, &n).holds());
        assert!(matches!(
            labeling_from_ratchet(&Frame::chain(2), &r),
            Err(ControlError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn model_labelings() {
        let (n, buttons) = powerset_button_model(3).unwrap();
        let l = labeling_from_buttons(&Frame::diamond(), 0, &buttons).unwrap();
        let m = Model::bare(Frame::diamond()).with("p", WorldSet::from_worlds([1, 3])).unwrap();
        let psi = model_labeling_from_frame_labeling(&m, &l).unwrap();
        assert_eq!(psi["p"], l.labels[1].clone().or(l.labels[3].clone()));
        assert!(verify_model_labeling(&m, 0, &n, &psi).unwrap());
        let mut bad = psi.clone();
        bad.insert("p".into(), l.labels[2].clone());
        assert!(!verify_model_labeling(&m, 0, &n, &bad).unwrap());

        let nowhere = Model::bare(Frame::diamond()).with("q", WorldSet::EMPTY).unwrap();
        let psi = model_labeling_from_frame_labeling(&nowhere, &l).unwrap();
        assert_eq!(psi["q"], Formula::bottom());
    }

    #[test]
    fn identity_model_labeling() {
        let m = Model::bare(Frame::chain(3)).with("p", WorldSet::singleton(2)).unwrap();
        let psi = [("p".to_string(), parse("p").unwrap())].into_iter().collect();
        assert!(verify_model_labeling(&m, 0, &m.clone().at(0).unwrap(), &psi).unwrap());
    }
}
