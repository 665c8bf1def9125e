//! Named formulas: penultimacy macros, axiom schemata, button patterns and
//! Jankov–Fine formulas.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Formula;
use crate::frame::Frame;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("schema {schema} takes {expected} argument(s), got {got}")]
    Arity {
        schema: Axiom,
        expected: usize,
        got: usize,
    },
    #[error("unknown schema `{0}`")]
    Unknown(String),
    #[error("pattern index {index} out of range for {len} button(s)")]
    PatternIndex { index: usize, len: usize },
    #[error("world {world} is not in a frame of {size} world(s)")]
    World { world: usize, size: usize },
}

/// Derived operators that the parser expands in place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Macro {
    /// `φ ∧ ◇¬φ ∧ □(¬φ → □¬φ)`
    Penultimate,
    /// `φ ∧ □(¬φ → □¬φ)`; unlike [`Macro::Penultimate`], φ may be necessary.
    WeakPenultimate,
    /// `◇φ ∧ ◇¬φ`
    Contingent,
}

impl Macro {
    /// Surface name as written in formula text.
    pub fn name(self) -> &'static str {
        match self {
            Macro::Penultimate => "penultimate",
            Macro::WeakPenultimate => "wpenultimate",
            Macro::Contingent => "contingent",
        }
    }

    pub fn from_name(name: &str) -> Option<Macro> {
        match name {
            "penultimate" => Some(Macro::Penultimate),
            "wpenultimate" | "weak_penultimate" => Some(Macro::WeakPenultimate),
            "contingent" => Some(Macro::Contingent),
            _ => None,
        }
    }

    pub fn build(self, arg: Formula) -> Formula {
        let neg = arg.clone().not();
        let stays_false = neg.clone().implies(neg.clone().boxed()).boxed();
        match self {
            Macro::Penultimate => Formula::conj([arg, neg.diamond(), stays_false]),
            Macro::WeakPenultimate => arg.and(stays_false),
            Macro::Contingent => arg.diamond().and(neg.diamond()),
        }
    }
}

pub fn penultimate(arg: Formula) -> Formula {
    Macro::Penultimate.build(arg)
}

pub fn weak_penultimate(arg: Formula) -> Formula {
    Macro::WeakPenultimate.build(arg)
}

pub fn contingent(arg: Formula) -> Formula {
    Macro::Contingent.build(arg)
}

/// Axiom schemata. Arguments are substituted for `p` (and `q`) in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    /// `□(p → q) → (□p → □q)`
    K,
    /// `□p → p`
    T,
    /// `□p → □□p`
    Four,
    /// `◇□p → □◇p`
    Dot2,
    /// `□(□p → q) ∨ □(□q → p)`
    Dot3,
    /// `□(□(p → □p) → p) → p`
    Grz,
    /// `contingent(p) → ◇(penultimate(p) ∨ penultimate(¬p))`
    GrzStar,
    /// `□p ∨ □¬p`
    Alt1,
    /// `p ∨ ◇(¬p ∧ □(p → □p))`
    GrzDisjunctive,
    /// `p ∨ ◇wpenultimate(¬p)`
    GrzConcise,
    /// `□((◇p → p) → □(◇p → p)) → □(p → □p) ∨ ◇penultimate(p)`, a theorem of K.
    TechnicalLemma,
}

impl Axiom {
    pub const ALL: [Axiom; 11] = [
        Axiom::K,
        Axiom::T,
        Axiom::Four,
        Axiom::Dot2,
        Axiom::Dot3,
        Axiom::Grz,
        Axiom::GrzStar,
        Axiom::Alt1,
        Axiom::GrzDisjunctive,
        Axiom::GrzConcise,
        Axiom::TechnicalLemma,
    ];

    pub fn arity(self) -> usize {
        match self {
            Axiom::K | Axiom::Dot3 => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::K => "K",
            Axiom::T => "T",
            Axiom::Four => "4",
            Axiom::Dot2 => ".2",
            Axiom::Dot3 => ".3",
            Axiom::Grz => "Grz",
            Axiom::GrzStar => "Grz*",
            Axiom::Alt1 => "Alt1",
            Axiom::GrzDisjunctive => "Grz-disjunctive",
            Axiom::GrzConcise => "Grz-concise",
            Axiom::TechnicalLemma => "technical-lemma",
        }
    }

    /// The schema instantiated at `p` (and `q`).
    pub fn instance(self) -> Formula {
        let args: Vec<Formula> = ["p", "q"][..self.arity()].iter().map(|v| Formula::var(*v)).collect();
        self.build(&args).expect("default arity")
    }

    pub fn build(self, args: &[Formula]) -> Result<Formula, SchemaError> {
        if args.len() != self.arity() {
            return Err(SchemaError::Arity {
                schema: self,
                expected: self.arity(),
                got: args.len(),
            });
        }
        let p = args[0].clone();
        let f = match self {
            Axiom::K => {
                let q = args[1].clone();
                p.clone()
                    .implies(q.clone())
                    .boxed()
                    .implies(p.boxed().implies(q.boxed()))
            }
            Axiom::T => p.clone().boxed().implies(p),
            Axiom::Four => p.clone().boxed().implies(p.boxed().boxed()),
            Axiom::Dot2 => p.clone().boxed().diamond().implies(p.diamond().boxed()),
            Axiom::Dot3 => {
                let q = args[1].clone();
                p.clone()
                    .boxed()
                    .implies(q.clone())
                    .boxed()
                    .or(q.boxed().implies(p).boxed())
            }
            Axiom::Grz => p
                .clone()
                .implies(p.clone().boxed())
                .boxed()
                .implies(p.clone())
                .boxed()
                .implies(p),
            Axiom::GrzStar => contingent(p.clone())
                .implies(penultimate(p.clone()).or(penultimate(p.not())).diamond()),
            Axiom::Alt1 => p.clone().boxed().or(p.not().boxed()),
            Axiom::GrzDisjunctive => p
                .clone()
                .or(p.clone().not().and(p.clone().implies(p.boxed()).boxed()).diamond()),
            Axiom::GrzConcise => p.clone().or(weak_penultimate(p.not()).diamond()),
            Axiom::TechnicalLemma => {
                let settled = p.clone().diamond().implies(p.clone());
                settled
                    .clone()
                    .implies(settled.boxed())
                    .boxed()
                    .implies(
                        p.clone()
                            .implies(p.clone().boxed())
                            .boxed()
                            .or(penultimate(p).diamond()),
                    )
            }
        };
        Ok(f)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = SchemaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase();
        let axiom = match key.as_str() {
            "k" => Axiom::K,
            "t" => Axiom::T,
            "4" | "four" => Axiom::Four,
            ".2" | "2" | "dot2" => Axiom::Dot2,
            ".3" | "3" | "dot3" => Axiom::Dot3,
            "grz" => Axiom::Grz,
            "grz*" | "grzstar" | "grz_star" => Axiom::GrzStar,
            "alt1" => Axiom::Alt1,
            "grz-disjunctive" | "grz_disjunctive" => Axiom::GrzDisjunctive,
            "grz-concise" | "grz_concise" => Axiom::GrzConcise,
            "technical-lemma" | "technical_lemma" => Axiom::TechnicalLemma,
            _ => return Err(SchemaError::Unknown(s.to_string())),
        };
        Ok(axiom)
    }
}

pub fn build_axiom(schema: Axiom, args: &[Formula]) -> Result<Formula, SchemaError> {
    schema.build(args)
}

/// Button pattern `Θ_A`: exactly the buttons indexed by `pattern` are necessary.
pub fn theta(buttons: &[Formula], pattern: &[usize]) -> Result<Formula, SchemaError> {
    if let Some(&index) = pattern.iter().find(|&&i| i >= buttons.len()) {
        return Err(SchemaError::PatternIndex {
            index,
            len: buttons.len(),
        });
    }
    Ok(Formula::conj(buttons.iter().enumerate().map(|(i, b)| {
        let pushed = b.clone().boxed();
        if pattern.contains(&i) {
            pushed
        } else {
            pushed.not()
        }
    })))
}

/// Name of the fresh variable standing for node `i` in a Jankov–Fine formula.
pub fn jankov_variable(i: usize) -> String {
    format!("w{i}")
}

/// The Jankov–Fine formula of `frame` rooted at `root`:
///
/// `w_root ∧ □(⋁ w ∧ ⋀_{w≠v}(w → ¬v) ∧ ⋀_{w≤v}(w → ◇v) ∧ ⋀_{w≰v}(w → ¬◇v))`
///
/// The clauses under the box form one flat left-nested conjunction; empty
/// groups contribute nothing.
pub fn jankov_fine(frame: &Frame, root: usize) -> Result<Formula, SchemaError> {
    let n = frame.size();
    if root >= n {
        return Err(SchemaError::World { world: root, size: n });
    }
    let v = |i: usize| Formula::var(jankov_variable(i));
    let mut clauses = vec![Formula::disj((0..n).map(v))];
    for w in 0..n {
        for u in 0..n {
            if w != u {
                clauses.push(v(w).implies(v(u).not()));
            }
        }
    }
    for w in 0..n {
        for u in 0..n {
            if frame.relates(w, u) {
                clauses.push(v(w).implies(v(u).diamond()));
            }
        }
    }
    for w in 0..n {
        for u in 0..n {
            if !frame.relates(w, u) {
                clauses.push(v(w).implies(v(u).diamond().not()));
            }
        }
    }
    Ok(v(root).and(Formula::conj(clauses).boxed()))
}
