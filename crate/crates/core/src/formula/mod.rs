//! Modal formulas: syntax trees, the text grammar, uniform substitution and
//! the named formulas and schemata used throughout the crate.

mod parse;
pub mod random;
mod schema;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use parse::{parse, ParseError};
pub use schema::{build_axiom, jankov_fine, jankov_variable, theta, Axiom, Macro, SchemaError};

/// A propositional modal formula.
///
/// `Diamond` is a primitive node, not an abbreviation for `~[]~`, so printed
/// output keeps the notation it was written in.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Const(bool),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Diamond(Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn top() -> Formula {
        Formula::Const(true)
    }

    pub fn bottom() -> Formula {
        Formula::Const(false)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    pub fn boxed(self) -> Formula {
        Formula::Box(Box::new(self))
    }

    pub fn diamond(self) -> Formula {
        Formula::Diamond(Box::new(self))
    }

    /// Left-nested conjunction. The empty conjunction is `true`.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Const(true))
    }

    /// Left-nested disjunction. The empty disjunction is `false`.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Const(false))
    }

    /// The distinct variables occurring in the formula, sorted by name.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(name) => {
                out.insert(name.clone());
            }
            Formula::Const(_) => {}
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 1,
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    /// Height of the tree; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 0,
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Simultaneous uniform substitution.
    pub fn substitute(&self, s: &Substitution) -> Formula {
        if s.is_empty() {
            return self.clone();
        }
        self.subst_inner(s)
    }

    fn subst_inner(&self, s: &Substitution) -> Formula {
        let un = |a: &Formula| Box::new(a.subst_inner(s));
        match self {
            Formula::Var(name) => s.get(name).cloned().unwrap_or_else(|| self.clone()),
            Formula::Const(_) => self.clone(),
            Formula::Not(a) => Formula::Not(un(a)),
            Formula::Box(a) => Formula::Box(un(a)),
            Formula::Diamond(a) => Formula::Diamond(un(a)),
            Formula::And(a, b) => Formula::And(un(a), un(b)),
            Formula::Or(a, b) => Formula::Or(un(a), un(b)),
            Formula::Implies(a, b) => Formula::Implies(un(a), un(b)),
            Formula::Iff(a, b) => Formula::Iff(un(a), un(b)),
        }
    }

    /// Prints with the minimal parentheses the grammar needs.
    pub fn print(&self) -> String {
        self.to_string()
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) | Formula::Box(_) | Formula::Diamond(_) => 5,
            Formula::Var(_) | Formula::Const(_) => 6,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min_prec {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Formula::Var(name) => f.write_str(name),
            Formula::Const(true) => f.write_str("true"),
            Formula::Const(false) => f.write_str("false"),
            Formula::Not(a) => {
                f.write_str("~")?;
                a.write_at(f, 5)
            }
            Formula::Box(a) => {
                f.write_str("[]")?;
                a.write_at(f, 5)
            }
            Formula::Diamond(a) => {
                f.write_str("<>")?;
                a.write_at(f, 5)
            }
            // `&`, `|` and `<->` associate to the left, `->` to the right.
            Formula::And(a, b) => binary(f, a, " & ", b, 4, 5),
            Formula::Or(a, b) => binary(f, a, " | ", b, 3, 4),
            Formula::Iff(a, b) => binary(f, a, " <-> ", b, 1, 2),
            Formula::Implies(a, b) => binary(f, a, " -> ", b, 3, 2),
        }
    }
}

fn binary(
    f: &mut fmt::Formatter<'_>,
    lhs: &Formula,
    op: &str,
    rhs: &Formula,
    lhs_prec: u8,
    rhs_prec: u8,
) -> fmt::Result {
    lhs.write_at(f, lhs_prec)?;
    f.write_str(op)?;
    rhs.write_at(f, rhs_prec)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// A map from variable names to replacement formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<String, Formula>);

impl Substitution {
    pub fn new() -> Self {
        Substitution(BTreeMap::new())
    }

    pub fn insert(&mut self, var: impl Into<String>, replacement: Formula) -> &mut Self {
        self.0.insert(var.into(), replacement);
        self
    }

    pub fn with(mut self, var: impl Into<String>, replacement: Formula) -> Self {
        self.insert(var, replacement);
        self
    }

    pub fn get(&self, var: &str) -> Option<&Formula> {
        self.0.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Formula)> {
        self.0.iter()
    }
}

impl FromIterator<(String, Formula)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Formula)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl From<BTreeMap<String, Formula>> for Substitution {
    fn from(map: BTreeMap<String, Formula>) -> Self {
        Substitution(map)
    }
}
