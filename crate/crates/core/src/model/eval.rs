//! Subformula-labeling model checker.
//!
//! A formula is compiled once into a list of distinct subformulas in
//! bottom-up order; evaluating it on a frame computes the extension of each
//! entry exactly once, so a check costs O(|f| · n²) per valuation.

use std::collections::HashMap;

use crate::formula::Formula;
use crate::frame::Frame;
use crate::worldset::WorldSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    Var(usize),
    Const(bool),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Box(usize),
    Diamond(usize),
}

#[derive(Debug, Clone)]
pub struct Compiled {
    ops: Vec<Op>,
    vars: Vec<String>,
}

impl Compiled {
    pub fn new(f: &Formula) -> Compiled {
        let vars: Vec<String> = f.vars().into_iter().collect();
        let index: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut builder = Builder {
            ops: Vec::new(),
            seen: HashMap::new(),
            index: &index,
        };
        builder.add(f);
        let ops = builder.ops;
        Compiled { ops, vars }
    }

    /// Variables of the formula, sorted; `eval` takes valuations in this order.
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Number of distinct subformulas.
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Extension of the formula given one world set per variable.
    pub fn eval(&self, frame: &Frame, valuation: &[WorldSet]) -> WorldSet {
        let mut scratch = Vec::with_capacity(self.ops.len());
        self.eval_into(frame, valuation, &mut scratch)
    }

    pub(crate) fn eval_into(
        &self,
        frame: &Frame,
        valuation: &[WorldSet],
        ext: &mut Vec<WorldSet>,
    ) -> WorldSet {
        let n = frame.size();
        let all = frame.all();
        ext.clear();
        for op in &self.ops {
            let s = match *op {
                Op::Var(i) => valuation[i],
                Op::Const(true) => all,
                Op::Const(false) => WorldSet::EMPTY,
                Op::Not(a) => ext[a].complement(n),
                Op::And(a, b) => ext[a].intersection(ext[b]),
                Op::Or(a, b) => ext[a].union(ext[b]),
                Op::Implies(a, b) => ext[a].complement(n).union(ext[b]),
                Op::Iff(a, b) => WorldSet(!(ext[a].0 ^ ext[b].0) & all.0),
                Op::Box(a) => {
                    let inner = ext[a];
                    frame
                        .worlds()
                        .filter(|&w| frame.successors(w).is_subset(inner))
                        .collect()
                }
                Op::Diamond(a) => {
                    let inner = ext[a];
                    frame
                        .worlds()
                        .filter(|&w| frame.successors(w).intersects(inner))
                        .collect()
                }
            };
            ext.push(s);
        }
        *ext.last().expect("compiled formula is non-empty")
    }
}

struct Builder<'a> {
    ops: Vec<Op>,
    seen: HashMap<Op, usize>,
    index: &'a HashMap<&'a str, usize>,
}

impl Builder<'_> {
    fn add(&mut self, f: &Formula) -> usize {
        let op = match f {
            Formula::Var(name) => Op::Var(self.index[name.as_str()]),
            Formula::Const(b) => Op::Const(*b),
            Formula::Not(a) => Op::Not(self.add(a)),
            Formula::Box(a) => Op::Box(self.add(a)),
            Formula::Diamond(a) => Op::Diamond(self.add(a)),
            Formula::And(a, b) => Op::And(self.add(a), self.add(b)),
            Formula::Or(a, b) => Op::Or(self.add(a), self.add(b)),
            Formula::Implies(a, b) => Op::Implies(self.add(a), self.add(b)),
            Formula::Iff(a, b) => Op::Iff(self.add(a), self.add(b)),
        };
        // A formula is never its own proper subformula, so the root is
        // always the last entry pushed.
        if let Some(&i) = self.seen.get(&op) {
            return i;
        }
        self.ops.push(op);
        self.seen.insert(op, self.ops.len() - 1);
        self.ops.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn shares_repeated_subformulas() {
        let f = parse("[]p & []p").unwrap();
        let c = Compiled::new(&f);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn evaluates_box_and_diamond() {
        let chain = Frame::chain(3);
        let c = Compiled::new(&parse("[]p").unwrap());
        let ext = c.eval(&chain, &[WorldSet::from_worlds([1, 2])]);
        assert_eq!(ext, WorldSet::from_worlds([1, 2]));
        let c = Compiled::new(&parse("<>p").unwrap());
        assert_eq!(c.eval(&chain, &[WorldSet::singleton(1)]), WorldSet::from_worlds([0, 1]));
    }
}
