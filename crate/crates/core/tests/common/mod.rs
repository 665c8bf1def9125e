//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's own predicates or evaluator.

#![allow(dead_code)]

use std::collections::BTreeMap;

use grzlab_core::formula::Formula;
use grzlab_core::frame::{Frame, FrameClass};

/// Relation as an adjacency matrix.
pub type Rel = Vec<Vec<bool>>;

pub fn rel_of(frame: &Frame) -> Rel {
    let n = frame.size();
    (0..n).map(|a| (0..n).map(|b| frame.relates(a, b)).collect()).collect()
}

pub fn frame_of(rel: &Rel) -> Frame {
    Frame::from_fn(rel.len(), |a, b| rel[a][b]).unwrap()
}

/// Every relation on `n` worlds, in bit order.
pub fn all_relations(n: usize) -> impl Iterator<Item = Rel> {
    (0u64..1 << (n * n)).map(move |bits| {
        (0..n)
            .map(|a| (0..n).map(|b| bits >> (a * n + b) & 1 == 1).collect())
            .collect()
    })
}

pub fn reflexive(r: &Rel) -> bool {
    (0..r.len()).all(|a| r[a][a])
}

pub fn transitive(r: &Rel) -> bool {
    let n = r.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(r[a][b] && r[b][c]) || r[a][c])))
}

pub fn antisymmetric(r: &Rel) -> bool {
    let n = r.len();
    (0..n).all(|a| (0..n).all(|b| a == b || !(r[a][b] && r[b][a])))
}

pub fn preorder(r: &Rel) -> bool {
    reflexive(r) && transitive(r)
}

pub fn poset(r: &Rel) -> bool {
    preorder(r) && antisymmetric(r)
}

pub fn directed(r: &Rel) -> bool {
    let n = r.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).any(|c| r[a][c] && r[b][c])))
}

pub fn linear(r: &Rel) -> bool {
    let n = r.len();
    (0..n).all(|a| (0..n).all(|b| r[a][b] || r[b][a]))
}

pub fn join(r: &Rel, a: usize, b: usize) -> Option<usize> {
    let n = r.len();
    let ub: Vec<usize> = (0..n).filter(|&c| r[a][c] && r[b][c]).collect();
    ub.iter().copied().find(|&c| ub.iter().all(|&d| r[c][d]))
}

pub fn meet(r: &Rel, a: usize, b: usize) -> Option<usize> {
    let n = r.len();
    let lb: Vec<usize> = (0..n).filter(|&c| r[c][a] && r[c][b]).collect();
    lb.iter().copied().find(|&c| lb.iter().all(|&d| r[d][c]))
}

pub fn lattice(r: &Rel) -> bool {
    let n = r.len();
    poset(r) && (0..n).all(|a| (0..n).all(|b| join(r, a, b).is_some() && meet(r, a, b).is_some()))
}

pub fn boolean(r: &Rel) -> bool {
    if !lattice(r) {
        return false;
    }
    let n = r.len();
    let bot = (0..n).find(|&a| (0..n).all(|b| r[a][b])).unwrap();
    let top = (0..n).find(|&a| (0..n).all(|b| r[b][a])).unwrap();
    let j = |a, b| join(r, a, b).unwrap();
    let m = |a, b| meet(r, a, b).unwrap();
    let distributive =
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(a, j(b, c)) == j(m(a, b), m(a, c)))));
    let complemented = (0..n).all(|a| (0..n).any(|b| j(a, b) == top && m(a, b) == bot));
    distributive && complemented
}

pub fn tree(r: &Rel) -> bool {
    let n = r.len();
    if n == 0 || !poset(r) {
        return false;
    }
    let rooted = (0..n).any(|a| (0..n).all(|b| r[a][b]));
    let chains = (0..n).all(|w| {
        let down: Vec<usize> = (0..n).filter(|&v| r[v][w]).collect();
        down.iter().all(|&a| down.iter().all(|&b| r[a][b] || r[b][a]))
    });
    rooted && chains
}

pub fn baled(r: &Rel) -> bool {
    let n = r.len();
    if !poset(r) {
        return false;
    }
    let Some(top) = (0..n).find(|&a| (0..n).all(|b| r[b][a])) else {
        return false;
    };
    let rest: Vec<usize> = (0..n).filter(|&w| w != top).collect();
    let sub: Rel = rest.iter().map(|&a| rest.iter().map(|&b| r[a][b]).collect()).collect();
    tree(&sub)
}

pub fn alt1(r: &Rel) -> bool {
    r.iter().all(|row| row.iter().filter(|&&x| x).count() <= 1)
}

pub fn in_class(r: &Rel, class: FrameClass) -> bool {
    match class {
        FrameClass::Arbitrary => true,
        FrameClass::Transitive => transitive(r),
        FrameClass::Preorder => preorder(r),
        FrameClass::DirectedPreorder => preorder(r) && directed(r),
        FrameClass::LinearPreorder => preorder(r) && linear(r),
        FrameClass::Poset => poset(r),
        FrameClass::DirectedPoset => poset(r) && directed(r),
        FrameClass::Lattice => lattice(r),
        FrameClass::BooleanAlgebra => boolean(r),
        FrameClass::LinearOrder => poset(r) && linear(r),
        FrameClass::Tree => tree(r),
        FrameClass::BaledTree => baled(r),
        FrameClass::Alt1 => alt1(r),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least bit encoding of the relation over all relabelings.
pub fn naive_canon(r: &Rel) -> u64 {
    let n = r.len();
    permutations(n)
        .iter()
        .map(|p| {
            let mut bits = 0u64;
            for a in 0..n {
                for b in 0..n {
                    if r[p[a]][p[b]] {
                        bits |= 1 << (a * n + b);
                    }
                }
            }
            bits
        })
        .min()
        .unwrap()
}

/// Direct recursive evaluation of `f` at `w`.
pub fn holds(r: &Rel, val: &BTreeMap<String, Vec<bool>>, w: usize, f: &Formula) -> bool {
    let n = r.len();
    match f {
        Formula::Var(v) => val.get(v).is_some_and(|s| s[w]),
        Formula::Const(b) => *b,
        Formula::Not(a) => !holds(r, val, w, a),
        Formula::And(a, b) => holds(r, val, w, a) && holds(r, val, w, b),
        Formula::Or(a, b) => holds(r, val, w, a) || holds(r, val, w, b),
        Formula::Implies(a, b) => !holds(r, val, w, a) || holds(r, val, w, b),
        Formula::Iff(a, b) => holds(r, val, w, a) == holds(r, val, w, b),
        Formula::Box(a) => (0..n).filter(|&v| r[w][v]).all(|v| holds(r, val, v, a)),
        Formula::Diamond(a) => (0..n).filter(|&v| r[w][v]).any(|v| holds(r, val, v, a)),
    }
}

/// Frame validity by running through every valuation of the formula's variables.
pub fn naive_valid(r: &Rel, f: &Formula) -> bool {
    let n = r.len();
    let vars: Vec<String> = f.vars().into_iter().collect();
    let bits = vars.len() * n;
    (0u64..1 << bits).all(|code| {
        let val: BTreeMap<String, Vec<bool>> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), (0..n).map(|w| code >> (i * n + w) & 1 == 1).collect()))
            .collect();
        (0..n).all(|w| holds(r, &val, w, f))
    })
}

/// Flattens a left-nested conjunction.
pub fn conjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::And(a, b) => {
            let mut v = conjuncts(a);
            v.push(b);
            v
        }
        other => vec![other],
    }
}

/// Flattens a left-nested disjunction.
pub fn disjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::Or(a, b) => {
            let mut v = disjuncts(a);
            v.push(b);
            v
        }
        other => vec![other],
    }
}

/// The clauses under the box of a Jankov-Fine formula.
pub fn body_clauses(jf: &Formula) -> Vec<&Formula> {
    match jf {
        Formula::And(_, body) => match &**body {
            Formula::Box(inner) => conjuncts(inner),
            other => panic!("unboxed body {other}"),
        },
        other => panic!("not a Jankov-Fine formula: {other}"),
    }
}
