mod common;

use std::collections::BTreeMap;

use common::holds;
use grzlab_core::bisim::{is_bisimulation, largest_bisimulation, vocabulary};
use grzlab_core::construct::{regular_tree_shape, unravel_tree};
use grzlab_core::formula::{jankov_fine, parse, Formula, Substitution};
use grzlab_core::frame::{enumerate, Frame, FrameClass};
use grzlab_core::model::Model;
use grzlab_core::worldset::WorldSet;
use proptest::prelude::*;

const VARS: [&str; 3] = ["p", "q", "r"];

fn formula(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => prop::sample::select(VARS.to_vec()).prop_map(Formula::var),
        1 => any::<bool>().prop_map(Formula::Const),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::diamond),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.iff(b)),
        ]
    })
}

fn frame(max: usize) -> impl Strategy<Value = Frame> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n)
            .prop_map(move |bits| Frame::from_fn(n, |a, b| bits[a * n + b]).unwrap())
    })
}

fn model(max: usize) -> impl Strategy<Value = Model> {
    (frame(max), prop::collection::vec(any::<u64>(), VARS.len())).prop_map(|(f, sets)| {
        let mask = f.all().0;
        let mut m = Model::bare(f);
        for (v, s) in VARS.iter().zip(sets) {
            m.set(*v, WorldSet(s & mask)).unwrap();
        }
        m
    })
}

fn preorder_model(max: usize) -> impl Strategy<Value = Model> {
    model(max).prop_map(|m| {
        let frame = m.frame.closure(true, true);
        Model::new(frame, m.valuation().clone()).unwrap()
    })
}

fn oracle_valuation(m: &Model) -> BTreeMap<String, Vec<bool>> {
    m.valuation()
        .iter()
        .map(|(v, s)| (v.clone(), m.frame.worlds().map(|w| s.contains(w)).collect()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_then_parse_is_identity(f in formula(8)) {
        let text = f.print();
        prop_assert_eq!(parse(&text).unwrap(), f, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn extension_matches_direct_evaluation(m in model(5), f in formula(5)) {
        let r = common::rel_of(&m.frame);
        let val = oracle_valuation(&m);
        let ext = m.extension(&f);
        for w in m.frame.worlds() {
            prop_assert_eq!(ext.contains(w), holds(&r, &val, w, &f));
        }
    }

    #[test]
    fn diamond_is_dual_to_box(m in model(5), f in formula(4)) {
        let lhs = m.extension(&f.clone().diamond());
        let rhs = m.extension(&f.not().boxed().not());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_distributes(f in formula(4), g in formula(3), h in formula(3)) {
        let s = Substitution::new().with("p", g).with("q", h);
        prop_assert_eq!(f.clone().boxed().substitute(&s), f.substitute(&s).boxed());
        prop_assert_eq!(f.clone().diamond().substitute(&s), f.substitute(&s).diamond());
        prop_assert_eq!(f.clone().not().substitute(&s), f.substitute(&s).not());
        let both = f.clone().and(f.clone().diamond());
        prop_assert_eq!(both.substitute(&s), f.substitute(&s).and(f.substitute(&s).diamond()));
        prop_assert_eq!(f.substitute(&Substitution::new()), f);
    }

    #[test]
    fn substitution_matches_semantic_reinterpretation(m in model(4), f in formula(4), g in formula(3)) {
        // Truth of f[p := g] is truth of f with p read as the extension of g.
        let s = Substitution::new().with("p", g.clone());
        let mut relabeled = m.clone();
        relabeled.set("p", m.extension(&g)).unwrap();
        prop_assert_eq!(m.extension(&f.substitute(&s)), relabeled.extension(&f));
    }

    #[test]
    fn largest_bisimulation_preserves_truth(a in model(4), b in model(4), fs in prop::collection::vec(formula(4), 8)) {
        let vocab = vocabulary(VARS);
        let z = largest_bisimulation(&a, &b, &vocab);
        prop_assert!(is_bisimulation(&z, &a, &b, &vocab).is_ok());
        for f in &fs {
            let (ea, eb) = (a.extension(f), b.extension(f));
            for (x, y) in z.iter() {
                prop_assert_eq!(ea.contains(x), eb.contains(y), "{}", f);
            }
        }
    }

    #[test]
    fn generated_submodels_preserve_truth(m in model(5), f in formula(5), seed in any::<usize>()) {
        let w = seed % m.frame.size();
        let (sub, map) = m.generated_submodel(w);
        let (whole, part) = (m.extension(&f), sub.extension(&f));
        for (new, &old) in map.iter().enumerate() {
            prop_assert_eq!(part.contains(new), whole.contains(old));
        }
    }

    #[test]
    fn pushed_buttons_stay_pushed(m in preorder_model(5), b in formula(3)) {
        let pushed = m.extension(&b.boxed());
        for w in pushed {
            prop_assert!(m.frame.successors(w).is_subset(pushed));
        }
    }

    #[test]
    fn jankov_fine_has_one_variable_per_node(f in frame(6), root in any::<usize>()) {
        let jf = jankov_fine(&f, root % f.size()).unwrap();
        prop_assert_eq!(jf.vars().len(), f.size());
    }

    #[test]
    fn regular_unraveling_is_bisimilar(index in any::<usize>(), sets in prop::collection::vec(any::<u64>(), 2)) {
        let posets: Vec<Frame> = (1..=4).flat_map(|n| enumerate(FrameClass::Poset, n, false).unwrap()).collect();
        let frame = posets[index % posets.len()].clone();
        let mask = frame.all().0;
        let m = Model::bare(frame.clone())
            .with("p", WorldSet(sets[0] & mask)).unwrap()
            .with("q", WorldSet(sets[1] & mask)).unwrap();
        let point = index % frame.size();
        let src = m.at(point).unwrap();
        for regularize in [false, true] {
            let r = unravel_tree(&src, regularize).unwrap();
            prop_assert!(is_bisimulation(&r.copy_relation(), &r.model.model, &src.model, &vocabulary(["p", "q"])).is_ok());
            prop_assert_eq!(r.copy_map[r.model.point()], point);
            if regularize {
                prop_assert!(regular_tree_shape(r.model.frame()).is_some());
            }
        }
    }
}
