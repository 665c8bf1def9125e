use std::collections::BTreeMap;

use grzlab::{
    check_control, frame_valid, powerset_button_model, unravel_tree, PyFormula, PyFrame, PyLabeling, PyModel,
};

#[test]
fn formulas_round_trip_and_substitute() {
    let f = PyFormula::new("[]p -> <>q").unwrap();
    assert_eq!(f.vars(), vec!["p", "q"]);
    let g = f.substitute(BTreeMap::from([("q".to_string(), PyFormula::var("p"))]));
    assert_eq!(g, PyFormula::new("[]p -> <>p").unwrap());
    assert!(PyFormula::new("p &").is_err());
    assert!(PyFormula::axiom("nope").is_err());
}

#[test]
fn validity_and_witnesses() {
    let cluster = PyFrame::new(2, vec![(0, 1), (1, 0)], true, false).unwrap();
    let grz = PyFormula::axiom("Grz").unwrap();
    let (m, w) = frame_valid(&cluster, &grz).unwrap().expect("clusters refute Grz");
    assert!(!m.satisfies(w, &grz).unwrap());
    assert!(frame_valid(&PyFrame::chain(3), &grz).unwrap().is_none());
}

#[test]
fn buttons_label_the_diamond() {
    let diamond = PyFrame::new(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)], true, true).unwrap();
    let (n, point, buttons) = powerset_button_model(3).unwrap();
    assert!(check_control("independent_buttons", &n, point, buttons.clone()).unwrap().is_empty());
    let l = PyLabeling::from_buttons(&diamond, 0, buttons).unwrap();
    assert!(l.check(&n, point).unwrap().is_empty());
    let m = PyModel::new(&diamond, BTreeMap::from([("p".to_string(), vec![1])])).unwrap();
    let (tree, root, copies) = unravel_tree(&m, 0, true).unwrap();
    assert_eq!(copies[root], 0);
    assert!(tree.frame().in_class("tree").unwrap());
}
