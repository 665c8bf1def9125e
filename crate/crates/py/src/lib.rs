//! Python bindings. Worlds are plain integers and world sets are sorted
//! lists; every library error surfaces as `ValueError`.

use std::collections::BTreeMap;
use std::fmt::Display;

use grzlab_core::bisim::{are_bisimilar, largest_bisimulation, vocabulary};
use grzlab_core::construct::{self, UnravelResult};
use grzlab_core::control::{self, ControlKind, Labeling};
use grzlab_core::decide::{self, LogicId};
use grzlab_core::formula::{self, parse, Axiom, Formula, Macro, Substitution};
use grzlab_core::frame::{self, Frame, FrameClass};
use grzlab_core::io;
use grzlab_core::model::{self, Limits, Model, PointedModel};
use grzlab_core::worldset::WorldSet;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parsed<T: std::str::FromStr>(text: &str) -> PyResult<T>
where
    T::Err: Display,
{
    text.parse().map_err(err)
}

#[pyclass(name = "Formula", frozen, eq, hash, from_py_object)]
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PyFormula(pub Formula);

#[pymethods]
impl PyFormula {
    #[new]
    pub fn new(text: &str) -> PyResult<Self> {
        parse(text).map(PyFormula).map_err(err)
    }

    #[staticmethod]
    pub fn var(name: &str) -> Self {
        PyFormula(Formula::var(name))
    }

    #[staticmethod]
    pub fn axiom(name: &str) -> PyResult<Self> {
        Ok(PyFormula(parsed::<Axiom>(name)?.instance()))
    }

    /// Applies `penultimate`, `weak_penultimate` or `contingent`.
    #[staticmethod]
    pub fn apply_macro(name: &str, arg: &PyFormula) -> PyResult<Self> {
        let m = Macro::from_name(name).ok_or_else(|| err(format!("unknown macro {name}")))?;
        Ok(PyFormula(m.build(arg.0.clone())))
    }

    pub fn neg(&self) -> Self {
        PyFormula(self.0.clone().not())
    }

    pub fn boxed(&self) -> Self {
        PyFormula(self.0.clone().boxed())
    }

    pub fn diamond(&self) -> Self {
        PyFormula(self.0.clone().diamond())
    }

    pub fn conj(&self, other: &PyFormula) -> Self {
        PyFormula(self.0.clone().and(other.0.clone()))
    }

    pub fn disj(&self, other: &PyFormula) -> Self {
        PyFormula(self.0.clone().or(other.0.clone()))
    }

    pub fn implies(&self, other: &PyFormula) -> Self {
        PyFormula(self.0.clone().implies(other.0.clone()))
    }

    pub fn vars(&self) -> Vec<String> {
        self.0.vars().into_iter().collect()
    }

    pub fn depth(&self) -> usize {
        self.0.depth()
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn substitute(&self, map: BTreeMap<String, PyFormula>) -> Self {
        let s: Substitution = map.into_iter().map(|(k, v)| (k, v.0)).collect();
        PyFormula(self.0.substitute(&s))
    }

    fn __str__(&self) -> String {
        self.0.print()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.0.print())
    }
}

#[pyclass(name = "Frame", frozen, eq, skip_from_py_object)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyFrame(pub Frame);

#[pymethods]
impl PyFrame {
    #[new]
    #[pyo3(signature = (size, edges, reflexive = false, transitive = false))]
    pub fn new(size: usize, edges: Vec<(usize, usize)>, reflexive: bool, transitive: bool) -> PyResult<Self> {
        let f = Frame::new(size, &edges).map_err(err)?;
        Ok(PyFrame(f.closure(reflexive, transitive)))
    }

    #[staticmethod]
    pub fn chain(n: usize) -> Self {
        PyFrame(Frame::chain(n))
    }

    #[staticmethod]
    pub fn powerset(k: usize) -> Self {
        PyFrame(Frame::powerset(k))
    }

    #[staticmethod]
    pub fn from_json(text: &str) -> PyResult<Self> {
        io::read_frame(text).map(PyFrame).map_err(err)
    }

    #[getter]
    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    pub fn relates(&self, a: usize, b: usize) -> bool {
        a < self.0.size() && b < self.0.size() && self.0.relates(a, b)
    }

    pub fn properties(&self) -> BTreeMap<String, bool> {
        let value = serde_json::to_value(frame::properties(&self.0)).expect("flags serialize");
        value
            .as_object()
            .expect("flags are an object")
            .iter()
            .map(|(k, v)| (k.clone(), v.as_bool().unwrap_or(false)))
            .collect()
    }

    pub fn in_class(&self, class: &str) -> PyResult<bool> {
        Ok(frame::check_class(&self.0, parsed::<FrameClass>(class)?))
    }

    pub fn least(&self) -> Option<usize> {
        self.0.least()
    }

    pub fn to_json(&self) -> String {
        io::frame_json(&self.0).to_string()
    }

    pub fn to_dot(&self) -> String {
        io::frame_dot(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Frame({}, {:?})", self.0.size(), self.0.edges())
    }
}

#[pyclass(name = "Model", frozen, skip_from_py_object)]
#[derive(Debug, Clone)]
pub struct PyModel(pub Model);

#[pymethods]
impl PyModel {
    #[new]
    #[pyo3(signature = (frame, valuation = BTreeMap::new()))]
    pub fn new(frame: &PyFrame, valuation: BTreeMap<String, Vec<usize>>) -> PyResult<Self> {
        let valuation = valuation
            .into_iter()
            .map(|(k, ws)| (k, WorldSet::from_worlds(ws)))
            .collect();
        Model::new(frame.0.clone(), valuation).map(PyModel).map_err(err)
    }

    #[getter]
    pub fn frame(&self) -> PyFrame {
        PyFrame(self.0.frame.clone())
    }

    pub fn valuation(&self) -> BTreeMap<String, Vec<usize>> {
        self.0
            .valuation()
            .iter()
            .map(|(k, s)| (k.clone(), s.to_vec()))
            .collect()
    }

    pub fn extension(&self, f: &PyFormula) -> Vec<usize> {
        self.0.extension(&f.0).to_vec()
    }

    pub fn satisfies(&self, world: usize, f: &PyFormula) -> PyResult<bool> {
        self.0.frame.check_world(world).map_err(err)?;
        Ok(self.0.satisfies(world, &f.0))
    }

    #[pyo3(signature = (point = None))]
    pub fn to_json(&self, point: Option<usize>) -> String {
        io::model_json(&self.0, point).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Model({}, {:?})", self.0.frame.size(), self.valuation())
    }
}

fn pointed(m: &PyModel, point: usize) -> PyResult<PointedModel> {
    m.0.clone().at(point).map_err(err)
}

fn formulas(fs: &[PyFormula]) -> Vec<Formula> {
    fs.iter().map(|f| f.0.clone()).collect()
}

fn wrap(fs: Vec<Formula>) -> Vec<PyFormula> {
    fs.into_iter().map(PyFormula).collect()
}

/// `None` when `f` is valid on the frame, else a falsifying model and world.
#[pyfunction]
pub fn frame_valid(frame: &PyFrame, f: &PyFormula) -> PyResult<Option<(PyModel, usize)>> {
    let v = model::frame_valid(&frame.0, &f.0, &Limits::default()).map_err(err)?;
    Ok(v.countermodel().map(|c| (PyModel(c.model.clone()), c.world)))
}

#[pyfunction]
#[pyo3(signature = (class, n, up_to_iso = true))]
pub fn enumerate_frames(class: &str, n: usize, up_to_iso: bool) -> PyResult<Vec<PyFrame>> {
    let frames = frame::enumerate(parsed(class)?, n, up_to_iso).map_err(err)?;
    Ok(frames.into_iter().map(PyFrame).collect())
}

/// Returns `(frames_examined, countermodel)`; the countermodel is `None` when
/// the bound is exhausted.
#[pyfunction]
#[pyo3(signature = (logic, f, nmax, class = None))]
pub fn countermodel_search(
    logic: &str,
    f: &PyFormula,
    nmax: usize,
    class: Option<&str>,
) -> PyResult<(usize, Option<(PyModel, usize)>)> {
    let class = class.map(parsed::<FrameClass>).transpose()?;
    let r = decide::countermodel_search(parsed::<LogicId>(logic)?, &f.0, nmax, class, &Limits::default())
        .map_err(err)?;
    let witness = r.countermodel().map(|c| (PyModel(c.model.clone()), c.world));
    Ok((r.frames_examined, witness))
}

#[pyfunction]
pub fn non_theorem_catalog() -> Vec<(String, PyFormula)> {
    decide::non_theorem_catalog()
        .into_iter()
        .map(|e| (e.name.to_string(), PyFormula(e.formula)))
        .collect()
}

/// `(id, statement, holds, detail)` for each displayed lemma.
#[pyfunction]
#[pyo3(signature = (nmax = 3))]
pub fn verify_displayed_lemmas(nmax: usize) -> PyResult<Vec<(String, String, bool, String)>> {
    let reports = decide::verify_displayed_lemmas(nmax, &Limits::default()).map_err(err)?;
    Ok(reports
        .into_iter()
        .map(|r| (r.id.to_string(), r.statement.to_string(), r.holds, r.detail))
        .collect())
}

fn vocab_of(a: &Model, b: &Model, vars: Option<Vec<String>>) -> std::collections::BTreeSet<String> {
    match vars {
        Some(v) => vocabulary(v),
        None => a.vars().chain(b.vars()).map(str::to_string).collect(),
    }
}

/// Pairs of the largest bisimulation; the vocabulary defaults to every
/// variable of either model.
#[pyfunction]
#[pyo3(signature = (a, b, vars = None))]
pub fn bisimulation(a: &PyModel, b: &PyModel, vars: Option<Vec<String>>) -> Vec<(usize, usize)> {
    let vocab = vocab_of(&a.0, &b.0, vars);
    largest_bisimulation(&a.0, &b.0, &vocab).iter().collect()
}

#[pyfunction]
#[pyo3(signature = (a, pa, b, pb, vars = None))]
pub fn bisimilar(a: &PyModel, pa: usize, b: &PyModel, pb: usize, vars: Option<Vec<String>>) -> PyResult<bool> {
    let vocab = vocab_of(&a.0, &b.0, vars);
    Ok(are_bisimilar(&pointed(a, pa)?, &pointed(b, pb)?, &vocab))
}

fn unraveled(r: UnravelResult) -> (PyModel, usize, Vec<usize>) {
    let point = r.model.point();
    (PyModel(r.model.model), point, r.copy_map)
}

/// `(model, point, copy_map)` where `copy_map[i]` is the world copied by node `i`.
#[pyfunction]
pub fn unravel_baled(m: &PyModel, point: usize) -> PyResult<(PyModel, usize, Vec<usize>)> {
    construct::unravel_baled(&pointed(m, point)?).map(unraveled).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (m, point, regularize = false))]
pub fn unravel_tree(m: &PyModel, point: usize, regularize: bool) -> PyResult<(PyModel, usize, Vec<usize>)> {
    construct::unravel_tree(&pointed(m, point)?, regularize).map(unraveled).map_err(err)
}

/// `(model, point, buttons)`.
#[pyfunction]
pub fn powerset_button_model(n: usize) -> PyResult<(PyModel, usize, Vec<PyFormula>)> {
    let (p, buttons) = construct::powerset_button_model(n).map_err(err)?;
    Ok((PyModel(p.model), 0, wrap(buttons)))
}

/// `(model, point, ratchet)`.
#[pyfunction]
pub fn ratchet_chain_model(n: usize) -> PyResult<(PyModel, usize, Vec<PyFormula>)> {
    let (p, ratchet) = construct::ratchet_chain_model(n).map_err(err)?;
    Ok((PyModel(p.model), 0, wrap(ratchet)))
}

/// Names of the control conditions failing at the point; empty means the
/// statements have the requested control kind.
#[pyfunction]
pub fn check_control(kind: &str, m: &PyModel, point: usize, stmts: Vec<PyFormula>) -> PyResult<Vec<String>> {
    let kind: ControlKind = parsed(kind)?;
    let report = control::check_control(kind, &pointed(m, point)?, &formulas(&stmts)).map_err(err)?;
    Ok(report.failures.into_iter().map(|c| c.name).collect())
}

#[pyclass(name = "Labeling", frozen, skip_from_py_object)]
#[derive(Debug, Clone)]
pub struct PyLabeling(pub Labeling);

#[pymethods]
impl PyLabeling {
    #[new]
    pub fn new(frame: &PyFrame, root: usize, labels: Vec<PyFormula>) -> PyResult<Self> {
        Labeling::new(frame.0.clone(), root, formulas(&labels)).map(PyLabeling).map_err(err)
    }

    #[staticmethod]
    pub fn from_buttons(frame: &PyFrame, root: usize, buttons: Vec<PyFormula>) -> PyResult<Self> {
        control::labeling_from_buttons(&frame.0, root, &formulas(&buttons))
            .map(PyLabeling)
            .map_err(err)
    }

    #[staticmethod]
    pub fn from_ratchet(frame: &PyFrame, ratchet: Vec<PyFormula>) -> PyResult<Self> {
        control::labeling_from_ratchet(&frame.0, &formulas(&ratchet))
            .map(PyLabeling)
            .map_err(err)
    }

    #[getter]
    pub fn root(&self) -> usize {
        self.0.root
    }

    #[getter]
    pub fn labels(&self) -> Vec<PyFormula> {
        wrap(self.0.labels.clone())
    }

    /// Violations of the frame-labeling conditions against `(m, point)`.
    pub fn check(&self, m: &PyModel, point: usize) -> PyResult<Vec<String>> {
        let report = control::check_frame_labeling(&self.0, &pointed(m, point)?);
        Ok(report.violations.iter().map(ToString::to_string).collect())
    }

    pub fn jankov_fine_instance(&self) -> PyFormula {
        PyFormula(self.0.jankov_fine_instance())
    }

    pub fn model_labeling(&self, m: &PyModel) -> PyResult<BTreeMap<String, PyFormula>> {
        let psi = control::model_labeling_from_frame_labeling(&m.0, &self.0).map_err(err)?;
        Ok(psi.into_iter().map(|(k, v)| (k, PyFormula(v))).collect())
    }

    pub fn to_json(&self) -> String {
        io::labeling_json(&self.0).to_string()
    }
}

#[pyfunction]
pub fn jankov_fine(frame: &PyFrame, root: usize) -> PyResult<PyFormula> {
    formula::jankov_fine(&frame.0, root).map(PyFormula).map_err(err)
}

#[pyfunction]
pub fn verify_model_labeling(
    m: &PyModel,
    w0: usize,
    n: &PyModel,
    point: usize,
    psi: BTreeMap<String, PyFormula>,
) -> PyResult<bool> {
    let psi = psi.into_iter().map(|(k, v)| (k, v.0)).collect();
    control::verify_model_labeling(&m.0, w0, &pointed(n, point)?, &psi).map_err(err)
}

#[pymodule]
fn grzlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFormula>()?;
    m.add_class::<PyFrame>()?;
    m.add_class::<PyModel>()?;
    m.add_class::<PyLabeling>()?;
    m.add_function(wrap_pyfunction!(frame_valid, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_frames, m)?)?;
    m.add_function(wrap_pyfunction!(countermodel_search, m)?)?;
    m.add_function(wrap_pyfunction!(non_theorem_catalog, m)?)?;
    m.add_function(wrap_pyfunction!(verify_displayed_lemmas, m)?)?;
    m.add_function(wrap_pyfunction!(bisimulation, m)?)?;
    m.add_function(wrap_pyfunction!(bisimilar, m)?)?;
    m.add_function(wrap_pyfunction!(unravel_baled, m)?)?;
    m.add_function(wrap_pyfunction!(unravel_tree, m)?)?;
    m.add_function(wrap_pyfunction!(powerset_button_model, m)?)?;
    m.add_function(wrap_pyfunction!(ratchet_chain_model, m)?)?;
    m.add_function(wrap_pyfunction!(check_control, m)?)?;
    m.add_function(wrap_pyfunction!(jankov_fine, m)?)?;
    m.add_function(wrap_pyfunction!(verify_model_labeling, m)?)?;
    Ok(())
}
