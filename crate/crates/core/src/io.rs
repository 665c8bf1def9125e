//! JSON file formats for frames, models, labelings and reports, and DOT export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::construct::UnravelResult;
use crate::control::{ControlError, Labeling};
use crate::decide::{Outcome, SearchReport};
use crate::formula::{parse, ParseError};
use crate::frame::{properties, Frame, FrameError};
use crate::model::{Countermodel, Model, ModelError};
use crate::worldset::WorldSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Control(#[from] ControlError),
    #[error("label of node {node}: {error}")]
    Label { node: usize, error: ParseError },
    #[error("labeling has no label for node {0}")]
    MissingLabel(usize),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Close {
    #[serde(default)]
    pub reflexive: bool,
    #[serde(default)]
    pub transitive: bool,
}

/// `{"worlds": n, "edges": [[i, j], ...], "close": {"reflexive": b, "transitive": b}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameFile {
    pub worlds: usize,
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub close: Close,
}

impl FrameFile {
    pub fn from_frame(frame: &Frame) -> FrameFile {
        FrameFile {
            worlds: frame.size(),
            edges: frame.edges(),
            close: Close::default(),
        }
    }

    pub fn to_frame(&self) -> Result<Frame, FrameError> {
        let frame = Frame::new(self.worlds, &self.edges)?;
        Ok(frame.closure(self.close.reflexive, self.close.transitive))
    }
}

/// A frame file plus `"valuation": {"p": [worlds]}` and an optional `"point"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(flatten)]
    pub frame: FrameFile,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
}

impl ModelFile {
    pub fn from_model(model: &Model, point: Option<usize>) -> ModelFile {
        ModelFile {
            frame: FrameFile::from_frame(&model.frame),
            valuation: model
                .valuation()
                .iter()
                .map(|(v, set)| (v.clone(), set.to_vec()))
                .collect(),
            point,
        }
    }

    pub fn to_model(&self) -> Result<(Model, Option<usize>), IoError> {
        let frame = self.frame.to_frame()?;
        let size = frame.size();
        let mut valuation = BTreeMap::new();
        for (var, worlds) in &self.valuation {
            if let Some(&w) = worlds.iter().find(|&&w| w >= size) {
                return Err(ModelError::ValuationOutOfRange {
                    var: var.clone(),
                    world: w,
                    size,
                }
                .into());
            }
            valuation.insert(var.clone(), WorldSet::from_worlds(worlds.iter().copied()));
        }
        let model = Model::new(frame, valuation)?;
        if let Some(p) = self.point {
            if p >= size {
                return Err(ModelError::PointOutOfRange(p, size).into());
            }
        }
        Ok((model, self.point))
    }
}

/// `{"frame": {...}, "root": w0, "labels": {"0": "formula", ...}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelingFile {
    pub frame: FrameFile,
    pub root: usize,
    pub labels: BTreeMap<usize, String>,
}

impl LabelingFile {
    pub fn from_labeling(l: &Labeling) -> LabelingFile {
        LabelingFile {
            frame: FrameFile::from_frame(&l.frame),
            root: l.root,
            labels: l.labels.iter().map(|f| f.print()).enumerate().collect(),
        }
    }

    pub fn to_labeling(&self) -> Result<Labeling, IoError> {
        let frame = self.frame.to_frame()?;
        let mut labels = Vec::with_capacity(frame.size());
        for node in frame.worlds() {
            let text = self.labels.get(&node).ok_or(IoError::MissingLabel(node))?;
            labels.push(parse(text).map_err(|error| IoError::Label { node, error })?);
        }
        if let Some((&extra, _)) = self.labels.range(frame.size()..).next() {
            return Err(ControlError::NodeOutOfRange {
                node: extra,
                size: frame.size(),
            }
            .into());
        }
        Ok(Labeling::new(frame, self.root, labels)?)
    }
}

pub fn read_frame(text: &str) -> Result<Frame, IoError> {
    Ok(serde_json::from_str::<FrameFile>(text)?.to_frame()?)
}

pub fn read_model(text: &str) -> Result<(Model, Option<usize>), IoError> {
    serde_json::from_str::<ModelFile>(text)?.to_model()
}

pub fn read_labeling(text: &str) -> Result<Labeling, IoError> {
    serde_json::from_str::<LabelingFile>(text)?.to_labeling()
}

pub fn frame_json(frame: &Frame) -> Value {
    serde_json::to_value(FrameFile::from_frame(frame)).expect("serializable")
}

pub fn model_json(model: &Model, point: Option<usize>) -> Value {
    serde_json::to_value(ModelFile::from_model(model, point)).expect("serializable")
}

pub fn labeling_json(l: &Labeling) -> Value {
    serde_json::to_value(LabelingFile::from_labeling(l)).expect("serializable")
}

/// A countermodel in the model format, pointed at the failing world.
pub fn countermodel_json(c: &Countermodel) -> Value {
    model_json(&c.model, Some(c.world))
}

pub fn search_report_json(r: &SearchReport) -> Value {
    let (outcome, witness) = match &r.outcome {
        Outcome::Countermodel(c) => ("countermodel", countermodel_json(c)),
        Outcome::Exhausted => ("exhausted", Value::Null),
    };
    json!({
        "logic": r.logic.name(),
        "class": r.class.name(),
        "formula": r.formula.print(),
        "bound": r.bound,
        "frames_examined": r.frames_examined,
        "outcome": outcome,
        "witness": witness,
    })
}

/// The unraveled model in the model format plus `"copy_map": [[new, source], ...]`.
pub fn unravel_json(r: &UnravelResult) -> Value {
    let mut v = model_json(&r.model.model, Some(r.model.point()));
    v["copy_map"] = json!(r.copy_relation().iter().collect::<Vec<_>>());
    v
}

/// Edges left after dropping loops and, on transitive frames, every edge
/// implied by a path through a world strictly between its endpoints.
pub fn reduced_edges(frame: &Frame) -> Vec<(usize, usize)> {
    let transitive = properties(frame).transitive;
    let strictly_between = |a: usize, c: usize, b: usize| {
        c != a && c != b && frame.relates(a, c) && frame.relates(c, b) && !frame.relates(c, a) && !frame.relates(b, c)
    };
    frame
        .edges()
        .into_iter()
        .filter(|&(a, b)| a != b)
        .filter(|&(a, b)| !transitive || !frame.worlds().any(|c| strictly_between(a, c, b)))
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn dot(frame: &Frame, notes: &[String]) -> String {
    let mut out = String::from("digraph frame {\n  rankdir=BT;\n");
    for w in frame.worlds() {
        let mut label = format!("w{w}");
        if !notes[w].is_empty() {
            label.push_str("\\n");
            label.push_str(&escape(&notes[w]));
        }
        let style = if frame.relates(w, w) { "" } else { ", style=dashed" };
        writeln!(out, "  {w} [label=\"{label}\"{style}];").expect("string write");
    }
    for (a, b) in reduced_edges(frame) {
        writeln!(out, "  {a} -> {b};").expect("string write");
    }
    out.push_str("}\n");
    out
}

/// Hasse-style DOT digraph; irreflexive worlds are dashed.
pub fn frame_dot(frame: &Frame) -> String {
    dot(frame, &vec![String::new(); frame.size()])
}

/// As [`frame_dot`], each node annotated with the variables true there.
pub fn model_dot(model: &Model) -> String {
    let notes: Vec<String> = model
        .frame
        .worlds()
        .map(|w| {
            model
                .vars()
                .filter(|v| model.value(v).contains(w))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect();
    dot(&model.frame, &notes)
}

/// As [`frame_dot`], each node annotated with its label.
pub fn labeling_dot(l: &Labeling) -> String {
    let notes: Vec<String> = l.labels.iter().map(|f| f.print()).collect();
    dot(&l.frame, &notes)
}
