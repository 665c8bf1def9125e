//! Kripke models, the model checker and validity sweeps over frames and
//! frame classes.

mod eval;
mod validity;

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::formula::Formula;
use crate::frame::{Frame, FrameError};
use crate::worldset::WorldSet;

pub use eval::Compiled;
pub use validity::{class_valid_upto, frame_valid, Countermodel, Limits, SweepReport, Validity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("valuation of `{var}` mentions world {world}, outside the frame of {size} world(s)")]
    ValuationOutOfRange { var: String, world: usize, size: usize },
    #[error("point {0} is outside the frame of {1} world(s)")]
    PointOutOfRange(usize, usize),
    #[error("{vars} variable(s) on {worlds} world(s) need 2^{bits} valuations, above the cap of {cap}")]
    ValuationCap {
        vars: usize,
        worlds: usize,
        bits: usize,
        cap: u64,
    },
}

/// A frame plus a valuation. Variables missing from the valuation are false
/// everywhere, so fresh variables never need registering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub frame: Frame,
    valuation: BTreeMap<String, WorldSet>,
}

impl Model {
    pub fn new(frame: Frame, valuation: BTreeMap<String, WorldSet>) -> Result<Model, ModelError> {
        let all = frame.all();
        for (var, set) in &valuation {
            if let Some(world) = set.difference(all).first() {
                return Err(ModelError::ValuationOutOfRange {
                    var: var.clone(),
                    world,
                    size: frame.size(),
                });
            }
        }
        Ok(Model { frame, valuation })
    }

    /// A model in which every variable is false everywhere.
    pub fn bare(frame: Frame) -> Model {
        Model {
            frame,
            valuation: BTreeMap::new(),
        }
    }

    /// Sets the extension of `var`; worlds outside the frame are rejected.
    pub fn set(&mut self, var: impl Into<String>, worlds: WorldSet) -> Result<(), ModelError> {
        let var = var.into();
        if let Some(world) = worlds.difference(self.frame.all()).first() {
            return Err(ModelError::ValuationOutOfRange {
                var,
                world,
                size: self.frame.size(),
            });
        }
        self.valuation.insert(var, worlds);
        Ok(())
    }

    pub fn with(mut self, var: impl Into<String>, worlds: WorldSet) -> Result<Model, ModelError> {
        self.set(var, worlds)?;
        Ok(self)
    }

    pub fn valuation(&self) -> &BTreeMap<String, WorldSet> {
        &self.valuation
    }

    pub fn value(&self, var: &str) -> WorldSet {
        self.valuation.get(var).copied().unwrap_or_default()
    }

    /// Variables with an explicit valuation entry.
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }

    /// The worlds where `f` holds.
    pub fn extension(&self, f: &Formula) -> WorldSet {
        let compiled = Compiled::new(f);
        let valuation: Vec<WorldSet> = compiled.vars().iter().map(|v| self.value(v)).collect();
        compiled.eval(&self.frame, &valuation)
    }

    pub fn satisfies(&self, world: usize, f: &Formula) -> bool {
        self.extension(f).contains(world)
    }

    pub fn at(self, point: usize) -> Result<PointedModel, ModelError> {
        PointedModel::new(self, point)
    }

    /// The submodel generated by `w`, renumbered as in [`Frame::generated_subframe`].
    pub fn generated_submodel(&self, w: usize) -> (Model, Vec<usize>) {
        let (frame, map) = self.frame.generated_subframe(w);
        let valuation = self
            .valuation
            .iter()
            .map(|(var, set)| {
                let sub = map
                    .iter()
                    .enumerate()
                    .filter(|&(_, &old)| set.contains(old))
                    .map(|(new, _)| new)
                    .collect();
                (var.clone(), sub)
            })
            .collect();
        (Model { frame, valuation }, map)
    }
}

/// A model with a designated world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedModel {
    pub model: Model,
    point: usize,
}

impl PointedModel {
    pub fn new(model: Model, point: usize) -> Result<PointedModel, ModelError> {
        if point >= model.frame.size() {
            return Err(ModelError::PointOutOfRange(point, model.frame.size()));
        }
        Ok(PointedModel { model, point })
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn frame(&self) -> &Frame {
        &self.model.frame
    }

    pub fn satisfies(&self, f: &Formula) -> bool {
        self.model.satisfies(self.point, f)
    }

    /// Worlds reachable from the point in zero or more steps.
    pub fn reachable(&self) -> WorldSet {
        self.model.frame.reachable(self.point)
    }
}

/// `count` models on `frame` whose valuations of `vars` are drawn uniformly
/// from a generator seeded with `seed`.
pub fn sample_models(frame: &Frame, vars: &[&str], count: usize, seed: u64) -> Vec<Model> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mask = frame.all().0;
    (0..count)
        .map(|_| {
            let valuation = vars
                .iter()
                .map(|v| (v.to_string(), WorldSet(rng.gen::<u64>() & mask)))
                .collect();
            Model {
                frame: frame.clone(),
                valuation,
            }
        })
        .collect()
}

/// Free-function form of [`Model::extension`].
pub fn extension(model: &Model, f: &Formula) -> WorldSet {
    model.extension(f)
}

/// Free-function form of [`PointedModel::satisfies`].
pub fn satisfies(pointed: &PointedModel, f: &Formula) -> bool {
    pointed.satisfies(f)
}
