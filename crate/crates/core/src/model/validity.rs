use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Compiled, Model, ModelError};
use crate::formula::Formula;
use crate::frame::{enumerate_with_cap, Frame, FrameClass, DEFAULT_FRAME_CAP};
use crate::worldset::WorldSet;

/// Resource caps for exhaustive sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Most valuations tried on one frame.
    pub max_valuations: u64,
    /// Most frames generated per enumeration level.
    pub max_frames: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_valuations: 1 << 24,
            max_frames: DEFAULT_FRAME_CAP,
        }
    }
}

/// A model and a world falsifying some formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub model: Model,
    pub world: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Countermodel(Countermodel),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Validity::Valid => None,
            Validity::Countermodel(c) => Some(c),
        }
    }
}

/// Decides whether `f` holds at every world of `frame` under every valuation
/// of its own variables. Valuations are tried in counting order (variable `i`
/// owns bits `i·n .. (i+1)·n`), so the reported countermodel is the first one
/// in that order, at its least failing world.
pub fn frame_valid(frame: &Frame, f: &Formula, limits: &Limits) -> Result<Validity, ModelError> {
    let compiled = Compiled::new(f);
    frame_valid_compiled(frame, &compiled, limits)
}

pub(crate) fn frame_valid_compiled(
    frame: &Frame,
    compiled: &Compiled,
    limits: &Limits,
) -> Result<Validity, ModelError> {
    let n = frame.size();
    let k = compiled.vars().len();
    let bits = k * n;
    if bits >= 64 || (1u64 << bits) > limits.max_valuations {
        return Err(ModelError::ValuationCap {
            vars: k,
            worlds: n,
            bits,
            cap: limits.max_valuations,
        });
    }
    let all = frame.all();
    let mask = all.0;
    let mut valuation = vec![WorldSet::EMPTY; k];
    let mut scratch = Vec::with_capacity(compiled.len());
    for code in 0u64..1 << bits {
        for (i, slot) in valuation.iter_mut().enumerate() {
            *slot = WorldSet(code >> (i * n) & mask);
        }
        let ext = compiled.eval_into(frame, &valuation, &mut scratch);
        if ext != all {
            let world = ext.complement(n).first().expect("non-full extension");
            let map: BTreeMap<String, WorldSet> =
                compiled.vars().iter().cloned().zip(valuation.iter().copied()).collect();
            let model = Model::new(frame.clone(), map)?;
            return Ok(Validity::Countermodel(Countermodel { model, world }));
        }
    }
    Ok(Validity::Valid)
}

/// Outcome of sweeping a frame class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub class: FrameClass,
    /// Largest world count swept.
    pub bound: usize,
    /// Frames checked, up to and including the witness frame.
    pub frames_examined: usize,
    pub countermodel: Option<Countermodel>,
}

/// Runs [`frame_valid`] over every isomorphism type of `class` with
/// `1..=nmax` worlds. Frames are checked in parallel, but the reported
/// countermodel is always the first in enumeration order.
pub fn class_valid_upto(
    class: FrameClass,
    f: &Formula,
    nmax: usize,
    limits: &Limits,
) -> Result<SweepReport, ModelError> {
    let compiled = Compiled::new(f);
    let mut examined = 0;
    for n in 1..=nmax {
        let frames = enumerate_with_cap(class, n, true, limits.max_frames)?;
        let first = frames
            .par_iter()
            .enumerate()
            .map(|(i, frame)| match frame_valid_compiled(frame, &compiled, limits) {
                Ok(Validity::Valid) => Ok(None),
                Ok(Validity::Countermodel(c)) => Ok(Some((i, c))),
                Err(e) => Err(e),
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        match first {
            Some(Err(e)) => return Err(e),
            Some(Ok(Some((i, c)))) => {
                return Ok(SweepReport {
                    class,
                    bound: nmax,
                    frames_examined: examined + i + 1,
                    countermodel: Some(c),
                })
            }
            _ => examined += frames.len(),
        }
    }
    Ok(SweepReport {
        class,
        bound: nmax,
        frames_examined: examined,
        countermodel: None,
    })
}
