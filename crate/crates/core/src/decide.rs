//! Bounded countermodel search over the finite frame classes that
//! characterize each logic, and exhaustive checks of the displayed lemmas.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::formula::{parse, Axiom, Formula};
use crate::frame::{enumerate_with_cap, FrameClass, FrameError};
use crate::model::{class_valid_upto, frame_valid, Countermodel, Limits, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("the world bound must be at least 1")]
    ZeroBound,
    #[error("unknown logic `{0}`")]
    UnknownLogic(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl From<FrameError> for DecideError {
    fn from(e: FrameError) -> Self {
        DecideError::Model(e.into())
    }
}

impl DecideError {
    /// Whether the failure is a resource cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            DecideError::Model(
                ModelError::ValuationCap { .. }
                    | ModelError::Frame(FrameError::CapExceeded(_) | FrameError::CanonTooLarge { .. })
            )
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogicId {
    K,
    S4,
    S42,
    S43,
    Grz,
    Grz2,
    Grz3,
}

impl LogicId {
    pub const ALL: [LogicId; 7] = [
        LogicId::K,
        LogicId::S4,
        LogicId::S42,
        LogicId::S43,
        LogicId::Grz,
        LogicId::Grz2,
        LogicId::Grz3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LogicId::K => "K",
            LogicId::S4 => "S4",
            LogicId::S42 => "S4.2",
            LogicId::S43 => "S4.3",
            LogicId::Grz => "Grz",
            LogicId::Grz2 => "Grz.2",
            LogicId::Grz3 => "Grz.3",
        }
    }

    pub fn axioms(self) -> Vec<Axiom> {
        use Axiom::*;
        match self {
            LogicId::K => vec![K],
            LogicId::S4 => vec![K, T, Four],
            LogicId::S42 => vec![K, T, Four, Dot2],
            LogicId::S43 => vec![K, T, Four, Dot3],
            LogicId::Grz => vec![K, T, Four, Grz],
            LogicId::Grz2 => vec![K, T, Four, Grz, Dot2],
            LogicId::Grz3 => vec![K, T, Four, Grz, Dot3],
        }
    }

    pub fn default_class(self) -> FrameClass {
        match self {
            LogicId::K => FrameClass::Arbitrary,
            LogicId::S4 => FrameClass::Preorder,
            LogicId::S42 => FrameClass::DirectedPreorder,
            LogicId::S43 => FrameClass::LinearPreorder,
            LogicId::Grz => FrameClass::Poset,
            LogicId::Grz2 => FrameClass::DirectedPoset,
            LogicId::Grz3 => FrameClass::LinearOrder,
        }
    }

    /// Finite frame classes each known to characterize the logic.
    pub fn characterizing_classes(self) -> Vec<FrameClass> {
        match self {
            LogicId::Grz2 => vec![
                FrameClass::DirectedPoset,
                FrameClass::Lattice,
                FrameClass::BaledTree,
                FrameClass::BooleanAlgebra,
            ],
            other => vec![other.default_class()],
        }
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LogicId {
    type Err = DecideError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.to_ascii_lowercase().chars().filter(|c| *c != '.').collect();
        LogicId::ALL
            .into_iter()
            .find(|l| l.name().to_ascii_lowercase().replace('.', "") == key)
            .ok_or_else(|| DecideError::UnknownLogic(s.to_string()))
    }
}

pub fn axiom_suite(logic: LogicId) -> Vec<Formula> {
    logic.axioms().into_iter().map(Axiom::instance).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Countermodel(Countermodel),
    /// Every frame up to the bound validates the formula. This does not
    /// prove the formula in the logic.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub logic: LogicId,
    pub class: FrameClass,
    pub formula: Formula,
    pub bound: usize,
    pub frames_examined: usize,
    pub outcome: Outcome,
}

impl SearchReport {
    pub fn countermodel(&self) -> Option<&Countermodel> {
        match &self.outcome {
            Outcome::Countermodel(c) => Some(c),
            Outcome::Exhausted => None,
        }
    }
}

/// Sweeps the isomorphism types of the class with `1..=nmax` worlds (the
/// logic's default class unless overridden) and returns the first
/// countermodel to `f`.
pub fn countermodel_search(
    logic: LogicId,
    f: &Formula,
    nmax: usize,
    class: Option<FrameClass>,
    limits: &Limits,
) -> Result<SearchReport, DecideError> {
    if nmax == 0 {
        return Err(DecideError::ZeroBound);
    }
    let class = class.unwrap_or(logic.default_class());
    let sweep = class_valid_upto(class, f, nmax, limits)?;
    Ok(SearchReport {
        logic,
        class,
        formula: f.clone(),
        bound: nmax,
        frames_examined: sweep.frames_examined,
        outcome: sweep.countermodel.map_or(Outcome::Exhausted, Outcome::Countermodel),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub formula: Formula,
}

/// Non-theorems of Grz.2 used to exercise its characterizing classes.
pub fn non_theorem_catalog() -> Vec<CatalogEntry> {
    let entry = |name, text: &str| CatalogEntry {
        name,
        formula: parse(text).expect("catalog formulas parse"),
    };
    vec![
        CatalogEntry {
            name: ".3",
            formula: Axiom::Dot3.instance(),
        },
        CatalogEntry {
            name: "Alt1",
            formula: Axiom::Alt1.instance(),
        },
        entry("Grz* without diamond", "contingent(p) -> penultimate(p) | penultimate(~p)"),
        entry("p -> []p", "p -> []p"),
        entry("contingent(p) -> <>[]p", "contingent(p) -> <>[]p"),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub holds: bool,
    pub frames_examined: usize,
    pub detail: String,
}

fn valid_on_class(
    class: FrameClass,
    f: &Formula,
    nmax: usize,
    limits: &Limits,
) -> Result<(bool, usize, String), DecideError> {
    let sweep = class_valid_upto(class, f, nmax, limits)?;
    let detail = match &sweep.countermodel {
        None => format!("valid on every {class} frame with at most {nmax} worlds"),
        Some(c) => format!(
            "refuted at world {} of a {}-world {class} frame",
            c.world,
            c.model.frame.size()
        ),
    };
    Ok((sweep.countermodel.is_none(), sweep.frames_examined, detail))
}

/// Checks lemmas (a) to (e) by exhaustive sweeps over frames with at most
/// `nmax` worlds.
pub fn verify_displayed_lemmas(nmax: usize, limits: &Limits) -> Result<Vec<LemmaReport>, DecideError> {
    if nmax == 0 {
        return Err(DecideError::ZeroBound);
    }
    let mut out = Vec::new();

    let (holds, frames, detail) =
        valid_on_class(FrameClass::Arbitrary, &Axiom::TechnicalLemma.instance(), nmax, limits)?;
    out.push(LemmaReport {
        id: "a",
        statement: "technical lemma formula is valid on all frames",
        holds,
        frames_examined: frames,
        detail,
    });

    let k4_step = parse("<>(alpha | <>beta) -> <>(alpha | beta)").expect("fixed formula");
    let (holds, frames, detail) = valid_on_class(FrameClass::Transitive, &k4_step, nmax, limits)?;
    out.push(LemmaReport {
        id: "b",
        statement: "<>(alpha | <>beta) -> <>(alpha | beta) is valid on transitive frames",
        holds,
        frames_examined: frames,
        detail,
    });

    let grz = Axiom::Grz.instance();
    let both = Axiom::GrzDisjunctive
        .instance()
        .iff(grz.clone())
        .and(Axiom::GrzConcise.instance().iff(grz.clone()));
    let (holds, frames, detail) = valid_on_class(FrameClass::Arbitrary, &both, nmax, limits)?;
    out.push(LemmaReport {
        id: "c",
        statement: "Grz is equivalent to its disjunctive and concise forms on all frames",
        holds,
        frames_examined: frames,
        detail,
    });

    let star = Axiom::GrzStar.instance();
    let (star_ok, star_frames, star_detail) = valid_on_class(FrameClass::Alt1, &star, nmax, limits)?;
    let refute = class_valid_upto(FrameClass::Alt1, &grz, nmax, limits)?;
    let detail = match &refute.countermodel {
        Some(c) => format!(
            "Grz*: {star_detail}; Grz refuted on a {}-world Alt1 frame with {} edge(s)",
            c.model.frame.size(),
            c.model.frame.edge_count()
        ),
        None => format!("Grz*: {star_detail}; no Alt1 frame refutes Grz"),
    };
    out.push(LemmaReport {
        id: "d",
        statement: "Alt1 frames validate Grz* and some Alt1 frame refutes Grz",
        holds: star_ok && refute.countermodel.is_some(),
        frames_examined: star_frames + refute.frames_examined,
        detail,
    });

    let (mismatches, frames) = agreement_on_class(FrameClass::Preorder, &grz, &star, nmax, limits)?;
    out.push(LemmaReport {
        id: "e",
        statement: "a preorder validates Grz iff it validates Grz*",
        holds: mismatches == 0,
        frames_examined: frames,
        detail: format!("{mismatches} disagreeing frame(s) among {frames} preorders"),
    });
    Ok(out)
}

/// Counts the frames of `class` with at most `nmax` worlds on which exactly
/// one of `f` and `g` is valid, and the number of frames examined.
pub fn agreement_on_class(
    class: FrameClass,
    f: &Formula,
    g: &Formula,
    nmax: usize,
    limits: &Limits,
) -> Result<(usize, usize), DecideError> {
    let mut mismatches = 0;
    let mut examined = 0;
    for n in 1..=nmax {
        let frames = enumerate_with_cap(class, n, true, limits.max_frames)?;
        examined += frames.len();
        mismatches += frames
            .par_iter()
            .map(|frame| -> Result<usize, ModelError> {
                let a = frame_valid(frame, f, limits)?.is_valid();
                let b = frame_valid(frame, g, limits)?.is_valid();
                Ok(usize::from(a != b))
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .sum::<usize>();
    }
    Ok((mismatches, examined))
}

/// Re-checks a witness by direct model checking.
pub fn witness_refutes(c: &Countermodel, f: &Formula) -> bool {
    !c.model.satisfies(c.world, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{check_class, Frame};
    use crate::worldset::WorldSet;

    #[test]
    fn logic_names_parse() {
        for l in LogicId::ALL {
            assert_eq!(l.name().parse::<LogicId>().unwrap(), l);
        }
        assert_eq!("grz2".parse::<LogicId>().unwrap(), LogicId::Grz2);
        assert!("S5".parse::<LogicId>().is_err());
    }

    #[test]
    fn suites() {
        assert_eq!(axiom_suite(LogicId::K), vec![Axiom::K.instance()]);
        assert_eq!(
            LogicId::Grz2.axioms(),
            vec![Axiom::K, Axiom::T, Axiom::Four, Axiom::Grz, Axiom::Dot2]
        );
    }

    #[test]
    fn dot3_fails_on_the_diamond() {
        let r = countermodel_search(
            LogicId::Grz2,
            &Axiom::Dot3.instance(),
            4,
            Some(FrameClass::BooleanAlgebra),
            &Limits::default(),
        )
        .unwrap();
        let c = r.countermodel().expect("countermodel");
        assert_eq!(c.model.frame, Frame::diamond());
        assert_eq!(c.world, 0);
        // The mirror image of p at {1, 3}, q at {2, 3}: first in counting order.
        assert_eq!(c.model.value("p"), WorldSet::from_worlds([2, 3]));
        assert_eq!(c.model.value("q"), WorldSet::from_worlds([1, 3]));
        assert!(witness_refutes(c, &Axiom::Dot3.instance()));
    }

    #[test]
    fn grz_exhausts_on_posets() {
        let r = countermodel_search(LogicId::Grz, &Axiom::Grz.instance(), 4, None, &Limits::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Exhausted);
        assert_eq!(r.frames_examined, 1 + 2 + 5 + 16);
    }

    #[test]
    fn k_refutes_t_on_a_dead_end() {
        let t = parse("[]p -> p").unwrap();
        let r = countermodel_search(LogicId::K, &t, 1, None, &Limits::default()).unwrap();
        let c = r.countermodel().unwrap();
        assert_eq!(c.model.frame, Frame::empty(1).unwrap());
        assert!(r.logic == LogicId::K && r.class == FrameClass::Arbitrary);
    }

    #[test]
    fn zero_bound() {
        let f = parse("p").unwrap();
        assert_eq!(
            countermodel_search(LogicId::K, &f, 0, None, &Limits::default()),
            Err(DecideError::ZeroBound)
        );
    }

    #[test]
    fn lemmas_hold_at_three() {
        let reports = verify_displayed_lemmas(3, &Limits::default()).unwrap();
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(r.holds, "{}: {}", r.id, r.detail);
        }
    }

    #[test]
    fn catalog_fails_on_grz2() {
        for entry in non_theorem_catalog() {
            let r = countermodel_search(LogicId::Grz2, &entry.formula, 4, None, &Limits::default()).unwrap();
            let c = r.countermodel().unwrap_or_else(|| panic!("{}", entry.name));
            assert!(check_class(&c.model.frame, FrameClass::DirectedPoset));
        }
    }
}
