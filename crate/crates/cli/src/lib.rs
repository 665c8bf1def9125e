//! The `grz-lab` command line.
//!
//! Exit codes: 0 affirmative, 1 negative (a witness is printed), 2 usage or
//! input error, 3 resource cap reached.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use grzlab_core::construct::{
    powerset_button_model, ratchet_chain_model, unravel_baled, unravel_tree, ConstructError, UnravelResult,
};
use grzlab_core::control::{
    check_control, check_frame_labeling, labeling_from_buttons, labeling_from_ratchet,
    model_labeling_from_frame_labeling, verify_model_labeling, ControlError, ControlKind, Labeling,
};
use grzlab_core::decide::{
    axiom_suite, countermodel_search, non_theorem_catalog, verify_displayed_lemmas, DecideError, LogicId,
    Outcome, SearchReport,
};
use grzlab_core::formula::{parse, Formula};
use grzlab_core::frame::{check_class, enumerate_with_cap, Frame, FrameClass, FrameError};
use grzlab_core::io::{self, IoError};
use grzlab_core::model::{
    class_valid_upto, frame_valid, sample_models, Countermodel, Limits, Model, ModelError, PointedModel,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "grz-lab", version, about = "Finite-frame workbench for Grzegorczyk modal logics")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Formulas {
    /// Formulas; with `--file` these are appended to the file's.
    formulas: Vec<String>,
    /// Read formulas from a file, one per non-empty line (`-` for stdin).
    #[arg(long)]
    file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse formulas and print them with macros expanded.
    Parse(Formulas),
    /// Model-check formulas, or control statements, at a point of a model.
    Check {
        #[arg(long)]
        model: String,
        /// World to check at; defaults to the file's point, then 0.
        #[arg(long)]
        point: Option<usize>,
        /// Treat the formulas as control statements of this kind.
        #[arg(long)]
        control: Option<ControlKind>,
        #[command(flatten)]
        input: Formulas,
    },
    /// Frame validity on one frame or on every frame of a class.
    Valid {
        #[arg(long)]
        class: Option<FrameClass>,
        #[arg(long, default_value_t = 4)]
        max: usize,
        /// Check this logic's axioms when no formula is given.
        #[arg(long)]
        logic: Option<LogicId>,
        #[arg(long)]
        frame: Option<String>,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        input: Formulas,
    },
    /// List the frames of a class with 1 to `--max` worlds.
    Enumerate {
        #[arg(long)]
        class: FrameClass,
        #[arg(long)]
        max: usize,
        /// All labeled frames rather than one per isomorphism type.
        #[arg(long)]
        labeled: bool,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Bounded countermodel search for a logic.
    Search {
        #[arg(long)]
        logic: LogicId,
        /// Frame class to sweep; defaults to the logic's own.
        #[arg(long)]
        class: Option<FrameClass>,
        #[arg(long, default_value_t = 4)]
        max: usize,
        #[arg(long)]
        cap: Option<usize>,
        /// Search the built-in non-theorem catalog in every characterizing class.
        #[arg(long)]
        catalog: bool,
        #[command(flatten)]
        input: Formulas,
    },
    /// Baled-tree or tree unraveling of a model, or a sweep over directed posets.
    Unravel {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        point: Option<usize>,
        /// Plain tree unraveling instead of the baled tree.
        #[arg(long)]
        tree: bool,
        /// Pad the tree to a full regular tree.
        #[arg(long, requires = "tree")]
        regularize: bool,
        /// Check every directed poset with at most `--max` worlds.
        #[arg(long, conflicts_with = "model")]
        sweep: bool,
        #[arg(long, default_value_t = 4)]
        max: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Powerset button model with `n` buttons and its independence check.
    Buttons {
        #[arg(long, conflicts_with = "max")]
        n: Option<usize>,
        /// Check every count from 1 to this.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Ratchet chain model with `n` buttons and its ratchet check.
    Ratchet {
        #[arg(long, conflicts_with = "max")]
        n: Option<usize>,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Build and check button (or ratchet) labelings.
    Label {
        /// Label this frame; without it, sweep `--class` up to `--max` nodes.
        #[arg(long)]
        frame: Option<String>,
        /// Use a ratchet; the frame must be a linear order.
        #[arg(long)]
        ratchet: bool,
        #[arg(long, default_value = "lattice")]
        class: FrameClass,
        #[arg(long, default_value_t = 5)]
        max: usize,
        /// Sampled valuations per frame for the model-labeling check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a labeling file against a pointed model.
    VerifyLabeling {
        #[arg(long)]
        labeling: String,
        #[arg(long)]
        model: String,
        #[arg(long)]
        point: Option<usize>,
        /// Also derive and verify the model labeling of this model on the
        /// labeled frame.
        #[arg(long)]
        source: Option<String>,
    },
    /// Check lemmas (a) to (e) on frames with at most `--max` worlds.
    Lemmas {
        #[arg(long, default_value_t = 4)]
        max: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Print a frame, model or labeling file as a DOT digraph.
    ExportDot {
        #[arg(long, group = "object")]
        frame: Option<String>,
        #[arg(long, group = "object")]
        model: Option<String>,
        #[arg(long, group = "object")]
        labeling: Option<String>,
    },
}

/// Why a command stopped without an answer.
enum Failure {
    Usage(String),
    Cap(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::ValuationCap { .. }
            | ModelError::Frame(FrameError::CapExceeded(_) | FrameError::CanonTooLarge { .. }) => {
                Failure::Cap(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<FrameError> for Failure {
    fn from(e: FrameError) -> Self {
        ModelError::from(e).into()
    }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::Model(m) => m.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<ControlError> for Failure {
    fn from(e: ControlError) -> Self {
        match e {
            ControlError::TooManyStatements { .. } | ControlError::Cap { .. } => Failure::Cap(e.to_string()),
            ControlError::Model(m) => m.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Cap { .. } => Failure::Cap(e.to_string()),
            ConstructError::Model(m) => m.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Ctx<'a> {
    json: bool,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

type Answer = Result<bool, Failure>;

impl Ctx<'_> {
    fn line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", text.as_ref());
    }

    fn value(&mut self, v: &Value) {
        let text = serde_json::to_string_pretty(v).expect("JSON values print");
        self.line(text);
    }

    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }

    fn formulas(&mut self, input: &Formulas) -> Result<Vec<Formula>, Failure> {
        let mut texts = Vec::new();
        if let Some(path) = &input.file {
            let content = self.read(path)?;
            texts.extend(content.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from));
        }
        texts.extend(input.formulas.iter().cloned());
        texts
            .iter()
            .map(|t| parse(t).map_err(|e| Failure::Usage(format!("`{t}`: {e}"))))
            .collect()
    }

    fn frame(&mut self, path: &str) -> Result<Frame, Failure> {
        let text = self.read(path)?;
        Ok(io::read_frame(&text)?)
    }

    fn model(&mut self, path: &str, point: Option<usize>) -> Result<PointedModel, Failure> {
        let text = self.read(path)?;
        let (model, file_point) = io::read_model(&text)?;
        Ok(model.at(point.or(file_point).unwrap_or(0))?)
    }

    fn labeling(&mut self, path: &str) -> Result<Labeling, Failure> {
        let text = self.read(path)?;
        Ok(io::read_labeling(&text)?)
    }
}

fn limits(cap: Option<usize>) -> Limits {
    let mut l = Limits::default();
    if let Some(c) = cap {
        l.max_frames = c;
    }
    l
}

fn describe(c: &Countermodel) -> String {
    let vals: Vec<String> = c
        .model
        .valuation()
        .iter()
        .map(|(v, s)| format!("{v}={:?}", s))
        .collect();
    format!(
        "countermodel: {} world(s), edges {:?}, fails at world {}, {}",
        c.model.frame.size(),
        c.model.frame.edges(),
        c.world,
        vals.join(" ")
    )
}

/// Runs the command line and returns the exit code. Nothing panics out of
/// here on bad input; every failure maps to an exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_YES
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        stdin,
        out: stdout,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(true) => EXIT_YES,
        Ok(false) => EXIT_NO,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Cap(msg)) => {
            let _ = writeln!(stderr, "cap reached: {msg}");
            EXIT_CAP
        }
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Answer {
    match command {
        Command::Parse(input) => cmd_parse(ctx, &input),
        Command::Check {
            model,
            point,
            control,
            input,
        } => cmd_check(ctx, &model, point, control, &input),
        Command::Valid {
            class,
            max,
            logic,
            frame,
            cap,
            input,
        } => cmd_valid(ctx, class, max, logic, frame.as_deref(), cap, &input),
        Command::Enumerate {
            class,
            max,
            labeled,
            cap,
        } => cmd_enumerate(ctx, class, max, labeled, cap),
        Command::Search {
            logic,
            class,
            max,
            cap,
            catalog,
            input,
        } => cmd_search(ctx, logic, class, max, cap, catalog, &input),
        Command::Unravel {
            model,
            point,
            tree,
            regularize,
            sweep,
            max,
            samples,
            seed,
        } => {
            if sweep {
                cmd_unravel_sweep(ctx, max, samples, seed)
            } else {
                let path = model.ok_or_else(|| Failure::Usage("unravel needs --model or --sweep".into()))?;
                cmd_unravel(ctx, &path, point, tree, regularize)
            }
        }
        Command::Buttons { n, max } => cmd_counted(ctx, n, max, ButtonsOrRatchet::Buttons),
        Command::Ratchet { n, max } => cmd_counted(ctx, n, max, ButtonsOrRatchet::Ratchet),
        Command::Label {
            frame,
            ratchet,
            class,
            max,
            samples,
            seed,
        } => cmd_label(ctx, frame.as_deref(), ratchet, class, max, samples, seed),
        Command::VerifyLabeling {
            labeling,
            model,
            point,
            source,
        } => cmd_verify_labeling(ctx, &labeling, &model, point, source.as_deref()),
        Command::Lemmas { max, cap } => cmd_lemmas(ctx, max, cap),
        Command::ExportDot {
            frame,
            model,
            labeling,
        } => cmd_export_dot(ctx, frame, model, labeling),
    }
}

fn require_formulas(ctx: &mut Ctx, input: &Formulas) -> Result<Vec<Formula>, Failure> {
    let fs = ctx.formulas(input)?;
    if fs.is_empty() {
        return Err(Failure::Usage("no formula given".into()));
    }
    Ok(fs)
}

fn cmd_parse(ctx: &mut Ctx, input: &Formulas) -> Answer {
    let fs = require_formulas(ctx, input)?;
    if ctx.json {
        let items: Vec<Value> = fs
            .iter()
            .map(|f| {
                json!({
                    "formula": f.print(),
                    "size": f.size(),
                    "depth": f.depth(),
                    "vars": f.vars(),
                })
            })
            .collect();
        ctx.value(&json!(items));
    } else {
        for f in &fs {
            ctx.line(f.print());
        }
    }
    Ok(true)
}

fn cmd_check(
    ctx: &mut Ctx,
    model: &str,
    point: Option<usize>,
    control: Option<ControlKind>,
    input: &Formulas,
) -> Answer {
    let fs = require_formulas(ctx, input)?;
    let p = ctx.model(model, point)?;
    if let Some(kind) = control {
        let report = check_control(kind, &p, &fs)?;
        if ctx.json {
            let failures: Vec<Value> = report
                .failures
                .iter()
                .map(|c| json!({"condition": c.name, "formula": c.formula.print()}))
                .collect();
            ctx.value(&json!({"kind": kind.name(), "holds": report.holds(), "failures": failures}));
        } else {
            ctx.line(format!("{kind}: {}", if report.holds() { "holds" } else { "fails" }));
            for c in &report.failures {
                ctx.line(format!("  failed: {}: {}", c.name, c.formula));
            }
        }
        return Ok(report.holds());
    }
    let results: Vec<(String, bool)> = fs.iter().map(|f| (f.print(), p.satisfies(f))).collect();
    if ctx.json {
        let items: Vec<Value> = results
            .iter()
            .map(|(f, v)| json!({"formula": f, "point": p.point(), "holds": v}))
            .collect();
        ctx.value(&json!(items));
    } else {
        for (f, v) in &results {
            ctx.line(format!("{f}: {v}"));
        }
    }
    Ok(results.iter().all(|(_, v)| *v))
}

#[allow(clippy::too_many_arguments)]
fn cmd_valid(
    ctx: &mut Ctx,
    class: Option<FrameClass>,
    max: usize,
    logic: Option<LogicId>,
    frame: Option<&str>,
    cap: Option<usize>,
    input: &Formulas,
) -> Answer {
    let mut fs = ctx.formulas(input)?;
    if fs.is_empty() {
        match logic {
            Some(l) => fs = axiom_suite(l),
            None => return Err(Failure::Usage("no formula given and no --logic".into())),
        }
    }
    let limits = limits(cap);
    let mut all_valid = true;
    let mut items = Vec::new();
    if let Some(path) = frame {
        let frame = ctx.frame(path)?;
        for f in &fs {
            let v = frame_valid(&frame, f, &limits)?;
            all_valid &= v.is_valid();
            items.push((f.print(), v.countermodel().cloned(), 1));
        }
    } else {
        let class = class
            .or(logic.map(LogicId::default_class))
            .ok_or_else(|| Failure::Usage("give --class, --logic or --frame".into()))?;
        for f in &fs {
            let r = class_valid_upto(class, f, max, &limits)?;
            all_valid &= r.countermodel.is_none();
            items.push((f.print(), r.countermodel, r.frames_examined));
        }
    }
    if ctx.json {
        let out: Vec<Value> = items
            .iter()
            .map(|(f, c, n)| {
                json!({
                    "formula": f,
                    "valid": c.is_none(),
                    "frames_examined": n,
                    "witness": c.as_ref().map(io::countermodel_json),
                })
            })
            .collect();
        ctx.value(&json!(out));
    } else {
        for (f, c, n) in &items {
            match c {
                None => ctx.line(format!("{f}: valid ({n} frame(s) examined)")),
                Some(c) => ctx.line(format!("{f}: not valid; {}", describe(c))),
            }
        }
    }
    Ok(all_valid)
}

fn cmd_enumerate(ctx: &mut Ctx, class: FrameClass, max: usize, labeled: bool, cap: Option<usize>) -> Answer {
    let limits = limits(cap);
    let mut levels = Vec::new();
    for n in 1..=max {
        levels.push((n, enumerate_with_cap(class, n, !labeled, limits.max_frames)?));
    }
    if ctx.json {
        let out: Vec<Value> = levels
            .iter()
            .map(|(n, frames)| {
                json!({
                    "worlds": n,
                    "count": frames.len(),
                    "frames": frames.iter().map(io::frame_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        ctx.value(&json!(out));
    } else {
        for (n, frames) in &levels {
            ctx.line(format!("{n} world(s): {} frame(s)", frames.len()));
            for f in frames {
                ctx.line(format!("  {:?}", f.edges()));
            }
        }
    }
    Ok(true)
}

fn search_line(r: &SearchReport) -> String {
    match &r.outcome {
        Outcome::Countermodel(c) => format!(
            "{} over {} up to {}: {}",
            r.formula,
            r.class,
            r.bound,
            describe(c)
        ),
        Outcome::Exhausted => format!(
            "{} over {} up to {}: exhausted (inconclusive), {} frame(s) examined",
            r.formula, r.class, r.bound, r.frames_examined
        ),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    ctx: &mut Ctx,
    logic: LogicId,
    class: Option<FrameClass>,
    max: usize,
    cap: Option<usize>,
    catalog: bool,
    input: &Formulas,
) -> Answer {
    let limits = limits(cap);
    let mut jobs: Vec<(Formula, Option<FrameClass>, usize)> = Vec::new();
    if catalog {
        let classes = match class {
            Some(c) => vec![c],
            None => logic.characterizing_classes(),
        };
        for entry in non_theorem_catalog() {
            for &c in &classes {
                // Boolean algebras jump from 4 to 8 worlds.
                let bound = if c == FrameClass::BooleanAlgebra { max.max(8) } else { max };
                jobs.push((entry.formula.clone(), Some(c), bound));
            }
        }
    } else {
        for f in require_formulas(ctx, input)? {
            jobs.push((f, class, max));
        }
    }
    let mut reports = Vec::new();
    for (f, c, bound) in jobs {
        reports.push(countermodel_search(logic, &f, bound, c, &limits)?);
    }
    if ctx.json {
        let out: Vec<Value> = reports.iter().map(io::search_report_json).collect();
        ctx.value(&json!(out));
    } else {
        for r in &reports {
            ctx.line(search_line(r));
        }
    }
    // Any countermodel is a negative answer for that formula; with the
    // catalog every entry must be refuted for the run to count as affirmative.
    let found = reports.iter().filter(|r| r.countermodel().is_some()).count();
    Ok(if catalog { found == reports.len() } else { found == 0 })
}

fn cmd_unravel(ctx: &mut Ctx, path: &str, point: Option<usize>, tree: bool, regularize: bool) -> Answer {
    let p = ctx.model(path, point)?;
    let r = if tree { unravel_tree(&p, regularize)? } else { unravel_baled(&p)? };
    if ctx.json {
        ctx.value(&io::unravel_json(&r));
    } else {
        ctx.line(format!(
            "{} world(s), point {}, edges {:?}",
            r.model.frame().size(),
            r.model.point(),
            r.model.frame().edges()
        ));
        ctx.line(format!("copy map: {:?}", r.copy_map));
    }
    Ok(true)
}

fn unravel_ok(p: &PointedModel, r: &UnravelResult) -> bool {
    let vocab = p.model.vars().map(String::from).collect();
    check_class(r.model.frame(), FrameClass::BaledTree)
        && grzlab_core::bisim::is_bisimulation(&r.copy_relation(), &r.model.model, &p.model, &vocab).is_ok()
        && r.copy_map[r.model.point()] == p.point()
}

fn cmd_unravel_sweep(ctx: &mut Ctx, max: usize, samples: usize, seed: u64) -> Answer {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 1..=max {
        for frame in enumerate_with_cap(FrameClass::DirectedPoset, n, true, Limits::default().max_frames)? {
            for m in sample_models(&frame, &["p", "q"], samples, seed) {
                for point in frame.worlds() {
                    let p = m.clone().at(point)?;
                    let r = unravel_baled(&p)?;
                    checked += 1;
                    if !unravel_ok(&p, &r) {
                        failures.push((frame.edges(), point));
                    }
                }
            }
        }
    }
    if ctx.json {
        ctx.value(&json!({"models": checked, "failures": failures}));
    } else {
        ctx.line(format!("{checked} pointed model(s) unraveled, {} failure(s)", failures.len()));
    }
    Ok(failures.is_empty())
}

#[derive(Clone, Copy)]
enum ButtonsOrRatchet {
    Buttons,
    Ratchet,
}

fn cmd_counted(ctx: &mut Ctx, n: Option<usize>, max: Option<usize>, which: ButtonsOrRatchet) -> Answer {
    let counts: Vec<usize> = match (n, max) {
        (Some(n), _) => vec![n],
        (None, Some(m)) => (1..=m).collect(),
        (None, None) => return Err(Failure::Usage("give --n or --max".into())),
    };
    let mut all = true;
    let mut out = Vec::new();
    for k in counts {
        let ((p, stmts), kind) = match which {
            ButtonsOrRatchet::Buttons => (powerset_button_model(k)?, ControlKind::IndependentButtons),
            ButtonsOrRatchet::Ratchet => (ratchet_chain_model(k)?, ControlKind::Ratchet),
        };
        let report = check_control(kind, &p, &stmts)?;
        all &= report.holds();
        if ctx.json {
            out.push(json!({
                "n": k,
                "kind": kind.name(),
                "holds": report.holds(),
                "model": io::model_json(&p.model, Some(p.point())),
            }));
        } else {
            ctx.line(format!(
                "n={k}: {} world(s), {kind} {}",
                p.frame().size(),
                if report.holds() { "holds" } else { "fails" }
            ));
            for c in &report.failures {
                ctx.line(format!("  failed: {}", c.name));
            }
        }
    }
    if ctx.json {
        ctx.value(&json!(out));
    }
    Ok(all)
}

struct LabelOutcome {
    labeling: Labeling,
    frame_ok: bool,
    jankov_fine_ok: bool,
    models_checked: usize,
    models_failed: usize,
}

fn label_one(frame: &Frame, ratchet: bool, samples: usize, seed: u64) -> Result<LabelOutcome, Failure> {
    let (labeling, n) = if ratchet {
        let (n, r) = ratchet_chain_model(frame.size())?;
        (labeling_from_ratchet(frame, &r)?, n)
    } else {
        let (n, b) = powerset_button_model(frame.size() - 1)?;
        let root = frame.least().ok_or(ControlError::NotLattice)?;
        (labeling_from_buttons(frame, root, &b)?, n)
    };
    let frame_ok = check_frame_labeling(&labeling, &n).holds();
    let jankov_fine_ok = n.satisfies(&labeling.jankov_fine_instance());
    let mut failed = 0;
    let models = sample_models(frame, &["p", "q"], samples, seed);
    for m in &models {
        let psi = model_labeling_from_frame_labeling(m, &labeling)?;
        if !verify_model_labeling(m, labeling.root, &n, &psi)? {
            failed += 1;
        }
    }
    Ok(LabelOutcome {
        labeling,
        frame_ok,
        jankov_fine_ok,
        models_checked: models.len(),
        models_failed: failed,
    })
}

fn label_json(o: &LabelOutcome) -> Value {
    json!({
        "labeling": io::labeling_json(&o.labeling),
        "frame_labeling": o.frame_ok,
        "jankov_fine": o.jankov_fine_ok,
        "models_checked": o.models_checked,
        "models_failed": o.models_failed,
    })
}

fn label_passes(o: &LabelOutcome) -> bool {
    o.frame_ok && o.jankov_fine_ok && o.models_failed == 0
}

fn cmd_label(
    ctx: &mut Ctx,
    frame: Option<&str>,
    ratchet: bool,
    class: FrameClass,
    max: usize,
    samples: usize,
    seed: u64,
) -> Answer {
    let frames = match frame {
        Some(path) => vec![ctx.frame(path)?],
        None => {
            let mut all = Vec::new();
            for n in 1..=max {
                all.extend(enumerate_with_cap(class, n, true, Limits::default().max_frames)?);
            }
            all
        }
    };
    let mut outcomes = Vec::new();
    for f in &frames {
        outcomes.push(label_one(f, ratchet, samples, seed)?);
    }
    if ctx.json {
        let out: Vec<Value> = outcomes.iter().map(label_json).collect();
        ctx.value(&json!(out));
    } else {
        for o in &outcomes {
            ctx.line(format!(
                "{} node(s) {:?}: frame labeling {}, Jankov-Fine {}, model labelings {}/{}",
                o.labeling.frame.size(),
                o.labeling.frame.edges(),
                if o.frame_ok { "ok" } else { "FAILS" },
                if o.jankov_fine_ok { "ok" } else { "FAILS" },
                o.models_checked - o.models_failed,
                o.models_checked
            ));
            if frame.is_some() {
                for (w, l) in o.labeling.labels.iter().enumerate() {
                    ctx.line(format!("  w{w}: {l}"));
                }
            }
        }
    }
    Ok(outcomes.iter().all(label_passes))
}

fn cmd_verify_labeling(
    ctx: &mut Ctx,
    labeling: &str,
    model: &str,
    point: Option<usize>,
    source: Option<&str>,
) -> Answer {
    let l = ctx.labeling(labeling)?;
    let n = ctx.model(model, point)?;
    let report = check_frame_labeling(&l, &n);
    let mut model_labeling = None;
    if let Some(path) = source {
        let m: Model = ctx.model(path, None)?.model;
        let psi = model_labeling_from_frame_labeling(&m, &l)?;
        model_labeling = Some(verify_model_labeling(&m, l.root, &n, &psi)?);
    }
    if ctx.json {
        let v: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        ctx.value(&json!({
            "frame_labeling": report.holds(),
            "violations": v,
            "model_labeling": model_labeling,
        }));
    } else {
        ctx.line(format!("frame labeling: {}", if report.holds() { "holds" } else { "fails" }));
        for v in &report.violations {
            ctx.line(format!("  {v}"));
        }
        if let Some(ok) = model_labeling {
            ctx.line(format!("model labeling: {}", if ok { "holds" } else { "fails" }));
        }
    }
    Ok(report.holds() && model_labeling.unwrap_or(true))
}

fn cmd_lemmas(ctx: &mut Ctx, max: usize, cap: Option<usize>) -> Answer {
    let reports = verify_displayed_lemmas(max, &limits(cap))?;
    if ctx.json {
        let out: Vec<Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "statement": r.statement,
                    "holds": r.holds,
                    "frames_examined": r.frames_examined,
                    "detail": r.detail,
                })
            })
            .collect();
        ctx.value(&json!(out));
    } else {
        for r in &reports {
            let verdict = if r.holds { "pass" } else { "FAIL" };
            ctx.line(format!("({}) {verdict}: {} [{}]", r.id, r.statement, r.detail));
        }
    }
    Ok(reports.iter().all(|r| r.holds))
}

fn cmd_export_dot(
    ctx: &mut Ctx,
    frame: Option<String>,
    model: Option<String>,
    labeling: Option<String>,
) -> Answer {
    let text = if let Some(path) = frame {
        io::frame_dot(&ctx.frame(&path)?)
    } else if let Some(path) = model {
        io::model_dot(&ctx.model(&path, None)?.model)
    } else if let Some(path) = labeling {
        io::labeling_dot(&ctx.labeling(&path)?)
    } else {
        return Err(Failure::Usage("give --frame, --model or --labeling".into()));
    };
    let _ = write!(ctx.out, "{text}");
    Ok(true)
}
