//! Bounded countermodel search over neighborhood models, and the
//! axiom-soundness harness built on the same enumeration.
//!
//! Exhaustive search enumerates every valid frame in a canonical order —
//! by world count, then lexicographically by the (min, max) arrays — and
//! every monotone valuation over the configured variables. The first
//! falsifying (model, world) pair in that order is returned, after being
//! re-verified through the independent forcing recursion. Absence up to
//! the bound is exactly that; the outcome name says "up to" on purpose.
//!
//! The soundness sweep leans on compositionality: an instance's truth set
//! depends only on the truth sets of the formulas plugged into the
//! schema's metavariables, so instances are grouped by those truth-set
//! tuples and each group is decided once per frame. Per-instance counts
//! are recovered from group multiplicities, and sampled violations are
//! re-checked against the forcing recursion as they are recorded.

use crate::formula::{enumerate_formulas, FleetTooLarge, Formula};
use crate::gen::{random_model, seeded_rng};
use crate::nimodel::{truth_set_in, NimFrame, NimModel, Valuation};
use crate::worldset::{WorldSet, MAX_WORLDS};
use rand::Rng;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

/// How the model space is walked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    /// Every valid frame up to the world bound, in canonical order.
    Exhaustive,
    /// Seeded random models; cheaper, and sufficient for refutation.
    Randomized { samples: usize, seed: u64 },
}

/// Bounds and knobs for a search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_worlds: usize,
    /// Propositional variables the valuations range over. Variables of the
    /// searched formula are always included on top of these.
    pub variables: Vec<String>,
    pub time_limit: Option<Duration>,
    pub enumeration: Enumeration,
    /// Worker threads for countermodel search: 1 is sequential, 0 means one
    /// per core. Sweeps and rule checks run sequentially regardless.
    pub jobs: usize,
}

impl SearchConfig {
    pub fn new(max_worlds: usize) -> SearchConfig {
        SearchConfig {
            max_worlds,
            variables: Vec::new(),
            time_limit: None,
            enumeration: Enumeration::Exhaustive,
            jobs: 1,
        }
    }

    fn check(&self) -> Result<(), SearchError> {
        if self.max_worlds == 0 {
            return Err(SearchError::ZeroWorlds);
        }
        if self.max_worlds > MAX_WORLDS {
            return Err(SearchError::TooManyWorlds {
                got: self.max_worlds,
            });
        }
        Ok(())
    }

    /// The variables valuations actually range over: the configured ones
    /// plus whatever the formula mentions, sorted and deduplicated.
    fn effective_variables(&self, formulas: &[&Formula]) -> Vec<String> {
        let mut vars = self.variables.clone();
        for f in formulas {
            vars.extend(f.variables());
        }
        vars.sort();
        vars.dedup();
        vars
    }
}

/// What a search found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A model and world where the formula fails. Always re-verified
    /// against the forcing recursion before being returned.
    Countermodel { model: NimModel, world: usize },
    /// No countermodel exists within the bound — which proves nothing
    /// beyond the bound.
    NoCountermodelUpTo {
        max_worlds: usize,
        frames_checked: usize,
    },
}

/// Why a search did not produce an outcome.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("time limit exceeded after {frames_checked} frames")]
    TimeLimitExceeded { frames_checked: usize },
    #[error("search needs at least one world, got max_worlds = 0")]
    ZeroWorlds,
    #[error("max_worlds {got} exceeds the supported maximum of {MAX_WORLDS}")]
    TooManyWorlds { got: usize },
    #[error(transparent)]
    FleetTooLarge(#[from] FleetTooLarge),
}

/// Milestones reported while a search runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgressEvent {
    LevelStarted { worlds: usize },
    FramesChecked { worlds: usize, frames_checked: usize },
    LevelFinished { worlds: usize, frames_checked: usize },
}

#[derive(Clone, Copy)]
struct Deadline {
    started: Instant,
    limit: Duration,
}

impl Deadline {
    fn new(limit: Option<Duration>) -> Option<Deadline> {
        limit.map(|limit| Deadline {
            started: Instant::now(),
            limit,
        })
    }

    fn exceeded(this: Option<Deadline>) -> bool {
        this.is_some_and(|d| d.started.elapsed() >= d.limit)
    }
}

/// All minimal-neighborhood arrays on `worlds` worlds satisfying the
/// reflexivity and min-closure conditions, in lexicographic order.
pub fn enumerate_min_arrays(worlds: usize) -> Vec<Vec<WorldSet>> {
    let full = WorldSet::full(worlds);
    let candidates: Vec<Vec<WorldSet>> = (0..worlds)
        .map(|w| {
            let mut c: Vec<WorldSet> = full
                .subsets_including(WorldSet::singleton(w))
                .collect();
            c.sort();
            c
        })
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<WorldSet> = Vec::with_capacity(worlds);

    fn extend(
        w: usize,
        candidates: &[Vec<WorldSet>],
        current: &mut Vec<WorldSet>,
        out: &mut Vec<Vec<WorldSet>>,
    ) {
        if w == candidates.len() {
            out.push(current.clone());
            return;
        }
        for &cand in &candidates[w] {
            let closed = cand
                .iter()
                .filter(|&u| u < w)
                .all(|u| current[u].is_subset_of(cand))
                && (0..w).all(|u| !current[u].contains(w) || cand.is_subset_of(current[u]));
            if closed {
                current.push(cand);
                extend(w + 1, candidates, current, out);
                current.pop();
            }
        }
    }

    extend(0, &candidates, &mut current, &mut out);
    out
}

/// Walks every maximal-neighborhood array completing `min` into a valid
/// frame, in lexicographic order, until the visitor breaks.
fn for_each_max_array<B>(
    min: &[WorldSet],
    f: &mut impl FnMut(&[WorldSet]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let worlds = min.len();
    let full = WorldSet::full(worlds);
    let candidates: Vec<Vec<WorldSet>> = (0..worlds)
        .map(|w| {
            let mut c: Vec<WorldSet> = full
                .subsets_including(min[w])
                .filter(|&cand| cand.iter().all(|v| min[v].is_subset_of(cand)))
                .collect();
            c.sort();
            c
        })
        .collect();
    let mut current: Vec<WorldSet> = Vec::with_capacity(worlds);

    fn extend<B>(
        w: usize,
        min: &[WorldSet],
        candidates: &[Vec<WorldSet>],
        current: &mut Vec<WorldSet>,
        f: &mut impl FnMut(&[WorldSet]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if w == min.len() {
            return f(current);
        }
        for &cand in &candidates[w] {
            let consistent = min[w]
                .iter()
                .filter(|&u| u < w)
                .all(|u| current[u].is_subset_of(cand))
                && (0..w).all(|u| !min[u].contains(w) || cand.is_subset_of(current[u]));
            if consistent {
                current.push(cand);
                extend(w + 1, min, candidates, current, f)?;
                current.pop();
            }
        }
        ControlFlow::Continue(())
    }

    extend(0, min, &candidates, &mut current, f)
}

/// Every valid frame on exactly `worlds` worlds (T-condition carried), in
/// canonical order. Intended for desk-scale world counts; the space grows
/// super-exponentially.
pub fn enumerate_frames(worlds: usize) -> Vec<NimFrame> {
    let mut frames = Vec::new();
    for min in enumerate_min_arrays(worlds) {
        let _: ControlFlow<()> = for_each_max_array(&min, &mut |max| {
            frames.push(
                NimFrame::new(min.clone(), max.to_vec(), true)
                    .expect("enumeration stays within shape bounds"),
            );
            ControlFlow::Continue(())
        });
    }
    frames
}

/// All sets monotone with respect to the given minimal neighborhoods —
/// every member drags its `min` along — in lexicographic order. These are
/// exactly the admissible atom truth sets.
pub fn monotone_sets(min_sets: &[WorldSet]) -> Vec<WorldSet> {
    let full = WorldSet::full(min_sets.len());
    let mut sets: Vec<WorldSet> = full
        .subsets()
        .filter(|s| s.iter().all(|w| min_sets[w].is_subset_of(*s)))
        .collect();
    sets.sort();
    sets
}

/// Every monotone valuation of `variables` on the frame, ordered by the
/// variable-wise lexicographic product of [`monotone_sets`].
pub fn enumerate_valuations(frame: &NimFrame, variables: &[String]) -> Vec<Valuation> {
    valuations_from_sets(&monotone_sets(frame.min_sets()), variables)
}

fn valuations_from_sets(sets: &[WorldSet], variables: &[String]) -> Vec<Valuation> {
    let k = variables.len();
    if k == 0 {
        return vec![Valuation::new()];
    }
    let mut out = Vec::with_capacity(sets.len().pow(k as u32));
    let mut indices = vec![0usize; k];
    'outer: loop {
        let mut valuation = Valuation::new();
        for (variable, &i) in variables.iter().zip(&indices) {
            valuation.insert(variable.clone(), sets[i]);
        }
        out.push(valuation);
        let mut digit = k;
        loop {
            if digit == 0 {
                break 'outer;
            }
            digit -= 1;
            indices[digit] += 1;
            if indices[digit] < sets.len() {
                break;
            }
            indices[digit] = 0;
        }
    }
    out
}

fn falsifying_world(frame: &NimFrame, valuation: &Valuation, formula: &Formula) -> Option<usize> {
    let truth = truth_set_in(frame, valuation, formula);
    frame.universe().difference(truth).iter().next()
}

fn verify_countermodel(model: &NimModel, world: usize, formula: &Formula) {
    assert!(
        model.validate().is_empty(),
        "search produced an invalid model; this is a bug"
    );
    assert!(
        !model.forces(world, formula),
        "search produced a world that does not refute the formula; this is a bug"
    );
}

struct Hit {
    model: NimModel,
    world: usize,
}

/// Scans every (frame, valuation) completion of one min array, in canonical
/// order, stopping at the first falsifying model.
fn scan_min_array(
    min: &[WorldSet],
    formula: &Formula,
    variables: &[String],
    deadline: Option<Deadline>,
    mut tick: impl FnMut(usize),
) -> Result<(usize, Option<Hit>), SearchError> {
    let valuations = valuations_from_sets(&monotone_sets(min), variables);
    let mut frames = 0usize;
    let flow = for_each_max_array(min, &mut |max| {
        if Deadline::exceeded(deadline) {
            return ControlFlow::Break(None);
        }
        frames += 1;
        tick(frames);
        let frame = NimFrame::new(min.to_vec(), max.to_vec(), true)
            .expect("enumeration stays within shape bounds");
        for valuation in &valuations {
            if let Some(world) = falsifying_world(&frame, valuation, formula) {
                return ControlFlow::Break(Some(Hit {
                    model: NimModel {
                        frame,
                        valuation: valuation.clone(),
                    },
                    world,
                }));
            }
        }
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Continue(()) => Ok((frames, None)),
        ControlFlow::Break(None) => Err(SearchError::TimeLimitExceeded {
            frames_checked: frames,
        }),
        ControlFlow::Break(Some(hit)) => Ok((frames, Some(hit))),
    }
}

/// Searches for a model and world falsifying the formula, up to the
/// configured world bound. See the module docs for the enumeration order;
/// with equal configuration the outcome is identical across runs, worker
/// count included.
pub fn find_countermodel(
    formula: &Formula,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    find_countermodel_with_progress(formula, cfg, |_| {})
}

/// [`find_countermodel`] reporting progress milestones to a callback.
pub fn find_countermodel_with_progress(
    formula: &Formula,
    cfg: &SearchConfig,
    mut progress: impl FnMut(ProgressEvent),
) -> Result<SearchOutcome, SearchError> {
    cfg.check()?;
    let variables = cfg.effective_variables(&[formula]);
    let deadline = Deadline::new(cfg.time_limit);

    let Enumeration::Randomized { samples, seed } = cfg.enumeration else {
        return exhaustive_search(formula, cfg, &variables, deadline, &mut progress);
    };

    let refs: Vec<&str> = variables.iter().map(String::as_str).collect();
    let mut rng = seeded_rng(seed);
    for sample in 0..samples {
        if Deadline::exceeded(deadline) {
            return Err(SearchError::TimeLimitExceeded {
                frames_checked: sample,
            });
        }
        let worlds = rng.gen_range(1..=cfg.max_worlds);
        let model = random_model(&mut rng, worlds, &refs);
        if let Some(world) = falsifying_world(&model.frame, &model.valuation, formula) {
            verify_countermodel(&model, world, formula);
            return Ok(SearchOutcome::Countermodel { model, world });
        }
        if (sample + 1).is_multiple_of(1024) {
            progress(ProgressEvent::FramesChecked {
                worlds: cfg.max_worlds,
                frames_checked: sample + 1,
            });
        }
    }
    Ok(SearchOutcome::NoCountermodelUpTo {
        max_worlds: cfg.max_worlds,
        frames_checked: samples,
    })
}

fn exhaustive_search(
    formula: &Formula,
    cfg: &SearchConfig,
    variables: &[String],
    deadline: Option<Deadline>,
    progress: &mut impl FnMut(ProgressEvent),
) -> Result<SearchOutcome, SearchError> {
    let mut frames_checked = 0usize;
    for worlds in 1..=cfg.max_worlds {
        progress(ProgressEvent::LevelStarted { worlds });
        let min_arrays = enumerate_min_arrays(worlds);

        let level = if cfg.jobs == 1 {
            sequential_level(
                &min_arrays,
                formula,
                variables,
                deadline,
                worlds,
                frames_checked,
                progress,
            )
        } else {
            parallel_level(&min_arrays, formula, variables, deadline, cfg.jobs)
        };

        let (level_frames, hit) = match level {
            Ok(r) => r,
            Err(SearchError::TimeLimitExceeded {
                frames_checked: f,
            }) => {
                return Err(SearchError::TimeLimitExceeded {
                    frames_checked: frames_checked + f,
                })
            }
            Err(e) => return Err(e),
        };
        frames_checked += level_frames;
        progress(ProgressEvent::LevelFinished {
            worlds,
            frames_checked,
        });
        if let Some(hit) = hit {
            verify_countermodel(&hit.model, hit.world, formula);
            return Ok(SearchOutcome::Countermodel {
                model: hit.model,
                world: hit.world,
            });
        }
    }
    Ok(SearchOutcome::NoCountermodelUpTo {
        max_worlds: cfg.max_worlds,
        frames_checked,
    })
}

fn sequential_level(
    min_arrays: &[Vec<WorldSet>],
    formula: &Formula,
    variables: &[String],
    deadline: Option<Deadline>,
    worlds: usize,
    frames_before: usize,
    progress: &mut impl FnMut(ProgressEvent),
) -> Result<(usize, Option<Hit>), SearchError> {
    let mut level_frames = 0usize;
    for min in min_arrays {
        let (scanned, hit) = match scan_min_array(min, formula, variables, deadline, |f| {
            if (frames_before + level_frames + f).is_multiple_of(4096) {
                progress(ProgressEvent::FramesChecked {
                    worlds,
                    frames_checked: frames_before + level_frames + f,
                });
            }
        }) {
            Ok(r) => r,
            Err(SearchError::TimeLimitExceeded { frames_checked }) => {
                return Err(SearchError::TimeLimitExceeded {
                    frames_checked: level_frames + frames_checked,
                })
            }
            Err(e) => return Err(e),
        };
        level_frames += scanned;
        if hit.is_some() {
            return Ok((level_frames, hit));
        }
    }
    Ok((level_frames, None))
}

/// Scans the whole level in parallel over min arrays, then picks the hit
/// from the earliest min array. Trades early exit for a deterministic
/// outcome; the canonical-order contract survives worker scheduling.
fn parallel_level(
    min_arrays: &[Vec<WorldSet>],
    formula: &Formula,
    variables: &[String],
    deadline: Option<Deadline>,
    jobs: usize,
) -> Result<(usize, Option<Hit>), SearchError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool construction");
    let results: Result<Vec<(usize, Option<Hit>)>, SearchError> = pool.install(|| {
        min_arrays
            .par_iter()
            .map(|min| scan_min_array(min, formula, variables, deadline, |_| {}))
            .collect()
    });
    let results = results?;
    let frames = results.iter().map(|(f, _)| f).sum();
    let hit = results.into_iter().find_map(|(_, hit)| hit);
    Ok((frames, hit))
}

fn full_set(frame: &NimFrame) -> WorldSet {
    frame.universe()
}

/// Walks the configured model space, handing each frame together with all
/// its monotone valuations to the visitor. Returns (frames, models) counts.
fn for_each_frame(
    cfg: &SearchConfig,
    variables: &[String],
    mut on_frame: impl FnMut(&NimFrame, &[Valuation]),
) -> Result<(usize, usize), SearchError> {
    cfg.check()?;
    let deadline = Deadline::new(cfg.time_limit);
    let mut frames_checked = 0usize;
    let mut models_checked = 0usize;

    if let Enumeration::Randomized { samples, seed } = cfg.enumeration {
        let refs: Vec<&str> = variables.iter().map(String::as_str).collect();
        let mut rng = seeded_rng(seed);
        for _ in 0..samples {
            if Deadline::exceeded(deadline) {
                return Err(SearchError::TimeLimitExceeded { frames_checked });
            }
            let worlds = rng.gen_range(1..=cfg.max_worlds);
            let model = random_model(&mut rng, worlds, &refs);
            frames_checked += 1;
            models_checked += 1;
            on_frame(&model.frame, std::slice::from_ref(&model.valuation));
        }
        return Ok((frames_checked, models_checked));
    }

    for worlds in 1..=cfg.max_worlds {
        for min in enumerate_min_arrays(worlds) {
            let valuations = valuations_from_sets(&monotone_sets(&min), variables);
            let flow: ControlFlow<()> = for_each_max_array(&min, &mut |max| {
                if Deadline::exceeded(deadline) {
                    return ControlFlow::Break(());
                }
                frames_checked += 1;
                models_checked += valuations.len();
                let frame = NimFrame::new(min.clone(), max.to_vec(), true)
                    .expect("enumeration stays within shape bounds");
                on_frame(&frame, &valuations);
                ControlFlow::Continue(())
            });
            if flow.is_break() {
                return Err(SearchError::TimeLimitExceeded { frames_checked });
            }
        }
    }
    Ok((frames_checked, models_checked))
}

/// An axiom schema: a template formula whose variables are metavariables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub name: String,
    pub template: Formula,
}

impl Schema {
    pub fn new(name: impl Into<String>, template: Formula) -> Schema {
        Schema {
            name: name.into(),
            template,
        }
    }

    /// The template's variables, each a slot instances fill.
    pub fn metavariables(&self) -> Vec<String> {
        self.template.variables()
    }

    /// Every instance over formulas of the given depth: the full cartesian
    /// product of the fleet across metavariable slots.
    pub fn instances(
        &self,
        variables: &[String],
        depth: usize,
    ) -> Result<Vec<Formula>, FleetTooLarge> {
        let fleet = enumerate_formulas(variables, depth)?;
        let metavariables = self.metavariables();
        let k = metavariables.len();
        let mut out = Vec::new();
        let mut indices = vec![0usize; k];
        'outer: loop {
            let bindings: Vec<(String, Formula)> = metavariables
                .iter()
                .zip(&indices)
                .map(|(m, &i)| (m.clone(), fleet[i].clone()))
                .collect();
            out.push(self.template.substitute(&bindings));
            let mut digit = k;
            loop {
                if digit == 0 {
                    break 'outer;
                }
                digit -= 1;
                indices[digit] += 1;
                if indices[digit] < fleet.len() {
                    break;
                }
                indices[digit] = 0;
            }
        }
        Ok(out)
    }
}

fn schema(name: &str, template: &str) -> Schema {
    Schema::new(
        name,
        template.parse().expect("built-in schema templates parse"),
    )
}

/// The ten-schema intuitionistic propositional basis.
pub fn ipc_basis() -> Vec<Schema> {
    vec![
        schema("then-1", "a -> (b -> a)"),
        schema("then-2", "(a -> b) -> ((a -> (b -> c)) -> (a -> c))"),
        schema("and-intro", "a -> (b -> a & b)"),
        schema("and-elim-left", "a & b -> a"),
        schema("and-elim-right", "a & b -> b"),
        schema("or-intro-left", "a -> a | b"),
        schema("or-intro-right", "b -> a | b"),
        schema("or-elim", "(a -> c) -> ((b -> c) -> (a | b -> c))"),
        schema("neg-intro", "(a -> b) -> ((a -> ~b) -> ~a)"),
        schema("ex-falso", "~a -> (a -> b)"),
    ]
}

/// Distribution of the box over implication.
pub fn axiom_k() -> Schema {
    schema("k", "[](a -> b) -> ([]a -> []b)")
}

/// Reflexivity: what is necessary is the case.
pub fn axiom_t() -> Schema {
    schema("t", "[]a -> a")
}

/// The full schema battery: the intuitionistic basis plus K and T.
pub fn imtl_schemas() -> Vec<Schema> {
    let mut schemas = ipc_basis();
    schemas.push(axiom_k());
    schemas.push(axiom_t());
    schemas
}

/// Instantiation depth used by [`soundness_sweep`].
pub const DEFAULT_INSTANTIATION_DEPTH: usize = 2;

/// How many violating (model, instance) pairs are kept verbatim per schema.
pub const VIOLATION_SAMPLE_CAP: usize = 3;

/// One recorded counterexample to a schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepViolation {
    pub schema: String,
    pub instance: Formula,
    pub model: NimModel,
    pub world: usize,
}

/// Per-schema sweep tally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaOutcome {
    pub schema: Schema,
    /// Instances evaluated against each model (the fleet size raised to the
    /// number of metavariables).
    pub instances_per_model: usize,
    /// Exact count of (model, instance) pairs where the instance fails.
    pub violating_pairs: usize,
    /// Up to [`VIOLATION_SAMPLE_CAP`] concrete counterexamples, in
    /// enumeration order.
    pub samples: Vec<SweepViolation>,
}

impl SchemaOutcome {
    pub fn violated(&self) -> bool {
        self.violating_pairs > 0
    }
}

/// Outcome of sweeping a schema battery over the bounded model space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub models_checked: usize,
    pub frames_checked: usize,
    pub instantiation_depth: usize,
    pub outcomes: Vec<SchemaOutcome>,
}

impl SweepReport {
    pub fn total_violating_pairs(&self) -> usize {
        self.outcomes.iter().map(|o| o.violating_pairs).sum()
    }

    /// Whether every schema survived every model.
    pub fn sound(&self) -> bool {
        self.total_violating_pairs() == 0
    }
}

/// Checks every instance of every schema (over the configured variables,
/// at [`DEFAULT_INSTANTIATION_DEPTH`]) against every model in the
/// configured space, reporting exact violation counts and sampled
/// counterexamples. The verdict for each (model, instance) pair is the
/// same as running [`find_countermodel`] on the instance — instances are
/// grouped by argument truth sets rather than checked one by one.
pub fn soundness_sweep(
    schemas: &[Schema],
    cfg: &SearchConfig,
) -> Result<SweepReport, SearchError> {
    soundness_sweep_with_depth(schemas, cfg, DEFAULT_INSTANTIATION_DEPTH)
}

/// [`soundness_sweep`] with an explicit instantiation depth.
pub fn soundness_sweep_with_depth(
    schemas: &[Schema],
    cfg: &SearchConfig,
    depth: usize,
) -> Result<SweepReport, SearchError> {
    cfg.check()?;
    let fleet = enumerate_formulas(&cfg.variables, depth)?;
    let metavariables: Vec<Vec<String>> = schemas.iter().map(Schema::metavariables).collect();
    let mut outcomes: Vec<SchemaOutcome> = schemas
        .iter()
        .zip(&metavariables)
        .map(|(s, m)| SchemaOutcome {
            schema: s.clone(),
            instances_per_model: fleet.len().pow(m.len() as u32),
            violating_pairs: 0,
            samples: Vec::new(),
        })
        .collect();

    let (frames_checked, models_checked) =
        for_each_frame(cfg, &cfg.variables, |frame, valuations| {
            // Truth-set tuples repeat heavily across a frame's valuations,
            // so schema verdicts are memoized per frame.
            let mut verdicts: Vec<HashMap<Vec<WorldSet>, WorldSet>> =
                vec![HashMap::new(); schemas.len()];
            let full = full_set(frame);
            for valuation in valuations {
                let truth_sets: Vec<WorldSet> = fleet
                    .iter()
                    .map(|f| truth_set_in(frame, valuation, f))
                    .collect();
                let mut groups: BTreeMap<WorldSet, (usize, usize)> = BTreeMap::new();
                for (i, &t) in truth_sets.iter().enumerate() {
                    groups.entry(t).or_insert((0, i)).0 += 1;
                }
                let distinct: Vec<(WorldSet, usize, usize)> = groups
                    .into_iter()
                    .map(|(t, (mult, rep))| (t, mult, rep))
                    .collect();

                for (s, schema) in schemas.iter().enumerate() {
                    let metas = &metavariables[s];
                    let k = metas.len();
                    let mut binding: Valuation = metas
                        .iter()
                        .map(|m| (m.clone(), WorldSet::EMPTY))
                        .collect();
                    let mut indices = vec![0usize; k];
                    'tuples: loop {
                        let tuple: Vec<WorldSet> =
                            indices.iter().map(|&i| distinct[i].0).collect();
                        let verdict = *verdicts[s].entry(tuple.clone()).or_insert_with(|| {
                            for (m, &t) in metas.iter().zip(&tuple) {
                                *binding.get_mut(m).expect("binding key present") = t;
                            }
                            truth_set_in(frame, &binding, &schema.template)
                        });
                        if verdict != full {
                            let pairs: usize =
                                indices.iter().map(|&i| distinct[i].1).product();
                            outcomes[s].violating_pairs += pairs;
                            if outcomes[s].samples.len() < VIOLATION_SAMPLE_CAP {
                                let bindings: Vec<(String, Formula)> = metas
                                    .iter()
                                    .zip(&indices)
                                    .map(|(m, &i)| (m.clone(), fleet[distinct[i].2].clone()))
                                    .collect();
                                let instance = schema.template.substitute(&bindings);
                                let world = full
                                    .difference(verdict)
                                    .iter()
                                    .next()
                                    .expect("non-full verdict misses a world");
                                let model = NimModel {
                                    frame: frame.clone(),
                                    valuation: valuation.clone(),
                                };
                                assert!(
                                    !model.forces(world, &instance),
                                    "sampled sweep violation does not re-verify; this is a bug"
                                );
                                outcomes[s].samples.push(SweepViolation {
                                    schema: schema.name.clone(),
                                    instance,
                                    model,
                                    world,
                                });
                            }
                        }
                        let mut digit = k;
                        loop {
                            if digit == 0 {
                                break 'tuples;
                            }
                            digit -= 1;
                            indices[digit] += 1;
                            if indices[digit] < distinct.len() {
                                break;
                            }
                            indices[digit] = 0;
                        }
                    }
                }
            }
        })?;

    Ok(SweepReport {
        models_checked,
        frames_checked,
        instantiation_depth: depth,
        outcomes,
    })
}

/// A model satisfying a formula everywhere while refuting its necessitation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessitationViolation {
    pub model: NimModel,
    pub world: usize,
}

/// Outcome of checking the necessitation rule over the bounded model space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessitationReport {
    pub models_checked: usize,
    /// Models where the formula held at every world, i.e. where the rule
    /// has anything to say.
    pub premise_models: usize,
    pub violations: usize,
    pub samples: Vec<NecessitationViolation>,
}

impl NecessitationReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks the necessitation rule: in every model of the configured space
/// where the formula is satisfied everywhere, its boxing must be too.
pub fn necessitation_check(
    formula: &Formula,
    cfg: &SearchConfig,
) -> Result<NecessitationReport, SearchError> {
    let variables = cfg.effective_variables(&[formula]);
    let boxed = formula.clone().boxed();
    let mut premise_models = 0usize;
    let mut violations = 0usize;
    let mut samples = Vec::new();
    let (_, models_checked) = for_each_frame(cfg, &variables, |frame, valuations| {
        let full = full_set(frame);
        for valuation in valuations {
            if truth_set_in(frame, valuation, formula) != full {
                continue;
            }
            premise_models += 1;
            let boxed_truth = truth_set_in(frame, valuation, &boxed);
            if boxed_truth != full {
                violations += 1;
                if samples.len() < VIOLATION_SAMPLE_CAP {
                    samples.push(NecessitationViolation {
                        model: NimModel {
                            frame: frame.clone(),
                            valuation: valuation.clone(),
                        },
                        world: full
                            .difference(boxed_truth)
                            .iter()
                            .next()
                            .expect("non-full truth set misses a world"),
                    });
                }
            }
        }
    })?;
    Ok(NecessitationReport {
        models_checked,
        premise_models,
        violations,
        samples,
    })
}
