// Acceptance gates for the whole workbench. Each test covers one numbered
// criterion and prints a single pass/fail line; run with `--nocapture` to
// see the lines for passing criteria too.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use imtl::formula::enumerate_formulas;
use imtl::gen::{random_frame, random_model, random_mt2, seeded_rng};
use imtl::nimodel::{FrameViolation, NimFrame, NimModel};
use imtl::search::{
    find_countermodel, imtl_schemas, necessitation_check, soundness_sweep, Enumeration,
    SearchConfig, SearchOutcome,
};
use imtl::topology::{w_min_topology, w_topology};
use imtl::transform::{check_pointwise_equivalence, mt2_to_nim, nim_to_mt1, nim_to_mt3};
use imtl::{load_model, parse_model, render_model, Formula, WorldSet};
use rand::Rng;

fn conclude(number: u8, name: &str, failures: usize, detail: String) {
    if failures == 0 {
        println!("criterion {number} ({name}): pass - {detail}");
    } else {
        println!("criterion {number} ({name}): FAIL - {detail}");
        panic!("criterion {number} ({name}): {detail}");
    }
}

fn violation_key(v: &FrameViolation) -> (char, usize, Option<usize>) {
    match *v {
        FrameViolation::Reflexivity { world } => ('a', world, None),
        FrameViolation::MinOutsideMax { world } => ('b', world, None),
        FrameViolation::MinNotClosed { world, via } => ('c', world, Some(via)),
        FrameViolation::MaxNotClosed { world, via } => ('e', world, Some(via)),
        FrameViolation::TCondition { world, via } => ('f', world, Some(via)),
    }
}

// Deliberately naive re-statement of the frame conditions: every check is a
// plain double loop over worlds with element-wise containment, sharing no
// code with NimFrame::validate.
fn brute_violations(frame: &NimFrame) -> BTreeSet<(char, usize, Option<usize>)> {
    let n = frame.world_count();
    let member = |set: WorldSet, x: usize| set.iter().any(|y| y == x);
    let within = |a: WorldSet, b: WorldSet| a.iter().all(|x| member(b, x));
    let mut found = BTreeSet::new();
    for w in 0..n {
        if !member(frame.min(w), w) {
            found.insert(('a', w, None));
        }
        if !within(frame.min(w), frame.max(w)) {
            found.insert(('b', w, None));
        }
        for u in 0..n {
            if member(frame.min(w), u) && !within(frame.min(u), frame.min(w)) {
                found.insert(('c', w, Some(u)));
            }
            if member(frame.min(w), u) && !within(frame.max(u), frame.max(w)) {
                found.insert(('e', w, Some(u)));
            }
            if frame.t_condition() && member(frame.max(w), u) && !within(frame.min(u), frame.max(w))
            {
                found.insert(('f', w, Some(u)));
            }
        }
    }
    found
}

#[test]
fn criterion_1_frame_conditions_cross_checked() {
    let started = Instant::now();
    let mut rng = seeded_rng(0xAC01);
    let mut failures = 0usize;

    let mut frames = Vec::with_capacity(1000);
    for i in 0..1000usize {
        let frame = random_frame(&mut rng, 1 + i % 6);
        if !frame.validate().is_empty() {
            failures += 1;
        }
        frames.push(frame);
    }

    let mut mutants_still_valid = 0usize;
    for frame in &frames {
        let n = frame.world_count();
        let mut min = frame.min_sets().to_vec();
        let mut max = frame.max_sets().to_vec();
        let world = rng.gen_range(0..n);
        let bit = rng.gen_range(0..n);
        if rng.gen_bool(0.5) {
            min[world] = min[world].toggled(bit);
        } else {
            max[world] = max[world].toggled(bit);
        }
        let mutated = NimFrame::new(min, max, true).expect("a bit toggle keeps the shape");
        let reported: BTreeSet<_> = mutated.validate().iter().map(violation_key).collect();
        let expected = brute_violations(&mutated);
        if reported != expected {
            failures += 1;
        }
        if reported.is_empty() {
            mutants_still_valid += 1;
        }
    }

    let elapsed = started.elapsed();
    if elapsed >= Duration::from_secs(10) {
        failures += 1;
    }
    conclude(
        1,
        "frame conditions",
        failures,
        format!(
            "1000 generated frames valid, 1000 single-bit mutants agree with the \
             element-wise validator ({mutants_still_valid} stayed valid) in {elapsed:.2?}"
        ),
    );
}

#[test]
fn criterion_2_world_topologies_are_topologies() {
    let mut rng = seeded_rng(0xAC02);
    let mut failures = 0usize;
    let mut spaces_checked = 0usize;
    for i in 0..500usize {
        let worlds = 1 + i % 6;
        let frame = random_frame(&mut rng, worlds);
        for w in 0..worlds {
            let plain = w_topology(&frame, w).expect("six worlds is within the subset bound");
            let pointed = w_min_topology(&frame, w).expect("six worlds is within the subset bound");
            failures += usize::from(!plain.validate().is_empty());
            failures += usize::from(!pointed.validate().is_empty());
            spaces_checked += 2;
        }
    }
    conclude(
        2,
        "world topologies",
        failures,
        format!("{spaces_checked} derived spaces from 500 frames all validate"),
    );
}

#[test]
fn criterion_3_derived_neighborhoods_form_frames() {
    let mut rng = seeded_rng(0xAC03);
    let mut failures = 0usize;
    for i in 0..500usize {
        let worlds = 1 + i % 6;
        let family = random_mt2(&mut rng, worlds, &["p", "q"]);
        let frame = family
            .derive_neighborhoods()
            .expect("generated families cover every world")
            .into_frame()
            .expect("derived arrays have the right shape");
        assert!(frame.t_condition());
        failures += usize::from(!frame.validate().is_empty());
    }
    conclude(
        3,
        "derived neighborhoods",
        failures,
        "500 space families all induce frames meeting every condition including (f)".to_owned(),
    );
}

fn two_variable_fleet() -> Vec<Formula> {
    enumerate_formulas(&["p".to_owned(), "q".to_owned()], 3).expect("fleet fits the limit")
}

fn equivalence_corpus() -> (Vec<NimModel>, Vec<(NimModel, imtl::mt2::Mt2Model)>) {
    let mut rng = seeded_rng(0xAC04);
    let nims: Vec<NimModel> = (0..200usize)
        .map(|i| random_model(&mut rng, 1 + i % 6, &["p", "q"]))
        .collect();
    let mut rng = seeded_rng(0xAC05);
    let families: Vec<_> = (0..200usize)
        .map(|i| {
            let family = random_mt2(&mut rng, 1 + i % 6, &["p", "q"]);
            let nim = mt2_to_nim(&family).expect("generated families cover every world");
            (nim, family)
        })
        .collect();
    (nims, families)
}

#[test]
fn criterion_4_pointwise_equivalence_of_all_translations() {
    let started = Instant::now();
    let fleet = two_variable_fleet();
    let (nims, families) = equivalence_corpus();
    let mut mismatches = 0usize;
    let mut pairs = 0usize;

    for model in &nims {
        let mt1 = nim_to_mt1(model).expect("six worlds is within the subset bound");
        let mt3 = nim_to_mt3(model).expect("six worlds is within the subset bound");
        for report in [
            check_pointwise_equivalence(model, &mt1, &fleet).expect("world counts match"),
            check_pointwise_equivalence(model, &mt3, &fleet).expect("world counts match"),
        ] {
            mismatches += report.mismatches.len();
            pairs += report.pairs_checked();
        }
    }
    for (nim, family) in &families {
        let report = check_pointwise_equivalence(nim, family, &fleet).expect("same world count");
        mismatches += report.mismatches.len();
        pairs += report.pairs_checked();
    }

    let elapsed = started.elapsed();
    let mut failures = mismatches;
    if elapsed >= Duration::from_secs(300) {
        failures += 1;
    }
    conclude(
        4,
        "pointwise equivalence",
        failures,
        format!(
            "{} formulas x 600 translated models, {pairs} world checks, \
             {mismatches} mismatches in {elapsed:.2?}",
            fleet.len()
        ),
    );
}

#[test]
fn criterion_5_soundness_sweep_and_classical_failures() {
    let cfg = SearchConfig {
        max_worlds: 3,
        variables: vec!["p".to_owned(), "q".to_owned()],
        time_limit: None,
        enumeration: Enumeration::Exhaustive,
        jobs: 1,
    };
    let schemas = imtl_schemas();
    assert_eq!(schemas.len(), 12);
    let report = soundness_sweep(&schemas, &cfg).expect("bounds are in range");
    let mut failures = report.total_violating_pairs();
    let mut notes = vec![format!(
        "12 schemas x {} models: {} violating pairs",
        report.models_checked,
        report.total_violating_pairs()
    )];

    for text in ["~~p -> p", "p | ~p"] {
        let formula: Formula = text.parse().expect("literal parses");
        match find_countermodel(&formula, &SearchConfig::new(2)).expect("bounds are in range") {
            SearchOutcome::Countermodel { model, world } => {
                let small = model.frame.world_count() <= 2;
                let valid = model.validate().is_empty();
                let refutes = !model.forces(world, &formula);
                if !(small && valid && refutes) {
                    failures += 1;
                }
                notes.push(format!(
                    "{text} refuted at world {world} of a {}-world model",
                    model.frame.world_count()
                ));
            }
            SearchOutcome::NoCountermodelUpTo { .. } => {
                failures += 1;
                notes.push(format!("{text} unexpectedly had no countermodel"));
            }
        }
    }
    conclude(5, "soundness sweep", failures, notes.join("; "));
}

#[test]
fn criterion_6_necessitation_holds_exhaustively() {
    let mut failures = 0usize;
    let mut notes = Vec::new();
    for text in ["p", "p -> q", "[]p"] {
        let formula: Formula = text.parse().expect("literal parses");
        let report = necessitation_check(&formula, &SearchConfig::new(3))
            .expect("bounds are in range");
        if !report.holds() || report.premise_models == 0 {
            failures += 1;
        }
        notes.push(format!(
            "{text}: premise in {} of {} models, {} violations",
            report.premise_models, report.models_checked, report.violations
        ));
    }
    conclude(6, "necessitation", failures, notes.join("; "));
}

#[test]
fn criterion_7_forcing_is_hereditary() {
    let fleet = two_variable_fleet();
    let (nims, families) = equivalence_corpus();
    let all: Vec<&NimModel> = nims.iter().chain(families.iter().map(|(n, _)| n)).collect();
    let mut failures = 0usize;
    let mut forced = 0usize;
    for model in all {
        for formula in &fleet {
            let truth = model.truth_set(formula);
            for w in 0..model.frame.world_count() {
                if model.forces(w, formula) {
                    forced += 1;
                    if !model.frame.min(w).is_subset_of(truth) {
                        failures += 1;
                    }
                }
            }
        }
    }
    conclude(
        7,
        "hereditary forcing",
        failures,
        format!(
            "{} formulas x 400 models: all {forced} forced worlds carry their \
             minimal neighborhood with them",
            fleet.len()
        ),
    );
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_str()
        .expect("fixture paths are utf-8")
        .to_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_imtl"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("no signal"),
        String::from_utf8(output.stdout).expect("stdout is utf-8"),
        String::from_utf8(output.stderr).expect("stderr is utf-8"),
    )
}

#[test]
fn criterion_8_cli_golden_files_and_exit_codes() {
    let mut failures = 0usize;
    let mut flag = |ok: bool, what: &str| {
        if !ok {
            failures += 1;
            println!("  golden miss: {what}");
        }
    };

    for name in ["m1.toml", "m1_mt1.toml", "family.toml", "family_mt3.toml"] {
        let text = std::fs::read_to_string(data(name)).expect("fixture exists");
        let model = parse_model(&text).expect("fixture parses");
        flag(model.validate_rendered().is_empty(), "fixture validates");
        let once = render_model(&model);
        let again = parse_model(&once).expect("rendered text parses");
        flag(model == again, "reload preserves the model");
        flag(once == render_model(&again), "canonical text is a fixpoint");

        let dir = tempfile::tempdir().expect("tempdir");
        let saved = dir.path().join(name);
        imtl::save_model(&saved, &model).expect("save succeeds");
        flag(
            load_model(&saved).expect("saved file loads") == model,
            "load after save matches",
        );
    }

    // check
    let (code, out, _) = run(&["check", "--model", &data("m1.toml"), "--formula", "[]p"]);
    flag(code == 1 && out.trim() == "{1}; not satisfied", "check []p");
    let (code, out, _) = run(&["check", "--model", &data("m1.toml"), "--formula", "[]p -> p"]);
    flag(code == 0 && out.trim() == "W; satisfied", "check []p -> p");
    let (code, _, err) = run(&["check", "--model", &data("malformed.toml"), "--formula", "p"]);
    flag(code == 2 && err.contains("error"), "check on malformed input");

    // transform
    let (code, out, err) = run(&["transform", "--model", &data("m1.toml"), "--target", "mt1"]);
    let golden = std::fs::read_to_string(data("m1_mt1.toml")).expect("fixture exists");
    flag(code == 0 && out == golden, "transform nim->mt1 matches golden");
    flag(err.contains("spaces: 2"), "transform reports two spaces");
    let (code, out, _) = run(&["transform", "--model", &data("family.toml"), "--target", "nim"]);
    let derived = parse_model(&out).expect("transform output parses");
    flag(code == 0 && derived.validate_rendered().is_empty(), "transform mt2->nim validates");
    let (code, _, err) = run(&["transform", "--model", &data("m1_mt1.toml"), "--target", "nim"]);
    flag(code == 2 && err.contains("unsupported direction"), "transform mt1->nim refused");

    // equiv
    let (code, _, _) = run(&[
        "equiv", "--model", &data("m1.toml"), "--model", &data("m1_mt1.toml"),
        "--depth", "3", "--vars", "p",
    ]);
    flag(code == 0, "equiv against own translation");
    let (code, out, _) = run(&[
        "equiv", "--model", &data("m1.toml"), "--model", &data("wrong_distinguished.toml"),
        "--depth", "3", "--vars", "p",
    ]);
    flag(code == 1 && out.contains("mismatch"), "equiv flags the edited distinguished set");
    let (code, _, _) = run(&[
        "equiv", "--model", &data("m1.toml"), "--model", &data("single.toml"),
    ]);
    flag(code == 2, "equiv world-count mismatch");

    // search
    let (code, out, _) = run(&["search", "--formula", "p | ~p", "--max-worlds", "2"]);
    flag(code == 1, "search finds the excluded-middle countermodel");
    let emitted = parse_model(&out).expect("countermodel output parses");
    flag(emitted.validate_rendered().is_empty(), "countermodel validates");
    let dir = tempfile::tempdir().expect("tempdir");
    let counter = dir.path().join("counter.toml");
    std::fs::write(&counter, &out).expect("write countermodel");
    let (code, out, _) = run(&[
        "check", "--model", counter.to_str().expect("utf-8"), "--formula", "p | ~p",
    ]);
    flag(code == 1 && out.contains("not satisfied"), "countermodel re-falsifies via check");
    let (code, out, _) = run(&["search", "--formula", "[]p -> p", "--max-worlds", "3"]);
    flag(code == 0 && out.trim() == "no countermodel up to 3 worlds (291 frames checked)",
        "search certifies reflexivity");
    let (code, out, _) = run(&[
        "search", "--formula", "[](p & q) -> []p & []q", "--max-worlds", "3",
    ]);
    flag(code == 0 && out.contains("no countermodel"), "search certifies box distribution");

    // validate + records output
    let (code, _, _) = run(&["validate", "--model", &data("family.toml")]);
    flag(code == 0, "validate accepts a valid family");
    let (code, out, _) = run(&["validate", "--model", &data("bad_valuation.toml")]);
    flag(code == 1 && out.contains("not monotone"), "validate rejects a non-monotone valuation");
    let (code, _, _) = run(&["validate", "--model", &data("malformed.toml")]);
    flag(code == 2, "validate on unparseable input");
    let (code, out, _) = run(&[
        "check", "--model", &data("m1.toml"), "--formula", "[]p", "--format", "records",
    ]);
    let record: serde_json::Value =
        serde_json::from_str(out.trim()).expect("records line is json");
    flag(code == 1 && record["satisfied"] == serde_json::json!(false), "records output");

    conclude(
        8,
        "cli golden files",
        failures,
        "round-trips for all four kinds and the documented exit codes".to_owned(),
    );
}
