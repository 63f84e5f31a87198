//! Axiom-soundness sweep: every schema instance against every bounded
//! model, with exact violation counts, plus the necessitation rule.
//!
//! ```text
//! cargo run --example soundness_sweep
//! ```

use imtl::formula::Formula;
use imtl::search::{
    axiom_k, axiom_t, imtl_schemas, necessitation_check, soundness_sweep, Schema, SearchConfig,
};

fn main() {
    let cfg = SearchConfig {
        variables: vec!["p".to_owned(), "q".to_owned()],
        ..SearchConfig::new(2)
    };

    println!("schema battery over all two-world models:");
    let report = soundness_sweep(&imtl_schemas(), &cfg).unwrap();
    for outcome in &report.outcomes {
        println!(
            "  {:16} {:>6} instances/model, {} violating pairs",
            outcome.schema.name, outcome.instances_per_model, outcome.violating_pairs
        );
    }
    println!(
        "  -> {} across {} models on {} frames",
        if report.sound() { "sound" } else { "unsound" },
        report.models_checked,
        report.frames_checked
    );

    // Schemas valid classically but not here are caught with concrete,
    // self-verified counterexamples.
    let classical = vec![
        Schema::new("double-negation-elim", "~~a -> a".parse().unwrap()),
        Schema::new("excluded-middle", "a | ~a".parse().unwrap()),
        Schema::new("peirce", "((a -> b) -> a) -> a".parse().unwrap()),
    ];
    let report = soundness_sweep(&classical, &cfg).unwrap();
    println!("\nclassical schemas on the same space:");
    for outcome in &report.outcomes {
        println!(
            "  {:20} {} violating pairs",
            outcome.schema.name, outcome.violating_pairs
        );
        if let Some(sample) = outcome.samples.first() {
            println!(
                "    e.g. {} fails at world {} (min {:?}, V: {:?})",
                sample.instance,
                sample.world,
                sample.model.frame.min_sets(),
                sample.model.valuation
            );
            assert!(!sample.model.forces(sample.world, &sample.instance));
        }
    }

    // Schema instances are plain formulas; the template is one too.
    println!("\naxiom templates: {} and {}", axiom_k().template, axiom_t().template);
    let instances: Vec<String> = axiom_t()
        .instances(&["p".to_owned()], 1)
        .unwrap()
        .iter()
        .map(Formula::to_string)
        .collect();
    println!("depth-1 instances of the reflexivity schema: {instances:?}");

    // The rule of necessitation: if a formula holds everywhere in a
    // model, its boxing must too.
    println!();
    for text in ["p", "p -> p", "[]p"] {
        let formula: Formula = text.parse().unwrap();
        let report = necessitation_check(&formula, &cfg).unwrap();
        println!(
            "necessitation on {text:8} premise holds in {} of {} models, {} violations",
            report.premise_models, report.models_checked, report.violations
        );
    }
}
