//! Bounded countermodel search: canonical exhaustive enumeration, the
//! no-countermodel certificate, and seeded random sampling.
//!
//! ```text
//! cargo run --example countermodel_search
//! ```

use imtl::formula::Formula;
use imtl::modelfile::{render_model, Model};
use imtl::search::{
    enumerate_frames, find_countermodel, Enumeration, SearchConfig, SearchOutcome,
};

fn fml(text: &str) -> Formula {
    text.parse().unwrap()
}

fn main() {
    println!("valid frames by world count:");
    for worlds in 1..=3 {
        println!("  {worlds}: {}", enumerate_frames(worlds).len());
    }

    let mut cfg = SearchConfig::new(2);
    cfg.variables = vec!["p".to_owned()];

    // Claims that fail do so on a concrete, re-verified model; the first
    // hit in canonical order is the one reported, every run.
    println!("\nsearching two-world space:");
    for text in ["p -> []p", "p | ~p", "~~p -> p", "[](p & p) -> []p"] {
        match find_countermodel(&fml(text), &cfg).unwrap() {
            SearchOutcome::Countermodel { model, world } => {
                println!(
                    "  {text:18} refuted at world {world}: min {:?}, max {:?}, V(p) = {}",
                    model.frame.min_sets(),
                    model.frame.max_sets(),
                    model.valuation["p"]
                );
            }
            SearchOutcome::NoCountermodelUpTo { frames_checked, .. } => {
                println!("  {text:18} no countermodel ({frames_checked} frames)");
            }
        }
    }

    // The certificate names its bound: silence below n worlds proves
    // nothing about n+1.
    let outcome = find_countermodel(&fml("[]p -> p"), &SearchConfig {
        variables: vec!["p".to_owned()],
        ..SearchConfig::new(3)
    })
    .unwrap();
    println!("\nreflexivity axiom: {outcome:?}");

    // Random sampling scales past exhaustive bounds when refutation is
    // all that is needed.
    let sampled = find_countermodel(&fml("p | ~p"), &SearchConfig {
        variables: vec!["p".to_owned()],
        enumeration: Enumeration::Randomized {
            samples: 2000,
            seed: 11,
        },
        ..SearchConfig::new(5)
    })
    .unwrap();
    if let SearchOutcome::Countermodel { model, world } = sampled {
        println!(
            "\nsampled refutation of excluded middle at world {world} of a {}-world model:",
            model.frame.world_count()
        );
        print!("{}", render_model(&Model::Nim(model)));
    }
}
