//! The three topological readings side by side: distinguished-open
//! models, derived-neighborhood models, and minimal-neighborhood
//! inventory models — including a shared model on which the last two
//! disagree.
//!
//! ```text
//! cargo run --example mt_semantics
//! ```

use imtl::formula::Formula;
use imtl::mt1::{Mt1Model, Space};
use imtl::mt2::Mt2Model;
use imtl::mt3::Mt3Model;
use imtl::topology::FiniteTopology;
use imtl::transform::compare_mt2_mt3;
use imtl::worldset::WorldSet;

fn ws(worlds: &[usize]) -> WorldSet {
    worlds.iter().copied().collect()
}

fn fml(text: &str) -> Formula {
    text.parse().unwrap()
}

fn main() {
    // Distinguished-open semantics: the box collects distinguished sets
    // of spaces whose whole universe satisfies the body.
    let mt1 = Mt1Model {
        worlds: 2,
        spaces: vec![
            Space {
                topology: FiniteTopology::new(
                    ws(&[0, 1]),
                    [WorldSet::EMPTY, ws(&[0]), ws(&[1]), ws(&[0, 1])],
                ),
                distinguished: ws(&[0]),
            },
            Space {
                topology: FiniteTopology::new(ws(&[1]), [WorldSet::EMPTY, ws(&[1])]),
                distinguished: ws(&[1]),
            },
        ],
        valuation: [("p".to_owned(), ws(&[1]))].into(),
    };
    println!("distinguished-open model (violations {:?}):", mt1.validate());
    for text in ["p", "[]p", "[]p -> p", "~p"] {
        println!("  {text:10} evaluates to {}", mt1.eval(&fml(text)));
    }

    // Derived-neighborhood semantics over a plain space family.
    let family = vec![
        FiniteTopology::new(ws(&[0, 1]), [WorldSet::EMPTY, ws(&[0, 1])]),
        FiniteTopology::new(ws(&[0, 2]), [WorldSet::EMPTY, ws(&[0, 2])]),
    ];
    let mt2 = Mt2Model {
        worlds: 3,
        spaces: family.clone(),
        valuation: [("q".to_owned(), ws(&[0, 1])), ("r".to_owned(), ws(&[0, 2]))].into(),
    };
    let derived = mt2.derive_neighborhoods().unwrap();
    println!("\nderived neighborhoods of the two-space family on three worlds:");
    for w in 0..3 {
        println!("  world {w}: min {}, max {}", derived.min[w], derived.max[w]);
    }

    // Minimal-neighborhood semantics reads the same family through an
    // inventory of (space, world) minimal opens.
    let mt3 = Mt3Model {
        worlds: 3,
        spaces: family,
        valuation: mt2.valuation.clone(),
    };
    println!("inventory entries (space, world, minimal open):");
    for entry in mt3.min_neighborhood_inventory() {
        println!("  ({}, {}, {})", entry.space, entry.world, entry.set);
    }

    // The two readings agree on much and are not the same calculus: the
    // comparison reports truth-set pairs and leaves judgement to you.
    println!("\nshared-model comparison:");
    let formulas: Vec<Formula> = ["q", "r", "q & r", "(q -> q) -> q & r", "[]q"]
        .iter()
        .map(|t| fml(t))
        .collect();
    for pair in compare_mt2_mt3(&mt2, &mt3, &formulas).unwrap() {
        let mark = if pair.agrees() { "agree " } else { "differ" };
        println!(
            "  {mark} {:20} derived {} vs inventory {}",
            pair.formula.to_string(),
            pair.mt2_truth,
            pair.mt3_truth
        );
    }
}
