//! Neighborhood models: frame validation as data, the forcing relation,
//! and hereditary truth.
//!
//! ```text
//! cargo run --example nim_forcing
//! ```

use imtl::formula::Formula;
use imtl::nimodel::{truth_set_in, NimFrame, NimModel};
use imtl::worldset::WorldSet;

fn ws(worlds: &[usize]) -> WorldSet {
    worlds.iter().copied().collect()
}

fn main() {
    // Two worlds; world 1 is modally reachable from 0, and p holds at 1.
    let frame = NimFrame::new(
        vec![ws(&[0]), ws(&[1])],
        vec![ws(&[0, 1]), ws(&[1])],
        true,
    )
    .unwrap();
    println!("frame violations: {:?}", frame.validate());

    let model = NimModel {
        frame,
        valuation: [("p".to_owned(), ws(&[1]))].into(),
    };
    for text in ["p", "[]p", "[]p -> p", "~p", "p | ~p"] {
        let formula: Formula = text.parse().unwrap();
        let truth = truth_set_in(&model.frame, &model.valuation, &formula);
        let forced: Vec<bool> = (0..2).map(|w| model.forces(w, &formula)).collect();
        println!("  {text:12} truth set {truth}, per world {forced:?}");
    }

    // Truth is hereditary: whatever holds at w holds on all of min[w].
    let model2 = NimModel {
        frame: NimFrame::new(
            vec![ws(&[0, 1]), ws(&[1])],
            vec![ws(&[0, 1]), ws(&[0, 1])],
            true,
        )
        .unwrap(),
        valuation: [("p".to_owned(), ws(&[1]))].into(),
    };
    let em: Formula = "p | ~p".parse().unwrap();
    println!(
        "\nexcluded middle at world 0 of the two-world chain: {}",
        model2.forces(0, &em)
    );
    for text in ["p", "~p", "~~p", "p | ~p"] {
        let formula: Formula = text.parse().unwrap();
        let truth = truth_set_in(&model2.frame, &model2.valuation, &formula);
        for w in truth.iter() {
            assert!(
                model2.frame.min(w).is_subset_of(truth),
                "hereditary forcing"
            );
        }
        println!("  {text:8} truth set {truth} is an up-set of min");
    }

    // Broken invariants come back as values, not panics.
    let broken = NimFrame::new(vec![ws(&[1]), ws(&[1])], vec![ws(&[0, 1]), ws(&[1])], true).unwrap();
    println!("\na frame missing reflexivity reports:");
    for violation in broken.validate() {
        println!("  [{}] {violation}", violation.letter());
    }
    let non_monotone = NimModel {
        frame: NimFrame::new(
            vec![ws(&[0, 1]), ws(&[1])],
            vec![ws(&[0, 1]), ws(&[1])],
            true,
        )
        .unwrap(),
        valuation: [("p".to_owned(), ws(&[0]))].into(),
    };
    println!("a non-monotone valuation reports:");
    for violation in non_monotone.validate() {
        println!("  {violation}");
    }
}
