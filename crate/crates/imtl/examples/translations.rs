//! Carrying models between shapes and checking that truth survives the
//! trip pointwise.
//!
//! ```text
//! cargo run --example translations
//! ```

use imtl::formula::enumerate_formulas;
use imtl::mt2::Mt2Model;
use imtl::nimodel::{NimFrame, NimModel};
use imtl::topology::FiniteTopology;
use imtl::transform::{check_pointwise_equivalence, mt2_to_nim, nim_to_mt1, nim_to_mt3};
use imtl::worldset::WorldSet;

fn ws(worlds: &[usize]) -> WorldSet {
    worlds.iter().copied().collect()
}

fn main() {
    let nim = NimModel {
        frame: NimFrame::new(
            vec![ws(&[0]), ws(&[1])],
            vec![ws(&[0, 1]), ws(&[1])],
            true,
        )
        .unwrap(),
        valuation: [("p".to_owned(), ws(&[1]))].into(),
    };

    // Neighborhood -> distinguished-open: one space per world (merged
    // when worlds induce the same space).
    let mt1 = nim_to_mt1(&nim).unwrap();
    println!("to distinguished-open: {} spaces", mt1.spaces.len());
    for (i, space) in mt1.spaces.iter().enumerate() {
        println!(
            "  space {i}: universe {}, distinguished {}",
            space.topology.universe(),
            space.distinguished
        );
    }

    // Neighborhood -> minimal-neighborhood inventory.
    let mt3 = nim_to_mt3(&nim).unwrap();
    println!("to inventory family: {} spaces", mt3.spaces.len());

    // Both translations preserve truth at every world for every formula.
    let formulas = enumerate_formulas(&["p".to_owned()], 3).unwrap();
    let report = check_pointwise_equivalence(&nim, &mt1, &formulas).unwrap();
    println!(
        "\nagainst mt1: {} formulas x {} worlds, {} mismatches",
        report.formula_count,
        report.world_count,
        report.mismatches.len()
    );
    let report = check_pointwise_equivalence(&nim, &mt3, &formulas).unwrap();
    println!(
        "against mt3: {} formulas x {} worlds, {} mismatches",
        report.formula_count,
        report.world_count,
        report.mismatches.len()
    );

    // Space family -> neighborhood, and back around.
    let mt2 = Mt2Model {
        worlds: 2,
        spaces: vec![FiniteTopology::new(
            ws(&[0, 1]),
            [WorldSet::EMPTY, ws(&[1]), ws(&[0, 1])],
        )],
        valuation: [("p".to_owned(), ws(&[1]))].into(),
    };
    let repackaged = mt2_to_nim(&mt2).unwrap();
    println!(
        "\nfamily repackaged as a frame: min {:?}, max {:?}",
        repackaged.frame.min_sets(),
        repackaged.frame.max_sets()
    );
    let report = check_pointwise_equivalence(&repackaged, &mt2, &formulas).unwrap();
    println!(
        "family vs its own repackaging: {} mismatches",
        report.mismatches.len()
    );
    let round = nim_to_mt1(&repackaged).unwrap();
    let report = check_pointwise_equivalence(&repackaged, &round, &formulas).unwrap();
    println!("and onward to mt1 again: {} mismatches", report.mismatches.len());

    // A tampered valuation is caught, mismatch by mismatch.
    let mut tampered = nim_to_mt1(&nim).unwrap();
    tampered
        .valuation
        .insert("p".to_owned(), ws(&[0, 1]));
    let report =
        check_pointwise_equivalence(&nim, &tampered, &enumerate_formulas(&["p".to_owned()], 1).unwrap())
            .unwrap();
    println!("\ntampering with the translated valuation is caught:");
    for mismatch in &report.mismatches {
        println!(
            "  {} at world {}: {} vs {}",
            mismatch.formula, mismatch.world, mismatch.nim_verdict, mismatch.mt_verdict
        );
    }
}
