//! Tour of the formula language: parsing, the two printers, and fleet
//! enumeration.
//!
//! ```text
//! cargo run --example parse_and_print
//! ```

use imtl::formula::{enumerate_formulas, Formula};

fn main() {
    let inputs = [
        "p & q -> r",
        "~(p | q)",
        "[]p -> p",
        "[](p -> q) -> ([]p -> []q)",
        "p -> _|_",
        "~~p -> p",
    ];
    println!("parse, then print both ways:");
    for text in inputs {
        let formula: Formula = text.parse().expect("these all parse");
        println!("  {text:28} => {formula}  /  {formula:#}");
        let reparsed: Formula = formula.to_string().parse().unwrap();
        assert_eq!(reparsed, formula, "printing is re-parseable");
    }

    let nonsense = "p -> (q";
    let err = nonsense.parse::<Formula>().unwrap_err();
    println!("\nrejected input {nonsense:?}: {err}");

    println!("\nformula counts by nesting depth (atoms have depth 1):");
    for vars in [vec!["p".to_owned()], vec!["p".to_owned(), "q".to_owned()]] {
        for depth in 1..=3 {
            let fleet = enumerate_formulas(&vars, depth).expect("within the size guard");
            println!("  {} variable(s), depth {depth}: {}", vars.len(), fleet.len());
        }
    }

    let deep = enumerate_formulas(&["p".to_owned(), "q".to_owned()], 4).unwrap_err();
    println!("\ndepth 4 over two variables is refused: {deep}");
}
