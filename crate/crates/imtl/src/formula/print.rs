//! Minimal-parenthesis printing. `Display` emits the ASCII grammar the
//! parser reads back, so printing and reparsing is the identity; the
//! alternate form (`{:#}`) emits the typeset symbols instead.

use super::Formula;
use std::fmt;

struct Symbols {
    and: &'static str,
    or: &'static str,
    arrow: &'static str,
    not: &'static str,
    boxed: &'static str,
    bottom: &'static str,
}

const ASCII: Symbols = Symbols {
    and: " & ",
    or: " | ",
    arrow: " -> ",
    not: "~",
    boxed: "[]",
    bottom: "_|_",
};

const TYPESET: Symbols = Symbols {
    and: " ∧ ",
    or: " ∨ ",
    arrow: " → ",
    not: "¬",
    boxed: "□",
    bottom: "⊥",
};

const LEVEL_IMPLIES: u8 = 0;
const LEVEL_OR: u8 = 1;
const LEVEL_AND: u8 = 2;
const LEVEL_UNARY: u8 = 3;

fn level(formula: &Formula) -> u8 {
    match formula {
        Formula::Var(_) | Formula::Bottom => 4,
        Formula::Box(_) => LEVEL_UNARY,
        // `~` is printable unary syntax, so it parenthesizes like one.
        Formula::Implies(_, b) if **b == Formula::Bottom => LEVEL_UNARY,
        Formula::Implies(..) => LEVEL_IMPLIES,
        Formula::Or(..) => LEVEL_OR,
        Formula::And(..) => LEVEL_AND,
    }
}

fn write_at(
    formula: &Formula,
    context: u8,
    sym: &Symbols,
    out: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let own = level(formula);
    if own < context {
        write!(out, "(")?;
        write_at(formula, 0, sym, out)?;
        return write!(out, ")");
    }
    match formula {
        Formula::Var(name) => write!(out, "{name}"),
        Formula::Bottom => write!(out, "{}", sym.bottom),
        Formula::Box(a) => {
            write!(out, "{}", sym.boxed)?;
            write_at(a, LEVEL_UNARY, sym, out)
        }
        Formula::Implies(a, b) if **b == Formula::Bottom => {
            write!(out, "{}", sym.not)?;
            write_at(a, LEVEL_UNARY, sym, out)
        }
        Formula::Implies(a, b) => {
            write_at(a, LEVEL_OR, sym, out)?;
            write!(out, "{}", sym.arrow)?;
            write_at(b, LEVEL_IMPLIES, sym, out)
        }
        Formula::Or(a, b) => {
            write_at(a, LEVEL_OR, sym, out)?;
            write!(out, "{}", sym.or)?;
            write_at(b, LEVEL_AND, sym, out)
        }
        Formula::And(a, b) => {
            write_at(a, LEVEL_AND, sym, out)?;
            write!(out, "{}", sym.and)?;
            write_at(b, LEVEL_UNARY, sym, out)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = if f.alternate() { &TYPESET } else { &ASCII };
        write_at(self, 0, sym, f)
    }
}
