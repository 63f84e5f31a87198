//! Propositional modal formulas: the shared syntax every semantics in this
//! crate evaluates.
//!
//! Connectives are conjunction, disjunction, implication, falsum, and the
//! modal box. Negation is not a constructor: `~φ` abbreviates `φ -> _|_`,
//! and both the parser and printer treat it that way.
//!
//! [`Formula`] implements [`std::fmt::Display`] with minimal parentheses
//! (`{:#}` switches to the typeset symbols `∧ ∨ → ¬ □ ⊥`) and
//! [`std::str::FromStr`] for the ASCII grammar, so `parse ∘ print` is the
//! identity.

mod parse;
mod print;

pub use parse::ParseError;

use std::collections::HashSet;

/// A modal propositional formula.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// Propositional variable; names match `[a-z][a-z0-9_]*`.
    Var(String),
    /// Falsum (`_|_`).
    Bottom,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// The modal box (`[]`).
    Box(Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_owned())
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    /// `~φ`, i.e. `φ -> _|_`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        self.implies(Formula::Bottom)
    }

    /// `[]φ`.
    pub fn boxed(self) -> Formula {
        Formula::Box(Box::new(self))
    }

    /// Tree height, counting atoms as depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Box(a) => 1 + a.depth(),
        }
    }

    /// Variable names occurring in the formula, sorted and deduplicated.
    pub fn variables(&self) -> Vec<String> {
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a str>) {
            match f {
                Formula::Var(name) => out.push(name),
                Formula::Bottom => {}
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Formula::Box(a) => walk(a, out),
            }
        }
        let mut names = Vec::new();
        walk(self, &mut names);
        names.sort_unstable();
        names.dedup();
        names.into_iter().map(str::to_owned).collect()
    }

    /// All distinct subformulas in evaluation order: children strictly before
    /// parents, left before right, each formula listed once. The formula
    /// itself is the final entry.
    pub fn subformulas(&self) -> Vec<&Formula> {
        fn walk<'a>(f: &'a Formula, seen: &mut HashSet<&'a Formula>, out: &mut Vec<&'a Formula>) {
            if seen.contains(f) {
                return;
            }
            match f {
                Formula::Var(_) | Formula::Bottom => {}
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    walk(a, seen, out);
                    walk(b, seen, out);
                }
                Formula::Box(a) => walk(a, seen, out),
            }
            seen.insert(f);
            out.push(f);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        walk(self, &mut seen, &mut out);
        out
    }

    /// Replaces every [`Formula::Var`] whose name has a binding, leaving
    /// other variables untouched.
    pub fn substitute(&self, bindings: &[(String, Formula)]) -> Formula {
        match self {
            Formula::Var(name) => bindings
                .iter()
                .find(|(var, _)| var == name)
                .map(|(_, f)| f.clone())
                .unwrap_or_else(|| self.clone()),
            Formula::Bottom => Formula::Bottom,
            Formula::And(a, b) => a.substitute(bindings).and(b.substitute(bindings)),
            Formula::Or(a, b) => a.substitute(bindings).or(b.substitute(bindings)),
            Formula::Implies(a, b) => a.substitute(bindings).implies(b.substitute(bindings)),
            Formula::Box(a) => a.substitute(bindings).boxed(),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Formula, ParseError> {
        parse::parse(s)
    }
}

/// Refusal to materialize an oversized formula fleet.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("formula fleet too large: depth {depth} over {variables} variables yields more than {limit} formulas")]
pub struct FleetTooLarge {
    pub depth: usize,
    pub variables: usize,
    pub limit: usize,
}

/// Largest fleet [`enumerate_formulas`] will materialize.
pub const FLEET_LIMIT: usize = 500_000;

/// Every formula of depth `<= depth` over the given variables (plus `_|_`),
/// in a fixed order with shallower formulas first. The result is closed
/// under subformulas, so a single bottom-up pass over it visits children
/// before parents.
///
/// Fleets grow doubly exponentially in depth; anything projected past
/// [`FLEET_LIMIT`] formulas is refused rather than attempted.
pub fn enumerate_formulas(variables: &[String], depth: usize) -> Result<Vec<Formula>, FleetTooLarge> {
    let atom_count = variables.len() + 1;
    let mut projected: usize = 0;
    let mut prev: usize = 0;
    for d in 1..=depth {
        if d == 1 {
            projected = atom_count;
        } else {
            let sq = projected.saturating_mul(projected);
            let prev_sq = prev.saturating_mul(prev);
            let new = 3usize
                .saturating_mul(sq.saturating_sub(prev_sq))
                .saturating_add(projected - prev);
            prev = projected;
            projected = projected.saturating_add(new);
        }
        if projected > FLEET_LIMIT {
            return Err(FleetTooLarge {
                depth,
                variables: variables.len(),
                limit: FLEET_LIMIT,
            });
        }
    }

    let mut all: Vec<Formula> = variables.iter().map(|v| Formula::var(v)).collect();
    all.push(Formula::Bottom);
    if depth <= 1 {
        return Ok(all);
    }

    let mut depths: Vec<usize> = vec![1; all.len()];
    for d in 2..=depth {
        let base = all.len();
        let mut additions = Vec::new();
        let ctors: [fn(Formula, Formula) -> Formula; 3] =
            [Formula::and, Formula::or, Formula::implies];
        for ctor in ctors {
            for i in 0..base {
                for j in 0..base {
                    if depths[i].max(depths[j]) == d - 1 {
                        additions.push(ctor(all[i].clone(), all[j].clone()));
                    }
                }
            }
        }
        for i in 0..base {
            if depths[i] == d - 1 {
                additions.push(all[i].clone().boxed());
            }
        }
        depths.extend(std::iter::repeat_n(d, additions.len()));
        all.extend(additions);
    }
    Ok(all)
}
