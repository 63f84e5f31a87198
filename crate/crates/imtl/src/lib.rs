//! A finite-model workbench for an intuitionistic modal logic.
//!
//! The logic is intuitionistic propositional calculus extended with a
//! reflexive box: axioms K (`□(φ→ψ) → (□φ→□ψ)`) and T (`□φ → φ`),
//! necessitation, and modus ponens. The workbench builds and validates
//! the logic's models, evaluates formulas in them, converts between the
//! model shapes, verifies that the conversions preserve truth pointwise,
//! and searches bounded model spaces for countermodels.
//!
//! Four model shapes share one formula language:
//!
//! - [`nimodel`] — neighborhood models: each world carries a minimal
//!   neighborhood (governing implication and atom monotonicity) and a
//!   maximal one (governing the box).
//! - [`mt1`] — families of topological spaces with a distinguished open
//!   per space; implication runs through interiors, the box through
//!   distinguished sets.
//! - [`mt2`] — plain space families read through derived per-world
//!   neighborhoods (intersections and unions over member spaces).
//! - [`mt3`] — the same space families read through an inventory of
//!   minimal open neighborhoods with provenance.
//!
//! [`topology`] supplies the finite-topology groundwork; [`transform`]
//! carries models between the shapes and checks pointwise equivalence;
//! [`search`] enumerates frames canonically for countermodel search and
//! axiom-soundness sweeps; [`gen`] produces random valid models for
//! property suites; [`modelfile`] reads and writes all four shapes as
//! TOML files, and the `imtl` binary wraps the lot in a command line.
//!
//! Each capability has a runnable tour:
//!
//! ```text
//! cargo run --example parse_and_print
//! cargo run --example nim_forcing
//! cargo run --example world_topologies
//! cargo run --example mt_semantics
//! cargo run --example translations
//! cargo run --example countermodel_search
//! cargo run --example soundness_sweep
//! ```
//!
//! Validation is data, not panic: constructors check shape only, every
//! model kind has a `validate` returning all broken invariants, and
//! evaluation is documented as meaningful only on validated models.

pub mod formula;
pub mod gen;
pub mod modelfile;
pub mod mt1;
pub mod mt2;
pub mod mt3;
pub mod nimodel;
pub mod search;
pub mod topology;
pub mod transform;
pub mod worldset;

pub use formula::Formula;
pub use modelfile::{load_model, parse_model, render_model, save_model, Model, ModelKind};
pub use nimodel::{NimFrame, NimModel, Valuation};
pub use worldset::WorldSet;
