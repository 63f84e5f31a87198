//! Reading and writing models as structured text files.
//!
//! One TOML-based format serves all four model kinds. Every file starts
//! with a `kind` (`nim`, `mt1`, `mt2`, `mt3`) and a format `version`;
//! the rest is kind-specific shape data plus a `valuation` table, with
//! every world set written as an array of indices. Rendering is
//! canonical — sets sorted ascending, opens sorted small-to-large,
//! valuation keys sorted — so loading a rendered model and rendering it
//! again reproduces the text byte for byte.
//!
//! Parsing checks structure only: fields present, indices storable,
//! arrays the right length. Whether the result is mathematically valid
//! is the business of each kind's `validate`, reachable uniformly
//! through [`Model::validate_rendered`].

use crate::formula::Formula;
use crate::mt1::{Mt1Model, Space};
use crate::mt2::Mt2Model;
use crate::mt3::Mt3Model;
use crate::nimodel::{truth_set_in, FrameShapeError, NimFrame, NimModel, Valuation};
use crate::topology::FiniteTopology;
use crate::worldset::{WorldSet, MAX_WORLDS};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// The format version this build reads and writes.
pub const FORMAT_VERSION: i64 = 1;

/// Which of the four model shapes a file carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Nim,
    Mt1,
    Mt2,
    Mt3,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Nim => "nim",
            ModelKind::Mt1 => "mt1",
            ModelKind::Mt2 => "mt2",
            ModelKind::Mt3 => "mt3",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown model kind '{0}'; expected nim, mt1, mt2, or mt3")]
pub struct UnknownKind(pub String);

impl FromStr for ModelKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<ModelKind, UnknownKind> {
        match s {
            "nim" => Ok(ModelKind::Nim),
            "mt1" => Ok(ModelKind::Mt1),
            "mt2" => Ok(ModelKind::Mt2),
            "mt3" => Ok(ModelKind::Mt3),
            other => Err(UnknownKind(other.to_owned())),
        }
    }
}

/// Any of the four model shapes, as loaded from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Nim(NimModel),
    Mt1(Mt1Model),
    Mt2(Mt2Model),
    Mt3(Mt3Model),
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Nim(_) => ModelKind::Nim,
            Model::Mt1(_) => ModelKind::Mt1,
            Model::Mt2(_) => ModelKind::Mt2,
            Model::Mt3(_) => ModelKind::Mt3,
        }
    }

    pub fn world_count(&self) -> usize {
        match self {
            Model::Nim(m) => m.frame.world_count(),
            Model::Mt1(m) => m.worlds,
            Model::Mt2(m) => m.worlds,
            Model::Mt3(m) => m.worlds,
        }
    }

    /// The formula's truth set under the kind's own semantics. Only
    /// meaningful on models whose `validate` is empty.
    pub fn truth_set(&self, formula: &Formula) -> WorldSet {
        match self {
            Model::Nim(m) => truth_set_in(&m.frame, &m.valuation, formula),
            Model::Mt1(m) => m.eval(formula),
            Model::Mt2(m) => m.eval(formula),
            Model::Mt3(m) => m.eval(formula),
        }
    }

    /// The kind's own violations, rendered one per line. Empty exactly
    /// when the model is valid.
    pub fn validate_rendered(&self) -> Vec<String> {
        match self {
            Model::Nim(m) => m.validate().iter().map(|v| v.to_string()).collect(),
            Model::Mt1(m) => m.validate().iter().map(|v| v.to_string()).collect(),
            Model::Mt2(m) => m.validate().iter().map(|v| v.to_string()).collect(),
            Model::Mt3(m) => m.validate().iter().map(|v| v.to_string()).collect(),
        }
    }
}

/// Structurally unreadable model text.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("not valid model text")]
    Syntax(#[from] toml::de::Error),
    #[error("missing '{0}' field")]
    MissingHeader(&'static str),
    #[error(transparent)]
    UnknownKind(#[from] UnknownKind),
    #[error("unsupported format version {got}; this build reads version {FORMAT_VERSION}")]
    UnsupportedVersion { got: i64 },
    #[error("a model needs at least one world")]
    ZeroWorlds,
    #[error("{0} worlds exceeds the supported maximum of {MAX_WORLDS}")]
    TooManyWorlds(usize),
    #[error("world index {0} is not storable (indices run up to {MAX_WORLDS})")]
    IndexTooLarge(usize),
    #[error("'{field}' lists {got} worlds, but the file declares {expected}")]
    WrongArrayLength {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("space {space}: 'distinguished' is required in mt1 files")]
    MissingDistinguished { space: usize },
    #[error("space {space}: 'distinguished' only belongs in mt1 files")]
    UnexpectedDistinguished { space: usize },
    #[error(transparent)]
    Shape(#[from] FrameShapeError),
}

/// A model file that could not be read or understood.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}")]
    Parse { path: String, source: ParseError },
}

fn default_true() -> bool {
    true
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NimWire {
    kind: String,
    version: i64,
    worlds: usize,
    #[serde(default = "default_true")]
    t_condition: bool,
    min: Vec<Vec<usize>>,
    max: Vec<Vec<usize>>,
    #[serde(default)]
    valuation: BTreeMap<String, Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceWire {
    universe: Vec<usize>,
    opens: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    distinguished: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MtWire {
    kind: String,
    version: i64,
    worlds: usize,
    #[serde(default)]
    spaces: Vec<SpaceWire>,
    #[serde(default)]
    valuation: BTreeMap<String, Vec<usize>>,
}

fn set_from_indices(indices: &[usize]) -> Result<WorldSet, ParseError> {
    let mut set = WorldSet::EMPTY;
    for &index in indices {
        if index >= MAX_WORLDS {
            return Err(ParseError::IndexTooLarge(index));
        }
        set = set.union(WorldSet::singleton(index));
    }
    Ok(set)
}

fn indices_from_set(set: WorldSet) -> Vec<usize> {
    set.iter().collect()
}

fn valuation_from_wire(wire: &BTreeMap<String, Vec<usize>>) -> Result<Valuation, ParseError> {
    wire.iter()
        .map(|(variable, indices)| Ok((variable.clone(), set_from_indices(indices)?)))
        .collect()
}

fn valuation_to_wire(valuation: &Valuation) -> BTreeMap<String, Vec<usize>> {
    valuation
        .iter()
        .map(|(variable, truth)| (variable.clone(), indices_from_set(*truth)))
        .collect()
}

fn sets_from_wire(
    field: &'static str,
    expected: usize,
    rows: &[Vec<usize>],
) -> Result<Vec<WorldSet>, ParseError> {
    if rows.len() != expected {
        return Err(ParseError::WrongArrayLength {
            field,
            expected,
            got: rows.len(),
        });
    }
    rows.iter().map(|row| set_from_indices(row)).collect()
}

fn check_worlds(worlds: usize) -> Result<(), ParseError> {
    if worlds == 0 {
        return Err(ParseError::ZeroWorlds);
    }
    if worlds > MAX_WORLDS {
        return Err(ParseError::TooManyWorlds(worlds));
    }
    Ok(())
}

fn topology_from_wire(wire: &SpaceWire) -> Result<FiniteTopology, ParseError> {
    let universe = set_from_indices(&wire.universe)?;
    let opens = wire
        .opens
        .iter()
        .map(|o| set_from_indices(o))
        .collect::<Result<Vec<WorldSet>, ParseError>>()?;
    Ok(FiniteTopology::new(universe, opens))
}

fn topology_to_wire(topology: &FiniteTopology, distinguished: Option<WorldSet>) -> SpaceWire {
    SpaceWire {
        universe: indices_from_set(topology.universe()),
        opens: topology.opens().iter().copied().map(indices_from_set).collect(),
        distinguished: distinguished.map(indices_from_set),
    }
}

/// Reads a model from text. Structure only: the result may still fail
/// its kind's `validate`.
pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    #[derive(Deserialize)]
    struct Header {
        kind: Option<String>,
        version: Option<i64>,
    }

    let value: toml::Value = text.parse()?;
    let header: Header = value.clone().try_into()?;
    let kind: ModelKind = header
        .kind
        .ok_or(ParseError::MissingHeader("kind"))?
        .parse()?;
    let version = header.version.ok_or(ParseError::MissingHeader("version"))?;
    if version != FORMAT_VERSION {
        return Err(ParseError::UnsupportedVersion { got: version });
    }

    match kind {
        ModelKind::Nim => {
            let wire: NimWire = value.try_into()?;
            check_worlds(wire.worlds)?;
            let min = sets_from_wire("min", wire.worlds, &wire.min)?;
            let max = sets_from_wire("max", wire.worlds, &wire.max)?;
            let frame = NimFrame::new(min, max, wire.t_condition)?;
            let valuation = valuation_from_wire(&wire.valuation)?;
            Ok(Model::Nim(NimModel { frame, valuation }))
        }
        ModelKind::Mt1 => {
            let wire: MtWire = value.try_into()?;
            check_worlds(wire.worlds)?;
            let mut spaces = Vec::with_capacity(wire.spaces.len());
            for (index, space) in wire.spaces.iter().enumerate() {
                let distinguished = space
                    .distinguished
                    .as_deref()
                    .ok_or(ParseError::MissingDistinguished { space: index })?;
                spaces.push(Space {
                    topology: topology_from_wire(space)?,
                    distinguished: set_from_indices(distinguished)?,
                });
            }
            Ok(Model::Mt1(Mt1Model {
                worlds: wire.worlds,
                spaces,
                valuation: valuation_from_wire(&wire.valuation)?,
            }))
        }
        ModelKind::Mt2 | ModelKind::Mt3 => {
            let wire: MtWire = value.try_into()?;
            check_worlds(wire.worlds)?;
            let mut spaces = Vec::with_capacity(wire.spaces.len());
            for (index, space) in wire.spaces.iter().enumerate() {
                if space.distinguished.is_some() {
                    return Err(ParseError::UnexpectedDistinguished { space: index });
                }
                spaces.push(topology_from_wire(space)?);
            }
            let valuation = valuation_from_wire(&wire.valuation)?;
            Ok(match kind {
                ModelKind::Mt2 => Model::Mt2(Mt2Model {
                    worlds: wire.worlds,
                    spaces,
                    valuation,
                }),
                _ => Model::Mt3(Mt3Model {
                    worlds: wire.worlds,
                    spaces,
                    valuation,
                }),
            })
        }
    }
}

/// Writes the model as canonical text: reloading it yields an equal
/// model, and re-rendering that yields identical text.
pub fn render_model(model: &Model) -> String {
    let rendered = match model {
        Model::Nim(m) => toml::to_string(&NimWire {
            kind: ModelKind::Nim.as_str().to_owned(),
            version: FORMAT_VERSION,
            worlds: m.frame.world_count(),
            t_condition: m.frame.t_condition(),
            min: m.frame.min_sets().iter().copied().map(indices_from_set).collect(),
            max: m.frame.max_sets().iter().copied().map(indices_from_set).collect(),
            valuation: valuation_to_wire(&m.valuation),
        }),
        Model::Mt1(m) => toml::to_string(&MtWire {
            kind: ModelKind::Mt1.as_str().to_owned(),
            version: FORMAT_VERSION,
            worlds: m.worlds,
            spaces: m
                .spaces
                .iter()
                .map(|s| topology_to_wire(&s.topology, Some(s.distinguished)))
                .collect(),
            valuation: valuation_to_wire(&m.valuation),
        }),
        Model::Mt2(m) => toml::to_string(&MtWire {
            kind: ModelKind::Mt2.as_str().to_owned(),
            version: FORMAT_VERSION,
            worlds: m.worlds,
            spaces: m.spaces.iter().map(|t| topology_to_wire(t, None)).collect(),
            valuation: valuation_to_wire(&m.valuation),
        }),
        Model::Mt3(m) => toml::to_string(&MtWire {
            kind: ModelKind::Mt3.as_str().to_owned(),
            version: FORMAT_VERSION,
            worlds: m.worlds,
            spaces: m.spaces.iter().map(|t| topology_to_wire(t, None)).collect(),
            valuation: valuation_to_wire(&m.valuation),
        }),
    };
    rendered.expect("wire structs always serialize")
}

/// Reads and parses a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<Model, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_model(&text).map_err(|source| LoadError::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// Renders the model canonically and writes it to `path`.
pub fn save_model(path: impl AsRef<Path>, model: &Model) -> Result<(), std::io::Error> {
    std::fs::write(path, render_model(model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{nim_to_mt1, nim_to_mt3};

    fn ws(worlds: &[usize]) -> WorldSet {
        worlds.iter().copied().collect()
    }

    fn m1() -> NimModel {
        NimModel {
            frame: NimFrame::new(
                vec![ws(&[0]), ws(&[1])],
                vec![ws(&[0, 1]), ws(&[1])],
                true,
            )
            .unwrap(),
            valuation: [("p".to_owned(), ws(&[1]))].into(),
        }
    }

    #[test]
    fn nim_renders_to_the_frozen_text() {
        let text = render_model(&Model::Nim(m1()));
        let expected = "\
kind = \"nim\"
version = 1
worlds = 2
t_condition = true
min = [[0], [1]]
max = [[0, 1], [1]]

[valuation]
p = [1]
";
        assert_eq!(text, expected);
    }

    #[test]
    fn every_kind_round_trips() {
        let nim = Model::Nim(m1());
        let mt1 = Model::Mt1(nim_to_mt1(&m1()).unwrap());
        let mt3 = Model::Mt3(nim_to_mt3(&m1()).unwrap());
        let mt2 = Model::Mt2(Mt2Model {
            worlds: 2,
            spaces: vec![FiniteTopology::new(
                ws(&[0, 1]),
                [WorldSet::EMPTY, ws(&[0, 1])],
            )],
            valuation: [("p".to_owned(), ws(&[0, 1]))].into(),
        });
        for model in [nim, mt1, mt2, mt3] {
            assert!(model.validate_rendered().is_empty());
            let text = render_model(&model);
            let reloaded = parse_model(&text).unwrap();
            assert_eq!(reloaded, model);
            assert_eq!(render_model(&reloaded), text);
        }
    }

    #[test]
    fn parsing_canonicalizes_scrambled_input() {
        let text = "\
kind = \"nim\"
version = 1
worlds = 2
min = [[0], [1]]
max = [[1, 0, 1], [1]]

[valuation]
p = [1, 1]
";
        let model = parse_model(text).unwrap();
        let Model::Nim(m) = &model else { panic!() };
        assert_eq!(m.frame.max(0), ws(&[0, 1]));
        assert!(m.frame.t_condition());
        assert_eq!(m.valuation["p"], ws(&[1]));
        let twice = parse_model(&render_model(&model)).unwrap();
        assert_eq!(twice, model);
    }

    #[test]
    fn header_problems_are_named() {
        assert!(matches!(
            parse_model("version = 1\nworlds = 1\nmin = [[0]]\nmax = [[0]]"),
            Err(ParseError::MissingHeader("kind"))
        ));
        assert!(matches!(
            parse_model("kind = \"nim\"\nworlds = 1\nmin = [[0]]\nmax = [[0]]"),
            Err(ParseError::MissingHeader("version"))
        ));
        assert!(matches!(
            parse_model("kind = \"nim\"\nversion = 7\nworlds = 1\nmin = [[0]]\nmax = [[0]]"),
            Err(ParseError::UnsupportedVersion { got: 7 })
        ));
        assert!(matches!(
            parse_model("kind = \"kripke\"\nversion = 1"),
            Err(ParseError::UnknownKind(UnknownKind(k))) if k == "kripke"
        ));
        assert!(matches!(
            parse_model("kind = \"nim\" version ="),
            Err(ParseError::Syntax(_))
        ));
    }

    #[test]
    fn structural_problems_are_named() {
        assert!(matches!(
            parse_model("kind = \"nim\"\nversion = 1\nworlds = 0\nmin = []\nmax = []"),
            Err(ParseError::ZeroWorlds)
        ));
        assert!(matches!(
            parse_model("kind = \"nim\"\nversion = 1\nworlds = 65\nmin = []\nmax = []"),
            Err(ParseError::TooManyWorlds(65))
        ));
        assert!(matches!(
            parse_model("kind = \"nim\"\nversion = 1\nworlds = 2\nmin = [[0]]\nmax = [[0], [1]]"),
            Err(ParseError::WrongArrayLength {
                field: "min",
                expected: 2,
                got: 1,
            })
        ));
        assert!(matches!(
            parse_model(
                "kind = \"nim\"\nversion = 1\nworlds = 2\nmin = [[0], [64]]\nmax = [[0], [1]]"
            ),
            Err(ParseError::IndexTooLarge(64))
        ));
        assert!(matches!(
            parse_model("kind = \"mt2\"\nversion = 1\nworlds = 1\n[[spaces]]\nuniverse = [0]\nopens = [[], [0]]\ndistinguished = [0]"),
            Err(ParseError::UnexpectedDistinguished { space: 0 })
        ));
        assert!(matches!(
            parse_model("kind = \"mt1\"\nversion = 1\nworlds = 1\n[[spaces]]\nuniverse = [0]\nopens = [[], [0]]"),
            Err(ParseError::MissingDistinguished { space: 0 })
        ));
        assert!(matches!(
            parse_model("kind = \"nim\"\nversion = 1\nworlds = 1\nmin = [[0]]\nmax = [[0]]\nextra = 3"),
            Err(ParseError::Syntax(_))
        ));
    }

    #[test]
    fn semantic_problems_parse_and_fail_validation() {
        let text = "\
kind = \"nim\"
version = 1
worlds = 2
min = [[0], [0, 1]]
max = [[0, 1], [0, 1]]

[valuation]
p = [1]
";
        let model = parse_model(text).unwrap();
        let violations = model.validate_rendered();
        assert!(violations.iter().any(|v| v.contains("monotone")), "{violations:?}");
    }

    #[test]
    fn truth_sets_dispatch_to_the_kind() {
        let nim = Model::Nim(m1());
        let translated = Model::Mt1(nim_to_mt1(&m1()).unwrap());
        let formula: Formula = "[]p".parse().unwrap();
        assert_eq!(nim.truth_set(&formula), ws(&[1]));
        assert_eq!(translated.truth_set(&formula), ws(&[1]));
        assert_eq!(nim.world_count(), 2);
        assert_eq!(translated.kind(), ModelKind::Mt1);
        assert_eq!(ModelKind::Mt1.to_string(), "mt1");
        assert_eq!("mt3".parse::<ModelKind>().unwrap(), ModelKind::Mt3);
    }

    #[test]
    fn save_and_load_through_the_filesystem() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m1.toml");
        let model = Model::Nim(m1());
        save_model(&path, &model).unwrap();
        assert_eq!(load_model(&path).unwrap(), model);
        assert!(matches!(
            load_model(dir.path().join("absent.toml")),
            Err(LoadError::Io { .. })
        ));
        std::fs::write(dir.path().join("broken.toml"), "kind = 3").unwrap();
        assert!(matches!(
            load_model(dir.path().join("broken.toml")),
            Err(LoadError::Parse { .. })
        ));
    }
}
