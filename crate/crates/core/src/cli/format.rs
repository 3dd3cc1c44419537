//! JSON action and map files.

use std::fs;
use std::path::{Component, Path, PathBuf};
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::action::{EquivariantMap, FiniteBiAction};
use crate::error::{Error, Result, Side};
use crate::monoid::{MonoidKind, MonoidPresentation};
use crate::transform::Transform;

fn default_unit() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MonoidSpec {
    pub kind: String,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default = "default_unit", skip_serializing_if = "is_true")]
    pub unit: bool,
}

type SideSpec = IndexMap<String, IndexMap<String, String>>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub monoid: MonoidSpec,
    pub carrier: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<SideSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<SideSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source: String,
    pub target: String,
    pub map: IndexMap<String, String>,
}

fn parse_kind(kind: &str) -> Result<MonoidKind> {
    match kind {
        "free" => Ok(MonoidKind::Free),
        "free_commutative" => Ok(MonoidKind::FreeCommutative),
        "finite_table" => Ok(MonoidKind::FiniteTable),
        other => Err(Error::Parse(format!(
            "monoid.kind: unknown kind `{other}` (expected free, free_commutative or finite_table)"
        ))),
    }
}

fn side_family(
    spec: &SideSpec,
    field: &str,
    monoid: &MonoidPresentation,
    states: &[String],
) -> Result<Vec<Transform>> {
    let index = |name: &str| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::Parse(format!("{field}: unknown state `{name}`")))
    };
    for g in spec.keys() {
        if monoid.generator_index(g).is_err() {
            return Err(Error::Parse(format!("{field}: unknown generator `{g}`")));
        }
    }
    monoid
        .generators()
        .iter()
        .map(|g| {
            let images = spec
                .get(g)
                .ok_or_else(|| Error::Parse(format!("{field}: generator `{g}` is missing")))?;
            for k in images.keys() {
                index(k).map_err(|_| Error::Parse(format!("{field}.{g}: unknown state `{k}`")))?;
            }
            let t = states
                .iter()
                .map(|s| {
                    let y = images
                        .get(s)
                        .ok_or_else(|| Error::Parse(format!("{field}.{g}: state `{s}` has no image")))?;
                    index(y).map_err(|_| Error::Parse(format!("{field}.{g}.{s}: unknown state `{y}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Transform::new(t))
        })
        .collect()
}

impl ActionFile {
    pub fn to_action(&self) -> Result<FiniteBiAction> {
        let monoid = MonoidPresentation::new(
            parse_kind(&self.monoid.kind)?,
            self.monoid.generators.clone(),
            self.monoid.table.clone(),
            self.monoid.unit,
        )?;
        let left = self
            .left
            .as_ref()
            .map(|s| side_family(s, "left", &monoid, &self.carrier))
            .transpose()?;
        let right = self
            .right
            .as_ref()
            .map(|s| side_family(s, "right", &monoid, &self.carrier))
            .transpose()?;
        FiniteBiAction::new(monoid, self.carrier.clone(), left, right)
    }

    pub fn from_action(a: &FiniteBiAction) -> Self {
        let m = a.monoid();
        let side = |side: Side| -> Option<SideSpec> {
            if a.is_side_trivial(side) {
                return None;
            }
            Some(
                m.generators()
                    .iter()
                    .zip(a.family(side))
                    .map(|(g, t)| {
                        let images = a
                            .states()
                            .iter()
                            .zip(t.images())
                            .map(|(s, &y)| (s.clone(), a.states()[y].clone()))
                            .collect();
                        (g.clone(), images)
                    })
                    .collect(),
            )
        };
        ActionFile {
            monoid: MonoidSpec {
                kind: m.kind().name().to_string(),
                generators: m.generators().to_vec(),
                table: m.table().map(<[Vec<usize>]>::to_vec),
                unit: m.has_unit(),
            },
            carrier: a.states().to_vec(),
            left: side(Side::Left),
            right: side(Side::Right),
        }
    }
}

pub fn parse_action(text: &str) -> Result<FiniteBiAction> {
    let file: ActionFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_action()
}

pub fn serialize_action(a: &FiniteBiAction) -> String {
    let mut out = serde_json::to_string_pretty(&ActionFile::from_action(a))
        .expect("action files always serialize");
    out.push('\n');
    out
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_action(path: &Path) -> Result<FiniteBiAction> {
    parse_action(&read(path)?).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Loads a map file; its source and target paths are relative to the file.
pub fn load_map(path: &Path) -> Result<EquivariantMap> {
    let text = read(path)?;
    let file: MapFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new(""));
    let source = Arc::new(load_action(&dir.join(&file.source))?);
    let target = Arc::new(load_action(&dir.join(&file.target))?);
    if source.monoid() != target.monoid() {
        return Err(Error::MonoidMismatch);
    }
    let map = map_indices(&file.map, &source, &target)?;
    EquivariantMap::new(source, target, map)
}

fn map_indices(
    map: &IndexMap<String, String>,
    source: &FiniteBiAction,
    target: &FiniteBiAction,
) -> Result<Vec<usize>> {
    for k in map.keys() {
        source
            .state_index(k)
            .map_err(|_| Error::Parse(format!("map: unknown source state `{k}`")))?;
    }
    source
        .states()
        .iter()
        .map(|s| {
            let y = map
                .get(s)
                .ok_or_else(|| Error::Parse(format!("map: state `{s}` has no image")))?;
            target
                .state_index(y)
                .map_err(|_| Error::Parse(format!("map.{s}: unknown target state `{y}`")))
        })
        .collect()
}

fn absolute(path: &Path) -> PathBuf {
    let base = if path.is_absolute() {
        PathBuf::new()
    } else {
        std::env::current_dir().unwrap_or_default()
    };
    let mut out = PathBuf::new();
    for c in base.join(path).components() {
        match c {
            Component::CurDir => {}
            Component::ParentDir => {
                out.pop();
            }
            other => out.push(other),
        }
    }
    out
}

/// `path` written relative to the directory `dir`.
pub fn relative_path(path: &Path, dir: &Path) -> String {
    let (p, d) = (absolute(path), absolute(dir));
    let pc: Vec<_> = p.components().collect();
    let dc: Vec<_> = d.components().collect();
    let common = pc.iter().zip(&dc).take_while(|(a, b)| a == b).count();
    let mut out = PathBuf::new();
    for _ in common..dc.len() {
        out.push("..");
    }
    for c in &pc[common..] {
        out.push(c);
    }
    out.to_string_lossy().replace('\\', "/")
}

/// Serializes `f` as a map file living at `at`, referring to the given files.
pub fn serialize_map(f: &EquivariantMap, source: &Path, target: &Path, at: &Path) -> String {
    let dir = at.parent().unwrap_or(Path::new(""));
    let file = MapFile {
        source: relative_path(source, dir),
        target: relative_path(target, dir),
        map: f
            .source()
            .states()
            .iter()
            .zip(f.map())
            .map(|(s, &y)| (s.clone(), f.target().states()[y].clone()))
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("map files always serialize");
    out.push('\n');
    out
}
