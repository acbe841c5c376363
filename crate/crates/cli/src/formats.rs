//! JSON file formats. Faces are written as sorted 1-based column indices.

use std::path::Path;
use std::sync::Arc;

use anyhow::Context;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use stdpairs::{Configuration, FaceId, MonomialIdeal, Pair, StandardPairSet};

use crate::failure::Failure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub generators: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub root: Vec<i64>,
    pub face: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairsFile {
    pub pairs: Vec<PairEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub face: Vec<usize>,
    pub generators: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub kind: String,
    pub components: Vec<ComponentEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacesFile {
    pub faces: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplicityEntry {
    pub face: Vec<usize>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplicityFile {
    pub multiplicities: Vec<MultiplicityEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetEntry {
    pub coefficients: Vec<i64>,
    pub face: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationFile {
    pub dimension: usize,
    pub columns: usize,
    pub facets: Vec<FacetEntry>,
    pub faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<i64>>>,
}

pub fn read<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())).into())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn one_based(config: &Configuration, face: FaceId) -> Vec<usize> {
    config.face(face).indices.iter().map(|j| j + 1).collect()
}

pub fn face_from_one_based(config: &Configuration, face: &[usize]) -> anyhow::Result<FaceId> {
    let mut indices = Vec::with_capacity(face.len());
    for &j in face {
        if j == 0 || j > config.column_count() {
            return Err(Failure::Parse(format!(
                "face index {j} outside 1..={}",
                config.column_count()
            ))
            .into());
        }
        indices.push(j - 1);
    }
    indices.sort_unstable();
    indices.dedup();
    Ok(config.face_id(&indices)?)
}

pub fn configuration(
    file: &MatrixFile,
    budget: stdpairs::Budget,
) -> anyhow::Result<Arc<Configuration>> {
    let config = Configuration::from_rows(&file.matrix)?;
    Ok(Arc::new(config.with_budget(budget)))
}

pub fn ideal(config: &Arc<Configuration>, file: &IdealFile) -> anyhow::Result<MonomialIdeal> {
    Ok(MonomialIdeal::new(config.clone(), file.generators.clone())?)
}

pub fn ideal_file(ideal: &MonomialIdeal) -> IdealFile {
    IdealFile {
        generators: ideal.sorted_degrees(),
    }
}

pub fn pairs_file(std: &StandardPairSet) -> PairsFile {
    let config = std.configuration();
    PairsFile {
        pairs: std
            .pairs
            .iter()
            .map(|p| PairEntry {
                root: p.root.clone(),
                face: one_based(config, p.face),
            })
            .collect(),
    }
}

pub fn pair_set(config: &Arc<Configuration>, file: &PairsFile) -> anyhow::Result<StandardPairSet> {
    let mut pairs = Vec::with_capacity(file.pairs.len());
    for entry in &file.pairs {
        let face = face_from_one_based(config, &entry.face)?;
        pairs.push(Pair::checked(config, entry.root.clone(), face)?);
    }
    Ok(StandardPairSet::from_pairs(config.clone(), pairs)?)
}
