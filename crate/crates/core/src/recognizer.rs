//! Shape-id vectors, a labelled training store, and matching.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ShapeGraph;
use crate::topo::{FeatureKind, SHAPE_ID_TABLE_VERSION};

/// Sorted multiset of shape ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ShapeIdVector {
    ids: Vec<u8>,
}

impl ShapeIdVector {
    /// Sorts `ids`; fails if any id is outside the shape-id table.
    pub fn new(mut ids: Vec<u8>) -> Result<Self> {
        if let Some(bad) = ids
            .iter()
            .find(|&&id| FeatureKind::from_shape_id(id).is_none())
        {
            return Err(Error::InvalidParams(format!("unknown shape id {bad}")));
        }
        ids.sort_unstable();
        Ok(ShapeIdVector { ids })
    }

    pub fn ids(&self) -> &[u8] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn counts(&self) -> BTreeMap<u8, usize> {
        let mut m = BTreeMap::new();
        for &id in &self.ids {
            *m.entry(id).or_insert(0) += 1;
        }
        m
    }
}

impl std::fmt::Display for ShapeIdVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.ids.iter().map(u8::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn vectorize(g: &ShapeGraph) -> ShapeIdVector {
    let mut ids: Vec<u8> = g.nodes().iter().map(|f| f.shape_id()).collect();
    ids.sort_unstable();
    ShapeIdVector { ids }
}

/// Multiset Jaccard similarity. Two empty vectors score 1.
pub fn jaccard(a: &ShapeIdVector, b: &ShapeIdVector) -> f64 {
    let (ca, cb) = (a.counts(), b.counts());
    let keys: BTreeSet<u8> = ca.keys().chain(cb.keys()).copied().collect();
    let mut inter = 0;
    let mut union = 0;
    for id in &keys {
        let x = ca.get(id).copied().unwrap_or(0);
        let y = cb.get(id).copied().unwrap_or(0);
        inter += x.min(y);
        union += x.max(y);
    }
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingEntry {
    pub label: String,
    pub vector: ShapeIdVector,
}

/// Labelled shape-id vectors; a label may appear any number of times.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrainingStore {
    entries: Vec<TrainingEntry>,
}

#[derive(Serialize, Deserialize)]
struct StoreDoc {
    table_version: u32,
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    label: String,
    ids: Vec<u8>,
}

impl TrainingStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, label: impl Into<String>, vector: ShapeIdVector) {
        self.entries.push(TrainingEntry {
            label: label.into(),
            vector,
        });
    }

    pub fn entries(&self) -> &[TrainingEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> String {
        let doc = StoreDoc {
            table_version: SHAPE_ID_TABLE_VERSION,
            entries: self
                .entries
                .iter()
                .map(|e| EntryDoc {
                    label: e.label.clone(),
                    ids: e.vector.ids.clone(),
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("store documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(doc: &str) -> Result<Self> {
        let raw: StoreDoc = serde_json::from_str(doc).map_err(|e| {
            Error::schema(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        if raw.table_version != SHAPE_ID_TABLE_VERSION {
            return Err(Error::schema(
                "table_version",
                format!(
                    "unsupported version {} (expected {SHAPE_ID_TABLE_VERSION})",
                    raw.table_version
                ),
            ));
        }
        let mut store = TrainingStore::new();
        for (i, e) in raw.entries.into_iter().enumerate() {
            for (j, &id) in e.ids.iter().enumerate() {
                if FeatureKind::from_shape_id(id).is_none() {
                    return Err(Error::schema(
                        format!("entries[{i}].ids[{j}]"),
                        format!("unknown shape id {id}"),
                    ));
                }
            }
            if e.ids.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::schema(
                    format!("entries[{i}].ids"),
                    "ids must be sorted ascending",
                ));
            }
            store.push(e.label, ShapeIdVector { ids: e.ids });
        }
        Ok(store)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Schema {
                path: field,
                message,
            } => Error::Schema {
                path: format!("{}: {field}", path.display()),
                message,
            },
            other => other,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

/// Rank labels by their best Jaccard score against `test`, highest first,
/// ties by label.
pub fn match_vector(test: &ShapeIdVector, store: &TrainingStore) -> Result<Vec<(String, f64)>> {
    if store.is_empty() {
        return Err(Error::EmptyStore);
    }
    let mut best: BTreeMap<&str, f64> = BTreeMap::new();
    for e in store.entries() {
        let s = jaccard(test, &e.vector);
        let slot = best.entry(e.label.as_str()).or_insert(s);
        if s > *slot {
            *slot = s;
        }
    }
    let mut ranked: Vec<(String, f64)> =
        best.into_iter().map(|(l, s)| (l.to_string(), s)).collect();
    ranked.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
    Ok(ranked)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrimination {
    pub distinguishable: bool,
    /// Shape ids (with multiplicity) in the first graph's vector but not the second's.
    pub only_in_first: Vec<u8>,
    pub only_in_second: Vec<u8>,
    pub node_counts: (usize, usize),
    pub edge_counts: (usize, usize),
}

impl Discrimination {
    /// Both sides of the shape-id difference, sorted.
    pub fn id_diff(&self) -> Vec<u8> {
        let mut all: Vec<u8> = self
            .only_in_first
            .iter()
            .chain(&self.only_in_second)
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

pub fn discriminate(g1: &ShapeGraph, g2: &ShapeGraph) -> Discrimination {
    let (v1, v2) = (vectorize(g1), vectorize(g2));
    let (c1, c2) = (v1.counts(), v2.counts());
    let minus = |a: &BTreeMap<u8, usize>, b: &BTreeMap<u8, usize>| -> Vec<u8> {
        a.iter()
            .flat_map(|(&id, &n)| {
                std::iter::repeat_n(id, n.saturating_sub(b.get(&id).copied().unwrap_or(0)))
            })
            .collect()
    };
    let node_counts = (g1.node_count(), g2.node_count());
    let edge_counts = (g1.edge_count(), g2.edge_count());
    Discrimination {
        distinguishable: v1 != v2
            || node_counts.0 != node_counts.1
            || edge_counts.0 != edge_counts.1,
        only_in_first: minus(&c1, &c2),
        only_in_second: minus(&c2, &c1),
        node_counts,
        edge_counts,
    }
}
