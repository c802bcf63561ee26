//! JSON document for [`ShapeGraph`].
//!
//! ```text
//! {
//!   "shape_id_table_version": 1,
//!   "nodes": [ { "id": 0, "kind": "convexity", "shape_id": 1, "direction": "N",
//!                "centroid": [x, y], "support_size": 5, "support": [[x, y], ...] } ],
//!   "edges": [[0, 1], ...]
//! }
//! ```
//!
//! `x` is always a column and `y` a row. Nodes are sorted by id, edges
//! lexicographically with the smaller id first.

use serde::{Deserialize, Serialize};

use super::{centroid, ShapeGraph};
use crate::error::{Error, Result};
use crate::raster::Pixel;
use crate::topo::{Direction, FeatureKind, TopoFeature, SHAPE_ID_TABLE_VERSION};

/// Largest disagreement tolerated between a stored centroid and the mean of
/// the stored support.
const CENTROID_TOLERANCE: f64 = 1e-6;

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    shape_id_table_version: u32,
    nodes: Vec<NodeDoc>,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    id: usize,
    kind: String,
    shape_id: u8,
    direction: Option<String>,
    centroid: [f64; 2],
    support_size: usize,
    support: Vec<[usize; 2]>,
}

fn kind_name(kind: FeatureKind) -> &'static str {
    match kind {
        FeatureKind::ClosedRegion => "closed_region",
        FeatureKind::Convexity(_) => "convexity",
        FeatureKind::StraightLine => "straight_line",
    }
}

fn to_doc(g: &ShapeGraph) -> GraphDoc {
    GraphDoc {
        shape_id_table_version: SHAPE_ID_TABLE_VERSION,
        nodes: g
            .nodes()
            .iter()
            .enumerate()
            .map(|(id, f)| NodeDoc {
                id,
                kind: kind_name(f.kind()).to_string(),
                shape_id: f.shape_id(),
                direction: f.kind().direction().map(|d| d.letter().to_string()),
                centroid: [f.centroid().x, f.centroid().y],
                support_size: f.support().len(),
                support: f.support().iter().map(|p| [p.col, p.row]).collect(),
            })
            .collect(),
        edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
    }
}

/// Compact single-line JSON.
pub fn serialize(g: &ShapeGraph) -> String {
    serde_json::to_string(&to_doc(g)).expect("graph documents always serialize")
}

/// Indented JSON with a trailing newline, as written by the CLI.
pub fn serialize_pretty(g: &ShapeGraph) -> String {
    let mut s = serde_json::to_string_pretty(&to_doc(g)).expect("graph documents always serialize");
    s.push('\n');
    s
}

/// Parse and validate a graph document.
pub fn deserialize(doc: &str) -> Result<ShapeGraph> {
    let raw: GraphDoc = serde_json::from_str(doc).map_err(|e| {
        Error::schema(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    if raw.shape_id_table_version != SHAPE_ID_TABLE_VERSION {
        return Err(Error::schema(
            "shape_id_table_version",
            format!(
                "unsupported version {} (expected {SHAPE_ID_TABLE_VERSION})",
                raw.shape_id_table_version
            ),
        ));
    }
    let mut nodes = Vec::with_capacity(raw.nodes.len());
    for (i, node) in raw.nodes.into_iter().enumerate() {
        nodes.push(node_from_doc(i, node)?);
    }
    ShapeGraph::from_parts(nodes, raw.edges.into_iter().map(|[a, b]| (a, b)))
}

fn node_from_doc(i: usize, node: NodeDoc) -> Result<TopoFeature> {
    let at = |field: &str| format!("nodes[{i}].{field}");
    if node.id != i {
        return Err(Error::schema(
            at("id"),
            format!("expected {i}, found {}", node.id),
        ));
    }
    let kind = FeatureKind::from_shape_id(node.shape_id).ok_or_else(|| {
        Error::schema(
            at("shape_id"),
            format!("unknown shape id {}", node.shape_id),
        )
    })?;
    if kind_name(kind) != node.kind {
        return Err(Error::schema(
            at("kind"),
            format!(
                "\"{}\" does not match shape id {}",
                node.kind, node.shape_id
            ),
        ));
    }
    let direction = match node.direction.as_deref() {
        None => None,
        Some(s) => {
            let mut chars = s.chars();
            match (chars.next().and_then(Direction::from_letter), chars.next()) {
                (Some(d), None) if s == d.letter().to_string() => Some(d),
                _ => {
                    return Err(Error::schema(
                        at("direction"),
                        format!("invalid direction \"{s}\""),
                    ))
                }
            }
        }
    };
    if direction != kind.direction() {
        return Err(Error::schema(
            at("direction"),
            format!("does not match shape id {}", node.shape_id),
        ));
    }
    if node.support.is_empty() {
        return Err(Error::schema(at("support"), "support must not be empty"));
    }
    let support: Vec<Pixel> = node
        .support
        .iter()
        .map(|&[x, y]| Pixel::new(y, x))
        .collect();
    let mut canonical = support.clone();
    canonical.sort_unstable();
    canonical.dedup();
    if canonical.len() != node.support_size || canonical.len() != support.len() {
        return Err(Error::schema(
            at("support_size"),
            format!(
                "declared {} but support lists {} distinct of {} pixels",
                node.support_size,
                canonical.len(),
                support.len()
            ),
        ));
    }
    let mean = centroid(&canonical)?;
    let [cx, cy] = node.centroid;
    if (cx - mean.x).abs() > CENTROID_TOLERANCE || (cy - mean.y).abs() > CENTROID_TOLERANCE {
        return Err(Error::schema(
            at("centroid"),
            format!(
                "[{cx}, {cy}] is not the support mean [{}, {}]",
                mean.x, mean.y
            ),
        ));
    }
    TopoFeature::new(kind, canonical)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn feature(kind: FeatureKind, pixels: &[(usize, usize)]) -> TopoFeature {
        TopoFeature::new(
            kind,
            pixels.iter().map(|&(r, c)| Pixel::new(r, c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn empty_graph() {
        let g = ShapeGraph::default();
        let doc: serde_json::Value = serde_json::from_str(&serialize(&g)).unwrap();
        assert_eq!(doc["nodes"], serde_json::json!([]));
        assert_eq!(doc["edges"], serde_json::json!([]));
        assert_eq!(deserialize(&serialize(&g)).unwrap(), g);
    }

    #[test]
    fn node_fields() {
        let g = ShapeGraph::from_parts(
            vec![
                feature(FeatureKind::ClosedRegion, &[(1, 0), (1, 2)]),
                feature(FeatureKind::from_shape_id(4).unwrap(), &[(3, 4)]),
            ],
            [(0, 1)],
        )
        .unwrap();
        let doc: serde_json::Value = serde_json::from_str(&serialize(&g)).unwrap();
        assert_eq!(doc["shape_id_table_version"], 1);
        assert_eq!(doc["nodes"][0]["kind"], "closed_region");
        assert_eq!(doc["nodes"][0]["direction"], serde_json::Value::Null);
        assert_eq!(doc["nodes"][0]["centroid"], serde_json::json!([1.0, 1.0]));
        assert_eq!(doc["nodes"][1]["direction"], "S");
        assert_eq!(doc["nodes"][1]["shape_id"], 4);
        assert_eq!(doc["nodes"][1]["support"], serde_json::json!([[4, 3]]));
        assert_eq!(doc["edges"], serde_json::json!([[0, 1]]));
        assert_eq!(deserialize(&serialize_pretty(&g)).unwrap(), g);
    }

    fn schema_path(doc: &str) -> String {
        match deserialize(doc) {
            Err(Error::Schema { path, .. }) => path,
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn schema_errors_name_the_field() {
        let node = r#"{"id":0,"kind":"convexity","shape_id":1,"direction":"N","centroid":[2.0,3.0],"support_size":1,"support":[[2,3]]}"#;
        let ok = format!(r#"{{"shape_id_table_version":1,"nodes":[{node}],"edges":[]}}"#);
        assert!(deserialize(&ok).is_ok());

        let dangling =
            format!(r#"{{"shape_id_table_version":1,"nodes":[{node}],"edges":[[0,1]]}}"#);
        assert_eq!(schema_path(&dangling), "edges[0]");
        let wrong_dir = ok.replace(r#""direction":"N""#, r#""direction":"S""#);
        assert_eq!(schema_path(&wrong_dir), "nodes[0].direction");
        let wrong_kind = ok.replace("\"convexity\"", "\"closed_region\"");
        assert_eq!(schema_path(&wrong_kind), "nodes[0].kind");
        let wrong_size = ok.replace(r#""support_size":1"#, r#""support_size":2"#);
        assert_eq!(schema_path(&wrong_size), "nodes[0].support_size");
        let wrong_centroid = ok.replace("[2.0,3.0]", "[2.5,3.0]");
        assert_eq!(schema_path(&wrong_centroid), "nodes[0].centroid");
        let wrong_version = ok.replace(r#"version":1"#, r#"version":7"#);
        assert_eq!(schema_path(&wrong_version), "shape_id_table_version");
        assert!(schema_path(r#"{"nodes":[]}"#).starts_with("line 1"));
    }
}
