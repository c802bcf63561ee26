//! Shape-based graph: one node per topographic feature placed at the
//! feature's centroid, edges between features that touch along the skeleton.

mod dot;
mod json;

use std::collections::{BTreeSet, HashMap, HashSet};

pub use dot::to_dot;
pub use json::{deserialize, serialize, serialize_pretty};

use crate::error::{Error, Result};
use crate::raster::{BinaryRaster, Connectivity, Pixel};
use crate::topo::TopoFeature;

/// Mean position of a pixel set. `x` is the column mean, `y` the row mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Centroid {
    pub x: f64,
    pub y: f64,
}

/// Centroid as exact integer sums over `count` pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactCentroid {
    pub sum_x: u64,
    pub sum_y: u64,
    pub count: u64,
}

impl ExactCentroid {
    pub fn to_centroid(self) -> Centroid {
        Centroid {
            x: self.sum_x as f64 / self.count as f64,
            y: self.sum_y as f64 / self.count as f64,
        }
    }

    /// The centroid of the same set shifted by `(dr, dc)`.
    pub fn translated(self, dr: u64, dc: u64) -> ExactCentroid {
        ExactCentroid {
            sum_x: self.sum_x + dc * self.count,
            sum_y: self.sum_y + dr * self.count,
            count: self.count,
        }
    }
}

pub fn centroid_exact(support: &[Pixel]) -> Result<ExactCentroid> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let (sum_x, sum_y) = support.iter().fold((0u64, 0u64), |(sx, sy), p| {
        (sx + p.col as u64, sy + p.row as u64)
    });
    Ok(ExactCentroid {
        sum_x,
        sum_y,
        count: support.len() as u64,
    })
}

pub fn centroid(support: &[Pixel]) -> Result<Centroid> {
    centroid_exact(support).map(ExactCentroid::to_centroid)
}

/// Undirected graph over topographic features. Node `i` is `nodes()[i]`;
/// edges are stored as `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ShapeGraph {
    nodes: Vec<TopoFeature>,
    edges: BTreeSet<(usize, usize)>,
}

impl ShapeGraph {
    /// Assemble a graph from parts, validating edge endpoints.
    pub fn from_parts(
        nodes: Vec<TopoFeature>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, (a, b)) in edges.into_iter().enumerate() {
            if a == b {
                return Err(Error::schema(
                    format!("edges[{i}]"),
                    format!("self-loop on node {a}"),
                ));
            }
            if a.max(b) >= nodes.len() {
                return Err(Error::schema(
                    format!("edges[{i}]"),
                    format!(
                        "references node {} but only {} nodes exist",
                        a.max(b),
                        nodes.len()
                    ),
                ));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(ShapeGraph { nodes, edges: set })
    }

    pub fn nodes(&self) -> &[TopoFeature] {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Build the shape-based graph.
///
/// Features are put in canonical order first, so node ids depend on
/// geometry rather than on input order. Two features are joined when they
/// touch, either by sharing a pixel or through a skeleton 8-path whose
/// inner pixels belong to no feature, unless a third feature's support
/// contains both of them; in that case they hang off the container only
/// (the four convexities on a ring link to the ring, not to each other).
pub fn build_graph(features: &[TopoFeature], sk: &BinaryRaster) -> ShapeGraph {
    let mut nodes = features.to_vec();
    nodes.sort_by(TopoFeature::canonical_cmp);

    let mut owners: HashMap<Pixel, Vec<usize>> = HashMap::new();
    for (i, f) in nodes.iter().enumerate() {
        for &p in f.support() {
            owners.entry(p).or_default().push(i);
        }
    }

    let mut touching: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (u, f) in nodes.iter().enumerate() {
        let mut seen: HashSet<Pixel> = f.support().iter().copied().collect();
        let mut stack: Vec<Pixel> = f.support().to_vec();
        for p in f.support() {
            for &v in &owners[p] {
                if v != u {
                    touching.insert((u.min(v), u.max(v)));
                }
            }
        }
        while let Some(p) = stack.pop() {
            for q in sk.neighbors(p, Connectivity::Eight) {
                if !seen.insert(q) {
                    continue;
                }
                match owners.get(&q) {
                    Some(vs) => {
                        for &v in vs {
                            if v != u {
                                touching.insert((u.min(v), u.max(v)));
                            }
                        }
                    }
                    None => stack.push(q),
                }
            }
        }
    }

    let sets: Vec<HashSet<Pixel>> = nodes
        .iter()
        .map(|f| f.support().iter().copied().collect())
        .collect();
    let edges: BTreeSet<(usize, usize)> = touching
        .into_iter()
        .filter(|&(u, v)| {
            !(0..nodes.len()).any(|w| {
                w != u && w != v && sets[u].is_subset(&sets[w]) && sets[v].is_subset(&sets[w])
            })
        })
        .collect();
    ShapeGraph { nodes, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topo::{extract_all, extract_with_directions, Direction, FeatureKind, ScanParams};

    #[test]
    fn centroid_examples() {
        let square = [
            Pixel::new(0, 0),
            Pixel::new(0, 2),
            Pixel::new(2, 0),
            Pixel::new(2, 2),
        ];
        assert_eq!(centroid(&square).unwrap(), Centroid { x: 1.0, y: 1.0 });
        // (x, y) = (5, 7) is column 5, row 7
        assert_eq!(
            centroid(&[Pixel::new(7, 5)]).unwrap(),
            Centroid { x: 5.0, y: 7.0 }
        );
        assert_eq!(centroid(&[]), Err(Error::EmptySupport));
    }

    #[test]
    fn single_feature_graph() {
        let sk = BinaryRaster::from_ascii(&["#...#", ".#.#.", "..#.."]).unwrap();
        let features = extract_all(&sk, ScanParams::default());
        let g = build_graph(&features, &sk);
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn ring_links_convexities_through_the_closed_region() {
        let sk = BinaryRaster::from_ascii(&[
            "...#...", //
            "..#.#..", //
            ".#...#.", //
            "#.....#", //
            ".#...#.", //
            "..#.#..", //
            "...#...",
        ])
        .unwrap();
        let g = build_graph(&extract_all(&sk, ScanParams::default()), &sk);
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.nodes()[0].kind(), FeatureKind::ClosedRegion);
        let expected: BTreeSet<(usize, usize)> = (1..5).map(|v| (0, v)).collect();
        assert_eq!(g.edges(), &expected);
    }

    #[test]
    fn disconnected_features_stay_apart() {
        let sk = BinaryRaster::from_ascii(&[
            "#...#.....#...#", //
            ".#.#.......#.#.", //
            "..#.........#..",
        ])
        .unwrap();
        let g = build_graph(&extract_all(&sk, ScanParams::default()), &sk);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn path_through_free_pixels_links_features() {
        // two V's whose outer arms are joined along the top; seen from the
        // North only, the joining pixels belong to no feature
        let sk = BinaryRaster::from_ascii(&[
            "#...#####...#", //
            ".#.#.....#.#.", //
            "..#.......#..",
        ])
        .unwrap();
        let features = extract_with_directions(&sk, ScanParams::default(), &[Direction::North]);
        assert_eq!(features.len(), 2);
        assert!(features[0]
            .support()
            .iter()
            .all(|p| !features[1].support().contains(p)));
        let g = build_graph(&features, &sk);
        assert_eq!(g.edges().iter().collect::<Vec<_>>(), vec![&(0, 1)]);
    }

    #[test]
    fn from_parts_rejects_bad_edges() {
        assert!(ShapeGraph::from_parts(vec![], [(0, 1)]).is_err());
        let f = TopoFeature::new(FeatureKind::StraightLine, vec![Pixel::new(0, 0)]).unwrap();
        assert!(ShapeGraph::from_parts(vec![f.clone()], [(0, 0)]).is_err());
        let g = ShapeGraph::from_parts(vec![f.clone(), f], [(1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edges().iter().collect::<Vec<_>>(), vec![&(0, 1)]);
    }
}
