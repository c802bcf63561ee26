//! Topographic features of a skeleton: directional stroke convexities,
//! closed regions and straight (head) lines.
//!
//! Shape-id table (version [`SHAPE_ID_TABLE_VERSION`]):
//!
//! | id | feature                  |
//! |----|--------------------------|
//! | 1  | convexity, North, point  |
//! | 2  | convexity, North, flat   |
//! | 3  | convexity, South, point  |
//! | 4  | convexity, South, flat   |
//! | 5  | convexity, East, point   |
//! | 6  | convexity, East, flat    |
//! | 7  | convexity, West, point   |
//! | 8  | convexity, West, flat    |
//! | 9  | closed region            |
//! | 10 | straight line            |

mod closed;
mod scan;
mod straight;

use std::cmp::Ordering;
use std::fmt;

pub use closed::detect_closed_regions;
pub use scan::{detect_convexities, scan_transitions, trace_valleys, Valley};
pub use straight::detect_straight_lines;

use crate::error::{Error, Result};
use crate::graph::{centroid, Centroid};
use crate::par;
use crate::raster::{BinaryRaster, Pixel};

/// Version of the frozen shape-id table embedded in serialized output.
pub const SHAPE_ID_TABLE_VERSION: u32 = 1;

/// Viewing direction. North looks down from row 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    North,
    South,
    East,
    West,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::North,
        Direction::South,
        Direction::East,
        Direction::West,
    ];

    pub fn letter(self) -> char {
        match self {
            Direction::North => 'N',
            Direction::South => 'S',
            Direction::East => 'E',
            Direction::West => 'W',
        }
    }

    pub fn from_letter(c: char) -> Option<Direction> {
        match c.to_ascii_uppercase() {
            'N' => Some(Direction::North),
            'S' => Some(Direction::South),
            'E' => Some(Direction::East),
            'W' => Some(Direction::West),
            _ => None,
        }
    }

    fn index(self) -> u8 {
        match self {
            Direction::North => 0,
            Direction::South => 1,
            Direction::East => 2,
            Direction::West => 3,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// How a valley terminates: in a single pixel or short run, or in a flat run
/// at least `xi` pixels long.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ApexKind {
    Point,
    Flat,
}

/// One entry of the convex-shape inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConvexShapeClass {
    pub direction: Direction,
    pub apex: ApexKind,
}

impl ConvexShapeClass {
    pub fn id(self) -> u8 {
        1 + 2 * self.direction.index() + u8::from(self.apex == ApexKind::Flat)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureKind {
    ClosedRegion,
    Convexity(ConvexShapeClass),
    StraightLine,
}

impl FeatureKind {
    pub const CLOSED_REGION_ID: u8 = 9;
    pub const STRAIGHT_LINE_ID: u8 = 10;

    pub fn shape_id(self) -> u8 {
        match self {
            FeatureKind::Convexity(class) => class.id(),
            FeatureKind::ClosedRegion => Self::CLOSED_REGION_ID,
            FeatureKind::StraightLine => Self::STRAIGHT_LINE_ID,
        }
    }

    pub fn from_shape_id(id: u8) -> Option<FeatureKind> {
        match id {
            1..=8 => {
                let direction = Direction::ALL[usize::from((id - 1) / 2)];
                let apex = if id % 2 == 1 {
                    ApexKind::Point
                } else {
                    ApexKind::Flat
                };
                Some(FeatureKind::Convexity(ConvexShapeClass { direction, apex }))
            }
            9 => Some(FeatureKind::ClosedRegion),
            10 => Some(FeatureKind::StraightLine),
            _ => None,
        }
    }

    pub fn direction(self) -> Option<Direction> {
        match self {
            FeatureKind::Convexity(class) => Some(class.direction),
            _ => None,
        }
    }

    /// Short label used in DOT output and summaries.
    pub fn mnemonic(self) -> String {
        match self {
            FeatureKind::ClosedRegion => "closed".to_string(),
            FeatureKind::StraightLine => "line".to_string(),
            FeatureKind::Convexity(c) => format!(
                "{}-{}",
                c.direction.letter(),
                match c.apex {
                    ApexKind::Point => "point",
                    ApexKind::Flat => "flat",
                }
            ),
        }
    }

    /// Output grouping: closed regions, straight lines, then convexities N, S, E, W.
    fn group_rank(self) -> u8 {
        match self {
            FeatureKind::ClosedRegion => 0,
            FeatureKind::StraightLine => 1,
            FeatureKind::Convexity(c) => 2 + c.direction.index(),
        }
    }
}

/// One extracted feature. `support` is sorted and duplicate-free and
/// `centroid` is its mean position.
#[derive(Debug, Clone, PartialEq)]
pub struct TopoFeature {
    kind: FeatureKind,
    support: Vec<Pixel>,
    centroid: Centroid,
}

impl TopoFeature {
    pub fn new(kind: FeatureKind, mut support: Vec<Pixel>) -> Result<Self> {
        support.sort_unstable();
        support.dedup();
        let centroid = centroid(&support)?;
        Ok(TopoFeature {
            kind,
            support,
            centroid,
        })
    }

    pub fn kind(&self) -> FeatureKind {
        self.kind
    }

    pub fn support(&self) -> &[Pixel] {
        &self.support
    }

    pub fn centroid(&self) -> Centroid {
        self.centroid
    }

    pub fn shape_id(&self) -> u8 {
        self.kind.shape_id()
    }

    /// Total order used for every feature list this crate emits: kind group,
    /// then smallest support pixel, then the full support.
    pub fn canonical_cmp(&self, other: &TopoFeature) -> Ordering {
        self.kind
            .group_rank()
            .cmp(&other.kind.group_rank())
            .then_with(|| self.support.first().cmp(&other.support.first()))
            .then_with(|| self.kind.shape_id().cmp(&other.kind.shape_id()))
            .then_with(|| self.support.cmp(&other.support))
    }
}

/// Thresholds for convexity and straight-line detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScanParams {
    xi: usize,
    epsilon: usize,
}

impl ScanParams {
    pub const DEFAULT_XI: usize = 5;
    pub const DEFAULT_EPSILON: usize = 20;

    /// `xi` is the minimum terminal run length of a flat apex; `epsilon` the
    /// minimum length of a straight line. Requires `xi >= 2` and `epsilon > xi`.
    pub fn new(xi: usize, epsilon: usize) -> Result<Self> {
        if xi < 2 {
            return Err(Error::InvalidParams(format!("xi must be >= 2 (got {xi})")));
        }
        if epsilon <= xi {
            return Err(Error::InvalidParams(format!(
                "epsilon must exceed xi (got epsilon {epsilon}, xi {xi})"
            )));
        }
        Ok(ScanParams { xi, epsilon })
    }

    pub fn xi(&self) -> usize {
        self.xi
    }

    pub fn epsilon(&self) -> usize {
        self.epsilon
    }
}

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams {
            xi: Self::DEFAULT_XI,
            epsilon: Self::DEFAULT_EPSILON,
        }
    }
}

/// All features from all four directions.
pub fn extract_all(sk: &BinaryRaster, params: ScanParams) -> Vec<TopoFeature> {
    extract_with_directions(sk, params, &Direction::ALL)
}

/// Closed regions, straight lines, then convexities for the requested
/// directions (always emitted in N, S, E, W order). Straight-line pixels are
/// masked out of the North scan; closed-region pixels are not.
pub fn extract_with_directions(
    sk: &BinaryRaster,
    params: ScanParams,
    directions: &[Direction],
) -> Vec<TopoFeature> {
    let mut closed = detect_closed_regions(sk);
    let mut lines = detect_straight_lines(sk, params);

    let mut north_view = sk.clone();
    for p in lines.iter().flat_map(|f| f.support()) {
        north_view.put(p.row, p.col, false);
    }

    let wanted: Vec<Direction> = Direction::ALL
        .into_iter()
        .filter(|d| directions.contains(d))
        .collect();
    let per_direction = par::map(&wanted, |&d| {
        let view = if d == Direction::North {
            &north_view
        } else {
            sk
        };
        detect_convexities(view, d, params)
    });

    closed.sort_by(TopoFeature::canonical_cmp);
    lines.sort_by(TopoFeature::canonical_cmp);
    let mut out = closed;
    out.extend(lines);
    for group in per_direction {
        out.extend(group);
    }
    out
}
