use std::collections::BTreeSet;

use crate::raster::{holes, BinaryRaster, Pixel, NEIGHBORS_8};

use super::{FeatureKind, TopoFeature};

/// One closed region per hole of the skeleton.
///
/// A region's support is the set of stroke pixels 8-adjacent to its hole.
/// Pixels shared by several holes (a junction in a figure eight, the bar of
/// a theta) go to the first hole in canonical order, so supports are
/// disjoint; a hole left with nothing keeps its full boundary.
pub fn detect_closed_regions(sk: &BinaryRaster) -> Vec<TopoFeature> {
    let mut claimed: BTreeSet<Pixel> = BTreeSet::new();
    let mut regions = Vec::new();
    for hole in holes(sk) {
        let mut boundary = BTreeSet::new();
        for p in &hole {
            for &(dr, dc) in &NEIGHBORS_8 {
                let (r, c) = (p.row as isize + dr, p.col as isize + dc);
                if sk.is_foreground_padded(r, c) {
                    boundary.insert(Pixel::new(r as usize, c as usize));
                }
            }
        }
        let own: Vec<Pixel> = boundary.difference(&claimed).copied().collect();
        let support = if own.is_empty() {
            boundary.iter().copied().collect()
        } else {
            own
        };
        claimed.extend(boundary);
        regions.push(
            TopoFeature::new(FeatureKind::ClosedRegion, support)
                .expect("a hole is always bounded by stroke pixels"),
        );
    }
    regions.sort_by(TopoFeature::canonical_cmp);
    regions
}
