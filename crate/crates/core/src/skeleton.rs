//! Thinning to a single-pixel-wide skeleton, plus junction/endpoint labelling.
//!
//! Thinning alternates two boundary-peeling sub-iterations whose candidate
//! rules are the Guo-Hall 3x3 predicates (crossing count, occupied neighbour
//! pairs, and a directional guard). Candidates are removed one at a
//! time and only while they are still simple points, so every removal keeps
//! the foreground 8-components and background 4-components intact. A final
//! sweep removes any remaining simple pixel that is not an endpoint, which
//! takes out the 4-connected stair steps the peeling leaves behind.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::raster::{connected_components, BinaryRaster, Connectivity, Pixel};

/// Clockwise ring around a pixel starting at north: P2..P9 in the usual
/// thinning notation.
const RING: [(isize, isize); 8] = [
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
];

fn ring_mask(img: &BinaryRaster, p: Pixel) -> u8 {
    let (r, c) = (p.row as isize, p.col as isize);
    RING.iter().enumerate().fold(0u8, |m, (i, (dr, dc))| {
        if img.is_foreground_padded(r + dr, c + dc) {
            m | 1 << i
        } else {
            m
        }
    })
}

fn count_ring_components(
    cells: &[usize],
    adjacent: impl Fn(usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut seen = [false; 8];
    for &start in cells {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut group = vec![start];
        let mut i = 0;
        while i < group.len() {
            let a = group[i];
            for &b in cells {
                if !seen[b] && adjacent(a, b) {
                    seen[b] = true;
                    group.push(b);
                }
            }
            i += 1;
        }
        groups.push(group);
    }
    groups
}

/// Whether a pixel with the given ring configuration is simple under
/// (8, 4) connectivity: exactly one 8-component of foreground in the ring,
/// and exactly one background 4-component of the ring touching the pixel
/// edge-wise.
fn simple_from_mask(mask: u8) -> bool {
    let fg: Vec<usize> = (0..8).filter(|i| mask & (1 << i) != 0).collect();
    let bg: Vec<usize> = (0..8).filter(|i| mask & (1 << i) == 0).collect();
    let adj8 = |a: usize, b: usize| {
        let (pa, pb) = (RING[a], RING[b]);
        (pa.0 - pb.0).abs() <= 1 && (pa.1 - pb.1).abs() <= 1
    };
    let adj4 = |a: usize, b: usize| {
        let (pa, pb) = (RING[a], RING[b]);
        (pa.0 - pb.0).abs() + (pa.1 - pb.1).abs() == 1
    };
    let fg_components = count_ring_components(&fg, adj8).len();
    // even ring indices are the edge neighbours
    let bg_touching = count_ring_components(&bg, adj4)
        .iter()
        .filter(|g| g.iter().any(|i| i % 2 == 0))
        .count();
    fg_components == 1 && bg_touching == 1
}

fn simple_table() -> &'static [bool; 256] {
    static TABLE: OnceLock<[bool; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [false; 256];
        for (m, slot) in t.iter_mut().enumerate() {
            *slot = simple_from_mask(m as u8);
        }
        t
    })
}

/// Whether removing `p` preserves the topology of the foreground and background.
pub fn is_simple(img: &BinaryRaster, p: Pixel) -> bool {
    simple_table()[ring_mask(img, p) as usize]
}

/// Candidate predicate for the two peeling sub-iterations (Guo-Hall rules):
/// one 8-connected crossing, two or three neighbour pairs occupied, and the
/// directional guard that protects the far side of the stroke.
fn peel_candidate(mask: u8, second: bool) -> bool {
    let bit = |i: usize| mask & (1 << i) != 0;
    let (p2, p3, p4, p5, p6, p7, p8, p9) = (
        bit(0),
        bit(1),
        bit(2),
        bit(3),
        bit(4),
        bit(5),
        bit(6),
        bit(7),
    );
    let crossings = [
        (p2, p3 || p4),
        (p4, p5 || p6),
        (p6, p7 || p8),
        (p8, p9 || p2),
    ]
    .iter()
    .filter(|(edge, next)| !edge && *next)
    .count();
    if crossings != 1 {
        return false;
    }
    let pairs_a = [p9 || p2, p3 || p4, p5 || p6, p7 || p8]
        .iter()
        .filter(|&&b| b)
        .count();
    let pairs_b = [p2 || p3, p4 || p5, p6 || p7, p8 || p9]
        .iter()
        .filter(|&&b| b)
        .count();
    if !(2..=3).contains(&pairs_a.min(pairs_b)) {
        return false;
    }
    let guard = if second {
        (p2 || p3 || !p5) && p4
    } else {
        (p6 || p7 || !p9) && p8
    };
    !guard
}

/// A thinned raster with its junctions and endpoints labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    raster: BinaryRaster,
    junctions: Vec<Junction>,
    endpoints: Vec<Pixel>,
}

/// A branching point. Adjacent pixels with three or more neighbours form one
/// cluster; `at` is the cluster centroid rounded to the nearest pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Junction {
    pub at: Pixel,
    pub pixels: Vec<Pixel>,
}

impl Skeleton {
    /// Label an already thin raster without modifying it.
    pub fn from_thin_raster(raster: BinaryRaster) -> Self {
        let (junctions, endpoints) = classify_pixels(&raster);
        Skeleton {
            raster,
            junctions,
            endpoints,
        }
    }

    pub fn raster(&self) -> &BinaryRaster {
        &self.raster
    }

    pub fn into_raster(self) -> BinaryRaster {
        self.raster
    }

    pub fn junctions(&self) -> &[Junction] {
        &self.junctions
    }

    pub fn endpoints(&self) -> &[Pixel] {
        &self.endpoints
    }

    /// Every pixel that belongs to some junction cluster.
    pub fn junction_pixels(&self) -> impl Iterator<Item = Pixel> + '_ {
        self.junctions.iter().flat_map(|j| j.pixels.iter().copied())
    }
}

/// Reduce the foreground to a single-pixel-wide skeleton.
pub fn thin(img: &BinaryRaster) -> Result<Skeleton> {
    if img.is_empty() {
        return Err(Error::EmptyImage);
    }
    let mut work = img.clone();
    loop {
        let mut changed = false;
        for second in [false, true] {
            let candidates: Vec<Pixel> = work
                .foreground()
                .filter(|&p| peel_candidate(ring_mask(&work, p), second))
                .collect();
            // candidates were chosen on the snapshot; a pixel that only became an
            // endpoint during this pass is still peeled as long as it stays simple
            for p in candidates {
                if is_simple(&work, p) {
                    work.put(p.row, p.col, false);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    loop {
        let pixels: Vec<Pixel> = work.foreground().collect();
        let mut changed = false;
        for p in pixels {
            if removable(&work, p) {
                work.put(p.row, p.col, false);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Skeleton::from_thin_raster(work))
}

fn removable(img: &BinaryRaster, p: Pixel) -> bool {
    let mask = ring_mask(img, p);
    mask.count_ones() >= 2 && simple_table()[mask as usize]
}

/// Junction clusters and endpoints of a width-1 raster.
///
/// Junction pixels have three or more foreground 8-neighbours; 4-adjacent
/// junction pixels are merged into one [`Junction`]. Endpoints have exactly
/// one foreground 8-neighbour. Both lists are sorted.
pub fn classify_pixels(raster: &BinaryRaster) -> (Vec<Junction>, Vec<Pixel>) {
    let mut junction_mask = BinaryRaster::new(raster.width(), raster.height())
        .expect("dimensions come from a valid raster");
    let mut endpoints = Vec::new();
    for p in raster.foreground() {
        match raster.neighbor_count(p) {
            1 => endpoints.push(p),
            n if n >= 3 => junction_mask.put(p.row, p.col, true),
            _ => {}
        }
    }
    let junctions = connected_components(&junction_mask, Connectivity::Four)
        .into_iter()
        .map(|pixels| {
            let n = pixels.len() as f64;
            let row = pixels.iter().map(|p| p.row as f64).sum::<f64>() / n;
            let col = pixels.iter().map(|p| p.col as f64).sum::<f64>() / n;
            Junction {
                at: Pixel::new(row.round() as usize, col.round() as usize),
                pixels,
            }
        })
        .collect();
    (junctions, endpoints)
}
