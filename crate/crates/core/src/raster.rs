//! Binary and grayscale pixel grids plus the grid primitives the rest of the
//! pipeline relies on: Otsu binarization, foreground bounds, and connected
//! component labelling.
//!
//! Coordinates are `(row, col)` with row 0 at the top and col 0 at the left.
//! Foreground (`true`) is the dark stroke; background (`false`) is paper.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pixel coordinate. Ordering is lexicographic on `(row, col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pixel {
    pub row: usize,
    pub col: usize,
}

impl Pixel {
    pub const fn new(row: usize, col: usize) -> Self {
        Pixel { row, col }
    }

    /// Offsets the pixel, returning `None` if it would leave the non-negative quadrant.
    pub fn offset(self, dr: isize, dc: isize) -> Option<Pixel> {
        Some(Pixel {
            row: self.row.checked_add_signed(dr)?,
            col: self.col.checked_add_signed(dc)?,
        })
    }

    pub fn is_4_adjacent(self, other: Pixel) -> bool {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col) == 1
    }

    pub fn is_8_adjacent(self, other: Pixel) -> bool {
        self != other && self.row.abs_diff(other.row) <= 1 && self.col.abs_diff(other.col) <= 1
    }
}

/// Pixel adjacency used by component labelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connectivity {
    /// Edge-sharing neighbours only.
    Four,
    /// Edge and corner neighbours.
    Eight,
}

impl Connectivity {
    pub fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &NEIGHBORS_4,
            Connectivity::Eight => &NEIGHBORS_8,
        }
    }
}

pub(crate) const NEIGHBORS_4: [(isize, isize); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
pub(crate) const NEIGHBORS_8: [(isize, isize); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

/// Row-major binary image. `true` marks a foreground (stroke) pixel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryRaster {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl BinaryRaster {
    /// An all-background raster.
    pub fn new(width: usize, height: usize) -> Result<Self> {
        check_dims(width, height)?;
        Ok(BinaryRaster {
            width,
            height,
            pixels: vec![false; width * height],
        })
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        check_dims(width, height)?;
        if pixels.len() != width * height {
            return Err(Error::BufferSize {
                expected: width * height,
                actual: pixels.len(),
            });
        }
        Ok(BinaryRaster {
            width,
            height,
            pixels,
        })
    }

    /// Builds a raster from rows of text where `#`, `1`, `X` or `x` mark foreground.
    /// Every other character is background. All rows must have the same length.
    pub fn from_ascii(rows: &[&str]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        check_dims(width, height)?;
        let mut pixels = Vec::with_capacity(width * height);
        for row in rows {
            if row.chars().count() != width {
                return Err(Error::BufferSize {
                    expected: width * height,
                    actual: row.chars().count() * height,
                });
            }
            pixels.extend(row.chars().map(|c| matches!(c, '#' | '1' | 'X' | 'x')));
        }
        Ok(BinaryRaster {
            width,
            height,
            pixels,
        })
    }

    /// A raster of the given size with exactly the listed pixels set.
    pub fn from_foreground(
        width: usize,
        height: usize,
        foreground: impl IntoIterator<Item = Pixel>,
    ) -> Result<Self> {
        let mut raster = BinaryRaster::new(width, height)?;
        for p in foreground {
            raster.set(p, true)?;
        }
        Ok(raster)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn contains(&self, p: Pixel) -> bool {
        p.row < self.height && p.col < self.width
    }

    /// Bounds-checked read.
    pub fn get(&self, p: Pixel) -> Result<bool> {
        if !self.contains(p) {
            return Err(self.out_of_bounds(p));
        }
        Ok(self.pixels[p.row * self.width + p.col])
    }

    /// Bounds-checked write.
    pub fn set(&mut self, p: Pixel, value: bool) -> Result<()> {
        if !self.contains(p) {
            return Err(self.out_of_bounds(p));
        }
        self.pixels[p.row * self.width + p.col] = value;
        Ok(())
    }

    /// Foreground test for neighbourhood work: coordinates beyond the frame
    /// read as background, as if the raster were padded with paper.
    pub fn is_foreground_padded(&self, row: isize, col: isize) -> bool {
        row >= 0
            && col >= 0
            && (row as usize) < self.height
            && (col as usize) < self.width
            && self.pixels[row as usize * self.width + col as usize]
    }

    pub(crate) fn at(&self, row: usize, col: usize) -> bool {
        self.pixels[row * self.width + col]
    }

    pub(crate) fn put(&mut self, row: usize, col: usize, value: bool) {
        self.pixels[row * self.width + col] = value;
    }

    /// Foreground pixels in row-major order.
    pub fn foreground(&self) -> impl Iterator<Item = Pixel> + '_ {
        self.pixels
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(move |(i, _)| Pixel::new(i / self.width, i % self.width))
    }

    pub fn count_foreground(&self) -> usize {
        self.pixels.iter().filter(|&&v| v).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.pixels.iter().any(|&v| v)
    }

    /// Number of foreground pixels among the eight neighbours of `p`.
    pub fn neighbor_count(&self, p: Pixel) -> usize {
        let (r, c) = (p.row as isize, p.col as isize);
        NEIGHBORS_8
            .iter()
            .filter(|(dr, dc)| self.is_foreground_padded(r + dr, c + dc))
            .count()
    }

    /// Foreground neighbours of `p` under the given connectivity.
    pub fn neighbors(
        &self,
        p: Pixel,
        connectivity: Connectivity,
    ) -> impl Iterator<Item = Pixel> + '_ {
        connectivity.offsets().iter().filter_map(move |&(dr, dc)| {
            let q = p.offset(dr, dc)?;
            (self.contains(q) && self.at(q.row, q.col)).then_some(q)
        })
    }

    /// Mirror top-to-bottom.
    pub fn flip_vertical(&self) -> BinaryRaster {
        let mut out = self.clone();
        for r in 0..self.height {
            for c in 0..self.width {
                out.put(self.height - 1 - r, c, self.at(r, c));
            }
        }
        out
    }

    /// Mirror left-to-right.
    pub fn flip_horizontal(&self) -> BinaryRaster {
        let mut out = self.clone();
        for r in 0..self.height {
            for c in 0..self.width {
                out.put(r, self.width - 1 - c, self.at(r, c));
            }
        }
        out
    }

    /// Swap rows and columns.
    pub fn transpose(&self) -> BinaryRaster {
        let mut out = BinaryRaster {
            width: self.height,
            height: self.width,
            pixels: vec![false; self.pixels.len()],
        };
        for r in 0..self.height {
            for c in 0..self.width {
                out.put(c, r, self.at(r, c));
            }
        }
        out
    }

    /// Copy into a larger canvas with the content shifted by `(dr, dc)`.
    pub fn translated(&self, dr: usize, dc: usize) -> BinaryRaster {
        let mut out = BinaryRaster {
            width: self.width + dc,
            height: self.height + dr,
            pixels: vec![false; (self.width + dc) * (self.height + dr)],
        };
        for p in self.foreground() {
            out.put(p.row + dr, p.col + dc, true);
        }
        out
    }

    fn out_of_bounds(&self, p: Pixel) -> Error {
        Error::OutOfBounds {
            row: p.row,
            col: p.col,
            width: self.width,
            height: self.height,
        }
    }
}

/// Row-major 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayRaster {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayRaster {
    pub fn from_pixels(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        check_dims(width, height)?;
        if pixels.len() != width * height {
            return Err(Error::BufferSize {
                expected: width * height,
                actual: pixels.len(),
            });
        }
        Ok(GrayRaster {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, p: Pixel) -> Result<u8> {
        if p.row >= self.height || p.col >= self.width {
            return Err(Error::OutOfBounds {
                row: p.row,
                col: p.col,
                width: self.width,
                height: self.height,
            });
        }
        Ok(self.pixels[p.row * self.width + p.col])
    }

    pub fn histogram(&self) -> [u64; 256] {
        let mut hist = [0u64; 256];
        for &v in &self.pixels {
            hist[v as usize] += 1;
        }
        hist
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions { width, height });
    }
    Ok(())
}

/// Inclusive bounding box of the foreground: columns `h_start..=h_end`,
/// rows `v_start..=v_end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub h_start: usize,
    pub h_end: usize,
    pub v_start: usize,
    pub v_end: usize,
}

/// Tight bounding box of the foreground pixels.
pub fn compute_bounds(img: &BinaryRaster) -> Result<Bounds> {
    let mut bounds: Option<Bounds> = None;
    for p in img.foreground() {
        let b = bounds.get_or_insert(Bounds {
            h_start: p.col,
            h_end: p.col,
            v_start: p.row,
            v_end: p.row,
        });
        b.h_start = b.h_start.min(p.col);
        b.h_end = b.h_end.max(p.col);
        b.v_end = p.row;
    }
    bounds.ok_or(Error::EmptyImage)
}

/// Otsu threshold over the 256-bin histogram. Pixels with intensity strictly
/// below the returned value belong to the dark class. Candidate thresholds
/// are `0..=255`; ties keep the lowest candidate.
pub fn otsu_threshold(img: &GrayRaster) -> Result<u8> {
    let hist = img.histogram();
    let first = img.pixels[0];
    if hist[first as usize] == img.pixels.len() as u64 {
        return Err(Error::ConstantImage(first));
    }

    let total = img.pixels.len() as u128;
    let sum_all: u128 = hist
        .iter()
        .enumerate()
        .map(|(v, &n)| v as u128 * n as u128)
        .sum();

    // between-class variance is (s0 * N - S * n0)^2 / (n0 * n1) up to the
    // constant factor N^2; kept as that exact fraction
    let mut best_t = 0u8;
    let mut best: Option<(u128, u128)> = None;
    let (mut count_dark, mut sum_dark) = (0u128, 0u128);
    for t in 0..=255usize {
        if t > 0 {
            count_dark += hist[t - 1] as u128;
            sum_dark += (t - 1) as u128 * hist[t - 1] as u128;
        }
        let count_light = total - count_dark;
        let var = if count_dark == 0 || count_light == 0 {
            (0, 1)
        } else {
            (
                (sum_dark * total).abs_diff(sum_all * count_dark),
                count_dark * count_light,
            )
        };
        if best.is_none_or(|b| fraction_sq_gt(var, b)) {
            best = Some(var);
            best_t = t as u8;
        }
    }
    Ok(best_t)
}

/// `a.0^2 / a.1 > b.0^2 / b.1`, exact unless the squares overflow.
fn fraction_sq_gt(a: (u128, u128), b: (u128, u128)) -> bool {
    let exact =
        a.0.checked_mul(a.0)
            .zip(b.0.checked_mul(b.0))
            .map(|(na, nb)| {
                let (qa, ra) = (na / a.1, na % a.1);
                let (qb, rb) = (nb / b.1, nb % b.1);
                qa > qb || (qa == qb && ra * b.1 > rb * a.1)
            });
    exact.unwrap_or_else(|| {
        let f = |(n, d): (u128, u128)| (n as f64) * (n as f64) / d as f64;
        f(a) > f(b)
    })
}

/// Binarize with Otsu's threshold; dark pixels (below the threshold) become foreground.
pub fn otsu_binarize(img: &GrayRaster) -> Result<BinaryRaster> {
    let t = otsu_threshold(img)?;
    BinaryRaster::from_pixels(
        img.width,
        img.height,
        img.pixels.iter().map(|&v| v < t).collect(),
    )
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new() -> Self {
        DisjointSets { parent: Vec::new() }
    }

    fn make(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Labels pixels whose value equals `value` with a two-pass union-find scan.
/// Returns per-pixel labels (usize::MAX for pixels of the other value) and
/// the label count. Labels are dense and ordered by first appearance in
/// row-major order.
fn label_value(img: &BinaryRaster, value: bool, connectivity: Connectivity) -> (Vec<usize>, usize) {
    const NONE: usize = usize::MAX;
    let (w, h) = (img.width, img.height);
    let mut labels = vec![NONE; w * h];
    let mut sets = DisjointSets::new();
    // already-visited neighbours in raster order
    let prior: &[(isize, isize)] = match connectivity {
        Connectivity::Four => &[(-1, 0), (0, -1)],
        Connectivity::Eight => &[(-1, -1), (-1, 0), (-1, 1), (0, -1)],
    };
    for r in 0..h {
        for c in 0..w {
            if img.at(r, c) != value {
                continue;
            }
            let mut label = NONE;
            for &(dr, dc) in prior {
                let (nr, nc) = (r as isize + dr, c as isize + dc);
                if nr < 0 || nc < 0 || nc as usize >= w {
                    continue;
                }
                let l = labels[nr as usize * w + nc as usize];
                if l == NONE {
                    continue;
                }
                if label == NONE {
                    label = l;
                } else {
                    sets.union(label, l);
                }
            }
            labels[r * w + c] = if label == NONE { sets.make() } else { label };
        }
    }
    let mut dense = vec![NONE; sets.parent.len()];
    let mut next = 0;
    for l in labels.iter_mut().filter(|l| **l != NONE) {
        let root = sets.find(*l);
        if dense[root] == NONE {
            dense[root] = next;
            next += 1;
        }
        *l = dense[root];
    }
    (labels, next)
}

fn group_labels(img: &BinaryRaster, labels: &[usize], count: usize) -> Vec<Vec<Pixel>> {
    let mut groups = vec![Vec::new(); count];
    for (i, &l) in labels.iter().enumerate() {
        if l != usize::MAX {
            groups[l].push(Pixel::new(i / img.width, i % img.width));
        }
    }
    groups
}

/// Maximal connected sets of foreground pixels. Components are ordered by
/// their smallest `(row, col)` member; pixels inside a component are sorted.
pub fn connected_components(img: &BinaryRaster, connectivity: Connectivity) -> Vec<Vec<Pixel>> {
    let (labels, count) = label_value(img, true, connectivity);
    group_labels(img, &labels, count)
}

/// Background 4-components that do not touch the frame, i.e. the holes
/// enclosed by the foreground. Ordered like [`connected_components`].
pub fn holes(img: &BinaryRaster) -> Vec<Vec<Pixel>> {
    let (labels, count) = label_value(img, false, Connectivity::Four);
    let mut touches_frame = vec![false; count];
    for r in 0..img.height {
        for c in 0..img.width {
            if r == 0 || c == 0 || r + 1 == img.height || c + 1 == img.width {
                let l = labels[r * img.width + c];
                if l != usize::MAX {
                    touches_frame[l] = true;
                }
            }
        }
    }
    group_labels(img, &labels, count)
        .into_iter()
        .enumerate()
        .filter(|(l, _)| !touches_frame[*l])
        .map(|(_, g)| g)
        .collect()
}

/// Number of background 4-components of the image padded with one ring of
/// background: the outer background plus one per hole.
pub fn background_component_count(img: &BinaryRaster) -> usize {
    holes(img).len() + 1
}
