use crate::raster::{BinaryRaster, Pixel};

use super::{FeatureKind, ScanParams, TopoFeature};

/// Rows a line may wander across: one pixel of jitter either side of its centre.
const BAND_ROWS: usize = 3;

/// Horizontal head lines, looked for from the North only.
///
/// A line is a chain with one pixel per column over consecutive columns,
/// each step moving at most one row, confined to a band of three rows.
/// Chains are taken longest first (ties: topmost, then leftmost start) and
/// their pixels removed before searching again, until the longest remaining
/// chain is shorter than `epsilon`.
pub fn detect_straight_lines(sk: &BinaryRaster, params: ScanParams) -> Vec<TopoFeature> {
    let mut work = sk.clone();
    let mut lines = Vec::new();
    while let Some(chain) = longest_chain(&work) {
        if chain.len() < params.epsilon() {
            break;
        }
        for p in &chain {
            work.put(p.row, p.col, false);
        }
        lines.push(TopoFeature::new(FeatureKind::StraightLine, chain).expect("chain is nonempty"));
    }
    lines.sort_by(TopoFeature::canonical_cmp);
    lines
}

#[derive(Clone, Copy)]
struct Cell {
    len: usize,
    start: Pixel,
    prev_row: Option<usize>,
}

struct BandBest {
    len: usize,
    start: Pixel,
    end: Pixel,
}

impl BandBest {
    fn beats(&self, other: &BandBest) -> bool {
        self.len > other.len
            || (self.len == other.len && (self.start, self.end) < (other.start, other.end))
    }
}

fn longest_chain(img: &BinaryRaster) -> Option<Vec<Pixel>> {
    let (w, h) = (img.width(), img.height());
    let mut best: Option<(BandBest, Vec<Option<Cell>>, usize)> = None;
    for top in 0..h {
        let rows = BAND_ROWS.min(h - top);
        let mut cells: Vec<Option<Cell>> = vec![None; rows * w];
        let mut band_best: Option<BandBest> = None;
        for c in 0..w {
            for i in 0..rows {
                if !img.at(top + i, c) {
                    continue;
                }
                let here = Pixel::new(top + i, c);
                let mut cell = Cell {
                    len: 1,
                    start: here,
                    prev_row: None,
                };
                if c > 0 {
                    for j in i.saturating_sub(1)..=(i + 1).min(rows - 1) {
                        if let Some(prev) = cells[j * w + c - 1] {
                            if prev.len + 1 > cell.len
                                || (prev.len + 1 == cell.len && prev.start < cell.start)
                            {
                                cell = Cell {
                                    len: prev.len + 1,
                                    start: prev.start,
                                    prev_row: Some(j),
                                };
                            }
                        }
                    }
                }
                cells[i * w + c] = Some(cell);
                let candidate = BandBest {
                    len: cell.len,
                    start: cell.start,
                    end: here,
                };
                if band_best.as_ref().is_none_or(|b| candidate.beats(b)) {
                    band_best = Some(candidate);
                }
            }
        }
        if let Some(bb) = band_best {
            if best.as_ref().is_none_or(|(b, _, _)| bb.beats(b)) {
                best = Some((bb, cells, top));
            }
        }
    }
    let (bb, cells, top) = best?;
    let mut chain = vec![bb.end];
    let (mut i, mut c) = (bb.end.row - top, bb.end.col);
    while let Some(j) = cells[i * w + c].and_then(|cell| cell.prev_row) {
        i = j;
        c -= 1;
        chain.push(Pixel::new(top + i, c));
    }
    chain.reverse();
    Some(chain)
}
