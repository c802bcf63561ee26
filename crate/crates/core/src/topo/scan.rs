//! Directional scan-line tracing of stroke valleys.
//!
//! Every direction is handled in a common frame: scan lines are numbered
//! from the viewer inwards (`t = 0` is the line nearest the viewer) and
//! positions along a line increase left-to-right for North/South and
//! top-to-bottom for East/West.
//!
//! A valley opens wherever two consecutive runs on a line leave a
//! background gap between them. It is followed inward for as long as the
//! next line has a gap nested inside the current one. It closes when a
//! single run on the next line spans the whole gap; the length of that run
//! decides between a point and a flat apex. A valley that widens, loses a
//! side, or runs off the last line is dropped.

use crate::error::{Error, Result};
use crate::raster::{compute_bounds, BinaryRaster, Bounds, Pixel};

use super::{ApexKind, ConvexShapeClass, Direction, FeatureKind, ScanParams, TopoFeature};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Run {
    start: usize,
    end: usize,
}

impl Run {
    fn len(self) -> usize {
        self.end - self.start + 1
    }
}

struct View<'a> {
    img: &'a BinaryRaster,
    direction: Direction,
    bounds: Bounds,
}

impl<'a> View<'a> {
    fn new(img: &'a BinaryRaster, direction: Direction) -> Option<Self> {
        let bounds = compute_bounds(img).ok()?;
        Some(View {
            img,
            direction,
            bounds,
        })
    }

    fn line_count(&self) -> usize {
        let b = &self.bounds;
        match self.direction {
            Direction::North | Direction::South => b.v_end - b.v_start + 1,
            Direction::East | Direction::West => b.h_end - b.h_start + 1,
        }
    }

    fn positions(&self) -> std::ops::RangeInclusive<usize> {
        let b = &self.bounds;
        match self.direction {
            Direction::North | Direction::South => b.h_start..=b.h_end,
            Direction::East | Direction::West => b.v_start..=b.v_end,
        }
    }

    fn pixel(&self, t: usize, pos: usize) -> Pixel {
        let b = &self.bounds;
        match self.direction {
            Direction::North => Pixel::new(b.v_start + t, pos),
            Direction::South => Pixel::new(b.v_end - t, pos),
            Direction::East => Pixel::new(pos, b.h_end - t),
            Direction::West => Pixel::new(pos, b.h_start + t),
        }
    }

    fn runs(&self, t: usize) -> Vec<Run> {
        let mut runs = Vec::new();
        let mut open: Option<usize> = None;
        for pos in self.positions() {
            let p = self.pixel(t, pos);
            match (self.img.at(p.row, p.col), open) {
                (true, None) => open = Some(pos),
                (false, Some(start)) => {
                    runs.push(Run {
                        start,
                        end: pos - 1,
                    });
                    open = None;
                }
                _ => {}
            }
        }
        if let Some(start) = open {
            runs.push(Run {
                start,
                end: *self.positions().end(),
            });
        }
        runs
    }
}

/// Foreground pixels that begin a background-to-foreground transition on one
/// scan line, in traversal order. `line_index` is a row for North/South and
/// a column for East/West; rows are traversed left to right and columns top
/// to bottom.
pub fn scan_transitions(
    sk: &BinaryRaster,
    direction: Direction,
    line_index: usize,
) -> Result<Vec<Pixel>> {
    let (len, limit) = match direction {
        Direction::North | Direction::South => (sk.width(), sk.height()),
        Direction::East | Direction::West => (sk.height(), sk.width()),
    };
    if line_index >= limit {
        let (row, col) = match direction {
            Direction::North | Direction::South => (line_index, 0),
            Direction::East | Direction::West => (0, line_index),
        };
        return Err(Error::OutOfBounds {
            row,
            col,
            width: sk.width(),
            height: sk.height(),
        });
    }
    let at = |i: usize| match direction {
        Direction::North | Direction::South => Pixel::new(line_index, i),
        Direction::East | Direction::West => Pixel::new(i, line_index),
    };
    let mut cuts = Vec::new();
    let mut prev = false;
    for i in 0..len {
        let p = at(i);
        let cur = sk.at(p.row, p.col);
        if cur && !prev {
            cuts.push(p);
        }
        prev = cur;
    }
    Ok(cuts)
}

/// A converged valley: the stroke pixels bounding the gap on every traced
/// line plus the terminal run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valley {
    pub support: Vec<Pixel>,
    pub apex: ApexKind,
    pub apex_run: Vec<Pixel>,
}

struct Trace {
    // background gap on the last traced line, inclusive positions
    lo: usize,
    hi: usize,
    support: Vec<Pixel>,
}

/// Trace every valley visible from `direction`.
pub fn trace_valleys(sk: &BinaryRaster, direction: Direction, params: ScanParams) -> Vec<Valley> {
    let Some(view) = View::new(sk, direction) else {
        return Vec::new();
    };
    let mut valleys = Vec::new();
    let mut open: Vec<Trace> = Vec::new();

    for t in 0..view.line_count() {
        let runs = view.runs(t);
        let mut next: Vec<Trace> = Vec::new();
        let mut continued = vec![false; open.len()];

        for pair in runs.windows(2) {
            let (left, right) = (pair[0], pair[1]);
            let (lo, hi) = (left.end + 1, right.start - 1);
            let sides = [view.pixel(t, left.end), view.pixel(t, right.start)];
            // gaps on one line are disjoint, so at most one open trace nests this gap
            let parent = open.iter().position(|tr| tr.lo <= lo && hi <= tr.hi);
            let mut support = match parent {
                Some(i) => {
                    continued[i] = true;
                    open[i].support.clone()
                }
                None => Vec::new(),
            };
            support.extend(sides);
            next.push(Trace { lo, hi, support });
        }

        for (trace, _) in open.into_iter().zip(continued).filter(|(_, c)| !c) {
            let Some(run) = runs
                .iter()
                .find(|r| r.start <= trace.lo && trace.hi <= r.end)
            else {
                continue;
            };
            let apex_run: Vec<Pixel> = (run.start..=run.end)
                .map(|pos| view.pixel(t, pos))
                .collect();
            let apex = if run.len() >= params.xi() {
                ApexKind::Flat
            } else {
                ApexKind::Point
            };
            let mut support = trace.support;
            support.extend(apex_run.iter().copied());
            support.sort_unstable();
            support.dedup();
            valleys.push(Valley {
                support,
                apex,
                apex_run,
            });
        }
        open = next;
    }
    valleys
}

/// Convexities seen from one direction, sorted canonically.
pub fn detect_convexities(
    sk: &BinaryRaster,
    direction: Direction,
    params: ScanParams,
) -> Vec<TopoFeature> {
    let mut features: Vec<TopoFeature> = trace_valleys(sk, direction, params)
        .into_iter()
        .map(|v| {
            let kind = FeatureKind::Convexity(ConvexShapeClass {
                direction,
                apex: v.apex,
            });
            TopoFeature::new(kind, v.support).expect("valley support always holds the apex run")
        })
        .collect();
    features.sort_by(TopoFeature::canonical_cmp);
    features
}
