//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use glyphtopo::graph::ShapeGraph;
use glyphtopo::raster::{BinaryRaster, Pixel};
use glyphtopo::topo::{FeatureKind, TopoFeature};
use rand::rngs::StdRng;
use rand::Rng;

pub fn ring() -> BinaryRaster {
    BinaryRaster::from_ascii(&[
        "...#...", //
        "..#.#..", //
        ".#...#.", //
        "#.....#", //
        ".#...#.", //
        "..#.#..", //
        "...#...",
    ])
    .unwrap()
}

pub fn grid(img: &BinaryRaster) -> Vec<Vec<bool>> {
    (0..img.height())
        .map(|r| {
            (0..img.width())
                .map(|c| img.get(Pixel::new(r, c)).unwrap())
                .collect()
        })
        .collect()
}

/// Flood-fill labelling of cells equal to `value`; returns the components.
pub fn flood(cells: &[Vec<bool>], value: bool, eight: bool) -> Vec<Vec<(usize, usize)>> {
    let h = cells.len();
    let w = if h == 0 { 0 } else { cells[0].len() };
    let mut seen = vec![vec![false; w]; h];
    let mut out = Vec::new();
    for r in 0..h {
        for c in 0..w {
            if cells[r][c] != value || seen[r][c] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([(r, c)]);
            seen[r][c] = true;
            while let Some((y, x)) = queue.pop_front() {
                comp.push((y, x));
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        if (dy == 0 && dx == 0) || (!eight && dy != 0 && dx != 0) {
                            continue;
                        }
                        let (ny, nx) = (y as i64 + dy, x as i64 + dx);
                        if ny < 0 || nx < 0 || ny >= h as i64 || nx >= w as i64 {
                            continue;
                        }
                        let (ny, nx) = (ny as usize, nx as usize);
                        if cells[ny][nx] == value && !seen[ny][nx] {
                            seen[ny][nx] = true;
                            queue.push_back((ny, nx));
                        }
                    }
                }
            }
            out.push(comp);
        }
    }
    out
}

pub fn component_count_8(img: &BinaryRaster) -> usize {
    flood(&grid(img), true, true).len()
}

/// Background 4-components that do not reach the image frame.
pub fn hole_count(img: &BinaryRaster) -> usize {
    let cells = grid(img);
    let (h, w) = (img.height(), img.width());
    flood(&cells, false, false)
        .into_iter()
        .filter(|comp| {
            comp.iter()
                .all(|&(r, c)| r > 0 && c > 0 && r + 1 < h && c + 1 < w)
        })
        .count()
}

/// Unions of filled rectangles, discs and thick segments, up to 64x64.
pub fn random_blobs(rng: &mut StdRng) -> BinaryRaster {
    let w = rng.gen_range(8..=64);
    let h = rng.gen_range(8..=64);
    let mut img = BinaryRaster::new(w, h).unwrap();
    let paint = |img: &mut BinaryRaster, r: i64, c: i64| {
        if r >= 0 && c >= 0 && (r as usize) < h && (c as usize) < w {
            img.set(Pixel::new(r as usize, c as usize), true).unwrap();
        }
    };
    for _ in 0..rng.gen_range(1..=4) {
        match rng.gen_range(0..3) {
            0 => {
                let (r0, c0) = (rng.gen_range(0..h) as i64, rng.gen_range(0..w) as i64);
                let (rh, cw) = (
                    rng.gen_range(1..=h / 2 + 1) as i64,
                    rng.gen_range(1..=w / 2 + 1) as i64,
                );
                for r in r0..r0 + rh {
                    for c in c0..c0 + cw {
                        paint(&mut img, r, c);
                    }
                }
            }
            1 => {
                let (cr, cc) = (rng.gen_range(0..h) as i64, rng.gen_range(0..w) as i64);
                let rad = rng.gen_range(1..=12i64);
                let hollow = rng.gen_bool(0.4);
                for r in cr - rad..=cr + rad {
                    for c in cc - rad..=cc + rad {
                        let d2 = (r - cr).pow(2) + (c - cc).pow(2);
                        if d2 <= rad * rad && !(hollow && d2 < (rad / 2).pow(2)) {
                            paint(&mut img, r, c);
                        }
                    }
                }
            }
            _ => {
                let (r0, c0) = (rng.gen_range(0..h) as f64, rng.gen_range(0..w) as f64);
                let (r1, c1) = (rng.gen_range(0..h) as f64, rng.gen_range(0..w) as f64);
                let half = rng.gen_range(0..=3i64);
                let steps = ((r1 - r0).abs().max((c1 - c0).abs()) as usize).max(1);
                for i in 0..=steps {
                    let t = i as f64 / steps as f64;
                    let (r, c) = (
                        (r0 + t * (r1 - r0)).round() as i64,
                        (c0 + t * (c1 - c0)).round() as i64,
                    );
                    for dr in -half..=half {
                        for dc in -half..=half {
                            paint(&mut img, r + dr, c + dc);
                        }
                    }
                }
            }
        }
    }
    if img.is_empty() {
        img.set(Pixel::new(h / 2, w / 2), true).unwrap();
    }
    img
}

/// A width-1 North-facing cup: a bottom run of `len` pixels with monotone
/// sides that climb outwards. Returns the glyph and the bottom run length.
///
/// Side steps (read upwards) are straight up, diagonal outwards or
/// horizontal outwards, with a diagonal always between a vertical and a
/// horizontal step. Each side meets the bottom run diagonally.
pub fn valley_glyph(rng: &mut StdRng) -> (BinaryRaster, usize) {
    let len = rng.gen_range(1..=9usize);
    let side = |rng: &mut StdRng| -> Vec<(i64, i64)> {
        // offsets (up, out) from the pixel diagonal to the bottom run's end
        let mut pts = vec![(0i64, 0i64)];
        let mut prev = 'D';
        for _ in 0..rng.gen_range(1..=4) {
            let step = loop {
                let s = ['U', 'D', 'H'][rng.gen_range(0..3)];
                if !((prev == 'U' && s == 'H') || (prev == 'H' && s == 'U')) {
                    break s;
                }
            };
            let (u, o) = *pts.last().unwrap();
            pts.push(match step {
                'U' => (u + 1, o),
                'D' => (u + 1, o + 1),
                _ => (u, o + 1),
            });
            prev = step;
        }
        pts
    };
    let (left, right) = (side(rng), side(rng));
    let up = left.iter().chain(&right).map(|p| p.0).max().unwrap();
    let lo = left.iter().map(|p| p.1).max().unwrap();
    let ro = right.iter().map(|p| p.1).max().unwrap();
    let bottom_row = (up + 2) as usize;
    let a = (lo + 2) as usize;
    let b = a + len - 1;
    let width = b + ro as usize + 3;
    let mut pixels: Vec<Pixel> = (a..=b).map(|c| Pixel::new(bottom_row, c)).collect();
    for &(u, o) in &left {
        pixels.push(Pixel::new(bottom_row - 1 - u as usize, a - 1 - o as usize));
    }
    for &(u, o) in &right {
        pixels.push(Pixel::new(bottom_row - 1 - u as usize, b + 1 + o as usize));
    }
    (
        BinaryRaster::from_foreground(width, bottom_row + 2, pixels).unwrap(),
        len,
    )
}

/// Width-1 skeletons built from cycles (outlines, thetas, windows,
/// diamonds, lollipops) and trees (combs, plus signs, walks) in a grid of
/// cells that never touch.
pub fn cycles_and_trees(rng: &mut StdRng) -> BinaryRaster {
    const CELL: usize = 14;
    let (gr, gc) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    let mut img = BinaryRaster::new(gc * CELL, gr * CELL).unwrap();
    for cy in 0..gr {
        for cx in 0..gc {
            let (oy, ox) = (cy * CELL + 1, cx * CELL + 1);
            let mut put = |r: usize, c: usize| img.set(Pixel::new(oy + r, ox + c), true).unwrap();
            let (h, w) = (rng.gen_range(3..=11usize), rng.gen_range(3..=11usize));
            let outline = |put: &mut dyn FnMut(usize, usize)| {
                for c in 0..w {
                    put(0, c);
                    put(h - 1, c);
                }
                for r in 0..h {
                    put(r, 0);
                    put(r, w - 1);
                }
            };
            match rng.gen_range(0..8) {
                0 => outline(&mut put),
                1 => {
                    outline(&mut put);
                    if h >= 5 {
                        for c in 0..w {
                            put(h / 2, c);
                        }
                    }
                }
                2 => {
                    outline(&mut put);
                    if h >= 5 && w >= 5 {
                        for c in 0..w {
                            put(h / 2, c);
                        }
                        for r in 0..h {
                            put(r, w / 2);
                        }
                    }
                }
                3 => {
                    let k = rng.gen_range(1..=5usize);
                    for i in 0..=k {
                        put(i, k + i);
                        put(i, k - i);
                        put(2 * k - i, k + i);
                        put(2 * k - i, k - i);
                    }
                }
                4 => {
                    let (h, w) = (h.min(7), w.min(7));
                    for c in 0..w {
                        put(0, c);
                        put(h - 1, c);
                    }
                    for r in 0..h {
                        put(r, 0);
                        put(r, w - 1);
                    }
                    for c in w..12 {
                        put(h / 2, c);
                    }
                }
                5 => {
                    for c in 0..w {
                        put(0, c);
                    }
                    for c in (0..w).step_by(2) {
                        for r in 1..rng.gen_range(2..=h) {
                            put(r, c);
                        }
                    }
                }
                6 => {
                    for c in 0..w {
                        put(h / 2, c);
                    }
                    for r in 0..h {
                        put(r, w / 2);
                    }
                }
                _ => {
                    let (mut r, mut c) = (rng.gen_range(0..12usize), rng.gen_range(0..12usize));
                    for _ in 0..rng.gen_range(4..40) {
                        put(r, c);
                        match rng.gen_range(0..4) {
                            0 if r > 0 => r -= 1,
                            1 if r < 11 => r += 1,
                            2 if c > 0 => c -= 1,
                            3 if c < 11 => c += 1,
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    img
}

/// Width-1 diamond outline with the given radius.
pub fn diamond(radius: usize) -> BinaryRaster {
    let n = 2 * radius + 1;
    let pixels = (0..n)
        .flat_map(|r| (0..n).map(move |c| Pixel::new(r, c)))
        .filter(|p| {
            (p.row as i64 - radius as i64).abs() + (p.col as i64 - radius as i64).abs()
                == radius as i64
        });
    BinaryRaster::from_foreground(n, n, pixels).unwrap()
}

/// The radius-5 diamond with one upper-left pixel removed. Every
/// directional valley of the closed diamond survives the break.
pub fn opened_diamond() -> BinaryRaster {
    let mut img = diamond(5);
    img.set(Pixel::new(2, 3), false).unwrap();
    img
}

/// A U with vertical sides and a flat bottom run of `bottom` pixels.
pub fn u_glyph(bottom: usize) -> BinaryRaster {
    let mut pixels: Vec<Pixel> = (0..bottom).map(|c| Pixel::new(4, 2 + c)).collect();
    for r in 0..4 {
        pixels.push(Pixel::new(r, 1));
        pixels.push(Pixel::new(r, 2 + bottom));
    }
    BinaryRaster::from_foreground(bottom + 4, 6, pixels).unwrap()
}

/// A head line of `len` pixels centred over a separate arch that opens
/// downward.
pub fn bar_over_arch(len: usize) -> BinaryRaster {
    let start = (25 - len) / 2;
    let mut pixels: Vec<Pixel> = (start..start + len).map(|c| Pixel::new(0, c)).collect();
    for i in 0..5 {
        pixels.push(Pixel::new(3 + i, 12 - i));
        pixels.push(Pixel::new(3 + i, 12 + i));
    }
    BinaryRaster::from_foreground(25, 9, pixels).unwrap()
}

pub fn v_glyph() -> BinaryRaster {
    BinaryRaster::from_ascii(&["#...#", ".#.#.", "..#.."]).unwrap()
}

pub fn twin_v() -> BinaryRaster {
    BinaryRaster::from_ascii(&["#...#..#...#", ".#.#....#.#.", "..#......#.."]).unwrap()
}

pub fn random_graph(rng: &mut StdRng) -> ShapeGraph {
    let n = rng.gen_range(0..12);
    let nodes: Vec<TopoFeature> = (0..n)
        .map(|_| {
            let kind = FeatureKind::from_shape_id(rng.gen_range(1..=10)).unwrap();
            let support = (0..rng.gen_range(1..30))
                .map(|_| Pixel::new(rng.gen_range(0..80), rng.gen_range(0..80)))
                .collect();
            TopoFeature::new(kind, support).unwrap()
        })
        .collect();
    let edges: Vec<(usize, usize)> = if n < 2 {
        Vec::new()
    } else {
        (0..rng.gen_range(0..2 * n))
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .filter(|(a, b)| a != b)
            .collect()
    };
    ShapeGraph::from_parts(nodes, edges).unwrap()
}

/// Node and edge statements of a DOT graph, checked for basic well-formedness.
pub fn parse_dot(dot: &str) -> (Vec<String>, Vec<(String, String)>) {
    let lines: Vec<&str> = dot.lines().collect();
    assert_eq!(lines.first(), Some(&"graph shape {"));
    assert_eq!(lines.last(), Some(&"}"));
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for line in &lines[1..lines.len() - 1] {
        let stmt = line
            .trim()
            .strip_suffix(';')
            .expect("statement ends with ';'");
        if let Some((a, b)) = stmt.split_once(" -- ") {
            edges.push((a.to_string(), b.to_string()));
        } else {
            let (id, attrs) = stmt.split_once(' ').expect("node statement has attributes");
            assert!(attrs.starts_with('[') && attrs.ends_with(']'));
            assert_eq!(attrs.matches('"').count() % 2, 0);
            nodes.push(id.to_string());
        }
    }
    for (a, b) in &edges {
        assert!(nodes.contains(a) && nodes.contains(b));
    }
    (nodes, edges)
}
