//! SVG overlay of a skeleton and its features.

use std::fmt::Write as _;

use glyphtopo::raster::{BinaryRaster, Pixel};
use glyphtopo::topo::{Direction, FeatureKind, TopoFeature};

/// On-screen size of one pixel.
const SCALE: usize = 8;

/// Fill keyword for convexities seen from each direction.
pub fn direction_color(d: Direction) -> &'static str {
    match d {
        Direction::North => "red",
        Direction::South => "blue",
        Direction::East => "green",
        Direction::West => "magenta",
    }
}

/// Skeleton pixels as black squares; convexity supports filled with their
/// direction color; closed regions outlined in orange; straight lines
/// stroked in cyan. Coordinates are in pixel units.
pub fn svg(sk: &BinaryRaster, features: &[TopoFeature]) -> String {
    let (w, h) = (sk.width(), sk.height());
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {w} {h}">"#,
        w * SCALE,
        h * SCALE
    );
    out.push_str("<g class=\"skeleton\" fill=\"black\">\n");
    for p in sk.foreground() {
        square(&mut out, p);
    }
    out.push_str("</g>\n");

    for f in features {
        match f.kind() {
            FeatureKind::ClosedRegion => {
                out.push_str(
                    "<g class=\"closed-region\" data-shape-id=\"9\" fill=\"none\" stroke=\"orange\" stroke-width=\"0.25\">\n",
                );
                for &p in f.support() {
                    square(&mut out, p);
                }
                out.push_str("</g>\n");
            }
            FeatureKind::StraightLine => {
                let points: Vec<String> = f
                    .support()
                    .iter()
                    .map(|p| format!("{},{}", p.col as f64 + 0.5, p.row as f64 + 0.5))
                    .collect();
                let _ = writeln!(
                    out,
                    "<polyline class=\"straight-line\" data-shape-id=\"10\" fill=\"none\" stroke=\"cyan\" stroke-width=\"0.5\" points=\"{}\"/>",
                    points.join(" ")
                );
            }
            FeatureKind::Convexity(c) => {
                let _ = writeln!(
                    out,
                    "<g class=\"convexity\" data-direction=\"{}\" data-shape-id=\"{}\" fill=\"{}\" fill-opacity=\"0.7\">",
                    c.direction.letter(),
                    c.id(),
                    direction_color(c.direction)
                );
                for &p in f.support() {
                    square(&mut out, p);
                }
                out.push_str("</g>\n");
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn square(out: &mut String, p: Pixel) {
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="1" height="1"/>"#,
        p.col, p.row
    );
}
