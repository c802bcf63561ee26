//! Image to graph: binarize (graymaps only), thin, extract, build the graph.

use crate::error::{Error, Result};
use crate::graph::{build_graph, ShapeGraph};
use crate::netpbm::{decode, NetpbmImage};
use crate::par::{map_with, Execution};
use crate::raster::{otsu_binarize, BinaryRaster};
use crate::skeleton::{thin, Skeleton};
use crate::topo::{extract_with_directions, Direction, ScanParams, TopoFeature};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pipeline {
    pub params: ScanParams,
    /// Scanned directions; emitted in N, S, E, W order whatever the order here.
    pub directions: Vec<Direction>,
    /// Treat the input as an already width-1 skeleton.
    pub skip_thinning: bool,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            params: ScanParams::default(),
            directions: Direction::ALL.to_vec(),
            skip_thinning: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub skeleton: Skeleton,
    /// In extraction order: closed regions, straight lines, convexities.
    pub features: Vec<TopoFeature>,
    pub graph: ShapeGraph,
}

impl Pipeline {
    pub fn run(&self, img: &BinaryRaster) -> Result<Extraction> {
        if img.is_empty() {
            return Err(Error::EmptyImage);
        }
        let skeleton = if self.skip_thinning {
            Skeleton::from_thin_raster(img.clone())
        } else {
            thin(img)?
        };
        let features = extract_with_directions(skeleton.raster(), self.params, &self.directions);
        let graph = build_graph(&features, skeleton.raster());
        Ok(Extraction {
            skeleton,
            features,
            graph,
        })
    }

    /// Decode and run; one result per input, in input order.
    pub fn run_batch(&self, inputs: &[Vec<u8>], execution: Execution) -> Vec<Result<Extraction>> {
        map_with(inputs, execution, |bytes| self.run(&load_image(bytes)?))
    }
}

/// Decode a netpbm file to a binary raster. Bitmaps are used as is;
/// graymaps are binarized with Otsu's threshold.
pub fn load_image(bytes: &[u8]) -> Result<BinaryRaster> {
    match decode(bytes)? {
        NetpbmImage::Bitmap(b) => Ok(b),
        NetpbmImage::Graymap(g) => otsu_binarize(&g),
    }
}
