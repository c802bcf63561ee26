//! Topographic features of binary character glyphs: skeletonization,
//! directional stroke convexities, closed regions and straight lines,
//! assembled into a centroid-placed shape graph and matched by shape-id
//! vectors.

pub mod error;
pub mod graph;
pub mod netpbm;
pub mod par;
pub mod pipeline;
pub mod raster;
pub mod recognizer;
pub mod skeleton;
pub mod topo;

pub use error::{Error, Result};
