//! Halfspace (Tukey) depth for finite mixed measures in the plane.
//!
//! A measure is a weighted list of atoms, uniform segments, uniform convex
//! polygons and uniform discs. On top of exact halfplane masses the crate
//! computes point depth, depth-trimmed regions and floating bodies, the
//! median set, covering medians, and a few reference experiments.
//!
//! Masses are finite, not probabilities: a depth of 2 means two units of
//! mass.

pub mod covering;
pub mod depth;
pub mod experiments;
pub mod geometry2d;
pub mod measure;
pub mod regions;
pub mod scenes;

pub use geometry2d::{HalfPlane, Point, RegionResult, Shape};
pub use measure::{Component, MixtureMeasure};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty region")]
    EmptyRegion,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("invalid component: {0}")]
    InvalidComponent(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("root bracket failed: {0}")]
    RootBracket(String),
    #[error("unsupported transform: {0}")]
    UnsupportedTransform(String),
    #[error("unknown scene: {0}")]
    UnknownScene(String),
}

pub type Result<T> = std::result::Result<T, Error>;
