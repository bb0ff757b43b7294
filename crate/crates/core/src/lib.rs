//! Area-proportional Euler diagrams for up to ten sets of identifiers.
//!
//! Sets become circles whose areas track their sizes. Pairwise overlaps are
//! turned into target center distances, gradient descent places the circles,
//! and the finished layout is drawn with a count label in every region.

pub mod color;
pub mod geometry;
pub mod optimizer;
pub mod render;
pub mod scalar;
pub mod session;
pub mod setops;

use thiserror::Error;

pub use color::Rgba;
pub use geometry::{Circle, CircleModel, GeometryError, Point, Polygon, Region};
pub use optimizer::{LayoutState, LossKind, OptimizerError, RunConfig, RunStatus, StopSignal};
pub use render::{DiagramConfig, LabelMode, RenderError};
pub use scalar::Scalar;
pub use session::{EpochRecord, Session};
pub use setops::{build_region_table, IdSet, Mask, RegionTable, SetError};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Optimizer(#[from] OptimizerError),
    #[error(transparent)]
    Render(#[from] RenderError),
}

pub type PointF64 = Point<f64>;
pub type PointF32 = Point<f32>;
pub type CircleModelF64 = CircleModel<f64>;
pub type CircleModelF32 = CircleModel<f32>;
pub type RunConfigF64 = RunConfig<f64>;
pub type RunConfigF32 = RunConfig<f32>;
pub type LayoutStateF64 = LayoutState<f64>;
pub type LayoutStateF32 = LayoutState<f32>;
pub type DiagramConfigF64 = DiagramConfig<f64>;
pub type DiagramConfigF32 = DiagramConfig<f32>;
pub type SessionF64 = Session<f64>;
pub type SessionF32 = Session<f32>;
