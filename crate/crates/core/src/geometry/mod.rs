//! Geometric kernel: lens areas and their inversion, target distances,
//! region polygons and label poles.

mod lens;
mod model;
mod polygon;
mod polylabel;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

pub use lens::{distance_for_overlap, lens_area, radius_for_size};
pub use model::{
    area_scale_for_canvas, target_distance_matrix, CircleModel, CONTAINMENT_FACTOR,
    SEPARATION_FACTOR,
};
pub use polygon::{polygonize_circle, region_polygons, Polygon, Region, DEFAULT_SEGMENTS};
pub use polylabel::{pole_of_inaccessibility, signed_distance, PolePlacement};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overlap area {area} is infeasible for radii {r1}, {r2} (maximum {max})")]
    InfeasibleOverlap {
        r1: f64,
        r2: f64,
        area: f64,
        max: f64,
    },
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("degenerate polygon (area {0})")]
    Degenerate(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point<T>) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle<T> {
    pub center: Point<T>,
    pub radius: T,
}

impl<T: Scalar> Circle<T> {
    pub fn new(center: Point<T>, radius: T) -> Self {
        Circle { center, radius }
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        self.center.distance(p) <= self.radius
    }
}
