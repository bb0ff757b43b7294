//! Pole of inaccessibility by quadtree refinement (the "polylabel" search).
//!
//! Cells are kept in a max-heap keyed on the best clearance any point inside
//! the cell could have (center clearance plus half-diagonal). The best cell is
//! split into four until no cell can beat the current best by more than the
//! requested precision.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::{GeometryError, Point, Polygon};
use crate::scalar::Scalar;

/// Label anchor and its distance to the nearest polygon edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolePlacement<T> {
    pub point: Point<T>,
    pub clearance: T,
}

fn segment_distance_sq<T: Scalar>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    let (mut x, mut y) = (a.x, a.y);
    let (dx, dy) = (b.x - x, b.y - y);
    if dx != T::zero() || dy != T::zero() {
        let t = ((p.x - x) * dx + (p.y - y) * dy) / (dx * dx + dy * dy);
        if t > T::one() {
            x = b.x;
            y = b.y;
        } else if t > T::zero() {
            x = x + dx * t;
            y = y + dy * t;
        }
    }
    let (ex, ey) = (p.x - x, p.y - y);
    ex * ex + ey * ey
}

/// Distance from `p` to the nearest edge of any ring; negative outside.
pub fn signed_distance<T: Scalar>(p: &Point<T>, polygon: &Polygon<T>) -> T {
    let mut inside = false;
    let mut min_sq = T::infinity();
    for ring in polygon.rings() {
        let n = ring.len();
        let mut j = n - 1;
        for i in 0..n {
            let (a, b) = (&ring[i], &ring[j]);
            if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
                inside = !inside;
            }
            min_sq = min_sq.min(segment_distance_sq(p, a, b));
            j = i;
        }
    }
    let d = min_sq.sqrt();
    if inside {
        d
    } else {
        -d
    }
}

struct Cell<T> {
    center: Point<T>,
    half: T,
    distance: T,
    potential: T,
    /// Insertion order; breaks potential ties deterministically.
    seq: usize,
}

impl<T: Scalar> Cell<T> {
    fn new(center: Point<T>, half: T, polygon: &Polygon<T>, seq: usize) -> Self {
        let distance = signed_distance(&center, polygon);
        Cell {
            center,
            half,
            distance,
            potential: distance + half * T::SQRT_2(),
            seq,
        }
    }
}

impl<T: Scalar> PartialEq for Cell<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for Cell<T> {}

impl<T: Scalar> PartialOrd for Cell<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for Cell<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.potential
            .partial_cmp(&other.potential)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

fn search<T: Scalar>(polygon: &Polygon<T>, precision: T) -> Cell<T> {
    let (min, max) = polygon.bounds();
    let (width, height) = (max.x - min.x, max.y - min.y);
    let size = width.min(height);
    let half = T::HALF * size;
    let mut seq = 0usize;
    let mut next = || {
        seq += 1;
        seq
    };

    let mut best = Cell::new(polygon.centroid(), T::zero(), polygon, next());
    let bbox_center = Point::new(min.x + T::HALF * width, min.y + T::HALF * height);
    let bbox_cell = Cell::new(bbox_center, T::zero(), polygon, next());
    if bbox_cell.distance > best.distance {
        best = bbox_cell;
    }

    let mut heap = BinaryHeap::new();
    let nx = (width / size).ceil().to_usize().unwrap_or(1).max(1);
    let ny = (height / size).ceil().to_usize().unwrap_or(1).max(1);
    for ix in 0..nx {
        for iy in 0..ny {
            let c = Point::new(
                min.x + size * T::from_count(ix) + half,
                min.y + size * T::from_count(iy) + half,
            );
            heap.push(Cell::new(c, half, polygon, next()));
        }
    }

    while let Some(cell) = heap.pop() {
        let (center, potential, h) = (cell.center, cell.potential, T::HALF * cell.half);
        if cell.distance > best.distance {
            best = cell;
        }
        if potential - best.distance <= precision {
            continue;
        }
        for (sx, sy) in [(-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)] {
            let c = Point::new(center.x + T::lit(sx) * h, center.y + T::lit(sy) * h);
            heap.push(Cell::new(c, h, polygon, next()));
        }
    }
    best
}

/// Interior point farthest from the boundary, within `precision` of optimal.
pub fn pole_of_inaccessibility<T: Scalar>(
    polygon: &Polygon<T>,
    precision: T,
) -> Result<PolePlacement<T>, GeometryError> {
    let area = polygon.area();
    if !(area > T::zero() && area.is_finite()) {
        return Err(GeometryError::Degenerate(area.to_f64().unwrap_or(f64::NAN)));
    }
    if !(precision > T::zero()) {
        return Err(GeometryError::Parameter(format!(
            "precision must be positive, got {precision}"
        )));
    }
    // A region thinner than the precision can leave every probe outside;
    // tighten until an interior point turns up.
    let mut p = precision;
    for _ in 0..12 {
        let best = search(polygon, p);
        if best.distance > T::zero() {
            return Ok(PolePlacement {
                point: best.center,
                clearance: best.distance,
            });
        }
        p = p / T::lit(10.0);
    }
    Err(GeometryError::Degenerate(area.to_f64().unwrap_or(f64::NAN)))
}
