use std::collections::BTreeMap;

use geo::{Coord, LineString, MultiPolygon};
use serde::{Deserialize, Serialize};

use super::{Circle, GeometryError, Point};
use crate::scalar::Scalar;
use crate::setops::Mask;

/// Vertices per circle when discretizing. Inscribed-area error < 0.02%.
pub const DEFAULT_SEGMENTS: usize = 256;
const MIN_SEGMENTS: usize = 16;

/// A simple polygon with optional holes. Rings are stored unclosed; the
/// outer ring is counterclockwise and holes are clockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon<T> {
    rings: Vec<Vec<Point<T>>>,
}

fn ring_signed_area<T: Scalar>(ring: &[Point<T>]) -> T {
    let n = ring.len();
    let twice: T = (0..n)
        .map(|i| {
            let (a, b) = (ring[i], ring[(i + 1) % n]);
            a.x * b.y - b.x * a.y
        })
        .sum();
    T::HALF * twice
}

impl<T: Scalar> Polygon<T> {
    /// Builds a polygon from an outer ring and holes, normalizing orientation.
    pub fn new(outer: Vec<Point<T>>, holes: Vec<Vec<Point<T>>>) -> Result<Self, GeometryError> {
        let mut rings = Vec::with_capacity(1 + holes.len());
        rings.push(outer);
        rings.extend(holes);
        for (k, ring) in rings.iter_mut().enumerate() {
            if ring.len() > 1 && ring.first() == ring.last() {
                ring.pop();
            }
            if ring.len() < 3 {
                return Err(GeometryError::Parameter(format!(
                    "ring {k} has {} vertices, need at least 3",
                    ring.len()
                )));
            }
            let ccw = ring_signed_area(ring) > T::zero();
            if ccw != (k == 0) {
                ring.reverse();
            }
        }
        Ok(Polygon { rings })
    }

    pub fn outer(&self) -> &[Point<T>] {
        &self.rings[0]
    }

    pub fn holes(&self) -> &[Vec<Point<T>>] {
        &self.rings[1..]
    }

    pub fn rings(&self) -> &[Vec<Point<T>>] {
        &self.rings
    }

    /// Enclosed area: outer ring minus holes.
    pub fn area(&self) -> T {
        self.rings.iter().map(|r| ring_signed_area(r)).sum()
    }

    /// Area-weighted centroid. May lie outside a concave polygon.
    pub fn centroid(&self) -> Point<T> {
        let (mut cx, mut cy, mut a) = (T::zero(), T::zero(), T::zero());
        for ring in &self.rings {
            let n = ring.len();
            for i in 0..n {
                let (p, q) = (ring[i], ring[(i + 1) % n]);
                let cross = p.x * q.y - q.x * p.y;
                cx = cx + (p.x + q.x) * cross;
                cy = cy + (p.y + q.y) * cross;
                a = a + cross;
            }
        }
        if a == T::zero() {
            return self.rings[0][0];
        }
        let k = T::lit(3.0) * a;
        Point::new(cx / k, cy / k)
    }

    /// `(min, max)` corners of the axis-aligned bounding box.
    pub fn bounds(&self) -> (Point<T>, Point<T>) {
        let mut min = self.rings[0][0];
        let mut max = min;
        for p in self.rings.iter().flatten() {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        (min, max)
    }

    /// Even-odd containment over all rings.
    pub fn contains(&self, p: &Point<T>) -> bool {
        let mut inside = false;
        for ring in &self.rings {
            let n = ring.len();
            let mut j = n - 1;
            for i in 0..n {
                let (a, b) = (ring[i], ring[j]);
                if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x
                {
                    inside = !inside;
                }
                j = i;
            }
        }
        inside
    }

    fn to_geo(&self) -> geo::Polygon<T> {
        let ring = |r: &Vec<Point<T>>| {
            LineString::from(r.iter().map(|p| Coord { x: p.x, y: p.y }).collect::<Vec<_>>())
        };
        geo::Polygon::new(ring(&self.rings[0]), self.rings[1..].iter().map(ring).collect())
    }

    fn from_geo(poly: &geo::Polygon<T>) -> Option<Self> {
        let ring = |ls: &LineString<T>| ls.coords().map(|c| Point::new(c.x, c.y)).collect();
        Polygon::new(ring(poly.exterior()), poly.interiors().iter().map(ring).collect()).ok()
    }
}

/// A possibly disconnected region of the arrangement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Region<T> {
    pub parts: Vec<Polygon<T>>,
}

impl<T: Scalar> Region<T> {
    pub fn area(&self) -> T {
        self.parts.iter().map(Polygon::area).sum()
    }

    /// Connected part with the largest area (first one on ties).
    pub fn largest_part(&self) -> Option<&Polygon<T>> {
        self.parts.iter().fold(None, |best: Option<&Polygon<T>>, p| match best {
            Some(b) if b.area() >= p.area() => Some(b),
            _ => Some(p),
        })
    }
}

/// Regular polygon inscribed in the circle, counterclockwise from angle 0.
pub fn polygonize_circle<T: Scalar>(
    center: Point<T>,
    radius: T,
    segments: usize,
) -> Result<Polygon<T>, GeometryError> {
    if segments < MIN_SEGMENTS {
        return Err(GeometryError::Parameter(format!(
            "circle needs at least {MIN_SEGMENTS} segments, got {segments}"
        )));
    }
    if !(radius > T::zero() && radius.is_finite()) {
        return Err(GeometryError::Domain(format!("radius must be positive, got {radius}")));
    }
    Ok(inscribed_polygon(center, radius, segments))
}

pub(crate) fn inscribed_polygon<T: Scalar>(center: Point<T>, radius: T, segments: usize) -> Polygon<T> {
    let step = T::TAU() / T::from_count(segments);
    let ring = (0..segments)
        .map(|k| {
            let (s, c) = (step * T::from_count(k)).sin_cos();
            Point::new(center.x + radius * c, center.y + radius * s)
        })
        .collect();
    Polygon { rings: vec![ring] }
}

/// Polygonal shape of each requested exclusive region: inside every member
/// circle and outside every other one. Regions the layout does not realize
/// are left out of the map.
pub fn region_polygons<T: Scalar>(
    circles: &[Circle<T>],
    masks: &[Mask],
    segments: usize,
) -> Result<BTreeMap<Mask, Region<T>>, GeometryError> {
    let discs: Vec<MultiPolygon<T>> = circles
        .iter()
        .map(|c| polygonize_circle(c.center, c.radius, segments).map(|p| MultiPolygon(vec![p.to_geo()])))
        .collect::<Result<_, _>>()?;
    let overlaps = |a: &Circle<T>, b: &Circle<T>| a.center.distance(&b.center) < a.radius + b.radius;

    let mut out = BTreeMap::new();
    for &mask in masks {
        let members: Vec<usize> = mask.members().filter(|&i| i < circles.len()).collect();
        let Some((&first, rest)) = members.split_first() else {
            continue;
        };
        if members.len() != mask.popcount() as usize {
            return Err(GeometryError::Parameter(format!(
                "mask {mask} refers to missing circles"
            )));
        }
        let mut shape = discs[first].clone();
        for &i in rest {
            if !overlaps(&circles[first], &circles[i]) {
                shape = MultiPolygon(vec![]);
                break;
            }
            shape = T::clip_intersection(&shape, &discs[i]);
        }
        for (k, disc) in discs.iter().enumerate() {
            if shape.0.is_empty() {
                break;
            }
            if !mask.contains(k) && members.iter().all(|&i| overlaps(&circles[i], &circles[k])) {
                shape = T::clip_difference(&shape, disc);
            }
        }
        let parts: Vec<Polygon<T>> = shape
            .0
            .iter()
            .filter_map(Polygon::from_geo)
            .filter(|p| p.area() > T::zero())
            .collect();
        if !parts.is_empty() {
            out.insert(mask, Region { parts });
        }
    }
    Ok(out)
}
