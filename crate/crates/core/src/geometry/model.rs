use serde::{Deserialize, Serialize};

use super::{distance_for_overlap, radius_for_size, GeometryError};
use crate::scalar::Scalar;
use crate::setops::{Mask, RegionTable};

/// Target distance for disjoint sets, as a multiple of `r_i + r_j`.
pub const SEPARATION_FACTOR: f64 = 1.1;
/// Target distance for nested sets, as a multiple of `|r_i - r_j|`.
pub const CONTAINMENT_FACTOR: f64 = 0.9;

/// Radii and pairwise target center distances, in diagram units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleModel<T> {
    radii: Vec<T>,
    /// Row-major `n × n`, symmetric, zero diagonal.
    target: Vec<T>,
    area_scale: T,
}

impl<T: Scalar> CircleModel<T> {
    /// Builds a model from explicit radii and a symmetric target matrix.
    pub fn new(radii: Vec<T>, target: Vec<Vec<T>>, area_scale: T) -> Result<Self, GeometryError> {
        let n = radii.len();
        if radii.iter().any(|r| !(*r > T::zero() && r.is_finite())) {
            return Err(GeometryError::Domain("radii must be positive and finite".into()));
        }
        if target.len() != n || target.iter().any(|row| row.len() != n) {
            return Err(GeometryError::Parameter(format!("target matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if target[i][i] != T::zero() {
                return Err(GeometryError::Parameter("target diagonal must be zero".into()));
            }
            for j in 0..n {
                let t = target[i][j];
                if !(t >= T::zero() && t.is_finite()) || t != target[j][i] {
                    return Err(GeometryError::Parameter(
                        "target matrix must be symmetric, finite and non-negative".into(),
                    ));
                }
            }
        }
        Ok(CircleModel {
            radii,
            target: target.into_iter().flatten().collect(),
            area_scale,
        })
    }

    pub fn n(&self) -> usize {
        self.radii.len()
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn radius(&self, i: usize) -> T {
        self.radii[i]
    }

    pub fn target(&self, i: usize, j: usize) -> T {
        self.target[i * self.n() + j]
    }

    pub fn area_scale(&self) -> T {
        self.area_scale
    }
}

/// Area units per element such that the largest circle's radius is a quarter
/// of the smaller canvas side.
pub fn area_scale_for_canvas<T: Scalar>(largest_count: usize, width: T, height: T) -> T {
    let r = width.min(height) / T::lit(4.0);
    T::PI() * r * r / T::from_count(largest_count.max(1))
}

pub fn target_distance_matrix<T: Scalar>(
    table: &RegionTable,
    sizes: &[usize],
    area_scale: T,
) -> Result<CircleModel<T>, GeometryError> {
    let n = sizes.len();
    if n != table.n() {
        return Err(GeometryError::Parameter(format!(
            "{n} sizes given for {} sets",
            table.n()
        )));
    }
    let radii = sizes
        .iter()
        .map(|&c| radius_for_size(T::from_count(c), area_scale))
        .collect::<Result<Vec<T>, _>>()?;
    let mut target = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let shared = table.inclusive_count(Mask::single(i) | Mask::single(j));
            let (ri, rj) = (radii[i], radii[j]);
            let t = if shared == 0 {
                T::lit(SEPARATION_FACTOR) * (ri + rj)
            } else if shared >= sizes[i].min(sizes[j]) {
                T::lit(CONTAINMENT_FACTOR) * (ri - rj).abs()
            } else {
                distance_for_overlap(ri, rj, T::from_count(shared) * area_scale)?
            };
            target[i][j] = t;
            target[j][i] = t;
        }
    }
    CircleModel::new(radii, target, area_scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Rgba;
    use crate::geometry::lens_area;
    use crate::setops::{build_region_table, IdSet};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn set(name: &str, ids: &[&str]) -> IdSet {
        IdSet::new(name, Rgba::BLACK, ids.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn disjoint_pair_separation() {
        let t = build_region_table(&[set("X", &["a"]), set("Y", &["b"])]).unwrap();
        let m: CircleModel<f64> = target_distance_matrix(&t, &[1, 1], PI).unwrap();
        assert_abs_diff_eq!(m.radius(0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.target(0, 1), 2.2, epsilon = 1e-12);
    }

    #[test]
    fn nested_pair_containment() {
        let t = build_region_table(&[
            set("X", &["a"]),
            set("Y", &["a", "b", "c", "d"]),
        ])
        .unwrap();
        let m: CircleModel<f64> = target_distance_matrix(&t, &[1, 4], PI).unwrap();
        assert_abs_diff_eq!(m.radius(1), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.target(0, 1), 0.9, epsilon = 1e-12);
        assert_eq!(m.target(1, 0), m.target(0, 1));
        assert_eq!(m.target(0, 0), 0.0);
    }

    #[test]
    fn partial_overlap_inverts_lens() {
        // 9 and 15 elements sharing 3, unit area scale.
        let a: Vec<String> = (0..9).map(|i| format!("a{i}")).collect();
        let mut b: Vec<String> = (0..12).map(|i| format!("b{i}")).collect();
        b.extend(a[..3].iter().cloned());
        let t = build_region_table(&[
            IdSet::new("A", Rgba::BLACK, a).unwrap(),
            IdSet::new("B", Rgba::BLACK, b).unwrap(),
        ])
        .unwrap();
        let m: CircleModel<f64> = target_distance_matrix(&t, t.sizes(), 1.0).unwrap();
        assert_abs_diff_eq!(m.radius(0), 1.692569, epsilon = 1e-6);
        assert_abs_diff_eq!(m.radius(1), 2.185097, epsilon = 1e-6);
        let back = lens_area(m.radius(0), m.radius(1), m.target(0, 1)).unwrap();
        assert!((back - 3.0).abs() <= 1e-9);
    }

    #[test]
    fn squared_radius_ratio_matches_sizes() {
        let sizes = [9usize, 15, 7, 6, 9, 9];
        let s = area_scale_for_canvas::<f64>(15, 800.0, 800.0);
        for (i, &a) in sizes.iter().enumerate() {
            let ri = radius_for_size(a as f64, s).unwrap();
            assert!((PI * ri * ri / (a as f64 * s) - 1.0).abs() < 1e-9);
            for &b in &sizes {
                let rj = radius_for_size(b as f64, s).unwrap();
                let rel = (ri * ri / (rj * rj)) / (a as f64 / b as f64) - 1.0;
                assert!(rel.abs() <= 1e-12, "{i}: {rel}");
            }
        }
        assert_abs_diff_eq!(radius_for_size(15.0, s).unwrap(), 200.0, epsilon = 1e-9);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(CircleModel::new(vec![1.0, 1.0], vec![vec![0.0, 1.0], vec![2.0, 0.0]], 1.0).is_err());
        assert!(CircleModel::new(vec![1.0, -1.0], vec![vec![0.0, 1.0], vec![1.0, 0.0]], 1.0).is_err());
        assert!(CircleModel::new(vec![1.0], vec![vec![1.0]], 1.0).is_err());
    }
}
