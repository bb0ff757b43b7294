use super::GeometryError;
use crate::scalar::Scalar;

/// Slack allowed when a requested overlap lies just outside `[0, π·min(r)²]`.
const OVERLAP_SLACK: f64 = 1e-9;
/// Bisection stops once the bracket is narrower than this times the smaller
/// radius. The area error is about chord length times bracket width, so
/// scaling by `r1 + r2` would lose relative accuracy for very unequal circles.
const BISECTION_TOL: f64 = 1e-12;

fn check_radius<T: Scalar>(r: T, what: &str) -> Result<(), GeometryError> {
    if r > T::zero() && r.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::Domain(format!("{what} must be positive, got {r}")))
    }
}

/// Radius of the circle whose area is `count · area_scale`.
pub fn radius_for_size<T: Scalar>(count: T, area_scale: T) -> Result<T, GeometryError> {
    if !(count > T::zero() && count.is_finite()) {
        return Err(GeometryError::Domain(format!("count must be positive, got {count}")));
    }
    if !(area_scale > T::zero() && area_scale.is_finite()) {
        return Err(GeometryError::Domain(format!(
            "area scale must be positive, got {area_scale}"
        )));
    }
    Ok((count * area_scale / T::PI()).sqrt())
}

/// Area of the intersection of two circles whose centers are `d` apart.
pub fn lens_area<T: Scalar>(r1: T, r2: T, d: T) -> Result<T, GeometryError> {
    check_radius(r1, "r1")?;
    check_radius(r2, "r2")?;
    if !(d >= T::zero()) {
        return Err(GeometryError::Domain(format!("distance must be non-negative, got {d}")));
    }
    Ok(lens_area_unchecked(r1, r2, d))
}

pub(crate) fn lens_area_unchecked<T: Scalar>(r1: T, r2: T, d: T) -> T {
    if d >= r1 + r2 {
        return T::zero();
    }
    let small = r1.min(r2);
    if d <= (r1 - r2).abs() {
        return T::PI() * (small * small);
    }
    // The lens is two circular segments cut by the common chord. Half-angles
    // come from atan2 (acos loses digits near 1), and each segment is
    // evaluated as r²/2·(θ − sin θ) without cancellation for thin slivers.
    let (d2, s1, s2) = (d * d, r1 * r1, r2 * r2);
    let kite = ((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2))
        .max(T::zero())
        .sqrt();
    let a1 = kite.atan2(d2 + s1 - s2);
    let a2 = kite.atan2(d2 + s2 - s1);
    T::HALF * (s1 * theta_minus_sin(T::TWO * a1) + s2 * theta_minus_sin(T::TWO * a2))
}

/// `θ − sin θ`, by its Taylor series where direct subtraction would cancel.
fn theta_minus_sin<T: Scalar>(theta: T) -> T {
    if theta >= T::HALF {
        return theta - theta.sin();
    }
    // θ³/3! − θ⁵/5! + θ⁷/7! − …
    let t2 = theta * theta;
    let mut term = theta * t2 / T::lit(6.0);
    let mut sum = T::zero();
    let mut k = 3.0;
    while term.abs() > T::epsilon() * sum.abs() || sum == T::zero() {
        sum = sum + term;
        term = -term * t2 / T::lit((k + 1.0) * (k + 2.0));
        k += 2.0;
        if term == T::zero() {
            break;
        }
    }
    sum
}

/// Center distance at which the two circles overlap by exactly `target_area`.
///
/// `lens_area` is strictly decreasing on `[|r1 - r2|, r1 + r2]`, so the root is
/// bracketed and found by bisection.
pub fn distance_for_overlap<T: Scalar>(r1: T, r2: T, target_area: T) -> Result<T, GeometryError> {
    check_radius(r1, "r1")?;
    check_radius(r2, "r2")?;
    let small = r1.min(r2);
    let max = T::PI() * (small * small);
    let slack = T::lit(OVERLAP_SLACK) * max;
    if !(target_area >= -slack && target_area <= max + slack) {
        return Err(GeometryError::InfeasibleOverlap {
            r1: r1.to_f64().unwrap_or(f64::NAN),
            r2: r2.to_f64().unwrap_or(f64::NAN),
            area: target_area.to_f64().unwrap_or(f64::NAN),
            max: max.to_f64().unwrap_or(f64::NAN),
        });
    }
    let (mut lo, mut hi) = ((r1 - r2).abs(), r1 + r2);
    if target_area <= T::zero() {
        return Ok(hi);
    }
    if target_area >= max {
        return Ok(lo);
    }
    let tol = T::lit(BISECTION_TOL) * small;
    while hi - lo > tol {
        let mid = T::HALF * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if lens_area_unchecked(r1, r2, mid) > target_area {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(T::HALF * (lo + hi))
}
