//! Boundary curve extraction from a grayscale segmentation mask.
//!
//! Pipeline: [`gaussian_blur`] → [`initial_boundary`] → [`snake_refine`] →
//! [`truncate_extremal`] → [`contour_to_curve`].

mod blur;
mod image;
mod snake;
mod trace;

pub use blur::{gaussian_blur, GaussianKernelConfig};
pub use image::{parse_pgm, GrayImage};
pub use snake::{
    internal_energy, snake_refine, SnakeConfig, SnakeOutcome, StopReason, MAX_BACKTRACKS,
};
pub use trace::{initial_boundary, initial_boundary_with, label_components, Envelope};

use serde::Serialize;

use crate::curves::SampledCurve;
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Ordered open chain of image-space points.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    points: Vec<Point>,
}

impl Contour {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 3 {
            return invalid(format!(
                "a contour needs at least 3 points, got {}",
                points.len()
            ));
        }
        if let Some(i) = points.windows(2).position(|w| w[0] == w[1]) {
            return invalid(format!("contour points {i} and {} coincide", i + 1));
        }
        Ok(Self { points })
    }

    /// Drops consecutive repeats but does not enforce the length minimum.
    pub(crate) fn from_points_unchecked(mut points: Vec<Point>) -> Self {
        points.dedup();
        Self { points }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Keeps the stretch between the leftmost and rightmost points, inclusive,
/// in the original order.
pub fn truncate_extremal(contour: &Contour) -> Result<Contour> {
    let pts = contour.points();
    if pts.len() < 3 {
        return Err(Error::DegenerateContour(format!(
            "need at least 3 points, got {}",
            pts.len()
        )));
    }
    let mut lo = 0;
    let mut hi = 0;
    for (i, p) in pts.iter().enumerate() {
        if p.x < pts[lo].x {
            lo = i;
        }
        if p.x > pts[hi].x {
            hi = i;
        }
    }
    if pts[lo].x == pts[hi].x {
        return Err(Error::DegenerateContour(
            "all points share one x coordinate".into(),
        ));
    }
    let (a, b) = (lo.min(hi), lo.max(hi));
    let kept = pts[a..=b].to_vec();
    if kept.len() < 3 {
        return Err(Error::DegenerateContour(format!(
            "only {} points between the x extremes",
            kept.len()
        )));
    }
    Ok(Contour { points: kept })
}

/// Converts a contour to `y = f(x)` form.
///
/// A right-to-left contour is reversed. Consecutive points with equal x are
/// merged into one point at their mean y. Any remaining decrease in x is an
/// error.
pub fn contour_to_curve(contour: &Contour) -> Result<SampledCurve> {
    let mut pts = contour.points().to_vec();
    if pts.len() >= 2 && pts[0].x > pts[pts.len() - 1].x {
        pts.reverse();
    }
    let mut xs: Vec<f64> = Vec::with_capacity(pts.len());
    let mut ys: Vec<f64> = Vec::with_capacity(pts.len());
    let mut i = 0;
    while i < pts.len() {
        let mut j = i;
        let mut sum = 0.0;
        while j < pts.len() && pts[j].x == pts[i].x {
            sum += pts[j].y;
            j += 1;
        }
        xs.push(pts[i].x);
        ys.push(sum / (j - i) as f64);
        i = j;
    }
    if let Some(k) = xs.windows(2).position(|w| w[1] < w[0]) {
        return invalid(format!(
            "contour folds back in x at point {} ({} after {})",
            k + 1,
            xs[k + 1],
            xs[k]
        ));
    }
    SampledCurve::new(xs, ys)
}
