//! Classical comparison metrics: arc/chord ratio and total variation.

use crate::curves::SampledCurve;
use crate::error::{invalid, Error, Result};

/// Divisor applied to total variation (a per-image density in clinical use).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizerConfig {
    divisor: f64,
}

impl Default for NormalizerConfig {
    fn default() -> Self {
        Self { divisor: 1.0 }
    }
}

impl NormalizerConfig {
    pub fn new(divisor: f64) -> Result<Self> {
        if !divisor.is_finite() || divisor <= 0.0 {
            return invalid(format!("divisor must be a positive number, got {divisor}"));
        }
        Ok(Self { divisor })
    }

    pub fn divisor(&self) -> f64 {
        self.divisor
    }
}

/// Polyline length divided by endpoint distance.
///
/// Named "chord-to-arc" in the clinical literature, but reported as
/// arc/chord so that a straight segment scores 1 and bends score above 1.
pub fn chord_arc_ratio(curve: &SampledCurve) -> Result<f64> {
    let pts: Vec<(f64, f64)> = curve
        .xs()
        .iter()
        .copied()
        .zip(curve.ys().iter().copied())
        .collect();
    polyline_chord_arc_ratio(&pts)
}

pub fn polyline_chord_arc_ratio(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return invalid("arc/chord ratio needs at least two points");
    }
    let arc: f64 = points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1))
        .sum();
    let (first, last) = (points[0], points[points.len() - 1]);
    let chord = (last.0 - first.0).hypot(last.1 - first.1);
    if chord <= f64::EPSILON * arc.max(1.0) {
        return Err(Error::Domain(
            "curve endpoints coincide; arc/chord ratio undefined".into(),
        ));
    }
    // the triangle inequality holds exactly in real arithmetic
    Ok((arc / chord).max(1.0))
}

/// Sum of absolute successive ordinate changes, divided by the normaliser.
pub fn total_variation(curve: &SampledCurve, norm: &NormalizerConfig) -> f64 {
    let tv: f64 = curve.ys().windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    tv / norm.divisor
}
