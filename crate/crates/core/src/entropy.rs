//! Entropy-based tortuosity of a target curve relative to a standard curve.
//!
//! The score is built in three steps:
//!
//! 1. the pointwise gap `δ_k = f1(x_k) − f2(x_k)` is reduced to a
//!    *disorder* vector `D`, where each `d_l` averages how much `|δ|`
//!    changes towards the two neighbouring nodes;
//! 2. each `d_l` is mapped through the upper-tail Gaussian probability
//!    `g(d) = P(Z > d)`, so `g(0) = 1/2` and `g` falls towards 0;
//! 3. the entropy-like terms `−(1 − 2g)·ln(2g)` are averaged over all
//!    nodes and square-rooted.
//!
//! A constant offset between the curves leaves `|δ|` flat, so it scores 0.
//! Swapping the curves leaves `|δ|` unchanged, so the score is symmetric.

use serde::Serialize;

use crate::curves::CurvePair;
use crate::error::{invalid, Error, Result};

/// Local disorder of the gap between two curves, one entry per grid node.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DistanceDifferenceVector(Vec<f64>);

impl DistanceDifferenceVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0.0)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Gaussian used to turn disorder into probability. Defaults to N(0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbabilityModel {
    mu: f64,
    sigma: f64,
}

impl Default for ProbabilityModel {
    fn default() -> Self {
        Self {
            mu: 0.0,
            sigma: 1.0,
        }
    }
}

impl ProbabilityModel {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() || sigma <= 0.0 {
            return invalid(format!(
                "probability model needs finite mu and sigma > 0, got ({mu}, {sigma})"
            ));
        }
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    fn z(&self, d: f64) -> f64 {
        (d - self.mu) / (self.sigma * std::f64::consts::SQRT_2)
    }
}

/// Score plus the intermediate vectors it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TortuosityScore {
    pub value: f64,
    pub d: DistanceDifferenceVector,
    /// `g(d_l)`. Underflows to 0 once `d_l` exceeds about 38; `log_p` does not.
    pub p: Vec<f64>,
    pub log_p: Vec<f64>,
}

/// Disorder vector from the absolute gaps `|δ_k|`.
///
/// Interior nodes average the two one-sided changes with weight 1/2 each;
/// the two end nodes have a single neighbour and take that change with
/// weight 1.
pub fn disorder(abs_gap: &[f64]) -> DistanceDifferenceVector {
    disorder_with_floor(abs_gap, |_, _| 0.0)
}

fn disorder_with_floor(
    abs_gap: &[f64],
    floor: impl Fn(usize, usize) -> f64,
) -> DistanceDifferenceVector {
    let q = abs_gap.len();
    let change = |i: usize, j: usize| {
        let c = (abs_gap[j] - abs_gap[i]).abs();
        if c <= floor(i, j) {
            0.0
        } else {
            c
        }
    };
    let d = (0..q)
        .map(|l| match (l.checked_sub(1), (l + 1 < q).then_some(l + 1)) {
            (Some(prev), Some(next)) => 0.5 * change(l, next) + 0.5 * change(l, prev),
            (None, Some(next)) => change(l, next),
            (Some(prev), None) => change(l, prev),
            (None, None) => 0.0,
        })
        .collect();
    DistanceDifferenceVector(d)
}

/// Disorder of the gap between the two ordinate vectors of a pair.
pub fn distance_differences(pair: &CurvePair) -> DistanceDifferenceVector {
    gap_disorder(pair.standard().ys(), pair.target().ys())
}

/// Changes in `|δ|` no larger than the rounding error of the subtractions
/// that produced them count as zero, so `target = standard + c` computed in
/// floating point still has an all-zero disorder vector.
pub(crate) fn gap_disorder(standard: &[f64], target: &[f64]) -> DistanceDifferenceVector {
    const ROUNDING_ULPS: f64 = 4.0 * f64::EPSILON;
    let gap: Vec<f64> = standard
        .iter()
        .zip(target)
        .map(|(a, b)| (a - b).abs())
        .collect();
    let scale: Vec<f64> = standard
        .iter()
        .zip(target)
        .map(|(a, b)| a.abs().max(b.abs()))
        .collect();
    disorder_with_floor(&gap, |i, j| ROUNDING_ULPS * (scale[i] + scale[j]))
}

/// `ln(erfc(x))`, finite for arbitrarily large `x`.
///
/// Below the switch point `erfc` is evaluated directly. Above it the
/// continued fraction for the scaled complement `exp(x²)·erfc(x)` is used,
/// so the `−x²` term never passes through an underflowing exponential.
pub fn ln_erfc(x: f64) -> f64 {
    const SWITCH: f64 = 4.0;
    if x < SWITCH {
        return libm::erfc(x).ln();
    }
    // erfc(x) = exp(-x²)/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let mut t = x;
    for k in (1..=64).rev() {
        t = x + (k as f64 * 0.5) / t;
    }
    -x * x - t.ln() - 0.5 * std::f64::consts::PI.ln()
}

/// `ln g(d)` for the model's upper-tail probability.
pub fn log_survival(d: f64, model: &ProbabilityModel) -> f64 {
    ln_erfc(model.z(d)) - std::f64::consts::LN_2
}

/// Upper-tail probability `g(d) = ∫_d^∞ f(t) dt`; `g(0) = 1/2` for N(0, 1).
pub fn survival_probability(d: f64, model: &ProbabilityModel) -> Result<f64> {
    if d.is_nan() || d < 0.0 {
        return invalid(format!("distance difference must be >= 0, got {d}"));
    }
    Ok(0.5 * libm::erfc(model.z(d)))
}

/// `−(1 − 2g(d))·ln(2g(d))`, exactly 0 when `2g(d) = 1`.
fn entropy_term(d: f64, model: &ProbabilityModel) -> f64 {
    let z = model.z(d);
    if z == 0.0 {
        return 0.0;
    }
    // 1 − 2g = 1 − erfc(z) = erf(z); ln(2g) = ln(erfc(z))
    -libm::erf(z) * ln_erfc(z)
}

/// Mean entropy term over `d`, square-rooted.
pub fn score_disorder(d: &DistanceDifferenceVector, model: &ProbabilityModel) -> Result<f64> {
    let q = d.len();
    if q == 0 {
        return invalid("empty distance difference vector");
    }
    let sum: f64 = d.as_slice().iter().map(|&v| entropy_term(v, model)).sum();
    let mean = sum / q as f64;
    // each term is >= 0; tiny negative values can only come from rounding
    let value = mean.max(0.0).sqrt();
    if !value.is_finite() {
        return Err(Error::Internal(format!(
            "tortuosity is not finite (mean term {mean})"
        )));
    }
    Ok(value)
}

/// Entropy-based tortuosity of `pair.target()` against `pair.standard()`.
pub fn tortuosity(pair: &CurvePair, model: &ProbabilityModel) -> Result<TortuosityScore> {
    score_from_disorder(distance_differences(pair), model)
}

pub(crate) fn score_from_disorder(
    d: DistanceDifferenceVector,
    model: &ProbabilityModel,
) -> Result<TortuosityScore> {
    let value = score_disorder(&d, model)?;
    let log_p: Vec<f64> = d
        .as_slice()
        .iter()
        .map(|&v| log_survival(v, model))
        .collect();
    let p = d
        .as_slice()
        .iter()
        .map(|&v| 0.5 * libm::erfc(model.z(v)))
        .collect();
    Ok(TortuosityScore { value, d, p, log_p })
}

/// Scalar score only, skipping the audit vectors.
pub fn tortuosity_value(pair: &CurvePair, model: &ProbabilityModel) -> Result<f64> {
    score_disorder(&distance_differences(pair), model)
}
