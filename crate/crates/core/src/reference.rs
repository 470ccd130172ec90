//! Where the standard curve comes from when scoring a single target.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::curves::{align, resample, CurvePair, SampledCurve};
use crate::error::{invalid, Error, Result};
use crate::spectral::{filter_signal, BandConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceStrategy {
    /// An explicit standard curve supplied by the caller.
    File,
    /// The target's own low-band component.
    Lowpass { cutoff: f64 },
    /// Least-squares polynomial fit to the target.
    Poly { degree: usize },
}

impl Default for ReferenceStrategy {
    fn default() -> Self {
        Self::Lowpass {
            cutoff: BandConfig::DEFAULT_CUTOFF,
        }
    }
}

impl fmt::Display for ReferenceStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::File => f.write_str("file"),
            Self::Lowpass { cutoff } => write!(f, "lowpass (cutoff {cutoff})"),
            Self::Poly { degree } => write!(f, "poly:{degree}"),
        }
    }
}

/// Accepts `file`, `lowpass` and `poly:<deg>`. `lowpass` takes the default
/// cutoff; use [`ReferenceStrategy::with_cutoff`] to change it.
impl FromStr for ReferenceStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "file" => Ok(Self::File),
            "lowpass" => Ok(Self::default()),
            other => {
                let Some(deg) = other.strip_prefix("poly:") else {
                    return invalid(format!(
                        "unknown reference strategy '{other}' (expected file, lowpass or poly:<deg>)"
                    ));
                };
                let degree = deg
                    .parse::<usize>()
                    .map_err(|_| Error::Validation(format!("bad polynomial degree '{deg}'")))?;
                Ok(Self::Poly { degree })
            }
        }
    }
}

impl ReferenceStrategy {
    pub fn with_cutoff(self, cutoff: f64) -> Self {
        match self {
            Self::Lowpass { .. } => Self::Lowpass { cutoff },
            other => other,
        }
    }

    /// Builds the standard/target pair to score. `standard` is required for
    /// [`ReferenceStrategy::File`] and ignored otherwise.
    pub fn pair(
        &self,
        target: &SampledCurve,
        standard: Option<&SampledCurve>,
    ) -> Result<CurvePair> {
        match *self {
            Self::File => {
                let Some(std) = standard else {
                    return invalid("the file reference strategy needs a standard curve");
                };
                align(std, target)
            }
            Self::Lowpass { cutoff } => {
                let grid = target.native_grid()?;
                let t = resample(target, &grid)?;
                let smooth = filter_signal(t.ys(), &grid, &BandConfig::low(cutoff)?)?;
                CurvePair::on_grid(grid, smooth, t.ys().to_vec())
            }
            Self::Poly { degree } => {
                let grid = target.native_grid()?;
                let t = resample(target, &grid)?;
                let coef = poly_fit(target.xs(), target.ys(), degree)?;
                let fitted = grid.xs().iter().map(|&x| coef.eval(x)).collect();
                CurvePair::on_grid(grid, fitted, t.ys().to_vec())
            }
        }
    }
}

/// Polynomial in the scaled variable `u = (x − center) / half_width`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    center: f64,
    half_width: f64,
    coefficients: Vec<f64>,
}

impl PolyFit {
    pub fn eval(&self, x: f64) -> f64 {
        let u = (x - self.center) / self.half_width;
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * u + c)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }
}

pub fn poly_fit(xs: &[f64], ys: &[f64], degree: usize) -> Result<PolyFit> {
    if xs.len() != ys.len() {
        return invalid("x and y lengths differ");
    }
    if xs.len() <= degree {
        return invalid(format!(
            "degree {degree} fit needs more than {degree} points, got {}",
            xs.len()
        ));
    }
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let center = 0.5 * (lo + hi);
    let half_width = if hi > lo { 0.5 * (hi - lo) } else { 1.0 };
    let v = DMatrix::from_fn(xs.len(), degree + 1, |i, j| {
        ((xs[i] - center) / half_width).powi(j as i32)
    });
    let rhs = DVector::from_column_slice(ys);
    let sol = v
        .svd(true, true)
        .solve(&rhs, 1e-12)
        .map_err(|e| Error::Internal(format!("least-squares solve failed: {e}")))?;
    Ok(PolyFit {
        center,
        half_width,
        coefficients: sol.iter().copied().collect(),
    })
}
