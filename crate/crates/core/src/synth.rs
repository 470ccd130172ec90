//! Synthetic segmentation masks with a known upper boundary.
//!
//! Every mask is `width × height`, foreground (255) below the boundary
//! `b(x)` and background (0) above it: pixel `(x, y)` is foreground when
//! `y >= b(x)`. The region spans the full width.
//!
//! *Uniform* masks use a smooth sinusoid
//!
//! ```text
//! b(x) = h/2 + A · sin(2π·p·x/w + φ)
//! ```
//!
//! with `A` uniform in `amplitude`, a whole number of periods `p` drawn from
//! `periods`, and `φ` uniform in `[0, 2π)`. A whole number of periods keeps
//! the two image edges at the same height.
//!
//! *Uneven* masks take the uniform boundary with the same index and add
//! `dents` localized Gaussian indentations pushing the boundary into the
//! foreground:
//!
//! ```text
//! b(x) += Σ_j depth_j · exp(−(x − c_j)² / (2·width_j²))
//! ```
//!
//! with centers `c_j` uniform over the middle 80% of the width, depths
//! uniform in `dent_depth` and widths uniform in `dent_width`.
//!
//! Base parameters for mask `i` come from ChaCha stream `i` of the seed and
//! dent parameters from stream `2^32 + i`, so a uniform/uneven pair with the
//! same index shares its base shape.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::GrayImage;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskKind {
    Uniform,
    Uneven,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub width: usize,
    pub height: usize,
    pub amplitude: (f64, f64),
    pub periods: (u32, u32),
    pub dents: (usize, usize),
    pub dent_depth: (f64, f64),
    pub dent_width: (f64, f64),
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            width: 256,
            height: 256,
            amplitude: (10.0, 25.0),
            periods: (1, 2),
            dents: (2, 4),
            dent_depth: (8.0, 20.0),
            dent_width: (4.0, 10.0),
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if self.width < 8 || self.height < 8 {
            return invalid("synthetic masks must be at least 8×8");
        }
        let ordered = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi;
        if !ordered(self.amplitude.0, self.amplitude.1)
            || !ordered(self.dent_depth.0, self.dent_depth.1)
            || !ordered(self.dent_width.0, self.dent_width.1)
            || self.dent_width.0 <= 0.0
        {
            return invalid("synthetic ranges must be finite, nonnegative and ordered");
        }
        if self.periods.0 == 0 || self.periods.0 > self.periods.1 || self.dents.0 > self.dents.1 {
            return invalid("period and dent count ranges must be ordered (periods >= 1)");
        }
        let reach =
            self.height as f64 / 2.0 - self.amplitude.1 - self.dent_depth.1 * self.dents.1 as f64;
        if reach < 1.0 {
            return invalid("boundary would leave the image; reduce amplitude or dent depth");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dent {
    pub center: f64,
    pub depth: f64,
    pub width: f64,
}

/// Analytic boundary of one synthetic mask.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthBoundary {
    pub baseline: f64,
    pub amplitude: f64,
    pub periods: u32,
    pub phase: f64,
    pub width: usize,
    pub dents: Vec<Dent>,
}

impl SynthBoundary {
    pub fn generate(cfg: &SynthConfig, kind: MaskKind, index: u32, seed: u64) -> Result<Self> {
        cfg.validate()?;
        let mut base = ChaCha8Rng::seed_from_u64(seed);
        base.set_stream(index as u64);
        let amplitude = base.random_range(cfg.amplitude.0..=cfg.amplitude.1);
        let periods = base.random_range(cfg.periods.0..=cfg.periods.1);
        let phase = base.random_range(0.0..TAU);
        let w = cfg.width as f64;
        let dents = match kind {
            MaskKind::Uniform => Vec::new(),
            MaskKind::Uneven => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream((1u64 << 32) | index as u64);
                let count = rng.random_range(cfg.dents.0..=cfg.dents.1);
                (0..count)
                    .map(|_| Dent {
                        center: rng.random_range(0.1 * w..=0.9 * w),
                        depth: rng.random_range(cfg.dent_depth.0..=cfg.dent_depth.1),
                        width: rng.random_range(cfg.dent_width.0..=cfg.dent_width.1),
                    })
                    .collect()
            }
        };
        Ok(Self {
            baseline: cfg.height as f64 / 2.0,
            amplitude,
            periods,
            phase,
            width: cfg.width,
            dents,
        })
    }

    pub fn at(&self, x: f64) -> f64 {
        let w = self.width as f64;
        let smooth =
            self.baseline + self.amplitude * (TAU * self.periods as f64 * x / w + self.phase).sin();
        self.dents.iter().fold(smooth, |b, d| {
            let u = (x - d.center) / d.width;
            b + d.depth * (-0.5 * u * u).exp()
        })
    }

    pub fn render(&self, height: usize) -> Result<GrayImage> {
        let rows: Vec<f64> = (0..self.width).map(|x| self.at(x as f64)).collect();
        GrayImage::from_fn(self.width, height, |x, y| {
            if y as f64 >= rows[x] {
                255.0
            } else {
                0.0
            }
        })
    }
}

pub fn synth_mask(cfg: &SynthConfig, kind: MaskKind, index: u32, seed: u64) -> Result<GrayImage> {
    SynthBoundary::generate(cfg, kind, index, seed)?.render(cfg.height)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn foreground_below_boundary() {
        let cfg = SynthConfig::default();
        let b = SynthBoundary::generate(&cfg, MaskKind::Uniform, 3, 9).unwrap();
        let img = b.render(cfg.height).unwrap();
        for x in [0usize, 50, 200, 255] {
            let first = (0..cfg.height).find(|&y| img.get(x, y) > 0.0).unwrap();
            assert_eq!(first as f64, b.at(x as f64).ceil());
        }
    }

    #[test]
    fn uneven_shares_base_shape() {
        let cfg = SynthConfig::default();
        let u = SynthBoundary::generate(&cfg, MaskKind::Uniform, 5, 1).unwrap();
        let v = SynthBoundary::generate(&cfg, MaskKind::Uneven, 5, 1).unwrap();
        assert_eq!(
            (u.amplitude, u.periods, u.phase),
            (v.amplitude, v.periods, v.phase)
        );
        assert!(u.dents.is_empty());
        assert!((cfg.dents.0..=cfg.dents.1).contains(&v.dents.len()));
        for x in 0..cfg.width {
            assert!(v.at(x as f64) >= u.at(x as f64));
        }
    }

    #[test]
    fn deterministic_and_seed_dependent() {
        let cfg = SynthConfig::default();
        let a = synth_mask(&cfg, MaskKind::Uneven, 2, 42).unwrap();
        assert_eq!(a, synth_mask(&cfg, MaskKind::Uneven, 2, 42).unwrap());
        assert_ne!(a, synth_mask(&cfg, MaskKind::Uneven, 2, 43).unwrap());
        assert_ne!(a, synth_mask(&cfg, MaskKind::Uneven, 3, 42).unwrap());
    }

    #[test]
    fn rejects_boundary_outside_image() {
        let cfg = SynthConfig {
            height: 40,
            ..SynthConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
