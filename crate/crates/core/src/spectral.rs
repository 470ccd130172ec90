//! Frequency-band correction: DFT, band masking, inverse DFT, and the
//! tortuosity of band-limited curve pairs.
//!
//! Convention: unnormalised forward transform, `1/n` on the inverse. The
//! frequency index of bin `j` is `min(j, n − j)`, so a mask that depends
//! only on that index keeps the spectrum of a real signal Hermitian.

use std::cell::RefCell;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::curves::{CurvePair, UniformGrid};
use crate::entropy::{self, ProbabilityModel, TortuosityScore};
use crate::error::{invalid, Result};

/// Largest imaginary residue `inverse` will silently drop.
pub const IMAG_RESIDUE_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumF {
    coefficients: Vec<Complex64>,
    grid: UniformGrid,
}

impl SpectrumF {
    pub fn new(coefficients: Vec<Complex64>, grid: UniformGrid) -> Result<Self> {
        if coefficients.len() != grid.len() {
            return invalid(format!(
                "spectrum has {} coefficients for a {}-node grid",
                coefficients.len(),
                grid.len()
            ));
        }
        Ok(Self { coefficients, grid })
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `min(j, n − j)`: distance of bin `j` from DC on the frequency circle.
    pub fn frequency_index(&self, bin: usize) -> usize {
        bin.min(self.len() - bin)
    }

    pub fn nyquist_index(&self) -> usize {
        self.len() / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BandKind {
    Low,
    High,
}

/// Cutoff expressed as a fraction of the Nyquist index. A low band keeps
/// frequency indices `<= fraction·nyquist`, a high band keeps indices
/// `>= fraction·nyquist`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandConfig {
    kind: BandKind,
    cutoff_fraction: f64,
}

impl BandConfig {
    pub const DEFAULT_CUTOFF: f64 = 0.05;

    pub fn new(kind: BandKind, cutoff_fraction: f64) -> Result<Self> {
        if !(cutoff_fraction > 0.0 && cutoff_fraction <= 1.0) {
            return invalid(format!(
                "cutoff fraction must lie in (0, 1], got {cutoff_fraction}"
            ));
        }
        Ok(Self {
            kind,
            cutoff_fraction,
        })
    }

    pub fn low(cutoff_fraction: f64) -> Result<Self> {
        Self::new(BandKind::Low, cutoff_fraction)
    }

    pub fn high(cutoff_fraction: f64) -> Result<Self> {
        Self::new(BandKind::High, cutoff_fraction)
    }

    pub fn default_low() -> Self {
        Self {
            kind: BandKind::Low,
            cutoff_fraction: Self::DEFAULT_CUTOFF,
        }
    }

    pub fn default_high() -> Self {
        Self {
            kind: BandKind::High,
            cutoff_fraction: Self::DEFAULT_CUTOFF,
        }
    }

    pub fn kind(&self) -> BandKind {
        self.kind
    }

    pub fn cutoff_fraction(&self) -> f64 {
        self.cutoff_fraction
    }

    fn keeps(&self, freq_index: usize, nyquist: usize) -> bool {
        let cutoff = self.cutoff_fraction * nyquist as f64;
        let k = freq_index as f64;
        match self.kind {
            BandKind::Low => k <= cutoff,
            BandKind::High => k >= cutoff,
        }
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(n)
        } else {
            p.plan_fft_forward(n)
        }
    })
}

/// Discrete Fourier transform of `ys` sampled on `grid`.
pub fn forward(ys: &[f64], grid: &UniformGrid) -> Result<SpectrumF> {
    if ys.len() != grid.len() {
        return invalid(format!(
            "signal has {} samples for a {}-node grid",
            ys.len(),
            grid.len()
        ));
    }
    let mut buf: Vec<Complex64> = ys.iter().map(|&y| Complex64::new(y, 0.0)).collect();
    plan(buf.len(), false).process(&mut buf);
    SpectrumF::new(buf, *grid)
}

/// Zeroes every coefficient outside the band.
pub fn band_filter(spec: &SpectrumF, band: &BandConfig) -> SpectrumF {
    let nyq = spec.nyquist_index();
    let coefficients = spec
        .coefficients
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            if band.keeps(spec.frequency_index(j), nyq) {
                c
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    SpectrumF {
        coefficients,
        grid: spec.grid,
    }
}

/// Inverse transform back to a real signal.
///
/// Fails if the result carries an imaginary part of `IMAG_RESIDUE_LIMIT` or
/// more, which means the spectrum was not Hermitian.
pub fn inverse(spec: &SpectrumF) -> Result<Vec<f64>> {
    let n = spec.len();
    let mut buf = spec.coefficients.clone();
    plan(n, true).process(&mut buf);
    let scale = 1.0 / n as f64;
    let residue = buf.iter().map(|c| (c.im * scale).abs()).fold(0.0, f64::max);
    if residue >= IMAG_RESIDUE_LIMIT {
        return invalid(format!(
            "spectrum is not conjugate-symmetric (imaginary residue {residue:e})"
        ));
    }
    Ok(buf.into_iter().map(|c| c.re * scale).collect())
}

/// Band-limited copy of a real signal.
pub fn filter_signal(ys: &[f64], grid: &UniformGrid, band: &BandConfig) -> Result<Vec<f64>> {
    inverse(&band_filter(&forward(ys, grid)?, band))
}

/// Filters standard and target with the same band, then scores the result.
pub fn band_tortuosity(
    pair: &CurvePair,
    band: &BandConfig,
    model: &ProbabilityModel,
) -> Result<TortuosityScore> {
    entropy::tortuosity(&band_pair(pair, band)?, model)
}

/// [`band_tortuosity`] without the audit vectors.
pub fn band_tortuosity_value(
    pair: &CurvePair,
    band: &BandConfig,
    model: &ProbabilityModel,
) -> Result<f64> {
    entropy::tortuosity_value(&band_pair(pair, band)?, model)
}

pub fn band_pair(pair: &CurvePair, band: &BandConfig) -> Result<CurvePair> {
    let grid = *pair.grid();
    let standard = filter_signal(pair.standard().ys(), &grid, band)?;
    let target = filter_signal(pair.target().ys(), &grid, band)?;
    CurvePair::on_grid(grid, standard, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid(n: usize) -> UniformGrid {
        UniformGrid::new(0.0, 1.0, n).unwrap()
    }

    /// O(n²) transform straight from the definition.
    fn naive_dft(ys: &[f64]) -> Vec<Complex64> {
        let n = ys.len();
        (0..n)
            .map(|k| {
                ys.iter()
                    .enumerate()
                    .fold(Complex64::new(0.0, 0.0), |acc, (t, &y)| {
                        let ang = -2.0 * std::f64::consts::PI * ((k * t) % n) as f64 / n as f64;
                        acc + Complex64::new(ang.cos(), ang.sin()) * y
                    })
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [3, 8, 17, 100, 128] {
            let ys: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let fast = forward(&ys, &grid(n)).unwrap();
            let slow = naive_dft(&ys);
            for (a, b) in fast.coefficients().iter().zip(&slow) {
                assert!((a - b).norm() < 1e-9, "n={n}");
            }
        }
    }

    #[test]
    fn constant_signal_is_all_dc() {
        let s = forward(&[2.5; 10], &grid(10)).unwrap();
        assert!((s.coefficients()[0].re - 25.0).abs() < 1e-12);
        assert!(s.coefficients()[1..].iter().all(|c| c.norm() < 1e-12));
    }

    #[test]
    fn pure_tone_has_two_bins() {
        let n = 64;
        let k = 5;
        let ys: Vec<f64> = (0..n)
            .map(|t| (2.0 * std::f64::consts::PI * (k * t) as f64 / n as f64).cos())
            .collect();
        let s = forward(&ys, &grid(n)).unwrap();
        for (j, c) in s.coefficients().iter().enumerate() {
            if j == k || j == n - k {
                assert!((c.re - n as f64 / 2.0).abs() < 1e-9);
            } else {
                assert!(c.norm() < 1e-9, "bin {j} = {c}");
            }
        }
    }

    #[test]
    fn length_mismatch_rejected() {
        assert!(forward(&[1.0, 2.0], &grid(3)).is_err());
    }

    #[test]
    fn band_filter_edge_cases() {
        let g = grid(16);
        let dc = forward(&[1.0; 16], &g).unwrap();
        assert_eq!(band_filter(&dc, &BandConfig::default_low()), dc);
        let hp = band_filter(&dc, &BandConfig::default_high());
        assert!(hp
            .coefficients()
            .iter()
            .all(|c| *c == Complex64::new(0.0, 0.0)));

        let ys: Vec<f64> = (0..16).map(|i| ((i * 7) % 5) as f64).collect();
        let s = forward(&ys, &g).unwrap();
        assert_eq!(band_filter(&s, &BandConfig::low(1.0).unwrap()), s);
    }

    #[test]
    fn band_config_validation() {
        assert!(BandConfig::low(0.0).is_err());
        assert!(BandConfig::high(1.5).is_err());
        assert!(BandConfig::high(f64::NAN).is_err());
        assert!(BandConfig::low(1.0).is_ok());
    }

    #[test]
    fn inverse_cases() {
        let g = grid(8);
        let zero = SpectrumF::new(vec![Complex64::new(0.0, 0.0); 8], g).unwrap();
        assert_eq!(inverse(&zero).unwrap(), vec![0.0; 8]);

        let mut dc = vec![Complex64::new(0.0, 0.0); 8];
        dc[0] = Complex64::new(8.0 * 1.75, 0.0);
        let out = inverse(&SpectrumF::new(dc, g).unwrap()).unwrap();
        assert!(out.iter().all(|v| (v - 1.75).abs() < 1e-12));

        let mut lopsided = vec![Complex64::new(0.0, 0.0); 8];
        lopsided[1] = Complex64::new(1.0, 0.0);
        assert!(inverse(&SpectrumF::new(lopsided, g).unwrap()).is_err());
    }

    #[test]
    fn unit_sine_survives_default_low_pass() {
        let g = UniformGrid::spanning(0.0, std::f64::consts::TAU, 1000).unwrap();
        let ys: Vec<f64> = g.xs().iter().map(|x| x.sin()).collect();
        let low = filter_signal(&ys, &g, &BandConfig::default_low()).unwrap();
        let err = ys
            .iter()
            .zip(&low)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 0.05, "max deviation {err}");
    }

    #[test]
    fn identical_curves_any_band_zero() {
        let g = grid(50);
        let ys: Vec<f64> = (0..50).map(|i| ((i * i) % 13) as f64).collect();
        let p = CurvePair::on_grid(g, ys.clone(), ys).unwrap();
        let m = ProbabilityModel::default();
        for band in [BandConfig::default_low(), BandConfig::default_high()] {
            assert_eq!(band_tortuosity(&p, &band, &m).unwrap().value, 0.0);
        }
    }

    proptest! {
        #[test]
        fn round_trip(ys in proptest::collection::vec(-1e3f64..1e3, 3..2048)) {
            let g = grid(ys.len());
            let back = inverse(&forward(&ys, &g).unwrap()).unwrap();
            for (a, b) in ys.iter().zip(&back) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }

        #[test]
        fn parseval(ys in proptest::collection::vec(-10.0f64..10.0, 3..1024)) {
            let g = grid(ys.len());
            let s = forward(&ys, &g).unwrap();
            let time: f64 = ys.iter().map(|v| v * v).sum();
            let freq: f64 = s.coefficients().iter().map(|c| c.norm_sqr()).sum::<f64>() / ys.len() as f64;
            prop_assume!(time > 1e-12);
            prop_assert!(((time - freq) / time).abs() < 1e-9);
        }

        #[test]
        fn filter_is_idempotent(
            ys in proptest::collection::vec(-10.0f64..10.0, 3..256),
            frac in 0.01f64..1.0,
            high in any::<bool>(),
        ) {
            let g = grid(ys.len());
            let band = if high { BandConfig::high(frac) } else { BandConfig::low(frac) }.unwrap();
            let s = forward(&ys, &g).unwrap();
            let once = band_filter(&s, &band);
            prop_assert_eq!(band_filter(&once, &band), once.clone());
            // filtered spectra of real signals invert cleanly
            prop_assert!(inverse(&once).is_ok());
        }

        #[test]
        fn linearity(
            xy in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 3..512),
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
        ) {
            let (x, y): (Vec<f64>, Vec<f64>) = xy.into_iter().unzip();
            let g = grid(x.len());
            let mix: Vec<f64> = x.iter().zip(&y).map(|(p, q)| a * p + b * q).collect();
            let fx = forward(&x, &g).unwrap();
            let fy = forward(&y, &g).unwrap();
            let fm = forward(&mix, &g).unwrap();
            for ((m, p), q) in fm.coefficients().iter().zip(fx.coefficients()).zip(fy.coefficients()) {
                prop_assert!((m - (p * a + q * b)).norm() < 1e-9);
            }
        }
    }
}
