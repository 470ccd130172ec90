//! Noise-sweep experiment: a sine standard curve against Gaussian-noise
//! targets, scored on the full band and on the low and high bands.
//!
//! Trial `t` at level index `l` draws its noise from ChaCha stream
//! `l·trials + t` of the configured seed, so results do not depend on how
//! trials are scheduled across threads.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{CurvePair, UniformGrid};
use crate::entropy::{self, ProbabilityModel};
use crate::error::{invalid, Error, Result};
use crate::spectral::{self, BandConfig};
use crate::svg::{LineChart, Series};

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub amplitude: f64,
    pub periods: f64,
    pub n_samples: usize,
    pub noise_levels: Vec<f64>,
    pub trials_per_level: usize,
    pub seed: u64,
    pub low_band: BandConfig,
    pub high_band: BandConfig,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            amplitude: 1.0,
            periods: 1.0,
            n_samples: 1000,
            noise_levels: default_levels(),
            trials_per_level: 5000,
            seed: 0,
            low_band: BandConfig::default_low(),
            high_band: BandConfig::default_high(),
        }
    }
}

/// 0.0, 0.1, ..., 0.9
pub fn default_levels() -> Vec<f64> {
    (0..10).map(|i| i as f64 / 10.0).collect()
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.noise_levels.is_empty() {
            return invalid("at least one noise level is required");
        }
        if self.noise_levels.iter().any(|s| !s.is_finite() || *s < 0.0) {
            return invalid("noise levels must be finite and nonnegative");
        }
        if self.noise_levels.windows(2).any(|w| w[1] <= w[0]) {
            return invalid("noise levels must be strictly increasing");
        }
        if self.trials_per_level == 0 {
            return invalid("trials per level must be at least 1");
        }
        if !self.amplitude.is_finite() || !self.periods.is_finite() {
            return invalid("amplitude and periods must be finite");
        }
        UniformGrid::new(0.0, 1.0, self.n_samples)?;
        Ok(())
    }

    /// Sample grid on `[0, 2π]`.
    pub fn grid(&self) -> Result<UniformGrid> {
        UniformGrid::spanning(0.0, std::f64::consts::TAU, self.n_samples)
    }

    pub fn standard_curve(&self) -> Result<Vec<f64>> {
        let grid = self.grid()?;
        let span = grid.end() - grid.start();
        Ok(grid
            .xs()
            .iter()
            .map(|&x| {
                self.amplitude
                    * (std::f64::consts::TAU * self.periods * (x - grid.start()) / span).sin()
            })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelStats {
    pub noise_level: f64,
    pub mean_full: f64,
    pub sd_full: f64,
    pub mean_low: f64,
    pub sd_low: f64,
    pub mean_high: f64,
    pub sd_high: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub levels: Vec<LevelStats>,
    pub trials_per_level: usize,
    pub elapsed_secs: f64,
}

impl SimReport {
    pub fn seconds_per_trial(&self) -> f64 {
        let trials = self.trials_per_level * self.levels.len();
        self.elapsed_secs / trials.max(1) as f64
    }

    pub fn write_csv_to(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "noise_level,mean_full,sd_full,mean_low,sd_low,mean_high,sd_high"
        )?;
        for l in &self.levels {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                l.noise_level, l.mean_full, l.sd_full, l.mean_low, l.sd_low, l.mean_high, l.sd_high
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii")
    }
}

/// Scores of one trial: full band, low band, high band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialScores {
    pub full: f64,
    pub low: f64,
    pub high: f64,
}

pub fn score_trial(
    pair: &CurvePair,
    low: &BandConfig,
    high: &BandConfig,
    model: &ProbabilityModel,
) -> Result<TrialScores> {
    Ok(TrialScores {
        full: entropy::tortuosity_value(pair, model)?,
        low: spectral::band_tortuosity_value(pair, low, model)?,
        high: spectral::band_tortuosity_value(pair, high, model)?,
    })
}

/// Neumaier-compensated mean and sample SD, accumulated in slice order.
fn mean_sd(values: &[f64]) -> (f64, f64) {
    let compensated = |it: &mut dyn Iterator<Item = f64>| {
        let (mut sum, mut c) = (0.0f64, 0.0f64);
        for v in it {
            let t = sum + v;
            if sum.abs() >= v.abs() {
                c += (sum - t) + v;
            } else {
                c += (v - t) + sum;
            }
            sum = t;
        }
        sum + c
    };
    let n = values.len() as f64;
    let mean = compensated(&mut values.iter().copied()) / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss = compensated(&mut values.iter().map(|v| (v - mean) * (v - mean)));
    (mean, (ss / (n - 1.0)).sqrt())
}

pub fn run_simulation(cfg: &SimConfig) -> Result<SimReport> {
    cfg.validate()?;
    let started = Instant::now();
    let grid = cfg.grid()?;
    let standard = cfg.standard_curve()?;
    let model = ProbabilityModel::default();
    let trials = cfg.trials_per_level;

    let mut levels = Vec::with_capacity(cfg.noise_levels.len());
    for (li, &sigma) in cfg.noise_levels.iter().enumerate() {
        let scores: Vec<TrialScores> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream((li * trials + t) as u64);
                let target: Vec<f64> = standard
                    .iter()
                    .map(|&y| {
                        let z: f64 = StandardNormal.sample(&mut rng);
                        y + sigma * z
                    })
                    .collect();
                let pair = CurvePair::on_grid(grid, standard.clone(), target)?;
                score_trial(&pair, &cfg.low_band, &cfg.high_band, &model)
            })
            .collect::<Result<_>>()?;
        let column = |f: fn(&TrialScores) -> f64| scores.iter().map(f).collect::<Vec<_>>();
        let (mean_full, sd_full) = mean_sd(&column(|s| s.full));
        let (mean_low, sd_low) = mean_sd(&column(|s| s.low));
        let (mean_high, sd_high) = mean_sd(&column(|s| s.high));
        levels.push(LevelStats {
            noise_level: sigma,
            mean_full,
            sd_full,
            mean_low,
            sd_low,
            mean_high,
            sd_high,
        });
    }
    Ok(SimReport {
        levels,
        trials_per_level: trials,
        elapsed_secs: started.elapsed().as_secs_f64(),
    })
}

pub const REPORT_CSV: &str = "sim_report.csv";
pub const PLOT_FILES: [&str; 3] = [
    "tortuosity_full.svg",
    "tortuosity_low.svg",
    "tortuosity_high.svg",
];

/// Writes the report CSV and one trend chart per band into `dir`.
pub fn emit_plots(report: &SimReport, dir: &Path) -> Result<Vec<PathBuf>> {
    if report.levels.is_empty() {
        return invalid("report has no noise levels");
    }
    std::fs::create_dir_all(dir)?;
    let csv_path = dir.join(REPORT_CSV);
    std::fs::write(&csv_path, report.to_csv())?;
    let mut written = vec![csv_path];

    type Pick = fn(&LevelStats) -> (f64, f64);
    let bands: [(&str, &str, Pick); 3] = [
        ("Full band", "#1f77b4", |l| (l.mean_full, l.sd_full)),
        ("Low band", "#2ca02c", |l| (l.mean_low, l.sd_low)),
        ("High band", "#d62728", |l| (l.mean_high, l.sd_high)),
    ];
    for ((title, color, pick), file) in bands.into_iter().zip(PLOT_FILES) {
        let mean: Vec<(f64, f64)> = report
            .levels
            .iter()
            .map(|l| (l.noise_level, pick(l).0))
            .collect();
        let upper: Vec<(f64, f64)> = report
            .levels
            .iter()
            .map(|l| (l.noise_level, pick(l).0 + pick(l).1))
            .collect();
        let chart = LineChart {
            title: format!("{title} tortuosity vs noise level"),
            x_label: "noise level (σ)".into(),
            y_label: "mean tortuosity".into(),
            series: vec![
                Series {
                    name: "mean".into(),
                    points: mean,
                    color,
                    dashed: false,
                },
                Series {
                    name: "mean + 1 SD".into(),
                    points: upper,
                    color: "#999999",
                    dashed: true,
                },
            ],
            x_range: None,
            y_range: None,
        };
        let path = dir.join(file);
        std::fs::write(&path, chart.render()).map_err(Error::Io)?;
        written.push(path);
    }
    Ok(written)
}
