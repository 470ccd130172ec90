//! End-to-end workflows: mask → curve, curve → scores, groups → report.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::baselines::{chord_arc_ratio, total_variation, NormalizerConfig};
use crate::boundary::{
    contour_to_curve, gaussian_blur, initial_boundary_with, snake_refine, truncate_extremal,
    Envelope, GaussianKernelConfig, GrayImage, SnakeConfig, StopReason,
};
use crate::curves::{CurvePair, SampledCurve};
use crate::entropy::{tortuosity_value, ProbabilityModel};
use crate::error::{invalid, Error, Result};
use crate::reference::ReferenceStrategy;
use crate::spectral::{band_pair, BandConfig};
use crate::stats::{GroupComparison, RocResult};
use crate::svg::{LineChart, Series};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractConfig {
    pub blur: GaussianKernelConfig,
    /// Foreground threshold on the 0–1 scale, applied to the blurred mask.
    pub threshold: f64,
    pub envelope: Envelope,
    pub snake: SnakeConfig,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        Self {
            blur: GaussianKernelConfig::default(),
            threshold: 0.5,
            envelope: Envelope::Upper,
            snake: SnakeConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub curve: SampledCurve,
    pub initial_points: usize,
    pub iterations: usize,
    pub stop: StopReason,
    pub clamped: bool,
    pub backtracks: usize,
    pub final_energy: f64,
}

/// Binarize → blur → initial boundary → snake → extremal truncation →
/// `y = f(x)` conversion.
pub fn extract_curve(mask: &GrayImage, cfg: &ExtractConfig) -> Result<Extraction> {
    cfg.snake.validate()?;
    if !(0.0..1.0).contains(&cfg.threshold) {
        return invalid(format!(
            "threshold must be in [0, 1), got {}",
            cfg.threshold
        ));
    }
    let bin = mask.binarized();
    if bin.sum() == 0.0 {
        return Err(Error::Extraction("mask has no foreground pixels".into()));
    }
    let blurred = gaussian_blur(&bin, &cfg.blur);
    let init = initial_boundary_with(&blurred, cfg.threshold, cfg.envelope)?;
    let outcome = snake_refine(&blurred, &init, &cfg.snake)?;
    let kept = truncate_extremal(&outcome.contour)?;
    let curve = contour_to_curve(&kept)?;
    Ok(Extraction {
        curve,
        initial_points: init.len(),
        iterations: outcome.iterations,
        stop: outcome.stop,
        clamped: outcome.clamped,
        backtracks: outcome.backtracks,
        final_energy: outcome.energy_trace.last().copied().unwrap_or(f64::NAN),
    })
}

pub fn extract_file(path: &Path, cfg: &ExtractConfig) -> Result<Extraction> {
    extract_curve(&GrayImage::load(path)?, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BandChoice {
    #[default]
    Full,
    Low,
    High,
}

impl FromStr for BandChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "full" => Ok(Self::Full),
            "low" => Ok(Self::Low),
            "high" => Ok(Self::High),
            other => invalid(format!(
                "unknown band '{other}' (expected full, low or high)"
            )),
        }
    }
}

impl fmt::Display for BandChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Full => "full",
            Self::Low => "low",
            Self::High => "high",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreConfig {
    pub band: BandChoice,
    /// Band cutoff fraction; ignored for the full band.
    pub cutoff: f64,
    pub reference: ReferenceStrategy,
    pub model: ProbabilityModel,
    pub normalizer: NormalizerConfig,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        Self {
            band: BandChoice::Full,
            cutoff: BandConfig::DEFAULT_CUTOFF,
            reference: ReferenceStrategy::default(),
            model: ProbabilityModel::default(),
            normalizer: NormalizerConfig::default(),
        }
    }
}

/// Scores of one target. The baselines are taken on the target as scored,
/// i.e. after band filtering when a band is selected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveScores {
    pub ieb: f64,
    pub chord_arc: f64,
    pub total_variation: f64,
}

pub fn score_pair(pair: &CurvePair, cfg: &ScoreConfig) -> Result<CurveScores> {
    let banded;
    let scored = match cfg.band {
        BandChoice::Full => pair,
        BandChoice::Low => {
            banded = band_pair(pair, &BandConfig::low(cfg.cutoff)?)?;
            &banded
        }
        BandChoice::High => {
            banded = band_pair(pair, &BandConfig::high(cfg.cutoff)?)?;
            &banded
        }
    };
    Ok(CurveScores {
        ieb: tortuosity_value(scored, &cfg.model)?,
        chord_arc: chord_arc_ratio(scored.target())?,
        total_variation: total_variation(scored.target(), &cfg.normalizer),
    })
}

pub fn score_curve(
    target: &SampledCurve,
    standard: Option<&SampledCurve>,
    cfg: &ScoreConfig,
) -> Result<CurveScores> {
    score_pair(&cfg.reference.pair(target, standard)?, cfg)
}

/// ROC curve with the chance diagonal.
pub fn roc_chart(roc: &RocResult, title: &str) -> LineChart {
    LineChart {
        title: format!("{title} (AUC {:.3})", roc.auc),
        x_label: "false positive rate".into(),
        y_label: "true positive rate".into(),
        series: vec![
            Series {
                name: "ROC".into(),
                points: roc.points.iter().map(|p| (p.fpr, p.tpr)).collect(),
                color: "#1f77b4",
                dashed: false,
            },
            Series {
                name: "chance".into(),
                points: vec![(0.0, 0.0), (1.0, 1.0)],
                color: "#999999",
                dashed: true,
            },
        ],
        x_range: Some((0.0, 1.0)),
        y_range: Some((0.0, 1.0)),
    }
}

pub const REPORT_JSON: &str = "report.json";
pub const ROC_SVG: &str = "roc.svg";

/// Writes `report.json` and `roc.svg` into `dir`.
pub fn write_comparison(cmp: &GroupComparison, dir: &Path) -> Result<[PathBuf; 2]> {
    std::fs::create_dir_all(dir)?;
    let report = dir.join(REPORT_JSON);
    std::fs::write(&report, cmp.to_json() + "\n")?;
    let title = match cmp.groups.as_slice() {
        [a, b] => format!("{} vs {}", b.label, a.label),
        _ => "ROC".to_string(),
    };
    let svg = dir.join(ROC_SVG);
    std::fs::write(&svg, roc_chart(&cmp.roc, &title).render())?;
    Ok([report, svg])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::UniformGrid;
    use crate::stats::{compare_groups, GroupSample};

    #[test]
    fn band_parsing() {
        assert_eq!("low".parse::<BandChoice>().unwrap(), BandChoice::Low);
        assert_eq!("full".parse::<BandChoice>().unwrap(), BandChoice::Full);
        assert!("mid".parse::<BandChoice>().is_err());
        assert_eq!(BandChoice::High.to_string(), "high");
    }

    #[test]
    fn identical_pair_scores() {
        let grid = UniformGrid::spanning(0.0, 10.0, 50).unwrap();
        let c = SampledCurve::from_fn(&grid, |x| 2.0 * x + 1.0).unwrap();
        let cfg = ScoreConfig {
            reference: ReferenceStrategy::File,
            ..ScoreConfig::default()
        };
        let s = score_curve(&c, Some(&c), &cfg).unwrap();
        assert_eq!(s.ieb, 0.0);
        assert!((s.chord_arc - 1.0).abs() < 1e-12);
        assert!((s.total_variation - 20.0).abs() < 1e-9);
    }

    #[test]
    fn high_band_score_runs() {
        let grid = UniformGrid::spanning(0.0, 63.0, 64).unwrap();
        let t = SampledCurve::from_fn(&grid, |x| (x * 0.1).sin() + 0.5 * (x * 2.5).sin()).unwrap();
        let cfg = ScoreConfig {
            band: BandChoice::High,
            ..ScoreConfig::default()
        };
        let s = score_curve(&t, None, &cfg).unwrap();
        assert!(s.ieb.is_finite() && s.chord_arc >= 1.0);
    }

    #[test]
    fn empty_mask_is_extraction_error() {
        let img = GrayImage::from_fn(32, 32, |_, _| 0.0).unwrap();
        assert!(matches!(
            extract_curve(&img, &ExtractConfig::default()),
            Err(Error::Extraction(_))
        ));
    }

    #[test]
    fn flat_mask_gives_flat_curve() {
        let img = GrayImage::from_fn(96, 96, |_, y| if y >= 40 { 200.0 } else { 0.0 }).unwrap();
        let cfg = ExtractConfig {
            blur: GaussianKernelConfig::new(9, 3.0).unwrap(),
            ..ExtractConfig::default()
        };
        let ex = extract_curve(&img, &cfg).unwrap();
        assert!(ex.curve.len() > 80);
        for &y in ex.curve.ys() {
            assert!((y - 39.5).abs() < 0.5, "{y}");
        }
    }

    #[test]
    fn comparison_files_written() {
        let neg = GroupSample::new("uniform", vec![1.0, 2.0, 3.0]).unwrap();
        let pos = GroupSample::new("uneven", vec![4.0, 5.0, 6.0]).unwrap();
        let cmp = compare_groups(&neg, &pos, 50, 1).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_comparison(&cmp, dir.path()).unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join(REPORT_JSON)).unwrap())
                .unwrap();
        assert_eq!(json["roc"]["auc"], 1.0);
        assert!(std::fs::read_to_string(dir.path().join(ROC_SVG))
            .unwrap()
            .contains("uneven vs uniform"));
    }
}
