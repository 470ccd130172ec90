use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};

use tortuo::boundary::{Envelope, GaussianKernelConfig, GrayImage, SnakeConfig};
use tortuo::curves::SampledCurve;
use tortuo::pipeline::{self, BandChoice, ExtractConfig, ScoreConfig};
use tortuo::reference::ReferenceStrategy;
use tortuo::sim::{self, SimConfig};
use tortuo::spectral::BandConfig;
use tortuo::stats::{compare_groups, GroupSample};
use tortuo::synth::{synth_mask, MaskKind, SynthConfig};

use crate::args::{CompareArgs, ExtractArgs, ScoreArgs, SimulateArgs, SynthArgs};
use crate::format::sig6;
use crate::{CmdResult, Failure, EXIT_EMPTY};

fn usage<T>(r: tortuo::Result<T>) -> Result<T, Failure> {
    r.map_err(Failure::usage)
}

fn input<T>(r: tortuo::Result<T>, path: &Path) -> Result<T, Failure> {
    r.with_context(|| format!("cannot load {}", path.display()))
        .map_err(Failure::io)
}

pub fn simulate(a: SimulateArgs) -> CmdResult {
    let cfg = SimConfig {
        amplitude: a.amplitude,
        periods: a.periods,
        n_samples: a.samples,
        noise_levels: a.levels,
        trials_per_level: a.trials,
        seed: a.seed,
        low_band: usage(BandConfig::low(a.cutoff))?,
        high_band: usage(BandConfig::high(a.cutoff))?,
    };
    usage(cfg.validate())?;
    eprintln!(
        "simulate: {} levels × {} trials, n={}, seed {}, band cutoff {}",
        cfg.noise_levels.len(),
        cfg.trials_per_level,
        cfg.n_samples,
        cfg.seed,
        a.cutoff
    );
    let report = sim::run_simulation(&cfg).map_err(Failure::classify)?;
    let files = sim::emit_plots(&report, &a.out)
        .with_context(|| format!("cannot write to {}", a.out.display()))
        .map_err(Failure::io)?;

    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "sigma", "full", "sd", "low", "sd", "high", "sd"
    );
    for l in &report.levels {
        println!(
            "{:>8} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
            sig6(l.noise_level),
            sig6(l.mean_full),
            sig6(l.sd_full),
            sig6(l.mean_low),
            sig6(l.sd_low),
            sig6(l.mean_high),
            sig6(l.sd_high)
        );
    }
    eprintln!(
        "simulate: {} s per trial; wrote {}",
        sig6(report.seconds_per_trial()),
        files
            .iter()
            .map(|p| p.display().to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(())
}

pub fn extract(a: ExtractArgs) -> CmdResult {
    let cfg = ExtractConfig {
        blur: usage(GaussianKernelConfig::new(a.blur_k, a.blur_sigma))?,
        threshold: a.threshold,
        envelope: if a.lower {
            Envelope::Lower
        } else {
            Envelope::Upper
        },
        snake: SnakeConfig {
            alpha: a.snake_alpha,
            beta: a.snake_beta,
            mu: a.snake_mu,
            max_iters: a.snake_iters,
            ..SnakeConfig::default()
        },
    };
    usage(cfg.snake.validate())?;
    if !(0.0..1.0).contains(&cfg.threshold) {
        return Err(Failure::usage(anyhow!("--threshold must be in [0, 1)")));
    }
    eprintln!(
        "extract: blur k={} (σ={}), threshold {:?}, snake α={:?}, β={:?}, μ={:?}, max {} iterations",
        cfg.blur.radius(),
        sig6(cfg.blur.effective_sigma()),
        cfg.threshold,
        cfg.snake.alpha,
        cfg.snake.beta,
        cfg.snake.mu,
        cfg.snake.max_iters
    );
    let mask = input(GrayImage::load(&a.mask), &a.mask)?;
    let ex = pipeline::extract_curve(&mask, &cfg).map_err(|e| match e {
        // a fold-back contour is as unusable as an empty one
        tortuo::Error::Validation(_) => Failure {
            code: EXIT_EMPTY,
            error: Some(e.into()),
        },
        e => Failure::classify(e),
    })?;
    ex.curve
        .write_csv(&a.out)
        .with_context(|| format!("cannot write {}", a.out.display()))
        .map_err(Failure::io)?;
    eprintln!(
        "extract: {} initial points, snake {:?} after {} iterations ({} backtracks{})",
        ex.initial_points,
        ex.stop,
        ex.iterations,
        ex.backtracks,
        if ex.clamped { ", clamped to image" } else { "" }
    );
    println!(
        "{} points, x in [{}, {}] -> {}",
        ex.curve.len(),
        sig6(ex.curve.x_min()),
        sig6(ex.curve.x_max()),
        a.out.display()
    );
    Ok(())
}

pub fn score(a: ScoreArgs) -> CmdResult {
    let reference = match (&a.reference, &a.standard) {
        (Some(r), _) => usage(r.parse::<ReferenceStrategy>())?,
        (None, Some(_)) => ReferenceStrategy::File,
        (None, None) => ReferenceStrategy::default(),
    }
    .with_cutoff(a.ref_cutoff);
    if let ReferenceStrategy::Lowpass { cutoff } = reference {
        usage(BandConfig::low(cutoff))?;
    }
    let band: BandChoice = usage(a.band.parse())?;
    usage(BandConfig::low(a.cutoff))?;
    if reference == ReferenceStrategy::File && a.standard.is_none() {
        return Err(Failure::usage(anyhow!("--ref file needs --standard")));
    }
    if reference != ReferenceStrategy::File && a.standard.is_some() {
        eprintln!("score: --standard is ignored with --ref {reference}");
    }

    let target = input(SampledCurve::read_csv(&a.target), &a.target)?;
    let standard = match &a.standard {
        Some(p) if reference == ReferenceStrategy::File => {
            Some(input(SampledCurve::read_csv(p), p)?)
        }
        _ => None,
    };
    let cfg = ScoreConfig {
        band,
        cutoff: a.cutoff,
        reference,
        ..ScoreConfig::default()
    };
    eprintln!("score: reference {reference}, band {band}");
    let scores =
        pipeline::score_curve(&target, standard.as_ref(), &cfg).map_err(Failure::classify)?;
    let json = serde_json::to_string_pretty(&scores).expect("scores serialise");
    println!("{json}");
    if let Some(out) = &a.out {
        std::fs::write(out, json + "\n")
            .with_context(|| format!("cannot write {}", out.display()))
            .map_err(Failure::io)?;
    }
    if let (Some(path), Some(label)) = (&a.append_group, &a.label) {
        append_group(path, label, scores.ieb)
            .with_context(|| format!("cannot append to {}", path.display()))
            .map_err(Failure::io)?;
    }
    Ok(())
}

fn append_group(path: &Path, label: &str, value: f64) -> std::io::Result<()> {
    let fresh = !path.exists() || std::fs::metadata(path)?.len() == 0;
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    if fresh {
        writeln!(f, "label,score")?;
    }
    writeln!(f, "{label},{value}")
}

pub fn compare(a: CompareArgs) -> CmdResult {
    if a.bootstrap == 0 {
        return Err(Failure::usage(anyhow!("--bootstrap must be at least 1")));
    }
    let neg = input(GroupSample::read_csv(&a.neg), &a.neg)?;
    let pos = input(GroupSample::read_csv(&a.pos), &a.pos)?;
    let cmp = compare_groups(&neg, &pos, a.bootstrap, a.seed).map_err(Failure::classify)?;
    let files = pipeline::write_comparison(&cmp, &a.out)
        .with_context(|| format!("cannot write to {}", a.out.display()))
        .map_err(Failure::io)?;

    for g in &cmp.groups {
        println!(
            "{}: n={} median {} (IQR {}–{}), mean {} ± {}",
            g.label,
            g.n,
            sig6(g.median),
            sig6(g.q1),
            sig6(g.q3),
            sig6(g.mean),
            sig6(g.sd)
        );
    }
    let r = &cmp.roc;
    println!(
        "AUC {} (95% CI {}–{})",
        sig6(r.auc),
        sig6(r.auc_ci_low),
        sig6(r.auc_ci_high)
    );
    println!("sensitivity {}", sig6(r.sensitivity));
    println!("specificity {}", sig6(r.specificity));
    println!("Youden threshold {}", sig6(r.youden_threshold));
    println!(
        "Mann-Whitney U {} p {} ({})",
        sig6(cmp.u_test.u_statistic),
        sig6(cmp.u_test.p_value),
        serde_json::to_value(cmp.u_test.method)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default()
    );
    eprintln!(
        "compare: wrote {}",
        files
            .iter()
            .map(|p| p.display().to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(())
}

pub fn synth(a: SynthArgs) -> CmdResult {
    let kind = match a.kind.as_str() {
        "uniform" => MaskKind::Uniform,
        "uneven" => MaskKind::Uneven,
        other => {
            return Err(Failure::usage(anyhow!(
                "unknown mask kind '{other}' (expected uniform or uneven)"
            )))
        }
    };
    let cfg = SynthConfig {
        width: a.width,
        height: a.height,
        ..SynthConfig::default()
    };
    usage(cfg.validate())?;
    std::fs::create_dir_all(&a.out)
        .with_context(|| format!("cannot create {}", a.out.display()))
        .map_err(Failure::io)?;
    for i in 0..a.count {
        let mask = synth_mask(&cfg, kind, i, a.seed).map_err(Failure::classify)?;
        let path = a.out.join(format!("{}_{i:03}.pgm", a.kind));
        mask.write_pgm(&path)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::io)?;
    }
    println!("{} {} masks -> {}", a.count, a.kind, a.out.display());
    Ok(())
}
