//! Two-group comparison: descriptive statistics, Mann–Whitney U, and ROC
//! analysis with a percentile-bootstrap AUC interval.
//!
//! Score polarity: larger scores indicate the positive class.

use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSample {
    pub label: String,
    pub values: Vec<f64>,
}

impl GroupSample {
    pub const MIN_LEN: usize = 3;

    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if values.len() < Self::MIN_LEN {
            return invalid(format!(
                "group `{label}` needs at least {} values, got {}",
                Self::MIN_LEN,
                values.len()
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return invalid(format!("group `{label}` contains a non-finite value"));
        }
        Ok(Self { label, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Reads a `label,score` CSV holding one group.
    pub fn read_csv(path: &Path) -> Result<Self> {
        let parse_err = |line: usize, msg: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            msg,
        };
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| match e.into_kind() {
                csv::ErrorKind::Io(io) => Error::Io(io),
                other => parse_err(0, format!("{other:?}")),
            })?;
        let headers = rdr
            .headers()
            .map_err(|e| parse_err(1, e.to_string()))?
            .clone();
        if headers.len() != 2 || &headers[0] != "label" || &headers[1] != "score" {
            return Err(parse_err(1, "expected header `label,score`".into()));
        }
        let mut label: Option<String> = None;
        let mut values = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| parse_err(line, e.to_string()))?;
            if rec.len() != 2 {
                return Err(parse_err(line, "expected two fields".into()));
            }
            match &label {
                None => label = Some(rec[0].to_string()),
                Some(l) if l != &rec[0] => {
                    return Err(parse_err(
                        line,
                        format!("mixed labels `{l}` and `{}` in one group file", &rec[0]),
                    ))
                }
                _ => {}
            }
            let v: f64 = rec[1]
                .parse()
                .map_err(|e| parse_err(line, format!("`{}`: {e}", &rec[1])))?;
            values.push(v);
        }
        let label = label.ok_or_else(|| parse_err(2, "no data rows".into()))?;
        Self::new(label, values).map_err(|e| parse_err(0, e.to_string()))
    }

    pub fn write_csv_to(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "label,score")?;
        for v in &self.values {
            writeln!(w, "{},{v}", self.label)?;
        }
        Ok(())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_csv_to(&mut w)?;
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub label: String,
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
}

/// Quantile of sorted data by linear interpolation between order
/// statistics at position `(n − 1)·p` (the inclusive rule).
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Mean, sample SD (n − 1 denominator), median and quartiles.
pub fn describe(g: &GroupSample) -> Summary {
    let n = g.values.len();
    let mean = g.values.iter().sum::<f64>() / n as f64;
    let ss: f64 = g.values.iter().map(|v| (v - mean).powi(2)).sum();
    let mut sorted = g.values.clone();
    sorted.sort_by(f64::total_cmp);
    Summary {
        label: g.label.clone(),
        n,
        mean,
        sd: (ss / (n - 1) as f64).sqrt(),
        median: quantile_sorted(&sorted, 0.5),
        q1: quantile_sorted(&sorted, 0.25),
        q3: quantile_sorted(&sorted, 0.75),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UTestMethod {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "normal-approx")]
    NormalApprox,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UTestResult {
    /// U of the first group: pairs (a, b) with a > b, ties counting 1/2.
    pub u_statistic: f64,
    pub p_value: f64,
    pub method: UTestMethod,
}

/// Largest number of rank arrangements for which the exact null
/// distribution is tabulated.
pub const EXACT_ARRANGEMENT_LIMIT: f64 = 1e6;

/// Midranks of the pooled sample, plus the tie-group sizes.
fn pooled_midranks(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut pooled: Vec<(f64, usize)> = a.iter().chain(b).copied().zip(0..).collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut ranks = vec![0.0; pooled.len()];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i;
        while j + 1 < pooled.len() && pooled[j + 1].0 == pooled[i].0 {
            j += 1;
        }
        let mid = (i + j) as f64 / 2.0 + 1.0;
        for item in &pooled[i..=j] {
            ranks[item.1] = mid;
        }
        if j > i {
            ties.push(j - i + 1);
        }
        i = j + 1;
    }
    (ranks, ties)
}

fn u_of_first(a: &[f64], b: &[f64]) -> (f64, Vec<usize>) {
    let (ranks, ties) = pooled_midranks(a, b);
    let n = a.len() as f64;
    let rank_sum: f64 = ranks[..a.len()].iter().sum();
    (rank_sum - n * (n + 1.0) / 2.0, ties)
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Number of arrangements giving each U value `0..=n·m` under the null.
///
/// `counts[k][u]` tracks subsets of size `k` of the items seen so far; adding
/// item `t` (0-based) to a subset of size `k` raises its U by `t − k`.
fn exact_u_counts(n: usize, m: usize) -> Vec<f64> {
    let umax = n * m;
    let mut counts = vec![vec![0.0f64; umax + 1]; n + 1];
    counts[0][0] = 1.0;
    for t in 0..n + m {
        for k in (0..n.min(t + 1)).rev() {
            if t < k {
                continue;
            }
            let shift = t - k;
            if shift > m {
                continue;
            }
            for u in (0..=umax - shift).rev() {
                let c = counts[k][u];
                if c != 0.0 {
                    counts[k + 1][u + shift] += c;
                }
            }
        }
    }
    counts.swap_remove(n)
}

/// Exact two-sided p: `min(1, 2·min(P(U ≤ u), P(U ≥ u)))`.
pub fn mann_whitney_exact(a: &[f64], b: &[f64]) -> Result<UTestResult> {
    check_nonempty(a, b)?;
    let (u, ties) = u_of_first(a, b);
    if !ties.is_empty() {
        return invalid("exact Mann-Whitney distribution requires tie-free samples");
    }
    let counts = exact_u_counts(a.len(), b.len());
    let total: f64 = counts.iter().sum();
    let u_idx = u as usize;
    let lower: f64 = counts[..=u_idx].iter().sum();
    let upper: f64 = counts[u_idx..].iter().sum();
    let p = (2.0 * lower.min(upper) / total).min(1.0);
    Ok(UTestResult {
        u_statistic: u,
        p_value: p,
        method: UTestMethod::Exact,
    })
}

/// Normal approximation with tie-corrected variance and a 0.5 continuity
/// correction.
pub fn mann_whitney_normal(a: &[f64], b: &[f64]) -> Result<UTestResult> {
    check_nonempty(a, b)?;
    let (u, ties) = u_of_first(a, b);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let total = n + m;
    let tie_term: f64 = ties.iter().map(|&t| (t as f64).powi(3) - t as f64).sum();
    let var = n * m / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    let p = if var <= 0.0 {
        1.0
    } else {
        let z = ((u - n * m / 2.0).abs() - 0.5) / var.sqrt();
        libm::erfc(z / std::f64::consts::SQRT_2).min(1.0)
    };
    Ok(UTestResult {
        u_statistic: u,
        p_value: p,
        method: UTestMethod::NormalApprox,
    })
}

/// Two-sided Mann–Whitney U test of `a` against `b`.
///
/// Exact when the samples are tie-free and there are at most
/// [`EXACT_ARRANGEMENT_LIMIT`] rank arrangements, normal approximation
/// otherwise.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<UTestResult> {
    check_nonempty(a, b)?;
    let (_, ties) = u_of_first(a, b);
    if ties.is_empty() && binomial(a.len() + b.len(), a.len()) <= EXACT_ARRANGEMENT_LIMIT {
        mann_whitney_exact(a, b)
    } else {
        mann_whitney_normal(a, b)
    }
}

fn check_nonempty(a: &[f64], b: &[f64]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return invalid("both groups must be nonempty");
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return invalid("scores must be finite");
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
    /// Score at or above which a sample is called positive; `+inf` for the
    /// origin.
    #[serde(serialize_with = "finite_or_null")]
    pub threshold: f64,
}

fn finite_or_null<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RocResult {
    pub points: Vec<RocPoint>,
    pub auc: f64,
    pub auc_ci_low: f64,
    pub auc_ci_high: f64,
    pub youden_threshold: f64,
    pub sensitivity: f64,
    pub specificity: f64,
}

/// ROC points from a descending sweep over every distinct score.
pub fn roc_points(neg: &[f64], pos: &[f64]) -> Vec<RocPoint> {
    let mut thresholds: Vec<f64> = neg.iter().chain(pos).copied().collect();
    thresholds.sort_by(|a, b| b.total_cmp(a));
    thresholds.dedup();
    let (nn, np) = (neg.len() as f64, pos.len() as f64);
    let mut points = vec![RocPoint {
        fpr: 0.0,
        tpr: 0.0,
        threshold: f64::INFINITY,
    }];
    for t in thresholds {
        let fp = neg.iter().filter(|&&v| v >= t).count() as f64;
        let tp = pos.iter().filter(|&&v| v >= t).count() as f64;
        points.push(RocPoint {
            fpr: fp / nn,
            tpr: tp / np,
            threshold: t,
        });
    }
    points
}

pub fn trapezoid_auc(points: &[RocPoint]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].fpr - w[0].fpr) * (w[1].tpr + w[0].tpr) / 2.0)
        .sum()
}

/// AUC as the normalised U of the positives: `(wins + ties/2) / (n·m)`.
pub fn rank_auc(neg: &[f64], pos: &[f64]) -> f64 {
    let mut sorted = neg.to_vec();
    sorted.sort_by(f64::total_cmp);
    let wins: f64 = pos
        .iter()
        .map(|&p| {
            let below = sorted.partition_point(|&v| v < p);
            let not_above = sorted.partition_point(|&v| v <= p);
            below as f64 + 0.5 * (not_above - below) as f64
        })
        .sum();
    wins / (neg.len() * pos.len()) as f64
}

/// ROC analysis of `pos` against `neg`.
///
/// The Youden threshold maximises `TPR − FPR`; among ties the point with the
/// lowest false-positive rate wins. The AUC interval is the 2.5%/97.5%
/// percentile of `bootstrap_n` stratified resamples, each drawn from its own
/// ChaCha stream of `seed`.
pub fn roc(neg: &[f64], pos: &[f64], bootstrap_n: usize, seed: u64) -> Result<RocResult> {
    check_nonempty(neg, pos)?;
    if bootstrap_n == 0 {
        return invalid("bootstrap_n must be at least 1");
    }
    let points = roc_points(neg, pos);
    let auc = trapezoid_auc(&points);

    let mut best = &points[1];
    for p in &points[1..] {
        if p.tpr - p.fpr > best.tpr - best.fpr {
            best = p;
        }
    }

    let mut boot: Vec<f64> = (0..bootstrap_n)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let n: Vec<f64> = (0..neg.len())
                .map(|_| neg[rng.random_range(0..neg.len())])
                .collect();
            let p: Vec<f64> = (0..pos.len())
                .map(|_| pos[rng.random_range(0..pos.len())])
                .collect();
            rank_auc(&n, &p)
        })
        .collect();
    boot.sort_by(f64::total_cmp);

    Ok(RocResult {
        auc,
        auc_ci_low: quantile_sorted(&boot, 0.025),
        auc_ci_high: quantile_sorted(&boot, 0.975),
        youden_threshold: best.threshold,
        sensitivity: best.tpr,
        specificity: 1.0 - best.fpr,
        points,
    })
}

/// Everything reported when comparing a negative and a positive group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupComparison {
    pub groups: Vec<Summary>,
    pub u_test: UTestResult,
    pub roc: RocResult,
}

pub fn compare_groups(
    neg: &GroupSample,
    pos: &GroupSample,
    bootstrap_n: usize,
    seed: u64,
) -> Result<GroupComparison> {
    Ok(GroupComparison {
        groups: vec![describe(neg), describe(pos)],
        u_test: mann_whitney_u(&neg.values, &pos.values)?,
        roc: roc(&neg.values, &pos.values, bootstrap_n, seed)?,
    })
}

impl GroupComparison {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(v: &[f64]) -> GroupSample {
        GroupSample::new("g", v.to_vec()).unwrap()
    }

    #[test]
    fn describe_small_groups() {
        let s = describe(&group(&[1.0, 2.0, 3.0]));
        assert_eq!((s.mean, s.sd, s.median), (2.0, 1.0, 2.0));
        let s = describe(&group(&[1.0, 1.0, 1.0, 1.0]));
        assert_eq!((s.sd, s.q1, s.q3), (0.0, 1.0, 1.0));
        let s = describe(&group(&[4.0, 1.0, 3.0, 2.0]));
        assert_eq!((s.q1, s.median, s.q3), (1.75, 2.5, 3.25));
    }

    #[test]
    fn group_validation() {
        assert!(GroupSample::new("x", vec![1.0, 2.0]).is_err());
        assert!(GroupSample::new("x", vec![1.0, 2.0, f64::NAN]).is_err());
    }

    #[test]
    fn u_test_two_by_two() {
        let r = mann_whitney_u(&[1.0, 2.0], &[3.0, 4.0]).unwrap();
        assert_eq!(r.u_statistic, 0.0);
        assert_eq!(r.method, UTestMethod::Exact);
        assert!((r.p_value - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn u_test_identical_groups() {
        let a = [0.3, 1.7, 2.2, 5.0];
        let r = mann_whitney_u(&a, &a).unwrap();
        assert_eq!(r.u_statistic, 8.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn u_test_large_separated() {
        let a: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let b: Vec<f64> = (0..50).map(|i| 100.0 + i as f64).collect();
        let r = mann_whitney_u(&a, &b).unwrap();
        assert_eq!(r.method, UTestMethod::NormalApprox);
        assert_eq!(r.u_statistic, 0.0);
        assert!(r.p_value < 1e-3);
    }

    #[test]
    fn exact_counts_sum_to_binomial() {
        for (n, m) in [(1, 1), (2, 3), (4, 4), (6, 2)] {
            let c = exact_u_counts(n, m);
            assert_eq!(c.len(), n * m + 1);
            assert_eq!(c.iter().sum::<f64>(), binomial(n + m, n));
            // symmetric distribution
            for u in 0..c.len() {
                assert_eq!(c[u], c[c.len() - 1 - u]);
            }
        }
    }

    #[test]
    fn exact_requires_no_ties() {
        assert!(mann_whitney_exact(&[1.0, 2.0], &[2.0, 3.0]).is_err());
        assert_eq!(
            mann_whitney_u(&[1.0, 2.0], &[2.0, 3.0]).unwrap().method,
            UTestMethod::NormalApprox
        );
    }

    #[test]
    fn roc_perfect_separation() {
        let r = roc(&[0.1, 0.2], &[0.8, 0.9], 200, 1).unwrap();
        assert_eq!(r.auc, 1.0);
        assert_eq!((r.sensitivity, r.specificity), (1.0, 1.0));
        assert_eq!(r.youden_threshold, 0.8);
        assert_eq!(r.points.first().map(|p| (p.fpr, p.tpr)), Some((0.0, 0.0)));
        assert_eq!(r.points.last().map(|p| (p.fpr, p.tpr)), Some((1.0, 1.0)));
    }

    #[test]
    fn roc_partial_overlap() {
        let r = roc(&[0.1, 0.7], &[0.5, 0.9], 100, 1).unwrap();
        assert_eq!(r.auc, 0.75);
        assert_eq!(rank_auc(&[0.1, 0.7], &[0.5, 0.9]), 0.75);
    }

    #[test]
    fn roc_same_multiset() {
        let v = [0.2, 0.4, 0.4, 0.9];
        let r = roc(&v, &v, 100, 1).unwrap();
        assert_eq!(r.auc, 0.5);
    }

    #[test]
    fn roc_rejects_empty() {
        assert!(roc(&[], &[1.0], 10, 0).is_err());
        assert!(roc(&[1.0], &[2.0], 0, 0).is_err());
    }

    #[test]
    fn bootstrap_is_deterministic() {
        let neg = [0.1, 0.4, 0.35, 0.8, 0.2, 0.5];
        let pos = [0.45, 0.9, 0.7, 0.6, 0.3, 0.95];
        let a = roc(&neg, &pos, 500, 42).unwrap();
        let b = roc(&neg, &pos, 500, 42).unwrap();
        assert_eq!(a.auc_ci_low.to_bits(), b.auc_ci_low.to_bits());
        assert_eq!(a.auc_ci_high.to_bits(), b.auc_ci_high.to_bits());
        assert!(a.auc_ci_low <= a.auc && a.auc <= a.auc_ci_high);
    }

    #[test]
    fn group_csv_round_trip_and_errors() {
        let dir = tempfile::tempdir().unwrap();
        let g = GroupSample::new("neg", vec![0.5, 1.25, 3.0]).unwrap();
        let path = dir.path().join("neg.csv");
        g.write_csv(&path).unwrap();
        assert_eq!(GroupSample::read_csv(&path).unwrap(), g);

        let bad = dir.path().join("bad.csv");
        std::fs::write(&bad, "label,score\na,1\nb,2\na,3\n").unwrap();
        assert!(matches!(
            GroupSample::read_csv(&bad),
            Err(Error::Parse { .. })
        ));
        std::fs::write(&bad, "label,value\na,1\na,2\na,3\n").unwrap();
        assert!(GroupSample::read_csv(&bad).is_err());
        std::fs::write(&bad, "label,score\na,1\na,x\na,3\n").unwrap();
        assert!(GroupSample::read_csv(&bad).is_err());
    }

    #[test]
    fn report_json_shape() {
        let neg = group(&[0.1, 0.2, 0.3, 0.25]);
        let pos = group(&[0.5, 0.6, 0.28, 0.9]);
        let rep = compare_groups(&neg, &pos, 50, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["groups"].as_array().unwrap().len(), 2);
        assert_eq!(v["u_test"]["method"], "exact");
        assert!(v["roc"]["points"][0]["threshold"].is_null());
        assert!(v["roc"]["auc"].as_f64().unwrap() > 0.5);
    }

    fn distinct(n: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::hash_set(0u32..10_000, n)
            .prop_map(|s| s.into_iter().map(|v| v as f64 / 100.0).collect())
    }

    proptest! {
        #[test]
        fn exact_and_normal_agree_for_small_samples(
            pooled in distinct(14),
            n in 3usize..=7,
            m in 3usize..=7,
        ) {
            let (a, b) = (&pooled[..n], &pooled[n..n + m]);
            let e = mann_whitney_exact(a, b).unwrap();
            let z = mann_whitney_normal(a, b).unwrap();
            prop_assert_eq!(e.u_statistic, z.u_statistic);
            prop_assert!((e.p_value - z.p_value).abs() <= 0.05, "{} vs {}", e.p_value, z.p_value);
        }

        #[test]
        fn u_within_bounds(
            a in proptest::collection::vec(0.0f64..10.0, 1..20),
            b in proptest::collection::vec(0.0f64..10.0, 1..20),
        ) {
            let r = mann_whitney_u(&a, &b).unwrap();
            prop_assert!(r.u_statistic >= 0.0 && r.u_statistic <= (a.len() * b.len()) as f64);
            prop_assert!(r.p_value > 0.0 && r.p_value <= 1.0);
        }

        #[test]
        fn roc_curve_shape(
            neg in proptest::collection::vec(0u8..20, 1..30),
            pos in proptest::collection::vec(0u8..20, 1..30),
        ) {
            let neg: Vec<f64> = neg.into_iter().map(f64::from).collect();
            let pos: Vec<f64> = pos.into_iter().map(f64::from).collect();
            let pts = roc_points(&neg, &pos);
            prop_assert_eq!((pts[0].fpr, pts[0].tpr), (0.0, 0.0));
            let last = pts[pts.len() - 1];
            prop_assert_eq!((last.fpr, last.tpr), (1.0, 1.0));
            for w in pts.windows(2) {
                prop_assert!(w[1].fpr >= w[0].fpr && w[1].tpr >= w[0].tpr);
            }
            prop_assert!((trapezoid_auc(&pts) - rank_auc(&neg, &pos)).abs() < 1e-12);
        }

        #[test]
        fn monotone_transform_invariance(
            neg in distinct(8),
            pos in distinct(6),
        ) {
            let f = |v: &f64| (v * 0.3).exp() + v.powi(3);
            let neg2: Vec<f64> = neg.iter().map(f).collect();
            let pos2: Vec<f64> = pos.iter().map(f).collect();
            let u1 = mann_whitney_u(&neg, &pos).unwrap();
            let u2 = mann_whitney_u(&neg2, &pos2).unwrap();
            prop_assert_eq!(u1, u2);
            let r1 = roc(&neg, &pos, 20, 9).unwrap();
            let r2 = roc(&neg2, &pos2, 20, 9).unwrap();
            prop_assert_eq!(r1.auc, r2.auc);
            prop_assert_eq!(r1.points.len(), r2.points.len());
            for (p, q) in r1.points.iter().zip(&r2.points) {
                prop_assert_eq!((p.fpr, p.tpr), (q.fpr, q.tpr));
            }
            prop_assert_eq!(f(&r1.youden_threshold), r2.youden_threshold);
        }
    }
}
