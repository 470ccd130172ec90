//! Sampled planar curves `y = f(x)`, uniform grids, and alignment of a
//! standard/target pair onto one shared grid.
//!
//! Every metric in this crate consumes curves through [`CurvePair`], whose
//! two members are guaranteed to share a bitwise-identical abscissa array
//! generated from a single [`UniformGrid`].

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{invalid, Error, Result};

/// A curve sampled at strictly increasing abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl SampledCurve {
    pub const MIN_POINTS: usize = 3;

    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return invalid(format!(
                "xs has {} entries but ys has {}",
                xs.len(),
                ys.len()
            ));
        }
        if xs.len() < Self::MIN_POINTS {
            return invalid(format!(
                "a curve needs at least {} points, got {}",
                Self::MIN_POINTS,
                xs.len()
            ));
        }
        if let Some(i) = xs.iter().chain(&ys).position(|v| !v.is_finite()) {
            return invalid(format!("non-finite value at flat index {i}"));
        }
        if let Some(i) = xs.windows(2).position(|w| w[1] <= w[0]) {
            return invalid(format!(
                "x must be strictly increasing (x[{}] = {} >= x[{}] = {})",
                i,
                xs[i],
                i + 1,
                xs[i + 1]
            ));
        }
        Ok(Self { xs, ys })
    }

    /// Samples `f` at every node of `grid`.
    pub fn from_fn(grid: &UniformGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let xs = grid.xs();
        let ys = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    /// Same abscissae, new ordinates.
    pub fn with_ys(&self, ys: Vec<f64>) -> Result<Self> {
        Self::new(self.xs.clone(), ys)
    }

    /// The grid spanning this curve's endpoints with one node per sample.
    pub fn native_grid(&self) -> Result<UniformGrid> {
        UniformGrid::spanning(self.x_min(), self.x_max(), self.len())
    }

    /// Reads the `x,y` CSV format. Rejects non-monotone abscissae.
    pub fn read_csv(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_csv_from(std::io::BufReader::new(file), path)
    }

    pub fn read_csv_from(reader: impl BufRead, origin: &Path) -> Result<Self> {
        let parse_err = |line: usize, msg: String| Error::Parse {
            path: origin.to_path_buf(),
            line,
            msg,
        };
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| parse_err(1, e.to_string()))?
            .clone();
        if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "y" {
            return Err(parse_err(1, "expected header `x,y`".into()));
        }
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let line = i + 2;
            let record = record.map_err(|e| parse_err(line, e.to_string()))?;
            if record.len() != 2 {
                return Err(parse_err(line, "expected two fields".into()));
            }
            let field = |j: usize| {
                record[j]
                    .parse::<f64>()
                    .map_err(|e| parse_err(line, format!("`{}`: {e}", &record[j])))
            };
            xs.push(field(0)?);
            ys.push(field(1)?);
        }
        Self::new(xs, ys).map_err(|e| parse_err(0, e.to_string()))
    }

    /// Writes the `x,y` CSV format with shortest round-trip decimal values.
    pub fn write_csv_to(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "x,y")?;
        for (x, y) in self.xs.iter().zip(&self.ys) {
            writeln!(w, "{x},{y}")?;
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

/// Uniform abscissa grid `a, a + s, ..., a + (n-1)s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    a: f64,
    s: f64,
    n: usize,
}

impl UniformGrid {
    pub fn new(a: f64, s: f64, n: usize) -> Result<Self> {
        if !a.is_finite() || !s.is_finite() {
            return invalid("grid start and step must be finite");
        }
        if s <= 0.0 {
            return invalid(format!("grid step must be positive, got {s}"));
        }
        if n < SampledCurve::MIN_POINTS {
            return invalid(format!("grid needs at least 3 nodes, got {n}"));
        }
        Ok(Self { a, s, n })
    }

    /// `n` nodes from `a` to `b` inclusive.
    pub fn spanning(a: f64, b: f64, n: usize) -> Result<Self> {
        if n < SampledCurve::MIN_POINTS {
            return invalid(format!("grid needs at least 3 nodes, got {n}"));
        }
        if a.is_nan() || b.is_nan() || b <= a {
            return Err(Error::Domain(format!("empty interval [{a}, {b}]")));
        }
        Self::new(a, (b - a) / (n - 1) as f64, n)
    }

    /// Default alignment grid for two raw curves: the overlap of their
    /// domains, with the smaller of the two sample counts.
    pub fn overlap(c1: &SampledCurve, c2: &SampledCurve) -> Result<Self> {
        let a = c1.x_min().max(c2.x_min());
        let b = c1.x_max().min(c2.x_max());
        if a.is_nan() || b.is_nan() || b <= a {
            return Err(Error::Domain(format!(
                "curve domains [{}, {}] and [{}, {}] do not overlap",
                c1.x_min(),
                c1.x_max(),
                c2.x_min(),
                c2.x_max()
            )));
        }
        Self::spanning(a, b, c1.len().min(c2.len()))
    }

    pub fn start(&self) -> f64 {
        self.a
    }

    pub fn step(&self) -> f64 {
        self.s
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn end(&self) -> f64 {
        self.node(self.n - 1)
    }

    pub fn node(&self, i: usize) -> f64 {
        self.a + i as f64 * self.s
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }
}

/// Relative slack allowed when a grid endpoint lands a rounding error past
/// the curve domain (e.g. `a + (n-1)·((b-a)/(n-1))` overshooting `b`).
const DOMAIN_SLACK: f64 = 1e-9;

/// Linear interpolation of `curve` at every node of `grid`.
pub fn resample(curve: &SampledCurve, grid: &UniformGrid) -> Result<SampledCurve> {
    let xs = curve.xs();
    let ys = curve.ys();
    let (lo, hi) = (curve.x_min(), curve.x_max());
    let slack = DOMAIN_SLACK * (hi - lo).max(1.0);
    if grid.start() < lo - slack || grid.end() > hi + slack {
        return Err(Error::Domain(format!(
            "grid [{}, {}] extends beyond curve domain [{lo}, {hi}]",
            grid.start(),
            grid.end()
        )));
    }
    let gx = grid.xs();
    let out = gx
        .iter()
        .map(|&x| {
            let x = x.clamp(lo, hi);
            // first index with xs[idx] > x
            let idx = xs.partition_point(|&v| v <= x);
            if idx > 0 && xs[idx - 1] == x {
                return ys[idx - 1];
            }
            let idx = idx.clamp(1, xs.len() - 1);
            let (x0, x1) = (xs[idx - 1], xs[idx]);
            let (y0, y1) = (ys[idx - 1], ys[idx]);
            let t = (x - x0) / (x1 - x0);
            y0 + t * (y1 - y0)
        })
        .collect();
    SampledCurve::new(gx, out)
}

/// Standard and target curves on one shared uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePair {
    grid: UniformGrid,
    standard: SampledCurve,
    target: SampledCurve,
}

impl CurvePair {
    /// Builds a pair directly from ordinates sampled on `grid`.
    pub fn on_grid(grid: UniformGrid, standard_ys: Vec<f64>, target_ys: Vec<f64>) -> Result<Self> {
        let xs = grid.xs();
        if standard_ys.len() != grid.len() || target_ys.len() != grid.len() {
            return invalid(format!(
                "expected {} ordinates per curve, got {} and {}",
                grid.len(),
                standard_ys.len(),
                target_ys.len()
            ));
        }
        let standard = SampledCurve::new(xs.clone(), standard_ys)?;
        let target = SampledCurve::new(xs, target_ys)?;
        Ok(Self {
            grid,
            standard,
            target,
        })
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn standard(&self) -> &SampledCurve {
        &self.standard
    }

    pub fn target(&self) -> &SampledCurve {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The pair with standard and target exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            grid: self.grid,
            standard: self.target.clone(),
            target: self.standard.clone(),
        }
    }
}

/// Resamples both curves onto `grid`.
pub fn make_pair(
    standard: &SampledCurve,
    target: &SampledCurve,
    grid: &UniformGrid,
) -> Result<CurvePair> {
    let standard = resample(standard, grid)?;
    let target = resample(target, grid)?;
    Ok(CurvePair {
        grid: *grid,
        standard,
        target,
    })
}

/// [`make_pair`] on the default overlap grid.
pub fn align(standard: &SampledCurve, target: &SampledCurve) -> Result<CurvePair> {
    let grid = UniformGrid::overlap(standard, target)?;
    make_pair(standard, target, &grid)
}
