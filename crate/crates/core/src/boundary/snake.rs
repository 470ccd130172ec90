//! Open active contour refined by explicit gradient descent.
//!
//! Discrete energy of a chain `v_0 .. v_{N-1}`:
//!
//! ```text
//! E = α Σ |v_{i+1} − v_i|²  +  β Σ |v_{i−1} − 2v_i + v_{i+1}|²  −  Σ |∇I|(v_i)
//! ```
//!
//! Each iteration moves every point against the energy gradient with step
//! `μ`. If a step would raise the total energy it is halved, at most
//! [`MAX_BACKTRACKS`] times; a step that still raises the energy ends the
//! run, so the recorded energy trace never increases.

use serde::Serialize;

use super::{Contour, GrayImage, Point};
use crate::error::{invalid, Result};

pub const MAX_BACKTRACKS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnakeConfig {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub max_iters: usize,
    pub move_tol: f64,
}

impl Default for SnakeConfig {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            beta: 1.0,
            mu: 0.1,
            max_iters: 500,
            move_tol: 0.01,
        }
    }
}

impl SnakeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta.is_finite()) || self.alpha < 0.0 || self.beta < 0.0
        {
            return invalid("snake weights alpha and beta must be >= 0");
        }
        if !(self.mu.is_finite() && self.move_tol.is_finite())
            || self.mu <= 0.0
            || self.move_tol <= 0.0
        {
            return invalid("snake step mu and move_tol must be > 0");
        }
        if self.max_iters == 0 {
            return invalid("snake max_iters must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// The mean displacement of a full `μ` step fell below `move_tol`.
    Converged,
    MaxIters,
    /// No step size down to `mu / 2^MAX_BACKTRACKS` lowered the energy.
    Stalled,
}

#[derive(Debug, Clone)]
pub struct SnakeOutcome {
    pub contour: Contour,
    /// Total energy before the first step and after every accepted step.
    pub energy_trace: Vec<f64>,
    pub iterations: usize,
    pub stop: StopReason,
    /// Some point was pulled back inside the image at least once.
    pub clamped: bool,
    pub backtracks: usize,
}

/// Gradient magnitude of the image and the gradient of that magnitude,
/// all by central differences (one-sided at the borders).
struct EdgeField {
    width: usize,
    height: usize,
    magnitude: Vec<f64>,
    grad_x: Vec<f64>,
    grad_y: Vec<f64>,
}

fn central_diff(values: &[f64], width: usize, height: usize) -> (Vec<f64>, Vec<f64>) {
    let at = |x: usize, y: usize| values[y * width + x];
    let mut gx = vec![0.0; values.len()];
    let mut gy = vec![0.0; values.len()];
    for y in 0..height {
        for x in 0..width {
            let (x0, x1) = (x.saturating_sub(1), (x + 1).min(width - 1));
            let (y0, y1) = (y.saturating_sub(1), (y + 1).min(height - 1));
            if x1 > x0 {
                gx[y * width + x] = (at(x1, y) - at(x0, y)) / (x1 - x0) as f64;
            }
            if y1 > y0 {
                gy[y * width + x] = (at(x, y1) - at(x, y0)) / (y1 - y0) as f64;
            }
        }
    }
    (gx, gy)
}

impl EdgeField {
    fn new(img: &GrayImage) -> Self {
        let (w, h) = (img.width(), img.height());
        let (ix, iy) = central_diff(img.pixels(), w, h);
        let magnitude: Vec<f64> = ix.iter().zip(&iy).map(|(a, b)| a.hypot(*b)).collect();
        let (grad_x, grad_y) = central_diff(&magnitude, w, h);
        Self {
            width: w,
            height: h,
            magnitude,
            grad_x,
            grad_y,
        }
    }

    fn bilinear(&self, field: &[f64], p: Point) -> f64 {
        let x = p.x.clamp(0.0, (self.width - 1) as f64);
        let y = p.y.clamp(0.0, (self.height - 1) as f64);
        let x0 = (x.floor() as usize).min(self.width.saturating_sub(2));
        let y0 = (y.floor() as usize).min(self.height.saturating_sub(2));
        let x1 = (x0 + 1).min(self.width - 1);
        let y1 = (y0 + 1).min(self.height - 1);
        let (tx, ty) = (x - x0 as f64, y - y0 as f64);
        let f = |xx: usize, yy: usize| field[yy * self.width + xx];
        let top = f(x0, y0) * (1.0 - tx) + f(x1, y0) * tx;
        let bottom = f(x0, y1) * (1.0 - tx) + f(x1, y1) * tx;
        top * (1.0 - ty) + bottom * ty
    }

    fn clamp(&self, p: Point) -> (Point, bool) {
        let c = Point::new(
            p.x.clamp(0.0, (self.width - 1) as f64),
            p.y.clamp(0.0, (self.height - 1) as f64),
        );
        (c, c != p)
    }
}

/// Internal (smoothness) energy of an open chain.
pub fn internal_energy(points: &[Point], alpha: f64, beta: f64) -> f64 {
    let stretch: f64 = points
        .windows(2)
        .map(|w| (w[1].x - w[0].x).powi(2) + (w[1].y - w[0].y).powi(2))
        .sum();
    let bend: f64 = points
        .windows(3)
        .map(|w| {
            let cx = w[0].x - 2.0 * w[1].x + w[2].x;
            let cy = w[0].y - 2.0 * w[1].y + w[2].y;
            cx * cx + cy * cy
        })
        .sum();
    alpha * stretch + beta * bend
}

/// Gradient of [`internal_energy`] with respect to every point.
fn internal_gradient(points: &[Point], alpha: f64, beta: f64) -> Vec<(f64, f64)> {
    let n = points.len();
    let mut g = vec![(0.0, 0.0); n];
    for i in 0..n - 1 {
        let dx = points[i + 1].x - points[i].x;
        let dy = points[i + 1].y - points[i].y;
        g[i].0 -= 2.0 * alpha * dx;
        g[i].1 -= 2.0 * alpha * dy;
        g[i + 1].0 += 2.0 * alpha * dx;
        g[i + 1].1 += 2.0 * alpha * dy;
    }
    for i in 1..n - 1 {
        let cx = points[i - 1].x - 2.0 * points[i].x + points[i + 1].x;
        let cy = points[i - 1].y - 2.0 * points[i].y + points[i + 1].y;
        for (j, w) in [(i - 1, 1.0), (i, -2.0), (i + 1, 1.0)] {
            g[j].0 += 2.0 * beta * w * cx;
            g[j].1 += 2.0 * beta * w * cy;
        }
    }
    g
}

fn total_energy(field: &EdgeField, points: &[Point], cfg: &SnakeConfig) -> f64 {
    let external: f64 = points
        .iter()
        .map(|&p| -field.bilinear(&field.magnitude, p))
        .sum();
    internal_energy(points, cfg.alpha, cfg.beta) + external
}

/// Refines `init` towards strong edges of `img` (usually the blurred image).
pub fn snake_refine(img: &GrayImage, init: &Contour, cfg: &SnakeConfig) -> Result<SnakeOutcome> {
    cfg.validate()?;
    let field = EdgeField::new(img);
    let mut clamped = false;
    let mut points: Vec<Point> = init
        .points()
        .iter()
        .map(|&p| {
            let (c, moved) = field.clamp(p);
            clamped |= moved;
            c
        })
        .collect();
    let mut energy = total_energy(&field, &points, cfg);
    let mut trace = vec![energy];
    let mut backtracks = 0;
    let mut stop = StopReason::MaxIters;
    let mut iterations = 0;

    while iterations < cfg.max_iters {
        let internal = internal_gradient(&points, cfg.alpha, cfg.beta);
        // ∇E_external = −∇|∇I|
        let grad: Vec<(f64, f64)> = points
            .iter()
            .zip(&internal)
            .map(|(&p, &(ix, iy))| {
                (
                    ix - field.bilinear(&field.grad_x, p),
                    iy - field.bilinear(&field.grad_y, p),
                )
            })
            .collect();

        let full_move =
            cfg.mu * grad.iter().map(|g| g.0.hypot(g.1)).sum::<f64>() / grad.len() as f64;
        if full_move < cfg.move_tol {
            stop = StopReason::Converged;
            break;
        }

        let mut step = cfg.mu;
        let mut accepted = None;
        for attempt in 0..=MAX_BACKTRACKS {
            let mut hit_border = false;
            let trial: Vec<Point> = points
                .iter()
                .zip(&grad)
                .map(|(&p, &(gx, gy))| {
                    let (c, moved) = field.clamp(Point::new(p.x - step * gx, p.y - step * gy));
                    hit_border |= moved;
                    c
                })
                .collect();
            let e = total_energy(&field, &trial, cfg);
            if e <= energy {
                backtracks += attempt;
                accepted = Some((trial, e, hit_border));
                break;
            }
            step *= 0.5;
        }
        let Some((trial, e, hit_border)) = accepted else {
            backtracks += MAX_BACKTRACKS;
            stop = StopReason::Stalled;
            break;
        };
        iterations += 1;
        clamped |= hit_border;
        points = trial;
        energy = e;
        trace.push(e);
    }

    Ok(SnakeOutcome {
        contour: Contour::from_points_unchecked(points),
        energy_trace: trace,
        iterations,
        stop,
        clamped,
        backtracks,
    })
}
