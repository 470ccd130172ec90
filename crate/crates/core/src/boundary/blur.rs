use super::GrayImage;
use crate::error::{invalid, Result};

/// Square Gaussian kernel of half-width `radius`, i.e. `2·radius + 1` taps
/// per axis. A `sigma` of 0 derives it from the radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianKernelConfig {
    radius: usize,
    sigma: f64,
}

impl Default for GaussianKernelConfig {
    fn default() -> Self {
        Self {
            radius: 51,
            sigma: 0.0,
        }
    }
}

impl GaussianKernelConfig {
    pub fn new(radius: usize, sigma: f64) -> Result<Self> {
        if radius == 0 {
            return invalid("kernel radius must be at least 1");
        }
        if !sigma.is_finite() || sigma < 0.0 {
            return invalid(format!("kernel sigma must be >= 0, got {sigma}"));
        }
        Ok(Self { radius, sigma })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Explicit sigma, or `0.3·((k − 1)·0.5 − 1) + 0.8` when unset.
    pub fn effective_sigma(&self) -> f64 {
        if self.sigma > 0.0 {
            self.sigma
        } else {
            0.3 * ((self.radius as f64 - 1.0) * 0.5 - 1.0) + 0.8
        }
    }

    /// Normalised 1-D taps for offsets `-radius..=radius`.
    ///
    /// The 2-D kernel `G(i, j)` factors as `g(i)·g(j)`, and so does its
    /// normalising sum, so the normalised 2-D kernel is the outer product
    /// of these taps.
    pub fn taps(&self) -> Vec<f64> {
        let s = self.effective_sigma();
        let r = self.radius as isize;
        let raw: Vec<f64> = (-r..=r)
            .map(|i| (-((i * i) as f64) / (2.0 * s * s)).exp())
            .collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|v| v / total).collect()
    }
}

/// Gaussian smoothing with edge replication at the borders.
pub fn gaussian_blur(img: &GrayImage, cfg: &GaussianKernelConfig) -> GrayImage {
    let taps = cfg.taps();
    let r = cfg.radius as isize;
    let (w, h) = (img.width(), img.height());
    let clamp = |v: isize, hi: usize| v.clamp(0, hi as isize - 1) as usize;

    let mut rows = vec![0.0; w * h];
    for y in 0..h {
        let src = &img.pixels()[y * w..(y + 1) * w];
        for x in 0..w {
            let mut acc = 0.0;
            for (t, k) in taps.iter().zip(-r..=r) {
                acc += t * src[clamp(x as isize + k, w)];
            }
            rows[y * w + x] = acc;
        }
    }
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for (t, k) in taps.iter().zip(-r..=r) {
            let sy = clamp(y as isize + k, h);
            let src = &rows[sy * w..(sy + 1) * w];
            let dst = &mut out[y * w..(y + 1) * w];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += t * s;
            }
        }
    }
    GrayImage::new(w, h, out).expect("dimensions unchanged")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct 2-D convolution with the kernel evaluated from its definition.
    fn blur_2d_reference(img: &GrayImage, radius: usize, sigma: f64) -> GrayImage {
        let r = radius as isize;
        let g = |i: isize, j: isize| {
            (-((i * i + j * j) as f64) / (2.0 * sigma * sigma)).exp()
                / (2.0 * std::f64::consts::PI * sigma * sigma)
        };
        let total: f64 = (-r..=r).flat_map(|i| (-r..=r).map(move |j| g(i, j))).sum();
        let (w, h) = (img.width() as isize, img.height() as isize);
        GrayImage::from_fn(img.width(), img.height(), |x, y| {
            let mut acc = 0.0;
            for i in -r..=r {
                for j in -r..=r {
                    let sx = (x as isize + i).clamp(0, w - 1) as usize;
                    let sy = (y as isize + j).clamp(0, h - 1) as usize;
                    acc += g(i, j) / total * img.get(sx, sy);
                }
            }
            acc
        })
        .unwrap()
    }

    fn max_diff(a: &GrayImage, b: &GrayImage) -> f64 {
        a.pixels()
            .iter()
            .zip(b.pixels())
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn auto_sigma_for_default_radius() {
        let cfg = GaussianKernelConfig::default();
        assert_eq!(cfg.radius(), 51);
        assert!((cfg.effective_sigma() - 8.0).abs() < 1e-12);
        let taps = cfg.taps();
        assert_eq!(taps.len(), 103);
        assert!((taps.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_image_unchanged() {
        let img = GrayImage::from_fn(20, 11, |_, _| 77.0).unwrap();
        let out = gaussian_blur(&img, &GaussianKernelConfig::new(4, 0.0).unwrap());
        assert!(max_diff(&img, &out) < 1e-10);
    }

    #[test]
    fn impulse_response_matches_kernel() {
        let img =
            GrayImage::from_fn(9, 9, |x, y| if (x, y) == (4, 4) { 1.0 } else { 0.0 }).unwrap();
        let out = gaussian_blur(&img, &GaussianKernelConfig::new(3, 1.0).unwrap());
        // G(i,j) ∝ exp(-(i²+j²)/2) over the 7x7 support, normalised
        let z: f64 = (-3i32..=3)
            .flat_map(|i| (-3i32..=3).map(move |j| (-((i * i + j * j) as f64) / 2.0).exp()))
            .sum();
        assert!((out.get(4, 4) - 1.0 / z).abs() < 1e-15);
        assert!((out.get(5, 4) - (-0.5f64).exp() / z).abs() < 1e-15);
        assert!((out.get(5, 5) - (-1.0f64).exp() / z).abs() < 1e-15);
        assert!((out.get(7, 6) - (-6.5f64).exp() / z).abs() < 1e-15);
        assert_eq!(out.get(8, 4), 0.0);
    }

    #[test]
    fn separable_equals_direct_2d() {
        let img =
            GrayImage::from_fn(17, 13, |x, y| ((x * 31 + y * 17) % 23) as f64 * 10.0).unwrap();
        let cfg = GaussianKernelConfig::new(5, 1.7).unwrap();
        let fast = gaussian_blur(&img, &cfg);
        let slow = blur_2d_reference(&img, 5, 1.7);
        assert!(max_diff(&fast, &slow) < 1e-9);
    }

    #[test]
    fn semigroup_approximation() {
        let img = GrayImage::from_fn(64, 64, |x, y| {
            if (x as i32 - 30).pow(2) + (y as i32 - 34).pow(2) < 200 {
                255.0
            } else {
                0.0
            }
        })
        .unwrap();
        for sigma in [2.0, 3.0] {
            let r = (4.0 * sigma * std::f64::consts::SQRT_2).ceil() as usize;
            let cfg = GaussianKernelConfig::new(r, sigma).unwrap();
            let twice = gaussian_blur(&gaussian_blur(&img, &cfg), &cfg);
            let once = gaussian_blur(
                &img,
                &GaussianKernelConfig::new(2 * r, sigma * std::f64::consts::SQRT_2).unwrap(),
            );
            let d = max_diff(&twice, &once);
            assert!(d < 1.0, "sigma {sigma}: max diff {d}");
        }
    }

    #[test]
    fn preserves_mass() {
        let img = GrayImage::from_fn(80, 60, |x, y| {
            if x > 20 && x < 50 && y > 15 && y < 40 {
                255.0
            } else {
                0.0
            }
        })
        .unwrap();
        let out = gaussian_blur(&img, &GaussianKernelConfig::new(6, 0.0).unwrap());
        assert!(((out.sum() - img.sum()) / img.sum()).abs() < 1e-3);
    }

    #[test]
    fn config_validation() {
        assert!(GaussianKernelConfig::new(0, 1.0).is_err());
        assert!(GaussianKernelConfig::new(2, -1.0).is_err());
    }
}
