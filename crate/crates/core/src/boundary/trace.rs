use std::collections::VecDeque;

use super::{Contour, GrayImage, Point};
use crate::error::{Error, Result};

/// Which side of the region the traced boundary follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Envelope {
    /// Smallest row index per column.
    #[default]
    Upper,
    /// Largest row index per column.
    Lower,
}

/// 8-connected labelling of `mask`. Returns per-pixel labels (0 for
/// background, components numbered from 1 in raster order) and the pixel
/// count of each component.
pub fn label_components(mask: &[bool], width: usize, height: usize) -> (Vec<u32>, Vec<usize>) {
    let mut labels = vec![0u32; mask.len()];
    let mut areas = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..mask.len() {
        if !mask[start] || labels[start] != 0 {
            continue;
        }
        let label = areas.len() as u32 + 1;
        labels[start] = label;
        queue.push_back(start);
        let mut area = 0;
        while let Some(idx) = queue.pop_front() {
            area += 1;
            let (x, y) = ((idx % width) as isize, (idx / width) as isize);
            for dy in -1..=1 {
                for dx in -1..=1 {
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx >= width as isize || ny >= height as isize {
                        continue;
                    }
                    let n = ny as usize * width + nx as usize;
                    if mask[n] && labels[n] == 0 {
                        labels[n] = label;
                        queue.push_back(n);
                    }
                }
            }
        }
        areas.push(area);
    }
    (labels, areas)
}

/// Upper edge of the largest region brighter than `threshold` (on a 0–1
/// scale), one point per column.
pub fn initial_boundary(img: &GrayImage, threshold: f64) -> Result<Contour> {
    initial_boundary_with(img, threshold, Envelope::Upper)
}

pub fn initial_boundary_with(
    img: &GrayImage,
    threshold: f64,
    envelope: Envelope,
) -> Result<Contour> {
    let (w, h) = (img.width(), img.height());
    let mask: Vec<bool> = img
        .pixels()
        .iter()
        .map(|&v| v / 255.0 > threshold)
        .collect();
    let (labels, areas) = label_components(&mask, w, h);
    // ties go to the component met first in raster order
    let Some((best, _)) = areas
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
    else {
        return Err(Error::Extraction(format!(
            "no pixels above threshold {threshold}"
        )));
    };
    let target = best as u32 + 1;
    let mut points = Vec::new();
    for x in 0..w {
        let rows = (0..h).filter(|&y| labels[y * w + x] == target);
        let row = match envelope {
            Envelope::Upper => rows.min(),
            Envelope::Lower => rows.max(),
        };
        if let Some(y) = row {
            points.push(Point::new(x as f64, y as f64));
        }
    }
    Contour::new(points)
        .map_err(|e| Error::Extraction(format!("largest region is too narrow to trace: {e}")))
}
