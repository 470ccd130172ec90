use std::io::Write;
use std::path::Path;

use crate::error::{invalid, Error, Result};

/// Row-major grayscale image, 0–255 scale, real-valued.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return invalid(format!(
                "image dimensions must be positive, got {width}x{height}"
            ));
        }
        if pixels.len() != width * height {
            return invalid(format!(
                "{width}x{height} image needs {} pixels, got {}",
                width * height,
                pixels.len()
            ));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn from_u8(width: usize, height: usize, data: &[u8]) -> Result<Self> {
        Self::new(width, height, data.iter().map(|&v| v as f64).collect())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * self.width + x]
    }

    /// Every strictly positive pixel becomes 255, the rest 0.
    pub fn binarized(&self) -> Self {
        Self {
            width: self.width,
            height: self.height,
            pixels: self
                .pixels
                .iter()
                .map(|&v| if v > 0.0 { 255.0 } else { 0.0 })
                .collect(),
        }
    }

    pub fn sum(&self) -> f64 {
        self.pixels.iter().sum()
    }

    /// Reads binary PGM (P5) or, with the `png` feature, PNG.
    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path)?;
        let decode_err = |msg: String| Error::Decode {
            path: path.to_path_buf(),
            msg,
        };
        if bytes.starts_with(b"P5") {
            return parse_pgm(&bytes).map_err(decode_err);
        }
        if bytes.starts_with(b"\x89PNG\r\n\x1a\n") {
            return decode_png(&bytes).map_err(decode_err);
        }
        Err(decode_err(
            "unrecognised format (expected binary PGM or PNG)".into(),
        ))
    }

    /// Binary PGM with maxval 255; pixels are rounded and clamped to 0–255.
    pub fn write_pgm_to(&self, mut w: impl Write) -> std::io::Result<()> {
        write!(w, "P5\n{} {}\n255\n", self.width, self.height)?;
        let data: Vec<u8> = self
            .pixels
            .iter()
            .map(|v| v.round().clamp(0.0, 255.0) as u8)
            .collect();
        w.write_all(&data)
    }

    pub fn write_pgm(&self, path: &Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_pgm_to(&mut w)?;
        w.flush()?;
        Ok(())
    }
}

/// Parses a binary PGM. 16-bit samples are rescaled to the 0–255 range.
pub fn parse_pgm(bytes: &[u8]) -> std::result::Result<GrayImage, String> {
    let mut pos = 2; // past "P5"
    let mut header = [0usize; 3];
    for field in header.iter_mut() {
        // whitespace and comments
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err("truncated or malformed PGM header".into());
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .unwrap()
            .parse()
            .map_err(|e| format!("bad PGM header value: {e}"))?;
    }
    let [width, height, maxval] = header;
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err("missing whitespace after PGM maxval".into());
    }
    pos += 1;
    if maxval == 0 || maxval > 65535 {
        return Err(format!("PGM maxval {maxval} out of range"));
    }
    let bpp = if maxval < 256 { 1 } else { 2 };
    let need = width * height * bpp;
    let data = bytes
        .get(pos..pos + need)
        .ok_or_else(|| format!("PGM data truncated: need {need} bytes"))?;
    let scale = 255.0 / maxval as f64;
    let pixels = if bpp == 1 {
        data.iter().map(|&v| v as f64 * scale).collect()
    } else {
        data.chunks_exact(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]) as f64 * scale)
            .collect()
    };
    GrayImage::new(width, height, pixels).map_err(|e| e.to_string())
}

#[cfg(feature = "png")]
fn decode_png(bytes: &[u8]) -> std::result::Result<GrayImage, String> {
    let img = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)
        .map_err(|e| e.to_string())?
        .to_luma8();
    let (w, h) = img.dimensions();
    GrayImage::from_u8(w as usize, h as usize, img.as_raw()).map_err(|e| e.to_string())
}

#[cfg(not(feature = "png"))]
fn decode_png(_: &[u8]) -> std::result::Result<GrayImage, String> {
    Err("PNG support not compiled in (enable the `png` feature)".into())
}
