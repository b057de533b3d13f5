//! Grayscale rasters, the PGM codec, and deterministic synthetic images.
//!
//! PGM is the only supported container: binary `P5` and ASCII `P2`, maxval
//! at most 255. Pixel bytes are taken verbatim and normalization always
//! divides by 255, so identical pixel data yields identical matrices no
//! matter what maxval the header declares.

use alloc::vec::Vec;
use core::fmt;

use crate::fmath;
use crate::matrix::RealMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageError {
    ZeroDimension,
    PixelCountMismatch { expected: usize, got: usize },
}

impl fmt::Display for ImageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageError::ZeroDimension => write!(f, "image dimensions must be positive"),
            ImageError::PixelCountMismatch { expected, got } => {
                write!(f, "pixel count {got} does not match width*height = {expected}")
            }
        }
    }
}

impl core::error::Error for ImageError {}

/// 8-bit grayscale raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension);
        }
        let expected = width as usize * height as usize;
        if pixels.len() != expected {
            return Err(ImageError::PixelCountMismatch {
                expected,
                got: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Intensity at row `i`, column `j`.
    pub fn pixel(&self, i: u32, j: u32) -> u8 {
        assert!(i < self.height && j < self.width, "pixel out of bounds");
        self.pixels[i as usize * self.width as usize + j as usize]
    }

    /// Matrix with `height` rows and `width` columns, entries `pixel / 255`.
    pub fn to_matrix(&self) -> RealMatrix {
        let w = self.width as usize;
        RealMatrix::from_fn(self.height as usize, w, |i, j| {
            f64::from(self.pixels[i * w + j]) / 255.0
        })
        .expect("image dimensions are positive and intensities are finite")
    }

    /// Intensity counts over the 256 possible values.
    pub fn histogram(&self) -> [u64; 256] {
        let mut counts = [0u64; 256];
        for &p in &self.pixels {
            counts[p as usize] += 1;
        }
        counts
    }

    /// Exact rotation by `quarter_turns` * 90 degrees clockwise. Negative
    /// counts rotate counter-clockwise; four turns are the identity.
    pub fn rotate90(&self, quarter_turns: i32) -> GrayImage {
        let mut img = self.clone();
        for _ in 0..quarter_turns.rem_euclid(4) {
            img = img.rotate_once();
        }
        img
    }

    fn rotate_once(&self) -> GrayImage {
        let (w, h) = (self.width as usize, self.height as usize);
        let mut pixels = Vec::with_capacity(w * h);
        // new(i, j) = old(h - 1 - j, i); dimensions swap
        for i in 0..w {
            for j in 0..h {
                pixels.push(self.pixels[(h - 1 - j) * w + i]);
            }
        }
        GrayImage {
            width: self.height,
            height: self.width,
            pixels,
        }
    }

    /// Shifts content `dx` columns right and `dy` rows down, wrapping around
    /// the opposite edge. A full-size shift is the identity.
    pub fn translate_wrap(&self, dx: i32, dy: i32) -> GrayImage {
        let (w, h) = (self.width as i64, self.height as i64);
        let mut pixels = Vec::with_capacity(self.pixels.len());
        for i in 0..h {
            for j in 0..w {
                let src_i = (i - dy as i64).rem_euclid(h) as usize;
                let src_j = (j - dx as i64).rem_euclid(w) as usize;
                pixels.push(self.pixels[src_i * w as usize + src_j]);
            }
        }
        GrayImage {
            width: self.width,
            height: self.height,
            pixels,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PgmError {
    /// Input does not begin with "P5" or "P2".
    BadMagic { found: [u8; 2] },
    /// Header token missing where `field` was expected.
    MissingField { field: &'static str },
    /// Header token for `field` is not a decimal number.
    BadNumber { field: &'static str },
    /// Parsed value for `field` outside its allowed range.
    ValueOutOfRange { field: &'static str, value: u64, max: u64 },
    /// Missing single whitespace byte between maxval and the P5 raster.
    MissingRasterSeparator,
    /// Raster ended early; counts are in pixels (P2: samples).
    TruncatedPixels { expected: usize, got: usize },
    /// Unconsumed bytes after the raster, starting at `offset`.
    TrailingData { offset: usize },
    /// A P2 sample exceeds 255; `index` is the sample position.
    SampleOutOfRange { index: usize, value: u64 },
}

impl fmt::Display for PgmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PgmError::BadMagic { found } => write!(
                f,
                "unsupported magic number {:?} (expected P5 or P2)",
                core::str::from_utf8(found).unwrap_or("??")
            ),
            PgmError::MissingField { field } => write!(f, "missing header field `{field}`"),
            PgmError::BadNumber { field } => write!(f, "header field `{field}` is not a number"),
            PgmError::ValueOutOfRange { field, value, max } => {
                write!(f, "header field `{field}` = {value} out of range (max {max})")
            }
            PgmError::MissingRasterSeparator => {
                write!(f, "missing whitespace between maxval and raster")
            }
            PgmError::TruncatedPixels { expected, got } => {
                write!(f, "truncated raster: expected {expected} pixels, got {got}")
            }
            PgmError::TrailingData { offset } => {
                write!(f, "trailing data after raster at byte offset {offset}")
            }
            PgmError::SampleOutOfRange { index, value } => {
                write!(f, "sample {index} = {value} exceeds 255")
            }
        }
    }
}

impl core::error::Error for PgmError {}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' | 0x0b | 0x0c => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn number(&mut self, field: &'static str) -> Result<u64, PgmError> {
        self.skip_space_and_comments();
        if self.pos >= self.bytes.len() {
            return Err(PgmError::MissingField { field });
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PgmError::BadNumber { field });
        }
        let mut value: u64 = 0;
        for &b in &self.bytes[start..self.pos] {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or(PgmError::BadNumber { field })?;
        }
        Ok(value)
    }
}

/// Parses a binary (`P5`) or ASCII (`P2`) PGM with maxval <= 255.
pub fn load_pgm(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    if bytes.len() < 2 {
        let mut found = [0u8; 2];
        found[..bytes.len()].copy_from_slice(bytes);
        return Err(PgmError::BadMagic { found });
    }
    let magic = [bytes[0], bytes[1]];
    let binary = match &magic {
        b"P5" => true,
        b"P2" => false,
        _ => return Err(PgmError::BadMagic { found: magic }),
    };

    let mut cur = Cursor::new(&bytes[2..]);
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval = cur.number("maxval")?;
    if width == 0 || width > u64::from(u32::MAX) {
        return Err(PgmError::ValueOutOfRange {
            field: "width",
            value: width,
            max: u64::from(u32::MAX),
        });
    }
    if height == 0 || height > u64::from(u32::MAX) {
        return Err(PgmError::ValueOutOfRange {
            field: "height",
            value: height,
            max: u64::from(u32::MAX),
        });
    }
    if maxval == 0 || maxval > 255 {
        return Err(PgmError::ValueOutOfRange {
            field: "maxval",
            value: maxval,
            max: 255,
        });
    }
    let expected = width as usize * height as usize;

    let pixels = if binary {
        // exactly one whitespace byte separates maxval from the raster
        if cur.pos >= cur.bytes.len() || !cur.bytes[cur.pos].is_ascii_whitespace() {
            return Err(PgmError::MissingRasterSeparator);
        }
        cur.pos += 1;
        let raster = &cur.bytes[cur.pos..];
        if raster.len() < expected {
            return Err(PgmError::TruncatedPixels {
                expected,
                got: raster.len(),
            });
        }
        if raster.len() > expected {
            return Err(PgmError::TrailingData {
                offset: 2 + cur.pos + expected,
            });
        }
        raster.to_vec()
    } else {
        let mut pixels = Vec::with_capacity(expected);
        for index in 0..expected {
            cur.skip_space_and_comments();
            if cur.pos >= cur.bytes.len() {
                return Err(PgmError::TruncatedPixels {
                    expected,
                    got: index,
                });
            }
            let value = cur.number("sample")?;
            if value > 255 {
                return Err(PgmError::SampleOutOfRange { index, value });
            }
            pixels.push(value as u8);
        }
        cur.skip_space_and_comments();
        if cur.pos < cur.bytes.len() {
            return Err(PgmError::TrailingData {
                offset: 2 + cur.pos,
            });
        }
        pixels
    };

    Ok(GrayImage {
        width: width as u32,
        height: height as u32,
        pixels,
    })
}

/// Serializes as binary PGM: `P5\n<w> <h>\n255\n` followed by raw pixels.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = Vec::with_capacity(img.pixels.len() + 32);
    out.extend_from_slice(b"P5\n");
    push_decimal(&mut out, u64::from(img.width));
    out.push(b' ');
    push_decimal(&mut out, u64::from(img.height));
    out.extend_from_slice(b"\n255\n");
    out.extend_from_slice(&img.pixels);
    out
}

fn push_decimal(out: &mut Vec<u8>, mut v: u64) {
    let mut digits = [0u8; 20];
    let mut i = digits.len();
    loop {
        i -= 1;
        digits[i] = b'0' + (v % 10) as u8;
        v /= 10;
        if v == 0 {
            break;
        }
    }
    out.extend_from_slice(&digits[i..]);
}

/// Kinds of deterministic synthetic test images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthKind {
    /// Diagonal ramp: `floor(255 * (i + j) / (width + height - 2))`.
    Gradient,
    /// 0/255 on the parity of `i + j`.
    Checker,
    /// Gaussian-profile spots placed by a fixed linear congruential generator.
    Blob,
}

// Fixed LCG so blob images are reproducible everywhere.
const LCG_MUL: u64 = 6364136223846793005;
const LCG_ADD: u64 = 1442695040888963407;

struct Lcg {
    state: u64,
}

impl Lcg {
    fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(LCG_MUL).wrapping_add(LCG_ADD);
        self.state
    }

    /// Uniform in [0, 1) with 53 bits of the state.
    fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Deterministic synthetic image: a pure function of (kind, width, height,
/// seed), bit-identical across runs and platforms.
pub fn synth_image(
    kind: SynthKind,
    width: u32,
    height: u32,
    seed: u64,
) -> Result<GrayImage, ImageError> {
    if width == 0 || height == 0 {
        return Err(ImageError::ZeroDimension);
    }
    let (w, h) = (width as usize, height as usize);
    let mut pixels = Vec::with_capacity(w * h);
    match kind {
        SynthKind::Gradient => {
            let den = (width as u64) + (height as u64) - 2;
            for i in 0..h as u64 {
                for j in 0..w as u64 {
                    let v = if den == 0 { 0 } else { 255 * (i + j) / den };
                    pixels.push(v as u8);
                }
            }
        }
        SynthKind::Checker => {
            for i in 0..h {
                for j in 0..w {
                    pixels.push(if (i + j) % 2 == 0 { 0 } else { 255 });
                }
            }
        }
        SynthKind::Blob => {
            let mut rng = Lcg::new(seed);
            let count = 3 + (rng.next_u64() % 4) as usize;
            let side = f64::from(width.min(height));
            let mut spots = Vec::with_capacity(count);
            for _ in 0..count {
                let cx = (rng.next_u64() % u64::from(width)) as f64;
                let cy = (rng.next_u64() % u64::from(height)) as f64;
                let sigma = (0.05 + 0.15 * rng.unit()) * side;
                let amplitude = 0.5 + 0.5 * rng.unit();
                spots.push((cx, cy, 2.0 * sigma * sigma, amplitude));
            }
            for i in 0..h {
                for j in 0..w {
                    let mut acc = 0.0;
                    for &(cx, cy, two_sigma_sq, amplitude) in &spots {
                        let dx = j as f64 - cx;
                        let dy = i as f64 - cy;
                        acc += 255.0 * amplitude * fmath::exp(-(dx * dx + dy * dy) / two_sigma_sq);
                    }
                    pixels.push(fmath::floor(acc.clamp(0.0, 255.0)) as u8);
                }
            }
        }
    }
    Ok(GrayImage {
        width,
        height,
        pixels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_p5_maps_bytes_verbatim() {
        let mut data = b"P5\n2 2\n255\n".to_vec();
        data.extend_from_slice(&[0, 64, 128, 255]);
        let img = load_pgm(&data).unwrap();
        assert_eq!((img.width(), img.height()), (2, 2));
        assert_eq!(img.pixels(), &[0, 64, 128, 255]);
    }

    #[test]
    fn load_p2_single_sample() {
        let img = load_pgm(b"P2\n1 1\n255\n17\n").unwrap();
        assert_eq!((img.width(), img.height()), (1, 1));
        assert_eq!(img.pixels(), &[17]);
    }

    #[test]
    fn rejects_color_sibling() {
        let err = load_pgm(b"P6\n1 1\n255\n\x00").unwrap_err();
        assert_eq!(err, PgmError::BadMagic { found: *b"P6" });
    }

    #[test]
    fn header_comments_are_ignored() {
        let mut data = b"P5\n# a comment\n2 1 # inline\n255\n".to_vec();
        data.extend_from_slice(&[7, 9]);
        let img = load_pgm(&data).unwrap();
        assert_eq!(img.pixels(), &[7, 9]);
    }

    #[test]
    fn maxval_above_255_is_rejected() {
        let err = load_pgm(b"P2\n1 1\n65535\n17\n").unwrap_err();
        assert_eq!(
            err,
            PgmError::ValueOutOfRange {
                field: "maxval",
                value: 65535,
                max: 255
            }
        );
    }

    #[test]
    fn truncated_raster_reports_counts() {
        let err = load_pgm(b"P5\n2 2\n255\n\x01\x02").unwrap_err();
        assert_eq!(
            err,
            PgmError::TruncatedPixels {
                expected: 4,
                got: 2
            }
        );
    }

    #[test]
    fn trailing_bytes_are_rejected() {
        let mut data = b"P5\n1 1\n255\n".to_vec();
        data.extend_from_slice(&[1, 2]);
        assert!(matches!(
            load_pgm(&data),
            Err(PgmError::TrailingData { .. })
        ));
    }

    #[test]
    fn zero_dimension_is_rejected() {
        let err = load_pgm(b"P2\n0 1\n255\n").unwrap_err();
        assert!(matches!(
            err,
            PgmError::ValueOutOfRange { field: "width", .. }
        ));
    }

    #[test]
    fn to_matrix_scales_by_255() {
        let img = GrayImage::new(2, 1, vec![255]).err();
        assert!(img.is_some()); // 2x1 needs two pixels

        let img = GrayImage::new(1, 1, vec![255]).unwrap();
        assert_eq!(img.to_matrix().get(0, 0), 1.0);

        let img = GrayImage::new(2, 1, vec![0, 51]).unwrap();
        let m = img.to_matrix();
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert_eq!(m.get(0, 0), 0.0);
        assert_eq!(m.get(0, 1), 0.2);

        let img = GrayImage::new(2, 2, vec![0, 64, 128, 255]).unwrap();
        let m = img.to_matrix();
        assert_eq!(m.get(0, 1), 64.0 / 255.0);
        assert_eq!(m.get(1, 0), 128.0 / 255.0);
        assert_eq!(m.get(1, 1), 1.0);
    }

    #[test]
    fn synth_checker_and_gradient_match_formulas() {
        let checker = synth_image(SynthKind::Checker, 2, 2, 99).unwrap();
        assert_eq!(checker.pixels(), &[0, 255, 255, 0]);

        let gradient = synth_image(SynthKind::Gradient, 3, 1, 0).unwrap();
        assert_eq!(gradient.pixels(), &[0, 127, 255]);

        let dot = synth_image(SynthKind::Gradient, 1, 1, 0).unwrap();
        assert_eq!(dot.pixels(), &[0]);
    }

    #[test]
    fn synth_blob_is_deterministic() {
        let a = synth_image(SynthKind::Blob, 8, 8, 1).unwrap();
        let b = synth_image(SynthKind::Blob, 8, 8, 1).unwrap();
        assert_eq!(a, b);
        let c = synth_image(SynthKind::Blob, 8, 8, 2).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn synth_rejects_zero_dimension() {
        assert!(matches!(
            synth_image(SynthKind::Checker, 0, 4, 0),
            Err(ImageError::ZeroDimension)
        ));
    }

    #[test]
    fn rotate90_quarter_turn_permutation() {
        // [a b; c d] rotated once clockwise -> [c a; d b]
        let img = GrayImage::new(2, 2, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(img.rotate90(1).pixels(), &[3, 1, 4, 2]);
        assert_eq!(img.rotate90(0), img);
        assert_eq!(img.rotate90(4), img);
        assert_eq!(img.rotate90(-1), img.rotate90(3));
    }

    #[test]
    fn rotate90_swaps_dimensions_and_preserves_histogram() {
        let img = synth_image(SynthKind::Blob, 5, 3, 7).unwrap();
        let rot = img.rotate90(1);
        assert_eq!((rot.width(), rot.height()), (3, 5));
        assert_eq!(rot.histogram(), img.histogram());
        assert_eq!(rot.rotate90(3), img);
    }

    #[test]
    fn translate_wrap_permutes_pixels() {
        let img = GrayImage::new(3, 2, vec![1, 2, 3, 4, 5, 6]).unwrap();
        let t = img.translate_wrap(1, 0);
        assert_eq!(t.pixels(), &[3, 1, 2, 6, 4, 5]);
        assert_eq!(t.histogram(), img.histogram());
        assert_eq!(img.translate_wrap(3, 2), img);
        assert_eq!(img.translate_wrap(-3, -2), img);
    }

    #[test]
    fn pgm_roundtrip_p5() {
        let img = synth_image(SynthKind::Blob, 9, 4, 42).unwrap();
        let bytes = write_pgm(&img);
        assert_eq!(load_pgm(&bytes).unwrap(), img);
    }
}
