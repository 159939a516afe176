//! Grayscale PGM (P2 ASCII or P5 binary) in, binary P5 out.

use std::io::{BufReader, Cursor};
use std::path::Path;

use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{DynamicImage, ExtendedColorType, ImageEncoder, ImageFormat, ImageReader};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transform::Image2D;

/// Decode a PGM. 8-bit pixels keep their 0..255 values; 16-bit pixels are
/// rescaled onto 0..255.
pub fn decode(bytes: &[u8]) -> Result<Image2D> {
    let img = ImageReader::with_format(BufReader::new(Cursor::new(bytes)), ImageFormat::Pnm).decode()?;
    let (cols, rows) = (img.width() as usize, img.height() as usize);
    let pixels: Vec<f64> = match img {
        DynamicImage::ImageLuma8(buf) => buf.into_raw().into_iter().map(f64::from).collect(),
        DynamicImage::ImageLuma16(buf) => buf
            .into_raw()
            .into_iter()
            .map(|v| f64::from(v) * 255.0 / 65535.0)
            .collect(),
        other => {
            return Err(Error::Format(format!(
                "expected a grayscale PGM, got {:?}",
                other.color()
            )))
        }
    };
    Image2D::new(rows, cols, pixels)
}

pub fn read(path: &Path) -> Result<Image2D> {
    decode(&std::fs::read(path)?)
}

/// Encode as P5, rounding and clamping each pixel into 0..255.
pub fn encode(img: &Image2D) -> Result<Vec<u8>> {
    let raw: Vec<u8> = img
        .pixels()
        .iter()
        .map(|v| v.round().clamp(0.0, 255.0) as u8)
        .collect();
    encode_raw(&raw, img.rows(), img.cols())
}

fn encode_raw(raw: &[u8], rows: usize, cols: usize) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(raw.len() + 32);
    PnmEncoder::new(&mut out)
        .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary))
        .write_image(raw, cols as u32, rows as u32, ExtendedColorType::L8)?;
    Ok(out)
}

pub fn write(path: &Path, img: &Image2D) -> Result<()> {
    super::write_atomic(path, &encode(img)?)
}

/// Affine map `byte = (value - offset) * scale` used for a preview.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreviewMapping {
    pub offset: f64,
    pub scale: f64,
}

/// Stretch a plane onto 0..255. A flat plane maps to 0 with scale 0.
pub fn preview(plane: &[f64], rows: usize, cols: usize) -> Result<(Vec<u8>, PreviewMapping)> {
    let (lo, hi) = plane
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let offset = if lo.is_finite() { lo } else { 0.0 };
    let scale = if hi > lo { 255.0 / (hi - lo) } else { 0.0 };
    let raw: Vec<u8> = plane
        .iter()
        .map(|v| ((v - offset) * scale).round().clamp(0.0, 255.0) as u8)
        .collect();
    Ok((encode_raw(&raw, rows, cols)?, PreviewMapping { offset, scale }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_and_binary_inputs() {
        let p2 = b"P2\n# comment\n3 2\n255\n0 10 20\n30 40 255\n";
        let img = decode(p2).unwrap();
        assert_eq!((img.rows(), img.cols()), (2, 3));
        assert_eq!(img.pixels(), &[0., 10., 20., 30., 40., 255.]);

        let mut p5 = b"P5 3 2 255\n".to_vec();
        p5.extend([0u8, 10, 20, 30, 40, 255]);
        assert_eq!(decode(&p5).unwrap(), img);
    }

    #[test]
    fn encode_round_trip() {
        let img = Image2D::new(2, 2, vec![0.0, 17.0, 254.6, 300.0]).unwrap();
        let back = decode(&encode(&img).unwrap()).unwrap();
        assert_eq!(back.pixels(), &[0.0, 17.0, 255.0, 255.0]);
        assert!(encode(&img).unwrap().starts_with(b"P5"));
    }

    #[test]
    fn rejects_color_and_garbage() {
        let p3 = b"P3\n1 1\n255\n1 2 3\n";
        assert!(decode(p3).is_err());
        assert!(decode(b"hello").is_err());
    }

    #[test]
    fn preview_mapping() {
        let (bytes, map) = preview(&[-1.0, 0.0, 1.0, 3.0], 2, 2).unwrap();
        assert_eq!(map.offset, -1.0);
        assert_eq!(map.scale, 255.0 / 4.0);
        let img = decode(&bytes).unwrap();
        assert_eq!(img.pixels(), &[0.0, 64.0, 128.0, 255.0]);
        let (_, flat) = preview(&[2.0; 4], 2, 2).unwrap();
        assert_eq!(flat.scale, 0.0);
    }
}
