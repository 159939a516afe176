use rayon::prelude::*;

use super::{analyze_slice, synthesize_slice, BoundaryMode};
use crate::error::{Error, Result};
use crate::filterbank::FilterBank;

/// Row-major grayscale image with real-valued pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct Image2D {
    rows: usize,
    cols: usize,
    pixels: Vec<f64>,
}

impl Image2D {
    pub fn new(rows: usize, cols: usize, pixels: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows * cols != pixels.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} pixels for a {rows}x{cols} image",
                pixels.len()
            )));
        }
        if let Some(i) = pixels.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { position: i + 1 });
        }
        Ok(Self { rows, cols, pixels })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            pixels: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<f64> {
        self.pixels
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.pixels[r * self.cols + c]
    }
}

/// Four `(rows/2) x (cols/2)` row-major coefficient planes.
///
/// `horizontal` is row-direction low-pass, column-direction high-pass, so an
/// image of horizontal stripes puts its detail energy there. `vertical` is the
/// transposed pairing and `diagonal` is high-pass in both directions.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition2D {
    pub main: Vec<f64>,
    pub horizontal: Vec<f64>,
    pub vertical: Vec<f64>,
    pub diagonal: Vec<f64>,
    pub mode: BoundaryMode,
    pub rows: usize,
    pub cols: usize,
    pub n: usize,
}

impl Decomposition2D {
    pub fn plane_rows(&self) -> usize {
        self.rows / 2
    }

    pub fn plane_cols(&self) -> usize {
        self.cols / 2
    }

    pub fn planes(&self) -> [&[f64]; 4] {
        [&self.main, &self.horizontal, &self.vertical, &self.diagonal]
    }
}

pub(crate) fn check_dims(rows: usize, cols: usize, taps: usize) -> Result<()> {
    let min = 2 * taps;
    let ok = |d: usize| d.is_multiple_of(2) && d >= min;
    if !(ok(rows) && ok(cols)) {
        return Err(Error::ImageDims {
            rows,
            cols,
            taps,
            min,
        });
    }
    Ok(())
}

/// Analyze every row of a row-major `rows x cols` buffer.
fn rows_pass(data: &[f64], cols: usize, l: &[f64], mode: BoundaryMode) -> (Vec<f64>, Vec<f64>) {
    let halves: Vec<(Vec<f64>, Vec<f64>)> = data
        .par_chunks(cols)
        .map(|row| analyze_slice(row, l, mode))
        .collect();
    let mut low = Vec::with_capacity(data.len() / 2);
    let mut high = Vec::with_capacity(data.len() / 2);
    for (p, q) in halves {
        low.extend(p);
        high.extend(q);
    }
    (low, high)
}

fn column(data: &[f64], cols: usize, c: usize) -> Vec<f64> {
    data.iter().skip(c).step_by(cols).copied().collect()
}

/// Analyze every column of a row-major `rows x cols` buffer. Results are
/// row-major `(rows/2) x cols`.
fn columns_pass(
    data: &[f64],
    rows: usize,
    cols: usize,
    l: &[f64],
    mode: BoundaryMode,
) -> (Vec<f64>, Vec<f64>) {
    let per_col: Vec<(Vec<f64>, Vec<f64>)> = (0..cols)
        .into_par_iter()
        .map(|c| analyze_slice(&column(data, cols, c), l, mode))
        .collect();
    let half = rows / 2;
    let mut low = vec![0.0; half * cols];
    let mut high = vec![0.0; half * cols];
    for (c, (p, q)) in per_col.into_iter().enumerate() {
        for r in 0..half {
            low[r * cols + c] = p[r];
            high[r * cols + c] = q[r];
        }
    }
    (low, high)
}

pub fn analyze_2d(img: &Image2D, bank: &FilterBank, mode: BoundaryMode) -> Result<Decomposition2D> {
    check_dims(img.rows, img.cols, bank.len())?;
    let l = bank.l_d.taps();
    let half_cols = img.cols / 2;
    let (row_low, row_high) = rows_pass(&img.pixels, img.cols, l, mode);
    let (main, horizontal) = columns_pass(&row_low, img.rows, half_cols, l, mode);
    let (vertical, diagonal) = columns_pass(&row_high, img.rows, half_cols, l, mode);
    Ok(Decomposition2D {
        main,
        horizontal,
        vertical,
        diagonal,
        mode,
        rows: img.rows,
        cols: img.cols,
        n: bank.n(),
    })
}

/// Synthesize every column from a (low, high) pair of row-major
/// `half_rows x cols` planes; returns row-major `2*half_rows x cols`.
fn columns_inverse(low: &[f64], high: &[f64], cols: usize, l: &[f64]) -> Vec<f64> {
    let per_col: Vec<Vec<f64>> = (0..cols)
        .into_par_iter()
        .map(|c| synthesize_slice(&column(low, cols, c), &column(high, cols, c), l))
        .collect();
    let rows = 2 * low.len() / cols;
    let mut out = vec![0.0; rows * cols];
    for (c, col) in per_col.into_iter().enumerate() {
        for (r, v) in col.into_iter().enumerate() {
            out[r * cols + c] = v;
        }
    }
    out
}

pub fn synthesize_2d(d: &Decomposition2D, bank: &FilterBank) -> Result<Image2D> {
    let plane = d.plane_rows() * d.plane_cols();
    if d.planes().iter().any(|p| p.len() != plane) {
        return Err(Error::ShapeMismatch(format!(
            "every plane must hold {}x{} coefficients",
            d.plane_rows(),
            d.plane_cols()
        )));
    }
    if d.n != bank.n() {
        return Err(Error::ShapeMismatch(format!(
            "coefficients were produced by a {}-tap bank, got a {}-tap bank",
            2 * d.n,
            bank.len()
        )));
    }
    check_dims(d.rows, d.cols, bank.len())?;
    let l = bank.l_d.taps();
    let half_cols = d.plane_cols();
    let row_low = columns_inverse(&d.main, &d.horizontal, half_cols, l);
    let row_high = columns_inverse(&d.vertical, &d.diagonal, half_cols, l);
    let pixels: Vec<f64> = row_low
        .par_chunks(half_cols)
        .zip(row_high.par_chunks(half_cols))
        .flat_map_iter(|(p, q)| synthesize_slice(p, q, l))
        .collect();
    Image2D::new(d.rows, d.cols, pixels)
}

/// Repeated analysis of the `main` plane; element 0 is the finest level.
/// Stops early when `main` becomes too small for the bank.
pub fn analyze_2d_levels(
    img: &Image2D,
    bank: &FilterBank,
    mode: BoundaryMode,
    levels: usize,
) -> Result<Vec<Decomposition2D>> {
    let mut out: Vec<Decomposition2D> = Vec::with_capacity(levels);
    let mut current = analyze_2d(img, bank, mode)?;
    for _ in 1..levels {
        let (r, c) = (current.plane_rows(), current.plane_cols());
        if check_dims(r, c, bank.len()).is_err() {
            break;
        }
        let next = analyze_2d(&Image2D::new(r, c, current.main.clone())?, bank, mode)?;
        out.push(current);
        current = next;
    }
    out.push(current);
    Ok(out)
}

pub fn synthesize_2d_levels(levels: &[Decomposition2D], bank: &FilterBank) -> Result<Image2D> {
    let (coarsest, finer) = levels
        .split_last()
        .ok_or_else(|| Error::ShapeMismatch("no decomposition levels".into()))?;
    let mut img = synthesize_2d(coarsest, bank)?;
    for level in finer.iter().rev() {
        let mut d = level.clone();
        d.main = img.into_pixels();
        img = synthesize_2d(&d, bank)?;
    }
    Ok(img)
}
