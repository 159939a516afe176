//! Filter taps, the four-filter bank derived from them, and the
//! constraint system a decomposition low-pass filter must satisfy for the
//! bank to reconstruct perfectly.
//!
//! Tap positions are 1-based in public accessors and reports (`tap(1)` is the
//! first printed coefficient); storage is a plain left-to-right `Vec<f64>`.

mod catalog;

pub use catalog::{catalog, lookup, ReferenceEntry};

use serde::Serialize;

use crate::error::{Error, Result};

/// An even-length sequence of finite real taps `l_1 .. l_2n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Filter {
    taps: Vec<f64>,
}

impl Filter {
    pub fn new(taps: Vec<f64>) -> Result<Self> {
        if taps.is_empty() || !taps.len().is_multiple_of(2) {
            return Err(Error::FilterLength(taps.len()));
        }
        if let Some(i) = taps.iter().position(|t| !t.is_finite()) {
            return Err(Error::NonFinite { position: i + 1 });
        }
        Ok(Self { taps })
    }

    /// Half-length `n`; the filter has `2n` taps.
    pub fn n(&self) -> usize {
        self.taps.len() / 2
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    /// Tap at 1-based `position`.
    pub fn tap(&self, position: usize) -> f64 {
        self.taps[position - 1]
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn into_taps(self) -> Vec<f64> {
        self.taps
    }

    pub fn dot(&self, other: &Filter) -> f64 {
        self.taps.iter().zip(&other.taps).map(|(a, b)| a * b).sum()
    }

    pub fn negate(&self) -> Filter {
        Filter {
            taps: self.taps.iter().map(|t| -t).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Filter {
        Filter {
            taps: self.taps.iter().map(|t| c * t).collect(),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.taps.iter().map(|t| t * t).sum()
    }

    /// Rescale to unit Euclidean norm.
    pub fn normalized(&self) -> Result<Filter> {
        let mut taps = self.taps.clone();
        normalize_in_place(&mut taps)?;
        Ok(Filter { taps })
    }
}

pub(crate) fn normalize_in_place(taps: &mut [f64]) -> Result<()> {
    let norm = taps.iter().map(|t| t * t).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroVector);
    }
    taps.iter_mut().for_each(|t| *t /= norm);
    Ok(())
}

/// Quadrature mirror: reverse, then alternate signs starting positive.
///
/// `qmf([l1, l2, l3, l4]) == [l4, -l3, l2, -l1]`.
pub fn qmf(f: &Filter) -> Filter {
    let taps = f
        .taps
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &t)| if i % 2 == 0 { t } else { -t })
        .collect();
    Filter { taps }
}

pub fn rev(f: &Filter) -> Filter {
    Filter {
        taps: f.taps.iter().rev().copied().collect(),
    }
}

/// Decomposition and reconstruction filters, all determined by `l_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterBank {
    pub l_d: Filter,
    pub h_d: Filter,
    pub l_r: Filter,
    pub h_r: Filter,
}

impl FilterBank {
    pub fn n(&self) -> usize {
        self.l_d.n()
    }

    pub fn len(&self) -> usize {
        self.l_d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l_d.is_empty()
    }
}

/// `h_d = -qmf(l_d)`, `l_r = rev(l_d)`, `h_r = qmf(l_r)`.
pub fn derive_bank(l_d: &Filter) -> FilterBank {
    let l_r = rev(l_d);
    FilterBank {
        h_d: qmf(l_d).negate(),
        h_r: qmf(&l_r),
        l_r,
        l_d: l_d.clone(),
    }
}

/// Residuals of every equation of the constraint system for one filter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    /// `orthogonality[k - 1] = Σ_j l_j l_{j+2k}` for shift `k = 1 .. n-1`.
    /// The classical listing of the system starts from the largest shift
    /// (`l_1 l_{2n-1} + l_2 l_{2n}`); this vector is in ascending shift order.
    pub orthogonality: Vec<f64>,
    /// Sum of odd-position taps minus sum of even-position taps.
    pub parity: f64,
    /// `Σ l_i² - 1`.
    pub norm: f64,
    pub total_abs: f64,
}

impl ResidualReport {
    /// Sum of squared orthogonality and parity residuals (norm excluded).
    pub fn lyapunov(&self) -> f64 {
        self.orthogonality.iter().map(|r| r * r).sum::<f64>() + self.parity * self.parity
    }
}

/// Double-shift inner product `Σ_j l_j l_{j+2k}`.
pub(crate) fn shift_product(taps: &[f64], k: usize) -> f64 {
    let s = 2 * k;
    taps.iter().zip(&taps[s..]).map(|(a, b)| a * b).sum()
}

pub(crate) fn parity(taps: &[f64]) -> f64 {
    taps.chunks_exact(2).map(|p| p[0] - p[1]).sum()
}

pub fn constraint_residuals(l_d: &Filter) -> ResidualReport {
    let taps = l_d.taps();
    let orthogonality: Vec<f64> = (1..l_d.n()).map(|k| shift_product(taps, k)).collect();
    let parity = parity(taps);
    let norm = l_d.norm_sq() - 1.0;
    let total_abs =
        orthogonality.iter().map(|r| r.abs()).sum::<f64>() + parity.abs() + norm.abs();
    ResidualReport {
        orthogonality,
        parity,
        norm,
        total_abs,
    }
}

/// Descent objective of the coordinate solver: squared residuals of the
/// orthogonality and parity equations.
pub fn lyapunov(l_d: &Filter) -> f64 {
    lyapunov_taps(l_d.taps())
}

pub(crate) fn lyapunov_taps(taps: &[f64]) -> f64 {
    let n = taps.len() / 2;
    let p = parity(taps);
    (1..n).map(|k| shift_product(taps, k).powi(2)).sum::<f64>() + p * p
}
