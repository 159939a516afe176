//! Single-level analysis and synthesis of 1D signals and 2D images.
//!
//! The analysis coefficients follow the direct index formulas
//!
//! ```text
//! p_j = Σ_{t=1..2n} s_{2(j-n)+t} · l_{2n+1-t}
//! q_j = Σ_{t=1..2n} (-1)^{t+1} s_{2(j-n)+t} · l_t
//! ```
//!
//! for `j = 1 ..= m/2`, so `p_n` pairs with the window `s_1 .. s_2n`. Sample
//! indices outside `1 ..= m` are resolved by the [`BoundaryMode`]. Synthesis
//! inverts this with
//!
//! ```text
//! s_{2k-1} = Σ_{u=1..n} l_{2u-1} q_{n+k-u} + l_{2u} p_{k+u-1}
//! s_{2k}   = Σ_{u=1..n} l_{2u-1} p_{k+u-1} - l_{2u} q_{n+k-u}
//! ```
//!
//! with coefficient indices taken modulo `m/2`.

mod image;
mod metrics;
mod oracle;

pub use image::{
    analyze_2d, analyze_2d_levels, synthesize_2d, synthesize_2d_levels, Decomposition2D, Image2D,
};
pub use metrics::{reconstruction_error, subband_energy, SubbandEnergy};
pub use oracle::{build_analysis_matrix, AnalysisMatrix};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filterbank::FilterBank;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryMode {
    /// Circular indexing on both sides; exactly invertible.
    Periodic,
    /// Mirror extension `[s_{2n-1}, .., s_2, s_1, s_1, s_2, ..]` on the left,
    /// periodic wrap on the right.
    PaperExtension,
}

impl BoundaryMode {
    pub fn code(self) -> u8 {
        match self {
            BoundaryMode::Periodic => 0,
            BoundaryMode::PaperExtension => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(BoundaryMode::Periodic),
            1 => Some(BoundaryMode::PaperExtension),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Signal1D {
    samples: Vec<f64>,
}

impl Signal1D {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { position: i + 1 });
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition1D {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub mode: BoundaryMode,
    /// Original signal length.
    pub m: usize,
    /// Half-length of the bank that produced the coefficients.
    pub n: usize,
}

/// Synthesis output. In [`BoundaryMode::PaperExtension`] the samples whose
/// reconstruction window reached past the last coefficient are listed in
/// `approximate` (0-based); Periodic output is exact and the list is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction1D {
    pub signal: Signal1D,
    pub approximate: Vec<usize>,
}

/// Prepend the first `2n - 1` samples in reverse order.
pub fn extend(s: &Signal1D, n: usize) -> Result<Vec<f64>> {
    let need = (2 * n).saturating_sub(1);
    if s.len() < need || n == 0 {
        return Err(Error::TooShortToExtend { m: s.len(), need });
    }
    let mut out = Vec::with_capacity(s.len() + need);
    out.extend(s.samples[..need].iter().rev());
    out.extend_from_slice(&s.samples);
    Ok(out)
}

pub(crate) fn check_length(m: usize, taps: usize) -> Result<()> {
    let min = 2 * taps;
    if !m.is_multiple_of(2) || m < min {
        return Err(Error::SignalLength { m, taps, min });
    }
    Ok(())
}

/// Sample at 1-based index `idx`, resolved through the boundary rule.
#[inline]
fn sample_at(s: &[f64], idx: isize, mode: BoundaryMode) -> f64 {
    let m = s.len() as isize;
    match mode {
        BoundaryMode::PaperExtension if idx <= 0 => s[(-idx) as usize],
        _ => s[(idx - 1).rem_euclid(m) as usize],
    }
}

/// Unchecked kernel shared by the 1D and 2D paths.
pub(crate) fn analyze_slice(s: &[f64], l: &[f64], mode: BoundaryMode) -> (Vec<f64>, Vec<f64>) {
    let two_n = l.len();
    let n = (two_n / 2) as isize;
    let half = s.len() / 2;
    let mut p = Vec::with_capacity(half);
    let mut q = Vec::with_capacity(half);
    for j in 1..=half as isize {
        let base = 2 * (j - n);
        let mut pj = 0.0;
        let mut qj = 0.0;
        for t in 1..=two_n {
            let x = sample_at(s, base + t as isize, mode);
            pj += x * l[two_n - t];
            if t % 2 == 1 {
                qj += x * l[t - 1];
            } else {
                qj -= x * l[t - 1];
            }
        }
        p.push(pj);
        q.push(qj);
    }
    (p, q)
}

pub(crate) fn synthesize_slice(p: &[f64], q: &[f64], l: &[f64]) -> Vec<f64> {
    let n = l.len() / 2;
    let half = p.len();
    // 1-based coefficient index, wrapped into 1..=half.
    let wrap = |idx: usize| (idx - 1) % half;
    let mut out = Vec::with_capacity(2 * half);
    for k in 1..=half {
        let mut odd = 0.0;
        let mut even = 0.0;
        for u in 1..=n {
            let pk = p[wrap(k + u - 1)];
            let qk = q[wrap(n + k - u)];
            let lo = l[2 * u - 2];
            let le = l[2 * u - 1];
            odd += lo * qk + le * pk;
            even += lo * pk - le * qk;
        }
        out.push(odd);
        out.push(even);
    }
    out
}

pub fn analyze_1d(s: &Signal1D, bank: &FilterBank, mode: BoundaryMode) -> Result<Decomposition1D> {
    check_length(s.len(), bank.len())?;
    let (p, q) = analyze_slice(&s.samples, bank.l_d.taps(), mode);
    Ok(Decomposition1D {
        p,
        q,
        mode,
        m: s.len(),
        n: bank.n(),
    })
}

pub fn synthesize_1d(d: &Decomposition1D, bank: &FilterBank) -> Result<Reconstruction1D> {
    if d.p.len() != d.q.len() || 2 * d.p.len() != d.m {
        return Err(Error::ShapeMismatch(format!(
            "coefficient lengths {} and {} do not match signal length {}",
            d.p.len(),
            d.q.len(),
            d.m
        )));
    }
    if d.n != bank.n() {
        return Err(Error::ShapeMismatch(format!(
            "coefficients were produced by a {}-tap bank, got a {}-tap bank",
            2 * d.n,
            bank.len()
        )));
    }
    check_length(d.m, bank.len())?;
    let samples = synthesize_slice(&d.p, &d.q, bank.l_d.taps());
    let approximate = match d.mode {
        BoundaryMode::Periodic => Vec::new(),
        // Windows for k > m/2 - n + 1 reference coefficients past m/2.
        BoundaryMode::PaperExtension => {
            let first_k = d.m / 2 + 2 - d.n;
            (2 * (first_k - 1)..d.m).collect()
        }
    };
    Ok(Reconstruction1D {
        signal: Signal1D::new(samples)?,
        approximate,
    })
}
