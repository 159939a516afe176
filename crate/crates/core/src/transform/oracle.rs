//! Dense analysis matrix built from circular convolution with `l_d` and
//! `h_d` followed by keeping even output positions. It shares no code with
//! the index-formula kernels and serves as their reference.

use crate::error::Result;
use crate::filterbank::FilterBank;

use super::check_length;

/// Square `m x m` matrix, row-major. Rows `0..m/2` produce `p`, rows
/// `m/2..m` produce `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisMatrix {
    size: usize,
    data: Vec<f64>,
}

impl AnalysisMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.size + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.size..(row + 1) * self.size]
    }

    /// `W · s`
    pub fn apply(&self, s: &[f64]) -> Vec<f64> {
        (0..self.size)
            .map(|r| self.row(r).iter().zip(s).map(|(w, x)| w * x).sum())
            .collect()
    }

    /// `Wᵀ · c`
    pub fn apply_transpose(&self, c: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.size];
        for (r, &cr) in c.iter().enumerate() {
            for (o, w) in out.iter_mut().zip(self.row(r)) {
                *o += w * cr;
            }
        }
        out
    }

    /// `max |W·Wᵀ - I|` over all entries.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.size {
            for j in 0..self.size {
                let dot: f64 = self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

pub fn build_analysis_matrix(bank: &FilterBank, m: usize) -> Result<AnalysisMatrix> {
    check_length(m, bank.len())?;
    let half = m / 2;
    let mut data = vec![0.0; m * m];
    // Output position 2j (1-based) of the circular convolution s ⊛ f is
    // Σ_a f_a s_{2j+1-a}; with 0-based j the sample index is (2j + 1 - a) mod m.
    let mut put = |row: usize, j: usize, taps: &[f64]| {
        for (a0, &f) in taps.iter().enumerate() {
            let col = (2 * j + 2 * m - 1 - a0) % m;
            data[row * m + col] += f;
        }
    };
    for j in 0..half {
        put(j, j + 1, bank.l_d.taps());
        put(half + j, j + 1, bank.h_d.taps());
    }
    Ok(AnalysisMatrix { size: m, data })
}
