use serde::Serialize;

use super::Decomposition2D;
use crate::error::{Error, Result};

/// Largest absolute entrywise difference.
pub fn reconstruction_error(original: &[f64], reconstructed: &[f64]) -> Result<f64> {
    if original.len() != reconstructed.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} values against {}",
            original.len(),
            reconstructed.len()
        )));
    }
    Ok(original
        .iter()
        .zip(reconstructed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneEnergy {
    pub energy: f64,
    pub fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubbandEnergy {
    pub main: PlaneEnergy,
    pub horizontal: PlaneEnergy,
    pub vertical: PlaneEnergy,
    pub diagonal: PlaneEnergy,
    pub total: f64,
}

impl SubbandEnergy {
    pub fn fractions(&self) -> [f64; 4] {
        [
            self.main.fraction,
            self.horizontal.fraction,
            self.vertical.fraction,
            self.diagonal.fraction,
        ]
    }
}

/// Per-plane sum of squares and its share of the total. Fractions are zero
/// when the total is zero.
pub fn subband_energy(d: &Decomposition2D) -> SubbandEnergy {
    let [e_main, e_hor, e_ver, e_diag] = d.planes().map(|p| p.iter().map(|v| v * v).sum::<f64>());
    let total = e_main + e_hor + e_ver + e_diag;
    let part = |energy: f64| PlaneEnergy {
        energy,
        fraction: if total > 0.0 { energy / total } else { 0.0 },
    };
    SubbandEnergy {
        main: part(e_main),
        horizontal: part(e_hor),
        vertical: part(e_ver),
        diagonal: part(e_diag),
        total,
    }
}
