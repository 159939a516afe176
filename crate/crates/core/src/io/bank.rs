//! `wavegen-bank/1` JSON files. Only `l_d` is stored; the other three filters
//! are always re-derived on load.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filterbank::{constraint_residuals, Filter};

pub const BANK_FORMAT: &str = "wavegen-bank/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BankFile {
    pub format: String,
    pub n: usize,
    pub l_d: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_total_abs: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
}

impl BankFile {
    /// Bank record for `filter` with its current residual filled in.
    pub fn new(filter: &Filter, name: Option<String>) -> Self {
        Self {
            format: BANK_FORMAT.to_string(),
            n: filter.n(),
            l_d: filter.taps().to_vec(),
            name,
            residual_total_abs: Some(constraint_residuals(filter).total_abs),
            converged: None,
        }
    }

    pub fn filter(&self) -> Result<Filter> {
        if self.format != BANK_FORMAT {
            return Err(Error::Format(format!(
                "unsupported bank format {:?}, expected {BANK_FORMAT:?}",
                self.format
            )));
        }
        if self.l_d.len() != 2 * self.n {
            return Err(Error::Format(format!(
                "n = {} but l_d has {} taps",
                self.n,
                self.l_d.len()
            )));
        }
        Filter::new(self.l_d.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let bank: BankFile = serde_json::from_str(text)?;
        bank.filter()?;
        Ok(bank)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        super::write_atomic(path, self.to_json()?.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_value_identical() {
        let f = Filter::new(vec![0.1 + 0.2, -1.0 / 3.0, 1e-300, std::f64::consts::FRAC_1_SQRT_2]).unwrap();
        let b = BankFile::new(&f, Some("x".into()));
        let back = BankFile::from_json(&b.to_json().unwrap()).unwrap();
        assert_eq!(back, b);
        for (a, c) in back.l_d.iter().zip(f.taps()) {
            assert_eq!(a.to_bits(), c.to_bits());
        }
    }

    #[test]
    fn minimal_document() {
        let b = BankFile::from_json(r#"{"format":"wavegen-bank/1","n":1,"l_d":[0.5,0.5]}"#).unwrap();
        assert_eq!(b.name, None);
        assert_eq!(b.filter().unwrap().taps(), &[0.5, 0.5]);
        assert!(!b.to_json().unwrap().contains("converged"));
    }

    #[test]
    fn rejects_bad_documents() {
        for text in [
            r#"{"format":"other/1","n":1,"l_d":[0.5,0.5]}"#,
            r#"{"format":"wavegen-bank/1","n":2,"l_d":[0.5,0.5]}"#,
            r#"{"format":"wavegen-bank/1","n":1,"l_d":[0.5]}"#,
            r#"{"format":"wavegen-bank/1","n":1,"l_d":[0.5,"#,
            r#"{"n":1,"l_d":[0.5,0.5]}"#,
        ] {
            assert!(BankFile::from_json(text).is_err(), "{text}");
        }
    }
}
