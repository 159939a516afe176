//! File formats: bank JSON, the DRC1 coefficient container, CSV signals and
//! traces, and grayscale PGM images.

pub mod bank;
pub mod csv;
pub mod drc;
pub mod pgm;

use std::io::Write;
use std::path::Path;

use crate::error::Result;

/// Write through a temporary file in the destination directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
