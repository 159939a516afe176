//! DRC1 coefficient container, little-endian:
//!
//! ```text
//! "DRC1" | u32 version = 1 | u32 n | u32 rows | u32 cols | u8 mode
//! | main | horizontal | vertical | diagonal      (row-major f64 planes)
//! ```
//!
//! Images store four `(rows/2) x (cols/2)` planes. A 1D signal of length `m`
//! is stored with `rows = 1`, `cols = m`: `main` holds `p`, `vertical` (the
//! row-direction high-pass plane) holds `q`, and the other two planes are
//! empty.

use crate::error::{Error, Result};
use crate::transform::{BoundaryMode, Decomposition1D, Decomposition2D};

pub const MAGIC: &[u8; 4] = b"DRC1";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 * 4 + 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Container {
    Signal(Decomposition1D),
    Image(Decomposition2D),
}

impl Container {
    pub fn n(&self) -> usize {
        match self {
            Container::Signal(d) => d.n,
            Container::Image(d) => d.n,
        }
    }

    pub fn mode(&self) -> BoundaryMode {
        match self {
            Container::Signal(d) => d.mode,
            Container::Image(d) => d.mode,
        }
    }
}

fn dim(v: usize, what: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::Format(format!("{what} {v} does not fit in u32")))
}

pub fn encode(c: &Container) -> Result<Vec<u8>> {
    let (n, rows, cols, mode, planes): (usize, usize, usize, BoundaryMode, [&[f64]; 4]) = match c {
        Container::Signal(d) => (d.n, 1, d.m, d.mode, [&d.p, &[], &d.q, &[]]),
        Container::Image(d) => (d.n, d.rows, d.cols, d.mode, d.planes()),
    };
    let values: usize = planes.iter().map(|p| p.len()).sum();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * values);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&dim(n, "n")?.to_le_bytes());
    out.extend_from_slice(&dim(rows, "rows")?.to_le_bytes());
    out.extend_from_slice(&dim(cols, "cols")?.to_le_bytes());
    out.push(mode.code());
    for plane in planes {
        for v in plane {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    Ok(out)
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl Reader<'_> {
    fn take(&mut self, len: usize) -> Result<&[u8]> {
        if self.bytes.len() < len {
            return Err(Error::Format("DRC1 container is truncated".into()));
        }
        let (head, tail) = self.bytes.split_at(len);
        self.bytes = tail;
        Ok(head)
    }

    fn u32(&mut self) -> Result<usize> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()) as usize)
    }

    fn plane(&mut self, len: usize) -> Result<Vec<f64>> {
        let raw = self.take(len.checked_mul(8).ok_or_else(|| Error::Format("plane too large".into()))?)?;
        Ok(raw
            .chunks_exact(8)
            .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
            .collect())
    }
}

pub fn decode(bytes: &[u8]) -> Result<Container> {
    let mut r = Reader { bytes };
    if r.take(4).ok() != Some(MAGIC.as_slice()) {
        return Err(Error::Format("not a DRC1 container (bad magic)".into()));
    }
    let version = r.u32()?;
    if version != VERSION as usize {
        return Err(Error::Format(format!("unsupported DRC1 version {version}")));
    }
    let n = r.u32()?;
    let rows = r.u32()?;
    let cols = r.u32()?;
    let code = r.take(1)?[0];
    let mode = BoundaryMode::from_code(code)
        .ok_or_else(|| Error::Format(format!("unknown boundary mode {code}")))?;
    if n == 0 || rows == 0 || cols == 0 || cols % 2 != 0 || (rows != 1 && rows % 2 != 0) {
        return Err(Error::Format(format!(
            "invalid DRC1 dimensions n={n} rows={rows} cols={cols}"
        )));
    }

    let container = if rows == 1 {
        let half = cols / 2;
        let p = r.plane(half)?;
        let q = r.plane(half)?;
        Container::Signal(Decomposition1D {
            p,
            q,
            mode,
            m: cols,
            n,
        })
    } else {
        let len = (rows / 2) * (cols / 2);
        Container::Image(Decomposition2D {
            main: r.plane(len)?,
            horizontal: r.plane(len)?,
            vertical: r.plane(len)?,
            diagonal: r.plane(len)?,
            mode,
            rows,
            cols,
            n,
        })
    };
    if !r.bytes.is_empty() {
        return Err(Error::Format(format!(
            "{} trailing bytes after DRC1 planes",
            r.bytes.len()
        )));
    }
    Ok(container)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn image() -> Container {
        let len = 4 * 6;
        let plane = |k: f64| (0..len).map(|i| k * i as f64 - 0.1).collect::<Vec<_>>();
        Container::Image(Decomposition2D {
            main: plane(1.0),
            horizontal: plane(-2.5),
            vertical: plane(1e-300),
            diagonal: plane(std::f64::consts::PI),
            mode: BoundaryMode::PaperExtension,
            rows: 8,
            cols: 12,
            n: 2,
        })
    }

    #[test]
    fn header_layout() {
        let bytes = encode(&image()).unwrap();
        assert_eq!(&bytes[..4], b"DRC1");
        assert_eq!(&bytes[4..8], &1u32.to_le_bytes());
        assert_eq!(&bytes[8..12], &2u32.to_le_bytes());
        assert_eq!(&bytes[12..16], &8u32.to_le_bytes());
        assert_eq!(&bytes[16..20], &12u32.to_le_bytes());
        assert_eq!(bytes[20], 1);
        assert_eq!(bytes.len(), HEADER_LEN + 4 * 24 * 8);
        assert_eq!(&bytes[21..29], &(-0.1f64).to_le_bytes());
    }

    #[test]
    fn bit_identical_round_trip() {
        let img = image();
        let bytes = encode(&img).unwrap();
        assert_eq!(decode(&bytes).unwrap(), img);
        assert_eq!(encode(&decode(&bytes).unwrap()).unwrap(), bytes);

        let sig = Container::Signal(Decomposition1D {
            p: vec![1.0, 2.0, 3.0, 4.0],
            q: vec![-0.0, 0.5, f64::MIN_POSITIVE, 7.0],
            mode: BoundaryMode::Periodic,
            m: 8,
            n: 1,
        });
        let bytes = encode(&sig).unwrap();
        assert_eq!(bytes.len(), HEADER_LEN + 8 * 8);
        assert_eq!(encode(&decode(&bytes).unwrap()).unwrap(), bytes);
    }

    #[test]
    fn rejects_corrupt_input() {
        let bytes = encode(&image()).unwrap();
        let mut bad_magic = bytes.clone();
        bad_magic[3] = b'2';
        assert!(decode(&bad_magic).is_err());
        let mut bad_version = bytes.clone();
        bad_version[4] = 2;
        assert!(decode(&bad_version).is_err());
        let mut bad_mode = bytes.clone();
        bad_mode[20] = 9;
        assert!(decode(&bad_mode).is_err());
        assert!(decode(&bytes[..bytes.len() - 1]).is_err());
        let mut long = bytes.clone();
        long.push(0);
        assert!(decode(&long).is_err());
        assert!(decode(b"").is_err());
    }
}
