//! Resumable census state.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! offset  size  field
//! 0       1     version (1)
//! 1       1     order n
//! 2       8     index of the next unprocessed first row
//! 10      8     number of first rows for this order
//! 18      8     labeled tables counted so far
//! 26      4     number of classes c
//! 30      ...   c records: 1 flag byte (bit 0 = regular), then the
//!               canonical table nibble-packed in ceil(n^2 / 2) bytes
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

pub const VERSION: u8 = 1;
const HEADER_LEN: usize = 30;

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("CheckpointIo {0}")]
    Io(#[from] io::Error),
    #[error("CheckpointVersion found={0}")]
    Version(u8),
    #[error("CheckpointCorrupt {0}")]
    Corrupt(&'static str),
    #[error("CheckpointMismatch expected_order={expected} found={found}")]
    OrderMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusState {
    pub order: usize,
    pub next_row: u64,
    pub row_count: u64,
    pub labeled_total: u64,
    /// Packed canonical table -> regular.
    pub classes: BTreeMap<Vec<u8>, bool>,
}

impl CensusState {
    pub fn new(order: usize, row_count: u64) -> Self {
        CensusState {
            order,
            next_row: 0,
            row_count,
            labeled_total: 0,
            classes: BTreeMap::new(),
        }
    }

    fn record_len(order: usize) -> usize {
        1 + (order * order).div_ceil(2)
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.classes.len() * Self::record_len(self.order));
        out.push(VERSION);
        out.push(self.order as u8);
        out.extend_from_slice(&self.next_row.to_le_bytes());
        out.extend_from_slice(&self.row_count.to_le_bytes());
        out.extend_from_slice(&self.labeled_total.to_le_bytes());
        out.extend_from_slice(&(self.classes.len() as u32).to_le_bytes());
        for (packed, &regular) in &self.classes {
            out.push(u8::from(regular));
            out.extend_from_slice(packed);
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, CheckpointError> {
        if bytes.len() < HEADER_LEN {
            return Err(CheckpointError::Corrupt("short header"));
        }
        if bytes[0] != VERSION {
            return Err(CheckpointError::Version(bytes[0]));
        }
        let order = bytes[1] as usize;
        let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().expect("8 bytes"));
        let next_row = u64_at(2);
        let row_count = u64_at(10);
        let labeled_total = u64_at(18);
        let count = u32::from_le_bytes(bytes[26..30].try_into().expect("4 bytes")) as usize;
        let rec = Self::record_len(order);
        if order == 0 || bytes.len() != HEADER_LEN + count * rec {
            return Err(CheckpointError::Corrupt("length does not match class count"));
        }
        if next_row > row_count {
            return Err(CheckpointError::Corrupt("next row past the end"));
        }
        let mut classes = BTreeMap::new();
        for chunk in bytes[HEADER_LEN..].chunks_exact(rec) {
            if chunk[0] > 1 {
                return Err(CheckpointError::Corrupt("bad flag byte"));
            }
            classes.insert(chunk[1..].to_vec(), chunk[0] == 1);
        }
        Ok(CensusState {
            order,
            next_row,
            row_count,
            labeled_total,
            classes,
        })
    }

    /// Writes through a temporary file and renames it into place.
    pub fn save(&self, path: &Path) -> Result<(), CheckpointError> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        fs::write(&tmp, self.encode())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Loads a saved state if `path` exists and belongs to `order`.
    pub fn load(path: &Path, order: usize) -> Result<Option<Self>, CheckpointError> {
        let bytes = match fs::read(path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let state = Self::decode(&bytes)?;
        if state.order != order {
            return Err(CheckpointError::OrderMismatch {
                expected: order,
                found: state.order,
            });
        }
        Ok(Some(state))
    }
}
