//! JSON tensor format.
//!
//! ```json
//! {"order": 3, "dim": 2, "entries": [{"idx": [1, 1, 1], "value": 0.3}, ...]}
//! ```
//!
//! Indices are one-based. Each entry stands for its whole symmetry orbit;
//! orbits not listed are zero. The writer emits every orbit, represented by
//! its lexicographically smallest (nondecreasing) index tuple.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SymTensor;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
pub struct TensorFile {
    pub order: usize,
    pub dim: usize,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Entry {
    pub idx: Vec<usize>,
    pub value: f64,
}

impl TensorFile {
    pub fn from_tensor(t: &SymTensor) -> Self {
        Self {
            order: t.order(),
            dim: t.dim(),
            entries: t
                .orbits()
                .map(|(idx, value)| Entry {
                    idx: idx.into_iter().map(|i| i + 1).collect(),
                    value,
                })
                .collect(),
        }
    }

    pub fn into_tensor(self) -> Result<SymTensor> {
        let dim = self.dim;
        let mut generators = Vec::with_capacity(self.entries.len());
        for e in self.entries {
            if e.idx.iter().any(|&i| i == 0 || i > dim) {
                return Err(Error::IndexOutOfRange { idx: e.idx, dim });
            }
            generators.push((e.idx.iter().map(|i| i - 1).collect(), e.value));
        }
        SymTensor::build_symmetric(self.order, self.dim, generators)
    }
}

pub fn from_str(s: &str) -> Result<SymTensor> {
    let file: TensorFile = serde_json::from_str(s)?;
    file.into_tensor()
}

pub fn from_reader<R: Read>(r: R) -> Result<SymTensor> {
    let file: TensorFile = serde_json::from_reader(r)?;
    file.into_tensor()
}

pub fn read_path(path: impl AsRef<Path>) -> Result<SymTensor> {
    let f = std::fs::File::open(path)?;
    from_reader(std::io::BufReader::new(f))
}

pub fn to_string(t: &SymTensor) -> String {
    serde_json::to_string_pretty(&TensorFile::from_tensor(t)).expect("tensor serializes")
}

pub fn to_writer<W: Write>(t: &SymTensor, mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, &TensorFile::from_tensor(t))?;
    writeln!(w)?;
    Ok(())
}
