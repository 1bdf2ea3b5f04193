//! JSON state files: `{"dims": [d1, d2, ...], "matrix": [[re, im], ...]}`,
//! row-major, `(Π dims)²` entries.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use quditmap_core::{Complex64, ComplexMatrix, DensityMatrix};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub matrix: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        StateFile {
            dims: rho.dims().to_vec(),
            matrix: rho
                .matrix()
                .as_slice()
                .iter()
                .map(|z| [z.re, z.im])
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("state file is not valid JSON of the form {\"dims\": [...], \"matrix\": [[re, im], ...]}")
    }

    pub fn into_density(self) -> Result<DensityMatrix> {
        if self.dims.is_empty() {
            bail!("dims: at least one subsystem is required");
        }
        if let Some(d) = self.dims.iter().find(|&&d| d < 2) {
            bail!("dims: every subsystem needs dimension at least 2, found {d}");
        }
        let n: usize = self.dims.iter().product();
        if self.matrix.len() != n * n {
            bail!(
                "matrix: expected {} entries for dims {:?}, found {}",
                n * n,
                self.dims,
                self.matrix.len()
            );
        }
        let data = self
            .matrix
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let m = ComplexMatrix::from_vec(n, n, data).context("matrix")?;
        DensityMatrix::new(m, self.dims).context("matrix is not a valid density matrix")
    }
}

pub fn read_state(path: &Path) -> Result<DensityMatrix> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    StateFile::parse(&text)?.into_density()
}

pub fn write_state(path: &Path, rho: &DensityMatrix) -> Result<()> {
    let text = serde_json::to_string(&StateFile::from_density(rho))?;
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}
