//! JSON matrix files: `{"n", "complex", "data_re", "data_im"?}`.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, HermitianMatrix, PositiveDefiniteMatrix, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub complex: bool,
    pub data_re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data_im: Option<Vec<Vec<f64>>>,
}

fn rows_of(m: &CMatrix, f: impl Fn(C64) -> f64) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(m[(i, j)])).collect()).collect()
}

fn check_shape(rows: &[Vec<f64>], n: usize, name: &str) -> Result<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameter(format!("{name} must be a {n}x{n} array")));
    }
    if rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

impl MatrixFile {
    /// Real matrices omit `data_im`.
    pub fn from_matrix(m: &CMatrix) -> Self {
        let complex = m.iter().any(|z| z.im != 0.0);
        MatrixFile {
            n: m.nrows(),
            complex,
            data_re: rows_of(m, |z| z.re),
            data_im: complex.then(|| rows_of(m, |z| z.im)),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        check_shape(&self.data_re, self.n, "data_re")?;
        match (&self.data_im, self.complex) {
            (Some(_), false) => return Err(Error::InvalidParameter("data_im present but complex is false".into())),
            (None, true) => return Err(Error::InvalidParameter("complex is true but data_im is missing".into())),
            (Some(im), true) => check_shape(im, self.n, "data_im")?,
            (None, false) => {}
        }
        let n = self.n;
        Ok(DMatrix::from_fn(n, n, |i, j| {
            C64::new(self.data_re[i][j], self.data_im.as_ref().map_or(0.0, |im| im[i][j]))
        }))
    }

    pub fn hermitian(&self) -> Result<HermitianMatrix> {
        HermitianMatrix::new(self.to_matrix()?)
    }

    pub fn positive_definite(&self) -> Result<PositiveDefiniteMatrix> {
        PositiveDefiniteMatrix::new(self.hermitian()?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("malformed matrix file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))
    }
}
