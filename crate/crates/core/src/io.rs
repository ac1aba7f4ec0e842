//! The JSON code file format.
//!
//! ```json
//! {"field":{"p":2,"e":1},"n":2,"m":2,"basis":[[[1,0],[0,0]],[[0,1],[0,0]]]}
//! ```
//!
//! Matrices are lists of rows of element indices. Written files hold the
//! canonical basis in compact form with a trailing newline, so writing,
//! reading and writing again gives identical bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::codes::RankMetricCode;
use crate::error::{Error, Result};
use crate::field::{FieldDescription, FieldSpec};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub field: FieldDescription,
    pub n: usize,
    pub m: usize,
    pub basis: Vec<Vec<Vec<u32>>>,
}

impl CodeFile {
    pub fn from_code(code: &RankMetricCode) -> CodeFile {
        CodeFile {
            field: code.field().description(),
            n: code.n(),
            m: code.m(),
            basis: code.basis_matrices().iter().map(Matrix::to_index_rows).collect(),
        }
    }

    pub fn to_code(&self) -> Result<RankMetricCode> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::Format("n and m must be positive".into()));
        }
        let field = FieldSpec::from_description(&self.field)?.into_shared();
        let mats = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                if rows.len() != self.n || rows.iter().any(|r| r.len() != self.m) {
                    return Err(Error::Format(format!("basis matrix {i} is not {}x{}", self.n, self.m)));
                }
                Matrix::from_rows(&field, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        RankMetricCode::from_matrices(&field, self.n, self.m, &mats)
    }
}

pub fn code_to_json(code: &RankMetricCode) -> String {
    let mut s = serde_json::to_string(&CodeFile::from_code(code)).expect("serializable");
    s.push('\n');
    s
}

pub fn code_from_json(text: &str) -> Result<RankMetricCode> {
    let file: CodeFile = serde_json::from_str(text)?;
    file.to_code()
}

pub fn read_code_file(path: impl AsRef<Path>) -> Result<RankMetricCode> {
    code_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_code_file(path: impl AsRef<Path>, code: &RankMetricCode) -> Result<()> {
    std::fs::write(path, code_to_json(code))?;
    Ok(())
}
