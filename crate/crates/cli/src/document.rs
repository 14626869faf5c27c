//! JSON tensor documents:
//! `{"shape":[3,2,3,2],"row_modes":2,"data":[[re,im],...]}` with entries in
//! row-major order.

use num_complex::Complex64;
use numrange_core::{Error as CoreError, Tensor64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDocument {
    pub shape: Vec<usize>,
    pub row_modes: usize,
    pub data: Vec<[f64; 2]>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

impl TensorDocument {
    pub fn from_tensor(t: &Tensor64) -> Self {
        TensorDocument {
            shape: t.shape().to_vec(),
            row_modes: t.row_modes(),
            data: t.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<Tensor64, DocumentError> {
        let data: Vec<Complex64> = self.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Tensor64::new(self.shape.clone(), self.row_modes, data).map_err(|e| {
            let (field, message) = match &e {
                CoreError::LengthMismatch { .. } => ("data".to_string(), e.to_string()),
                CoreError::NonFinite { position } => (format!("data[{position}]"), e.to_string()),
                CoreError::ZeroExtent { mode } => (format!("shape[{mode}]"), e.to_string()),
                CoreError::InvalidPartition { .. } => ("row_modes".to_string(), e.to_string()),
                _ => ("document".to_string(), e.to_string()),
            };
            DocumentError::Field { field, message }
        })
    }
}

pub fn parse_document(text: &str) -> Result<TensorDocument, DocumentError> {
    serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

pub fn parse_tensor(text: &str) -> Result<Tensor64, DocumentError> {
    parse_document(text)?.to_tensor()
}

/// Canonical text: compact JSON with shortest round-trip floats and a
/// trailing newline.
pub fn serialize_document(doc: &TensorDocument) -> String {
    let mut s = serde_json::to_string(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn serialize_tensor(t: &Tensor64) -> String {
    serialize_document(&TensorDocument::from_tensor(t))
}

// serde_json appends " at line L column C", which is reported separately
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(k) => msg[..k].to_string(),
        None => msg.to_string(),
    }
}
