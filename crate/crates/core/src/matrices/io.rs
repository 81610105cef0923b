// SPDX-License-Identifier: Apache-2.0

//! Matrix JSON format.
//!
//! ```json
//! {"n": 2, "entries": [[1, 0], [0, 1], [0, -1], [1, 0]],
//!  "gram_factor": {"r": 1, "n": 2, "entries": [[1, 0], [0, 1]]},
//!  "exact": true}
//! ```
//!
//! `entries` is row-major with one `[re, im]` pair per entry. Exact
//! matrices are written as integer pairs, everything else with 17
//! significant digits.

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use super::{CMatrix, HermitianMatrix, PsdMatrix};
use crate::error::{Error, Result};

/// Formats with 17 significant digits (`-1.2345678901234567e3`).
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

/// `f64` that serializes as a 17-significant-digit JSON number
/// (or `null` when not finite).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F17(pub f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format_f64(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

/// One real or imaginary part: integer for exact matrices, float otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum JsonNumber {
    Int(i64),
    Float(f64),
}

impl Serialize for JsonNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            JsonNumber::Int(v) => s.serialize_i64(v),
            JsonNumber::Float(v) => F17(v).serialize(s),
        }
    }
}

impl JsonNumber {
    fn value(self) -> f64 {
        match self {
            JsonNumber::Int(v) => v as f64,
            JsonNumber::Float(v) => v,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GramJson {
    pub r: usize,
    pub n: usize,
    pub entries: Vec<[JsonNumber; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<[JsonNumber; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram_factor: Option<GramJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
}

fn parse_entries(entries: &[[JsonNumber; 2]], rows: usize, cols: usize) -> Result<CMatrix> {
    if entries.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {} entries for a {rows}x{cols} matrix, found {}",
            rows * cols,
            entries.len()
        )));
    }
    let data = entries
        .iter()
        .map(|[re, im]| Complex64::new(re.value(), im.value()))
        .collect();
    CMatrix::from_vec(rows, cols, data)
}

fn encode_entries(m: &CMatrix) -> Vec<[JsonNumber; 2]> {
    match m.exact_entries() {
        Some(e) => e.iter().map(|z| [JsonNumber::Int(z.re), JsonNumber::Int(z.im)]).collect(),
        None => m.data().iter().map(|z| [JsonNumber::Float(z.re), JsonNumber::Float(z.im)]).collect(),
    }
}

impl MatrixJson {
    pub fn parse(text: &str) -> Result<MatrixJson> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_matrix(m: &CMatrix) -> Result<MatrixJson> {
        let n = m.require_square()?;
        Ok(MatrixJson { n, entries: encode_entries(m), gram_factor: None, exact: Some(m.is_exact()) })
    }

    pub fn from_psd(a: &PsdMatrix) -> MatrixJson {
        let mut out = MatrixJson::from_matrix(a.matrix()).expect("square");
        out.gram_factor = a.gram_factor().map(|w| GramJson { r: w.rows(), n: w.cols(), entries: encode_entries(w) });
        out
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let m = parse_entries(&self.entries, self.n, self.n)?;
        if self.exact == Some(true) && !m.is_exact() {
            return Err(Error::Parse("marked exact but entries are not Gaussian integers".into()));
        }
        if self.exact == Some(false) {
            return CMatrix::from_vec_float(self.n, self.n, m.data().to_vec());
        }
        Ok(m)
    }

    pub fn gram(&self) -> Result<Option<CMatrix>> {
        self.gram_factor
            .as_ref()
            .map(|g| {
                if g.n != self.n {
                    return Err(Error::Parse(format!("gram_factor has n = {} but matrix has n = {}", g.n, self.n)));
                }
                parse_entries(&g.entries, g.r, g.n)
            })
            .transpose()
    }

    pub fn to_hermitian(&self) -> Result<HermitianMatrix> {
        HermitianMatrix::new(self.to_matrix()?)
    }

    /// PSD matrix, certified by the Gram factor when one is given and by
    /// the spectrum otherwise.
    pub fn to_psd(&self) -> Result<PsdMatrix> {
        let h = self.to_hermitian()?;
        match self.gram()? {
            Some(w) => PsdMatrix::with_gram(h, &w),
            None => PsdMatrix::from_hermitian(h),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}
