//! The "ymd-1" JSON document for field configurations, and loose matrix input.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use ymd_core::algebra::{Potential, Spinor, C64};
use ymd_core::classifier::{ParamValue, Params};
use ymd_core::fields::FieldConfiguration;

use crate::CliError;

pub const SCHEMA_VERSION: &str = "ymd-1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationDocument {
    pub schema_version: String,
    /// Ψ as 4 rows of 2 [re, im] pairs.
    pub psi: [[[f64; 2]; 2]; 4],
    /// A^μ_a as 4 rows of 3 reals.
    pub potential: [[f64; 3]; 4],
    pub mass: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row: Option<u8>,
    /// Real parameters as numbers, complex ones as [re, im].
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, Value>,
}

impl ConfigurationDocument {
    pub fn from_configuration(cfg: &FieldConfiguration, metadata: Option<Metadata>) -> Self {
        ConfigurationDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            psi: std::array::from_fn(|r| std::array::from_fn(|q| [cfg.psi[(r, q)].re, cfg.psi[(r, q)].im])),
            potential: std::array::from_fn(|r| std::array::from_fn(|a| cfg.potential[(r, a)])),
            mass: cfg.mass,
            metadata,
        }
    }

    pub fn configuration(&self) -> Result<FieldConfiguration, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!("unsupported schema_version `{}` (expected `{SCHEMA_VERSION}`)", self.schema_version)));
        }
        let psi = Spinor::from_fn(|r, q| C64::new(self.psi[r][q][0], self.psi[r][q][1]));
        let potential = Potential::from_fn(|r, a| self.potential[r][a]);
        FieldConfiguration::new(psi, potential, self.mass).map_err(CliError::from)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed document: {e}")))?;
        doc.configuration()?;
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::parse(&read(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents hold only finite numbers")
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn param_to_json(v: &ParamValue) -> Value {
    match v {
        ParamValue::Real(x) => Value::from(*x),
        ParamValue::Complex(z) => Value::from(vec![z.re, z.im]),
    }
}

pub fn params_to_json(p: &Params) -> BTreeMap<String, Value> {
    p.iter().map(|(k, v)| (k.clone(), param_to_json(v))).collect()
}

/// Matrix read by the hsvd command.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixInput {
    Real(DMatrix<f64>),
    Complex(DMatrix<C64>),
}

/// Accepts a bare array of rows (numbers, or [re, im] pairs), an object
/// with a `matrix` field of that shape, or a configuration document. For a
/// document, `prefer_psi` picks Ψ over A.
pub fn parse_matrix(text: &str, prefer_psi: bool) -> Result<MatrixInput, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    if value.get("schema_version").is_some() {
        let cfg = ConfigurationDocument::parse(text)?.configuration()?;
        return Ok(if prefer_psi {
            MatrixInput::Complex(DMatrix::from_fn(4, 2, |i, j| cfg.psi[(i, j)]))
        } else {
            MatrixInput::Real(DMatrix::from_fn(4, 3, |i, j| cfg.potential[(i, j)]))
        });
    }
    let rows = value.get("matrix").unwrap_or(&value);
    let rows = rows.as_array().filter(|r| !r.is_empty()).ok_or_else(|| CliError::Input("expected a non-empty array of rows".into()))?;
    let cells: Vec<&Vec<Value>> = rows.iter().map(|r| r.as_array().ok_or_else(|| CliError::Input("each row must be an array".into()))).collect::<Result<_, _>>()?;
    let ncols = cells[0].len();
    if ncols == 0 || cells.iter().any(|r| r.len() != ncols) {
        return Err(CliError::Input("rows must be non-empty and of equal length".into()));
    }
    let number = |v: &Value| v.as_f64().filter(|x| x.is_finite()).ok_or_else(|| CliError::Input(format!("expected a finite number, got {v}")));
    if cells[0][0].is_array() {
        let mut m = DMatrix::zeros(cells.len(), ncols);
        for (i, row) in cells.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let pair = v.as_array().filter(|p| p.len() == 2).ok_or_else(|| CliError::Input(format!("expected an [re, im] pair, got {v}")))?;
                m[(i, j)] = C64::new(number(&pair[0])?, number(&pair[1])?);
            }
        }
        Ok(MatrixInput::Complex(m))
    } else {
        let mut m = DMatrix::zeros(cells.len(), ncols);
        for (i, row) in cells.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = number(v)?;
            }
        }
        Ok(MatrixInput::Real(m))
    }
}

pub fn real_json(m: &DMatrix<f64>) -> Value {
    Value::from((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn complex_json(m: &DMatrix<C64>) -> Value {
    Value::from((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| vec![m[(i, j)].re, m[(i, j)].im]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ConfigurationDocument {
        let mut psi = Spinor::zeros();
        psi[(2, 1)] = C64::new(0.1 + 0.2, -1.0 / 3.0);
        let potential = Potential::from_fn(|r, a| (r * 3 + a) as f64 * std::f64::consts::PI);
        let cfg = FieldConfiguration::new(psi, potential, 2.0f64.sqrt()).unwrap();
        let meta = Metadata { seed: Some(7), row: Some(2), parameters: params_to_json(&[("m".to_string(), ParamValue::Real(1.0))].into_iter().collect()) };
        ConfigurationDocument::from_configuration(&cfg, Some(meta))
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let doc = sample();
        let back = ConfigurationDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let (a, b) = (doc.configuration().unwrap(), back.configuration().unwrap());
        assert!(a.psi.iter().zip(b.psi.iter()).all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()));
        assert!(a.potential.iter().zip(b.potential.iter()).all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn rejects_bad_documents() {
        let mut doc = sample();
        doc.schema_version = "ymd-0".into();
        assert!(ConfigurationDocument::parse(&doc.to_json()).is_err());
        let text = sample().to_json().replacen("\"mass\"", "\"extra\": 1, \"mass\"", 1);
        assert!(ConfigurationDocument::parse(&text).is_err());
        let short = r#"{"schema_version":"ymd-1","psi":[[[0,0],[0,0]]],"potential":[[0,0,0],[0,0,0],[0,0,0],[0,0,0]],"mass":0}"#;
        assert!(ConfigurationDocument::parse(short).is_err());
        let negative = r#"{"schema_version":"ymd-1","psi":[[[0,0],[0,0]],[[0,0],[0,0]],[[0,0],[0,0]],[[0,0],[0,0]]],"potential":[[0,0,0],[0,0,0],[0,0,0],[0,0,0]],"mass":-1}"#;
        assert!(ConfigurationDocument::parse(negative).is_err());
        assert!(ConfigurationDocument::parse("{").is_err());
    }

    #[test]
    fn matrix_forms() {
        assert_eq!(parse_matrix("[[1, 2], [3, 4]]", false).unwrap(), MatrixInput::Real(DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0])));
        let m = parse_matrix(r#"{"matrix": [[[1, 2]], [[0, -1]]]}"#, false).unwrap();
        assert_eq!(m, MatrixInput::Complex(DMatrix::from_row_slice(2, 1, &[C64::new(1.0, 2.0), C64::new(0.0, -1.0)])));
        assert!(parse_matrix("[[1, 2], [3]]", false).is_err());
        assert!(parse_matrix("[]", false).is_err());
        assert!(parse_matrix("[[1, [0, 1]]]", false).is_err());
        let doc = sample().to_json();
        assert!(matches!(parse_matrix(&doc, true).unwrap(), MatrixInput::Complex(m) if m.shape() == (4, 2)));
        assert!(matches!(parse_matrix(&doc, false).unwrap(), MatrixInput::Real(m) if m.shape() == (4, 3)));
    }
}
