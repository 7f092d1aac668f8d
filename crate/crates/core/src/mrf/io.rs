//! JSON model file: `{"n", "arities", "r", "tensors": [{"vertices", "shape", "values"}]}`.
//!
//! Values are written in scientific notation with 17 significant digits,
//! which round-trips every `f64` exactly.

use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use super::field::MarkovRandomField;
use super::tensor::CliqueTensor;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct TensorRecord {
    vertices: Vec<usize>,
    shape: Vec<usize>,
    #[serde(serialize_with = "precise_values")]
    values: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelRecord {
    n: usize,
    arities: Vec<usize>,
    r: usize,
    tensors: Vec<TensorRecord>,
}

fn precise_values<S: Serializer>(values: &[f64], ser: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::{Error as _, SerializeSeq};
    let mut seq = ser.serialize_seq(Some(values.len()))?;
    for v in values {
        let raw = RawValue::from_string(format!("{v:.16e}")).map_err(S::Error::custom)?;
        seq.serialize_element(&raw)?;
    }
    seq.end()
}

impl MarkovRandomField {
    pub fn to_json(&self) -> Result<String> {
        let record = ModelRecord {
            n: self.n(),
            arities: self.arities().to_vec(),
            r: self.order(),
            tensors: self
                .tensors()
                .iter()
                .map(|t| TensorRecord {
                    vertices: t.vertices().to_vec(),
                    shape: t.shape().to_vec(),
                    values: t.values().to_vec(),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&record)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: ModelRecord = serde_json::from_str(text)?;
        if record.n != record.arities.len() {
            return Err(Error::Parse(format!(
                "n = {} but {} arities given",
                record.n,
                record.arities.len()
            )));
        }
        let tensors = record
            .tensors
            .into_iter()
            .map(|t| CliqueTensor::new(t.vertices, t.shape, t.values))
            .collect::<Result<Vec<_>>>()?;
        Self::new(record.arities, record.r, tensors)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let t = CliqueTensor::new(
            vec![0, 2],
            vec![2, 3],
            vec![0.1, -1.0 / 3.0, 2.0e-17, 5.0, -0.0, std::f64::consts::PI],
        )
        .unwrap();
        let u = CliqueTensor::new(vec![1], vec![2], vec![0.5, -0.5]).unwrap();
        let m = MarkovRandomField::new(vec![2, 2, 3], 2, vec![t, u]).unwrap();
        let text = m.to_json().unwrap();
        assert!(text.contains("-3.3333333333333331e-1"));
        let back = MarkovRandomField::from_json(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn rejects_inconsistent_n() {
        let text = r#"{"n": 3, "arities": [2, 2], "r": 2, "tensors": []}"#;
        assert!(MarkovRandomField::from_json(text).is_err());
    }
}
