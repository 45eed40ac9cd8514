//! Fixed-precision real formatting shared by every JSON and CSV writer.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// Formats a real with 17 significant digits.
///
/// Finite values use scientific notation (`1.2345678901234567e-3`), which is
/// valid both as a JSON number and as a CSV field. Non-finite values become
/// `inf`, `-inf` or `nan`.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else {
        format!("{x:.16e}")
    }
}

/// A real that serializes through [`fmt_real`]; non-finite values become
/// JSON strings since JSON numbers cannot carry them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(fmt_real(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(serializer)
        } else {
            serializer.serialize_str(&fmt_real(self.0))
        }
    }
}

pub(crate) fn serialize_real<S: Serializer>(x: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    Real(*x).serialize(serializer)
}
