//! JSON encoding of reals with 17 significant digits.
//!
//! Non-finite values are written as `null`.

use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::value::RawValue;

pub fn to_text(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn raw(x: f64) -> Box<RawValue> {
    RawValue::from_string(to_text(x)).expect("formatted float is valid JSON")
}

pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(*x).serialize(s)
}

pub fn serialize_slice<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&raw(*x))?;
    }
    seq.end()
}

pub fn serialize_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&raw(*v)),
        None => s.serialize_none(),
    }
}
