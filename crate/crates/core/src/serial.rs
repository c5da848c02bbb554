//! Fixed-width float serialization for JSON reports.
//!
//! Every float goes out with 17 significant digits so that identical runs
//! produce byte-identical documents. Non-finite values become `null`.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

pub(crate) fn format_sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

pub(crate) fn f64_sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(format_sig17(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

pub(crate) fn slice_sig17<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        let raw = RawValue::from_string(format_sig17(*x)).map_err(serde::ser::Error::custom)?;
        seq.serialize_element(&raw)?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_sig17(1.0), "1.0000000000000000e0");
        assert_eq!(format_sig17(f64::NAN), "null");
        let back: f64 = format_sig17(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }
}
