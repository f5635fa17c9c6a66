//! JSON state documents.
//!
//! ```json
//! { "n": 2, "field": "exact", "amplitudes": ["1/2", "0", "0", "1/2+i"] }
//! { "n": 2, "field": "float", "amplitudes": [[0.5, 0.0], [0, 0], [0, 0], [0.5, 1.0]] }
//! { "n": 4, "field": "exact", "amplitudes": [{ "index": 6, "value": "1" }] }
//! ```
//!
//! Exact entries are strings such as `"p/q+r/s i"` (a factor `sqrt2` is also
//! accepted) or JSON integers; float entries are `[re, im]` pairs or plain
//! numbers. The sparse form lists `{index, value}` objects and leaves every
//! other amplitude zero.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{Exact, Scalar};
use crate::state::PureState;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    #[default]
    Exact,
    Float,
}

/// A state in whichever field its document declared.
#[derive(Clone, PartialEq, Debug)]
pub enum AnyState {
    Exact(PureState<Exact>),
    Float(PureState<Complex64>),
}

impl AnyState {
    pub fn qubits(&self) -> usize {
        match self {
            AnyState::Exact(s) => s.qubits(),
            AnyState::Float(s) => s.qubits(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            AnyState::Exact(_) => Field::Exact,
            AnyState::Float(_) => Field::Float,
        }
    }

    /// Float view of the state (exact states are rounded).
    pub fn to_float(&self) -> PureState<Complex64> {
        match self {
            AnyState::Exact(s) => s.map(|a| a.to_c64()),
            AnyState::Float(s) => s.clone(),
        }
    }
}

#[derive(Deserialize)]
struct RawDocument {
    n: usize,
    #[serde(default)]
    field: Field,
    amplitudes: Vec<Value>,
}

#[derive(Serialize)]
struct CanonicalDocument<A> {
    n: usize,
    field: Field,
    amplitudes: Vec<A>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn exact_entry(v: &Value) -> Result<Exact> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(num) => match num.as_i64() {
            Some(i) => Ok(Exact::from_i64(i)),
            None => num.to_string().parse(),
        },
        other => Err(Error::MalformedScalar(other.to_string())),
    }
}

fn float_entry(v: &Value) -> Result<Complex64> {
    let num = |x: &Value| {
        x.as_f64()
            .ok_or_else(|| doc_err(format!("expected a number, got {x}")))
    };
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(num(&pair[0])?, num(&pair[1])?)),
        Value::Number(_) => Ok(Complex64::new(num(v)?, 0.0)),
        other => Err(doc_err(format!("expected [re, im], got {other}"))),
    }
}

fn collect<F: Scalar>(
    n: usize,
    raw: &[Value],
    entry: impl Fn(&Value) -> Result<F>,
) -> Result<PureState<F>> {
    if n < 2 {
        return Err(Error::TooFewQubits(n));
    }
    if n > 24 {
        return Err(doc_err(format!("{n} qubits is beyond the supported size")));
    }
    let sparse = !raw.is_empty() && raw.iter().all(|v| v.is_object());
    if !sparse {
        let amps = raw.iter().map(&entry).collect::<Result<Vec<_>>>()?;
        return PureState::new(n, amps);
    }
    let mut pairs = Vec::with_capacity(raw.len());
    for v in raw {
        let index = v
            .get("index")
            .and_then(Value::as_u64)
            .ok_or_else(|| doc_err("sparse entry without integer index"))? as usize;
        let value = v
            .get("value")
            .ok_or_else(|| doc_err("sparse entry without value"))?;
        pairs.push((index, entry(value)?));
    }
    PureState::from_sparse(n, pairs)
}

/// Parses a state document.
pub fn parse_state(text: &str) -> Result<AnyState> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| doc_err(e.to_string()))?;
    match raw.field {
        Field::Exact => collect(raw.n, &raw.amplitudes, exact_entry).map(AnyState::Exact),
        Field::Float => collect(raw.n, &raw.amplitudes, float_entry).map(AnyState::Float),
    }
}

/// Canonical dense document for a state.
pub fn to_document(state: &AnyState) -> String {
    let text = match state {
        AnyState::Exact(s) => serde_json::to_string_pretty(&CanonicalDocument {
            n: s.qubits(),
            field: Field::Exact,
            amplitudes: s.amplitudes().iter().map(|a| a.to_string()).collect(),
        }),
        AnyState::Float(s) => serde_json::to_string_pretty(&CanonicalDocument {
            n: s.qubits(),
            field: Field::Float,
            amplitudes: s.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }),
    };
    text.expect("state documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(text: &str) -> PureState<Exact> {
        match parse_state(text).unwrap() {
            AnyState::Exact(s) => s,
            AnyState::Float(_) => panic!("expected exact"),
        }
    }

    #[test]
    fn dense_integers() {
        let s = exact(r#"{"n": 2, "amplitudes": [1, 0, 0, 1]}"#);
        assert_eq!(s.amplitude(0), &Exact::one());
        assert_eq!(s.amplitude(3), &Exact::one());
        assert!(s.amplitude(1).is_zero());
    }

    #[test]
    fn sparse_appendix_xi() {
        let doc = r#"{"n": 4, "field": "exact", "amplitudes": [
            {"index": 0, "value": "1/2"}, {"index": 3, "value": "1/2"},
            {"index": 12, "value": "1/2"}, {"index": 15, "value": "1/2"},
            {"index": 1, "value": "i"}, {"index": 13, "value": "-i"},
            {"index": 10, "value": "1"}]}"#;
        let s = exact(doc);
        let half = Exact::from_ratio(1, 2);
        for i in [0, 3, 12, 15] {
            assert_eq!(s.amplitude(i), &half);
        }
        assert_eq!(s.amplitude(1), &Exact::imag_unit());
        assert_eq!(s.amplitude(13), &-Exact::imag_unit());
        assert_eq!(s.amplitude(10), &Exact::one());
        assert_eq!(s.amplitudes().iter().filter(|a| !a.is_zero()).count(), 7);
    }

    #[test]
    fn errors() {
        let seven = r#"{"n": 3, "amplitudes": ["1","0","0","0","0","0","0"]}"#;
        assert!(matches!(parse_state(seven), Err(Error::LengthMismatch { .. })));
        let zero = r#"{"n": 2, "amplitudes": ["0","0","0","0"]}"#;
        assert_eq!(parse_state(zero).unwrap_err(), Error::ZeroState);
        let bad = r#"{"n": 2, "amplitudes": ["1/0","0","0","0"]}"#;
        assert!(matches!(parse_state(bad), Err(Error::MalformedScalar(_))));
        assert!(parse_state("{").is_err());
    }

    #[test]
    fn float_document() {
        let s = parse_state(r#"{"n": 2, "field": "float", "amplitudes": [[0.5, 0], 0, 0, [0, -1.25]]}"#)
            .unwrap();
        let f = s.to_float();
        assert_eq!(f.amplitude(3), &Complex64::new(0.0, -1.25));
        assert_eq!(parse_state(&to_document(&s)).unwrap(), s);
    }
}
