//! JSON encoding shared by the command line and the browser demo.
//!
//! Integers become JSON numbers when they fit in 64 bits and decimal strings
//! otherwise; rationals are always `"p/q"` strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::chow::ChowClass;
use crate::Rational;

pub fn integer(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn rational(x: &Rational) -> Value {
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

/// `[{"exponents": [...], "coeff": "p/q"}, ...]` in exponent order.
pub fn chow_class(c: &ChowClass) -> Value {
    Value::Array(
        c.terms()
            .map(|(exps, coeff)| json!({ "exponents": exps, "coeff": rational(coeff) }))
            .collect(),
    )
}

/// The `{"command", "inputs", "result"}` envelope. Keys serialize sorted.
pub fn envelope(command: &str, inputs: Map<String, Value>, result: Value) -> Value {
    json!({ "command": command, "inputs": inputs, "result": result })
}
