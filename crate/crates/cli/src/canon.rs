//! Canonical JSON emission.
//!
//! Reports must hash identically across runs and platforms, so the emitter
//! fixes everything the generic serializer leaves open: object keys are
//! sorted, there is no insignificant whitespace, and every float goes
//! through one 17-significant-digit grammar. Emitting, parsing, and
//! emitting again is a fixpoint; note that a float with an integral value
//! prints without a fractional part ("2", not "2.0") and reparses as an
//! integer, which is the intended canonical form of that value.

use serde_json::Value;
use std::collections::BTreeMap;

/// Renders a double with up to 17 significant digits, trailing zeros
/// trimmed, switching to scientific notation when the decimal exponent is
/// below -5 or at 17 and above (printf %.17g behaviour). Zero of either
/// sign prints as "0"; non-finite values print as "inf", "-inf", "nan"
/// (callers quote them, JSON has no number form for those).
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("exponent digits");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if neg { "-" } else { "" };

    if exp < -4 || exp >= 17 {
        let mut out = format!("{}{}", sign, &digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&format!("{:+03}", exp));
        out
    } else if exp < 0 {
        let mut out = format!("{}0.", sign);
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(digits);
        out
    } else {
        let point = exp as usize + 1;
        if digits.len() <= point {
            let mut out = format!("{}{}", sign, digits);
            for _ in 0..point - digits.len() {
                out.push('0');
            }
            out
        } else {
            format!("{}{}.{}", sign, &digits[..point], &digits[point..])
        }
    }
}

/// A double as a JSON value. Finite values become numbers; infinities and
/// NaN have no JSON number form and become the strings "inf", "-inf",
/// "nan" so a report can still carry them.
pub fn json_f64(x: f64) -> Value {
    match serde_json::Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None => Value::String(fmt_g17(x)),
    }
}

/// Serializes a value to canonical bytes: sorted keys, compact separators,
/// floats through [`fmt_g17`].
pub fn canonical_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, &mut out);
    out
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(true) => out.push_str("true"),
        Value::Bool(false) => out.push_str("false"),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else {
                out.push_str(&fmt_g17(n.as_f64().expect("number is u64, i64, or f64")));
            }
        }
        Value::String(s) => write_string(s, out),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let sorted: BTreeMap<&String, &Value> = map.iter().collect();
            out.push('{');
            for (i, (k, val)) in sorted.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_string(k, out);
                out.push(':');
                write_value(val, out);
            }
            out.push('}');
        }
    }
}

fn write_string(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{08}' => out.push_str("\\b"),
            '\u{0c}' => out.push_str("\\f"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
}
