//! Compact textual forms for weights and alpha sequences.
//!
//! ```text
//! weight := "unit" | "linear" | "pow:" num | "geometric:" num "@" alpha
//!         | "table:" num ("," num)* ";L=" num ";L1=" num [";N=" num]
//! alpha  := "log" | "affine:" num "," num | "table:" num ("," num)* ";l=" num
//! num    := a decimal float, or "e"
//! ```
//!
//! Keys after the first `;` may come in any order.

use crate::error::{Error, Result};
use crate::weights::{AlphaSequence, WeightFamily};

fn bad(what: &str, input: &str) -> Error {
    Error::Parse(format!("{what} in {input:?}"))
}

fn number(token: &str, input: &str) -> Result<f64> {
    let t = token.trim();
    if t == "e" {
        return Ok(std::f64::consts::E);
    }
    let x: f64 = t
        .parse()
        .map_err(|_| bad(&format!("expected a number, found {t:?}"), input))?;
    if !x.is_finite() {
        return Err(bad("numbers must be finite", input));
    }
    Ok(x)
}

fn list(body: &str, input: &str) -> Result<Vec<f64>> {
    body.split(',').map(|t| number(t, input)).collect()
}

/// Splits `values;key=x;key=y` into the value list and the key map.
type TableParts<'a> = (Vec<f64>, Vec<(&'a str, f64)>);

fn table_parts<'a>(body: &'a str, input: &str, keys: &[&str]) -> Result<TableParts<'a>> {
    let mut parts = body.split(';');
    let values = list(parts.next().unwrap_or(""), input)?;
    let mut found = Vec::new();
    for part in parts {
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| bad(&format!("expected key=value, found {part:?}"), input))?;
        let key = key.trim();
        if !keys.contains(&key) {
            return Err(bad(&format!("unknown key {key:?}"), input));
        }
        if found.iter().any(|(k, _)| *k == key) {
            return Err(bad(&format!("duplicate key {key:?}"), input));
        }
        found.push((key, number(val, input)?));
    }
    Ok((values, found))
}

fn lookup(found: &[(&str, f64)], key: &str) -> Option<f64> {
    found.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

pub fn parse_alpha_spec(input: &str) -> Result<AlphaSequence> {
    let text = input.trim();
    if text == "log" {
        return Ok(AlphaSequence::LogShift);
    }
    if let Some(body) = text.strip_prefix("affine:") {
        let v = list(body, input)?;
        let [slope, offset] = v[..] else {
            return Err(bad("affine needs exactly slope,offset", input));
        };
        return AlphaSequence::affine(slope, offset);
    }
    if let Some(body) = text.strip_prefix("table:") {
        let (values, found) = table_parts(body, input, &["l"])?;
        let l = lookup(&found, "l").ok_or_else(|| bad("alpha table needs ;l=", input))?;
        return AlphaSequence::table(values, l);
    }
    Err(bad("unknown alpha form", input))
}

pub fn parse_weight_spec(input: &str) -> Result<WeightFamily> {
    let text = input.trim();
    match text {
        "unit" => return Ok(WeightFamily::Unit),
        "linear" => return Ok(WeightFamily::linear()),
        _ => {}
    }
    if let Some(body) = text.strip_prefix("pow:") {
        return WeightFamily::power(number(body, input)?);
    }
    if let Some(body) = text.strip_prefix("geometric:") {
        let (base, alpha) = body
            .split_once('@')
            .ok_or_else(|| bad("geometric needs base@alpha", input))?;
        return WeightFamily::geometric(number(base, input)?, parse_alpha_spec(alpha)?);
    }
    if let Some(body) = text.strip_prefix("table:") {
        let (values, found) = table_parts(body, input, &["N", "L", "L1"])?;
        let l = lookup(&found, "L").ok_or_else(|| bad("weight table needs ;L=", input))?;
        let l1 = lookup(&found, "L1").ok_or_else(|| bad("weight table needs ;L1=", input))?;
        return WeightFamily::table(values, lookup(&found, "N"), l, l1);
    }
    Err(bad("unknown weight form", input))
}
