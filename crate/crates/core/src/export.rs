//! JSON and DOT renderings, decimal rendering of exact rationals, and the
//! JSON graph loader.

use std::fmt::{self, Write as _};
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{GradedGraph, Label, RawGraph};

/// A label read from JSON, compared by its compact text.
#[derive(Clone)]
pub struct JsonLabel {
    value: serde_json::Value,
    key: String,
}

impl JsonLabel {
    pub fn new(value: serde_json::Value) -> Self {
        let key = value.to_string();
        JsonLabel { value, key }
    }

    pub fn value(&self) -> &serde_json::Value {
        &self.value
    }
}

impl PartialEq for JsonLabel {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for JsonLabel {}

impl Hash for JsonLabel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl fmt::Debug for JsonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

impl fmt::Display for JsonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

impl Serialize for JsonLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.value.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JsonLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        serde_json::Value::deserialize(deserializer).map(JsonLabel::new)
    }
}

/// Parses and validates a graph in the JSON graph format.
pub fn load_json_graph(text: &str) -> Result<GradedGraph<JsonLabel>> {
    let raw: RawGraph<JsonLabel> = serde_json::from_str(text)?;
    GradedGraph::from_raw(raw)
}

pub fn graph_to_json<L: Label>(graph: &GradedGraph<L>) -> Result<String> {
    Ok(serde_json::to_string(&graph.to_raw())?)
}

/// DOT digraph of levels `from..=to`, one rank per level.
pub fn graph_to_dot<L: Label>(graph: &GradedGraph<L>, from: usize, to: usize) -> Result<String> {
    graph.check_level(to)?;
    if from > to {
        return Err(Error::domain(format!("empty level range {from}..={to}")));
    }
    let mut out = String::new();
    let name = graph.family().replace(|c: char| !c.is_ascii_alphanumeric(), "_");
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for k in from..=to {
        write!(out, "  {{ rank=same;").unwrap();
        for v in graph.vertices(k) {
            write!(out, " v{}_{};", k, v.index).unwrap();
        }
        writeln!(out, " }}").unwrap();
        for v in graph.vertices(k) {
            let label = graph.label(v).to_string().replace('\\', "\\\\").replace('"', "\\\"");
            writeln!(out, "  v{}_{} [label=\"{}\"];", k, v.index, label).unwrap();
        }
    }
    for k in from..to {
        for v in graph.vertices(k) {
            for w in graph.up(v) {
                writeln!(out, "  v{}_{} -> v{}_{};", k, v.index, w.level, w.index).unwrap();
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Renders `q` with `significant` significant digits, rounding half away
/// from zero. Plain notation for moderate magnitudes, scientific otherwise.
pub fn decimal(q: &BigRational, significant: usize) -> String {
    assert!(significant > 0);
    if q.is_zero() {
        return "0".to_string();
    }
    let negative = q.is_negative();
    let num = q.numer().abs();
    let den = q.denom().clone();
    let ten = BigInt::from(10u32);

    // exponent e with 10^e <= |q| < 10^(e+1)
    let digits = |x: &BigInt| x.to_string().len() as i64;
    let mut e = digits(&num) - digits(&den);
    let at_least = |e: i64| -> bool {
        if e >= 0 {
            num >= &den * ten.pow(e as u32)
        } else {
            &num * ten.pow((-e) as u32) >= den
        }
    };
    if !at_least(e) {
        e -= 1;
    }

    let shift = significant as i64 - 1 - e;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (&num * ten.pow(shift as u32), den.clone())
    } else {
        (num.clone(), &den * ten.pow((-shift) as u32))
    };
    let (mut mantissa, rem) = scaled_num.div_rem(&scaled_den);
    if rem * 2u32 >= scaled_den {
        mantissa += 1u32;
    }
    if mantissa == ten.pow(significant as u32) {
        mantissa /= 10u32;
        e += 1;
    }
    let body = mantissa.to_string();
    debug_assert_eq!(body.len(), significant);

    let sign = if negative { "-" } else { "" };
    let plain = |s: &str| -> String {
        if e < 0 {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
        } else if (e as usize) + 1 >= s.len() {
            format!("{}{}", s, "0".repeat(e as usize + 1 - s.len()))
        } else {
            let (int, frac) = s.split_at(e as usize + 1);
            format!("{int}.{frac}")
        }
    };
    if (-6..significant as i64).contains(&e) {
        format!("{sign}{}", plain(&body))
    } else {
        let (lead, rest) = body.split_at(1);
        if rest.is_empty() {
            format!("{sign}{lead}e{e}")
        } else {
            format!("{sign}{lead}.{rest}e{e}")
        }
    }
}

/// Digits used for the decimal column of exact rationals.
pub const DECIMAL_DIGITS: usize = 12;
