//! Typed parameter declarations and resolved parameter sets.

use std::fmt;

use crate::error::CliError;
use crate::output::format_float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    Float,
    Int,
    Choice(&'static [&'static str]),
}

/// Inclusive bounds checked before any computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    Any,
    Positive,
    NonNegative,
    Between(f64, f64),
}

impl Bound {
    fn admits(self, v: f64) -> bool {
        v.is_finite()
            && match self {
                Bound::Any => true,
                Bound::Positive => v > 0.0,
                Bound::NonNegative => v >= 0.0,
                Bound::Between(lo, hi) => (lo..=hi).contains(&v),
            }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Any => write!(f, "finite"),
            Bound::Positive => write!(f, "> 0"),
            Bound::NonNegative => write!(f, ">= 0"),
            Bound::Between(lo, hi) => write!(f, "in [{lo}, {hi}]"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub unit: &'static str,
    pub help: &'static str,
    pub bound: Bound,
}

impl ParamSpec {
    pub const fn float(key: &'static str, default: &'static str, unit: &'static str, help: &'static str, bound: Bound) -> Self {
        Self { key, kind: Kind::Float, default, unit, help, bound }
    }

    pub const fn int(key: &'static str, default: &'static str, help: &'static str, bound: Bound) -> Self {
        Self { key, kind: Kind::Int, default, unit: "count", help, bound }
    }

    pub const fn choice(key: &'static str, default: &'static str, help: &'static str, options: &'static [&'static str]) -> Self {
        Self { key, kind: Kind::Choice(options), default, unit: "-", help, bound: Bound::Any }
    }

    /// Help line listing unit, admissible range and default.
    pub fn describe(&self) -> String {
        let range = match self.kind {
            Kind::Choice(opts) => format!("one of {}", opts.join("|")),
            _ => self.bound.to_string(),
        };
        format!("{} [unit: {}] [range: {range}] [default: {}]", self.help, self.unit, self.default)
    }

    pub fn parse(&self, raw: &str) -> Result<Value, String> {
        let raw = raw.trim();
        let v = match self.kind {
            Kind::Float => Value::Float(raw.parse::<f64>().map_err(|_| format!("{} expects a number, got '{raw}'", self.key))?),
            Kind::Int => Value::Int(raw.parse::<i64>().map_err(|_| format!("{} expects an integer, got '{raw}'", self.key))?),
            Kind::Choice(opts) => {
                if !opts.contains(&raw) {
                    return Err(format!("{} must be one of {}, got '{raw}'", self.key, opts.join("|")));
                }
                Value::Text(raw.to_string())
            }
        };
        if let Some(x) = v.as_f64() {
            if !self.bound.admits(x) {
                return Err(format!("{} = {raw} out of range ({})", self.key, self.bound));
            }
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Value {
    fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Float(x) => Some(*x),
            Value::Int(i) => Some(*i as f64),
            Value::Text(_) => None,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Float(x) => format_float(*x),
            Value::Int(i) => i.to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

/// Fully resolved parameters in declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    values: Vec<(&'static str, Value)>,
}

impl Params {
    pub fn new(values: Vec<(&'static str, Value)>) -> Self {
        Self { values }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(&'static str, Value)> {
        self.values.iter()
    }

    fn value(&self, key: &str) -> &Value {
        &self.values.iter().find(|(k, _)| *k == key).unwrap_or_else(|| panic!("undeclared parameter {key}")).1
    }

    pub fn f64(&self, key: &str) -> f64 {
        self.value(key).as_f64().expect("numeric parameter")
    }

    pub fn int(&self, key: &str) -> i64 {
        match self.value(key) {
            Value::Int(i) => *i,
            other => panic!("{key} is not an integer: {other:?}"),
        }
    }

    /// Integer parameter whose bound is non-negative.
    pub fn usize(&self, key: &str) -> usize {
        usize::try_from(self.int(key)).expect("bound keeps count non-negative")
    }

    pub fn text(&self, key: &str) -> &str {
        match self.value(key) {
            Value::Text(s) => s,
            other => panic!("{key} is not text: {other:?}"),
        }
    }
}

/// Cross-parameter precondition.
pub fn require(cond: bool, msg: impl Into<String>) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Param(msg.into()))
    }
}
