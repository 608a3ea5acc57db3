use std::fmt;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::polyring::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Undecided,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Undecided => None,
        }
    }
}

/// Three-valued truth assignment for `y_1 … y_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<Truth>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssignmentError {
    #[error("assignment JSON must be an object")]
    NotObject,
    #[error("bad key `{0}` (expected y<index>)")]
    BadKey(String),
    #[error("bad value for `{0}` (expected true, false or \"undecided\")")]
    BadValue(String),
}

impl Assignment {
    pub fn undecided(n: usize) -> Self {
        Assignment { values: vec![Truth::Undecided; n] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Assignment { values: bits.iter().map(|&b| Truth::from_bool(b)).collect() }
    }

    pub fn from_truths(values: Vec<Truth>) -> Self {
        Assignment { values }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    /// Value of `y_var` (1-based); variables past the end are undecided.
    pub fn get(&self, var: usize) -> Truth {
        self.values.get(var.wrapping_sub(1)).copied().unwrap_or(Truth::Undecided)
    }

    pub fn set(&mut self, var: usize, t: Truth) {
        assert!(var >= 1, "variables are numbered from 1");
        if var > self.values.len() {
            self.values.resize(var, Truth::Undecided);
        }
        self.values[var - 1] = t;
    }

    pub fn values(&self) -> &[Truth] {
        &self.values
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(|t| *t != Truth::Undecided)
    }

    pub fn undecided_vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(|(_, t)| **t == Truth::Undecided).map(|(i, _)| i + 1)
    }

    /// Replaces every undecided value by `fill`.
    pub fn filled(&self, fill: bool) -> Assignment {
        Assignment {
            values: self
                .values
                .iter()
                .map(|t| match t {
                    Truth::Undecided => Truth::from_bool(fill),
                    other => *other,
                })
                .collect(),
        }
    }

    /// `{"y1": true, "y2": false, "y3": "undecided"}` in variable order.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (i, t) in self.values.iter().enumerate() {
            let v = match t {
                Truth::True => Value::Bool(true),
                Truth::False => Value::Bool(false),
                Truth::Undecided => Value::String("undecided".into()),
            };
            m.insert(format!("y{}", i + 1), v);
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self, AssignmentError> {
        let obj = v.as_object().ok_or(AssignmentError::NotObject)?;
        let mut a = Assignment::undecided(0);
        for (k, val) in obj {
            let idx: usize = k
                .strip_prefix('y')
                .and_then(|s| s.parse().ok())
                .filter(|&i| i >= 1)
                .ok_or_else(|| AssignmentError::BadKey(k.clone()))?;
            let t = match val {
                Value::Bool(b) => Truth::from_bool(*b),
                Value::String(s) if s == "undecided" => Truth::Undecided,
                _ => return Err(AssignmentError::BadValue(k.clone())),
            };
            a.set(idx, t);
        }
        Ok(a)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.values {
            f.write_str(match t {
                Truth::True => "1",
                Truth::False => "0",
                Truth::Undecided => "?",
            })?;
        }
        Ok(())
    }
}

/// Reads a variety point as a truth assignment: 1 ↦ true, 0 ↦ false, any
/// other value ↦ undecided. `var_map[i]` is the SAT variable (1-based)
/// behind polynomial variable `i`.
pub fn point_to_assignment<F: Field>(point: &[F], var_map: &[usize], num_vars: usize) -> Assignment {
    let mut a = Assignment::undecided(num_vars);
    for (i, v) in point.iter().enumerate() {
        let t = match v.as_bit() {
            Some(b) => Truth::from_bool(b),
            None => Truth::Undecided,
        };
        a.set(var_map[i], t);
    }
    a
}
