//! Coordinate vectors over the coefficient ring (left scalars).

use super::{SuperAlgError, SuperAlgebra, Vector};
use crate::scalars::expr::{self, ExprContext};
use crate::scalars::{Parity, Scalar, ScalarError};

pub fn zero(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// c·v with c acting from the left.
pub fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn format(v: &[Scalar], names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (c, name) in v.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            parts.push(name.to_string());
        } else if c.terms().len() == 1 {
            parts.push(format!("{c}*{name}"));
        } else {
            parts.push(format!("({c})*{name}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[derive(Clone)]
enum Value {
    Scalar(Scalar),
    Vector(Vector),
    Invalid(String),
}

struct VectorContext<'a> {
    g: &'a SuperAlgebra,
}

impl VectorContext<'_> {
    fn scalar_ctx(&self) -> expr::ScalarContext<'_> {
        expr::ScalarContext {
            ring: self.g.ring(),
        }
    }
}

impl ExprContext for VectorContext<'_> {
    type Value = Value;

    fn int(&self, n: i64) -> Value {
        Value::Scalar(self.g.ring().int(n))
    }

    fn ident(&self, name: &str) -> Result<Value, ScalarError> {
        if let Ok(i) = self.g.index_of(name) {
            return Ok(Value::Vector(self.g.basis_vector(i)));
        }
        self.scalar_ctx().ident(name).map(Value::Scalar)
    }

    fn divided_power(&self, name: &str, _k: u32) -> Result<Value, ScalarError> {
        Err(ScalarError::Parse(format!(
            "divided power of {name} in a vector"
        )))
    }

    fn add(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
            (Value::Vector(x), Value::Vector(y)) => Value::Vector(add(x, y)),
            (Value::Invalid(e), _) | (_, Value::Invalid(e)) => Value::Invalid(e.clone()),
            (Value::Scalar(s), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(s)) => {
                if s.is_zero() {
                    Value::Vector(v.clone())
                } else {
                    Value::Invalid(format!("scalar {s} added to a vector"))
                }
            }
        }
    }

    fn neg(&self, a: &Value) -> Value {
        match a {
            Value::Scalar(x) => Value::Scalar(-x),
            Value::Vector(v) => Value::Vector(neg(v)),
            other => other.clone(),
        }
    }

    fn mul(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
            (Value::Scalar(c), Value::Vector(v)) => Value::Vector(scale(c, v)),
            (Value::Vector(v), Value::Scalar(c)) => {
                // e_k c = (-1)^{|c||e_k|} c e_k
                let basis = self.g.basis();
                Value::Vector(
                    v.iter()
                        .enumerate()
                        .map(|(k, x)| {
                            let t = x * c;
                            if Parity::sign(c.parity(), basis[k].parity) {
                                -t
                            } else {
                                t
                            }
                        })
                        .collect(),
                )
            }
            (Value::Invalid(e), _) | (_, Value::Invalid(e)) => Value::Invalid(e.clone()),
            (Value::Vector(_), Value::Vector(_)) => {
                Value::Invalid("product of two basis vectors".into())
            }
        }
    }

    fn invert(&self, a: &Value) -> Result<Value, ScalarError> {
        match a {
            Value::Scalar(s) => s.invert().map(Value::Scalar),
            _ => Err(ScalarError::Parse("negative power of a vector".into())),
        }
    }
}

pub(crate) fn parse(text: &str, g: &SuperAlgebra) -> Result<Vector, SuperAlgError> {
    let e = expr::parse(text)?;
    match e.eval(&VectorContext { g })? {
        Value::Vector(v) => Ok(v),
        Value::Scalar(s) if s.is_zero() => Ok(zero(g.dim())),
        Value::Scalar(s) => Err(SuperAlgError::Parse(format!("{s} is not a vector"))),
        Value::Invalid(msg) => Err(SuperAlgError::Parse(msg)),
    }
}
