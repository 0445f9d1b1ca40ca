//! Canonical element descriptors.
//!
//! Every element of every finite set in the workbench is a [`Value`]. Derived
//! sets (products, coproducts, function spaces, monad images) build their
//! elements structurally from the elements of their arguments, so an element
//! describes itself without reference to the set it was drawn from.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Value {
    /// Base element, usually an index into a labelled set.
    Atom(u64),
    /// Element of a finite product; `Tuple(vec![])` is the point of `1`.
    Tuple(Vec<Value>),
    /// Injection into the given summand of a coproduct.
    Inj(u32, Box<Value>),
    /// Function out of a finite exponent, listed in the exponent's order.
    Func(Vec<Value>),
    /// Finite formal combination with semiring coefficients. Sorted by value,
    /// no zero coefficients, no repeated values.
    Combo(Vec<(Value, u64)>),
}

impl Value {
    /// The point of the terminal set.
    pub fn unit() -> Value {
        Value::Tuple(Vec::new())
    }

    pub fn inj(i: u32, v: Value) -> Value {
        Value::Inj(i, Box::new(v))
    }

    pub fn as_atom(&self) -> Option<u64> {
        match self {
            Value::Atom(a) => Some(*a),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Value]> {
        match self {
            Value::Tuple(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_func(&self) -> Option<&[Value]> {
        match self {
            Value::Func(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_inj(&self) -> Option<(u32, &Value)> {
        match self {
            Value::Inj(i, v) => Some((*i, v)),
            _ => None,
        }
    }

    pub fn as_combo(&self) -> Option<&[(Value, u64)]> {
        match self {
            Value::Combo(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(a) => write!(f, "{a}"),
            Value::Tuple(t) if t.is_empty() => write!(f, "*"),
            Value::Tuple(t) => {
                write!(f, "(")?;
                for (i, v) in t.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
            Value::Inj(i, v) => write!(f, "in{i}:{v}"),
            Value::Func(vs) => {
                write!(f, "[")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
            Value::Combo(terms) if terms.is_empty() => write!(f, "{{}}"),
            Value::Combo(terms) => {
                write!(f, "{{")?;
                for (i, (v, c)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}.{v}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_compact() {
        let v = Value::Tuple(vec![Value::Atom(1), Value::Func(vec![Value::unit()])]);
        assert_eq!(v.to_string(), "(1, [*])");
        assert_eq!(Value::inj(0, Value::unit()).to_string(), "in0:*");
        assert_eq!(Value::Combo(vec![]).to_string(), "{}");
        assert_eq!(
            Value::Combo(vec![(Value::Atom(0), 1), (Value::Atom(2), 3)]).to_string(),
            "{1.0 + 3.2}"
        );
    }
}
