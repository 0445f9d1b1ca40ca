//! Formal linear combinations with coefficients in a semiring.
//!
//! The semimodule and powerset monads are implemented once, generically over
//! the coefficient type. Concrete elements use `u64` coefficients; the law
//! checker instantiates the same code with [`LinForm`] coefficients, i.e.
//! one indeterminate per basis vector, to evaluate a law on a generic
//! element of a domain too large to enumerate.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::Semiring;
use crate::value::Value;

pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero(ring: &Semiring) -> Self;
    fn is_zero(&self, ring: &Semiring) -> bool;
    fn plus(&self, other: &Self, ring: &Semiring) -> Self;
    /// Right multiplication by a concrete scalar, `self · c`.
    fn times(&self, c: u64, ring: &Semiring) -> Self;
}

impl Coeff for u64 {
    fn zero(ring: &Semiring) -> Self {
        ring.zero()
    }

    fn is_zero(&self, ring: &Semiring) -> bool {
        ring.is_zero(*self)
    }

    fn plus(&self, other: &Self, ring: &Semiring) -> Self {
        ring.add(*self, *other)
    }

    fn times(&self, c: u64, ring: &Semiring) -> Self {
        ring.mul(*self, c)
    }
}

/// `Σ vᵢ · aᵢ` over indeterminates `vᵢ`, keyed by `i`; zero terms are absent.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LinForm(pub BTreeMap<usize, u64>);

impl LinForm {
    pub fn var(i: usize, ring: &Semiring) -> LinForm {
        let mut m = BTreeMap::new();
        if !ring.is_zero(ring.one()) {
            m.insert(i, ring.one());
        }
        LinForm(m)
    }

    /// Coefficient of `vᵢ`.
    pub fn coefficient(&self, i: usize, ring: &Semiring) -> u64 {
        self.0.get(&i).copied().unwrap_or_else(|| ring.zero())
    }
}

impl fmt::Debug for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinForm{:?}", self.0)
    }
}

impl Coeff for LinForm {
    fn zero(_ring: &Semiring) -> Self {
        LinForm::default()
    }

    fn is_zero(&self, _ring: &Semiring) -> bool {
        self.0.is_empty()
    }

    fn plus(&self, other: &Self, ring: &Semiring) -> Self {
        let mut out = self.0.clone();
        for (&i, &a) in &other.0 {
            let e = out.entry(i).or_insert_with(|| ring.zero());
            *e = ring.add(*e, a);
            if ring.is_zero(*e) {
                out.remove(&i);
            }
        }
        LinForm(out)
    }

    fn times(&self, c: u64, ring: &Semiring) -> Self {
        LinForm(
            self.0
                .iter()
                .map(|(&i, &a)| (i, ring.mul(a, c)))
                .filter(|(_, a)| !ring.is_zero(*a))
                .collect(),
        )
    }
}

pub type Terms<C> = Vec<(Value, C)>;

/// Sorts by value, merges repeated values by addition, drops zeros.
pub fn normalize<C: Coeff>(ring: &Semiring, mut terms: Terms<C>) -> Terms<C> {
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Terms<C> = Vec::with_capacity(terms.len());
    for (v, c) in terms {
        match out.last_mut() {
            Some((w, d)) if *w == v => *d = d.plus(&c, ring),
            _ => out.push((v, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero(ring));
    out
}

/// `M f` on a combination: `Σ cᵢ xᵢ ↦ Σ cᵢ f(xᵢ)`.
pub fn lin_map<C: Coeff>(
    ring: &Semiring,
    terms: &[(Value, C)],
    f: &mut dyn FnMut(&Value) -> Result<Value>,
) -> Result<Terms<C>> {
    let mapped = terms
        .iter()
        .map(|(v, c)| Ok((f(v)?, c.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(normalize(ring, mapped))
}

/// Multiplication: flattens a combination of concrete combinations,
/// `Σ cᵢ (Σ dᵢⱼ xⱼ) ↦ Σⱼ (Σᵢ cᵢ·dᵢⱼ) xⱼ`.
pub fn lin_mult<C: Coeff>(ring: &Semiring, terms: &[(Value, C)]) -> Result<Terms<C>> {
    let mut flat = Vec::new();
    for (inner, c) in terms {
        let inner = inner
            .as_combo()
            .ok_or_else(|| Error::DomainMismatch(format!("{inner} is not a linear combination")))?;
        for (x, d) in inner {
            flat.push((x.clone(), c.times(*d, ring)));
        }
    }
    Ok(normalize(ring, flat))
}

pub fn to_value(terms: Terms<u64>) -> Value {
    Value::Combo(terms)
}

pub fn from_value(v: &Value) -> Result<Terms<u64>> {
    v.as_combo()
        .map(<[_]>::to_vec)
        .ok_or_else(|| Error::DomainMismatch(format!("{v} is not a linear combination")))
}

/// Pointwise sum of two concrete combinations.
pub fn add_values(ring: &Semiring, a: &Value, b: &Value) -> Result<Value> {
    let mut t = from_value(a)?;
    t.extend(from_value(b)?);
    Ok(to_value(normalize(ring, t)))
}

/// The generic element `Σ vᵢ bᵢ` over `basis`.
pub fn generic_element(ring: &Semiring, basis: &[Value]) -> Terms<LinForm> {
    basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), LinForm::var(i, ring)))
        .collect()
}

/// First point where two symbolic results differ, as
/// `(value, indeterminate index)`: setting that indeterminate to 1 and all
/// others to 0 yields a concrete counterexample.
pub fn symbolic_difference(
    ring: &Semiring,
    lhs: &[(Value, LinForm)],
    rhs: &[(Value, LinForm)],
) -> Option<(Value, usize)> {
    let mut keys: Vec<&Value> = lhs.iter().chain(rhs).map(|(v, _)| v).collect();
    keys.sort();
    keys.dedup();
    let zero = LinForm::default();
    let lookup = |side: &[(Value, LinForm)], k: &Value| -> LinForm {
        side.iter()
            .find(|(v, _)| v == k)
            .map(|(_, f)| f.clone())
            .unwrap_or_else(|| zero.clone())
    };
    for k in keys {
        let (l, r) = (lookup(lhs, k), lookup(rhs, k));
        if l != r {
            let vars = l.0.keys().chain(r.0.keys()).copied();
            let i = vars
                .filter(|&i| l.coefficient(i, ring) != r.coefficient(i, ring))
                .min()
                .expect("forms differ in some coefficient");
            return Some((k.clone(), i));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_merges_and_drops_zero() {
        let z2 = Semiring::ZMod(2);
        let t = vec![(Value::Atom(1), 1u64), (Value::Atom(0), 1), (Value::Atom(1), 1)];
        assert_eq!(normalize(&z2, t), vec![(Value::Atom(0), 1)]);
    }

    #[test]
    fn mult_flattens() {
        let z3 = Semiring::ZMod(3);
        let a = Value::Combo(vec![(Value::Atom(0), 1), (Value::Atom(1), 2)]);
        let b = Value::Combo(vec![(Value::Atom(1), 1)]);
        let outer = vec![(a, 2u64), (b, 1)];
        // 2·(x0 + 2x1) + x1 = 2x0 + 5x1 = 2x0 + 2x1 (mod 3)
        assert_eq!(
            lin_mult(&z3, &outer).unwrap(),
            vec![(Value::Atom(0), 2), (Value::Atom(1), 2)]
        );
    }

    #[test]
    fn symbolic_forms_evaluate_like_concrete() {
        let z4 = Semiring::ZMod(4);
        let basis = vec![
            Value::Combo(vec![(Value::Atom(0), 3)]),
            Value::Combo(vec![(Value::Atom(0), 1), (Value::Atom(1), 2)]),
        ];
        let g = generic_element(&z4, &basis);
        let sym = lin_mult(&z4, &g).unwrap();
        // Instantiating v0 = 2, v1 = 3 must agree with the concrete computation.
        let concrete = lin_mult(&z4, &[(basis[0].clone(), 2u64), (basis[1].clone(), 3)]).unwrap();
        let inst: Terms<u64> = normalize(
            &z4,
            sym.iter()
                .map(|(v, f)| {
                    let val = z4.add(z4.mul(2, f.coefficient(0, &z4)), z4.mul(3, f.coefficient(1, &z4)));
                    (v.clone(), val)
                })
                .collect(),
        );
        assert_eq!(inst, concrete);
    }
}
