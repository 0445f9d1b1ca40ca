//! Polynomial Set-endofunctors as syntax trees.
//!
//! Enumeration orders: products and function spaces run lexicographically
//! over the index tuples of their components (first component most
//! significant), coproducts list summand 0 first.

use std::fmt;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::guard;
use crate::value::Value;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FunctorExpr {
    Const(FinSet),
    Id,
    Prod(Vec<FunctorExpr>),
    Coprod(Vec<FunctorExpr>),
    /// `body^exponent`
    Pow(FinSet, Box<FunctorExpr>),
    /// `outer ∘ inner`
    Compose(Box<FunctorExpr>, Box<FunctorExpr>),
}

impl FunctorExpr {
    pub fn constant(a: &FinSet) -> Self {
        FunctorExpr::Const(a.clone())
    }

    pub fn pow(exponent: &FinSet, body: FunctorExpr) -> Self {
        FunctorExpr::Pow(exponent.clone(), Box::new(body))
    }

    pub fn compose(outer: FunctorExpr, inner: FunctorExpr) -> Self {
        FunctorExpr::Compose(Box::new(outer), Box::new(inner))
    }

    /// `K × X^A`, the Moore-automaton functor.
    pub fn moore(outputs: &FinSet, alphabet: &FinSet) -> Self {
        FunctorExpr::Prod(vec![
            FunctorExpr::constant(outputs),
            FunctorExpr::pow(alphabet, FunctorExpr::Id),
        ])
    }

    /// `1 + A × X`
    pub fn one_plus_a_times(alphabet: &FinSet) -> Self {
        FunctorExpr::Coprod(vec![
            FunctorExpr::constant(&FinSet::singleton()),
            FunctorExpr::Prod(vec![FunctorExpr::constant(alphabet), FunctorExpr::Id]),
        ])
    }

    /// Predicted cardinality of `H(X)` for `|X| = n`; `None` on overflow.
    pub fn card(&self, n: u128) -> Option<u128> {
        match self {
            FunctorExpr::Const(a) => Some(a.len() as u128),
            FunctorExpr::Id => Some(n),
            FunctorExpr::Prod(cs) => cs
                .iter()
                .try_fold(1u128, |acc, c| acc.checked_mul(c.card(n)?)),
            FunctorExpr::Coprod(cs) => cs
                .iter()
                .try_fold(0u128, |acc, c| acc.checked_add(c.card(n)?)),
            FunctorExpr::Pow(e, b) => guard::pow(b.card(n)?, e.len() as u128),
            FunctorExpr::Compose(o, i) => o.card(i.card(n)?),
        }
    }

    /// `H(X)` in canonical order.
    pub fn eval(&self, x: &FinSet) -> Result<FinSet> {
        let elems = self.eval_elements(x.elements())?;
        FinSet::new(format!("{self}({})", x.name()), elems)
    }

    /// Elements of `H(X)` given the elements of `X`.
    pub fn eval_elements(&self, x: &[Value]) -> Result<Vec<Value>> {
        guard::check(|| format!("{self} applied to a set of size {}", x.len()), self.card(x.len() as u128))?;
        Ok(self.enumerate(x))
    }

    fn enumerate(&self, x: &[Value]) -> Vec<Value> {
        match self {
            FunctorExpr::Const(a) => a.elements().to_vec(),
            FunctorExpr::Id => x.to_vec(),
            FunctorExpr::Prod(cs) => {
                let parts: Vec<Vec<Value>> = cs.iter().map(|c| c.enumerate(x)).collect();
                let radices: Vec<usize> = parts.iter().map(Vec::len).collect();
                odometer(&radices)
                    .map(|idx| {
                        Value::Tuple(idx.iter().zip(&parts).map(|(&i, p)| p[i].clone()).collect())
                    })
                    .collect()
            }
            FunctorExpr::Coprod(cs) => cs
                .iter()
                .enumerate()
                .flat_map(|(k, c)| {
                    c.enumerate(x)
                        .into_iter()
                        .map(move |v| Value::inj(k as u32, v))
                })
                .collect(),
            FunctorExpr::Pow(e, b) => {
                let body = b.enumerate(x);
                let radices = vec![body.len(); e.len()];
                odometer(&radices)
                    .map(|idx| Value::Func(idx.iter().map(|&i| body[i].clone()).collect()))
                    .collect()
            }
            FunctorExpr::Compose(o, i) => o.enumerate(&i.enumerate(x)),
        }
    }

    /// Applies `H` to the function `f` at a single element of `H(X)`.
    pub fn map_value(
        &self,
        v: &Value,
        f: &mut dyn FnMut(&Value) -> Result<Value>,
    ) -> Result<Value> {
        match (self, v) {
            (FunctorExpr::Const(_), _) => Ok(v.clone()),
            (FunctorExpr::Id, _) => f(v),
            (FunctorExpr::Prod(cs), Value::Tuple(ts)) if cs.len() == ts.len() => cs
                .iter()
                .zip(ts)
                .map(|(c, t)| c.map_value(t, f))
                .collect::<Result<Vec<_>>>()
                .map(Value::Tuple),
            (FunctorExpr::Coprod(cs), Value::Inj(k, w)) if (*k as usize) < cs.len() => {
                Ok(Value::inj(*k, cs[*k as usize].map_value(w, f)?))
            }
            (FunctorExpr::Pow(e, b), Value::Func(ws)) if ws.len() == e.len() => ws
                .iter()
                .map(|w| b.map_value(w, f))
                .collect::<Result<Vec<_>>>()
                .map(Value::Func),
            (FunctorExpr::Compose(o, i), _) => o.map_value(v, &mut |w| i.map_value(w, f)),
            _ => Err(Error::DomainMismatch(format!("{v} is not an element of {self}(X)"))),
        }
    }

    /// `H f : H(dom f) → H(cod f)` as a table.
    pub fn map(&self, f: &FinFn) -> Result<FinFn> {
        let dom = self.eval(f.dom())?;
        let cod = self.eval(f.cod())?;
        FinFn::tabulate(&dom, &cod, |v| self.map_value(v, &mut |x| f.eval(x)))
    }

    /// Draws an element of `H(X)`, delegating to `inner` for elements of `X`.
    pub fn sample(
        &self,
        rng: &mut dyn RngCore,
        inner: &mut dyn FnMut(&mut dyn RngCore) -> Result<Value>,
    ) -> Result<Value> {
        match self {
            FunctorExpr::Const(a) => {
                if a.is_empty() {
                    return Err(Error::invalid(format!("cannot sample from empty set {}", a.name())));
                }
                Ok(a.get(rng.gen_range(0..a.len())).clone())
            }
            FunctorExpr::Id => inner(rng),
            FunctorExpr::Prod(cs) => cs
                .iter()
                .map(|c| c.sample(rng, inner))
                .collect::<Result<Vec<_>>>()
                .map(Value::Tuple),
            FunctorExpr::Coprod(cs) => {
                let live: Vec<usize> = (0..cs.len()).filter(|&k| !cs[k].is_trivially_empty()).collect();
                if live.is_empty() {
                    return Err(Error::invalid(format!("cannot sample from empty {self}")));
                }
                let k = live[rng.gen_range(0..live.len())];
                Ok(Value::inj(k as u32, cs[k].sample(rng, inner)?))
            }
            FunctorExpr::Pow(e, b) => (0..e.len())
                .map(|_| b.sample(rng, inner))
                .collect::<Result<Vec<_>>>()
                .map(Value::Func),
            FunctorExpr::Compose(o, i) => o.sample(rng, &mut |r| i.sample(r, inner)),
        }
    }

    fn is_trivially_empty(&self) -> bool {
        match self {
            FunctorExpr::Const(a) => a.is_empty(),
            FunctorExpr::Id => false,
            FunctorExpr::Prod(cs) => cs.iter().any(|c| c.is_trivially_empty()),
            FunctorExpr::Coprod(cs) => cs.iter().all(|c| c.is_trivially_empty()),
            FunctorExpr::Pow(e, b) => !e.is_empty() && b.is_trivially_empty(),
            FunctorExpr::Compose(o, _) => o.is_trivially_empty(),
        }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorExpr::Const(a) => write!(f, "{}", a.name()),
            FunctorExpr::Id => write!(f, "X"),
            FunctorExpr::Prod(cs) if cs.is_empty() => write!(f, "1"),
            FunctorExpr::Prod(cs) => {
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "×")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            FunctorExpr::Coprod(cs) if cs.is_empty() => write!(f, "0"),
            FunctorExpr::Coprod(cs) => {
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            FunctorExpr::Pow(e, b) => write!(f, "{b}^{}", e.name()),
            FunctorExpr::Compose(o, i) => write!(f, "{o}∘{i}"),
        }
    }
}

impl fmt::Debug for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Mixed-radix counter over `radices`, most significant digit first. A zero
/// radix yields nothing; an empty radix list yields one empty tuple.
pub(crate) fn odometer(radices: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let empty = radices.iter().any(|&r| r == 0);
    let mut next = if empty { None } else { Some(vec![0; radices.len()]) };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        let mut pos = radices.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < radices[pos] {
                next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus() -> Vec<FunctorExpr> {
        let two = FinSet::canonical(2);
        let one = FinSet::canonical(1);
        vec![
            FunctorExpr::Id,
            FunctorExpr::constant(&two),
            FunctorExpr::moore(&two, &one),
            FunctorExpr::moore(&two, &two),
            FunctorExpr::one_plus_a_times(&two),
            FunctorExpr::Prod(vec![FunctorExpr::Id, FunctorExpr::Id]),
            FunctorExpr::compose(FunctorExpr::one_plus_a_times(&one), FunctorExpr::moore(&one, &two)),
        ]
    }

    #[test]
    fn constant_and_identity() {
        let a = FinSet::labeled("A", vec!["p", "q"]).unwrap();
        let x = FinSet::canonical(3);
        assert_eq!(FunctorExpr::constant(&a).eval(&x).unwrap(), a);
        assert_eq!(FunctorExpr::Id.eval(&x).unwrap(), x);
    }

    #[test]
    fn moore_cardinality() {
        let k = FinSet::canonical(2);
        let a = FinSet::canonical(1);
        let h = FunctorExpr::moore(&k, &a);
        assert_eq!(h.eval(&FinSet::canonical(3)).unwrap().len(), 6);
        assert_eq!(h.card(3), Some(6));
    }

    #[test]
    fn cardinality_prediction_matches_enumeration() {
        for h in corpus() {
            for n in 0..=3 {
                let x = FinSet::canonical(n);
                assert_eq!(h.eval(&x).unwrap().len() as u128, h.card(n as u128).unwrap(), "{h} at {n}");
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        for h in corpus() {
            let x = FinSet::canonical(2);
            assert_eq!(h.eval(&x).unwrap().elements(), h.eval(&x).unwrap().elements());
        }
    }

    #[test]
    fn functor_laws_on_corpus() {
        for h in corpus() {
            for n in 0..=3 {
                let x = FinSet::canonical(n);
                assert!(h.map(&FinFn::identity(&x)).unwrap().is_identity(), "{h} id at {n}");
            }
            for (a, b, c) in [(2, 3, 2), (3, 2, 3), (1, 2, 2), (0, 1, 2)] {
                let (xa, xb, xc) = (FinSet::canonical(a), FinSet::canonical(b), FinSet::canonical(c));
                for f in FinFn::all(&xa, &xb) {
                    for g in FinFn::all(&xb, &xc) {
                        let lhs = h.map(&f.then(&g).unwrap()).unwrap();
                        let rhs = h.map(&f).unwrap().then(&h.map(&g).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "{h} composition");
                    }
                }
            }
        }
    }

    #[test]
    fn pair_functor_maps_componentwise() {
        // Oracle: enumerate all pairs by hand and apply f to each side.
        let x = FinSet::canonical(2);
        let f = FinFn::new(x.clone(), x.clone(), vec![1, 1]).unwrap();
        let h = FunctorExpr::Prod(vec![FunctorExpr::Id, FunctorExpr::Id]);
        let hf = h.map(&f).unwrap();
        for a in 0..2u64 {
            for b in 0..2u64 {
                let pair = Value::Tuple(vec![Value::Atom(a), Value::Atom(b)]);
                let want = Value::Tuple(vec![
                    f.eval(&Value::Atom(a)).unwrap(),
                    f.eval(&Value::Atom(b)).unwrap(),
                ]);
                assert_eq!(hf.eval(&pair).unwrap(), want);
            }
        }
    }

    #[test]
    fn guard_blocks_large_sets() {
        let h = FunctorExpr::pow(&FinSet::canonical(40), FunctorExpr::Id);
        assert!(matches!(h.eval(&FinSet::canonical(2)), Err(Error::BlowUpGuard { .. })));
    }

    #[test]
    fn odometer_orders() {
        let v: Vec<_> = odometer(&[2, 3]).collect();
        assert_eq!(v.len(), 6);
        assert_eq!(v[1], vec![0, 1]);
        assert_eq!(odometer(&[]).count(), 1);
        assert_eq!(odometer(&[2, 0]).count(), 0);
    }
}
