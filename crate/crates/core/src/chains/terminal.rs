//! The terminal sequence `1 ← H1 ← H²1 ← …` and points of its limit.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::FunctorExpr;
use crate::value::Value;

/// Levels `H^n 1` for `n ≤ depth`, materialized on first use.
#[derive(Clone)]
pub struct TerminalChain {
    inner: Arc<ChainInner>,
}

struct ChainInner {
    functor: FunctorExpr,
    depth: usize,
    levels: Vec<OnceLock<FinSet>>,
}

impl TerminalChain {
    /// A chain whose levels are built only when asked for.
    pub fn lazy(functor: FunctorExpr, depth: usize) -> TerminalChain {
        TerminalChain {
            inner: Arc::new(ChainInner {
                functor,
                depth,
                levels: (0..=depth).map(|_| OnceLock::new()).collect(),
            }),
        }
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.inner.functor
    }

    pub fn depth(&self) -> usize {
        self.inner.depth
    }

    /// `|H^n 1|` without building the level; `None` on overflow.
    pub fn card(&self, n: usize) -> Option<u128> {
        (0..n).try_fold(1u128, |c, _| self.inner.functor.card(c))
    }

    /// `H^n 1`.
    pub fn level(&self, n: usize) -> Result<FinSet> {
        let cell = self.inner.levels.get(n).ok_or(Error::DepthExceeded {
            requested: n,
            available: self.inner.depth,
        })?;
        if let Some(s) = cell.get() {
            return Ok(s.clone());
        }
        let set = if n == 0 {
            FinSet::singleton()
        } else {
            let below = self.level(n - 1)?;
            self.inner.functor.eval(&below)?.renamed(format!("H^{n}1"))
        };
        Ok(cell.get_or_init(|| set).clone())
    }

    /// The connecting map `t_n = H^n t : H^{n+1} 1 → H^n 1`.
    pub fn connect(&self, n: usize) -> Result<FinFn> {
        let top = self.level(n + 1)?;
        let bottom = self.level(n)?;
        FinFn::tabulate(&top, &bottom, |v| truncate(self.functor(), v, n))
    }

    /// `p_n` on an element of any level at or above `n`.
    pub fn truncate(&self, v: &Value, n: usize) -> Result<Value> {
        truncate(self.functor(), v, n)
    }
}

impl fmt::Debug for TerminalChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TerminalChain({}, depth {})", self.inner.functor, self.inner.depth)
    }
}

/// Builds every level up to `depth`.
pub fn build_terminal_chain(functor: &FunctorExpr, depth: usize) -> Result<TerminalChain> {
    let chain = TerminalChain::lazy(functor.clone(), depth);
    chain.level(depth)?;
    Ok(chain)
}

/// Image of `v ∈ H^m 1` in `H^n 1` for `n ≤ m`.
pub fn truncate(h: &FunctorExpr, v: &Value, n: usize) -> Result<Value> {
    if n == 0 {
        return Ok(Value::unit());
    }
    h.map_value(v, &mut |w| truncate(h, w, n - 1))
}

/// A uniformly drawn element of `H^n 1` (uniform per constructor choice).
pub fn sample_level(h: &FunctorExpr, n: usize, rng: &mut dyn RngCore) -> Result<Value> {
    if n == 0 {
        return Ok(Value::unit());
    }
    h.sample(rng, &mut |r| sample_level(h, n - 1, r))
}

/// `α_n(x)` for a coalgebra given by `step : C → HC`.
pub fn unfold(
    h: &FunctorExpr,
    step: &dyn Fn(&Value) -> Result<Value>,
    x: &Value,
    n: usize,
) -> Result<Value> {
    if n == 0 {
        return Ok(Value::unit());
    }
    let next = step(x)?;
    h.map_value(&next, &mut |y| unfold(h, step, y, n - 1))
}

/// The cone map `α_n : C → H^n 1` of the coalgebra `ξ : C → HC`.
pub fn anamorphism(c: &FinSet, xi: &FinFn, n: usize, chain: &TerminalChain) -> Result<FinFn> {
    if n > chain.depth() {
        return Err(Error::DepthExceeded {
            requested: n,
            available: chain.depth(),
        });
    }
    let h = chain.functor();
    if xi.dom() != c || *xi.cod() != h.eval(c)? {
        return Err(Error::DomainMismatch(format!(
            "{} → {} is not a coalgebra on {}",
            xi.dom().name(),
            xi.cod().name(),
            c.name()
        )));
    }
    let mut alpha = FinFn::constant(c, &chain.level(0)?, 0)?;
    for k in 1..=n {
        let level = chain.level(k)?;
        let prev = alpha;
        alpha = FinFn::tabulate(c, &level, |x| h.map_value(&xi.eval(x)?, &mut |y| prev.eval(y)))?;
    }
    Ok(alpha)
}

type Source = dyn Fn(usize) -> Result<Value> + Send + Sync;

/// A point of the limit, given by its representatives `rep(n) ∈ H^n 1`.
///
/// Representatives are computed on demand and cached.
#[derive(Clone)]
pub struct LimitPoint {
    inner: Arc<PointInner>,
}

struct PointInner {
    functor: FunctorExpr,
    valid_to: Option<usize>,
    source: Box<Source>,
    memo: Mutex<BTreeMap<usize, Value>>,
}

impl LimitPoint {
    /// A point from a representative function. `valid_to = None` means every
    /// depth can be queried.
    pub fn from_fn(
        functor: &FunctorExpr,
        valid_to: Option<usize>,
        source: impl Fn(usize) -> Result<Value> + Send + Sync + 'static,
    ) -> LimitPoint {
        LimitPoint {
            inner: Arc::new(PointInner {
                functor: functor.clone(),
                valid_to,
                source: Box::new(source),
                memo: Mutex::new(BTreeMap::new()),
            }),
        }
    }

    /// The point known up to `depth` through its representative there.
    pub fn from_top(functor: &FunctorExpr, top: Value, depth: usize) -> LimitPoint {
        let h = functor.clone();
        LimitPoint::from_fn(functor, Some(depth), move |n| truncate(&h, &top, n))
    }

    pub fn random(functor: &FunctorExpr, depth: usize, rng: &mut dyn RngCore) -> Result<LimitPoint> {
        let top = sample_level(functor, depth, rng)?;
        Ok(LimitPoint::from_top(functor, top, depth))
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.inner.functor
    }

    pub fn valid_to(&self) -> Option<usize> {
        self.inner.valid_to
    }

    /// `p_n` of this point.
    pub fn rep(&self, n: usize) -> Result<Value> {
        if let Some(d) = self.inner.valid_to {
            if n > d {
                return Err(Error::DepthExceeded {
                    requested: n,
                    available: d,
                });
            }
        }
        if let Some(v) = self.inner.memo.lock().expect("memo lock").get(&n) {
            return Ok(v.clone());
        }
        let v = (self.inner.source)(n)?;
        self.inner.memo.lock().expect("memo lock").insert(n, v.clone());
        Ok(v)
    }

    /// The first `n < upto` with `t_n(rep(n+1)) ≠ rep(n)`, if any.
    pub fn first_incompatibility(&self, upto: usize) -> Result<Option<usize>> {
        for n in 0..upto {
            if truncate(self.functor(), &self.rep(n + 1)?, n)? != self.rep(n)? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

impl fmt::Debug for LimitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.inner.valid_to {
            Some(d) => write!(f, "LimitPoint(valid to {d})"),
            None => write!(f, "LimitPoint(unbounded)"),
        }
    }
}

/// `2^-n` as its exponent. `GtProbe(p)` means the representatives agreed at
/// every probed depth `0..=p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DyadicDist {
    AgreeDepth(usize),
    GtProbe(usize),
}

impl DyadicDist {
    /// Largest `k` for which the distance is known to be at most `2^-k`.
    pub fn exponent_bound(self) -> usize {
        match self {
            DyadicDist::AgreeDepth(d) => d,
            DyadicDist::GtProbe(p) => p + 1,
        }
    }

    /// Whether the distance is known to be at most `2^-k`.
    pub fn within(self, k: usize) -> bool {
        self.exponent_bound() >= k
    }

    pub fn is_exact(self) -> bool {
        matches!(self, DyadicDist::AgreeDepth(_))
    }
}

impl fmt::Display for DyadicDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyadicDist::AgreeDepth(d) => write!(f, "2^-{d}"),
            DyadicDist::GtProbe(p) => write!(f, "< 2^-{p}"),
        }
    }
}

/// `2^-n` for the least `n ≤ probe` with `rep_x(n) ≠ rep_y(n)`.
pub fn distance(x: &LimitPoint, y: &LimitPoint, probe: usize) -> Result<DyadicDist> {
    for n in 0..=probe {
        if x.rep(n)? != y.rep(n)? {
            return Ok(DyadicDist::AgreeDepth(n));
        }
    }
    Ok(DyadicDist::GtProbe(probe))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_times() -> FunctorExpr {
        FunctorExpr::Prod(vec![FunctorExpr::constant(&FinSet::canonical(2)), FunctorExpr::Id])
    }

    #[test]
    fn level_sizes() {
        let c = build_terminal_chain(&two_times(), 4).unwrap();
        for n in 0..=4 {
            assert_eq!(c.level(n).unwrap().len(), 1 << n);
            assert_eq!(c.card(n), Some(1 << n));
        }
        let g = FunctorExpr::Prod(vec![
            FunctorExpr::constant(crate::monoid::Monoid::symmetric3().elements()),
            FunctorExpr::Id,
        ]);
        assert_eq!(build_terminal_chain(&g, 2).unwrap().level(2).unwrap().len(), 36);
    }

    #[test]
    fn constant_functor_stabilizes() {
        let a = FinSet::canonical(3);
        let c = build_terminal_chain(&FunctorExpr::constant(&a), 3).unwrap();
        for n in 1..3 {
            assert_eq!(c.level(n).unwrap().len(), 3);
            assert!(c.connect(n).unwrap().is_bijective());
        }
    }

    #[test]
    fn depth_is_enforced() {
        let c = TerminalChain::lazy(two_times(), 2);
        assert!(matches!(c.level(3), Err(Error::DepthExceeded { requested: 3, available: 2 })));
        let p = LimitPoint::from_top(&two_times(), c.level(2).unwrap().get(0).clone(), 2);
        assert!(p.rep(3).is_err());
    }

    #[test]
    fn anamorphism_of_constant_output() {
        let h = two_times();
        let chain = build_terminal_chain(&h, 4).unwrap();
        let c = FinSet::canonical(1);
        let hc = h.eval(&c).unwrap();
        let xi = FinFn::tabulate(&c, &hc, |x| Ok(Value::Tuple(vec![Value::Atom(1), x.clone()]))).unwrap();
        let a0 = anamorphism(&c, &xi, 0, &chain).unwrap();
        assert_eq!(a0.cod().len(), 1);
        let a3 = anamorphism(&c, &xi, 3, &chain).unwrap();
        let ones = a3.eval(&Value::Atom(0)).unwrap();
        let expected = (0..3).fold(Value::unit(), |acc, _| Value::Tuple(vec![Value::Atom(1), acc]));
        assert_eq!(ones, expected);
        let a4 = anamorphism(&c, &xi, 4, &chain).unwrap();
        assert_eq!(a4.then(&chain.connect(3).unwrap()).unwrap(), a3);
        assert!(matches!(anamorphism(&c, &xi, 5, &chain), Err(Error::DepthExceeded { .. })));
    }

    #[test]
    fn distance_finds_first_disagreement() {
        let h = two_times();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = LimitPoint::random(&h, 6, &mut rng).unwrap();
        assert_eq!(distance(&x, &x, 6).unwrap(), DyadicDist::GtProbe(6));
        assert_eq!(x.first_incompatibility(6).unwrap(), None);
        // 1 against 1 + t
        let poly = |cs: &[u64]| {
            let top = cs.iter().rev().fold(Value::unit(), |acc, &c| Value::Tuple(vec![Value::Atom(c), acc]));
            LimitPoint::from_top(&h, top, cs.len())
        };
        let one = poly(&[1, 0, 0, 0]);
        let one_t = poly(&[1, 1, 0, 0]);
        assert_eq!(distance(&one, &one_t, 4).unwrap(), DyadicDist::AgreeDepth(2));
    }

    #[test]
    fn dyadic_serialization() {
        assert_eq!(serde_json::to_string(&DyadicDist::AgreeDepth(2)).unwrap(), r#"{"agree_depth":2}"#);
        assert_eq!(serde_json::to_string(&DyadicDist::GtProbe(8)).unwrap(), r#"{"gt_probe":8}"#);
        assert!(DyadicDist::GtProbe(3).within(4));
        assert!(!DyadicDist::AgreeDepth(3).within(4));
    }
}
