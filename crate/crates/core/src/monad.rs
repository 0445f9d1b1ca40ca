//! Finiteness-preserving monads on finite sets.
//!
//! Element encodings:
//! - exception `E + X` (maybe is `|E| = 1`): `in0:e` for errors, `in1:x` for values
//! - writer `B × X`: `(b, x)` with `b` an atom of the monoid
//! - semimodule `k^(X)` and finite powerset: linear combinations
//! - explicit: elements of the polynomial functor it is defined over

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::{odometer, FunctorExpr};
use crate::guard;
use crate::linear::{self, lin_map, lin_mult};
use crate::monoid::Monoid;
use crate::semiring::Semiring;
use crate::value::Value;

#[derive(Clone)]
pub enum MonadKind {
    Exception { errors: FinSet },
    Writer { monoid: Monoid },
    /// Finitely supported `k`-linear combinations. The powerset monad is the
    /// Boolean case and only differs in its name.
    Semimodule { ring: Semiring, powerset: bool },
    Explicit(ExplicitMonad),
}

/// A monad given by unit and multiplication tables on canonical carriers
/// `{0..n-1}`, over a polynomial functor. Other carriers of the same size are
/// handled by transport along their enumeration.
#[derive(Clone, Debug)]
pub struct ExplicitMonad {
    pub name: String,
    pub functor: FunctorExpr,
    /// `n ↦` table of `u : n → F(n)` (indices into `F(n)`).
    pub unit: BTreeMap<usize, Vec<usize>>,
    /// `n ↦` table of `m : F(F(n)) → F(n)`.
    pub mult: BTreeMap<usize, Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatchOp {
    Unit,
    Mult,
}

/// A single overridden entry, used to build deliberately broken monads.
#[derive(Clone, Debug)]
pub struct Patch {
    pub op: PatchOp,
    pub carrier: FinSet,
    pub input: Value,
    pub output: Value,
}

#[derive(Clone)]
pub struct FinMonad {
    inner: Arc<Inner>,
}

struct Inner {
    kind: MonadKind,
    patches: Vec<Patch>,
    sound_ring: bool,
    levels: Mutex<HashMap<usize, Arc<(FinSet, FinSet)>>>,
}

impl FinMonad {
    fn build(kind: MonadKind, patches: Vec<Patch>) -> FinMonad {
        let sound_ring = match &kind {
            MonadKind::Semimodule {
                ring: r @ Semiring::Table(_),
                ..
            } => r.check_axioms(0, 0).passed(),
            _ => true,
        };
        FinMonad {
            inner: Arc::new(Inner {
                kind,
                patches,
                sound_ring,
                levels: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn maybe() -> FinMonad {
        let errors = FinSet::labeled("1", vec!["nothing"]).expect("one label");
        FinMonad::build(MonadKind::Exception { errors }, Vec::new())
    }

    pub fn exception(errors: FinSet) -> FinMonad {
        FinMonad::build(MonadKind::Exception { errors }, Vec::new())
    }

    pub fn writer(monoid: Monoid) -> FinMonad {
        FinMonad::build(MonadKind::Writer { monoid }, Vec::new())
    }

    pub fn powerset() -> FinMonad {
        FinMonad::build(
            MonadKind::Semimodule {
                ring: Semiring::Boolean,
                powerset: true,
            },
            Vec::new(),
        )
    }

    /// Fails for infinite semirings, whose semimodule monad sends finite sets
    /// to infinite ones.
    pub fn semimodule(ring: Semiring) -> Result<FinMonad> {
        if !ring.is_finite() {
            return Err(Error::NonFinitePreserving(format!(
                "the {}-semimodule monad has infinite M(1)",
                ring.name()
            )));
        }
        Ok(FinMonad::build(
            MonadKind::Semimodule {
                ring,
                powerset: false,
            },
            Vec::new(),
        ))
    }

    pub fn explicit(m: ExplicitMonad) -> Result<FinMonad> {
        for (&n, table) in &m.unit {
            let fx = m.functor.card(n as u128);
            if table.len() != n || table.iter().any(|&i| fx.map_or(false, |c| i as u128 >= c)) {
                return Err(Error::invalid(format!("{}: malformed unit table for size {n}", m.name)));
            }
        }
        for (&n, table) in &m.mult {
            let fx = m.functor.card(n as u128);
            let ffx = fx.and_then(|c| m.functor.card(c));
            if ffx != Some(table.len() as u128) || table.iter().any(|&i| fx.map_or(true, |c| i as u128 >= c)) {
                return Err(Error::invalid(format!(
                    "{}: malformed multiplication table for size {n}",
                    m.name
                )));
            }
        }
        Ok(FinMonad::build(MonadKind::Explicit(m), Vec::new()))
    }

    /// Builtin monads by name: `maybe`, `exception:<n>`, `writer:<monoid>`,
    /// `powerset`, `semimodule:<semiring>`. `list` is recognised and rejected.
    pub fn from_name(name: &str) -> Result<FinMonad> {
        let n = name.trim().to_ascii_lowercase();
        let (head, arg) = match n.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (n.as_str(), None),
        };
        match (head, arg) {
            ("maybe", None) => Ok(FinMonad::maybe()),
            ("exception", a) => {
                let k: usize = a
                    .unwrap_or("1")
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad exception count in {name:?}")))?;
                let labels = (0..k).map(|i| format!("e{i}")).collect();
                Ok(FinMonad::exception(FinSet::labeled(format!("E{k}"), labels)?))
            }
            ("writer", Some(m)) => Ok(FinMonad::writer(Monoid::from_name(m)?)),
            ("powerset", None) => Ok(FinMonad::powerset()),
            ("semimodule", Some(k)) => FinMonad::semimodule(Semiring::from_name(k)?),
            ("list", _) => Err(Error::NonFinitePreserving(
                "the list monad sends every nonempty finite set to an infinite one".into(),
            )),
            _ => Err(Error::invalid(format!("unknown monad {name:?}"))),
        }
    }

    pub fn kind(&self) -> &MonadKind {
        &self.inner.kind
    }

    pub fn is_patched(&self) -> bool {
        !self.inner.patches.is_empty()
    }

    pub fn name(&self) -> String {
        let base = match &self.inner.kind {
            MonadKind::Exception { errors } if errors.len() == 1 => "maybe".to_string(),
            MonadKind::Exception { errors } => format!("exception:{}", errors.len()),
            MonadKind::Writer { monoid } => format!("writer:{}", monoid.name().to_ascii_lowercase()),
            MonadKind::Semimodule { powerset: true, .. } => "powerset".into(),
            MonadKind::Semimodule { ring, .. } => format!("semimodule:{}", ring.name()),
            MonadKind::Explicit(m) => m.name.clone(),
        };
        if self.is_patched() {
            format!("{base} (patched)")
        } else {
            base
        }
    }

    /// The semiring when this is an unpatched semimodule monad over a valid
    /// semiring, i.e. when `M f` and `m` are computed by the generic linear
    /// code and are therefore linear in the coefficients.
    pub fn linear(&self) -> Option<&Semiring> {
        match &self.inner.kind {
            MonadKind::Semimodule { ring, .. } if !self.is_patched() && self.inner.sound_ring => Some(ring),
            _ => None,
        }
    }

    /// Algebras of semimodule monads have finite biproducts.
    pub fn has_biproducts(&self) -> bool {
        matches!(self.inner.kind, MonadKind::Semimodule { .. })
    }

    /// The polynomial functor underlying the monad, when there is one.
    pub fn functor(&self) -> Option<FunctorExpr> {
        match &self.inner.kind {
            MonadKind::Exception { errors } => Some(FunctorExpr::Coprod(vec![
                FunctorExpr::constant(errors),
                FunctorExpr::Id,
            ])),
            MonadKind::Writer { monoid } => Some(FunctorExpr::Prod(vec![
                FunctorExpr::constant(monoid.elements()),
                FunctorExpr::Id,
            ])),
            MonadKind::Semimodule { .. } => None,
            MonadKind::Explicit(m) => Some(m.functor.clone()),
        }
    }

    /// `|M(X)|` for `|X| = n`; `None` on overflow.
    pub fn card(&self, n: u128) -> Option<u128> {
        match &self.inner.kind {
            MonadKind::Exception { errors } => (errors.len() as u128).checked_add(n),
            MonadKind::Writer { monoid } => (monoid.len() as u128).checked_mul(n),
            MonadKind::Semimodule { ring, .. } => guard::pow(ring.size()? as u128, n),
            MonadKind::Explicit(m) => m.functor.card(n),
        }
    }

    /// `|M0|`, the size of the free algebra on no generators.
    pub fn zero_object_size(&self) -> Result<usize> {
        guard::check(|| format!("{}(0)", self.name()), self.card(0))
    }

    /// Elements of `M(X)` in canonical order, given those of `X`.
    pub fn enumerate(&self, x: &[Value]) -> Result<Vec<Value>> {
        guard::check(
            || format!("{} applied to a set of size {}", self.name(), x.len()),
            self.card(x.len() as u128),
        )?;
        Ok(match &self.inner.kind {
            MonadKind::Exception { errors } => errors
                .elements()
                .iter()
                .map(|e| Value::inj(0, e.clone()))
                .chain(x.iter().map(|v| Value::inj(1, v.clone())))
                .collect(),
            MonadKind::Writer { monoid } => monoid
                .elements()
                .elements()
                .iter()
                .flat_map(|b| x.iter().map(move |v| Value::Tuple(vec![b.clone(), v.clone()])))
                .collect(),
            MonadKind::Semimodule { ring, .. } => {
                let q = ring.size().expect("finite by construction") as usize;
                odometer(&vec![q; x.len()])
                    .map(|coeffs| {
                        let terms = x
                            .iter()
                            .zip(coeffs)
                            .map(|(v, c)| (v.clone(), c as u64))
                            .collect();
                        linear::to_value(linear::normalize(ring, terms))
                    })
                    .collect()
            }
            MonadKind::Explicit(m) => m.functor.eval_elements(x)?,
        })
    }

    /// `M(X)` as a set.
    pub fn obj(&self, x: &FinSet) -> Result<FinSet> {
        FinSet::new(format!("{}({})", self.name(), x.name()), self.enumerate(x.elements())?)
    }

    fn patched(&self, op: PatchOp, x: &FinSet, v: &Value) -> Option<Value> {
        self.inner
            .patches
            .iter()
            .find(|p| p.op == op && p.input == *v && p.carrier == *x)
            .map(|p| p.output.clone())
    }

    /// `u_X(v)`.
    pub fn unit_at(&self, x: &FinSet, v: &Value) -> Result<Value> {
        if !x.contains(v) {
            return Err(Error::DomainMismatch(format!("{v} is not an element of {}", x.name())));
        }
        if let Some(out) = self.patched(PatchOp::Unit, x, v) {
            return Ok(out);
        }
        match &self.inner.kind {
            MonadKind::Exception { .. } => Ok(Value::inj(1, v.clone())),
            MonadKind::Writer { monoid } => Ok(Value::Tuple(vec![
                monoid.elements().get(monoid.identity()).clone(),
                v.clone(),
            ])),
            MonadKind::Semimodule { ring, .. } => Ok(linear::to_value(linear::normalize(
                ring,
                vec![(v.clone(), ring.one())],
            ))),
            MonadKind::Explicit(m) => {
                let n = x.len();
                let table = m
                    .unit
                    .get(&n)
                    .ok_or_else(|| Error::MissingComponent(format!("{}: no unit table for size {n}", m.name)))?;
                let (fx, _) = &*self.levels(n)?;
                let r = fx.get(table[x.index_of(v).expect("checked")]).clone();
                m.functor.map_value(&r, &mut |a| from_canonical(x, a))
            }
        }
    }

    /// `m_X(v)` for `v ∈ M(M(X))`.
    pub fn mult_at(&self, x: &FinSet, v: &Value) -> Result<Value> {
        if let Some(out) = self.patched(PatchOp::Mult, x, v) {
            return Ok(out);
        }
        let bad = || Error::DomainMismatch(format!("{v} is not an element of {}^2({})", self.name(), x.name()));
        match &self.inner.kind {
            MonadKind::Exception { .. } => match v.as_inj() {
                Some((0, _)) => Ok(v.clone()),
                Some((1, w)) if w.as_inj().is_some() => Ok(w.clone()),
                _ => Err(bad()),
            },
            MonadKind::Writer { monoid } => {
                let (b, w) = match v.as_tuple() {
                    Some([b, w]) => (b, w),
                    _ => return Err(bad()),
                };
                let (c, x0) = match w.as_tuple() {
                    Some([c, x0]) => (c, x0),
                    _ => return Err(bad()),
                };
                let idx = |a: &Value| {
                    monoid
                        .elements()
                        .index_of(a)
                        .ok_or_else(bad)
                };
                let bc = monoid.mul(idx(b)?, idx(c)?);
                Ok(Value::Tuple(vec![monoid.elements().get(bc).clone(), x0.clone()]))
            }
            MonadKind::Semimodule { ring, .. } => {
                let outer = linear::from_value(v)?;
                Ok(linear::to_value(lin_mult(ring, &outer)?))
            }
            MonadKind::Explicit(m) => {
                let n = x.len();
                let table = m
                    .mult
                    .get(&n)
                    .ok_or_else(|| Error::MissingComponent(format!("{}: no multiplication table for size {n}", m.name)))?;
                let (fx, ffx) = &*self.levels(n)?;
                let canon = m
                    .functor
                    .map_value(v, &mut |w| m.functor.map_value(w, &mut |a| to_canonical(x, a)))?;
                let i = ffx.index_of(&canon).ok_or_else(bad)?;
                let r = fx.get(table[i]).clone();
                m.functor.map_value(&r, &mut |a| from_canonical(x, a))
            }
        }
    }

    /// `M f` at one element, for an arbitrary element-level function.
    pub fn map_with(&self, v: &Value, f: &mut dyn FnMut(&Value) -> Result<Value>) -> Result<Value> {
        match &self.inner.kind {
            MonadKind::Exception { .. } => match v.as_inj() {
                Some((0, _)) => Ok(v.clone()),
                Some((1, x)) => Ok(Value::inj(1, f(x)?)),
                _ => Err(Error::DomainMismatch(format!("{v} is not an element of {}(X)", self.name()))),
            },
            MonadKind::Writer { .. } => match v.as_tuple() {
                Some([b, x]) => Ok(Value::Tuple(vec![b.clone(), f(x)?])),
                _ => Err(Error::DomainMismatch(format!("{v} is not an element of {}(X)", self.name()))),
            },
            MonadKind::Semimodule { ring, .. } => {
                let terms = linear::from_value(v)?;
                Ok(linear::to_value(lin_map(ring, &terms, f)?))
            }
            MonadKind::Explicit(m) => m.functor.map_value(v, f),
        }
    }

    /// `M f` at one element.
    pub fn map_at(&self, f: &FinFn, v: &Value) -> Result<Value> {
        self.map_with(v, &mut |x| f.eval(x))
    }

    pub fn unit(&self, x: &FinSet) -> Result<FinFn> {
        let mx = self.obj(x)?;
        FinFn::tabulate(x, &mx, |v| self.unit_at(x, v))
    }

    pub fn mult(&self, x: &FinSet) -> Result<FinFn> {
        let mx = self.obj(x)?;
        let mmx = self.obj(&mx)?;
        FinFn::tabulate(&mmx, &mx, |v| self.mult_at(x, v))
    }

    pub fn map(&self, f: &FinFn) -> Result<FinFn> {
        let dom = self.obj(f.dom())?;
        let cod = self.obj(f.cod())?;
        FinFn::tabulate(&dom, &cod, |v| self.map_at(f, v))
    }

    /// The same monad with one entry of `u_X` or `m_X` overridden.
    pub fn with_patch(&self, op: PatchOp, carrier: &FinSet, input: Value, output: Value) -> FinMonad {
        let mut patches = self.inner.patches.clone();
        patches.retain(|p| !(p.op == op && p.input == input && p.carrier == *carrier));
        patches.push(Patch {
            op,
            carrier: carrier.clone(),
            input,
            output,
        });
        FinMonad::build(self.inner.kind.clone(), patches)
    }

    /// Swaps the values of `m_X` at two elements of `M(M(X))`.
    pub fn with_swapped_mult(&self, x: &FinSet, a: &Value, b: &Value) -> Result<FinMonad> {
        let ma = self.mult_at(x, a)?;
        let mb = self.mult_at(x, b)?;
        Ok(self
            .with_patch(PatchOp::Mult, x, a.clone(), mb)
            .with_patch(PatchOp::Mult, x, b.clone(), ma))
    }

    /// Materializes unit and multiplication tables on canonical carriers of
    /// size `0..=max_size`. Only monads over a polynomial functor qualify.
    pub fn tabulate(&self, max_size: usize) -> Result<ExplicitMonad> {
        let functor = self.functor().ok_or_else(|| {
            Error::invalid(format!("{} has no polynomial presentation", self.name()))
        })?;
        let mut unit = BTreeMap::new();
        let mut mult = BTreeMap::new();
        for n in 0..=max_size {
            let x = FinSet::canonical(n);
            let fx = functor.eval(&x)?;
            let ffx = functor.eval(&fx)?;
            let idx = |v: Value| {
                fx.index_of(&v)
                    .ok_or_else(|| Error::DomainMismatch(format!("{v} outside {}", fx.name())))
            };
            unit.insert(
                n,
                x.elements()
                    .iter()
                    .map(|v| idx(self.unit_at(&x, v)?))
                    .collect::<Result<Vec<_>>>()?,
            );
            mult.insert(
                n,
                ffx.elements()
                    .iter()
                    .map(|v| idx(self.mult_at(&x, v)?))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(ExplicitMonad {
            name: format!("{} (tables)", self.name()),
            functor,
            unit,
            mult,
        })
    }

    fn levels(&self, n: usize) -> Result<Arc<(FinSet, FinSet)>> {
        let MonadKind::Explicit(m) = &self.inner.kind else {
            unreachable!("only explicit monads cache levels")
        };
        if let Some(l) = self.inner.levels.lock().expect("cache lock").get(&n) {
            return Ok(l.clone());
        }
        let fx = m.functor.eval(&FinSet::canonical(n))?;
        let ffx = m.functor.eval(&fx)?;
        let l = Arc::new((fx, ffx));
        self.inner
            .levels
            .lock()
            .expect("cache lock")
            .insert(n, l.clone());
        Ok(l)
    }
}

fn to_canonical(x: &FinSet, v: &Value) -> Result<Value> {
    x.index_of(v)
        .map(|i| Value::Atom(i as u64))
        .ok_or_else(|| Error::DomainMismatch(format!("{v} is not an element of {}", x.name())))
}

fn from_canonical(x: &FinSet, v: &Value) -> Result<Value> {
    match v.as_atom() {
        Some(i) if (i as usize) < x.len() => Ok(x.get(i as usize).clone()),
        _ => Err(Error::DomainMismatch(format!("{v} is not a canonical index below {}", x.len()))),
    }
}

impl fmt::Debug for FinMonad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinMonad({})", self.name())
    }
}

impl fmt::Display for FinMonad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtins() -> Vec<FinMonad> {
        ["maybe", "exception:2", "writer:s3", "powerset", "semimodule:z2", "semimodule:z4"]
            .iter()
            .map(|n| FinMonad::from_name(n).unwrap())
            .collect()
    }

    #[test]
    fn cardinalities_match_enumeration() {
        for m in builtins() {
            for n in 0..=3usize {
                let x = FinSet::canonical(n);
                let mx = m.obj(&x).unwrap();
                assert_eq!(Some(mx.len() as u128), m.card(n as u128), "{} at {n}", m.name());
            }
        }
    }

    #[test]
    fn free_algebra_on_empty_set() {
        assert_eq!(FinMonad::maybe().zero_object_size().unwrap(), 1);
        assert_eq!(FinMonad::from_name("writer:s3").unwrap().zero_object_size().unwrap(), 0);
        assert_eq!(FinMonad::powerset().zero_object_size().unwrap(), 1);
        let z2 = FinMonad::from_name("semimodule:z2").unwrap();
        assert_eq!(z2.obj(&FinSet::singleton()).unwrap().len(), 2);
    }

    #[test]
    fn list_and_infinite_semirings_are_rejected() {
        assert!(matches!(FinMonad::from_name("list"), Err(Error::NonFinitePreserving(_))));
        assert!(matches!(
            FinMonad::from_name("semimodule:nat"),
            Err(Error::NonFinitePreserving(_))
        ));
    }

    #[test]
    fn writer_multiplies_labels() {
        let m = FinMonad::from_name("writer:z3").unwrap();
        let x = FinSet::canonical(1);
        let v = Value::Tuple(vec![
            Value::Atom(2),
            Value::Tuple(vec![Value::Atom(2), Value::Atom(0)]),
        ]);
        assert_eq!(
            m.mult_at(&x, &v).unwrap(),
            Value::Tuple(vec![Value::Atom(1), Value::Atom(0)])
        );
    }

    #[test]
    fn semimodule_map_merges_terms() {
        let m = FinMonad::from_name("semimodule:z2").unwrap();
        let x = FinSet::canonical(2);
        let y = FinSet::canonical(1);
        let f = FinFn::constant(&x, &y, 0).unwrap();
        let v = Value::Combo(vec![(Value::Atom(0), 1), (Value::Atom(1), 1)]);
        assert_eq!(m.map_at(&f, &v).unwrap(), Value::Combo(vec![]));
    }

    #[test]
    fn tabulated_monads_agree_with_builtins() {
        for name in ["maybe", "exception:2", "writer:z2"] {
            let m = FinMonad::from_name(name).unwrap();
            let t = FinMonad::explicit(m.tabulate(2).unwrap()).unwrap();
            let x = FinSet::new("x", vec![Value::Atom(7), Value::Atom(3)]).unwrap();
            let mx = m.obj(&x).unwrap();
            let mmx = m.obj(&mx).unwrap();
            for v in x.elements() {
                assert_eq!(m.unit_at(&x, v).unwrap(), t.unit_at(&x, v).unwrap());
            }
            for v in mmx.elements() {
                assert_eq!(m.mult_at(&x, v).unwrap(), t.mult_at(&x, v).unwrap());
            }
        }
    }

    #[test]
    fn patches_override_single_entries() {
        let m = FinMonad::maybe();
        let x = FinSet::canonical(1);
        let a = Value::inj(1, Value::inj(1, Value::Atom(0)));
        let b = Value::inj(0, Value::Atom(0));
        let p = m.with_swapped_mult(&x, &a, &b).unwrap();
        assert_eq!(p.mult_at(&x, &a).unwrap(), m.mult_at(&x, &b).unwrap());
        assert!(p.linear().is_none());
        assert_eq!(p.mult_at(&FinSet::canonical(2), &a).unwrap(), m.mult_at(&x, &a).unwrap());
    }
}
