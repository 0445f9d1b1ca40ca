//! Distributive laws `ς : TM → MT` (Kleisli lifts of `T`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use super::em::{from_canonical, to_canonical};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::FunctorExpr;
use crate::laws::{FnWitness, LawReport};
use crate::monad::FinMonad;
use crate::monad_laws::{check_items, Instance};
use crate::value::Value;

#[derive(Clone)]
pub enum KlFamily {
    /// `T = Id`, `ς = id`.
    Identity,
    /// `T = 1 + A × X`: the unit on the `1` summand and `M` of the
    /// injection `x ↦ in1:(a, x)` (the strength) on the other.
    OnePlusA { alphabet: FinSet },
    /// Tables `T(M(n)) → M(T(n))` per canonical size.
    Explicit { tables: BTreeMap<usize, Vec<usize>> },
}

#[derive(Clone)]
pub struct DistLawKl {
    inner: Arc<Inner>,
}

struct Inner {
    name: String,
    functor: FunctorExpr,
    monad: FinMonad,
    family: KlFamily,
    patches: Vec<(FinSet, Value, Value)>,
    levels: Mutex<HashMap<usize, Arc<(FinSet, FinSet)>>>,
}

impl DistLawKl {
    fn build(name: String, functor: FunctorExpr, monad: FinMonad, family: KlFamily, patches: Vec<(FinSet, Value, Value)>) -> Self {
        DistLawKl {
            inner: Arc::new(Inner {
                name,
                functor,
                monad,
                family,
                patches,
                levels: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn identity(monad: &FinMonad) -> DistLawKl {
        DistLawKl::build(
            format!("kleisli-identity:{}", monad.name()),
            FunctorExpr::Id,
            monad.clone(),
            KlFamily::Identity,
            Vec::new(),
        )
    }

    pub fn one_plus_a(alphabet: &FinSet, monad: &FinMonad) -> DistLawKl {
        DistLawKl::build(
            format!("kleisli:{}:{}letter", monad.name(), alphabet.len()),
            FunctorExpr::one_plus_a_times(alphabet),
            monad.clone(),
            KlFamily::OnePlusA {
                alphabet: alphabet.clone(),
            },
            Vec::new(),
        )
    }

    pub fn explicit(
        name: impl Into<String>,
        functor: FunctorExpr,
        monad: &FinMonad,
        tables: BTreeMap<usize, Vec<usize>>,
    ) -> Result<DistLawKl> {
        let law = DistLawKl::build(
            name.into(),
            functor,
            monad.clone(),
            KlFamily::Explicit { tables: tables.clone() },
            Vec::new(),
        );
        for (&n, t) in &tables {
            let (dom, cod) = &*law.levels(n)?;
            if t.len() != dom.len() || t.iter().any(|&i| i >= cod.len()) {
                return Err(Error::invalid(format!("{}: malformed component for size {n}", law.name())));
            }
        }
        Ok(law)
    }

    pub fn with_patch(&self, carrier: &FinSet, input: Value, output: Value) -> DistLawKl {
        let mut patches = self.inner.patches.clone();
        patches.retain(|(c, i, _)| !(*i == input && c == carrier));
        patches.push((carrier.clone(), input, output));
        DistLawKl::build(
            format!("{} (patched)", self.inner.name.trim_end_matches(" (patched)")),
            self.inner.functor.clone(),
            self.inner.monad.clone(),
            self.inner.family.clone(),
            patches,
        )
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.inner.functor
    }

    pub fn monad(&self) -> &FinMonad {
        &self.inner.monad
    }

    pub fn family(&self) -> &KlFamily {
        &self.inner.family
    }

    /// `ς_X(v)` for `v ∈ T(M(X))`.
    pub fn component_at(&self, x: &FinSet, v: &Value) -> Result<Value> {
        if let Some((_, _, out)) = self.inner.patches.iter().find(|(c, i, _)| i == v && c == x) {
            return Ok(out.clone());
        }
        let m = &self.inner.monad;
        match &self.inner.family {
            KlFamily::Identity => Ok(v.clone()),
            KlFamily::OnePlusA { .. } => match v.as_inj() {
                Some((0, _)) => {
                    let tx = self.inner.functor.eval(x)?;
                    m.unit_at(&tx, v)
                }
                Some((1, pair)) => match pair.as_tuple() {
                    Some([a, mv]) => m.map_with(mv, &mut |y| {
                        Ok(Value::inj(1, Value::Tuple(vec![a.clone(), y.clone()])))
                    }),
                    _ => Err(Error::DomainMismatch(format!("{v} is not an element of 1 + A × M(X)"))),
                },
                _ => Err(Error::DomainMismatch(format!("{v} is not an element of 1 + A × M(X)"))),
            },
            KlFamily::Explicit { tables } => {
                let n = x.len();
                let table = tables
                    .get(&n)
                    .ok_or_else(|| Error::MissingComponent(format!("{}: no component for carriers of size {n}", self.name())))?;
                let (dom, cod) = &*self.levels(n)?;
                let t = &self.inner.functor;
                let canon = t.map_value(v, &mut |w| m.map_with(w, &mut |a| to_canonical(x, a)))?;
                let i = dom
                    .index_of(&canon)
                    .ok_or_else(|| Error::DomainMismatch(format!("{v} is not an element of T(M({}))", x.name())))?;
                let r = cod.get(table[i]).clone();
                m.map_with(&r, &mut |w| t.map_value(w, &mut |a| from_canonical(x, a)))
            }
        }
    }

    /// `ς_X` as a table.
    pub fn component(&self, x: &FinSet) -> Result<FinFn> {
        let t = &self.inner.functor;
        let m = &self.inner.monad;
        let dom = t.eval(&m.obj(x)?)?;
        let cod = m.obj(&t.eval(x)?)?;
        FinFn::tabulate(&dom, &cod, |v| self.component_at(x, v))
    }

    fn levels(&self, n: usize) -> Result<Arc<(FinSet, FinSet)>> {
        if let Some(l) = self.inner.levels.lock().expect("cache lock").get(&n) {
            return Ok(l.clone());
        }
        let x = FinSet::canonical(n);
        let t = &self.inner.functor;
        let m = &self.inner.monad;
        let l = Arc::new((t.eval(&m.obj(&x)?)?, m.obj(&t.eval(&x)?)?));
        self.inner.levels.lock().expect("cache lock").insert(n, l.clone());
        Ok(l)
    }
}

impl fmt::Debug for DistLawKl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DistLawKl({}: {} over {})", self.name(), self.functor(), self.monad().name())
    }
}

/// Checks naturality, `ς ∘ T u = u_T` and `ς ∘ T m = m_T ∘ M ς ∘ ς_M` on
/// every canonical carrier of size `0..=max_size`.
pub fn check_distlaw_kl(law: &DistLawKl, max_size: usize) -> Result<LawReport> {
    if max_size == 0 {
        return Err(Error::invalid("max_size must be at least 1"));
    }
    let m = law.monad();
    let t = law.functor();
    let mut report = LawReport::new(format!("Kleisli law {}", law.name()));
    let targets: Vec<FinSet> = (0..=max_size).map(FinSet::canonical).collect();
    for n in 0..=max_size {
        let x = FinSet::canonical(n);
        let tx = t.eval(&x)?;
        let mx = m.obj(&x)?;
        let tmx = t.eval(&mx)?;
        let plain = |law| Instance {
            law,
            carrier_size: Some(n),
            functions: Vec::new(),
        };

        for y in &targets {
            for f in FinFn::all(&x, y) {
                let inst = Instance {
                    law: "naturality",
                    carrier_size: Some(n),
                    functions: vec![FnWitness::of(&f)],
                };
                check_items(&mut report, &inst, tmx.elements(), &|v| {
                    let lhs = m.map_with(&law.component_at(&x, v)?, &mut |w| t.map_value(w, &mut |a| f.eval(a)))?;
                    let tmf_v = t.map_value(v, &mut |w| m.map_at(&f, w))?;
                    Ok((lhs, law.component_at(y, &tmf_v)?))
                })?;
            }
        }

        check_items(&mut report, &plain("unit"), tx.elements(), &|v| {
            let lhs = law.component_at(&x, &t.map_value(v, &mut |a| m.unit_at(&x, a))?)?;
            Ok((lhs, m.unit_at(&tx, v)?))
        })?;

        let mmx = m.obj(&mx)?;
        let tmmx = t.eval(&mmx)?;
        check_items(&mut report, &plain("multiplication"), tmmx.elements(), &|v| {
            let lhs = law.component_at(&x, &t.map_value(v, &mut |w| m.mult_at(&x, w))?)?;
            let outer = law.component_at(&mx, v)?;
            let inner = m.map_with(&outer, &mut |w| law.component_at(&x, w))?;
            Ok((lhs, m.mult_at(&tx, &inner)?))
        })?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_passes() {
        let law = DistLawKl::identity(&FinMonad::powerset());
        assert!(check_distlaw_kl(&law, 2).unwrap().passed());
    }

    #[test]
    fn one_plus_a_passes_for_builtins() {
        let a = FinSet::labeled("A", vec!["a", "b"]).unwrap();
        for name in ["maybe", "exception:2", "writer:s3", "powerset", "semimodule:z2"] {
            let law = DistLawKl::one_plus_a(&a, &FinMonad::from_name(name).unwrap());
            let r = check_distlaw_kl(&law, 2).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
        }
    }

    #[test]
    fn maybe_table_by_hand() {
        // T(M 1) = 1 + A × (1 + 1) with |A| = 1: three inputs.
        let a = FinSet::labeled("A", vec!["a"]).unwrap();
        let m = FinMonad::maybe();
        let law = DistLawKl::one_plus_a(&a, &m);
        let x = FinSet::canonical(1);
        let sigma = law.component(&x).unwrap();
        assert_eq!(sigma.dom().len(), 3);
        let nothing = Value::inj(0, Value::Atom(0));
        let star = Value::inj(0, Value::unit());
        let pair = |v: Value| Value::inj(1, Value::Tuple(vec![Value::Atom(0), v]));
        assert_eq!(sigma.eval(&star).unwrap(), Value::inj(1, star.clone()));
        assert_eq!(sigma.eval(&pair(nothing.clone())).unwrap(), nothing);
        assert_eq!(
            sigma.eval(&pair(Value::inj(1, Value::Atom(0)))).unwrap(),
            Value::inj(1, pair(Value::Atom(0)))
        );
    }

    #[test]
    fn broken_multiplication_square_fails() {
        let a = FinSet::labeled("A", vec!["a"]).unwrap();
        let m = FinMonad::maybe();
        let law = DistLawKl::one_plus_a(&a, &m);
        let mx = m.obj(&FinSet::canonical(1)).unwrap();
        // Corrupt ς at M(1) on in1:(a, in1:in1:0), used only by the square.
        let input = Value::inj(1, Value::Tuple(vec![Value::Atom(0), Value::inj(1, mx.get(1).clone())]));
        let broken = law.with_patch(&mx, input, Value::inj(0, Value::Atom(0)));
        let r = check_distlaw_kl(&broken, 2).unwrap();
        assert!(!r.check("multiplication").unwrap().passed);
    }

    #[test]
    fn tables_round_trip() {
        let a = FinSet::labeled("A", vec!["a"]).unwrap();
        let m = FinMonad::from_name("semimodule:z2").unwrap();
        let law = DistLawKl::one_plus_a(&a, &m);
        let mut tables = BTreeMap::new();
        for n in 0..=2 {
            let x = FinSet::canonical(n);
            let c = law.component(&x).unwrap();
            tables.insert(n, c.table().to_vec());
        }
        let t = DistLawKl::explicit("t", law.functor().clone(), &m, tables).unwrap();
        assert!(check_distlaw_kl(&t, 1).unwrap().passed());
    }
}
