//! Distributive laws `λ : MH → HM`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::EMAlgebra;
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::FunctorExpr;
use crate::laws::{FnWitness, LawReport};
use crate::monad::FinMonad;
use crate::monad_laws::{check_items, check_over_m, Instance};
use crate::monoid::Monoid;
use crate::value::Value;

/// Which of the two group laws: `f(x, y) = (xy, x)` or `(xyx⁻¹, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GSetVariant {
    Left,
    Conjugation,
}

#[derive(Clone)]
pub enum EmFamily {
    /// `H = Id`, `λ = id`.
    Identity,
    /// The law induced componentwise on a polynomial functor without
    /// coproducts: constants carry the given algebras, products and powers
    /// act through `M` of the projections, composites compose.
    Product { algebras: Vec<EMAlgebra> },
    /// `H = G × X` with `M` the writer monad of the group `G`:
    /// `λ(g, (h, z)) = (p, (q, z))` where `(p, q) = f(g, h)`.
    GSet { group: Monoid, variant: GSetVariant },
    /// Tables `M(H(n)) → H(M(n))` per canonical size `n`.
    Explicit { tables: BTreeMap<usize, Vec<usize>> },
}

#[derive(Clone, Debug)]
struct LawPatch {
    carrier: FinSet,
    input: Value,
    output: Value,
}

#[derive(Clone)]
pub struct DistLawEM {
    inner: Arc<Inner>,
}

struct Inner {
    name: String,
    functor: FunctorExpr,
    monad: FinMonad,
    family: EmFamily,
    patches: Vec<LawPatch>,
    /// `n ↦ (M(H(n)), H(M(n)))`, explicit family only.
    levels: Mutex<HashMap<usize, Arc<(FinSet, FinSet)>>>,
}

impl DistLawEM {
    fn build(name: String, functor: FunctorExpr, monad: FinMonad, family: EmFamily, patches: Vec<LawPatch>) -> Self {
        DistLawEM {
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

    pub fn identity(monad: &FinMonad) -> DistLawEM {
        DistLawEM::build(
            format!("identity:{}", monad.name()),
            FunctorExpr::Id,
            monad.clone(),
            EmFamily::Identity,
            Vec::new(),
        )
    }

    /// The componentwise law on `functor`, with an algebra for every constant
    /// set occurring in it.
    pub fn product(name: impl Into<String>, functor: FunctorExpr, monad: &FinMonad, algebras: Vec<EMAlgebra>) -> Result<DistLawEM> {
        fn visit(h: &FunctorExpr, algebras: &[EMAlgebra]) -> Result<()> {
            match h {
                FunctorExpr::Const(a) => {
                    if algebras.iter().any(|x| x.carrier() == a) {
                        Ok(())
                    } else {
                        Err(Error::MissingComponent(format!("no algebra on constant {}", a.name())))
                    }
                }
                FunctorExpr::Id => Ok(()),
                FunctorExpr::Prod(cs) => cs.iter().try_for_each(|c| visit(c, algebras)),
                FunctorExpr::Pow(_, b) => visit(b, algebras),
                FunctorExpr::Compose(o, i) => {
                    visit(o, algebras)?;
                    visit(i, algebras)
                }
                FunctorExpr::Coprod(_) => Err(Error::invalid(format!(
                    "no componentwise distributive law through the coproduct {h}"
                ))),
            }
        }
        visit(&functor, &algebras)?;
        Ok(DistLawEM::build(
            name.into(),
            functor,
            monad.clone(),
            EmFamily::Product { algebras },
            Vec::new(),
        ))
    }

    pub fn gset(group: &Monoid, variant: GSetVariant) -> Result<DistLawEM> {
        if !group.is_group() {
            return Err(Error::NotAGroup(format!("{} has non-invertible elements", group.name())));
        }
        let monad = FinMonad::writer(group.clone());
        let functor = FunctorExpr::Prod(vec![FunctorExpr::constant(group.elements()), FunctorExpr::Id]);
        let tag = match variant {
            GSetVariant::Left => "left",
            GSetVariant::Conjugation => "conj",
        };
        Ok(DistLawEM::build(
            format!("gset-{}-{tag}", group.name().to_ascii_lowercase()),
            functor,
            monad,
            EmFamily::GSet {
                group: group.clone(),
                variant,
            },
            Vec::new(),
        ))
    }

    pub fn explicit(
        name: impl Into<String>,
        functor: FunctorExpr,
        monad: &FinMonad,
        tables: BTreeMap<usize, Vec<usize>>,
    ) -> Result<DistLawEM> {
        let law = DistLawEM::build(
            name.into(),
            functor,
            monad.clone(),
            EmFamily::Explicit { tables: tables.clone() },
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

    /// Materializes the components on canonical carriers `0..=max_size`.
    pub fn tabulate(&self, max_size: usize) -> Result<DistLawEM> {
        let mut tables = BTreeMap::new();
        for n in 0..=max_size {
            let x = FinSet::canonical(n);
            let hx = self.functor().eval(&x)?;
            let dom = self.monad().obj(&hx)?;
            let cod = self.functor().eval(&self.monad().obj(&x)?)?;
            let t = dom
                .elements()
                .iter()
                .map(|v| {
                    let w = self.component_at(&x, v)?;
                    cod.index_of(&w)
                        .ok_or_else(|| Error::DomainMismatch(format!("{w} outside {}", cod.name())))
                })
                .collect::<Result<Vec<_>>>()?;
            tables.insert(n, t);
        }
        DistLawEM::explicit(format!("{} (tables)", self.name()), self.functor().clone(), self.monad(), tables)
    }

    /// The same law with `λ_X(input)` overridden.
    pub fn with_patch(&self, carrier: &FinSet, input: Value, output: Value) -> DistLawEM {
        let mut patches = self.inner.patches.clone();
        patches.retain(|p| !(p.input == input && p.carrier == *carrier));
        patches.push(LawPatch {
            carrier: carrier.clone(),
            input,
            output,
        });
        DistLawEM::build(
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

    pub fn family(&self) -> &EmFamily {
        &self.inner.family
    }

    /// `λ_X(v)` for `v ∈ M(H(X))`.
    pub fn component_at(&self, x: &FinSet, v: &Value) -> Result<Value> {
        if let Some(p) = self
            .inner
            .patches
            .iter()
            .find(|p| p.input == *v && p.carrier == *x)
        {
            return Ok(p.output.clone());
        }
        let m = &self.inner.monad;
        match &self.inner.family {
            EmFamily::Identity => Ok(v.clone()),
            EmFamily::Product { algebras } => product_component(m, algebras, &self.inner.functor, v),
            EmFamily::GSet { group, variant } => {
                let bad = || Error::DomainMismatch(format!("{v} is not an element of G × (G × X)"));
                let (g, rest) = match v.as_tuple() {
                    Some([g, rest]) => (g, rest),
                    _ => return Err(bad()),
                };
                let (h, z) = match rest.as_tuple() {
                    Some([h, z]) => (h, z),
                    _ => return Err(bad()),
                };
                let elems = group.elements();
                let gi = elems.index_of(g).ok_or_else(bad)?;
                let hi = elems.index_of(h).ok_or_else(bad)?;
                let gh = group.mul(gi, hi);
                let p = match variant {
                    GSetVariant::Left => gh,
                    GSetVariant::Conjugation => group.mul(gh, group.inverse(gi).expect("validated group")),
                };
                Ok(Value::Tuple(vec![
                    elems.get(p).clone(),
                    Value::Tuple(vec![g.clone(), z.clone()]),
                ]))
            }
            EmFamily::Explicit { tables } => {
                let n = x.len();
                let table = tables
                    .get(&n)
                    .ok_or_else(|| Error::MissingComponent(format!("{}: no component for carriers of size {n}", self.name())))?;
                let (dom, cod) = &*self.levels(n)?;
                let h = &self.inner.functor;
                let canon = m.map_with(v, &mut |w| h.map_value(w, &mut |a| to_canonical(x, a)))?;
                let i = dom
                    .index_of(&canon)
                    .ok_or_else(|| Error::DomainMismatch(format!("{v} is not an element of M(H({}))", x.name())))?;
                let r = cod.get(table[i]).clone();
                h.map_value(&r, &mut |w| m.map_with(w, &mut |a| from_canonical(x, a)))
            }
        }
    }

    /// `λ_X` as a table.
    pub fn component(&self, x: &FinSet) -> Result<FinFn> {
        let h = &self.inner.functor;
        let m = &self.inner.monad;
        let dom = m.obj(&h.eval(x)?)?;
        let cod = h.eval(&m.obj(x)?)?;
        FinFn::tabulate(&dom, &cod, |v| self.component_at(x, v))
    }

    fn levels(&self, n: usize) -> Result<Arc<(FinSet, FinSet)>> {
        if let Some(l) = self.inner.levels.lock().expect("cache lock").get(&n) {
            return Ok(l.clone());
        }
        let x = FinSet::canonical(n);
        let h = &self.inner.functor;
        let m = &self.inner.monad;
        let l = Arc::new((m.obj(&h.eval(&x)?)?, h.eval(&m.obj(&x)?)?));
        self.inner.levels.lock().expect("cache lock").insert(n, l.clone());
        Ok(l)
    }
}

fn product_component(m: &FinMonad, algebras: &[EMAlgebra], h: &FunctorExpr, v: &Value) -> Result<Value> {
    match h {
        FunctorExpr::Const(a) => algebras
            .iter()
            .find(|x| x.carrier() == a)
            .ok_or_else(|| Error::MissingComponent(format!("no algebra on constant {}", a.name())))?
            .apply(v),
        FunctorExpr::Id => Ok(v.clone()),
        FunctorExpr::Prod(cs) => cs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let vi = m.map_with(v, &mut |w| project(w, i))?;
                product_component(m, algebras, c, &vi)
            })
            .collect::<Result<Vec<_>>>()
            .map(Value::Tuple),
        FunctorExpr::Pow(e, b) => (0..e.len())
            .map(|i| {
                let vi = m.map_with(v, &mut |w| evaluate(w, i))?;
                product_component(m, algebras, b, &vi)
            })
            .collect::<Result<Vec<_>>>()
            .map(Value::Func),
        FunctorExpr::Compose(o, i) => {
            let w = product_component(m, algebras, o, v)?;
            o.map_value(&w, &mut |u| product_component(m, algebras, i, u))
        }
        FunctorExpr::Coprod(_) => Err(Error::invalid(format!("no componentwise law through {h}"))),
    }
}

fn project(w: &Value, i: usize) -> Result<Value> {
    w.as_tuple()
        .and_then(|t| t.get(i))
        .cloned()
        .ok_or_else(|| Error::DomainMismatch(format!("{w} has no component {i}")))
}

fn evaluate(w: &Value, i: usize) -> Result<Value> {
    w.as_func()
        .and_then(|t| t.get(i))
        .cloned()
        .ok_or_else(|| Error::DomainMismatch(format!("{w} has no entry {i}")))
}

pub(crate) fn to_canonical(x: &FinSet, v: &Value) -> Result<Value> {
    x.index_of(v)
        .map(|i| Value::Atom(i as u64))
        .ok_or_else(|| Error::DomainMismatch(format!("{v} is not an element of {}", x.name())))
}

pub(crate) fn from_canonical(x: &FinSet, v: &Value) -> Result<Value> {
    match v.as_atom() {
        Some(i) if (i as usize) < x.len() => Ok(x.get(i as usize).clone()),
        _ => Err(Error::DomainMismatch(format!("{v} is not a canonical index below {}", x.len()))),
    }
}

impl fmt::Debug for DistLawEM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DistLawEM({}: {} over {})", self.name(), self.functor(), self.monad().name())
    }
}

/// Checks naturality, `λ ∘ u_H = H u` and `H m ∘ λ_M ∘ M λ = λ ∘ m_H` on
/// every canonical carrier of size `0..=max_size`.
pub fn check_distlaw_em(law: &DistLawEM, max_size: usize) -> Result<LawReport> {
    if max_size == 0 {
        return Err(Error::invalid("max_size must be at least 1"));
    }
    let m = law.monad();
    let h = law.functor();
    let mut report = LawReport::new(format!("distributive law {}", law.name()));
    let targets: Vec<FinSet> = (0..=max_size).map(FinSet::canonical).collect();
    for n in 0..=max_size {
        let x = FinSet::canonical(n);
        let hx = h.eval(&x)?;
        let mx = m.obj(&x)?;
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
                check_over_m(
                    &mut report,
                    &inst,
                    m,
                    hx.elements(),
                    &|v| {
                        let lhs = h.map_value(&law.component_at(&x, v)?, &mut |w| m.map_at(&f, w))?;
                        let hf_v = m.map_with(v, &mut |w| h.map_value(w, &mut |a| f.eval(a)))?;
                        Ok((lhs, law.component_at(y, &hf_v)?))
                    },
                    None,
                )?;
            }
        }

        check_items(&mut report, &plain("unit"), hx.elements(), &|v| {
            let lhs = law.component_at(&x, &m.unit_at(&hx, v)?)?;
            let rhs = h.map_value(v, &mut |a| m.unit_at(&x, a))?;
            Ok((lhs, rhs))
        })?;

        let mhx = m.obj(&hx)?;
        check_over_m(
            &mut report,
            &plain("multiplication"),
            m,
            mhx.elements(),
            &|v| {
                let lhs = law.component_at(&x, &m.mult_at(&hx, v)?)?;
                let inner = m.map_with(v, &mut |w| law.component_at(&x, w))?;
                let rhs = h.map_value(&law.component_at(&mx, &inner)?, &mut |w| m.mult_at(&x, w))?;
                Ok((lhs, rhs))
            },
            None,
        )?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moore_z2() -> DistLawEM {
        let m = FinMonad::from_name("semimodule:z2").unwrap();
        let k = EMAlgebra::scalars(&m).unwrap();
        let h = FunctorExpr::moore(k.carrier(), &FinSet::canonical(1));
        DistLawEM::product("moore:z2", h, &m, vec![k]).unwrap()
    }

    #[test]
    fn identity_law_passes() {
        for name in ["maybe", "writer:s3", "semimodule:z2"] {
            let law = DistLawEM::identity(&FinMonad::from_name(name).unwrap());
            assert!(check_distlaw_em(&law, 2).unwrap().passed());
        }
    }

    #[test]
    fn gset_laws_pass_for_s3() {
        let g = Monoid::symmetric3();
        for v in [GSetVariant::Left, GSetVariant::Conjugation] {
            let law = DistLawEM::gset(&g, v).unwrap();
            let r = check_distlaw_em(&law, 2).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn gset_unit_condition() {
        let g = Monoid::symmetric3();
        let law = DistLawEM::gset(&g, GSetVariant::Left).unwrap();
        let x = FinSet::canonical(1);
        let e = g.elements().get(g.identity()).clone();
        for h in g.elements().elements() {
            let v = Value::Tuple(vec![e.clone(), Value::Tuple(vec![h.clone(), Value::Atom(0)])]);
            let w = law.component_at(&x, &v).unwrap();
            assert_eq!(w, Value::Tuple(vec![h.clone(), Value::Tuple(vec![e.clone(), Value::Atom(0)])]));
        }
    }

    #[test]
    fn gset_laws_are_product_laws() {
        let g = Monoid::symmetric3();
        let m = FinMonad::writer(g.clone());
        let h = FunctorExpr::Prod(vec![FunctorExpr::constant(g.elements()), FunctorExpr::Id]);
        let left = EMAlgebra::action(&m, g.elements(), |a, x| g.mul(a, x)).unwrap();
        let conj = EMAlgebra::action(&m, g.elements(), |a, x| g.mul(g.mul(a, x), g.inverse(a).unwrap())).unwrap();
        for (variant, alg) in [(GSetVariant::Left, left), (GSetVariant::Conjugation, conj)] {
            let a = DistLawEM::gset(&g, variant).unwrap();
            let b = DistLawEM::product("p", h.clone(), &m, vec![alg]).unwrap();
            let x = FinSet::canonical(2);
            assert_eq!(a.component(&x).unwrap(), b.component(&x).unwrap());
        }
    }

    #[test]
    fn non_groups_are_rejected() {
        let m = Monoid::from_name("and").unwrap();
        assert!(matches!(DistLawEM::gset(&m, GSetVariant::Left), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn moore_law_passes_and_adds_coefficients() {
        let law = moore_z2();
        assert!(check_distlaw_em(&law, 2).unwrap().passed());
        let x = FinSet::canonical(1);
        // (1, [0]) + (1, [0]) = (0, [0 + 0])
        let hv = Value::Tuple(vec![Value::Atom(1), Value::Func(vec![Value::Atom(0)])]);
        let hw = Value::Tuple(vec![Value::Atom(0), Value::Func(vec![Value::Atom(0)])]);
        let v = Value::Combo(vec![(hw, 1), (hv, 1)]);
        let out = law.component_at(&x, &v).unwrap();
        let two_x0 = Value::Combo(vec![]);
        assert_eq!(out, Value::Tuple(vec![Value::Atom(1), Value::Func(vec![two_x0])]));
    }

    #[test]
    fn broken_unit_entry_is_located() {
        let law = DistLawEM::gset(&Monoid::cyclic(2).unwrap(), GSetVariant::Left).unwrap();
        let m = law.monad().clone();
        let x = FinSet::canonical(1);
        let hx = law.functor().eval(&x).unwrap();
        let target = m.unit_at(&hx, hx.get(1)).unwrap();
        let wrong = law.component_at(&x, &m.unit_at(&hx, hx.get(0)).unwrap()).unwrap();
        let broken = law.with_patch(&x, target.clone(), wrong);
        let r = check_distlaw_em(&broken, 1).unwrap();
        let c = r.check("unit").unwrap();
        assert!(!c.passed);
        let cex = c.counterexample.as_ref().unwrap();
        assert_eq!(cex.carrier_size, Some(1));
        assert_eq!(cex.element, hx.get(1).to_string());
    }

    #[test]
    fn tabulated_law_matches_formula() {
        let law = DistLawEM::gset(&Monoid::cyclic(3).unwrap(), GSetVariant::Conjugation).unwrap();
        let t = law.tabulate(2).unwrap();
        let x = FinSet::new("x", vec![Value::Atom(5), Value::Atom(9)]).unwrap();
        assert_eq!(law.component(&x).unwrap(), t.component(&x).unwrap());
        assert!(matches!(
            t.component_at(&FinSet::canonical(3), &Value::unit()),
            Err(Error::MissingComponent(_))
        ));
    }

    #[test]
    fn monad_kind_of_gset_law_is_writer() {
        let law = DistLawEM::gset(&Monoid::symmetric3(), GSetVariant::Left).unwrap();
        assert!(matches!(law.monad().kind(), crate::monad::MonadKind::Writer { .. }));
    }
}
