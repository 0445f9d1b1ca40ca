//! Distributive laws and the liftings they induce.

mod em;
mod kl;

pub use em::{check_distlaw_em, DistLawEM, EmFamily, GSetVariant};
pub use kl::{check_distlaw_kl, DistLawKl, KlFamily};
pub(crate) use em::{from_canonical, to_canonical};

use crate::algebra::EMAlgebra;
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::FunctorExpr;
use crate::monoid::Monoid;
use crate::value::Value;

/// The lifting of `base` to algebras determined by `law`.
#[derive(Clone, Debug)]
pub struct LiftedFunctor {
    pub base: FunctorExpr,
    pub law: DistLawEM,
}

impl LiftedFunctor {
    pub fn new(law: &DistLawEM) -> Self {
        LiftedFunctor {
            base: law.functor().clone(),
            law: law.clone(),
        }
    }

    pub fn apply(&self, a: &EMAlgebra) -> Result<EMAlgebra> {
        lift_algebra(&self.law, a)
    }
}

/// `(H X, H x ∘ λ_X)` for an algebra `(X, x)`.
pub fn lift_algebra(law: &DistLawEM, a: &EMAlgebra) -> Result<EMAlgebra> {
    if let EmFamily::Explicit { tables } = law.family() {
        let n = a.carrier().len();
        if !tables.contains_key(&n) {
            return Err(Error::MissingComponent(format!(
                "{}: no component for carriers of size {n}",
                law.name()
            )));
        }
    }
    let carrier = law.functor().eval(a.carrier())?;
    Ok(EMAlgebra::lifted(law, a, carrier))
}

/// `λ_C ∘ M ξ : MC → HMC` for a coalgebra `ξ : C → HC`.
pub fn lift_coalgebra(law: &DistLawEM, c: &FinSet, xi: &FinFn) -> Result<FinFn> {
    let h = law.functor();
    let m = law.monad();
    if xi.dom() != c || *xi.cod() != h.eval(c)? {
        return Err(Error::DomainMismatch(format!(
            "coalgebra map {} → {} is not {} → H({})",
            xi.dom().name(),
            xi.cod().name(),
            c.name(),
            c.name()
        )));
    }
    let mc = m.obj(c)?;
    let hmc = h.eval(&mc)?;
    FinFn::tabulate(&mc, &hmc, |v| law.component_at(c, &m.map_at(xi, v)?))
}

/// The two laws on `HX = G × X` over the writer monad of `G`, from
/// `f₁(x, y) = (xy, x)` and `f₂(x, y) = (xyx⁻¹, x)`.
pub fn gset_distlaws(group: &Monoid) -> Result<(DistLawEM, DistLawEM)> {
    Ok((
        DistLawEM::gset(group, GSetVariant::Left)?,
        DistLawEM::gset(group, GSetVariant::Conjugation)?,
    ))
}

/// The first element of `M(H X)` on which two lifted structures differ,
/// with both images.
pub fn diff_liftings(a: &EMAlgebra, b: &EMAlgebra) -> Result<Option<(Value, Value, Value)>> {
    if a.carrier() != b.carrier() {
        return Err(Error::DomainMismatch("lifted algebras live on different carriers".into()));
    }
    let ta = a.table()?;
    let tb = b.table()?;
    Ok(ta
        .dom()
        .elements()
        .iter()
        .enumerate()
        .find(|(i, _)| ta.apply_index(*i) != tb.apply_index(*i))
        .map(|(i, v)| {
            (
                v.clone(),
                ta.cod().get(ta.apply_index(i)).clone(),
                tb.cod().get(tb.apply_index(i)).clone(),
            )
        }))
}
