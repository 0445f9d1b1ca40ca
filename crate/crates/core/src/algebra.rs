//! Eilenberg-Moore algebras.

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::laws::LawReport;
use crate::lifting::DistLawEM;
use crate::monad::{FinMonad, MonadKind};
use crate::monad_laws::{check_associativity, check_items, check_left_unit, Instance};
use crate::value::Value;

#[derive(Clone)]
pub enum Structure {
    /// An explicit map `M(carrier) → carrier`.
    Table(FinFn),
    /// `(MX, m_X)`; the carrier is `M(generators)`.
    Free { generators: FinSet },
    /// `H x ∘ λ_X` on `H(X)` for an algebra `(X, x)`, evaluated lazily.
    Lifted { law: DistLawEM, base: Box<EMAlgebra> },
}

#[derive(Clone)]
pub struct EMAlgebra {
    monad: FinMonad,
    carrier: FinSet,
    structure: Structure,
}

impl EMAlgebra {
    /// An algebra given by a table. Laws are not checked here; see
    /// [`check_em_algebra`].
    pub fn from_table(monad: &FinMonad, table: FinFn) -> EMAlgebra {
        EMAlgebra {
            monad: monad.clone(),
            carrier: table.cod().clone(),
            structure: Structure::Table(table),
        }
    }

    pub(crate) fn lifted(law: &DistLawEM, base: &EMAlgebra, carrier: FinSet) -> EMAlgebra {
        EMAlgebra {
            monad: law.monad().clone(),
            carrier,
            structure: Structure::Lifted {
                law: law.clone(),
                base: Box::new(base.clone()),
            },
        }
    }

    /// Tabulates `structure` over `M(carrier)`.
    pub fn from_fn(
        monad: &FinMonad,
        carrier: &FinSet,
        structure: impl FnMut(&Value) -> Result<Value>,
    ) -> Result<EMAlgebra> {
        let dom = monad.obj(carrier)?;
        Ok(EMAlgebra::from_table(monad, FinFn::tabulate(&dom, carrier, structure)?))
    }

    /// The terminal algebra on the singleton.
    pub fn terminal(monad: &FinMonad) -> Result<EMAlgebra> {
        EMAlgebra::from_fn(monad, &FinSet::singleton(), |_| Ok(Value::unit()))
    }

    /// For an exception monad: the algebra on `carrier` sending error `i` to
    /// `points[i]`. For maybe this is a pointed set.
    pub fn pointed(monad: &FinMonad, carrier: &FinSet, points: &[usize]) -> Result<EMAlgebra> {
        let MonadKind::Exception { errors } = monad.kind() else {
            return Err(Error::invalid(format!("{} is not an exception monad", monad.name())));
        };
        if points.len() != errors.len() || points.iter().any(|&p| p >= carrier.len()) {
            return Err(Error::invalid("one base point per error, inside the carrier"));
        }
        EMAlgebra::from_fn(monad, carrier, |v| match v.as_inj() {
            Some((0, e)) => Ok(carrier.get(points[errors.index_of(e).expect("enumerated")]).clone()),
            Some((_, x)) => Ok(x.clone()),
            None => unreachable!("exception elements are injections"),
        })
    }

    /// For a writer monad over `B`: the `B`-set with action `act(b, x)`
    /// (indices into the monoid and the carrier).
    pub fn action(
        monad: &FinMonad,
        carrier: &FinSet,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<EMAlgebra> {
        let MonadKind::Writer { monoid } = monad.kind() else {
            return Err(Error::invalid(format!("{} is not a writer monad", monad.name())));
        };
        EMAlgebra::from_fn(monad, carrier, |v| {
            let [b, x] = v.as_tuple().expect("writer elements are pairs") else {
                unreachable!()
            };
            let b = monoid.elements().index_of(b).expect("enumerated");
            let x = carrier.index_of(x).expect("enumerated");
            let r = act(b, x);
            if r >= carrier.len() {
                return Err(Error::invalid(format!("action leaves the carrier at ({b}, {x})")));
            }
            Ok(carrier.get(r).clone())
        })
    }

    /// For a semimodule monad: the semiring itself, `Σ cᵢ aᵢ ↦ Σ cᵢ·aᵢ`
    /// (the free algebra on one generator).
    pub fn scalars(monad: &FinMonad) -> Result<EMAlgebra> {
        let MonadKind::Semimodule { ring, .. } = monad.kind() else {
            return Err(Error::invalid(format!("{} is not a semimodule monad", monad.name())));
        };
        let carrier = ring.carrier()?;
        EMAlgebra::from_fn(monad, &carrier, |v| {
            let terms = v.as_combo().expect("combination");
            let s = ring.sum(
                terms
                    .iter()
                    .map(|(a, c)| ring.mul(*c, a.as_atom().expect("scalar atom"))),
            );
            Ok(Value::Atom(s))
        })
    }

    pub fn monad(&self) -> &FinMonad {
        &self.monad
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// The structure map at one element of `M(carrier)`.
    pub fn apply(&self, v: &Value) -> Result<Value> {
        match &self.structure {
            Structure::Table(f) => f.eval(v),
            Structure::Free { generators } => self.monad.mult_at(generators, v),
            Structure::Lifted { law, base } => {
                let w = law.component_at(base.carrier(), v)?;
                law.functor().map_value(&w, &mut |u| base.apply(u))
            }
        }
    }

    /// The structure map as a table.
    pub fn table(&self) -> Result<FinFn> {
        match &self.structure {
            Structure::Table(f) => Ok(f.clone()),
            _ => {
                let dom = self.monad.obj(&self.carrier)?;
                FinFn::tabulate(&dom, &self.carrier, |v| self.apply(v))
            }
        }
    }
}

impl fmt::Debug for EMAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.structure {
            Structure::Table(_) => "table",
            Structure::Free { .. } => "free",
            Structure::Lifted { .. } => "lifted",
        };
        write!(f, "EMAlgebra({} on {}, {kind})", self.monad.name(), self.carrier.name())
    }
}

/// `(MX, m_X)`.
pub fn free_algebra(monad: &FinMonad, x: &FinSet) -> Result<EMAlgebra> {
    let carrier = monad.obj(x).map_err(|e| match e {
        Error::BlowUpGuard { .. } => Error::NonFinitePreserving(e.to_string()),
        e => e,
    })?;
    Ok(EMAlgebra {
        monad: monad.clone(),
        carrier,
        structure: Structure::Free { generators: x.clone() },
    })
}

/// Checks `a ∘ u = id` and `a ∘ M a = a ∘ m` on all elements.
pub fn check_em_algebra(m: &FinMonad, a: &EMAlgebra) -> Result<LawReport> {
    let mut report = LawReport::new(format!("{} algebra on {}", m.name(), a.carrier().name()));
    let x = a.carrier();
    let inst = |law| Instance {
        law,
        carrier_size: Some(x.len()),
        functions: Vec::new(),
    };
    if let Structure::Table(f) = &a.structure {
        let expected = m.obj(x)?;
        if *f.dom() != expected || f.cod() != x {
            return Err(Error::DomainMismatch(format!(
                "structure map {} → {} is not M({}) → {}",
                f.dom().name(),
                f.cod().name(),
                x.name(),
                x.name()
            )));
        }
    }
    if let Structure::Free { generators } = &a.structure {
        if a.monad.name() == m.name() {
            check_left_unit(&mut report, &inst("unit law"), m, generators, x)?;
            check_associativity(&mut report, &inst("multiplication law"), m, generators, x)?;
            return Ok(report);
        }
    }
    check_items(&mut report, &inst("unit law"), x.elements(), &|v| {
        Ok((a.apply(&m.unit_at(x, v)?)?, v.clone()))
    })?;
    let mx = m.obj(x)?;
    let mmx = m.enumerate(mx.elements())?;
    check_items(&mut report, &inst("multiplication law"), &mmx, &|v| {
        let lhs = a.apply(&m.map_with(v, &mut |w| a.apply(w))?)?;
        let rhs = a.apply(&m.mult_at(x, v)?)?;
        Ok((lhs, rhs))
    })?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_algebras_pass() {
        for name in ["maybe", "writer:s3", "powerset", "semimodule:z2"] {
            let m = FinMonad::from_name(name).unwrap();
            for n in 0..=2 {
                let a = free_algebra(&m, &FinSet::canonical(n)).unwrap();
                let r = check_em_algebra(&m, &a).unwrap();
                assert!(r.passed(), "{name} {n}: {r:?}");
            }
        }
    }

    #[test]
    fn free_algebra_carriers() {
        let e = FinSet::empty();
        assert_eq!(free_algebra(&FinMonad::maybe(), &e).unwrap().carrier().len(), 1);
        let w = FinMonad::from_name("writer:s3").unwrap();
        assert_eq!(free_algebra(&w, &e).unwrap().carrier().len(), 0);
        let z2 = FinMonad::from_name("semimodule:z2").unwrap();
        assert_eq!(free_algebra(&z2, &FinSet::singleton()).unwrap().carrier().len(), 2);
    }

    #[test]
    fn terminal_and_builtin_algebras_pass() {
        for name in ["maybe", "exception:2", "writer:z3", "powerset", "semimodule:z4"] {
            let m = FinMonad::from_name(name).unwrap();
            let t = EMAlgebra::terminal(&m).unwrap();
            assert!(check_em_algebra(&m, &t).unwrap().passed());
        }
        let z2 = FinMonad::from_name("semimodule:z2").unwrap();
        assert!(check_em_algebra(&z2, &EMAlgebra::scalars(&z2).unwrap()).unwrap().passed());
        let maybe = FinMonad::maybe();
        let p = EMAlgebra::pointed(&maybe, &FinSet::canonical(3), &[1]).unwrap();
        assert!(check_em_algebra(&maybe, &p).unwrap().passed());
        let s3 = FinMonad::from_name("writer:s3").unwrap();
        let MonadKind::Writer { monoid } = s3.kind() else { unreachable!() };
        let g = monoid.clone();
        let conj = EMAlgebra::action(&s3, monoid.elements(), |a, x| {
            g.mul(g.mul(a, x), g.inverse(a).unwrap())
        })
        .unwrap();
        assert!(check_em_algebra(&s3, &conj).unwrap().passed());
    }

    #[test]
    fn non_associative_powerset_table_fails() {
        // Singletons go to their element, everything else to 0. Then
        // {{}, {1}} flattens to {1} ↦ 1 but maps elementwise to {0, 1} ↦ 0.
        let m = FinMonad::powerset();
        let x = FinSet::canonical(2);
        let a = EMAlgebra::from_fn(&m, &x, |v| {
            let t = v.as_combo().unwrap();
            Ok(match t.len() {
                1 => t[0].0.clone(),
                _ => Value::Atom(0),
            })
        })
        .unwrap();
        let r = check_em_algebra(&m, &a).unwrap();
        assert!(r.check("unit law").unwrap().passed);
        assert!(!r.check("multiplication law").unwrap().passed);
    }

    #[test]
    fn domain_mismatch_is_reported() {
        let m = FinMonad::maybe();
        let x = FinSet::canonical(2);
        let bogus = FinFn::identity(&x);
        let a = EMAlgebra::from_table(&m, bogus);
        assert!(matches!(check_em_algebra(&m, &a), Err(Error::DomainMismatch(_))));
    }
}
