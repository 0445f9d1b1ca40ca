//! Exhaustive monad law checking over canonical carriers.

use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::guard;
use crate::laws::{compare, first_violation, Counterexample, FnWitness, LawReport, Method};
use crate::linear::{self, generic_element, lin_map, lin_mult, symbolic_difference, LinForm, Terms};
use crate::monad::FinMonad;
use crate::value::Value;

pub(crate) type Sym = Terms<LinForm>;
pub(crate) type Concrete<'a> = &'a (dyn Fn(&Value) -> Result<(Value, Value)> + Sync);
pub(crate) type Symbolic<'a> = &'a (dyn Fn(&Sym) -> Result<(Sym, Sym)> + Sync);

/// Where a batch of instances lives, for counterexample reporting.
pub(crate) struct Instance<'a> {
    pub law: &'a str,
    pub carrier_size: Option<usize>,
    pub functions: Vec<FnWitness>,
}

impl Instance<'_> {
    fn counterexample(&self, element: &Value, index: Option<usize>, lhs: String, rhs: String) -> Counterexample {
        Counterexample {
            carrier_size: self.carrier_size,
            functions: self.functions.clone(),
            element: element.to_string(),
            element_index: index,
            lhs,
            rhs,
        }
    }
}

/// Evaluates a law on every listed element.
pub(crate) fn check_items(report: &mut LawReport, inst: &Instance<'_>, items: &[Value], law: Concrete<'_>) -> Result<()> {
    let hit = first_violation(items, |v| {
        let (l, r) = law(v)?;
        Ok(compare(l, r))
    })?;
    let cex = hit.map(|(i, m)| inst.counterexample(&items[i], Some(i), m.lhs, m.rhs));
    report.record(inst.law, Method::Exhaustive, items.len() as u64, cex);
    Ok(())
}

/// Evaluates a law on all of `M(base)`: by enumeration when that fits under
/// the guard, otherwise on a generic element when the monad is linear and a
/// symbolic form of the law is available.
pub(crate) fn check_over_m(
    report: &mut LawReport,
    inst: &Instance<'_>,
    m: &FinMonad,
    base: &[Value],
    law: Concrete<'_>,
    symbolic: Option<Symbolic<'_>>,
) -> Result<()> {
    let fits = guard::check(
        || format!("{} applied to a set of size {} ({})", m.name(), base.len(), inst.law),
        m.card(base.len() as u128),
    );
    match (fits, m.linear(), symbolic) {
        (Ok(_), _, _) => {
            let items = m.enumerate(base)?;
            check_items(report, inst, &items, law)
        }
        (Err(_), Some(ring), Some(sym)) => {
            let generic = generic_element(ring, base);
            let (l, r) = sym(&generic)?;
            let cex = match symbolic_difference(ring, &l, &r) {
                None => None,
                Some((_, i)) => {
                    let witness = linear::to_value(linear::normalize(ring, vec![(base[i].clone(), ring.one())]));
                    let (cl, cr) = law(&witness)?;
                    Some(inst.counterexample(&witness, None, cl.to_string(), cr.to_string()))
                }
            };
            report.record(inst.law, Method::GenericElement, 1, cex);
            Ok(())
        }
        (Err(e), _, _) => Err(e),
    }
}

/// Checks functoriality, naturality of unit and multiplication, both unit
/// laws and associativity on every canonical carrier of size `0..=max_size`.
///
/// Counterexamples are minimal: carriers are scanned by increasing size and
/// elements in canonical order.
pub fn check_monad_laws(m: &FinMonad, max_size: usize) -> Result<LawReport> {
    if max_size == 0 {
        return Err(Error::invalid("max_size must be at least 1"));
    }
    let mut report = LawReport::new(format!("monad {}", m.name()));
    for n in 0..=max_size {
        check_at(m, n, max_size, &mut report).map_err(|e| match e {
            Error::BlowUpGuard { .. } => Error::NonFinitePreserving(format!("{e} while checking carrier of size {n}")),
            e => e,
        })?;
    }
    Ok(report)
}

fn check_at(m: &FinMonad, n: usize, max_size: usize, report: &mut LawReport) -> Result<()> {
    let x = FinSet::canonical(n);
    let mx = m.obj(&x)?;
    let targets: Vec<FinSet> = (0..=max_size).map(FinSet::canonical).collect();
    let plain = |law| Instance {
        law,
        carrier_size: Some(n),
        functions: Vec::new(),
    };

    check_over_m(
        report,
        &plain("functor identity"),
        m,
        x.elements(),
        &|v| Ok((m.map_with(v, &mut |a| Ok(a.clone()))?, v.clone())),
        None,
    )?;

    for y in &targets {
        for f in FinFn::all(&x, y) {
            for z in &targets {
                for g in FinFn::all(y, z) {
                    let fg = f.then(&g)?;
                    let inst = Instance {
                        law: "functor composition",
                        carrier_size: Some(n),
                        functions: vec![FnWitness::of(&f), FnWitness::of(&g)],
                    };
                    check_over_m(
                        report,
                        &inst,
                        m,
                        x.elements(),
                        &|v| Ok((m.map_at(&fg, v)?, m.map_at(&g, &m.map_at(&f, v)?)?)),
                        None,
                    )?;
                }
            }
        }
    }

    for y in &targets {
        for f in FinFn::all(&x, y) {
            let inst = |law| Instance {
                law,
                carrier_size: Some(n),
                functions: vec![FnWitness::of(&f)],
            };
            check_items(report, &inst("unit naturality"), x.elements(), &|v| {
                Ok((m.map_at(&f, &m.unit_at(&x, v)?)?, m.unit_at(y, &f.eval(v)?)?))
            })?;
            let concrete = |v: &Value| -> Result<(Value, Value)> {
                let lhs = m.map_at(&f, &m.mult_at(&x, v)?)?;
                let rhs = m.mult_at(y, &m.map_with(v, &mut |w| m.map_at(&f, w))?)?;
                Ok((lhs, rhs))
            };
            let symbolic = |phi: &Sym| -> Result<(Sym, Sym)> {
                let ring = m.linear().expect("symbolic path requires a linear monad");
                let lhs = lin_map(ring, &lin_mult(ring, phi)?, &mut |a| f.eval(a))?;
                let rhs = lin_mult(ring, &lin_map(ring, phi, &mut |w| m.map_at(&f, w))?)?;
                Ok((lhs, rhs))
            };
            check_over_m(
                report,
                &inst("multiplication naturality"),
                m,
                mx.elements(),
                &concrete,
                Some(&symbolic),
            )?;
        }
    }

    check_left_unit(report, &plain("left unit"), m, &x, &mx)?;
    check_items(report, &plain("right unit"), mx.elements(), &|v| {
        let lhs = m.mult_at(&x, &m.map_with(v, &mut |a| m.unit_at(&x, a))?)?;
        Ok((lhs, v.clone()))
    })?;
    check_associativity(report, &plain("associativity"), m, &x, &mx)?;
    Ok(())
}

/// `m_X ∘ u_{MX} = id`, also the unit law of the free algebra on `X`.
pub(crate) fn check_left_unit(
    report: &mut LawReport,
    inst: &Instance<'_>,
    m: &FinMonad,
    x: &FinSet,
    mx: &FinSet,
) -> Result<()> {
    check_items(report, inst, mx.elements(), &|v| Ok((m.mult_at(x, &m.unit_at(mx, v)?)?, v.clone())))
}

/// `m_X ∘ M m_X = m_X ∘ m_{MX}`, also the multiplication law of the free
/// algebra on `X`.
pub(crate) fn check_associativity(
    report: &mut LawReport,
    inst: &Instance<'_>,
    m: &FinMonad,
    x: &FinSet,
    mx: &FinSet,
) -> Result<()> {
    let mmx = m.enumerate(mx.elements())?;
    let concrete = |v: &Value| -> Result<(Value, Value)> {
        let lhs = m.mult_at(x, &m.map_with(v, &mut |w| m.mult_at(x, w))?)?;
        let rhs = m.mult_at(x, &m.mult_at(mx, v)?)?;
        Ok((lhs, rhs))
    };
    let symbolic = |phi: &Sym| -> Result<(Sym, Sym)> {
        let ring = m.linear().expect("symbolic path requires a linear monad");
        let lhs = lin_mult(ring, &lin_map(ring, phi, &mut |w| m.mult_at(x, w))?)?;
        let rhs = lin_mult(ring, &lin_mult(ring, phi)?)?;
        Ok((lhs, rhs))
    };
    check_over_m(report, inst, m, &mmx, &concrete, Some(&symbolic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::PatchOp;

    #[test]
    fn maybe_passes_at_three() {
        let r = check_monad_laws(&FinMonad::maybe(), 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checks.len(), 7);
        assert!(r.checks.iter().all(|c| c.method == Method::Exhaustive));
    }

    #[test]
    fn writer_s3_passes_at_two() {
        let r = check_monad_laws(&FinMonad::from_name("writer:s3").unwrap(), 2).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn powerset_uses_generic_element_for_large_domains() {
        let r = check_monad_laws(&FinMonad::powerset(), 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.check("associativity").unwrap().method, Method::GenericElement);
    }

    #[test]
    fn swapped_mult_entries_are_detected() {
        let m = FinMonad::maybe();
        let x = FinSet::canonical(1);
        let a = Value::inj(1, Value::inj(1, Value::Atom(0)));
        let b = Value::inj(1, Value::inj(0, Value::Atom(0)));
        let broken = m.with_swapped_mult(&x, &a, &b).unwrap();
        let r = check_monad_laws(&broken, 2).unwrap();
        assert!(!r.passed());
        let cex = r.check("left unit").unwrap().counterexample.clone().unwrap();
        assert_eq!(cex.carrier_size, Some(1));
    }

    #[test]
    fn unsound_semirings_never_take_the_generic_path() {
        use crate::semiring::{Semiring, TableSemiring};
        // 2·(1 + 1) = 2 but 2·1 + 2·1 = 1: not distributive.
        let t = TableSemiring {
            name: "bad".into(),
            labels: vec!["0".into(), "1".into(), "2".into()],
            add: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            mul: vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]],
            zero: 0,
            one: 1,
        };
        let m = FinMonad::semimodule(Semiring::table(t).unwrap()).unwrap();
        assert!(m.linear().is_none());
        match check_monad_laws(&m, 1) {
            Ok(r) => assert!(!r.passed()),
            Err(e) => assert!(matches!(e, Error::NonFinitePreserving(_))),
        }
    }

    #[test]
    fn generic_witness_is_a_single_basis_vector() {
        let m = FinMonad::from_name("semimodule:z2").unwrap();
        assert!(m.linear().is_some());
        let base: Vec<Value> = (0..30).map(Value::Atom).collect();
        let mut report = LawReport::new("t");
        let inst = Instance {
            law: "drops atom 7",
            carrier_size: Some(30),
            functions: Vec::new(),
        };
        let drop7 = |v: &Value| v.as_atom() == Some(7);
        let concrete = |v: &Value| -> Result<(Value, Value)> {
            let kept: Vec<_> = linear::from_value(v)?.into_iter().filter(|(a, _)| !drop7(a)).collect();
            Ok((v.clone(), linear::to_value(kept)))
        };
        let symbolic = |phi: &Sym| -> Result<(Sym, Sym)> {
            let kept: Sym = phi.iter().filter(|(a, _)| !drop7(a)).cloned().collect();
            Ok((phi.clone(), kept))
        };
        check_over_m(&mut report, &inst, &m, &base, &concrete, Some(&symbolic)).unwrap();
        let c = report.check("drops atom 7").unwrap();
        assert_eq!(c.method, Method::GenericElement);
        let cex = c.counterexample.as_ref().unwrap();
        assert_eq!(cex.element, "{1.7}");
        assert_ne!(cex.lhs, cex.rhs);
    }

    #[test]
    fn unit_patch_breaks_unit_laws() {
        let m = FinMonad::powerset();
        let x = FinSet::canonical(1);
        let broken = m.with_patch(PatchOp::Unit, &x, Value::Atom(0), Value::Combo(vec![]));
        let r = check_monad_laws(&broken, 1).unwrap();
        assert!(!r.check("right unit").unwrap().passed);
    }

    #[test]
    fn zero_bound_is_rejected() {
        assert!(check_monad_laws(&FinMonad::maybe(), 0).is_err());
    }
}
