//! Commuting pairs `(T, H)`: an isomorphism `σ : HM ≅ MT` of algebras,
//! checked on canonical carriers, and a bounded search for `σ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{free_algebra, EMAlgebra};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::FunctorExpr;
use crate::laws::{Counterexample, FnWitness, LawReport, Method};
use crate::lifting::{DistLawEM, DistLawKl};
use crate::linear;
use crate::monad::{FinMonad, MonadKind};
use crate::monad_laws::{check_items, Instance};
use crate::series::{polynomial_embed, words_below, Polynomial, TruncatedSeries, Word};
use crate::value::Value;

/// The Kleisli law for `TX = 1 + A × X`, built from the strength of `M`.
pub fn kleisli_lift_poly(alphabet: &FinSet, m: &FinMonad) -> Result<DistLawKl> {
    if let MonadKind::Semimodule { ring, .. } = m.kind() {
        if !ring.is_finite() {
            return Err(Error::NonFinitePreserving(format!("semiring {} is infinite", ring.name())));
        }
    }
    Ok(DistLawKl::one_plus_a(alphabet, m))
}

/// Closed forms for `σ_X : H(MX) → M(TX)`.
#[derive(Clone, Debug)]
pub enum Sigma {
    /// `T = H = Id`.
    Identity,
    /// `T = H = B × X` over the writer monad of `B`: `(c, (d, x)) ↦ (d, (c, x))`.
    Swap,
    /// `T = 1 + A × X`, `H = M1 × X^A`:
    /// `(c, φ) ↦ c·inl(∗) + Σ_a M(x ↦ inr(a, x))(φ_a)`.
    Moore { alphabet: FinSet },
    /// `T = B + X`, `H = MB × X`: `(φ, ψ) ↦ M inl (φ) + M inr (ψ)`.
    Streams { generators: FinSet },
    /// `T = B`, `H = MB`: the identity of `MB`.
    Constant { generators: FinSet },
    /// Tables `H(M(n)) → M(T(n))` by canonical size.
    Explicit { tables: BTreeMap<usize, Vec<usize>> },
}

#[derive(Clone, Debug)]
pub struct CommutingCandidate {
    pub name: String,
    pub t: FunctorExpr,
    pub h: FunctorExpr,
    pub monad: FinMonad,
    pub sigma: Sigma,
}

fn require_biproducts(m: &FinMonad) -> Result<&crate::semiring::Semiring> {
    match m.kind() {
        MonadKind::Semimodule { ring, .. } if m.has_biproducts() => Ok(ring),
        _ => Err(Error::NotBiproductCompatible(format!(
            "{} is not a semimodule monad",
            m.name()
        ))),
    }
}

/// `T = H = Id` with `λ = id`, for any monad.
pub fn identity_pair(m: &FinMonad) -> (CommutingCandidate, DistLawEM) {
    (
        CommutingCandidate {
            name: format!("identity:{}", m.name()),
            t: FunctorExpr::Id,
            h: FunctorExpr::Id,
            monad: m.clone(),
            sigma: Sigma::Identity,
        },
        DistLawEM::identity(m),
    )
}

/// `T = H = M = B × (−)` for a writer monad; `λ` acts trivially on `B`.
pub fn writer_pair(m: &FinMonad) -> Result<(CommutingCandidate, DistLawEM)> {
    let MonadKind::Writer { monoid } = m.kind() else {
        return Err(Error::invalid(format!("{} is not a writer monad", m.name())));
    };
    let b = monoid.elements();
    let h = FunctorExpr::Prod(vec![FunctorExpr::constant(b), FunctorExpr::Id]);
    let trivial = EMAlgebra::action(m, b, |_, x| x)?;
    let law = DistLawEM::product(format!("swap:{}", m.name()), h.clone(), m, vec![trivial])?;
    Ok((
        CommutingCandidate {
            name: format!("swap:{}", m.name()),
            t: h.clone(),
            h,
            monad: m.clone(),
            sigma: Sigma::Swap,
        },
        law,
    ))
}

/// `T = 1 + A × X` and `H = M1 × X^A` for a semimodule monad, with the
/// law that acts by the semiring on `M1` and pointwise on `X^A`.
pub fn moore_pair(alphabet: &FinSet, m: &FinMonad) -> Result<(CommutingCandidate, DistLawEM)> {
    require_biproducts(m)?;
    let k = EMAlgebra::scalars(m)?;
    let h = FunctorExpr::moore(k.carrier(), alphabet);
    let law = DistLawEM::product(
        format!("moore:{}:{}letter", m.name(), alphabet.len()),
        h.clone(),
        m,
        vec![k],
    )?;
    Ok((
        CommutingCandidate {
            name: format!("moore-pair:{}:{}letter", m.name(), alphabet.len()),
            t: FunctorExpr::one_plus_a_times(alphabet),
            h,
            monad: m.clone(),
            sigma: Sigma::Moore {
                alphabet: alphabet.clone(),
            },
        },
        law,
    ))
}

/// The partner of `HX = MB × X`: `TX = B + X`.
pub fn partner_for_product(generators: &FinSet, m: &FinMonad) -> Result<(CommutingCandidate, DistLawEM)> {
    require_biproducts(m)?;
    let free = free_algebra(m, generators)?;
    let h = FunctorExpr::Prod(vec![FunctorExpr::constant(free.carrier()), FunctorExpr::Id]);
    let law = DistLawEM::product(format!("streams:{}", m.name()), h.clone(), m, vec![free])?;
    Ok((
        CommutingCandidate {
            name: format!("streams:{}:{}", m.name(), generators.len()),
            t: FunctorExpr::Coprod(vec![FunctorExpr::constant(generators), FunctorExpr::Id]),
            h,
            monad: m.clone(),
            sigma: Sigma::Streams {
                generators: generators.clone(),
            },
        },
        law,
    ))
}

/// `H` constant at the free algebra `MB`, `T` constant at `B`.
pub fn constant_pair(generators: &FinSet, m: &FinMonad) -> Result<(CommutingCandidate, DistLawEM)> {
    let free = free_algebra(m, generators)?;
    let h = FunctorExpr::constant(free.carrier());
    let law = DistLawEM::product(format!("constant:{}", m.name()), h.clone(), m, vec![free])?;
    Ok((
        CommutingCandidate {
            name: format!("constant:{}:{}", m.name(), generators.len()),
            t: FunctorExpr::constant(generators),
            h,
            monad: m.clone(),
            sigma: Sigma::Constant {
                generators: generators.clone(),
            },
        },
        law,
    ))
}

impl CommutingCandidate {
    /// `σ_X(v)` for `v ∈ H(M X)`.
    pub fn sigma_at(&self, x: &FinSet, v: &Value) -> Result<Value> {
        let m = &self.monad;
        let bad = || Error::DomainMismatch(format!("{v} is not an element of H(M({}))", x.name()));
        match &self.sigma {
            Sigma::Identity | Sigma::Constant { .. } => Ok(v.clone()),
            Sigma::Swap => match v.as_tuple() {
                Some([c, rest]) => match rest.as_tuple() {
                    Some([d, y]) => Ok(Value::Tuple(vec![d.clone(), Value::Tuple(vec![c.clone(), y.clone()])])),
                    _ => Err(bad()),
                },
                _ => Err(bad()),
            },
            Sigma::Moore { alphabet } => {
                let ring = require_biproducts(m)?;
                let (c, phi) = match v.as_tuple() {
                    Some([Value::Atom(c), Value::Func(phi)]) if phi.len() == alphabet.len() => (*c, phi),
                    _ => return Err(bad()),
                };
                let mut acc = linear::to_value(linear::normalize(ring, vec![(Value::inj(0, Value::unit()), c)]));
                for (a, mv) in alphabet.elements().iter().zip(phi) {
                    let moved = m.map_with(mv, &mut |y| Ok(Value::inj(1, Value::Tuple(vec![a.clone(), y.clone()]))))?;
                    acc = linear::add_values(ring, &acc, &moved)?;
                }
                Ok(acc)
            }
            Sigma::Streams { .. } => {
                let ring = require_biproducts(m)?;
                let (phi, psi) = match v.as_tuple() {
                    Some([phi, psi]) => (phi, psi),
                    _ => return Err(bad()),
                };
                let left = m.map_with(phi, &mut |b| Ok(Value::inj(0, b.clone())))?;
                let right = m.map_with(psi, &mut |y| Ok(Value::inj(1, y.clone())))?;
                linear::add_values(ring, &left, &right)
            }
            Sigma::Explicit { tables } => {
                let n = x.len();
                let table = tables
                    .get(&n)
                    .ok_or_else(|| Error::MissingComponent(format!("{}: no σ for carriers of size {n}", self.name)))?;
                let canon = FinSet::canonical(n);
                let dom = self.h.eval(&m.obj(&canon)?)?;
                let cod = m.obj(&self.t.eval(&canon)?)?;
                if table.len() != dom.len() || table.iter().any(|&j| j >= cod.len()) {
                    return Err(Error::invalid(format!("σ table for size {n} is not a map {} → {}", dom.len(), cod.len())));
                }
                let to = |a: &Value| crate::lifting::to_canonical(x, a);
                let c = self.h.map_value(v, &mut |w| m.map_with(w, &mut |a| to(a)))?;
                let i = dom.index_of(&c).ok_or_else(bad)?;
                let r = cod.get(table[i]).clone();
                m.map_with(&r, &mut |w| {
                    self.t
                        .map_value(w, &mut |a| crate::lifting::from_canonical(x, a))
                })
            }
        }
    }

    /// `σ_X` as a table `H(MX) → M(TX)`.
    pub fn component(&self, x: &FinSet) -> Result<FinFn> {
        let m = &self.monad;
        let dom = self.h.eval(&m.obj(x)?)?;
        let cod = m.obj(&self.t.eval(x)?)?;
        FinFn::tabulate(&dom, &cod, |v| self.sigma_at(x, v))
    }

    /// `(|H(MX)|, |M(TX)|)` for `|X| = n`, predicted.
    pub fn cardinalities(&self, n: usize) -> (Option<u128>, Option<u128>) {
        let m = &self.monad;
        let hm = m.card(n as u128).and_then(|k| self.h.card(k));
        let mt = self.t.card(n as u128).and_then(|k| m.card(k));
        (hm, mt)
    }

    /// Replaces `σ` by explicit tables tabulated up to `max_size`.
    pub fn tabulate(&self, max_size: usize) -> Result<CommutingCandidate> {
        let mut tables = BTreeMap::new();
        for n in 0..=max_size {
            tables.insert(n, self.component(&FinSet::canonical(n))?.table().to_vec());
        }
        Ok(CommutingCandidate {
            sigma: Sigma::Explicit { tables },
            ..self.clone()
        })
    }
}

fn same_setting(c: &CommutingCandidate, law: &DistLawEM) -> Result<()> {
    if law.functor() != &c.h || law.monad().name() != c.monad.name() {
        return Err(Error::DomainMismatch(format!(
            "law {} is for {} over {}, candidate uses {} over {}",
            law.name(),
            law.functor(),
            law.monad().name(),
            c.h,
            c.monad.name()
        )));
    }
    Ok(())
}

/// For every canonical `X` with `|X| ≤ max_size`: `|H(MX)| = |M(TX)|`,
/// `σ_X` is bijective, `σ` is natural, and
/// `σ ∘ H m ∘ λ_M = m_T ∘ M σ` on `M(H(MX))`.
pub fn check_commuting(c: &CommutingCandidate, law: &DistLawEM, max_size: usize) -> Result<LawReport> {
    same_setting(c, law)?;
    let mut report = LawReport::new(format!("commuting pair {}", c.name));
    for n in 0..=max_size {
        let x = FinSet::canonical(n);
        check_cardinality(&mut report, c, n);
        let sigma = c.component(&x)?;
        report.record(
            "bijective",
            Method::Exhaustive,
            sigma.dom().len() as u64,
            (!sigma.is_bijective()).then(|| {
                Counterexample::new(Some(n), format!("σ_{n}"), "not bijective".into(), "bijective".into())
            }),
        );
        for ny in 0..=max_size {
            let y = FinSet::canonical(ny);
            let sigma_y = c.component(&y)?;
            for f in FinFn::all(&x, &y) {
                let inst = Instance {
                    law: "naturality",
                    carrier_size: Some(n),
                    functions: vec![FnWitness::of(&f)],
                };
                check_items(&mut report, &inst, sigma.dom().elements(), &|v| {
                    let hmf = c.h.map_value(v, &mut |w| c.monad.map_at(&f, w))?;
                    let lhs = sigma_y.eval(&hmf)?;
                    let rhs = c.monad.map_with(&sigma.eval(v)?, &mut |w| c.t.map_value(w, &mut |a| f.eval(a)))?;
                    Ok((lhs, rhs))
                })?;
            }
        }
        let square = Square::new(c, law, &x, &sigma)?;
        let inst = Instance {
            law: "algebra square",
            carrier_size: Some(n),
            functions: Vec::new(),
        };
        check_items(&mut report, &inst, &square.items, &|phi| square.sides(phi, &|v| sigma.eval(v)))?;
    }
    Ok(report)
}

/// Records `|H(MX)| = |M(TX)|` for `|X| = n`.
pub fn check_cardinality(report: &mut LawReport, c: &CommutingCandidate, n: usize) {
    let (hm, mt) = c.cardinalities(n);
    let show = |k: Option<u128>| k.map_or_else(|| "overflow".to_string(), |k| k.to_string());
    report.record(
        "cardinality",
        Method::Exhaustive,
        1,
        (hm != mt || hm.is_none()).then(|| Counterexample::new(Some(n), format!("|X| = {n}"), show(hm), show(mt))),
    );
}

/// The data of the algebra square at one carrier.
struct Square<'a> {
    c: &'a CommutingCandidate,
    law: &'a DistLawEM,
    x: FinSet,
    mx: FinSet,
    tx: FinSet,
    items: Vec<Value>,
}

impl<'a> Square<'a> {
    fn new(c: &'a CommutingCandidate, law: &'a DistLawEM, x: &FinSet, sigma_dom: &FinFn) -> Result<Self> {
        let m = &c.monad;
        let items = m.enumerate(sigma_dom.dom().elements())?;
        Ok(Square {
            c,
            law,
            x: x.clone(),
            mx: m.obj(x)?,
            tx: c.t.eval(x)?,
            items,
        })
    }

    /// `H m (λ_{MX} Φ)`, an element of `H(MX)`.
    fn left_input(&self, phi: &Value) -> Result<Value> {
        let m = &self.c.monad;
        let w = self.law.component_at(&self.mx, phi)?;
        self.c.h.map_value(&w, &mut |u| m.mult_at(&self.x, u))
    }

    fn sides(&self, phi: &Value, sigma: &dyn Fn(&Value) -> Result<Value>) -> Result<(Value, Value)> {
        let m = &self.c.monad;
        let lhs = sigma(&self.left_input(phi)?)?;
        let rhs = m.mult_at(&self.tx, &m.map_with(phi, &mut |v| sigma(v))?)?;
        Ok((lhs, rhs))
    }
}

/// Result of a bounded search for `σ` at one carrier.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        #[serde(skip)]
        sigma: FinFn,
        table: Vec<usize>,
        candidates: u64,
    },
    /// Every bijection was ruled out: no `σ` exists at this carrier.
    Exhausted { candidates: u64 },
    /// The cap was reached first.
    Unknown { candidates: u64 },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&FinFn> {
        match self {
            SearchOutcome::Found { sigma, .. } => Some(sigma),
            _ => None,
        }
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchOutcome::Found { candidates, .. } => write!(f, "found after {candidates} candidates"),
            SearchOutcome::Exhausted { candidates } => write!(f, "none exists ({candidates} candidates)"),
            SearchOutcome::Unknown { candidates } => write!(f, "unknown: cap reached after {candidates} candidates"),
        }
    }
}

/// A constraint on `σ` involving the listed positions, checked once the
/// last of them is assigned.
struct Constraint {
    last: usize,
    kind: ConstraintKind,
}

enum ConstraintKind {
    Square(Value),
    Natural { src: usize, dst: usize, f: FinFn },
}

/// Searches for a bijection `σ_X : H(MX) → M(TX)` that makes the algebra
/// square commute and is natural for every endomap of `X`. The candidate's
/// own `σ` is tried first and orders the choices; top-level branches run in
/// parallel, each with an equal share of `cap` (counted in partial
/// assignments).
pub fn search_sigma(c: &CommutingCandidate, law: &DistLawEM, x: &FinSet, cap: u64) -> Result<SearchOutcome> {
    same_setting(c, law)?;
    search_at(c, law, x, cap, &[])
}

/// Searches carriers `0..=max_size` in order, requiring each component to
/// be natural with respect to every map to and from the components already
/// found. When that fails at a carrier but an unconstrained component
/// exists there, the outcome is `Unknown`: an earlier choice may be at
/// fault.
pub fn search_sigma_family(
    c: &CommutingCandidate,
    law: &DistLawEM,
    max_size: usize,
    cap: u64,
) -> Result<Vec<SearchOutcome>> {
    same_setting(c, law)?;
    let mut fixed: Vec<(FinSet, FinFn)> = Vec::new();
    let mut out = Vec::new();
    for n in 0..=max_size {
        let x = FinSet::canonical(n);
        let mut outcome = search_at(c, law, &x, cap, &fixed)?;
        if outcome.found().is_none() && !fixed.is_empty() {
            if let SearchOutcome::Found { candidates, .. } = search_at(c, law, &x, cap, &[])? {
                outcome = SearchOutcome::Unknown { candidates };
            }
        }
        if let Some(s) = outcome.found() {
            fixed.push((x, s.clone()));
        }
        out.push(outcome);
    }
    Ok(out)
}

/// For each position of `H(MX)`, the values allowed by naturality against
/// the fixed components; `None` when unrestricted.
fn allowed_values(
    c: &CommutingCandidate,
    x: &FinSet,
    dom: &FinSet,
    cod: &FinSet,
    fixed: &[(FinSet, FinFn)],
) -> Result<Vec<Option<Vec<bool>>>> {
    let m = &c.monad;
    let mut allowed: Vec<Option<Vec<bool>>> = vec![None; dom.len()];
    let mut restrict = |pos: usize, ok: &dyn Fn(usize) -> Result<bool>| -> Result<()> {
        let mask = allowed[pos].get_or_insert_with(|| vec![true; cod.len()]);
        for (j, slot) in mask.iter_mut().enumerate() {
            if *slot {
                *slot = ok(j)?;
            }
        }
        Ok(())
    };
    let mt = |f: &FinFn, w: &Value| m.map_with(w, &mut |t| c.t.map_value(t, &mut |a| f.eval(a)));
    let hm = |f: &FinFn, v: &Value| c.h.map_value(v, &mut |w| m.map_at(f, w));
    for (y, sigma_y) in fixed {
        for f in FinFn::all(x, y) {
            for (i, v) in dom.elements().iter().enumerate() {
                let target = sigma_y.eval(&hm(&f, v)?)?;
                restrict(i, &|j| Ok(mt(&f, cod.get(j))? == target))?;
            }
        }
        for g in FinFn::all(y, x) {
            for u in sigma_y.dom().elements() {
                let i = dom.index_of(&hm(&g, u)?).expect("in H(MX)");
                let want = cod.index_of(&mt(&g, &sigma_y.eval(u)?)?).expect("in M(TX)");
                restrict(i, &|j| Ok(j == want))?;
            }
        }
    }
    Ok(allowed)
}

fn search_at(
    c: &CommutingCandidate,
    law: &DistLawEM,
    x: &FinSet,
    cap: u64,
    fixed: &[(FinSet, FinFn)],
) -> Result<SearchOutcome> {
    let m = &c.monad;
    let dom = c.h.eval(&m.obj(x)?)?;
    let cod = m.obj(&c.t.eval(x)?)?;
    if dom.len() != cod.len() {
        return Ok(SearchOutcome::Exhausted { candidates: 0 });
    }
    let allowed = allowed_values(c, x, &dom, &cod, fixed)?;
    let permitted = |pos: usize, j: usize| allowed[pos].as_ref().map_or(true, |mask| mask[j]);
    let hint = c.component(x).ok();
    if let Some(s) = &hint {
        let within = (0..dom.len()).all(|i| permitted(i, s.apply_index(i)));
        if within && s.is_bijective() && satisfies_all(c, law, x, s)? {
            return Ok(SearchOutcome::Found {
                table: s.table().to_vec(),
                sigma: s.clone(),
                candidates: 1,
            });
        }
    }
    let square = Square::new(c, law, x, &FinFn::identity(&dom))?;
    let mut constraints = Vec::new();
    for phi in &square.items {
        let mut involved = vec![dom.index_of(&square.left_input(phi)?).expect("in H(MX)")];
        m.map_with(phi, &mut |v| {
            involved.push(dom.index_of(v).expect("in H(MX)"));
            Ok(v.clone())
        })?;
        constraints.push(Constraint {
            last: *involved.iter().max().expect("nonempty"),
            kind: ConstraintKind::Square(phi.clone()),
        });
    }
    for f in FinFn::all(x, x) {
        for (i, v) in dom.elements().iter().enumerate() {
            let j = dom
                .index_of(&c.h.map_value(v, &mut |w| m.map_at(&f, w))?)
                .expect("in H(MX)");
            constraints.push(Constraint {
                last: i.max(j),
                kind: ConstraintKind::Natural { src: i, dst: j, f: f.clone() },
            });
        }
    }
    let mut by_last: Vec<Vec<Constraint>> = (0..dom.len()).map(|_| Vec::new()).collect();
    for k in constraints {
        by_last[k.last].push(k);
    }
    let order = |pos: usize| -> Vec<usize> {
        let first = hint.as_ref().map(|s| s.apply_index(pos));
        first
            .into_iter()
            .chain((0..cod.len()).filter(move |&j| Some(j) != first))
            .filter(|&j| permitted(pos, j))
            .collect()
    };
    let searcher = Searcher {
        c,
        square: &square,
        dom: &dom,
        cod: &cod,
        by_last: &by_last,
    };
    if dom.is_empty() {
        let sigma = FinFn::new(dom.clone(), cod.clone(), Vec::new())?;
        return Ok(SearchOutcome::Found {
            table: Vec::new(),
            sigma,
            candidates: 1,
        });
    }
    let branches = order(0);
    if branches.is_empty() {
        return Ok(SearchOutcome::Exhausted { candidates: 0 });
    }
    let budget = (cap / branches.len() as u64).max(1);
    let spent = Mutex::new(vec![(0u64, false); branches.len()]);
    let found = branches
        .par_iter()
        .enumerate()
        .find_map_first(|(b, &first)| {
            let mut state = Branch {
                assignment: vec![usize::MAX; dom.len()],
                used: vec![false; cod.len()],
                nodes: 0,
                budget,
                capped: false,
            };
            let result = searcher.place(&mut state, 0, first, &order);
            spent.lock().expect("tally lock")[b] = (state.nodes, state.capped);
            match result {
                Ok(true) => Some(Ok((state.assignment, state.nodes))),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        });
    match found.transpose()? {
        Some((table, nodes)) => {
            let sigma = FinFn::new(dom.clone(), cod.clone(), table.clone())?;
            Ok(SearchOutcome::Found {
                sigma,
                table,
                candidates: nodes,
            })
        }
        None => {
            let tally = spent.into_inner().expect("tally lock");
            let total = tally.iter().map(|t| t.0).sum();
            if tally.iter().any(|t| t.1) {
                Ok(SearchOutcome::Unknown { candidates: total })
            } else {
                Ok(SearchOutcome::Exhausted { candidates: total })
            }
        }
    }
}

fn satisfies_all(c: &CommutingCandidate, law: &DistLawEM, x: &FinSet, s: &FinFn) -> Result<bool> {
    let m = &c.monad;
    let square = Square::new(c, law, x, s)?;
    for phi in &square.items {
        let (l, r) = square.sides(phi, &|v| s.eval(v))?;
        if l != r {
            return Ok(false);
        }
    }
    for f in FinFn::all(x, x) {
        for v in s.dom().elements() {
            let lhs = s.eval(&c.h.map_value(v, &mut |w| m.map_at(&f, w))?)?;
            let rhs = m.map_with(&s.eval(v)?, &mut |w| c.t.map_value(w, &mut |a| f.eval(a)))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Searcher<'a> {
    c: &'a CommutingCandidate,
    square: &'a Square<'a>,
    dom: &'a FinSet,
    cod: &'a FinSet,
    by_last: &'a [Vec<Constraint>],
}

struct Branch {
    assignment: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
    capped: bool,
}

impl Searcher<'_> {
    /// Assigns `value` at `pos` and extends; true when a full solution was
    /// reached.
    fn place(&self, st: &mut Branch, pos: usize, value: usize, order: &dyn Fn(usize) -> Vec<usize>) -> Result<bool> {
        if st.nodes >= st.budget {
            st.capped = true;
            return Ok(false);
        }
        st.nodes += 1;
        st.assignment[pos] = value;
        st.used[value] = true;
        if self.consistent(st, pos)? {
            if pos + 1 == self.dom.len() {
                return Ok(true);
            }
            for next in order(pos + 1) {
                if !st.used[next] && self.place(st, pos + 1, next, order)? {
                    return Ok(true);
                }
                if st.capped {
                    break;
                }
            }
        }
        st.used[value] = false;
        st.assignment[pos] = usize::MAX;
        Ok(false)
    }

    fn consistent(&self, st: &Branch, pos: usize) -> Result<bool> {
        let m = &self.c.monad;
        let sigma = |v: &Value| -> Result<Value> {
            let i = self.dom.index_of(v).expect("in H(MX)");
            Ok(self.cod.get(st.assignment[i]).clone())
        };
        for k in &self.by_last[pos] {
            let ok = match &k.kind {
                ConstraintKind::Square(phi) => {
                    let (l, r) = self.square.sides(phi, &sigma)?;
                    l == r
                }
                ConstraintKind::Natural { src, dst, f } => {
                    let lhs = self.cod.get(st.assignment[*dst]);
                    let rhs = m.map_with(self.cod.get(st.assignment[*src]), &mut |w| {
                        self.c.t.map_value(w, &mut |a| f.eval(a))
                    })?;
                    *lhs == rhs
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Words of length `< depth`: the initial algebra of `1 + A × X`, truncated.
pub fn initial_t_algebra_words(alphabet: &FinSet, depth: usize) -> Result<Vec<Word>> {
    words_below(alphabet.len(), depth)
}

/// The element of the free algebra on words of length `< n` closest to
/// `x`: the polynomial with `x`'s coefficients on those words, and its
/// embedding at `x`'s bound.
pub fn nearest_free_element(x: &TruncatedSeries, n: usize) -> Result<(Polynomial, TruncatedSeries)> {
    let n = n.min(x.bound());
    let terms = x.entries()?.into_iter().filter(|(w, _)| w.len() < n).collect();
    let p = Polynomial::new(x.ring(), x.alphabet(), terms)?;
    let (embedded, discarded) = polynomial_embed(&p, x.bound())?;
    debug_assert!(discarded.is_empty());
    Ok((p, embedded))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::check_distlaw_kl;
    use crate::series::series_distance;

    fn z2() -> FinMonad {
        FinMonad::from_name("semimodule:z2").unwrap()
    }

    fn one_letter() -> FinSet {
        FinSet::labeled("A", vec!["t"]).unwrap()
    }

    #[test]
    fn kleisli_lift_tables() {
        let law = kleisli_lift_poly(&one_letter(), &z2()).unwrap();
        assert!(check_distlaw_kl(&law, 2).unwrap().passed());
        let one = FinSet::canonical(1);
        let table = law.component(&one).unwrap();
        // 1 + A × M1 has 1 + 2 elements.
        assert_eq!(table.dom().len(), 3);
        let star = Value::inj(0, Value::unit());
        assert_eq!(table.eval(&star).unwrap(), Value::Combo(vec![(star.clone(), 1)]));
        let nat = FinMonad::semimodule(crate::semiring::Semiring::Natural);
        assert!(nat.is_err());
    }

    #[test]
    fn example_pairs_commute() {
        let s3 = FinMonad::from_name("writer:s3").unwrap();
        let pairs = vec![
            identity_pair(&FinMonad::maybe()),
            identity_pair(&z2()),
            writer_pair(&s3).unwrap(),
            moore_pair(&one_letter(), &z2()).unwrap(),
            partner_for_product(&FinSet::canonical(1), &z2()).unwrap(),
            constant_pair(&FinSet::canonical(2), &FinMonad::maybe()).unwrap(),
        ];
        for (c, law) in pairs {
            let r = check_commuting(&c, &law, 2).unwrap();
            assert!(r.passed(), "{}: {r:?}", c.name);
        }
    }

    #[test]
    fn moore_cardinalities() {
        let (c, _) = moore_pair(&one_letter(), &z2()).unwrap();
        for n in 0..=4 {
            let (hm, mt) = c.cardinalities(n);
            assert_eq!(hm, Some(1 << (n + 1)));
            assert_eq!(hm, mt);
        }
    }

    #[test]
    fn non_semimodule_has_no_partner() {
        let err = partner_for_product(&FinSet::canonical(1), &FinMonad::maybe()).unwrap_err();
        assert!(matches!(err, Error::NotBiproductCompatible(_)));
        assert!(moore_pair(&one_letter(), &FinMonad::maybe()).is_err());
    }

    #[test]
    fn broken_sigma_is_caught() {
        let (c, law) = moore_pair(&one_letter(), &z2()).unwrap();
        let mut t = c.tabulate(2).unwrap();
        if let Sigma::Explicit { tables } = &mut t.sigma {
            let row = tables.get_mut(&1).unwrap();
            row.swap(1, 2);
        }
        let r = check_commuting(&t, &law, 2).unwrap();
        assert!(!r.passed());
        assert!(r.check("bijective").unwrap().passed);
    }

    #[test]
    fn search_finds_canonical_and_recovers_without_hint() {
        let (c, law) = moore_pair(&one_letter(), &z2()).unwrap();
        for n in 0..=2 {
            let x = FinSet::canonical(n);
            let out = search_sigma(&c, &law, &x, 100_000).unwrap();
            assert_eq!(out.found().unwrap(), &c.component(&x).unwrap());
        }
        // Scramble the hint so the search has to work for it.
        let mut scrambled = c.tabulate(2).unwrap();
        if let Sigma::Explicit { tables } = &mut scrambled.sigma {
            tables.get_mut(&2).unwrap().reverse();
        }
        let x = FinSet::canonical(2);
        let out = search_sigma(&scrambled, &law, &x, 100_000).unwrap();
        let sigma = out.found().expect("a σ exists");
        assert!(satisfies_all(&c, &law, &x, sigma).unwrap());
        let again = search_sigma(&scrambled, &law, &x, 100_000).unwrap();
        assert_eq!(again.found(), Some(sigma));
    }

    #[test]
    fn family_search_is_natural_across_carriers() {
        let (c, law) = moore_pair(&one_letter(), &z2()).unwrap();
        let mut scrambled = c.tabulate(2).unwrap();
        if let Sigma::Explicit { tables } = &mut scrambled.sigma {
            for t in tables.values_mut() {
                t.reverse();
            }
        }
        let outcomes = search_sigma_family(&scrambled, &law, 2, 100_000).unwrap();
        let tables = outcomes
            .iter()
            .enumerate()
            .map(|(n, o)| (n, o.found().expect("σ exists").table().to_vec()))
            .collect();
        let found = CommutingCandidate {
            sigma: Sigma::Explicit { tables },
            ..c.clone()
        };
        assert!(check_commuting(&found, &law, 2).unwrap().passed());
    }

    #[test]
    fn search_reports_cap() {
        let (c, law) = moore_pair(&one_letter(), &z2()).unwrap();
        let mut scrambled = c.tabulate(2).unwrap();
        if let Sigma::Explicit { tables } = &mut scrambled.sigma {
            tables.get_mut(&2).unwrap().reverse();
        }
        let out = search_sigma(&scrambled, &law, &FinSet::canonical(2), 3).unwrap();
        assert!(matches!(out, SearchOutcome::Unknown { .. }));
    }

    #[test]
    fn words_and_density() {
        let ab = FinSet::labeled("A", vec!["a", "b"]).unwrap();
        assert_eq!(initial_t_algebra_words(&ab, 1).unwrap(), vec![Word::empty()]);
        assert_eq!(initial_t_algebra_words(&ab, 3).unwrap().len(), 7);
        let ring = crate::semiring::Semiring::from_name("z2").unwrap();
        let x = TruncatedSeries::from_fn(&ring, &ab, 5, |w| (w.len() % 2) as u64).unwrap();
        for n in 0..=5 {
            let (_, e) = nearest_free_element(&x, n).unwrap();
            assert!(series_distance(&x, &e).unwrap().within(n));
        }
    }
}
