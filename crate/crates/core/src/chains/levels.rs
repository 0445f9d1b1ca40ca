//! Algebra structures `a_n` on the levels of the terminal sequence, the
//! induced structure on the limit, and the two projection lemmas.

use crate::algebra::EMAlgebra;
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::laws::{Counterexample, LawReport, Method};
use crate::lifting::DistLawEM;
use crate::monad_laws::{check_items, Instance};
use crate::value::Value;

use super::terminal::{truncate, unfold, LimitPoint, TerminalChain};

/// `a_0 = !` and `a_{n+1} = H a_n ∘ λ_{H^n 1}`.
#[derive(Clone, Debug)]
pub struct LevelAlgebras {
    law: DistLawEM,
    chain: TerminalChain,
}

pub fn level_algebras(law: &DistLawEM, chain: &TerminalChain) -> Result<LevelAlgebras> {
    if law.functor() != chain.functor() {
        return Err(Error::DomainMismatch(format!(
            "law is for {} but the chain is built from {}",
            law.functor(),
            chain.functor()
        )));
    }
    Ok(LevelAlgebras {
        law: law.clone(),
        chain: chain.clone(),
    })
}

impl LevelAlgebras {
    pub fn law(&self) -> &DistLawEM {
        &self.law
    }

    pub fn chain(&self) -> &TerminalChain {
        &self.chain
    }

    /// `a_n(v)` for `v ∈ M(H^n 1)`.
    pub fn apply(&self, n: usize, v: &Value) -> Result<Value> {
        if n == 0 {
            return Ok(Value::unit());
        }
        let below = self.chain.level(n - 1)?;
        let w = self.law.component_at(&below, v)?;
        self.law.functor().map_value(&w, &mut |u| self.apply(n - 1, u))
    }

    /// `a_n` as a table.
    pub fn algebra(&self, n: usize) -> Result<EMAlgebra> {
        let level = self.chain.level(n)?;
        EMAlgebra::from_fn(self.law.monad(), &level, |v| self.apply(n, v))
    }

    /// EM laws for every `a_n` with `n ≤ upto`, and that every connecting
    /// map `t_n` with `n < upto` is an algebra morphism.
    pub fn check(&self, upto: usize) -> Result<LawReport> {
        let m = self.law.monad();
        let mut report = LawReport::new(format!("level algebras of {}", self.law.name()));
        for n in 0..=upto {
            let a = self.algebra(n)?;
            report.merge(crate::algebra::check_em_algebra(m, &a)?.prefixed(&format!("level {n}: ")));
        }
        for n in 0..upto {
            let top = self.chain.level(n + 1)?;
            let items = m.enumerate(top.elements())?;
            let h = self.chain.functor();
            let law = format!("level {n}: connecting map is a morphism");
            let inst = Instance {
                law: &law,
                carrier_size: Some(top.len()),
                functions: Vec::new(),
            };
            check_items(&mut report, &inst, &items, &|v| {
                let lhs = truncate(h, &self.apply(n + 1, v)?, n)?;
                let rhs = self.apply(n, &m.map_with(v, &mut |u| truncate(h, u, n))?)?;
                Ok((lhs, rhs))
            })?;
        }
        Ok(report)
    }
}

/// An element of `M(L)`: a shape in `M({0, …, k-1})` whose atoms index
/// `points`.
#[derive(Clone, Debug)]
pub struct MPoint {
    pub points: Vec<LimitPoint>,
    pub shape: Value,
}

impl MPoint {
    /// `M p_n` of this element.
    pub fn project(&self, levels: &LevelAlgebras, n: usize) -> Result<Value> {
        levels.law.monad().map_with(&self.shape, &mut |i| {
            let i = i
                .as_atom()
                .filter(|&i| (i as usize) < self.points.len())
                .ok_or_else(|| Error::DomainMismatch(format!("{i} does not index a point")))?;
            self.points[i as usize].rep(n)
        })
    }
}

/// `p_n(γ(u)) = a_n(M p_n(u))`.
pub fn gamma_level(levels: &LevelAlgebras, u: &MPoint, n: usize) -> Result<Value> {
    levels.apply(n, &u.project(levels, n)?)
}

/// `γ(u)` as a point, valid as far as every point of `u` is.
pub fn gamma(levels: &LevelAlgebras, u: &MPoint) -> LimitPoint {
    let valid_to = u.points.iter().filter_map(LimitPoint::valid_to).min();
    let functor = levels.chain.functor().clone();
    let levels = levels.clone();
    let u = u.clone();
    LimitPoint::from_fn(&functor, valid_to, move |n| gamma_level(&levels, &u, n))
}

/// The coalgebra `H^d 1 → H^{d+1} 1` given by `H^d` of a point of `H1`: the
/// canonical one when `|M0| = 1`, otherwise the first element of `H1`.
fn stand_in_step(levels: &LevelAlgebras) -> Result<impl Fn(&Value, usize) -> Result<Value> + '_> {
    let m = levels.law.monad();
    let point = if m.zero_object_size()? == 1 {
        super::initial::bang(levels)?
    } else {
        let h1 = levels.chain.level(1)?;
        if h1.is_empty() {
            return Err(Error::invalid("H1 is empty; the terminal sequence is trivial"));
        }
        h1.get(0).clone()
    };
    let h = levels.chain.functor().clone();
    Ok(move |v: &Value, d: usize| push_forward(&h, &point, v, d))
}

/// `H^d(pt)` at `v ∈ H^d 1`.
pub(crate) fn push_forward(h: &crate::functor::FunctorExpr, point: &Value, v: &Value, d: usize) -> Result<Value> {
    if d == 0 {
        return Ok(point.clone());
    }
    h.map_value(v, &mut |w| push_forward(h, point, w, d - 1))
}

fn stand_in(levels: &LevelAlgebras, depth: usize) -> Result<(FinSet, Vec<Value>)> {
    let c = levels.chain.level(depth)?;
    let mc = levels.law.monad().enumerate(c.elements())?;
    Ok((c, mc))
}

fn record_levels(
    report: &mut LawReport,
    name: &str,
    carrier: usize,
    items: &[Value],
    depth: usize,
    check: &(dyn Fn(usize, &Value) -> Result<(Value, Value)> + Sync),
) -> Result<()> {
    for n in 0..=depth {
        let law = format!("{name} at level {n}");
        let inst = Instance {
            law: &law,
            carrier_size: Some(carrier),
            functions: Vec::new(),
        };
        check_items(report, &inst, items, &|u| check(n, u))?;
    }
    Ok(())
}

/// On the stand-in coalgebra `C = H^d 1`: the cone of the coalgebra
/// `λ_C ∘ Mξ` on `MC` equals `a_n ∘ M α_n` for every `n ≤ d`.
pub fn check_lemma1(law: &DistLawEM, chain: &TerminalChain, depth: usize) -> Result<LawReport> {
    let levels = level_algebras(law, chain)?;
    let m = law.monad();
    let h = chain.functor();
    let step = stand_in_step(&levels)?;
    let (c, mc) = stand_in(&levels, depth)?;
    let xi = |v: &Value| step(v, depth);
    let lifted = |u: &Value| law.component_at(&c, &m.map_with(u, &mut |v| xi(v))?);
    let mut report = LawReport::new(format!("cone on MC for {}", law.name()));
    record_levels(&mut report, "cone", c.len(), &mc, depth, &|n, u| {
        let lhs = unfold(h, &lifted, u, n)?;
        let rhs = levels.apply(n, &m.map_with(u, &mut |v| unfold(h, &xi, v, n))?)?;
        Ok((lhs, rhs))
    })?;
    Ok(report)
}

/// On the stand-in `C = H^d 1` with algebra `a_d`: every projection
/// `p_n` is a morphism of algebras, `p_n ∘ a_d = a_n ∘ M p_n`.
pub fn check_lemma2(law: &DistLawEM, chain: &TerminalChain, depth: usize) -> Result<LawReport> {
    let levels = level_algebras(law, chain)?;
    let m = law.monad();
    let h = chain.functor();
    let (c, mc) = stand_in(&levels, depth)?;
    let mut report = LawReport::new(format!("projections as morphisms for {}", law.name()));
    record_levels(&mut report, "projection", c.len(), &mc, depth, &|n, u| {
        let lhs = truncate(h, &levels.apply(depth, u)?, n)?;
        let rhs = levels.apply(n, &m.map_with(u, &mut |v| truncate(h, v, n))?)?;
        Ok((lhs, rhs))
    })?;
    Ok(report)
}

/// A copy of `law` with one entry of `λ_{H^level 1}` replaced so that
/// `a_{level+1}` changes. Returns the patched law and the corrupted input.
pub fn corrupt_level(law: &DistLawEM, chain: &TerminalChain, level: usize) -> Result<(DistLawEM, Value)> {
    let levels = level_algebras(law, chain)?;
    let m = law.monad();
    let h = chain.functor();
    let x = chain.level(level)?;
    let inputs = m.enumerate(h.eval(&x)?.elements())?;
    let outputs = h.eval(&m.obj(&x)?)?;
    let act = |w: &Value| h.map_value(w, &mut |u| levels.apply(level, u));
    for v in &inputs {
        let current = act(&law.component_at(&x, v)?)?;
        for o in outputs.elements() {
            if act(o)? != current {
                return Ok((law.with_patch(&x, v.clone(), o.clone()), v.clone()));
            }
        }
    }
    Err(Error::invalid(format!(
        "every entry of λ at level {level} yields the same structure; nothing to corrupt"
    )))
}

/// Exhaustive check that `γ` at level `n` depends only on `M p_n`.
pub fn check_gamma_continuity(levels: &LevelAlgebras, elements: &[MPoint], n: usize) -> Result<LawReport> {
    let mut report = LawReport::new("levelwise continuity of γ");
    let projected: Vec<(Value, Value)> = elements
        .iter()
        .map(|u| Ok((u.project(levels, n)?, gamma_level(levels, u, n)?)))
        .collect::<Result<_>>()?;
    let mut cex = None;
    'outer: for (i, (pu, gu)) in projected.iter().enumerate() {
        for (pv, gv) in &projected[i + 1..] {
            if pu == pv && gu != gv {
                cex = Some(Counterexample::new(None, pu.to_string(), gu.to_string(), gv.to_string()));
                break 'outer;
            }
        }
    }
    let pairs = (projected.len() * projected.len().saturating_sub(1) / 2) as u64;
    report.record(&format!("level {n}"), Method::Exhaustive, pairs, cex);
    Ok(report)
}
