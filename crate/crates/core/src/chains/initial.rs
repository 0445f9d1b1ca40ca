//! The initial sequence `M0 → HM0 → …` under `M0 ≅ 1`, its comparison map
//! into the limit, and the density maps `h_n`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::FinFn;
use crate::laws::{FnWitness, LawReport};
use crate::lifting::DistLawEM;
use crate::monad_laws::{check_items, Instance};
use crate::value::Value;

use super::levels::{level_algebras, push_forward, LevelAlgebras};
use super::terminal::{truncate, LimitPoint, TerminalChain};

/// `!: 1 → H1`, the unique algebra map out of `M0 = 1`.
pub(crate) fn bang(levels: &LevelAlgebras) -> Result<Value> {
    let m = levels.law().monad();
    let zero = m.enumerate(&[])?;
    if zero.len() != 1 {
        return Err(Error::ZeroObjectViolation(zero.len()));
    }
    let image = m.map_with(&zero[0], &mut |v| {
        Err(Error::invalid(format!("{v} cannot occur in M(∅)")))
    })?;
    levels.apply(1, &image)
}

#[derive(Clone, Debug)]
pub struct InitialChain {
    levels: LevelAlgebras,
    bang: Value,
}

/// Fails with [`Error::ZeroObjectViolation`] unless the free algebra on no
/// generators is a singleton.
pub fn build_initial_chain(law: &DistLawEM, chain: &TerminalChain) -> Result<InitialChain> {
    let size = law.monad().zero_object_size()?;
    if size != 1 {
        return Err(Error::ZeroObjectViolation(size));
    }
    let levels = level_algebras(law, chain)?;
    let bang = bang(&levels)?;
    Ok(InitialChain { levels, bang })
}

impl InitialChain {
    pub fn levels(&self) -> &LevelAlgebras {
        &self.levels
    }

    pub fn chain(&self) -> &TerminalChain {
        self.levels.chain()
    }

    /// The image of `!` in `H1`.
    pub fn bang(&self) -> &Value {
        &self.bang
    }

    /// `H^n ! (v)` for `v ∈ H^n 1`.
    pub fn forward(&self, v: &Value, n: usize) -> Result<Value> {
        push_forward(self.chain().functor(), &self.bang, v, n)
    }

    /// `H^n !` as a table.
    pub fn forward_map(&self, n: usize) -> Result<FinFn> {
        let dom = self.chain().level(n)?;
        let cod = self.chain().level(n + 1)?;
        FinFn::tabulate(&dom, &cod, |v| self.forward(v, n))
    }

    /// `f(i_n(x))`: truncations below `n`, forward images above.
    pub fn colim_to_lim(&self, x: &Value, n: usize) -> LimitPoint {
        let this = self.clone();
        let x = x.clone();
        LimitPoint::from_fn(self.chain().functor(), None, move |m| {
            if m <= n {
                return truncate(this.chain().functor(), &x, m);
            }
            (n..m).try_fold(x.clone(), |v, k| this.forward(&v, k))
        })
    }

    /// `h_n(x) = f ∘ i_{n+1} ∘ H^n ! ∘ p_n (x)`.
    pub fn density_map(&self, x: &LimitPoint, n: usize) -> Result<LimitPoint> {
        let p = x.rep(n)?;
        Ok(self.colim_to_lim(&self.forward(&p, n)?, n + 1))
    }

    /// For every `n ≤ upto`: `t_n ∘ H^n ! = id`, `H^n !` is injective and
    /// `p_n ∘ f ∘ i_n = id`.
    pub fn check_splitting(&self, upto: usize) -> Result<LawReport> {
        let mut report = LawReport::new("splitting of the initial sequence");
        let h = self.chain().functor();
        for n in 0..=upto {
            let level = self.chain().level(n)?;
            let fwd = self.forward_map(n)?;
            let retraction = format!("level {n}: retraction");
            let inst = Instance {
                law: &retraction,
                carrier_size: Some(level.len()),
                functions: vec![FnWitness::of(&fwd)],
            };
            check_items(&mut report, &inst, level.elements(), &|v| {
                Ok((truncate(h, &fwd.eval(v)?, n)?, v.clone()))
            })?;
            let comparison = format!("level {n}: comparison map");
            let inst = Instance {
                law: &comparison,
                carrier_size: Some(level.len()),
                functions: Vec::new(),
            };
            check_items(&mut report, &inst, level.elements(), &|v| {
                Ok((self.colim_to_lim(v, n).rep(n)?, v.clone()))
            })?;
            report.record(
                &format!("level {n}: forward map injective"),
                crate::laws::Method::Exhaustive,
                level.len() as u64,
                (!fwd.is_injective()).then(|| {
                    crate::laws::Counterexample::new(Some(level.len()), format!("H^{n}!"), "not injective".into(), "injective".into())
                }),
            );
        }
        Ok(report)
    }
}

/// The limit of `seq` when consecutive terms agree: `seq(i)` and `seq(j)`
/// must share the representative at level `i` for `i < j ≤ depth`. The
/// result has `rep(n) = rep_{seq(n)}(n)`.
pub fn cauchy_limit_point(seq: &dyn Fn(usize) -> Result<LimitPoint>, depth: usize) -> Result<LimitPoint> {
    let points: Vec<LimitPoint> = (0..=depth).map(seq).collect::<Result<_>>()?;
    for i in 0..depth {
        let ri = points[i].rep(i)?;
        for (j, pj) in points.iter().enumerate().skip(i + 1) {
            if pj.rep(i)? != ri {
                return Err(Error::NotCauchy { level: i, i, j });
            }
        }
    }
    let functor = points[0].functor().clone();
    let points = Arc::new(points);
    Ok(LimitPoint::from_fn(&functor, Some(depth), move |n| points[n].rep(n)))
}
