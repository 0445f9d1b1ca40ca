//! Finite-set toolkit for coalgebras over finitary monads: distributive
//! laws, liftings of functors to algebras, terminal sequences and their
//! completions, formal power series and commuting pairs.

pub mod algebra;
pub mod builtin;
pub mod chains;
pub mod compair;
pub mod doc;
pub mod error;
pub mod finset;
pub mod functor;
pub mod guard;
pub mod laws;
pub mod lifting;
pub mod linear;
pub mod monad;
mod monad_laws;
pub mod monoid;
pub mod semiring;
pub mod series;
pub mod value;

pub use algebra::{check_em_algebra, free_algebra, EMAlgebra};
pub use error::{Error, Result};
pub use finset::{FinFn, FinSet};
pub use functor::FunctorExpr;
pub use laws::{Counterexample, LawCheck, LawReport, Method};
pub use lifting::{
    check_distlaw_em, check_distlaw_kl, diff_liftings, gset_distlaws, lift_algebra, lift_coalgebra,
    DistLawEM, DistLawKl, LiftedFunctor,
};
pub use monad::FinMonad;
pub use monad_laws::check_monad_laws;
pub use monoid::Monoid;
pub use semiring::Semiring;
pub use value::Value;
