//! Terminal and initial sequences of a polynomial functor and the structures
//! a distributive law induces on them.

mod initial;
mod levels;
mod terminal;

pub use initial::{build_initial_chain, cauchy_limit_point, InitialChain};
pub use levels::{
    check_gamma_continuity, check_lemma1, check_lemma2, corrupt_level, gamma, gamma_level, level_algebras,
    LevelAlgebras, MPoint,
};
pub use terminal::{
    anamorphism, build_terminal_chain, distance, sample_level, truncate, unfold, DyadicDist, LimitPoint,
    TerminalChain,
};
