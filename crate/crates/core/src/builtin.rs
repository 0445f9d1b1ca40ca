//! Named bundles: laws and commuting pairs that can be referred to by a
//! short string on the command line or in documents.
//!
//! | name                         | what                                           |
//! |------------------------------|------------------------------------------------|
//! | `identity:<monad>`           | `H = Id`, `λ = id`                             |
//! | `gset-<group>-left\|conj`    | `H = G × X` over the writer monad of `G`       |
//! | `moore:<semiring>:<k>letter` | `H = K × X^A` over `K`-semimodules             |
//! | `moore-maybe:<k>letter`      | `H = 2 × X^A` over maybe, `2` pointed at `0`   |
//! | `stream:<semiring>`          | `H = K × X` over `K`-semimodules               |
//! | `kleisli:<monad>:<k>letter`  | the Kleisli law of `1 + A × X`                 |

use crate::algebra::EMAlgebra;
use crate::compair::{constant_pair, identity_pair, moore_pair, partner_for_product, writer_pair, CommutingCandidate};
use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::functor::FunctorExpr;
use crate::lifting::{DistLawEM, DistLawKl, GSetVariant};
use crate::monad::FinMonad;
use crate::monoid::Monoid;
use crate::compair::kleisli_lift_poly;

/// `k` letters: `t` when `k = 1`, otherwise `a, b, c, …`.
pub fn alphabet(k: usize) -> Result<FinSet> {
    if k == 1 {
        return FinSet::labeled("A", vec!["t"]);
    }
    if k > 26 {
        return Err(Error::invalid(format!("alphabet of {k} letters is too large")));
    }
    let letters: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    FinSet::labeled("A", letters)
}

fn letters(spec: &str) -> Result<FinSet> {
    let k = spec
        .strip_suffix("letters")
        .or_else(|| spec.strip_suffix("letter"))
        .unwrap_or(spec)
        .parse::<usize>()
        .map_err(|_| Error::invalid(format!("expected <k>letter, got {spec:?}")))?;
    alphabet(k)
}

fn size(spec: &str) -> Result<usize> {
    spec.parse()
        .map_err(|_| Error::invalid(format!("expected a size, got {spec:?}")))
}

/// The distributive law (with its functor and monad) named `name`.
pub fn em_law(name: &str) -> Result<DistLawEM> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("gset-") {
        let (group, variant) = rest
            .rsplit_once('-')
            .ok_or_else(|| Error::invalid(format!("expected gset-<group>-left|conj, got {name:?}")))?;
        let variant = match variant {
            "left" => GSetVariant::Left,
            "conj" => GSetVariant::Conjugation,
            v => return Err(Error::invalid(format!("unknown gset variant {v:?}"))),
        };
        return DistLawEM::gset(&Monoid::from_name(group)?, variant);
    }
    let parts: Vec<&str> = name.split(':').collect();
    match parts.as_slice() {
        ["identity", monad @ ..] if !monad.is_empty() => Ok(DistLawEM::identity(&FinMonad::from_name(&monad.join(":"))?)),
        ["moore", ring, k] => {
            let m = FinMonad::semimodule(crate::semiring::Semiring::from_name(ring)?)?;
            Ok(moore_pair(&letters(k)?, &m)?.1)
        }
        ["moore-maybe", k] => {
            let m = FinMonad::maybe();
            let two = FinSet::canonical(2);
            let pointed = EMAlgebra::pointed(&m, &two, &[0])?;
            let h = FunctorExpr::moore(&two, &letters(k)?);
            DistLawEM::product(name, h, &m, vec![pointed])
        }
        ["stream", ring] => {
            let m = FinMonad::semimodule(crate::semiring::Semiring::from_name(ring)?)?;
            let k = EMAlgebra::scalars(&m)?;
            let h = FunctorExpr::Prod(vec![FunctorExpr::constant(k.carrier()), FunctorExpr::Id]);
            DistLawEM::product(name, h, &m, vec![k])
        }
        _ => Err(Error::invalid(format!("unknown law bundle {name:?}"))),
    }
}

/// The Kleisli law named `kleisli:<monad>:<k>letter`.
pub fn kl_law(name: &str) -> Result<DistLawKl> {
    let name = name.trim();
    match name.strip_prefix("kleisli:").and_then(|r| r.rsplit_once(':')) {
        Some((monad, k)) => kleisli_lift_poly(&letters(k)?, &FinMonad::from_name(monad)?),
        None => match name {
            "identity" => Ok(DistLawKl::identity(&FinMonad::maybe())),
            _ => Err(Error::invalid(format!("unknown Kleisli law bundle {name:?}"))),
        },
    }
}

/// Commuting pairs with their law for `H`:
/// `identity:<monad>`, `swap:<monoid>`, `moore-pair:<semiring>:<k>letter`,
/// `streams:<monad>:<k>`, `constant:<monad>:<k>`.
pub fn candidate(name: &str) -> Result<(CommutingCandidate, DistLawEM)> {
    let name = name.trim();
    let parts: Vec<&str> = name.split(':').collect();
    let semimodule = |ring: &str| FinMonad::semimodule(crate::semiring::Semiring::from_name(ring)?);
    match parts.as_slice() {
        ["identity", monad @ ..] if !monad.is_empty() => Ok(identity_pair(&FinMonad::from_name(&monad.join(":"))?)),
        ["swap", monoid] => writer_pair(&FinMonad::writer(Monoid::from_name(monoid)?)),
        ["moore-pair", ring, k] => moore_pair(&letters(k)?, &semimodule(ring)?),
        ["streams", monad @ .., k] if !monad.is_empty() => {
            partner_for_product(&FinSet::canonical(size(k)?), &FinMonad::from_name(&monad.join(":"))?)
        }
        ["constant", monad @ .., k] if !monad.is_empty() => {
            constant_pair(&FinSet::canonical(size(k)?), &FinMonad::from_name(&monad.join(":"))?)
        }
        _ => Err(Error::invalid(format!("unknown commuting-pair bundle {name:?}"))),
    }
}
