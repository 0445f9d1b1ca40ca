//! JSON documents for monads, algebras, laws, automata, series and
//! commuting-pair candidates. Parse errors name the source and the JSON path
//! of the offending key.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{DeserializeOwned, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{free_algebra, EMAlgebra};
use crate::builtin;
use crate::compair::{CommutingCandidate, Sigma};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::FunctorExpr;
use crate::lifting::{DistLawEM, DistLawKl, GSetVariant};
use crate::monad::{ExplicitMonad, FinMonad};
use crate::monoid::Monoid;
use crate::semiring::{Semiring, TableSemiring};
use crate::series::{MooreAutomaton, Polynomial, TruncatedSeries, Word};

/// Parses `text` as a `T`, citing `source` and the JSON path on failure.
pub fn parse<T: DeserializeOwned>(source: &str, text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::parse(format!("{source}: {path}"), e.into_inner().to_string())
    })
}

/// Reads and parses a file.
pub fn load<T: DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    parse(&path.display().to_string(), &text)
}

/// Accepts a bare string (a builtin name) or a map, streaming the map so
/// that error paths survive.
fn str_or_map<'de, D, T, U>(d: D, on_str: fn(String) -> U, on_map: fn(T) -> U) -> std::result::Result<U, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    struct V<T, U>(fn(String) -> U, fn(T) -> U);
    impl<'de, T: Deserialize<'de>, U> Visitor<'de> for V<T, U> {
        type Value = U;
        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "a builtin name or an object")
        }
        fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<U, E> {
            Ok((self.0)(v.to_string()))
        }
        fn visit_map<A: MapAccess<'de>>(self, map: A) -> std::result::Result<U, A::Error> {
            T::deserialize(serde::de::value::MapAccessDeserializer::new(map)).map(self.1)
        }
    }
    d.deserialize_any(V(on_str, on_map))
}

macro_rules! named_or_spec {
    ($doc:ident, $spec:ty) => {
        impl<'de> Deserialize<'de> for $doc {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                str_or_map(d, $doc::Name, $doc::Spec)
            }
        }
    };
}

/// A finite set: a size (canonical `{0..n-1}`), a list of labels, or a named
/// list of labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetDoc {
    Size(usize),
    Labels(Vec<String>),
    Named { name: String, labels: Vec<String> },
}

impl SetDoc {
    pub fn build(&self, default_name: &str) -> Result<FinSet> {
        match self {
            SetDoc::Size(n) => Ok(FinSet::canonical(*n)),
            SetDoc::Labels(l) => FinSet::labeled(default_name, l.clone()),
            SetDoc::Named { name, labels } => FinSet::labeled(name.as_str(), labels.clone()),
        }
    }
}

/// A polynomial functor. `{"algebra": i}` is the constant at the carrier of
/// the `i`-th algebra of the enclosing law.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctorDoc {
    Id,
    Const(SetDoc),
    Algebra(usize),
    Prod(Vec<FunctorDoc>),
    Coprod(Vec<FunctorDoc>),
    Pow { exponent: SetDoc, body: Box<FunctorDoc> },
    Compose { outer: Box<FunctorDoc>, inner: Box<FunctorDoc> },
    Moore { outputs: Box<FunctorDoc>, alphabet: SetDoc },
}

impl FunctorDoc {
    pub fn build(&self, carriers: &[FinSet]) -> Result<FunctorExpr> {
        let all = |cs: &[FunctorDoc]| cs.iter().map(|c| c.build(carriers)).collect::<Result<Vec<_>>>();
        Ok(match self {
            FunctorDoc::Id => FunctorExpr::Id,
            FunctorDoc::Const(s) => FunctorExpr::constant(&s.build("K")?),
            FunctorDoc::Algebra(i) => FunctorExpr::constant(
                carriers
                    .get(*i)
                    .ok_or_else(|| Error::invalid(format!("no algebra number {i}")))?,
            ),
            FunctorDoc::Prod(cs) => FunctorExpr::Prod(all(cs)?),
            FunctorDoc::Coprod(cs) => FunctorExpr::Coprod(all(cs)?),
            FunctorDoc::Pow { exponent, body } => FunctorExpr::pow(&exponent.build("A")?, body.build(carriers)?),
            FunctorDoc::Compose { outer, inner } => FunctorExpr::compose(outer.build(carriers)?, inner.build(carriers)?),
            FunctorDoc::Moore { outputs, alphabet } => FunctorExpr::Prod(vec![
                outputs.build(carriers)?,
                FunctorExpr::pow(&alphabet.build("A")?, FunctorExpr::Id),
            ]),
        })
    }
}

/// A builtin monoid name (`s3`, `z4`, `and`) or a multiplication table.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum MonoidDoc {
    Name(String),
    Spec(MonoidTable),
}
named_or_spec!(MonoidDoc, MonoidTable);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidTable {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub identity: usize,
}

impl MonoidDoc {
    pub fn build(&self) -> Result<Monoid> {
        match self {
            MonoidDoc::Name(n) => Monoid::from_name(n),
            MonoidDoc::Spec(MonoidTable {
                name,
                labels,
                table,
                identity,
            }) => Monoid::new(name.as_str(), labels.clone(), table.clone(), *identity),
        }
    }
}

/// A builtin semiring name (`bool`, `z2`, `nat`, `minplus4`) or tables.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum SemiringDoc {
    Name(String),
    Spec(SemiringTables),
}
named_or_spec!(SemiringDoc, SemiringTables);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiringTables {
    pub name: String,
    pub labels: Vec<String>,
    pub add: Vec<Vec<u64>>,
    pub mul: Vec<Vec<u64>>,
    pub zero: u64,
    pub one: u64,
}

impl SemiringDoc {
    pub fn build(&self) -> Result<Semiring> {
        match self {
            SemiringDoc::Name(n) => Semiring::from_name(n),
            SemiringDoc::Spec(SemiringTables {
                name,
                labels,
                add,
                mul,
                zero,
                one,
            }) => Semiring::table(TableSemiring {
                name: name.clone(),
                labels: labels.clone(),
                add: add.clone(),
                mul: mul.clone(),
                zero: *zero,
                one: *one,
            }),
        }
    }
}

/// A builtin monad name (`maybe`, `exception:2`, `writer:s3`, `powerset`,
/// `semimodule:z4`) or a structured description.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum MonadDoc {
    Name(String),
    Spec(MonadSpec),
}
named_or_spec!(MonadDoc, MonadSpec);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MonadSpec {
    Exception { errors: SetDoc },
    Writer { monoid: MonoidDoc },
    Semimodule { semiring: SemiringDoc },
    Explicit {
        name: String,
        functor: FunctorDoc,
        unit: BTreeMap<usize, Vec<usize>>,
        mult: BTreeMap<usize, Vec<usize>>,
    },
}

impl MonadDoc {
    pub fn build(&self) -> Result<FinMonad> {
        match self {
            MonadDoc::Name(n) => FinMonad::from_name(n),
            MonadDoc::Spec(MonadSpec::Exception { errors }) => Ok(FinMonad::exception(errors.build("E")?)),
            MonadDoc::Spec(MonadSpec::Writer { monoid }) => Ok(FinMonad::writer(monoid.build()?)),
            MonadDoc::Spec(MonadSpec::Semimodule { semiring }) => FinMonad::semimodule(semiring.build()?),
            MonadDoc::Spec(MonadSpec::Explicit {
                name,
                functor,
                unit,
                mult,
            }) => FinMonad::explicit(ExplicitMonad {
                name: name.clone(),
                functor: functor.build(&[])?,
                unit: unit.clone(),
                mult: mult.clone(),
            }),
        }
    }
}

/// An algebra over the monad of the enclosing document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraDoc {
    /// The free algebra `MX`.
    Free { generators: SetDoc },
    /// The semiring acting on itself.
    Scalars,
    /// The one-point algebra.
    Terminal,
    /// For maybe/exception: the extra points go to `points`.
    Pointed { carrier: SetDoc, points: Vec<usize> },
    /// For writer monads: `action[b][x]` is `b·x`.
    Action { carrier: SetDoc, action: Vec<Vec<usize>> },
    /// `table[i]` is the image of the `i`-th element of `M(carrier)`.
    Table { carrier: SetDoc, table: Vec<usize> },
}

impl AlgebraDoc {
    pub fn build(&self, m: &FinMonad) -> Result<EMAlgebra> {
        match self {
            AlgebraDoc::Free { generators } => free_algebra(m, &generators.build("X")?),
            AlgebraDoc::Scalars => EMAlgebra::scalars(m),
            AlgebraDoc::Terminal => EMAlgebra::terminal(m),
            AlgebraDoc::Pointed { carrier, points } => EMAlgebra::pointed(m, &carrier.build("X")?, points),
            AlgebraDoc::Action { carrier, action } => {
                let x = carrier.build("X")?;
                EMAlgebra::action(m, &x, |b, i| action.get(b).and_then(|r| r.get(i)).copied().unwrap_or(usize::MAX))
            }
            AlgebraDoc::Table { carrier, table } => {
                let x = carrier.build("X")?;
                let mx = m.obj(&x)?;
                Ok(EMAlgebra::from_table(m, FinFn::new(mx, x, table.clone())?))
            }
        }
    }
}

/// A document holding one algebra together with its monad.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub monad: MonadDoc,
    pub algebra: AlgebraDoc,
}

/// A distributive law `MH → HM`: a bundle name (see [`crate::builtin`])
/// or a description.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum EmLawDoc {
    Name(String),
    Spec(EmLawSpec),
}
named_or_spec!(EmLawDoc, EmLawSpec);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum EmLawSpec {
    Identity { monad: MonadDoc },
    Product {
        #[serde(default)]
        name: Option<String>,
        monad: MonadDoc,
        functor: FunctorDoc,
        algebras: Vec<AlgebraDoc>,
    },
    Gset { group: MonoidDoc, variant: GSetVariantDoc },
    Explicit {
        name: String,
        monad: MonadDoc,
        functor: FunctorDoc,
        tables: BTreeMap<usize, Vec<usize>>,
    },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GSetVariantDoc {
    Left,
    Conj,
}

impl EmLawDoc {
    pub fn build(&self) -> Result<DistLawEM> {
        match self {
            EmLawDoc::Name(name) => builtin::em_law(name),
            EmLawDoc::Spec(spec) => spec.build(),
        }
    }
}

impl EmLawSpec {
    pub fn build(&self) -> Result<DistLawEM> {
        match self {
            EmLawSpec::Identity { monad } => Ok(DistLawEM::identity(&monad.build()?)),
            EmLawSpec::Product {
                name,
                monad,
                functor,
                algebras,
            } => {
                let m = monad.build()?;
                let algs = algebras.iter().map(|a| a.build(&m)).collect::<Result<Vec<_>>>()?;
                let carriers: Vec<FinSet> = algs.iter().map(|a| a.carrier().clone()).collect();
                let h = functor.build(&carriers)?;
                DistLawEM::product(name.clone().unwrap_or_else(|| format!("product:{h}")), h, &m, algs)
            }
            EmLawSpec::Gset { group, variant } => DistLawEM::gset(
                &group.build()?,
                match variant {
                    GSetVariantDoc::Left => GSetVariant::Left,
                    GSetVariantDoc::Conj => GSetVariant::Conjugation,
                },
            ),
            EmLawSpec::Explicit {
                name,
                monad,
                functor,
                tables,
            } => DistLawEM::explicit(name.as_str(), functor.build(&[])?, &monad.build()?, tables.clone()),
        }
    }
}

/// A Kleisli law `TM → MT`: a bundle name or a description.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum KlLawDoc {
    Name(String),
    Spec(KlLawSpec),
}
named_or_spec!(KlLawDoc, KlLawSpec);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum KlLawSpec {
    OnePlusA { monad: MonadDoc, alphabet: SetDoc },
    Explicit {
        name: String,
        monad: MonadDoc,
        functor: FunctorDoc,
        tables: BTreeMap<usize, Vec<usize>>,
    },
}

impl KlLawDoc {
    pub fn build(&self) -> Result<DistLawKl> {
        match self {
            KlLawDoc::Name(name) => builtin::kl_law(name),
            KlLawDoc::Spec(KlLawSpec::OnePlusA { monad, alphabet }) => {
                crate::compair::kleisli_lift_poly(&alphabet.build("A")?, &monad.build()?)
            }
            KlLawDoc::Spec(KlLawSpec::Explicit {
                name,
                monad,
                functor,
                tables,
            }) => DistLawKl::explicit(name.as_str(), functor.build(&[])?, &monad.build()?, tables.clone()),
        }
    }
}

/// A semiring element, as a number or a label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDoc {
    Num(u64),
    Label(String),
}

impl CoeffDoc {
    pub fn build(&self, ring: &Semiring) -> Result<u64> {
        match self {
            CoeffDoc::Num(a) => ring.parse_element(&a.to_string()),
            CoeffDoc::Label(s) => ring.parse_element(s),
        }
    }

    fn of(ring: &Semiring, a: u64) -> CoeffDoc {
        match ring {
            Semiring::Table(_) => CoeffDoc::Label(ring.label(a)),
            _ => CoeffDoc::Num(a),
        }
    }
}

/// A state, by index or by name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateRef {
    Index(usize),
    Name(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDoc {
    pub semiring: SemiringDoc,
    pub alphabet: Vec<String>,
    /// State names; defaults to `0..n-1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<String>>,
    pub output: Vec<CoeffDoc>,
    /// `delta[s][a]`, the successor of state `s` under letter `a`.
    pub delta: Vec<Vec<StateRef>>,
}

impl AutomatonDoc {
    pub fn build(&self) -> Result<MooreAutomaton> {
        let ring = self.semiring.build()?;
        let alphabet = FinSet::labeled("A", self.alphabet.clone())?;
        let states = match &self.states {
            Some(names) => FinSet::labeled("Q", names.clone())?,
            None => FinSet::canonical(self.output.len()),
        };
        let output = self.output.iter().map(|c| c.build(&ring)).collect::<Result<Vec<_>>>()?;
        let resolve = |r: &StateRef| match r {
            StateRef::Index(i) => Ok(*i),
            StateRef::Name(n) => states
                .find(n)
                .ok_or_else(|| Error::invalid(format!("unknown state {n:?}"))),
        };
        let delta = self
            .delta
            .iter()
            .map(|row| row.iter().map(resolve).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MooreAutomaton::new(&ring, &alphabet, &states, output, delta)
    }

    pub fn of(aut: &MooreAutomaton) -> AutomatonDoc {
        let n = aut.states().len();
        AutomatonDoc {
            semiring: SemiringDoc::Name(aut.ring().name()),
            alphabet: aut.alphabet().labels().map(|l| l.to_vec()).unwrap_or_default(),
            states: aut.states().labels().map(|l| l.to_vec()),
            output: (0..n).map(|s| CoeffDoc::of(aut.ring(), aut.output(s))).collect(),
            delta: (0..n)
                .map(|s| (0..aut.alphabet().len()).map(|a| StateRef::Index(aut.next(s, a))).collect())
                .collect(),
        }
    }
}

/// Word → coefficient entries, kept in the order given (length-lex when
/// produced here).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordMap(pub Vec<(String, CoeffDoc)>);

impl Serialize for WordMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

impl<'de> Deserialize<'de> for WordMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = WordMap;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a map from words to coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<WordMap, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, CoeffDoc>()? {
                    out.push((k, v));
                }
                Ok(WordMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

impl WordMap {
    fn terms(&self, ring: &Semiring, alphabet: &FinSet) -> Result<Vec<(Word, u64)>> {
        self.0
            .iter()
            .map(|(w, c)| Ok((Word::parse(w, alphabet)?, c.build(ring)?)))
            .collect()
    }
}

/// A truncated series: coefficients on words of length `< bound`; words
/// left out have coefficient zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDoc {
    pub semiring: SemiringDoc,
    pub alphabet: Vec<String>,
    pub bound: usize,
    pub coeffs: WordMap,
}

impl SeriesDoc {
    pub fn build(&self) -> Result<TruncatedSeries> {
        let ring = self.semiring.build()?;
        let alphabet = FinSet::labeled("A", self.alphabet.clone())?;
        let terms = self.coeffs.terms(&ring, &alphabet)?;
        if let Some((w, _)) = terms.iter().find(|(w, _)| w.len() >= self.bound) {
            return Err(Error::BoundMismatch(format!(
                "word {} is not shorter than the bound {}",
                w.render(&alphabet),
                self.bound
            )));
        }
        let p = Polynomial::new(&ring, &alphabet, terms)?;
        Ok(crate::series::polynomial_embed(&p, self.bound)?.0)
    }

    /// Nonzero coefficients only, words in length-lex order.
    pub fn of(s: &TruncatedSeries) -> Result<SeriesDoc> {
        let entries = s.entries()?;
        Ok(SeriesDoc {
            semiring: SemiringDoc::Name(s.ring().name()),
            alphabet: s.alphabet().labels().map(|l| l.to_vec()).unwrap_or_default(),
            bound: s.bound(),
            coeffs: WordMap(
                entries
                    .into_iter()
                    .filter(|(_, c)| !s.ring().is_zero(*c))
                    .map(|(w, c)| (w.render(s.alphabet()), CoeffDoc::of(s.ring(), c)))
                    .collect(),
            ),
        })
    }
}

/// A sequence of polynomials, with an optional modulus, for `limit`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolySequenceDoc {
    pub semiring: SemiringDoc,
    pub alphabet: Vec<String>,
    pub terms: Vec<WordMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<usize>>,
}

impl PolySequenceDoc {
    pub fn build(&self) -> Result<Vec<Polynomial>> {
        let ring = self.semiring.build()?;
        let alphabet = FinSet::labeled("A", self.alphabet.clone())?;
        self.terms
            .iter()
            .map(|t| Polynomial::new(&ring, &alphabet, t.terms(&ring, &alphabet)?))
            .collect()
    }
}

/// A commuting-pair candidate: `T`, `H`, the monad, the law for `H` and
/// optionally `σ` tables per canonical size.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum CandidateDoc {
    Name(String),
    Spec(CandidateSpec),
}
named_or_spec!(CandidateDoc, CandidateSpec);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub t: FunctorDoc,
    pub law: EmLawDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<BTreeMap<usize, Vec<usize>>>,
}

impl CandidateDoc {
    pub fn build(&self) -> Result<(CommutingCandidate, DistLawEM)> {
        match self {
            CandidateDoc::Name(name) => builtin::candidate(name),
            CandidateDoc::Spec(spec) => {
                let law = spec.law.build()?;
                let c = CommutingCandidate {
                    name: spec.name.clone().unwrap_or_else(|| law.name().to_string()),
                    t: spec.t.build(&[])?,
                    h: law.functor().clone(),
                    monad: law.monad().clone(),
                    sigma: Sigma::Explicit {
                        tables: spec.sigma.clone().unwrap_or_default(),
                    },
                };
                Ok((c, law))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::check_distlaw_em;

    #[test]
    fn product_law_document() {
        let text = r#"{"product": {
            "monad": "maybe",
            "functor": {"prod": [{"algebra": 0}, "id"]},
            "algebras": [{"pointed": {"carrier": 2, "points": [0]}}]
        }}"#;
        let law: EmLawDoc = parse("law.json", text).unwrap();
        let law = law.build().unwrap();
        assert!(check_distlaw_em(&law, 2).unwrap().passed());
    }

    #[test]
    fn errors_cite_path() {
        let text = r#"{"product": {"monad": "maybe", "functor": {"prod": ["id", {"cnst": 2}]}, "algebras": []}}"#;
        match parse::<EmLawDoc>("law.json", text).unwrap_err() {
            Error::Parse { path, message } => {
                assert!(path.starts_with("law.json: product.functor.prod[1]"), "{path}");
                assert!(message.contains("cnst"), "{message}");
            }
            e => panic!("{e}"),
        }
        let bad = r#"{"semiring": "bool", "alphabet": ["a"], "output": [1], "delta": [[0]], "extra": 1}"#;
        let err = parse::<AutomatonDoc>("aut.json", bad).unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn automaton_and_series_round_trip() {
        let text = r#"{"semiring": "bool", "alphabet": ["a", "b"], "states": ["p", "q"],
                       "output": [0, 1], "delta": [["q", "p"], [1, 1]]}"#;
        let aut = parse::<AutomatonDoc>("aut.json", text).unwrap().build().unwrap();
        let s = crate::series::behavior(&aut, 0, 3).unwrap();
        let doc = SeriesDoc::of(&s).unwrap();
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(json, r#"{"semiring":"bool","alphabet":["a","b"],"bound":3,"coeffs":{"a":1,"aa":1,"ab":1,"ba":1}}"#);
        let back = parse::<SeriesDoc>("s.json", &json).unwrap().build().unwrap();
        assert_eq!(back, s);
        let again = parse::<AutomatonDoc>("a", &serde_json::to_string(&AutomatonDoc::of(&aut)).unwrap()).unwrap();
        assert_eq!(again.build().unwrap().output(1), 1);
    }

    #[test]
    fn candidate_document_without_sigma() {
        let text = r#"{"t": {"coprod": [{"const": 1}, {"prod": [{"const": ["t"]}, "id"]}]},
                       "law": "moore:z2:1letter"}"#;
        let (c, law) = parse::<CandidateDoc>("c.json", text).unwrap().build().unwrap();
        let x = FinSet::canonical(1);
        assert!(c.component(&x).is_err());
        let out = crate::compair::search_sigma(&c, &law, &x, 10_000).unwrap();
        assert!(out.found().is_some());
    }
}
