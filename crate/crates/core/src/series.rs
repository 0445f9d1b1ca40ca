//! Formal power series in non-commuting letters, truncated to words of
//! length below a bound, and the Moore automata that generate them.
//!
//! Truncated series of bound `n` are exactly the elements of `H^n 1` for
//! `HX = K × X^A`: the representative at level `n` stores coefficients of
//! words of length `< n`.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, RngCore};
use rayon::prelude::*;

use crate::algebra::EMAlgebra;
use crate::chains::{DyadicDist, TerminalChain};
use crate::error::{Error, Result};
use crate::finset::{FinFn, FinSet};
use crate::functor::FunctorExpr;
use crate::guard;
use crate::monad::FinMonad;
use crate::semiring::Semiring;
use crate::value::Value;

/// A word over an alphabet, as letter indices. Ordered by length first,
/// then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters joined directly when every label is one character, by `.`
    /// otherwise; `ε` for the empty word.
    pub fn render(&self, alphabet: &FinSet) -> String {
        if self.0.is_empty() {
            return "ε".into();
        }
        let names: Vec<String> = self.0.iter().map(|&a| alphabet.render(alphabet.get(a))).collect();
        if letters_are_chars(alphabet) {
            names.concat()
        } else {
            names.join(".")
        }
    }

    pub fn parse(text: &str, alphabet: &FinSet) -> Result<Word> {
        let t = text.trim();
        if t.is_empty() || t == "ε" || t == "eps" {
            return Ok(Word::empty());
        }
        let pieces: Vec<String> = if letters_are_chars(alphabet) {
            t.chars().map(String::from).collect()
        } else {
            t.split('.').map(String::from).collect()
        };
        pieces
            .iter()
            .map(|p| {
                alphabet
                    .find(p)
                    .ok_or_else(|| Error::invalid(format!("{p:?} is not a letter of {}", alphabet.name())))
            })
            .collect::<Result<_>>()
            .map(Word)
    }
}

fn letters_are_chars(alphabet: &FinSet) -> bool {
    alphabet
        .elements()
        .iter()
        .all(|v| alphabet.render(v).chars().count() == 1)
}

/// `Σ_{l < n} k^l`, guarded.
fn word_count(k: usize, n: usize) -> Result<usize> {
    let total = (0..n).try_fold(0u128, |acc, l| acc.checked_add(guard::pow(k as u128, l as u128)?));
    guard::check(|| format!("words of length < {n} over {k} letters"), total)
}

/// All words of length `< n` over `k` letters, length-lexicographically.
pub fn words_below(k: usize, n: usize) -> Result<Vec<Word>> {
    let total = word_count(k, n)?;
    let mut out = Vec::with_capacity(total);
    if n == 0 {
        return Ok(out);
    }
    out.push(Word::empty());
    let mut start = 0;
    for _ in 1..n {
        let end = out.len();
        for i in start..end {
            for a in 0..k {
                let mut w = out[i].0.clone();
                w.push(a);
                out.push(Word(w));
            }
        }
        start = end;
    }
    // Each generation is appended in lexicographic order already.
    Ok(out)
}

/// Position of `w` in the length-lexicographic enumeration.
fn word_index(k: usize, w: &Word) -> usize {
    let offset: usize = (0..w.len()).map(|l| k.pow(l as u32)).sum();
    offset + w.0.iter().fold(0, |acc, &a| acc * k + a)
}

/// `HX = K × X^A` for the carrier `K` of a finite semiring.
pub fn moore_functor(ring: &Semiring, alphabet: &FinSet) -> Result<FunctorExpr> {
    Ok(FunctorExpr::moore(&ring.carrier()?, alphabet))
}

/// Coefficients of the words of length `< bound`, in length-lex order.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: Semiring,
    alphabet: FinSet,
    bound: usize,
    coeffs: Vec<u64>,
}

impl TruncatedSeries {
    pub fn new(ring: &Semiring, alphabet: &FinSet, bound: usize, coeffs: Vec<u64>) -> Result<Self> {
        let total = word_count(alphabet.len(), bound)?;
        if coeffs.len() != total {
            return Err(Error::BoundMismatch(format!(
                "{} coefficients given, {total} words of length < {bound}",
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| !ring.contains(c)) {
            return Err(Error::invalid(format!("{c} is not an element of {}", ring.name())));
        }
        Ok(TruncatedSeries {
            ring: ring.clone(),
            alphabet: alphabet.clone(),
            bound,
            coeffs,
        })
    }

    pub fn zero(ring: &Semiring, alphabet: &FinSet, bound: usize) -> Result<Self> {
        let total = word_count(alphabet.len(), bound)?;
        TruncatedSeries::new(ring, alphabet, bound, vec![ring.zero(); total])
    }

    pub fn from_fn(
        ring: &Semiring,
        alphabet: &FinSet,
        bound: usize,
        f: impl Fn(&Word) -> u64 + Sync + Send,
    ) -> Result<Self> {
        let words = words_below(alphabet.len(), bound)?;
        let coeffs = words.par_iter().map(f).collect();
        TruncatedSeries::new(ring, alphabet, bound, coeffs)
    }

    pub fn ring(&self) -> &Semiring {
        &self.ring
    }

    pub fn alphabet(&self) -> &FinSet {
        &self.alphabet
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, w: &Word) -> Option<u64> {
        if w.len() >= self.bound || w.0.iter().any(|&a| a >= self.alphabet.len()) {
            return None;
        }
        Some(self.coeffs[word_index(self.alphabet.len(), w)])
    }

    /// `(word, coefficient)` pairs in length-lex order.
    pub fn entries(&self) -> Result<Vec<(Word, u64)>> {
        Ok(words_below(self.alphabet.len(), self.bound)?
            .into_iter()
            .zip(self.coeffs.iter().copied())
            .collect())
    }

    /// Restriction to words of length `< n`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.bound {
            return Err(Error::BoundMismatch(format!("cannot extend bound {} to {n}", self.bound)));
        }
        let total = word_count(self.alphabet.len(), n)?;
        TruncatedSeries::new(&self.ring, &self.alphabet, n, self.coeffs[..total].to_vec())
    }

    /// `w ↦ s(a w)`, of bound one less.
    pub fn derivative(&self, a: usize) -> Result<Self> {
        let n = self.bound.saturating_sub(1);
        TruncatedSeries::from_fn(&self.ring, &self.alphabet, n, |w| {
            let mut aw = vec![a];
            aw.extend(&w.0);
            self.coeff(&Word(aw)).expect("shorter than the bound")
        })
    }

    /// The element of `H^bound 1` for `HX = K × X^A`.
    pub fn encode(&self) -> Value {
        self.encode_from(&Word::empty(), self.bound)
    }

    fn encode_from(&self, prefix: &Word, n: usize) -> Value {
        if n == 0 {
            return Value::unit();
        }
        let here = self.coeff(prefix).expect("prefix is short enough");
        let next = (0..self.alphabet.len())
            .map(|a| {
                let mut w = prefix.clone();
                w.0.push(a);
                self.encode_from(&w, n - 1)
            })
            .collect();
        Value::Tuple(vec![Value::Atom(here), Value::Func(next)])
    }

    /// Inverse of [`TruncatedSeries::encode`].
    pub fn decode(ring: &Semiring, alphabet: &FinSet, bound: usize, v: &Value) -> Result<Self> {
        let words = words_below(alphabet.len(), bound)?;
        let coeffs = words
            .iter()
            .map(|w| {
                let mut cur = v;
                for &a in &w.0 {
                    cur = descend(cur)?.1.get(a).ok_or_else(|| bad(v))?;
                }
                descend(cur)?.0.as_atom().ok_or_else(|| bad(v))
            })
            .collect::<Result<_>>()?;
        TruncatedSeries::new(ring, alphabet, bound, coeffs)
    }

    /// Words carrying a nonzero coefficient, rendered with their coefficient.
    pub fn support(&self) -> Result<Vec<(String, String)>> {
        Ok(self
            .entries()?
            .into_iter()
            .filter(|(_, c)| !self.ring.is_zero(*c))
            .map(|(w, c)| (w.render(&self.alphabet), self.ring.label(c)))
            .collect())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.bound != other.bound || self.alphabet != other.alphabet || self.ring.name() != other.ring.name() {
            return Err(Error::BoundMismatch(format!(
                "series of bound {} over {} letters in {} vs bound {} over {} letters in {}",
                self.bound,
                self.alphabet.len(),
                self.ring.name(),
                other.bound,
                other.alphabet.len(),
                other.ring.name()
            )));
        }
        Ok(())
    }
}

fn bad(v: &Value) -> Error {
    Error::DomainMismatch(format!("{v} does not encode a truncated series"))
}

fn descend(v: &Value) -> Result<(&Value, &[Value])> {
    match v.as_tuple() {
        Some([c, Value::Func(next)]) => Ok((c, next)),
        _ => Err(bad(v)),
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.support().map_err(|_| fmt::Error)?;
        if terms.is_empty() {
            return write!(f, "0 (mod words of length ≥ {})", self.bound);
        }
        let body: Vec<String> = terms.iter().map(|(w, c)| format!("{c}·{w}")).collect();
        write!(f, "{} (mod words of length ≥ {})", body.join(" + "), self.bound)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

/// `Σ c_i s_i`, coefficientwise.
pub fn combine(ring: &Semiring, terms: &[(TruncatedSeries, u64)], alphabet: &FinSet, bound: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::zero(ring, alphabet, bound)?;
    for (s, c) in terms {
        acc.compatible(s)?;
        for (a, b) in acc.coeffs.iter_mut().zip(&s.coeffs) {
            *a = ring.add(*a, ring.mul(*c, *b));
        }
    }
    Ok(acc)
}

/// `2^-ord(f - g)`: the length of the shortest word where the coefficients
/// differ. Identical series of bound `n` give `GtProbe(n - 1)`.
pub fn series_distance(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<DyadicDist> {
    f.compatible(g)?;
    if f.bound == 0 {
        return Err(Error::BoundMismatch("series of bound 0 carry no coefficients".into()));
    }
    let words = words_below(f.alphabet.len(), f.bound)?;
    Ok(match f.coeffs.iter().zip(&g.coeffs).position(|(a, b)| a != b) {
        Some(i) => DyadicDist::AgreeDepth(words[i].len()),
        None => DyadicDist::GtProbe(f.bound - 1),
    })
}

/// A deterministic automaton with outputs in a semiring.
#[derive(Clone, Debug)]
pub struct MooreAutomaton {
    ring: Semiring,
    alphabet: FinSet,
    states: FinSet,
    output: Vec<u64>,
    delta: Vec<Vec<usize>>,
}

impl MooreAutomaton {
    /// `delta[s][a]` is the successor of state `s` under letter `a`.
    pub fn new(
        ring: &Semiring,
        alphabet: &FinSet,
        states: &FinSet,
        output: Vec<u64>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = states.len();
        if output.len() != n || delta.len() != n {
            return Err(Error::invalid(format!("{n} states need {n} outputs and {n} transition rows")));
        }
        if let Some(c) = output.iter().find(|&&c| !ring.contains(c)) {
            return Err(Error::invalid(format!("output {c} is not in {}", ring.name())));
        }
        for (s, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() || row.iter().any(|&t| t >= n) {
                return Err(Error::invalid(format!("transition row of state {s} is not total")));
            }
        }
        Ok(MooreAutomaton {
            ring: ring.clone(),
            alphabet: alphabet.clone(),
            states: states.clone(),
            output,
            delta,
        })
    }

    /// Up to `max_states` states (at least one), uniform outputs and
    /// transitions.
    pub fn random(ring: &Semiring, alphabet: &FinSet, max_states: usize, rng: &mut dyn RngCore) -> Result<Self> {
        let q = ring
            .size()
            .ok_or_else(|| Error::invalid("random automata need a finite semiring"))?;
        let n = rng.gen_range(1..=max_states.max(1));
        let output = (0..n).map(|_| rng.gen_range(0..q)).collect();
        let delta = (0..n)
            .map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..n)).collect())
            .collect();
        MooreAutomaton::new(ring, alphabet, &FinSet::canonical(n), output, delta)
    }

    pub fn ring(&self) -> &Semiring {
        &self.ring
    }

    pub fn alphabet(&self) -> &FinSet {
        &self.alphabet
    }

    pub fn states(&self) -> &FinSet {
        &self.states
    }

    pub fn output(&self, s: usize) -> u64 {
        self.output[s]
    }

    pub fn next(&self, s: usize, a: usize) -> usize {
        self.delta[s][a]
    }

    /// `δ*(s, w)`.
    pub fn run(&self, s: usize, w: &Word) -> usize {
        w.0.iter().fold(s, |q, &a| self.delta[q][a])
    }

    /// The coalgebra `s ↦ (o(s), a ↦ δ(s, a))` for `HX = K × X^A`.
    pub fn coalgebra(&self) -> Result<(FunctorExpr, FinFn)> {
        let h = moore_functor(&self.ring, &self.alphabet)?;
        let hx = h.eval(&self.states)?;
        let xi = FinFn::tabulate(&self.states, &hx, |v| {
            let s = self.states.index_of(v).expect("enumerated");
            Ok(Value::Tuple(vec![
                Value::Atom(self.output[s]),
                Value::Func(self.delta[s].iter().map(|&t| self.states.get(t).clone()).collect()),
            ]))
        })?;
        Ok((h, xi))
    }

    /// Whether `phi` (a state map into `other`) preserves outputs and
    /// transitions.
    pub fn is_homomorphism(&self, other: &MooreAutomaton, phi: &[usize]) -> bool {
        phi.len() == self.states.len()
            && (0..self.states.len()).all(|s| {
                self.output[s] == other.output[phi[s]]
                    && (0..self.alphabet.len()).all(|a| phi[self.delta[s][a]] == other.delta[phi[s]][a])
            })
    }
}

/// The truncated behaviour of state `s`: `w ↦ o(δ*(s, w))` for `|w| < n`.
pub fn behavior(aut: &MooreAutomaton, s: usize, n: usize) -> Result<TruncatedSeries> {
    if s >= aut.states.len() {
        return Err(Error::invalid(format!("state {s} out of range")));
    }
    TruncatedSeries::from_fn(&aut.ring, &aut.alphabet, n, |w| aut.output[aut.run(s, w)])
}

/// A finite-support series: sorted length-lexicographically, nonzero
/// coefficients only.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Semiring,
    alphabet: FinSet,
    terms: Vec<(Word, u64)>,
}

impl Polynomial {
    /// Rejects repeated words and foreign letters; drops zero coefficients.
    pub fn new(ring: &Semiring, alphabet: &FinSet, mut terms: Vec<(Word, u64)>) -> Result<Self> {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in terms.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::invalid(format!(
                    "word {} occurs twice",
                    pair[0].0.render(alphabet)
                )));
            }
        }
        for (w, c) in &terms {
            if w.0.iter().any(|&a| a >= alphabet.len()) {
                return Err(Error::invalid(format!("word {w:?} uses letters outside the alphabet")));
            }
            if !ring.contains(*c) {
                return Err(Error::invalid(format!("{c} is not an element of {}", ring.name())));
            }
        }
        terms.retain(|(_, c)| !ring.is_zero(*c));
        Ok(Polynomial {
            ring: ring.clone(),
            alphabet: alphabet.clone(),
            terms,
        })
    }

    pub fn zero(ring: &Semiring, alphabet: &FinSet) -> Self {
        Polynomial {
            ring: ring.clone(),
            alphabet: alphabet.clone(),
            terms: Vec::new(),
        }
    }

    pub fn terms(&self) -> &[(Word, u64)] {
        &self.terms
    }

    pub fn ring(&self) -> &Semiring {
        &self.ring
    }

    pub fn alphabet(&self) -> &FinSet {
        &self.alphabet
    }

    pub fn coeff(&self, w: &Word) -> u64 {
        self.terms
            .binary_search_by(|(v, _)| v.cmp(w))
            .map(|i| self.terms[i].1)
            .unwrap_or_else(|_| self.ring.zero())
    }

    /// Length of the longest word in the support.
    pub fn degree(&self) -> Option<usize> {
        self.terms.last().map(|(w, _)| w.len())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut merged: Vec<(Word, u64)> = self.terms.clone();
        for (w, c) in &other.terms {
            match merged.binary_search_by(|(v, _)| v.cmp(w)) {
                Ok(i) => merged[i].1 = self.ring.add(merged[i].1, *c),
                Err(i) => merged.insert(i, (w.clone(), *c)),
            }
        }
        Polynomial::new(&self.ring, &self.alphabet, merged)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let body: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{}·{}", self.ring.label(*c), w.render(&self.alphabet)))
            .collect();
        write!(f, "{}", body.join(" + "))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Truncation to words of length `< n`, with the discarded support.
pub fn polynomial_embed(p: &Polynomial, n: usize) -> Result<(TruncatedSeries, Vec<Word>)> {
    let k = p.alphabet.len();
    let mut coeffs = vec![p.ring.zero(); word_count(k, n)?];
    let mut discarded = Vec::new();
    for (w, c) in &p.terms {
        if w.len() < n {
            coeffs[word_index(k, w)] = *c;
        } else {
            discarded.push(w.clone());
        }
    }
    Ok((TruncatedSeries::new(&p.ring, &p.alphabet, n, coeffs)?, discarded))
}

/// The polynomial with the same coefficients as `s`.
pub fn series_to_polynomial(s: &TruncatedSeries) -> Result<Polynomial> {
    Polynomial::new(&s.ring, &s.alphabet, s.entries()?)
}

/// The limit of a Cauchy sequence of polynomials, given as a finite prefix.
///
/// `modulus[r]` is an index `n_r` such that every later term agrees with
/// term `n_r` on all words of length `≤ r`. Without a modulus the least such
/// index within the prefix is used. The coefficient of a word of length `j`
/// is taken from term `n_j`.
pub fn cauchy_limit_series(terms: &[Polynomial], modulus: Option<&[usize]>, depth: usize) -> Result<TruncatedSeries> {
    let first = terms
        .first()
        .ok_or_else(|| Error::invalid("empty sequence"))?;
    let (ring, alphabet) = (&first.ring, &first.alphabet);
    if let Some(m) = modulus {
        if m.len() < depth {
            return Err(Error::invalid(format!("modulus lists {} indices, {depth} needed", m.len())));
        }
    }
    let words = words_below(alphabet.len(), depth)?;
    let agree = |a: &Polynomial, b: &Polynomial, r: usize| {
        words
            .iter()
            .take_while(|w| w.len() <= r)
            .find(|w| a.coeff(w) != b.coeff(w))
            .is_none()
    };
    let mut chosen = Vec::with_capacity(depth);
    for r in 0..depth {
        let nr = match modulus {
            Some(m) => {
                let nr = m[r];
                if nr >= terms.len() {
                    return Err(Error::invalid(format!("modulus index {nr} beyond the {} given terms", terms.len())));
                }
                if let Some(j) = (nr + 1..terms.len()).find(|&j| !agree(&terms[nr], &terms[j], r)) {
                    return Err(Error::NotCauchy { level: r, i: nr, j });
                }
                nr
            }
            None => {
                let last = terms.len() - 1;
                (0..=last)
                    .find(|&i| (i + 1..=last).all(|j| agree(&terms[i], &terms[j], r)))
                    .expect("the last term agrees with itself")
            }
        };
        chosen.push(nr);
    }
    TruncatedSeries::from_fn(ring, alphabet, depth, |w| terms[chosen[w.len()]].coeff(w))
}

/// The level-`n` structure of the semimodule monad on truncated series:
/// pointwise linear combination, on the encoded elements of `H^n 1`.
pub fn module_structure(ring: &Semiring, alphabet: &FinSet, n: usize) -> Result<EMAlgebra> {
    let m = FinMonad::semimodule(ring.clone())?;
    let chain = TerminalChain::lazy(moore_functor(ring, alphabet)?, n);
    let level = chain.level(n)?;
    EMAlgebra::from_fn(&m, &level, |v| {
        let parts = v
            .as_combo()
            .ok_or_else(|| bad(v))?
            .iter()
            .map(|(s, c)| Ok((TruncatedSeries::decode(ring, alphabet, n, s)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(combine(ring, &parts, alphabet, n)?.encode())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{build_terminal_chain, level_algebras, unfold};
    use crate::lifting::DistLawEM;

    fn z2() -> Semiring {
        Semiring::from_name("z2").unwrap()
    }

    fn t() -> FinSet {
        FinSet::labeled("A", vec!["t"]).unwrap()
    }

    fn poly(ring: &Semiring, alphabet: &FinSet, cs: &[(&str, u64)]) -> Polynomial {
        let terms = cs
            .iter()
            .map(|(w, c)| (Word::parse(w, alphabet).unwrap(), *c))
            .collect();
        Polynomial::new(ring, alphabet, terms).unwrap()
    }

    #[test]
    fn length_lex_enumeration() {
        let ab = FinSet::labeled("A", vec!["a", "b"]).unwrap();
        let ws = words_below(2, 3).unwrap();
        let rendered: Vec<String> = ws.iter().map(|w| w.render(&ab)).collect();
        assert_eq!(rendered, ["ε", "a", "b", "aa", "ab", "ba", "bb"]);
        for (i, w) in ws.iter().enumerate() {
            assert_eq!(word_index(2, w), i);
        }
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(words_below(1, 1).unwrap(), vec![Word::empty()]);
        assert_eq!(Word::parse("ba", &ab).unwrap(), Word(vec![1, 0]));
    }

    #[test]
    fn boolean_automaton_behaviour() {
        let b = Semiring::Boolean;
        let a = FinSet::labeled("A", vec!["a"]).unwrap();
        let aut = MooreAutomaton::new(&b, &a, &FinSet::canonical(2), vec![0, 1], vec![vec![1], vec![1]]).unwrap();
        let s = behavior(&aut, 0, 4).unwrap();
        assert_eq!(s.coeffs(), &[0, 1, 1, 1]);
        let constant = MooreAutomaton::new(&b, &a, &FinSet::canonical(1), vec![1], vec![vec![0]]).unwrap();
        assert_eq!(behavior(&constant, 0, 5).unwrap().coeffs(), &[1; 5]);
    }

    #[test]
    fn encoding_matches_anamorphism() {
        let ab = FinSet::labeled("A", vec!["a", "b"]).unwrap();
        let aut = MooreAutomaton::new(&z2(), &ab, &FinSet::canonical(3), vec![1, 0, 1], vec![vec![1, 2], vec![0, 0], vec![2, 1]]).unwrap();
        let (h, xi) = aut.coalgebra().unwrap();
        for s in 0..3 {
            for n in 0..=4 {
                let beh = behavior(&aut, s, n).unwrap();
                let ana = unfold(&h, &|v| xi.eval(v), &Value::Atom(s as u64), n).unwrap();
                assert_eq!(beh.encode(), ana);
                assert_eq!(TruncatedSeries::decode(&z2(), &ab, n, &ana).unwrap(), beh);
            }
        }
    }

    #[test]
    fn distance_by_order() {
        let r = z2();
        let one = polynomial_embed(&poly(&r, &t(), &[("", 1)]), 4).unwrap().0;
        let one_t = polynomial_embed(&poly(&r, &t(), &[("", 1), ("t", 1)]), 4).unwrap().0;
        assert_eq!(series_distance(&one, &one_t).unwrap(), DyadicDist::AgreeDepth(1));
        assert_eq!(series_distance(&one, &one).unwrap(), DyadicDist::GtProbe(3));
        let short = one.truncate(2).unwrap();
        assert!(matches!(series_distance(&one, &short), Err(Error::BoundMismatch(_))));
    }

    #[test]
    fn embedding_reports_discards() {
        let r = z2();
        let (s, gone) = polynomial_embed(&poly(&r, &t(), &[("", 1), ("t", 1)]), 1).unwrap();
        assert_eq!(s.coeffs(), &[1]);
        assert_eq!(gone, vec![Word(vec![0])]);
        let (z, gone) = polynomial_embed(&Polynomial::zero(&r, &t()), 3).unwrap();
        assert_eq!(z.coeffs(), &[0, 0, 0]);
        assert!(gone.is_empty());
    }

    #[test]
    fn polynomial_invariants() {
        let r = z2();
        let p = poly(&r, &t(), &[("tt", 1), ("", 0), ("t", 1)]);
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.degree(), Some(2));
        let dup = Polynomial::new(&r, &t(), vec![(Word::empty(), 1), (Word::empty(), 1)]);
        assert!(dup.is_err());
        assert_eq!(p.add(&p).unwrap(), Polynomial::zero(&r, &t()));
    }

    #[test]
    fn partial_sums_over_naturals() {
        let nat = Semiring::Natural;
        let seq: Vec<Polynomial> = (0..=10)
            .map(|n| {
                let terms = (0..n).map(|j| (Word(vec![0; j]), 1)).collect();
                Polynomial::new(&nat, &t(), terms).unwrap()
            })
            .collect();
        let lim = cauchy_limit_series(&seq, None, 8).unwrap();
        assert_eq!(lim.coeffs(), &[1; 8]);
        let modulus: Vec<usize> = (1..=8).collect();
        assert_eq!(cauchy_limit_series(&seq, Some(&modulus), 8).unwrap(), lim);
        let bad: Vec<usize> = (0..8).collect();
        assert_eq!(
            cauchy_limit_series(&seq, Some(&bad), 8).unwrap_err(),
            Error::NotCauchy { level: 0, i: 0, j: 1 }
        );
    }

    #[test]
    fn module_structure_agrees_with_level_algebras() {
        let r = z2();
        let m = FinMonad::semimodule(r.clone()).unwrap();
        let k = EMAlgebra::scalars(&m).unwrap();
        let h = moore_functor(&r, &t()).unwrap();
        let law = DistLawEM::product("moore", h.clone(), &m, vec![k]).unwrap();
        let chain = build_terminal_chain(&h, 3).unwrap();
        let levels = level_algebras(&law, &chain).unwrap();
        for n in 0..=3 {
            let a = module_structure(&r, &t(), n).unwrap();
            assert_eq!(a.table().unwrap(), levels.algebra(n).unwrap().table().unwrap());
        }
        let one = polynomial_embed(&poly(&r, &t(), &[("", 1)]), 3).unwrap().0;
        let one_t = polynomial_embed(&poly(&r, &t(), &[("", 1), ("t", 1)]), 3).unwrap().0;
        let sum = combine(&r, &[(one, 1), (one_t, 1)], &t(), 3).unwrap();
        assert_eq!(sum.coeffs(), &[0, 1, 0]);
        assert_eq!(combine(&r, &[], &t(), 3).unwrap(), TruncatedSeries::zero(&r, &t(), 3).unwrap());
    }

    #[test]
    fn homomorphic_states_share_behaviour() {
        let r = z2();
        let a = FinSet::labeled("A", vec!["a"]).unwrap();
        // Two copies of a 2-cycle folded onto one 2-cycle.
        let big = MooreAutomaton::new(&r, &a, &FinSet::canonical(4), vec![1, 0, 1, 0], vec![vec![1], vec![2], vec![3], vec![0]]).unwrap();
        let small = MooreAutomaton::new(&r, &a, &FinSet::canonical(2), vec![1, 0], vec![vec![1], vec![0]]).unwrap();
        let phi = [0, 1, 0, 1];
        assert!(big.is_homomorphism(&small, &phi));
        for s in 0..4 {
            for n in 0..6 {
                assert_eq!(behavior(&big, s, n).unwrap().coeffs(), behavior(&small, phi[s], n).unwrap().coeffs());
            }
        }
    }
}
