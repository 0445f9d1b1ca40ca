//! Semirings with `u64`-coded elements.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::finset::FinSet;
use crate::laws::{Counterexample, LawReport, Method};

/// A semiring `(k, +, ·, 0, 1)`: `+` a commutative monoid, `·` a monoid,
/// distributive, with `0` absorbing. Multiplication need not commute.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Semiring {
    /// `{0, 1}` with or/and.
    Boolean,
    /// Integers modulo `m ≥ 1`.
    ZMod(u64),
    /// Natural numbers; operations saturate at `u64::MAX`, which is never
    /// reached by the sampled checks.
    Natural,
    /// `{0, ..., cap} ∪ {∞}` with `min` as addition and `+` as
    /// multiplication; sums above `cap` become `∞` (coded `cap + 1`).
    MinPlus { cap: u64 },
    Table(Arc<TableSemiring>),
}

/// A finite semiring given by operation tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableSemiring {
    pub name: String,
    pub labels: Vec<String>,
    pub add: Vec<Vec<u64>>,
    pub mul: Vec<Vec<u64>>,
    pub zero: u64,
    pub one: u64,
}

impl Semiring {
    /// Parses `bool`, `z<m>`, `nat`, `minplus<cap>` (or `minplus:<cap>`).
    pub fn from_name(name: &str) -> Result<Semiring> {
        let n = name.trim().to_ascii_lowercase();
        let bad = || Error::invalid(format!("unknown semiring {name:?}"));
        match n.as_str() {
            "bool" | "boolean" | "b" => return Ok(Semiring::Boolean),
            "nat" | "natural" | "n" => return Ok(Semiring::Natural),
            _ => {}
        }
        if let Some(rest) = n.strip_prefix("minplus") {
            let cap = rest.trim_start_matches(':').parse::<u64>().map_err(|_| bad())?;
            if cap >= u64::MAX - 1 {
                return Err(bad());
            }
            return Ok(Semiring::MinPlus { cap });
        }
        if let Some(rest) = n.strip_prefix('z') {
            let m = rest.trim_start_matches(['/', ':']).parse::<u64>().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            return Ok(Semiring::ZMod(m));
        }
        Err(bad())
    }

    pub fn table(t: TableSemiring) -> Result<Semiring> {
        let n = t.labels.len();
        let ok_table = |tab: &Vec<Vec<u64>>| {
            tab.len() == n && tab.iter().all(|row| row.len() == n && row.iter().all(|&v| (v as usize) < n))
        };
        if n == 0 || !ok_table(&t.add) || !ok_table(&t.mul) || t.zero as usize >= n || t.one as usize >= n {
            return Err(Error::invalid(format!("malformed semiring tables for {}", t.name)));
        }
        Ok(Semiring::Table(Arc::new(t)))
    }

    pub fn name(&self) -> String {
        match self {
            Semiring::Boolean => "bool".into(),
            Semiring::ZMod(m) => format!("z{m}"),
            Semiring::Natural => "nat".into(),
            Semiring::MinPlus { cap } => format!("minplus{cap}"),
            Semiring::Table(t) => t.name.clone(),
        }
    }

    /// Number of elements; `None` for ℕ.
    pub fn size(&self) -> Option<u64> {
        match self {
            Semiring::Boolean => Some(2),
            Semiring::ZMod(m) => Some(*m),
            Semiring::Natural => None,
            Semiring::MinPlus { cap } => Some(cap + 2),
            Semiring::Table(t) => Some(t.labels.len() as u64),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.size().map_or(true, |n| a < n)
    }

    pub fn zero(&self) -> u64 {
        match self {
            Semiring::MinPlus { cap } => cap + 1,
            Semiring::Table(t) => t.zero,
            _ => 0,
        }
    }

    pub fn one(&self) -> u64 {
        match self {
            Semiring::ZMod(1) => 0,
            Semiring::MinPlus { .. } => 0,
            Semiring::Table(t) => t.one,
            _ => 1,
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            Semiring::Boolean => a | b,
            Semiring::ZMod(m) => ((a as u128 + b as u128) % *m as u128) as u64,
            Semiring::Natural => a.saturating_add(b),
            Semiring::MinPlus { .. } => a.min(b),
            Semiring::Table(t) => t.add[a as usize][b as usize],
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            Semiring::Boolean => a & b,
            Semiring::ZMod(m) => ((a as u128 * b as u128) % *m as u128) as u64,
            Semiring::Natural => a.saturating_mul(b),
            Semiring::MinPlus { cap } => {
                let inf = cap + 1;
                if a >= inf || b >= inf || a + b > *cap {
                    inf
                } else {
                    a + b
                }
            }
            Semiring::Table(t) => t.mul[a as usize][b as usize],
        }
    }

    pub fn is_zero(&self, a: u64) -> bool {
        a == self.zero()
    }

    pub fn sum<I: IntoIterator<Item = u64>>(&self, it: I) -> u64 {
        it.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    pub fn elements(&self) -> Option<Vec<u64>> {
        self.size().map(|n| (0..n).collect())
    }

    pub fn label(&self, a: u64) -> String {
        match self {
            Semiring::MinPlus { cap } if a > *cap => "inf".into(),
            Semiring::Table(t) => t.labels.get(a as usize).cloned().unwrap_or_else(|| a.to_string()),
            _ => a.to_string(),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<u64> {
        let t = text.trim();
        if let Semiring::Table(tab) = self {
            if let Some(i) = tab.labels.iter().position(|l| l == t) {
                return Ok(i as u64);
            }
        }
        if let Semiring::MinPlus { cap } = self {
            if t == "inf" || t == "∞" {
                return Ok(cap + 1);
            }
        }
        let a = t
            .parse::<u64>()
            .map_err(|_| Error::invalid(format!("{text:?} is not an element of {}", self.name())))?;
        if !self.contains(a) {
            return Err(Error::invalid(format!("{a} is not an element of {}", self.name())));
        }
        Ok(a)
    }

    /// The carrier as a labelled set of atoms; fails for ℕ.
    pub fn carrier(&self) -> Result<FinSet> {
        let n = self.size().ok_or_else(|| {
            Error::NonFinitePreserving(format!("semiring {} is infinite", self.name()))
        })?;
        FinSet::labeled(self.name(), (0..n).map(|a| self.label(a)).collect())
    }

    /// Checks the semiring axioms: exhaustively over all triples when finite,
    /// on `samples` seeded random triples from `0..1000` otherwise.
    pub fn check_axioms(&self, seed: u64, samples: usize) -> LawReport {
        let mut report = LawReport::new(format!("semiring {}", self.name()));
        let (triples, method): (Vec<(u64, u64, u64)>, Method) = match self.size() {
            Some(n) if n <= 64 => {
                let mut v = Vec::with_capacity((n * n * n) as usize);
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            v.push((a, b, c));
                        }
                    }
                }
                (v, Method::Exhaustive)
            }
            Some(n) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let v = (0..samples)
                    .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                    .collect();
                (v, Method::Sampled)
            }
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let v = (0..samples)
                    .map(|_| (rng.gen_range(0..1000), rng.gen_range(0..1000), rng.gen_range(0..1000)))
                    .collect();
                (v, Method::Sampled)
            }
        };
        let (z, o) = (self.zero(), self.one());
        type Law<'a> = (&'a str, Box<dyn Fn(u64, u64, u64) -> (u64, u64) + 'a>);
        let laws: Vec<Law> = vec![
            ("add associative", Box::new(|a, b, c| (self.add(self.add(a, b), c), self.add(a, self.add(b, c))))),
            ("add commutative", Box::new(|a, b, _| (self.add(a, b), self.add(b, a)))),
            ("add unit", Box::new(|a, _, _| (self.add(a, z), a))),
            ("mul associative", Box::new(|a, b, c| (self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c))))),
            ("mul left unit", Box::new(|a, _, _| (self.mul(o, a), a))),
            ("mul right unit", Box::new(|a, _, _| (self.mul(a, o), a))),
            ("left distributive", Box::new(|a, b, c| (self.mul(a, self.add(b, c)), self.add(self.mul(a, b), self.mul(a, c))))),
            ("right distributive", Box::new(|a, b, c| (self.mul(self.add(a, b), c), self.add(self.mul(a, c), self.mul(b, c))))),
            ("zero annihilates", Box::new(|a, _, _| (self.add(self.mul(z, a), self.mul(a, z)), z))),
        ];
        for (name, law) in &laws {
            let cex = triples.iter().find_map(|&(a, b, c)| {
                let (l, r) = law(a, b, c);
                (l != r).then(|| {
                    Counterexample::new(
                        None,
                        format!("({}, {}, {})", self.label(a), self.label(b), self.label(c)),
                        self.label(l),
                        self.label(r),
                    )
                })
            });
            report.record(name, method, triples.len() as u64, cex);
        }
        report
    }

    /// Whether multiplication commutes (exhaustive for finite carriers up to
    /// 64 elements, assumed for the built-in infinite/large ones).
    pub fn mul_commutative(&self) -> bool {
        match self {
            Semiring::Table(t) => {
                let n = t.labels.len() as u64;
                (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
            }
            _ => true,
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Debug for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Semiring({})", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_semirings_satisfy_axioms() {
        for s in ["bool", "z2", "z4", "z6", "minplus5", "nat"] {
            let k = Semiring::from_name(s).unwrap();
            let r = k.check_axioms(7, 500);
            assert!(r.passed(), "{s}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn broken_table_is_caught() {
        // Addition that is not associative: x + y = 1 unless both are 0.
        let t = TableSemiring {
            name: "bad".into(),
            labels: vec!["0".into(), "1".into(), "2".into()],
            add: vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 1]],
            mul: vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]],
            zero: 0,
            one: 1,
        };
        let k = Semiring::table(t).unwrap();
        assert!(!k.check_axioms(0, 0).passed());
    }

    #[test]
    fn min_plus_saturates_to_infinity() {
        let k = Semiring::from_name("minplus3").unwrap();
        assert_eq!(k.mul(2, 2), 4);
        assert_eq!(k.label(4), "inf");
        assert_eq!(k.add(1, 4), 1);
        assert_eq!(k.zero(), 4);
    }

    #[test]
    fn names_round_trip() {
        for s in ["bool", "z3", "nat", "minplus2"] {
            assert_eq!(Semiring::from_name(s).unwrap().name(), s);
        }
        assert!(Semiring::from_name("z0").is_err());
        assert!(Semiring::from_name("reals").is_err());
    }
}
