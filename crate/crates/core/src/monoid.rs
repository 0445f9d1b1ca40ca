use std::fmt;

use crate::error::{Error, Result};
use crate::finset::FinSet;

/// A finite monoid given by its multiplication table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monoid {
    name: String,
    elements: FinSet,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl Monoid {
    /// Validates the table (closure, unit, associativity).
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        labels: Vec<S>,
        table: Vec<Vec<usize>>,
        identity: usize,
    ) -> Result<Monoid> {
        let name = name.into();
        let elements = FinSet::labeled(name.clone(), labels)?;
        let n = elements.len();
        if n == 0 || identity >= n {
            return Err(Error::invalid(format!("monoid {name} needs an identity element")));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::invalid(format!("monoid {name}: table must be {n}x{n} over its elements")));
        }
        let m = Monoid {
            name,
            elements,
            table,
            identity,
        };
        for a in 0..n {
            if m.mul(identity, a) != a || m.mul(a, identity) != a {
                return Err(Error::invalid(format!(
                    "monoid {}: {} is not a two-sided identity at {}",
                    m.name,
                    m.label(identity),
                    m.label(a)
                )));
            }
            for b in 0..n {
                for c in 0..n {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(Error::invalid(format!(
                            "monoid {}: multiplication not associative at ({}, {}, {})",
                            m.name,
                            m.label(a),
                            m.label(b),
                            m.label(c)
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// `Z/n` under addition.
    pub fn cyclic(n: usize) -> Result<Monoid> {
        if n == 0 {
            return Err(Error::invalid("cyclic group of order 0"));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Monoid::new(format!("Z{n}"), (0..n).map(|a| a.to_string()).collect(), table, 0)
    }

    /// The symmetric group on three letters. Elements are permutations in
    /// one-line notation, listed lexicographically; `(στ)(i) = σ(τ(i))`.
    pub fn symmetric3() -> Monoid {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| idx([s[t[0]], s[t[1]], s[t[2]]]))
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| format!("{}{}{}", p[0], p[1], p[2]))
            .collect();
        Monoid::new("S3", labels, table, 0).expect("S3 is a group")
    }

    /// `s3`, `z<n>`, `trivial`, or `and` (the two-element monoid `{1, 0}`
    /// under multiplication, not a group).
    pub fn from_name(name: &str) -> Result<Monoid> {
        let n = name.trim().to_ascii_lowercase();
        match n.as_str() {
            "s3" => Ok(Monoid::symmetric3()),
            "trivial" | "1" => Monoid::cyclic(1),
            "and" => Monoid::new("And", vec!["1", "0"], vec![vec![0, 1], vec![1, 1]], 0),
            _ => {
                let k = n
                    .strip_prefix('z')
                    .and_then(|r| r.trim_start_matches(['/', ':']).parse::<usize>().ok())
                    .ok_or_else(|| Error::invalid(format!("unknown monoid {name:?}")))?;
                Monoid::cyclic(k)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &FinSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn label(&self, a: usize) -> String {
        self.elements.render(self.elements.get(a))
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    pub fn is_group(&self) -> bool {
        (0..self.len()).all(|a| self.inverse(a).is_some())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// First pair `(g, h)` with `gh ≠ hg`, in canonical order.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| (0..self.len()).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monoid({}, order {})", self.name, self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_nonabelian_group() {
        let g = Monoid::symmetric3();
        assert_eq!(g.len(), 6);
        assert!(g.is_group());
        assert!(!g.is_commutative());
        let (a, b) = g.noncommuting_pair().unwrap();
        assert_ne!(g.mul(a, b), g.mul(b, a));
    }

    #[test]
    fn cyclic_groups_commute() {
        let z = Monoid::cyclic(4).unwrap();
        assert!(z.is_group() && z.is_commutative());
        assert_eq!(z.inverse(1), Some(3));
    }

    #[test]
    fn and_monoid_is_not_a_group() {
        let m = Monoid::from_name("and").unwrap();
        assert!(!m.is_group());
    }

    #[test]
    fn bad_tables_are_rejected() {
        assert!(Monoid::new("x", vec!["a", "b"], vec![vec![0, 1], vec![1, 1]], 1).is_err());
        assert!(Monoid::new("x", vec!["a", "b"], vec![vec![0, 1]], 0).is_err());
    }
}
