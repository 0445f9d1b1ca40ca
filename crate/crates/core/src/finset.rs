use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::value::Value;

/// A finite set with a fixed enumeration order.
///
/// Cloning is cheap. Two sets are equal when they enumerate the same elements
/// in the same order; names and labels are presentation only.
#[derive(Clone)]
pub struct FinSet {
    inner: Arc<SetInner>,
}

struct SetInner {
    name: String,
    elems: Vec<Value>,
    index: HashMap<Value, usize>,
    labels: Option<Vec<String>>,
    fingerprint: u64,
}

impl FinSet {
    /// Builds a set from pairwise distinct elements, keeping their order.
    pub fn new(name: impl Into<String>, elems: Vec<Value>) -> Result<FinSet> {
        Self::build(name.into(), elems, None)
    }

    /// `{0, 1, ..., n-1}` as atoms.
    pub fn canonical(n: usize) -> FinSet {
        Self::build(format!("{n}"), (0..n as u64).map(Value::Atom).collect(), None)
            .expect("atoms are distinct")
    }

    /// Atoms `0..labels.len()` displayed with the given labels.
    pub fn labeled<S: Into<String>>(name: impl Into<String>, labels: Vec<S>) -> Result<FinSet> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::invalid(format!("duplicate label {l:?}")));
            }
        }
        let elems = (0..labels.len() as u64).map(Value::Atom).collect();
        Self::build(name.into(), elems, Some(labels))
    }

    pub fn singleton() -> FinSet {
        Self::build("1".into(), vec![Value::unit()], None).expect("one element")
    }

    pub fn empty() -> FinSet {
        Self::build("0".into(), Vec::new(), None).expect("no elements")
    }

    fn build(name: String, elems: Vec<Value>, labels: Option<Vec<String>>) -> Result<FinSet> {
        let mut index = HashMap::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate element {e} in set {name}")));
            }
        }
        let mut h = DefaultHasher::new();
        elems.hash(&mut h);
        let fingerprint = h.finish();
        Ok(FinSet {
            inner: Arc::new(SetInner {
                name,
                elems,
                index,
                labels,
                fingerprint,
            }),
        })
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> FinSet {
        Self::build(name.into(), self.inner.elems.clone(), self.inner.labels.clone())
            .expect("elements already distinct")
    }

    pub fn len(&self) -> usize {
        self.inner.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.elems.is_empty()
    }

    pub fn elements(&self) -> &[Value] {
        &self.inner.elems
    }

    pub fn get(&self, i: usize) -> &Value {
        &self.inner.elems[i]
    }

    pub fn index_of(&self, v: &Value) -> Option<usize> {
        self.inner.index.get(v).copied()
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.inner.index.contains_key(v)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.inner.labels.as_deref()
    }

    /// Label of an atom of a labelled set, else the value's canonical text.
    pub fn render(&self, v: &Value) -> String {
        if let (Some(labels), Value::Atom(a)) = (&self.inner.labels, v) {
            if let Some(l) = labels.get(*a as usize) {
                return l.clone();
            }
        }
        v.to_string()
    }

    /// Looks an element up by label (labelled sets) or canonical text.
    pub fn find(&self, text: &str) -> Option<usize> {
        if let Some(labels) = &self.inner.labels {
            if let Some(i) = labels.iter().position(|l| l == text) {
                return Some(i);
            }
        }
        self.inner.elems.iter().position(|v| v.to_string() == text)
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.fingerprint == other.inner.fingerprint
                && self.inner.elems == other.inner.elems)
    }
}

impl Eq for FinSet {}

impl Hash for FinSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.fingerprint.hash(state);
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSet({}, |{}|)", self.inner.name, self.len())
    }
}

/// A total function between finite sets, stored as a table of codomain
/// indices in domain order.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFn {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl FinFn {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<FinFn> {
        if table.len() != dom.len() {
            return Err(Error::DomainMismatch(format!(
                "table has {} entries, domain {} has {}",
                table.len(),
                dom.name(),
                dom.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&j| j >= cod.len()) {
            return Err(Error::DomainMismatch(format!(
                "image index {bad} outside codomain {} of size {}",
                cod.name(),
                cod.len()
            )));
        }
        Ok(FinFn { dom, cod, table })
    }

    /// Tabulates `f` over `dom`; every image must lie in `cod`.
    pub fn tabulate<F>(dom: &FinSet, cod: &FinSet, mut f: F) -> Result<FinFn>
    where
        F: FnMut(&Value) -> Result<Value>,
    {
        let mut table = Vec::with_capacity(dom.len());
        for x in dom.elements() {
            let y = f(x)?;
            let j = cod.index_of(&y).ok_or_else(|| {
                Error::DomainMismatch(format!(
                    "image {y} of {x} is not an element of {}",
                    cod.name()
                ))
            })?;
            table.push(j);
        }
        Ok(FinFn {
            dom: dom.clone(),
            cod: cod.clone(),
            table,
        })
    }

    pub fn identity(x: &FinSet) -> FinFn {
        FinFn {
            dom: x.clone(),
            cod: x.clone(),
            table: (0..x.len()).collect(),
        }
    }

    pub fn constant(dom: &FinSet, cod: &FinSet, target: usize) -> Result<FinFn> {
        FinFn::new(dom.clone(), cod.clone(), vec![target; dom.len()])
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply(&self, v: &Value) -> Option<&Value> {
        self.dom.index_of(v).map(|i| self.cod.get(self.table[i]))
    }

    /// Like [`FinFn::apply`], with a descriptive error for foreign inputs.
    pub fn eval(&self, v: &Value) -> Result<Value> {
        self.apply(v).cloned().ok_or_else(|| {
            Error::DomainMismatch(format!("{v} is not in the domain {}", self.dom.name()))
        })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &FinFn) -> Result<FinFn> {
        if self.cod != g.dom {
            return Err(Error::DomainMismatch(format!(
                "cannot compose: codomain {} differs from domain {}",
                self.cod.name(),
                g.dom.name()
            )));
        }
        Ok(FinFn {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            table: self.table.iter().map(|&j| g.table[j]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.table.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinFn> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.cod.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j] = i;
        }
        Some(FinFn {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table,
        })
    }

    /// Every function `dom → cod`, in lexicographic order of tables.
    pub fn all(dom: &FinSet, cod: &FinSet) -> impl Iterator<Item = FinFn> {
        let (dom, cod) = (dom.clone(), cod.clone());
        let n = dom.len();
        let m = cod.len();
        let total = if n == 0 {
            1
        } else if m == 0 {
            0
        } else {
            m.checked_pow(n as u32).unwrap_or(usize::MAX)
        };
        (0..total).map(move |mut k| {
            let mut table = vec![0; n];
            for slot in table.iter_mut().rev() {
                *slot = k % m;
                k /= m;
            }
            FinFn {
                dom: dom.clone(),
                cod: cod.clone(),
                table,
            }
        })
    }

    /// Table rendered through the domain and codomain labels.
    pub fn describe(&self) -> Vec<(String, String)> {
        self.dom
            .elements()
            .iter()
            .zip(&self.table)
            .map(|(x, &j)| (self.dom.render(x), self.cod.render(self.cod.get(j))))
            .collect()
    }
}

impl fmt::Debug for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinFn({} -> {}, {:?})",
            self.dom.name(),
            self.cod.name(),
            self.table
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_are_rejected() {
        assert!(FinSet::new("x", vec![Value::Atom(0), Value::Atom(0)]).is_err());
        assert!(FinSet::labeled("x", vec!["a", "a"]).is_err());
    }

    #[test]
    fn function_enumeration_counts() {
        let a = FinSet::canonical(2);
        let b = FinSet::canonical(3);
        assert_eq!(FinFn::all(&a, &b).count(), 9);
        assert_eq!(FinFn::all(&FinSet::empty(), &b).count(), 1);
        assert_eq!(FinFn::all(&a, &FinSet::empty()).count(), 0);
        let tables: Vec<_> = FinFn::all(&a, &b).map(|f| f.table().to_vec()).collect();
        assert_eq!(tables[0], vec![0, 0]);
        assert_eq!(tables[1], vec![0, 1]);
        assert_eq!(tables[8], vec![2, 2]);
    }

    #[test]
    fn tables_are_validated() {
        let a = FinSet::canonical(2);
        assert!(FinFn::new(a.clone(), a.clone(), vec![0]).is_err());
        assert!(FinFn::new(a.clone(), a.clone(), vec![0, 2]).is_err());
        let swap = FinFn::new(a.clone(), a.clone(), vec![1, 0]).unwrap();
        assert!(swap.is_bijective());
        assert!(swap.then(&swap).unwrap().is_identity());
        assert_eq!(swap.inverse().unwrap(), swap);
    }

    #[test]
    fn equality_ignores_labels() {
        let a = FinSet::labeled("a", vec!["x", "y"]).unwrap();
        assert_eq!(a, FinSet::canonical(2));
        assert_eq!(a.render(&Value::Atom(1)), "y");
        assert_eq!(a.find("y"), Some(1));
    }
}
