use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Surface type: genus, incoming and outgoing punctures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotKey {
    pub g: u32,
    pub k_minus: usize,
    pub k_plus: usize,
}

impl SlotKey {
    pub const fn new(g: u32, k_minus: usize, k_plus: usize) -> Self {
        SlotKey { g, k_minus, k_plus }
    }
}

impl fmt::Display for SlotKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.g, self.k_minus, self.k_plus)
    }
}

/// An orbit tuple: cochain factors first, then chain factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub minus: Vec<String>,
    pub plus: Vec<String>,
}

impl Term {
    pub fn new<S: AsRef<str>>(minus: &[S], plus: &[S]) -> Self {
        Term {
            minus: minus.iter().map(|s| s.as_ref().to_string()).collect(),
            plus: plus.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.minus.iter().chain(&self.plus)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.minus.join(", "), self.plus.join(", "))
    }
}

fn accumulate(terms: &mut BTreeMap<Term, i64>, t: Term, c: i64) {
    use std::collections::btree_map::Entry;
    if c == 0 {
        return;
    }
    match terms.entry(t) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if *e.get() == 0 {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// An integer combination of orbit tuples in `CF^{⊗k-} ⊗ CF_{⊗k+}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    k_minus: usize,
    k_plus: usize,
    terms: BTreeMap<Term, i64>,
}

impl TensorElement {
    pub fn zero(k_minus: usize, k_plus: usize) -> Self {
        TensorElement {
            k_minus,
            k_plus,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: i64) -> Self {
        let mut x = Self::zero(0, 0);
        x.add_term(Term::new::<&str>(&[], &[]), c).expect("arity matches");
        x
    }

    /// The basis cochain dual to `name`.
    pub fn cochain(name: &str) -> Self {
        let mut x = Self::zero(1, 0);
        x.add_term(Term::new(&[name], &[]), 1).expect("arity matches");
        x
    }

    /// The basis chain `name`.
    pub fn chain(name: &str) -> Self {
        let mut x = Self::zero(0, 1);
        x.add_term(Term::new(&[], &[name]), 1).expect("arity matches");
        x
    }

    pub fn k_minus(&self) -> usize {
        self.k_minus
    }

    pub fn k_plus(&self) -> usize {
        self.k_plus
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.k_minus, self.k_plus)
    }

    pub fn add_term(&mut self, t: Term, c: i64) -> Result<()> {
        if t.minus.len() != self.k_minus || t.plus.len() != self.k_plus {
            return Err(Error::Shape(format!(
                "term {t} does not have arity ({}, {})",
                self.k_minus, self.k_plus
            )));
        }
        accumulate(&mut self.terms, t, c);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, t: Term, c: i64) {
        accumulate(&mut self.terms, t, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, i64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &Term) -> i64 {
        self.terms.get(t).copied().unwrap_or(0)
    }

    /// Coefficient of a single cochain or chain factor.
    pub fn coefficient_of(&self, name: &str) -> i64 {
        match self.arity() {
            (1, 0) => self.coefficient(&Term::new(&[name], &[])),
            (0, 1) => self.coefficient(&Term::new(&[], &[name])),
            _ => 0,
        }
    }

    /// The value of an arity (0,0) element.
    pub fn scalar_value(&self) -> Option<i64> {
        (self.arity() == (0, 0)).then(|| self.coefficient(&Term::new::<&str>(&[], &[])))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.k_minus, self.k_plus);
        if c != 0 {
            for (t, v) in &self.terms {
                out.terms.insert(t.clone(), v * c);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.arity() != other.arity() {
            return Err(Error::Shape(format!(
                "adding elements of arity {:?} and {:?}",
                self.arity(),
                other.arity()
            )));
        }
        let mut out = self.clone();
        for (t, &c) in &other.terms {
            accumulate(&mut out.terms, t.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    /// First term where two elements differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(Term, i64, i64)> {
        let keys: std::collections::BTreeSet<&Term> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|t| (t, self.coefficient(t), other.coefficient(t)))
            .find(|(_, a, b)| a != b)
            .map(|(t, a, b)| (t.clone(), a, b))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{t}")?;
        }
        Ok(())
    }
}

/// Counts of rigid solutions for one surface type and one parameter simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub key: SlotKey,
    pub q: u32,
    pub label: String,
    entries: BTreeMap<Term, i64>,
    faces: BTreeMap<(u32, u8), String>,
}

impl CountTable {
    pub fn new(key: SlotKey, q: u32, label: impl Into<String>) -> Self {
        CountTable {
            key,
            q,
            label: label.into(),
            entries: BTreeMap::new(),
            faces: BTreeMap::new(),
        }
    }

    /// Sets a count; a zero count removes the entry.
    pub fn set(&mut self, t: Term, count: i64) -> Result<()> {
        if t.minus.len() != self.key.k_minus || t.plus.len() != self.key.k_plus {
            return Err(Error::Shape(format!("entry {t} does not fit slot {}", self.key)));
        }
        if count == 0 {
            self.entries.remove(&t);
        } else {
            self.entries.insert(t, count);
        }
        Ok(())
    }

    pub fn set_entry<S: AsRef<str>>(&mut self, minus: &[S], plus: &[S], count: i64) -> Result<()> {
        self.set(Term::new(minus, plus), count)
    }

    pub fn get(&self, t: &Term) -> i64 {
        self.entries.get(t).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Term, i64)> {
        self.entries.iter().map(|(t, &c)| (t, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Points face `(nu, side)`, `1 <= nu <= q`, at the table labelled `target`.
    pub fn set_face(&mut self, nu: u32, side: u8, target: impl Into<String>) -> Result<()> {
        if nu == 0 || nu > self.q || side > 1 {
            return Err(Error::Shape(format!("face ({nu}, {side}) of a {}-simplex", self.q)));
        }
        self.faces.insert((nu, side), target.into());
        Ok(())
    }

    pub fn face(&self, nu: u32, side: u8) -> Option<&str> {
        self.faces.get(&(nu, side)).map(String::as_str)
    }

    pub fn faces(&self) -> impl Iterator<Item = ((u32, u8), &str)> {
        self.faces.iter().map(|(&k, v)| (k, v.as_str()))
    }

    /// The table with the same entries viewed as a tensor element, without the Q sign.
    pub fn raw_element(&self) -> TensorElement {
        TensorElement {
            k_minus: self.key.k_minus,
            k_plus: self.key.k_plus,
            terms: self.entries.clone(),
        }
    }

    /// Builds a q = 0 table whose entries are the terms of `x`.
    pub fn from_element(key: SlotKey, label: impl Into<String>, x: &TensorElement) -> Result<Self> {
        if x.arity() != (key.k_minus, key.k_plus) {
            return Err(Error::Shape(format!("element of arity {:?} for slot {key}", x.arity())));
        }
        let mut t = CountTable::new(key, 0, label);
        t.entries = x.terms.clone();
        Ok(t)
    }
}
