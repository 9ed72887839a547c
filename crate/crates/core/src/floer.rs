//! Floer chain and cochain complexes built from orbit and count data.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graded::{Chain, ChainComplex, GradedBasis};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub name: String,
    pub mu: i64,
}

impl Orbit {
    pub fn new(name: impl Into<String>, mu: i64) -> Self {
        Orbit { name: name.into(), mu }
    }
}

/// Orbits with grading lifts and the signed counts of index-one trajectories.
#[derive(Clone, Debug)]
pub struct FloerData {
    n: u32,
    n0: u64,
    n1: u64,
    orbits: Vec<Orbit>,
    m1: Vec<(String, String, i64)>,
    index: HashMap<String, usize>,
    counts: BTreeMap<(usize, usize), i64>,
}

impl PartialEq for FloerData {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.n0 == other.n0
            && self.n1 == other.n1
            && self.orbits == other.orbits
            && self.m1 == other.m1
    }
}

impl Eq for FloerData {}

impl FloerData {
    /// Stores the data as given. Consistency is checked by [`validate_data`].
    pub fn new(n: u32, n0: u64, n1: u64, orbits: Vec<Orbit>, m1: Vec<(String, String, i64)>) -> Self {
        let mut index = HashMap::new();
        for (i, o) in orbits.iter().enumerate() {
            index.entry(o.name.clone()).or_insert(i);
        }
        let mut counts = BTreeMap::new();
        for (a, b, c) in &m1 {
            if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
                *counts.entry((i, j)).or_insert(0) += c;
            }
        }
        counts.retain(|_, c| *c != 0);
        FloerData {
            n,
            n0,
            n1,
            orbits,
            m1,
            index,
            counts,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    /// The grading modulus 2N0.
    pub fn modulus(&self) -> u64 {
        2 * self.n0
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn m1_entries(&self) -> &[(String, String, i64)] {
        &self.m1
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn orbit(&self, name: &str) -> Result<&Orbit> {
        self.position(name)
            .map(|i| &self.orbits[i])
            .ok_or_else(|| Error::Lookup(format!("unknown orbit {name}")))
    }

    pub fn mu(&self, name: &str) -> Result<i64> {
        self.orbit(name).map(|o| o.mu)
    }

    /// Merged count `m1(a, b)` by orbit position.
    pub fn count(&self, a: usize, b: usize) -> i64 {
        self.counts.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn nonzero_counts(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    /// `d a = sum_b (-1)^{mu(b)} m1(a, b) b` on orbit positions.
    pub fn differential_of(&self, a: usize) -> Vec<(usize, i64)> {
        self.counts
            .range((a, 0)..(a + 1, 0))
            .map(|(&(_, b), &c)| (b, sign(self.orbits[b].mu) * c))
            .collect()
    }

    /// `d* a = sum_b m1(b, a) b` on orbit positions.
    pub fn codifferential_of(&self, a: usize) -> Vec<(usize, i64)> {
        self.counts
            .iter()
            .filter(|(&(_, t), _)| t == a)
            .map(|(&(b, _), &c)| (b, c))
            .collect()
    }

    /// The same data with every orbit renamed by `f`.
    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> FloerData {
        FloerData::new(
            self.n,
            self.n0,
            self.n1,
            self.orbits.iter().map(|o| Orbit::new(f(&o.name), o.mu)).collect(),
            self.m1.iter().map(|(a, b, c)| (f(a), f(b), *c)).collect(),
        )
    }
}

pub(crate) fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn congruent(a: i64, b: i64, modulus: u64) -> bool {
    if modulus == 0 {
        a == b
    } else {
        (a - b).rem_euclid(modulus as i64) == 0
    }
}

/// Checks names, Chern-number constraints, degree congruences and the vanishing of `m1 * m1`.
pub fn validate_data(data: &FloerData, strict: bool) -> Report {
    let mut r = Report::new();
    if data.n == 0 {
        r.fail("dimension", "n", "half-dimension n must be positive");
    }
    match (data.n0, data.n1) {
        (0, 0) => r.pass("chern numbers", "N0 = 0: full integer grading"),
        (0, _) => r.fail("chern numbers", format!("N1 = {}", data.n1), "N0 = 0 requires N1 = 0"),
        (_, 0) => r.fail("chern numbers", format!("N0 = {}", data.n0), "N0 > 0 requires N1 > 0"),
        (a, b) if a % b != 0 => r.fail("chern numbers", format!("N0 = {a}, N1 = {b}"), "N1 must divide N0"),
        _ => r.pass("chern numbers", "N1 divides N0"),
    }

    let mut seen = HashMap::new();
    let mut names_ok = true;
    for o in &data.orbits {
        if o.name.is_empty() || o.name.contains(crate::graded::TENSOR_SEP) {
            r.fail("orbit names", format!("{:?}", o.name), "names must be nonempty and free of the tensor sign");
            names_ok = false;
        }
        if seen.insert(o.name.as_str(), ()).is_some() {
            r.fail("orbit names", o.name.clone(), "duplicate orbit name");
            names_ok = false;
        }
    }
    if names_ok {
        r.pass("orbit names", format!("{} unique orbits", data.orbits.len()));
    }

    let mut pairs = HashMap::new();
    let mut entries_ok = true;
    for (a, b, c) in &data.m1 {
        for name in [a, b] {
            if data.position(name).is_none() {
                r.fail("m1 entries", format!("({a}, {b})"), format!("unknown orbit {name}"));
                entries_ok = false;
            }
        }
        if pairs.insert((a.as_str(), b.as_str()), *c).is_some() {
            r.fail("m1 entries", format!("({a}, {b})"), "duplicate count");
            entries_ok = false;
        }
    }
    if entries_ok {
        r.pass("m1 entries", format!("{} counts", data.m1.len()));
    }

    let modulus = data.modulus();
    let mut degrees_ok = true;
    for &(a, b) in data.counts.keys() {
        let (oa, ob) = (&data.orbits[a], &data.orbits[b]);
        if !congruent(oa.mu - ob.mu, 1, modulus) {
            let witness = format!("({}, {})", oa.name, ob.name);
            let detail = format!("mu difference {} is not 1 mod {modulus}", oa.mu - ob.mu);
            if strict {
                r.fail("m1 degree congruence", witness, detail);
            } else {
                r.warn("m1 degree congruence", witness, detail);
            }
            degrees_ok = false;
        }
    }
    if degrees_ok {
        r.pass("m1 degree congruence", "every count drops the degree by one");
    }

    let k = data.orbits.len();
    let mut square = BTreeMap::new();
    for (&(a, m), &c1) in &data.counts {
        for (&(_, b), &c2) in data.counts.range((m, 0)..(m + 1, 0)) {
            *square.entry((a, b)).or_insert(0i64) += c1 * c2;
        }
    }
    match square.iter().find(|(_, &v)| v != 0) {
        Some((&(a, b), v)) => r.fail(
            "m1 convolution",
            format!("({}, {})", data.orbits[a].name, data.orbits[b].name),
            format!("sum over intermediate orbits is {v}"),
        ),
        None => r.pass("m1 convolution", format!("vanishes on all {} pairs", k * k)),
    }
    r.note(
        "contractible orbits",
        "every orbit is treated as contractible; the table identities assume this",
    );
    r
}

fn require_valid(data: &FloerData) -> Result<()> {
    let rep = validate_data(data, true);
    match rep.first_error() {
        Some(e) => Err(Error::Validation(e.to_string())),
        None => Ok(()),
    }
}

/// Chain complex: orbits at degree mu, `d a = sum (-1)^{mu(b)} m1(a, b) b`.
pub fn build_cf(data: &FloerData) -> Result<ChainComplex> {
    require_valid(data)?;
    let basis = GradedBasis::new(data.modulus(), data.orbits.iter().map(|o| (o.name.clone(), o.mu)))?;
    let cols = (0..data.orbits.len())
        .map(|a| data.differential_of(a).into_iter().collect::<Chain>())
        .collect();
    Ok(ChainComplex::from_columns(basis, cols))
}

/// Cochain complex: orbits at degree -mu, `d* a = sum m1(b, a) b`.
pub fn build_cf_dual(data: &FloerData) -> Result<ChainComplex> {
    require_valid(data)?;
    let basis = GradedBasis::new(data.modulus(), data.orbits.iter().map(|o| (o.name.clone(), -o.mu)))?;
    let cols = (0..data.orbits.len())
        .map(|a| data.codifferential_of(a).into_iter().collect::<Chain>())
        .collect();
    Ok(ChainComplex::from_columns(basis, cols))
}

/// `<a, b>` is 1 for equal orbits and 0 otherwise.
pub fn pairing(data: &FloerData, a: &str, b: &str) -> Result<i64> {
    let i = data.orbit(a)?;
    let j = data.orbit(b)?;
    Ok(i64::from(i.name == j.name))
}

/// Orbit lookup across one or more data sets with disjoint names.
#[derive(Clone, Debug)]
pub struct Universe<'a> {
    data: Vec<&'a FloerData>,
    lookup: HashMap<&'a str, (usize, usize)>,
}

impl<'a> Universe<'a> {
    pub fn new(data: &[&'a FloerData]) -> Result<Self> {
        let mut uniq: Vec<&'a FloerData> = Vec::new();
        for d in data {
            if !uniq.iter().any(|u| std::ptr::eq(*u, *d) || *u == *d) {
                uniq.push(d);
            }
        }
        let first = *uniq.first().ok_or_else(|| Error::Lookup("no data".into()))?;
        let mut lookup = HashMap::new();
        for (k, d) in uniq.iter().enumerate() {
            if (d.n, d.n0, d.n1) != (first.n, first.n0, first.n1) {
                return Err(Error::Lookup("data sets disagree on n, N0 or N1".into()));
            }
            for (i, o) in d.orbits.iter().enumerate() {
                if lookup.insert(o.name.as_str(), (k, i)).is_some() {
                    return Err(Error::Lookup(format!("orbit {} occurs in two data sets", o.name)));
                }
            }
        }
        Ok(Universe { data: uniq, lookup })
    }

    pub fn single(data: &'a FloerData) -> Self {
        Universe::new(&[data]).expect("a single data set is a universe")
    }

    pub fn n(&self) -> u32 {
        self.data[0].n
    }

    pub fn n0(&self) -> u64 {
        self.data[0].n0
    }

    pub fn n1(&self) -> u64 {
        self.data[0].n1
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup.contains_key(name)
    }

    fn locate(&self, name: &str) -> Result<(usize, usize)> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::Lookup(format!("unknown orbit {name}")))
    }

    pub fn mu(&self, name: &str) -> Result<i64> {
        let (k, i) = self.locate(name)?;
        Ok(self.data[k].orbits[i].mu)
    }

    pub fn parity(&self, name: &str) -> Result<u8> {
        Ok(self.mu(name)?.rem_euclid(2) as u8)
    }

    /// Whether the orbit belongs to `data`.
    pub fn belongs_to(&self, name: &str, data: &FloerData) -> bool {
        self.lookup
            .get(name)
            .is_some_and(|&(k, _)| std::ptr::eq(self.data[k], data) || *self.data[k] == *data)
    }

    pub fn differential(&self, name: &str) -> Result<Vec<(&'a str, i64)>> {
        let (k, i) = self.locate(name)?;
        let d = self.data[k];
        Ok(d.differential_of(i)
            .into_iter()
            .map(|(b, c)| (d.orbits[b].name.as_str(), c))
            .collect())
    }

    pub fn codifferential(&self, name: &str) -> Result<Vec<(&'a str, i64)>> {
        let (k, i) = self.locate(name)?;
        let d = self.data[k];
        Ok(d.codifferential_of(i)
            .into_iter()
            .map(|(b, c)| (d.orbits[b].name.as_str(), c))
            .collect())
    }
}
