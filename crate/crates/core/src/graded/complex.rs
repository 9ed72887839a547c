use std::collections::BTreeMap;

use super::{Degree, GradedBasis};
use crate::error::{Error, Result};

/// A sparse integer vector over a basis, keyed by generator index. Zero coefficients are absent.
pub type Chain = BTreeMap<usize, i64>;

pub(crate) fn add_to(chain: &mut Chain, i: usize, c: i64) {
    if c == 0 {
        return;
    }
    let e = chain.entry(i).or_insert(0);
    *e += c;
    if *e == 0 {
        chain.remove(&i);
    }
}

/// A free graded module with a degree -1 differential, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    basis: GradedBasis,
    columns: Vec<Vec<(usize, i64)>>,
}

impl ChainComplex {
    /// Builds a complex from entries `(target, source, coefficient)`; checks degrees and d^2 = 0.
    pub fn new(basis: GradedBasis, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self> {
        let n = basis.len();
        let mut cols: Vec<Chain> = vec![Chain::new(); n];
        for (b, a, c) in entries {
            if a >= n || b >= n {
                return Err(Error::Shape(format!("differential entry ({b}, {a}) outside basis of size {n}")));
            }
            if c != 0 && basis.degree(b) != basis.degree(a).shift(-1) {
                return Err(Error::InvalidGrading(format!(
                    "differential entry {} -> {} does not lower degree by one",
                    basis.label(a),
                    basis.label(b)
                )));
            }
            add_to(&mut cols[a], b, c);
        }
        let cx = Self::from_columns(basis, cols);
        if let Some(w) = cx.d_squared_witness() {
            return Err(Error::NotAComplex {
                witness: cx.basis.label(w).to_string(),
            });
        }
        Ok(cx)
    }

    /// Same as [`ChainComplex::new`] with generators named by label.
    pub fn from_labels(basis: GradedBasis, entries: &[(&str, &str, i64)]) -> Result<Self> {
        let mut idx = Vec::with_capacity(entries.len());
        for &(b, a, c) in entries {
            let pb = basis.position(b).ok_or_else(|| Error::Lookup(format!("unknown generator {b}")))?;
            let pa = basis.position(a).ok_or_else(|| Error::Lookup(format!("unknown generator {a}")))?;
            idx.push((pb, pa, c));
        }
        Self::new(basis, idx)
    }

    pub(crate) fn from_columns(basis: GradedBasis, cols: Vec<Chain>) -> Self {
        let columns = cols.into_iter().map(|c| c.into_iter().collect()).collect();
        ChainComplex { basis, columns }
    }

    /// The complex with zero differential on `basis`.
    pub fn zero(basis: GradedBasis) -> Self {
        let n = basis.len();
        ChainComplex {
            basis,
            columns: vec![Vec::new(); n],
        }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn modulus(&self) -> u64 {
        self.basis.modulus()
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.basis.degree(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.basis.label(i)
    }

    /// `d(e_a)` as `(target, coefficient)` pairs.
    pub fn column(&self, a: usize) -> &[(usize, i64)] {
        &self.columns[a]
    }

    /// Matrix entry `<d e_a, e_b>`.
    pub fn entry(&self, b: usize, a: usize) -> i64 {
        self.columns[a].iter().find(|(t, _)| *t == b).map_or(0, |(_, c)| *c)
    }

    pub fn is_zero_differential(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(a, col)| col.iter().map(move |&(b, c)| (b, a, c)))
    }

    pub fn apply(&self, x: &Chain) -> Chain {
        let mut out = Chain::new();
        for (&a, &c) in x {
            for &(b, e) in &self.columns[a] {
                add_to(&mut out, b, c * e);
            }
        }
        out
    }

    /// First generator `a` with `d(d(e_a)) != 0`, if any.
    pub fn d_squared_witness(&self) -> Option<usize> {
        (0..self.dim()).find(|&a| {
            let once: Chain = self.columns[a].iter().copied().collect();
            !self.apply(&once).is_empty()
        })
    }

    /// The differential viewed as a degree -1 map.
    pub fn differential_map(&self) -> LinearMap {
        LinearMap {
            source_dim: self.dim(),
            target_dim: self.dim(),
            degree: -1,
            columns: self.columns.clone(),
        }
    }

    pub fn basis_chain(&self, i: usize) -> Chain {
        Chain::from([(i, 1)])
    }
}

/// A degree-homogeneous integer matrix between two bases, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub degree: i64,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl LinearMap {
    pub fn new(source_dim: usize, target_dim: usize, degree: i64) -> Self {
        LinearMap {
            source_dim,
            target_dim,
            degree,
            columns: vec![Vec::new(); source_dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap {
            source_dim: dim,
            target_dim: dim,
            degree: 0,
            columns: (0..dim).map(|i| vec![(i, 1)]).collect(),
        }
    }

    /// Builds the map whose column `a` is `images[a]`.
    pub fn from_images(target_dim: usize, degree: i64, images: Vec<Chain>) -> Self {
        LinearMap {
            source_dim: images.len(),
            target_dim,
            degree,
            columns: images.into_iter().map(|c| c.into_iter().collect()).collect(),
        }
    }

    pub fn set(&mut self, b: usize, a: usize, c: i64) {
        let col = &mut self.columns[a];
        col.retain(|(t, _)| *t != b);
        if c != 0 {
            col.push((b, c));
            col.sort_unstable();
        }
    }

    pub fn apply(&self, x: &Chain) -> Chain {
        let mut out = Chain::new();
        for (&a, &c) in x {
            for &(b, e) in &self.columns[a] {
                add_to(&mut out, b, c * e);
            }
        }
        out
    }

    /// Checks `d2 . f = (-1)^{|f|} f . d1`, returning a failing source generator.
    pub fn is_chain_map(&self, c1: &ChainComplex, c2: &ChainComplex) -> ChainMapCheck {
        if self.source_dim != c1.dim() || self.target_dim != c2.dim() {
            return ChainMapCheck::fail(None, "dimensions do not match the complexes");
        }
        let sign = if self.degree.rem_euclid(2) == 0 { 1 } else { -1 };
        for a in 0..c1.dim() {
            for &(b, e) in &self.columns[a] {
                if e != 0 && c2.degree(b) != c1.degree(a).shift(self.degree) {
                    return ChainMapCheck::fail(Some(c1.label(a)), "map is not homogeneous");
                }
            }
            let ea = c1.basis_chain(a);
            let lhs = c2.apply(&self.apply(&ea));
            let mut rhs = self.apply(&c1.apply(&ea));
            for v in rhs.values_mut() {
                *v *= sign;
            }
            if lhs != rhs {
                return ChainMapCheck::fail(Some(c1.label(a)), "d f differs from f d");
            }
        }
        ChainMapCheck {
            holds: true,
            witness: None,
            reason: String::new(),
        }
    }
}

/// Outcome of [`LinearMap::is_chain_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapCheck {
    pub holds: bool,
    pub witness: Option<String>,
    pub reason: String,
}

impl ChainMapCheck {
    fn fail(witness: Option<&str>, reason: &str) -> Self {
        ChainMapCheck {
            holds: false,
            witness: witness.map(str::to_string),
            reason: reason.to_string(),
        }
    }
}
