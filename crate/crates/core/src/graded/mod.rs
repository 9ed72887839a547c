//! Graded integer linear algebra.

mod complex;
mod homology;
mod perm;
mod tensor;

pub use complex::{Chain, ChainComplex, ChainMapCheck, LinearMap};
pub use homology::{homology, homology_mod2, HomologyBasis, HomologyGroup};
pub use perm::{graded_sign, Permutation};
pub(crate) use perm::graded_sign_parities;
pub use tensor::{contract, dual, permute_factors, tensor, TensorProduct, TENSOR_SEP};

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// An integer degree read modulo `modulus` (zero means no reduction).
#[derive(Clone, Copy, Debug)]
pub struct Degree {
    lift: i64,
    modulus: u64,
}

impl Degree {
    pub fn new(lift: i64, modulus: u64) -> Self {
        Degree { lift, modulus }
    }

    pub fn integer(lift: i64) -> Self {
        Degree { lift, modulus: 0 }
    }

    pub fn lift(&self) -> i64 {
        self.lift
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical representative: lift mod M in `0..M`, or the lift itself when M = 0.
    pub fn residue(&self) -> i64 {
        if self.modulus == 0 {
            self.lift
        } else {
            self.lift.rem_euclid(self.modulus as i64)
        }
    }

    pub fn parity(&self) -> Result<u8> {
        if self.modulus % 2 == 1 {
            return Err(Error::InvalidGrading(format!(
                "parity of degree {} is undefined modulo {}",
                self.lift, self.modulus
            )));
        }
        Ok(self.lift.rem_euclid(2) as u8)
    }

    pub fn shift(&self, k: i64) -> Self {
        Degree::new(self.lift + k, self.modulus)
    }

    pub fn negate(&self) -> Self {
        Degree::new(-self.lift, self.modulus)
    }

    pub fn add(&self, other: &Degree) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::GradingMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(Degree::new(self.lift + other.lift, self.modulus))
    }
}

impl PartialEq for Degree {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.residue() == other.residue()
    }
}

impl Eq for Degree {}

impl Hash for Degree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
        self.residue().hash(state);
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus, self.residue()).cmp(&(other.modulus, other.residue()))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.lift)
        } else {
            write!(f, "{} mod {}", self.residue(), self.modulus)
        }
    }
}

/// Ordered labelled generators with degrees sharing one modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    modulus: u64,
    labels: Vec<String>,
    degrees: Vec<Degree>,
    index: std::collections::HashMap<String, usize>,
}

impl GradedBasis {
    /// Builds a basis. The modulus must be zero or even so that parities exist.
    pub fn new<S: Into<String>>(modulus: u64, gens: impl IntoIterator<Item = (S, i64)>) -> Result<Self> {
        if modulus % 2 == 1 {
            return Err(Error::InvalidGrading(format!("odd modulus {modulus}")));
        }
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut index = std::collections::HashMap::new();
        for (label, lift) in gens {
            let label = label.into();
            if index.insert(label.clone(), labels.len()).is_some() {
                return Err(Error::Shape(format!("duplicate basis label {label}")));
            }
            labels.push(label);
            degrees.push(Degree::new(lift, modulus));
        }
        Ok(GradedBasis {
            modulus,
            labels,
            degrees,
            index,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    /// Parity of generator `i`; always defined since the modulus is even.
    pub fn parity(&self, i: usize) -> u8 {
        self.degrees[i].lift().rem_euclid(2) as u8
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }
}
