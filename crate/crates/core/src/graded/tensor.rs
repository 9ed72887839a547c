use super::complex::{add_to, Chain, ChainComplex, LinearMap};
use super::perm::{graded_sign_parities, Permutation};
use super::GradedBasis;
use crate::error::{Error, Result};

pub const TENSOR_SEP: &str = "⊗";

/// Tensor product with basis `(i, j) -> i * dim(c2) + j` and the Koszul differential.
pub fn tensor(c1: &ChainComplex, c2: &ChainComplex) -> Result<ChainComplex> {
    if c1.modulus() != c2.modulus() {
        return Err(Error::GradingMismatch {
            left: c1.modulus(),
            right: c2.modulus(),
        });
    }
    let (n1, n2) = (c1.dim(), c2.dim());
    let mut gens = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            gens.push((
                format!("{}{TENSOR_SEP}{}", c1.label(i), c2.label(j)),
                c1.degree(i).lift() + c2.degree(j).lift(),
            ));
        }
    }
    let basis = GradedBasis::new(c1.modulus(), gens)?;
    let mut cols = vec![Chain::new(); n1 * n2];
    for i in 0..n1 {
        let sign = if c1.basis().parity(i) == 0 { 1 } else { -1 };
        for j in 0..n2 {
            let col = &mut cols[i * n2 + j];
            for &(b, c) in c1.column(i) {
                add_to(col, b * n2 + j, c);
            }
            for &(b, c) in c2.column(j) {
                add_to(col, i * n2 + b, sign * c);
            }
        }
    }
    Ok(ChainComplex::from_columns(basis, cols))
}

/// Dual complex: generator `e^` in degree `-|e|`, differential `d* = (-1)^{|f|} d^T` on `f^`.
pub fn dual(c: &ChainComplex) -> ChainComplex {
    let gens: Vec<(String, i64)> = (0..c.dim())
        .map(|i| (format!("{}^", c.label(i)), -c.degree(i).lift()))
        .collect();
    let basis = GradedBasis::new(c.modulus(), gens).expect("labels of a basis stay unique");
    let mut cols = vec![Chain::new(); c.dim()];
    for (b, a, e) in c.entries() {
        let sign = if c.basis().parity(b) == 0 { 1 } else { -1 };
        add_to(&mut cols[b], a, sign * e);
    }
    ChainComplex::from_columns(basis, cols)
}

/// Pairing of a chain with a cochain on the same basis.
pub fn contract(c: &ChainComplex, x: &Chain, f: &Chain) -> Result<i64> {
    let n = c.dim();
    if x.keys().chain(f.keys()).any(|&i| i >= n) {
        return Err(Error::Shape(format!("element outside a basis of size {n}")));
    }
    Ok(x.iter().map(|(i, a)| a * f.get(i).copied().unwrap_or(0)).sum())
}

/// An ordered k-fold tensor product, flattened left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorProduct {
    factors: Vec<ChainComplex>,
    complex: ChainComplex,
}

impl TensorProduct {
    pub fn new(factors: Vec<ChainComplex>) -> Result<Self> {
        let mut it = factors.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Shape("tensor product of no factors".into()))?
            .clone();
        let mut complex = first;
        for f in it {
            complex = tensor(&complex, f)?;
        }
        Ok(TensorProduct { factors, complex })
    }

    pub fn factors(&self) -> &[ChainComplex] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn index(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.arity() {
            return Err(Error::Shape(format!("tuple of length {} for arity {}", tuple.len(), self.arity())));
        }
        let mut idx = 0;
        for (t, f) in tuple.iter().zip(&self.factors) {
            if *t >= f.dim() {
                return Err(Error::Shape(format!("factor index {t} out of range")));
            }
            idx = idx * f.dim() + t;
        }
        Ok(idx)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity()];
        for (slot, f) in self.factors.iter().enumerate().rev() {
            out[slot] = index % f.dim();
            index /= f.dim();
        }
        out
    }

    /// The reordering map onto the permuted product.
    pub fn permutation_map(&self, rho: &Permutation) -> Result<(TensorProduct, LinearMap)> {
        if rho.len() != self.arity() {
            return Err(Error::Shape(format!(
                "permutation of {} letters on a {}-fold tensor",
                rho.len(),
                self.arity()
            )));
        }
        let target = TensorProduct::new(rho.apply(&self.factors)?)?;
        let mut images = Vec::with_capacity(self.complex.dim());
        for idx in 0..self.complex.dim() {
            let t = self.tuple(idx);
            let parities: Vec<u8> = t.iter().zip(&self.factors).map(|(&g, f)| f.basis().parity(g)).collect();
            let sign = graded_sign_parities(rho.images(), &parities);
            let moved = rho.apply(&t)?;
            images.push(Chain::from([(target.index(&moved)?, sign)]));
        }
        let map = LinearMap::from_images(target.complex.dim(), 0, images);
        Ok((target, map))
    }
}

/// Reorders every tuple of `x` by `rho` with the graded sign.
pub fn permute_factors(rho: &Permutation, product: &TensorProduct, x: &Chain) -> Result<(TensorProduct, Chain)> {
    let (target, map) = product.permutation_map(rho)?;
    if x.keys().any(|&i| i >= product.complex().dim()) {
        return Err(Error::Shape("element outside the tensor basis".into()));
    }
    Ok((target, map.apply(x)))
}
