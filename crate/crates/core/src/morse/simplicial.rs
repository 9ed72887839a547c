//! Cohomology ring of `T^d` from its one-vertex Δ-complex.
//!
//! A k-simplex is a sequence `(B_1, .., B_k)` of disjoint nonempty coordinate sets: the
//! simplex with vertices `0, 1_{B_1}, 1_{B_1 ∪ B_2}, ..` in the unit cube, modulo `Z^d`.

use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graded::{dual, Chain, ChainComplex, Degree, GradedBasis, HomologyBasis};
use crate::linalg::{unimodular_inverse, IntMatrix};

type Simplex = Vec<u32>;

/// Betti numbers and cup structure constants in the monomial basis `e_I`, `I` increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialRing {
    pub dim: usize,
    pub betti: Vec<usize>,
    pub basis: Vec<Vec<Vec<usize>>>,
    products: BTreeMap<(Vec<usize>, Vec<usize>), Vec<i64>>,
}

impl SimplicialRing {
    pub fn euler(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Coordinates of `e_I ∪ e_J` in `basis[|I| + |J|]`, or `None` above the top degree.
    pub fn product(&self, i: &[usize], j: &[usize]) -> Option<&[i64]> {
        self.products.get(&(i.to_vec(), j.to_vec())).map(Vec::as_slice)
    }
}

fn sequences(d: usize, used: u32, k: usize, prefix: &mut Simplex, out: &mut Vec<Simplex>) {
    if k == 0 {
        out.push(prefix.clone());
        return;
    }
    let free = !used & ((1u32 << d) - 1);
    let mut b = free;
    while b != 0 {
        prefix.push(b);
        sequences(d, used | b, k - 1, prefix, out);
        prefix.pop();
        b = (b - 1) & free;
    }
}

fn face(s: &Simplex, i: usize) -> Simplex {
    let k = s.len();
    let mut f = s.clone();
    if i == 0 {
        f.remove(0);
    } else if i == k {
        f.pop();
    } else {
        let merged = f[i - 1] | f[i];
        f[i - 1] = merged;
        f.remove(i);
    }
    f
}

fn label(s: &Simplex) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|b| {
            let ids: Vec<String> = (0..32).filter(|i| b >> i & 1 == 1).map(|i| i.to_string()).collect();
            format!("{{{}}}", ids.join(","))
        })
        .collect();
    format!("[{}]", parts.join(""))
}

fn monomials(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..1usize << d)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..d).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

struct Cochains<'a> {
    simplices: &'a [Vec<Simplex>],
    index: &'a HashMap<Simplex, usize>,
}

impl Cochains<'_> {
    fn cup(&self, p: usize, phi: &Chain, q: usize, psi: &Chain) -> Chain {
        let mut out = Chain::new();
        for s in &self.simplices[p + q] {
            let a = phi.get(&self.index[&s[..p].to_vec()]).copied().unwrap_or(0);
            let b = psi.get(&self.index[&s[p..].to_vec()]).copied().unwrap_or(0);
            if a * b != 0 {
                out.insert(self.index[s], a * b);
            }
        }
        out
    }

    /// The cocycle `θ ↦ θ_i`, evaluating to 1 on edges `(B)` with `i ∈ B`.
    fn generator(&self, i: usize) -> Chain {
        self.simplices[1]
            .iter()
            .filter(|s| s[0] >> i & 1 == 1)
            .map(|s| (self.index[s], 1))
            .collect()
    }
}

/// Computes the ring from scratch: simplicial coboundary, Smith forms, and the
/// front-face/back-face cup formula.
pub fn simplicial_oracle(d: usize) -> Result<SimplicialRing> {
    if d == 0 || d > 6 {
        return Err(Error::Validation(format!("the simplicial oracle covers 1 ≤ d ≤ 6, not {d}")));
    }
    let simplices: Vec<Vec<Simplex>> = (0..=d)
        .map(|k| {
            let mut out = Vec::new();
            sequences(d, 0, k, &mut Vec::new(), &mut out);
            out
        })
        .collect();
    let mut index = HashMap::new();
    let mut gens = Vec::new();
    for (k, layer) in simplices.iter().enumerate() {
        for s in layer {
            index.insert(s.clone(), gens.len());
            gens.push((label(s), k as i64));
        }
    }
    let mut entries = Vec::new();
    for layer in &simplices[1..] {
        for s in layer {
            for i in 0..=s.len() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                entries.push((index[&face(s, i)], index[s], sign));
            }
        }
    }
    let chains = ChainComplex::new(GradedBasis::new(0, gens)?, entries)?;
    let cochains = dual(&chains);
    let bases = (0..=d)
        .map(|k| HomologyBasis::new(&cochains, Degree::integer(-(k as i64))))
        .collect::<Result<Vec<_>>>()?;
    if let Some(h) = bases.iter().find(|h| !h.torsion.is_empty()) {
        return Err(Error::Validation(format!("unexpected torsion in degree {}", h.degree)));
    }
    let betti: Vec<usize> = bases.iter().map(HomologyBasis::rank).collect();

    let ops = Cochains {
        simplices: &simplices,
        index: &index,
    };
    let mut reps: HashMap<Vec<usize>, Chain> = HashMap::new();
    reps.insert(vec![], std::iter::once((index[&vec![]], 1)).collect());
    let basis: Vec<Vec<Vec<usize>>> = (0..=d).map(|k| monomials(d, k)).collect();
    for layer in &basis[1..] {
        for m in layer {
            let (last, rest) = m.split_last().expect("nonempty monomial");
            let r = ops.cup(rest.len(), &reps[rest], 1, &ops.generator(*last));
            reps.insert(m.clone(), r);
        }
    }
    let mut inverses = Vec::new();
    for (k, layer) in basis.iter().enumerate() {
        let coords = layer
            .iter()
            .map(|m| bases[k].free_coordinates(&reps[m]))
            .collect::<Result<Vec<_>>>()?;
        let mut mat = IntMatrix::zeros(betti[k], layer.len());
        for (j, col) in coords.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                mat.set(i, j, x.clone());
            }
        }
        let inv = unimodular_inverse(&mat)
            .ok_or_else(|| Error::Validation(format!("degree-{k} monomials are not a basis")))?;
        inverses.push(inv);
    }

    let mut products = BTreeMap::new();
    for (p, left) in basis.iter().enumerate() {
        for (q, right) in basis.iter().enumerate().take(d - p + 1) {
            for i in left {
                for j in right {
                    let c = ops.cup(p, &reps[i], q, &reps[j]);
                    let w = inverses[p + q].mul_vec(&bases[p + q].free_coordinates(&c)?);
                    let w = w
                        .iter()
                        .map(|x| x.to_i64().ok_or_else(|| Error::Validation("structure constant overflow".into())))
                        .collect::<Result<Vec<_>>>()?;
                    products.insert((i.clone(), j.clone()), w);
                }
            }
        }
    }
    Ok(SimplicialRing {
        dim: d,
        betti,
        basis,
        products,
    })
}
