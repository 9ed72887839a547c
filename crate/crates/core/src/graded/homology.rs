use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::complex::{Chain, ChainComplex};
use super::Degree;
use crate::error::{Error, Result};
use crate::linalg::{smith, IntMatrix, Lattice};

/// Homology in one degree class: free rank and torsion coefficients in divisibility order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: Degree,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Populated degree classes in increasing residue order with their generator indices.
pub(crate) fn degree_classes(c: &ChainComplex) -> Vec<(Degree, Vec<usize>)> {
    let mut classes: std::collections::BTreeMap<Degree, Vec<usize>> = Default::default();
    for i in 0..c.dim() {
        classes.entry(c.degree(i)).or_default().push(i);
    }
    classes.into_iter().collect()
}

fn indices_of(c: &ChainComplex, deg: Degree) -> Vec<usize> {
    (0..c.dim()).filter(|&i| c.degree(i) == deg).collect()
}

/// Block of the differential from generators `cols` to generators `rows`.
pub(crate) fn block(c: &ChainComplex, rows: &[usize], cols: &[usize]) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    let pos: std::collections::HashMap<usize, usize> = rows.iter().enumerate().map(|(r, &i)| (i, r)).collect();
    for (j, &a) in cols.iter().enumerate() {
        for &(b, e) in c.column(a) {
            if let Some(&r) = pos.get(&b) {
                m.set(r, j, BigInt::from(e));
            }
        }
    }
    m
}

fn ensure_complex(c: &ChainComplex) -> Result<()> {
    match c.d_squared_witness() {
        Some(w) => Err(Error::NotAComplex {
            witness: c.label(w).to_string(),
        }),
        None => Ok(()),
    }
}

pub fn homology(c: &ChainComplex) -> Result<Vec<HomologyGroup>> {
    ensure_complex(c)?;
    let mut out = Vec::new();
    for (deg, idx) in degree_classes(c) {
        let below = indices_of(c, deg.shift(-1));
        let above = indices_of(c, deg.shift(1));
        let r_out = smith(&block(c, &below, &idx)).rank();
        let s_in = smith(&block(c, &idx, &above));
        out.push(HomologyGroup {
            degree: deg,
            rank: idx.len() - r_out - s_in.rank(),
            torsion: s_in.diag.iter().filter(|d| !d.is_one()).cloned().collect(),
        });
    }
    Ok(out)
}

fn rank_mod2(m: &IntMatrix) -> usize {
    let mut rows: Vec<Vec<u8>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| if (x % BigInt::from(2)).is_zero() { 0 } else { 1 })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] == 1 {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers over Z/2, for debugging sign problems.
pub fn homology_mod2(c: &ChainComplex) -> Vec<(Degree, usize)> {
    degree_classes(c)
        .into_iter()
        .map(|(deg, idx)| {
            let below = indices_of(c, deg.shift(-1));
            let above = indices_of(c, deg.shift(1));
            let r = rank_mod2(&block(c, &below, &idx)) + rank_mod2(&block(c, &idx, &above));
            (deg, idx.len() - r)
        })
        .collect()
}

/// Cycles, boundaries and class coordinates in a single degree class.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: Degree,
    /// Generators of the complex lying in this class.
    pub indices: Vec<usize>,
    /// Representatives of a basis of the free part.
    pub free: Vec<Chain>,
    /// Torsion representatives with their orders.
    pub torsion: Vec<(BigInt, Chain)>,
    /// A basis of all cycles in this class.
    pub cycles: Vec<Chain>,
    out_map: IntMatrix,
    coords: IntMatrix,
    diag: Vec<BigInt>,
    boundaries: Lattice,
}

impl HomologyBasis {
    pub fn new(c: &ChainComplex, degree: Degree) -> Result<Self> {
        ensure_complex(c)?;
        let indices = indices_of(c, degree);
        let below = indices_of(c, degree.shift(-1));
        let above = indices_of(c, degree.shift(1));
        let n = indices.len();
        let d_out = block(c, &below, &indices);
        let d_in = block(c, &indices, &above);
        let s = smith(&d_out);
        let r = s.rank();
        let z_cols: Vec<Vec<BigInt>> = (r..n).map(|j| s.v.column(j)).collect();
        let v_rest = s.v_inv.row_block(r, n);
        let bz = v_rest.mul(&d_in);
        let s2 = smith(&bz);
        let adapted = {
            let mut zm = IntMatrix::zeros(n, n - r);
            for (j, col) in z_cols.iter().enumerate() {
                for (i, x) in col.iter().enumerate() {
                    zm.set(i, j, x.clone());
                }
            }
            zm.mul(&s2.u_inv)
        };
        let to_chain = |col: Vec<BigInt>| -> Chain {
            col.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (indices[i], i64::try_from(x).expect("representative fits in i64")))
                .collect()
        };
        let r2 = s2.rank();
        let free = (r2..n - r).map(|j| to_chain(adapted.column(j))).collect();
        let torsion = (0..r2)
            .filter(|&j| !s2.diag[j].is_one())
            .map(|j| (s2.diag[j].clone(), to_chain(adapted.column(j))))
            .collect();
        let cycles = z_cols.into_iter().map(to_chain).collect();
        let boundaries = Lattice::new(n, (0..above.len()).map(|j| d_in.column(j)));
        Ok(HomologyBasis {
            degree,
            indices,
            free,
            torsion,
            cycles,
            out_map: d_out,
            coords: s2.u.mul(&v_rest),
            diag: s2.diag,
            boundaries,
        })
    }

    pub fn rank(&self) -> usize {
        self.free.len()
    }

    fn dense(&self, x: &Chain) -> Result<Vec<BigInt>> {
        let pos: std::collections::HashMap<usize, usize> =
            self.indices.iter().enumerate().map(|(r, &i)| (i, r)).collect();
        let mut v = vec![BigInt::zero(); self.indices.len()];
        for (&i, &c) in x {
            let &p = pos
                .get(&i)
                .ok_or_else(|| Error::Shape(format!("generator {i} is not in degree class {}", self.degree)))?;
            v[p] = BigInt::from(c);
        }
        Ok(v)
    }

    pub fn is_cycle(&self, x: &Chain) -> Result<bool> {
        let v = self.dense(x)?;
        Ok(self.out_map.mul_vec(&v).iter().all(Zero::is_zero))
    }

    /// Coordinates of a cycle on the free basis; torsion coordinates are dropped.
    pub fn free_coordinates(&self, x: &Chain) -> Result<Vec<BigInt>> {
        if !self.is_cycle(x)? {
            return Err(Error::NotClosed(format!("{x:?}")));
        }
        let w = self.coords.mul_vec(&self.dense(x)?);
        Ok(w[self.diag.len()..].to_vec())
    }

    /// Whether a cycle is a boundary.
    pub fn is_boundary(&self, x: &Chain) -> Result<bool> {
        if !self.is_cycle(x)? {
            return Err(Error::NotClosed(format!("{x:?}")));
        }
        Ok(self.boundaries.contains(&self.dense(x)?))
    }

    /// Dense coordinates of a chain supported in this class.
    pub fn to_dense(&self, x: &Chain) -> Result<Vec<BigInt>> {
        self.dense(x)
    }

    pub fn boundary_lattice(&self) -> &Lattice {
        &self.boundaries
    }
}
