#![allow(dead_code)]

use floerq_core::floer::{FloerData, Orbit};
use floerq_core::graded::{ChainComplex, GradedBasis};
use floerq_core::morse::{generate_data, generate_theta_tables, TorusModel};
use floerq_core::products::ThetaBundle;

pub fn datum(n: u32, orbits: &[(&str, i64)], m1: &[(&str, &str, i64)]) -> FloerData {
    FloerData::new(
        n,
        0,
        0,
        orbits.iter().map(|&(s, mu)| Orbit::new(s, mu)).collect(),
        m1.iter().map(|&(a, b, c)| (a.to_string(), b.to_string(), c)).collect(),
    )
}

/// `d p = q + r` with `p` odd.
pub fn three_orbits() -> FloerData {
    datum(1, &[("p", 1), ("q", 0), ("r", 0)], &[("p", "q", 1), ("p", "r", 1)])
}

/// A square: `d e1 = d e2 = e0`, `d e3 = e2 - e1`.
pub fn square() -> FloerData {
    datum(
        1,
        &[("e0", 0), ("e1", 1), ("e2", 1), ("e3", 2)],
        &[("e1", "e0", 1), ("e2", "e0", 1), ("e3", "e1", 1), ("e3", "e2", -1)],
    )
}

pub fn torus(d: usize) -> (FloerData, ThetaBundle) {
    let model = TorusModel::standard(d).unwrap();
    (generate_data(&model), generate_theta_tables(&model).unwrap())
}

/// A random complex on at most `max_gens` generators in degrees `0..=3`: elementary pieces
/// `d a = m b` conjugated by random same-degree basis changes, so `d^2 = 0` by construction.
pub fn random_complex(rng: &mut impl rand::Rng, max_gens: usize, modulus: u64) -> ChainComplex {
    let n = rng.gen_range(1..=max_gens);
    let mut degrees: Vec<i64> = Vec::with_capacity(n);
    let mut d = vec![vec![0i64; n]; n];
    while degrees.len() < n {
        let q = rng.gen_range(0..=3);
        if degrees.len() + 2 <= n && q > 0 && rng.gen_bool(0.6) {
            let (a, b) = (degrees.len(), degrees.len() + 1);
            degrees.extend([q, q - 1]);
            d[b][a] = rng.gen_range(1..=3);
        } else {
            degrees.push(q);
        }
    }
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j || degrees[i] != degrees[j] {
            continue;
        }
        let c = rng.gen_range(-2..=2);
        // New basis e_j' = e_j + c e_i: rows r_i -= c r_j, columns c_j += c c_i.
        for col in 0..n {
            let v = d[j][col];
            d[i][col] -= c * v;
        }
        for row in 0..n {
            let v = d[row][i];
            d[row][j] += c * v;
        }
    }
    let labels: Vec<(String, i64)> = degrees.iter().enumerate().map(|(i, &q)| (format!("g{i}"), q)).collect();
    let basis = GradedBasis::new(modulus, labels).unwrap();
    let entries = (0..n).flat_map(|b| (0..n).map(move |a| (b, a))).map(|(b, a)| (b, a, d[b][a]));
    ChainComplex::new(basis, entries.filter(|e| e.2 != 0).collect::<Vec<_>>()).unwrap()
}

/// Dense square of the differential, computed from the entries alone.
pub fn dense_square(c: &ChainComplex) -> Vec<Vec<i64>> {
    let n = c.dim();
    let mut m = vec![vec![0i64; n]; n];
    for b in 0..n {
        for a in 0..n {
            m[b][a] = (0..n).map(|k| c.entry(b, k) * c.entry(k, a)).sum();
        }
    }
    m
}
