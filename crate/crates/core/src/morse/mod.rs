//! Ground-truth count data for flat tori `T^d` with `f = sum a_i cos θ_i`.
//!
//! Each circle factor is handled by brute force on a uniform grid. A star-shaped
//! gradient tree has its vertex on the unstable manifold of every incoming orbit
//! and the stable manifold of every outgoing orbit, for leg functions
//! `a cos(θ - φ_leg)` with distinct phases. Factor counts are combined with Koszul signs.

mod simplicial;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::floer::{FloerData, Orbit};
use crate::graded::graded_sign_parities;
use crate::linalg::{unimodular_inverse, IntMatrix};
use crate::products::{cup, unit, ClassSpace, CocycleElement, ThetaBundle};
use crate::tqft::{CountTable, SlotKey, Term};

pub use simplicial::{simplicial_oracle, SimplicialRing};

pub const DEFAULT_SAMPLES: usize = 1 << 12;
const PHASE_OFFSET: f64 = 0.3;

#[derive(Clone, Debug, PartialEq)]
pub struct TorusModel {
    amplitudes: Vec<f64>,
    samples: usize,
}

impl TorusModel {
    pub fn new(amplitudes: Vec<f64>) -> Result<Self> {
        let d = amplitudes.len();
        if d == 0 || d % 2 == 1 {
            return Err(Error::Validation(format!("torus dimension {d} must be even and positive")));
        }
        for (i, a) in amplitudes.iter().enumerate() {
            if !(a.is_finite() && *a > 0.0) {
                return Err(Error::Validation(format!("amplitude {i} = {a} must be positive")));
            }
            if amplitudes[..i].contains(a) {
                return Err(Error::Validation(format!("amplitude {a} repeated")));
            }
        }
        Ok(TorusModel {
            amplitudes,
            samples: DEFAULT_SAMPLES,
        })
    }

    /// Amplitudes `1, 1.25, 1.5, ...`.
    pub fn standard(d: usize) -> Result<Self> {
        Self::new((0..d).map(|i| 1.0 + 0.25 * i as f64).collect())
    }

    /// Grid size per circle used by the tree enumeration.
    pub fn with_samples(mut self, samples: usize) -> Result<Self> {
        if samples < 16 {
            return Err(Error::Validation(format!("{samples} samples per circle is too coarse")));
        }
        self.samples = samples;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn samples(&self) -> usize {
        self.samples
    }
}

/// A critical point of `f`: coordinate `i` sits at π (index contribution 0) when `pattern[i] = 0`
/// and at 0 (contribution 1) when `pattern[i] = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CriticalPoint {
    pub pattern: Vec<u8>,
}

impl CriticalPoint {
    pub fn index(&self) -> usize {
        self.pattern.iter().map(|&s| s as usize).sum()
    }

    pub fn name(&self) -> String {
        let bits: String = self.pattern.iter().map(|s| char::from(b'0' + s)).collect();
        format!("x{bits}")
    }
}

/// All `2^d` critical points ordered by index, then with earlier coordinates first.
pub fn critical_points(d: usize) -> Vec<CriticalPoint> {
    let mut pts: Vec<CriticalPoint> = (0..1usize << d)
        .map(|m| CriticalPoint {
            pattern: (0..d).map(|i| ((m >> i) & 1) as u8).collect(),
        })
        .collect();
    pts.sort_by(|a, b| a.index().cmp(&b.index()).then_with(|| b.pattern.cmp(&a.pattern)));
    pts
}

/// Signed flow lines of `a cos θ` from the maximum at 0 to the minimum at π.
/// The unstable manifold of the maximum is oriented by increasing θ.
fn circle_flow_lines(a: f64) -> Vec<i64> {
    [PI / 2.0, 3.0 * PI / 2.0]
        .iter()
        .map(|&mid| {
            let velocity = a * mid.sin();
            if velocity > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Orbits are the critical points; `m1` records the factorwise sum of signed flow lines.
pub fn generate_data(model: &TorusModel) -> FloerData {
    let d = model.dim();
    let pts = critical_points(d);
    let orbits = pts.iter().map(|p| Orbit::new(p.name(), p.index() as i64)).collect();
    let mut m1 = Vec::new();
    for p in &pts {
        for (i, &s) in p.pattern.iter().enumerate() {
            if s == 1 {
                let mut q = p.clone();
                q.pattern[i] = 0;
                let count: i64 = circle_flow_lines(model.amplitudes[i]).iter().sum();
                m1.push((p.name(), q.name(), count));
            }
        }
    }
    FloerData::new((d / 2) as u32, 0, 0, orbits, m1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Incoming,
    Outgoing,
}

/// Grid cell containing the critical point of `a cos(θ - φ)` of the requested kind.
fn critical_cell(a: f64, phase: f64, maximum: bool, samples: usize) -> Result<usize> {
    let step = 2.0 * PI / samples as f64;
    let deriv = |k: usize| -a * (k as f64 * step - phase).sin();
    let mut found = None;
    for k in 0..samples {
        let (l, r) = (deriv(k), deriv((k + 1) % samples));
        if l == 0.0 {
            return Err(Error::Genericity(format!("critical point of phase {phase} on grid node {k}")));
        }
        let crossing = if maximum { l > 0.0 && r < 0.0 } else { l < 0.0 && r > 0.0 };
        if crossing {
            if found.is_some() {
                return Err(Error::Genericity(format!("two sign changes for phase {phase}")));
            }
            found = Some(k);
        }
    }
    found.ok_or_else(|| Error::Genericity(format!("no certified critical point for phase {phase}")))
}

/// Signed count of rigid star trees on one circle factor. `legs[l] = (role, at_maximum)`.
fn circle_tree_count(a: f64, legs: &[(Role, bool)], samples: usize) -> Result<i64> {
    // (is point manifold, cell of the point or of the excluded point)
    let mut shapes = Vec::with_capacity(legs.len());
    for (l, &(role, at_max)) in legs.iter().enumerate() {
        let phase = PHASE_OFFSET + l as f64 * a;
        let point = match role {
            Role::Incoming => !at_max,
            Role::Outgoing => at_max,
        };
        // A point manifold sits at its own critical point; an open one misses the opposite one.
        let cell = critical_cell(a, phase, if point { at_max } else { !at_max }, samples)?;
        shapes.push((point, cell));
    }
    if shapes.iter().filter(|s| s.0).count() != 1 {
        return Ok(0);
    }
    let (_, cell) = *shapes.iter().find(|s| s.0).expect("one point leg");
    if shapes.iter().any(|&(p, c)| !p && c == cell) {
        return Err(Error::Genericity(format!(
            "tree vertex at a critical point (cell {cell} of {samples})"
        )));
    }
    let count = (0..samples)
        .filter(|&v| shapes.iter().all(|&(point, c)| if point { c == v } else { c != v }))
        .count();
    Ok(count as i64)
}

/// Nonzero counts on circle `i` for the slot, keyed by per-leg max/min choices.
fn circle_table(model: &TorusModel, i: usize, k_minus: usize, k_plus: usize) -> Result<Vec<(Vec<u8>, i64)>> {
    let k = k_minus + k_plus;
    let mut out = Vec::new();
    for m in 0..1usize << k {
        let bits: Vec<u8> = (0..k).map(|l| ((m >> l) & 1) as u8).collect();
        let legs: Vec<(Role, bool)> = bits
            .iter()
            .enumerate()
            .map(|(l, &b)| (if l < k_minus { Role::Incoming } else { Role::Outgoing }, b == 1))
            .collect();
        let c = circle_tree_count(model.amplitudes[i], &legs, model.samples)?;
        if c != 0 {
            out.push((bits, c));
        }
    }
    Ok(out)
}

/// Koszul sign taking factor-major order to slot-major order, with cochain slots
/// listing their circle factors in reverse.
fn assembly_sign(choice: &[&Vec<u8>], k_minus: usize, k_plus: usize) -> i64 {
    let d = choice.len();
    let k = k_minus + k_plus;
    let parities: Vec<u8> = choice.iter().flat_map(|bits| bits.iter().copied()).collect();
    let mut images = Vec::with_capacity(d * k);
    for slot in 0..k {
        for c in 0..d {
            let c = if slot < k_minus { d - 1 - c } else { c };
            images.push(c * k + slot);
        }
    }
    graded_sign_parities(&images, &parities)
}

/// Orientation twist of a product configuration: `(-1)^{n + μ(first)}` with two cochain
/// slots. Single circles admit no consistent duality signs, so the convention is fixed on
/// the product, where it makes every gluing among the generated tables exact.
fn orientation_sign(n: usize, key: SlotKey, minus: &[usize]) -> i64 {
    if key.k_minus != 2 || (n + minus[0]).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The genus-zero, q = 0 count table for `key` on the torus.
pub fn torus_table(model: &TorusModel, key: SlotKey) -> Result<CountTable> {
    if key.g != 0 {
        return Err(Error::Validation(format!("only genus-zero tables are generated, not {key}")));
    }
    let (km, kp) = (key.k_minus, key.k_plus);
    let d = model.dim();
    let per_factor = (0..d)
        .map(|i| circle_table(model, i, km, kp))
        .collect::<Result<Vec<_>>>()?;
    let label = format!("theta_{}_{}_{}", key.g, km, kp);
    let mut table = CountTable::new(key, 0, label);
    let mut idx = vec![0usize; d];
    if per_factor.iter().any(|f| f.is_empty()) {
        return Ok(table);
    }
    loop {
        let choice: Vec<&Vec<u8>> = (0..d).map(|c| &per_factor[c][idx[c]].0).collect();
        let count: i64 = (0..d).map(|c| per_factor[c][idx[c]].1).product();
        let point = |slot: usize| CriticalPoint {
            pattern: choice.iter().map(|bits| bits[slot]).collect(),
        };
        let minus: Vec<CriticalPoint> = (0..km).map(point).collect();
        let plus: Vec<CriticalPoint> = (km..km + kp).map(point).collect();
        let index = |v: &[CriticalPoint]| v.iter().map(CriticalPoint::index).collect::<Vec<_>>();
        let sign = assembly_sign(&choice, km, kp) * orientation_sign(d / 2, key, &index(&minus));
        let minus = minus.iter().map(CriticalPoint::name).collect();
        let plus = plus.iter().map(CriticalPoint::name).collect();
        table.set(Term { minus, plus }, sign * count)?;
        let mut c = 0;
        loop {
            if c == d {
                return Ok(table);
            }
            idx[c] += 1;
            if idx[c] < per_factor[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

/// The slots generated for every torus.
pub const THETA_KEYS: [SlotKey; 7] = [
    SlotKey::new(0, 1, 2),
    SlotKey::new(0, 2, 1),
    SlotKey::new(0, 2, 0),
    SlotKey::new(0, 0, 2),
    SlotKey::new(0, 1, 0),
    SlotKey::new(0, 0, 1),
    SlotKey::new(0, 1, 3),
];

pub fn generate_tables(model: &TorusModel) -> Result<Vec<CountTable>> {
    THETA_KEYS.iter().map(|&k| torus_table(model, k)).collect()
}

/// The generated tables as a bundle.
pub fn generate_theta_tables(model: &TorusModel) -> Result<ThetaBundle> {
    Ok(ThetaBundle::from_tables(generate_tables(model)?))
}

/// How the Floer cup product on a torus lines up with the simplicial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    /// Simplicial generator `e_i` is matched with the dual of this orbit.
    pub relabeling: Vec<(usize, String)>,
    pub ranks: Vec<usize>,
    pub mismatches: Vec<String>,
}

impl OracleComparison {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Sends `e_i` to the cochain dual to the index-1 orbit with bit `i`, then compares ranks,
/// checks that the monomials `f_I` form a basis and that all structure constants agree.
pub fn compare_with_oracle(
    d: usize,
    data: &FloerData,
    theta: &ThetaBundle,
    oracle: &SimplicialRing,
) -> Result<OracleComparison> {
    let mut mismatches = Vec::new();
    let relabeling: Vec<(usize, String)> = (0..d)
        .map(|i| {
            let pattern = (0..d).map(|j| u8::from(i == j)).collect();
            (i, CriticalPoint { pattern }.name())
        })
        .collect();
    let spaces = (0..=d)
        .map(|k| ClassSpace::new(data, true, k as i64))
        .collect::<Result<Vec<_>>>()?;
    let ranks: Vec<usize> = spaces.iter().map(|s| s.basis().rank()).collect();
    if ranks != oracle.betti {
        mismatches.push(format!("ranks {ranks:?} vs betti {:?}", oracle.betti));
        return Ok(OracleComparison {
            relabeling,
            ranks,
            mismatches,
        });
    }

    let mut reps: BTreeMap<Vec<usize>, CocycleElement> = BTreeMap::new();
    reps.insert(vec![], unit(theta, data)?);
    for layer in &oracle.basis[1..] {
        for m in layer {
            let (last, rest) = m.split_last().expect("nonempty monomial");
            let g = CocycleElement::cochain(&relabeling[*last].1, data)?;
            reps.insert(m.clone(), cup(&reps[rest], &g, theta, data)?);
        }
    }
    let mut inverses = Vec::new();
    for (k, layer) in oracle.basis.iter().enumerate() {
        let mut mat = IntMatrix::zeros(ranks[k], layer.len());
        for (j, m) in layer.iter().enumerate() {
            for (i, x) in spaces[k].coordinates(&reps[m].element)?.into_iter().enumerate() {
                mat.set(i, j, x);
            }
        }
        match unimodular_inverse(&mat) {
            Some(inv) => inverses.push(inv),
            None => {
                mismatches.push(format!("degree-{k} Floer monomials are not a basis"));
                return Ok(OracleComparison {
                    relabeling,
                    ranks,
                    mismatches,
                });
            }
        }
    }
    for (p, left) in oracle.basis.iter().enumerate() {
        for right in oracle.basis.iter().take(d - p + 1) {
            for i in left {
                for j in right {
                    let k = i.len() + j.len();
                    let c = cup(&reps[i], &reps[j], theta, data)?;
                    let w: Vec<BigInt> = inverses[k].mul_vec(&spaces[k].coordinates(&c.element)?);
                    let expected: Vec<BigInt> = oracle.product(i, j).expect("in range").iter().map(|&x| x.into()).collect();
                    if w != expected {
                        mismatches.push(format!("f{i:?} ∪ f{j:?}: {w:?} vs {expected:?}"));
                    }
                }
            }
        }
    }
    Ok(OracleComparison {
        relabeling,
        ranks,
        mismatches,
    })
}
