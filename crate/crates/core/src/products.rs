//! Products on Floer (co)homology computed from Θ tables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::floer::{build_cf, build_cf_dual, FloerData, Universe};
use crate::graded::{Chain, ChainComplex, Degree, HomologyBasis};
use crate::linalg::Lattice;
use crate::report::Report;
use crate::tqft::{
    check_cycle, check_gluing, check_self_gluing, check_table, diamond, differential, q_of_table, CountTable, SlotKey, TensorElement,
    Term,
};

pub const IDENTITY: SlotKey = SlotKey::new(0, 1, 1);
pub const PANTS: SlotKey = SlotKey::new(0, 1, 2);
pub const COPANTS: SlotKey = SlotKey::new(0, 2, 1);
pub const PD_SHARP: SlotKey = SlotKey::new(0, 2, 0);
pub const PD_FLAT: SlotKey = SlotKey::new(0, 0, 2);
pub const UNIT: SlotKey = SlotKey::new(0, 1, 0);
pub const TOP: SlotKey = SlotKey::new(0, 0, 1);
pub const FOUR_PUNCTURED: SlotKey = SlotKey::new(0, 1, 3);
pub const TORUS_TRACE: SlotKey = SlotKey::new(1, 0, 0);

/// Canonical label of a point-simplex table.
pub fn theta_label(key: SlotKey) -> String {
    format!("theta_{}_{}_{}", key.g, key.k_minus, key.k_plus)
}

/// The diagonal table `#M(α, α) = 1`.
pub fn diagonal_table(data: &FloerData) -> CountTable {
    let mut t = CountTable::new(IDENTITY, 0, theta_label(IDENTITY));
    for o in data.orbits() {
        t.set_entry(&[&o.name], &[&o.name], 1).expect("arity (1,1)");
    }
    t
}

/// The q = 0 Θ tables of one data set plus optional higher-simplex tables.
/// When no `(0,1,1)` table is supplied the diagonal table stands in for it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaBundle {
    tables: BTreeMap<SlotKey, CountTable>,
    homotopies: BTreeMap<String, CountTable>,
}

impl ThetaBundle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_tables(tables: impl IntoIterator<Item = CountTable>) -> Self {
        let mut b = Self::new();
        for t in tables {
            b.insert(t);
        }
        b
    }

    pub fn insert(&mut self, t: CountTable) {
        if t.q == 0 {
            self.tables.insert(t.key, t);
        } else {
            self.homotopies.insert(t.label.clone(), t);
        }
    }

    /// The q = 0 table for `key`, with the diagonal as the identity fallback.
    pub fn table(&self, key: SlotKey, data: &FloerData) -> Result<CountTable> {
        match self.tables.get(&key) {
            Some(t) => Ok(t.clone()),
            None if key == IDENTITY => Ok(diagonal_table(data)),
            None => Err(Error::MissingTable(theta_label(key))),
        }
    }

    pub fn get(&self, key: SlotKey) -> Option<&CountTable> {
        self.tables.get(&key)
    }

    pub fn homotopy(&self, label: &str) -> Option<&CountTable> {
        self.homotopies.get(label)
    }

    pub fn tables(&self) -> impl Iterator<Item = &CountTable> {
        self.tables.values().chain(self.homotopies.values())
    }

    fn by_label<'a>(&'a self, label: &str) -> Option<&'a CountTable> {
        self.tables().find(|t| t.label == label)
    }

    pub fn q_element(&self, key: SlotKey, data: &FloerData) -> Result<TensorElement> {
        q_of_table(&self.table(key, data)?, &Universe::single(data))
    }

    /// check_table and check_cycle on every table, then every gluing among present tables
    /// that the product laws use.
    pub fn validate(&self, data: &FloerData) -> Result<Report> {
        let u = Universe::single(data);
        let mut r = Report::new();
        for t in self.tables() {
            r.extend(check_table(t, &u, true));
            r.extend(check_cycle(t, |l| self.by_label(l), &u)?);
        }
        for (k1, k2, i, j, k3) in BUNDLE_GLUINGS {
            if let (Some(t1), Some(t2)) = (self.get(k1), self.get(k2)) {
                if k3 == IDENTITY || self.get(k3).is_some() {
                    r.extend(check_gluing(t1, t2, &self.table(k3, data)?, i, j, &u)?);
                }
            }
        }
        if let Some(trace) = self.get(TORUS_TRACE) {
            r.extend(check_self_gluing(&self.table(IDENTITY, data)?, trace, 1, 1, &u)?);
        }
        Ok(r)
    }
}

/// Gluing identities among Θ tables: `(t1, t2, i, j, t3)` meaning `t1 ◊_ij t2 = t3`.
pub const BUNDLE_GLUINGS: [(SlotKey, SlotKey, usize, usize, SlotKey); 12] = [
    (PANTS, UNIT, 2, 1, IDENTITY),
    (PANTS, UNIT, 1, 1, IDENTITY),
    (PD_FLAT, PD_SHARP, 2, 2, IDENTITY),
    (PD_FLAT, PD_SHARP, 1, 1, IDENTITY),
    (PANTS, PANTS, 2, 1, FOUR_PUNCTURED),
    (PANTS, PANTS, 1, 1, FOUR_PUNCTURED),
    (TOP, COPANTS, 1, 1, IDENTITY),
    (TOP, COPANTS, 1, 2, IDENTITY),
    (PD_FLAT, UNIT, 2, 1, TOP),
    (PD_FLAT, UNIT, 1, 1, TOP),
    (TOP, PD_SHARP, 1, 1, UNIT),
    (TOP, PD_SHARP, 1, 2, UNIT),
];

/// A Floer cochain (arity (1,0)) or chain (arity (0,1)) with its μ-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleElement {
    pub element: TensorElement,
    pub degree: i64,
}

impl CocycleElement {
    /// Wraps an element, reading the degree off its terms; `fallback` is used for zero.
    pub fn new(element: TensorElement, fallback: i64, data: &FloerData) -> Result<Self> {
        let arity = element.arity();
        if arity != (1, 0) && arity != (0, 1) {
            return Err(Error::Shape(format!("a cochain or chain has arity (1,0) or (0,1), not {arity:?}")));
        }
        let mut degree = None;
        for (t, _) in element.terms() {
            let mu = data.mu(t.names().next().expect("one factor"))?;
            match degree {
                None => degree = Some(mu),
                Some(d) if crate::floer::congruent(d, mu, data.modulus()) => {}
                Some(d) => {
                    return Err(Error::InvalidGrading(format!("element mixes degrees {d} and {mu}")));
                }
            }
        }
        Ok(CocycleElement {
            element,
            degree: degree.unwrap_or(fallback),
        })
    }

    pub fn cochain(name: &str, data: &FloerData) -> Result<Self> {
        Ok(CocycleElement {
            element: TensorElement::cochain(name),
            degree: data.mu(name)?,
        })
    }

    pub fn chain(name: &str, data: &FloerData) -> Result<Self> {
        Ok(CocycleElement {
            element: TensorElement::chain(name),
            degree: data.mu(name)?,
        })
    }

    pub fn zero_cochain(degree: i64) -> Self {
        CocycleElement {
            element: TensorElement::zero(1, 0),
            degree,
        }
    }

    pub fn zero_chain(degree: i64) -> Self {
        CocycleElement {
            element: TensorElement::zero(0, 1),
            degree,
        }
    }

    pub fn is_cochain(&self) -> bool {
        self.element.arity() == (1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.element.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(CocycleElement {
            element: self.element.add(&other.element)?,
            degree: self.degree,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(CocycleElement {
            element: self.element.sub(&other.element)?,
            degree: self.degree,
        })
    }

    pub fn scale(&self, c: i64) -> Self {
        CocycleElement {
            element: self.element.scale(c),
            degree: self.degree,
        }
    }
}

fn require_closed(x: &CocycleElement, u: &Universe) -> Result<()> {
    let dx = differential(&x.element, u)?;
    let witness = dx.terms().next().map(|(t, c)| format!("{c}·{t}"));
    match witness {
        None => Ok(()),
        Some(w) => Err(Error::NotClosed(format!("{w} in the differential of {}", x.element))),
    }
}

fn require_arity(x: &CocycleElement, arity: (usize, usize), what: &str) -> Result<()> {
    if x.element.arity() != arity {
        return Err(Error::Shape(format!("{what} must have arity {arity:?}")));
    }
    Ok(())
}

/// `Σ α ⊗ α`
pub fn identity_element(data: &FloerData) -> TensorElement {
    diagonal_table(data).raw_element()
}

/// `a ∪ b = (Q(Θ_{0,1,2}) ◊ a) ◊ b`
pub fn cup(a: &CocycleElement, b: &CocycleElement, theta: &ThetaBundle, data: &FloerData) -> Result<CocycleElement> {
    let u = Universe::single(data);
    require_arity(a, (1, 0), "a")?;
    require_arity(b, (1, 0), "b")?;
    require_closed(a, &u)?;
    require_closed(b, &u)?;
    let q = theta.q_element(PANTS, data)?;
    let e = diamond(&diamond(&q, &a.element, 2, 1, &u)?, &b.element, 1, 1, &u)?;
    CocycleElement::new(e, a.degree + b.degree, data)
}

/// `x · y = x ◊ (y ◊ Q(Θ_{0,2,1}))`
pub fn intersection(x: &CocycleElement, y: &CocycleElement, theta: &ThetaBundle, data: &FloerData) -> Result<CocycleElement> {
    let u = Universe::single(data);
    require_arity(x, (0, 1), "x")?;
    require_arity(y, (0, 1), "y")?;
    require_closed(x, &u)?;
    require_closed(y, &u)?;
    let q = theta.q_element(COPANTS, data)?;
    let e = diamond(&x.element, &diamond(&y.element, &q, 1, 1, &u)?, 1, 1, &u)?;
    CocycleElement::new(e, x.degree + y.degree - 2 * data.n() as i64, data)
}

/// `x ∩ a = (x ◊ Q(Θ_{0,1,2})) ◊ a`
pub fn cap(x: &CocycleElement, a: &CocycleElement, theta: &ThetaBundle, data: &FloerData) -> Result<CocycleElement> {
    let u = Universe::single(data);
    require_arity(x, (0, 1), "x")?;
    require_arity(a, (1, 0), "a")?;
    require_closed(x, &u)?;
    require_closed(a, &u)?;
    let q = theta.q_element(PANTS, data)?;
    let e = diamond(&diamond(&x.element, &q, 1, 1, &u)?, &a.element, 2, 1, &u)?;
    CocycleElement::new(e, x.degree - a.degree, data)
}

/// `x♯ = x ◊ Q(Θ_{0,2,0})`
pub fn pd_sharp(x: &CocycleElement, theta: &ThetaBundle, data: &FloerData) -> Result<CocycleElement> {
    let u = Universe::single(data);
    require_arity(x, (0, 1), "x")?;
    let q = theta.q_element(PD_SHARP, data)?;
    let e = diamond(&x.element, &q, 1, 1, &u)?;
    CocycleElement::new(e, 2 * data.n() as i64 - x.degree, data)
}

/// `a♭ = Q(Θ_{0,0,2}) ◊ a`
pub fn pd_flat(a: &CocycleElement, theta: &ThetaBundle, data: &FloerData) -> Result<CocycleElement> {
    let u = Universe::single(data);
    require_arity(a, (1, 0), "a")?;
    let q = theta.q_element(PD_FLAT, data)?;
    let e = diamond(&q, &a.element, 2, 1, &u)?;
    CocycleElement::new(e, 2 * data.n() as i64 - a.degree, data)
}

/// `1 = Q(Θ_{0,1,0})`
pub fn unit(theta: &ThetaBundle, data: &FloerData) -> Result<CocycleElement> {
    CocycleElement::new(theta.q_element(UNIT, data)?, 0, data)
}

/// `[M] = Q(Θ_{0,0,1})`
pub fn top_class(theta: &ThetaBundle, data: &FloerData) -> Result<CocycleElement> {
    CocycleElement::new(theta.q_element(TOP, data)?, 2 * data.n() as i64, data)
}

/// `Σ (-1)^{μ(α)}`
pub fn euler(data: &FloerData) -> i64 {
    data.orbits().iter().map(|o| crate::floer::sign(o.mu)).sum()
}

/// How two closed elements compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equality {
    ChainExact,
    UpToCoboundary,
    Different,
}

impl Equality {
    pub fn holds(self) -> bool {
        self != Equality::Different
    }
}

/// Homology of the Floer (co)chain complex in the degree class of an element.
pub struct ClassSpace {
    cochain: bool,
    complex: ChainComplex,
    basis: HomologyBasis,
}

impl ClassSpace {
    /// Cochains of μ-degree `degree` (`cochain = true`) or chains of μ-degree `degree`.
    pub fn new(data: &FloerData, cochain: bool, degree: i64) -> Result<Self> {
        let complex = if cochain { build_cf_dual(data)? } else { build_cf(data)? };
        let d = if cochain { -degree } else { degree };
        let basis = HomologyBasis::new(&complex, Degree::new(d, data.modulus()))?;
        Ok(ClassSpace {
            cochain,
            complex,
            basis,
        })
    }

    pub fn for_element(x: &CocycleElement, data: &FloerData) -> Result<Self> {
        Self::new(data, x.is_cochain(), x.degree)
    }

    pub fn basis(&self) -> &HomologyBasis {
        &self.basis
    }

    pub fn to_chain(&self, x: &TensorElement) -> Result<Chain> {
        let mut out = Chain::new();
        for (t, c) in x.terms() {
            let name = t.names().next().ok_or_else(|| Error::Shape("empty term".into()))?;
            let i = self
                .complex
                .basis()
                .position(name)
                .ok_or_else(|| Error::Lookup(format!("unknown orbit {name}")))?;
            out.insert(i, c);
        }
        Ok(out)
    }

    pub fn to_element(&self, v: &Chain) -> TensorElement {
        let mut out = if self.cochain {
            TensorElement::zero(1, 0)
        } else {
            TensorElement::zero(0, 1)
        };
        for (&i, &c) in v {
            let name = self.complex.label(i);
            let t = if self.cochain {
                Term::new(&[name], &[])
            } else {
                Term::new(&[], &[name])
            };
            out.add_term(t, c).expect("arity matches");
        }
        out
    }

    /// Free homology coordinates of a closed element.
    pub fn coordinates(&self, x: &TensorElement) -> Result<Vec<BigInt>> {
        self.basis.free_coordinates(&self.to_chain(x)?)
    }

    pub fn is_boundary(&self, x: &TensorElement) -> Result<bool> {
        self.basis.is_boundary(&self.to_chain(x)?)
    }

    /// Basis representatives of the free part.
    pub fn free_representatives(&self) -> Vec<TensorElement> {
        self.basis.free.iter().map(|c| self.to_element(c)).collect()
    }

    /// A basis of all closed elements in this degree.
    pub fn cycle_representatives(&self) -> Vec<TensorElement> {
        self.basis.cycles.iter().map(|c| self.to_element(c)).collect()
    }

    pub fn dense(&self, x: &TensorElement) -> Result<Vec<BigInt>> {
        self.basis.to_dense(&self.to_chain(x)?)
    }

    pub fn boundaries(&self) -> &Lattice {
        self.basis.boundary_lattice()
    }

    pub fn from_dense(&self, v: &[BigInt]) -> TensorElement {
        let chain: Chain = v
            .iter()
            .zip(&self.basis.indices)
            .filter(|(x, _)| **x != BigInt::from(0))
            .map(|(x, &i)| (i, i64::try_from(x).expect("coefficient fits in i64")))
            .collect();
        self.to_element(&chain)
    }
}

/// Class of a closed element: its free coordinates and whether it is a (co)boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub degree: i64,
    pub coordinates: Vec<BigInt>,
    pub trivial: bool,
}

pub fn homology_class(x: &CocycleElement, data: &FloerData) -> Result<HomologyClass> {
    let space = ClassSpace::for_element(x, data)?;
    let chain = space.to_chain(&x.element)?;
    if !space.basis.is_cycle(&chain)? {
        return Err(Error::NotClosed(x.element.to_string()));
    }
    Ok(HomologyClass {
        degree: x.degree,
        coordinates: space.basis.free_coordinates(&chain)?,
        trivial: space.basis.is_boundary(&chain)?,
    })
}

/// Compares two closed elements of the same kind and degree.
pub fn compare_classes(x: &CocycleElement, y: &CocycleElement, data: &FloerData) -> Result<Equality> {
    if x.element.arity() != y.element.arity() {
        return Err(Error::Shape("comparing a chain with a cochain".into()));
    }
    if x.element == y.element {
        return Ok(Equality::ChainExact);
    }
    if !crate::floer::congruent(x.degree, y.degree, data.modulus()) {
        return Ok(Equality::Different);
    }
    let diff = x.sub(y)?;
    Ok(if homology_class(&diff, data)?.trivial {
        Equality::UpToCoboundary
    } else {
        Equality::Different
    })
}

/// A q = 1 table on `(0,1,3)` with no entries, both faces pointing at `face`.
pub fn zero_homotopy(label: &str, face: &str) -> CountTable {
    let mut t = CountTable::new(FOUR_PUNCTURED, 1, label);
    t.set_face(1, 0, face).expect("q = 1");
    t.set_face(1, 1, face).expect("q = 1");
    t
}

/// A Massey product representative with its indeterminacy.
#[derive(Clone, Debug)]
pub struct MasseyResult {
    pub representative: CocycleElement,
    /// Basis (in Hermite form) of `a ∪ Z + Z ∪ c + B` in cochain coordinates.
    pub indeterminacy: Vec<TensorElement>,
    /// Basis of the image of `a ∪ HF + HF ∪ c` in free homology coordinates.
    pub indeterminacy_classes: Vec<Vec<BigInt>>,
    pub class: Vec<BigInt>,
    pub trivial: bool,
}

fn require_equal(lhs: &TensorElement, rhs: &TensorElement, what: &str) -> Result<()> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((t, a, b)) => Err(Error::Hypothesis {
            what: what.to_string(),
            witness: format!("{t}: {a} vs {b}"),
        }),
    }
}

/// `M(a,b,c) = Q(λ)◊a◊b◊c + (Q(θ)◊ζ)◊c − (−1)^{μ(a)} (Q(θ)◊a)◊ξ`
#[allow(clippy::too_many_arguments)]
pub fn massey(
    a: &CocycleElement,
    b: &CocycleElement,
    c: &CocycleElement,
    theta: &ThetaBundle,
    zeta: &CocycleElement,
    xi: &CocycleElement,
    lambda: &CountTable,
    data: &FloerData,
) -> Result<MasseyResult> {
    let u = Universe::single(data);
    for (x, name) in [(a, "a"), (b, "b"), (c, "c"), (zeta, "zeta"), (xi, "xi")] {
        require_arity(x, (1, 0), name)?;
    }
    for (x, name) in [(a, "a"), (b, "b"), (c, "c")] {
        require_closed(x, &u).map_err(|e| Error::Hypothesis {
            what: format!("{name} is closed"),
            witness: e.to_string(),
        })?;
    }
    let ab = cup(a, b, theta, data)?;
    let bc = cup(b, c, theta, data)?;
    require_equal(&differential(&zeta.element, &u)?, &ab.element, "a ∪ b = d ζ")?;
    require_equal(&differential(&xi.element, &u)?, &bc.element, "b ∪ c = d ξ")?;

    if lambda.key != FOUR_PUNCTURED || lambda.q != 1 {
        return Err(Error::Hypothesis {
            what: "λ is a q = 1 table on (0,1,3)".into(),
            witness: format!("{} has slot {} and q = {}", lambda.label, lambda.key, lambda.q),
        });
    }
    let qt = theta.q_element(PANTS, data)?;
    let ql = q_of_table(lambda, &u)?;
    let expected = diamond(&qt, &qt, 1, 1, &u)?.sub(&diamond(&qt, &qt, 2, 1, &u)?)?;
    require_equal(&differential(&ql, &u)?, &expected, "d Q(λ) = Q(θ)◊₁₁Q(θ) − Q(θ)◊₂₁Q(θ)")?;

    let first = diamond(
        &diamond(&diamond(&ql, &a.element, 3, 1, &u)?, &b.element, 2, 1, &u)?,
        &c.element,
        1,
        1,
        &u,
    )?;
    let second = diamond(&diamond(&qt, &zeta.element, 2, 1, &u)?, &c.element, 1, 1, &u)?;
    let third = diamond(&diamond(&qt, &a.element, 2, 1, &u)?, &xi.element, 1, 1, &u)?;
    let sign = crate::floer::sign(a.degree);
    let m = first.add(&second)?.sub(&third.scale(sign))?;
    let degree = a.degree + b.degree + c.degree - 1;
    let rep = CocycleElement::new(m, degree, data)?;
    require_closed(&rep, &u).map_err(|e| Error::Hypothesis {
        what: "the representative is closed".into(),
        witness: e.to_string(),
    })?;

    let target = ClassSpace::new(data, true, degree)?;
    let mut gens = Vec::new();
    for z in ClassSpace::new(data, true, degree - a.degree)?.cycle_representatives() {
        let z = CocycleElement::new(z, degree - a.degree, data)?;
        gens.push(target.dense(&cup(a, &z, theta, data)?.element)?);
    }
    for z in ClassSpace::new(data, true, degree - c.degree)?.cycle_representatives() {
        let z = CocycleElement::new(z, degree - c.degree, data)?;
        gens.push(target.dense(&cup(&z, c, theta, data)?.element)?);
    }
    let class_gens: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| target.basis.free_coordinates(&to_chain_from_dense(&target, g)))
        .collect::<Result<_>>()?;
    gens.extend(target.boundaries().basis().iter().cloned());
    let lattice = Lattice::new(target.basis.indices.len(), gens);
    let class_lattice = Lattice::new(target.basis.rank(), class_gens);
    let class = target.coordinates(&rep.element)?;
    let trivial = lattice.contains(&target.dense(&rep.element)?);
    Ok(MasseyResult {
        indeterminacy: lattice.basis().iter().map(|v| target.from_dense(v)).collect(),
        indeterminacy_classes: class_lattice.basis().to_vec(),
        class,
        trivial,
        representative: rep,
    })
}

fn to_chain_from_dense(space: &ClassSpace, v: &[BigInt]) -> Chain {
    v.iter()
        .zip(&space.basis.indices)
        .filter(|(x, _)| **x != BigInt::from(0))
        .map(|(x, &i)| (i, i64::try_from(x).expect("coefficient fits in i64")))
        .collect()
}

/// `L(x) = x ◊ Q(Θ_{0,1,1}(A, A'))` for a chain `x` over `data`, landing over `data2`.
pub fn continuation(
    x: &CocycleElement,
    theta_pair: &CountTable,
    data: &FloerData,
    data2: &FloerData,
) -> Result<CocycleElement> {
    if theta_pair.key != IDENTITY || theta_pair.q != 0 {
        return Err(Error::Composition(format!(
            "continuation needs a q = 0 table on (0,1,1), not {} with q = {}",
            theta_pair.key, theta_pair.q
        )));
    }
    require_arity(x, (0, 1), "x")?;
    let u = Universe::new(&[data, data2])?;
    for (t, _) in theta_pair.entries() {
        if !u.belongs_to(&t.minus[0], data) {
            return Err(Error::Lookup(format!("{} is not an orbit of the source data", t.minus[0])));
        }
        if !u.belongs_to(&t.plus[0], data2) {
            return Err(Error::Lookup(format!("{} is not an orbit of the target data", t.plus[0])));
        }
    }
    for (t, _) in x.element.terms() {
        if !u.belongs_to(&t.plus[0], data) {
            return Err(Error::Lookup(format!("{} is not an orbit of the source data", t.plus[0])));
        }
    }
    let rep = check_cycle(theta_pair, |_| None, &u)?;
    if let Some(e) = rep.first_error() {
        return Err(Error::Hypothesis {
            what: "the continuation table is a chain map".into(),
            witness: e.to_string(),
        });
    }
    let e = diamond(&x.element, &q_of_table(theta_pair, &u)?, 1, 1, &u)?;
    CocycleElement::new(e, x.degree, data2)
}

/// The table `(α; f(α))` identifying `data` with a relabeled copy.
pub fn relabeling_table(data: &FloerData, f: impl Fn(&str) -> String) -> CountTable {
    let mut t = CountTable::new(IDENTITY, 0, "relabel");
    for o in data.orbits() {
        t.set_entry(std::slice::from_ref(&o.name), &[f(&o.name)], 1).expect("arity (1,1)");
    }
    t
}
