use std::collections::HashMap;

use super::checks::entry_degree_violation;
use super::element::{CountTable, TensorElement, Term};
use crate::error::{Error, Result};
use crate::floer::{build_cf, build_cf_dual, FloerData, Universe};
use crate::graded::{Chain, ChainComplex, GradedBasis, Permutation, TensorProduct};

/// `(-1)^{q(q-1)/2}`
pub fn q_sign(q: u32) -> i64 {
    if (q as u64 * (q as u64).saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The signed element `(-1)^{q(q-1)/2} sum count · tuple` of a table.
pub fn q_of_table(t: &CountTable, u: &Universe) -> Result<TensorElement> {
    for (term, _) in t.entries() {
        for name in term.names() {
            if !u.contains(name) {
                return Err(Error::Lookup(format!("table {} uses unknown orbit {name}", t.label)));
            }
        }
        if let Some(detail) = entry_degree_violation(t, term, u)? {
            return Err(Error::Validation(format!("table {} entry {term}: {detail}", t.label)));
        }
    }
    Ok(t.raw_element().scale(q_sign(t.q)))
}

struct Parities<'u, 'a> {
    u: &'u Universe<'a>,
    cache: HashMap<String, u8>,
}

impl<'u, 'a> Parities<'u, 'a> {
    fn new(u: &'u Universe<'a>) -> Self {
        Parities {
            u,
            cache: HashMap::new(),
        }
    }

    fn of(&mut self, name: &str) -> Result<u8> {
        if let Some(&p) = self.cache.get(name) {
            return Ok(p);
        }
        let p = self.u.parity(name)?;
        self.cache.insert(name.to_string(), p);
        Ok(p)
    }
}

fn sign_of(images: &[usize], names: &[&String], par: &mut Parities) -> Result<i64> {
    let parities = names.iter().map(|n| par.of(n)).collect::<Result<Vec<u8>>>()?;
    Ok(crate::graded::graded_sign_parities(images, &parities))
}

/// Contracts the `i`-th chain factor of `x` with the `j`-th cochain factor of `y` (both 1-based).
pub fn diamond(x: &TensorElement, y: &TensorElement, i: usize, j: usize, u: &Universe) -> Result<TensorElement> {
    let (xm, xp) = x.arity();
    let (ym, yp) = y.arity();
    if i == 0 || i > xp || j == 0 || j > ym {
        return Err(Error::Shape(format!(
            "◊_{i}{j} on arities ({xm},{xp}) and ({ym},{yp})"
        )));
    }
    let (o_xp, o_ym) = (xm, xm + xp);
    let o_yp = o_ym + ym;
    let mut images = Vec::with_capacity(o_yp + yp);
    images.extend(o_ym..o_ym + j - 1);
    images.extend(0..xm);
    images.extend(o_ym + j..o_ym + ym);
    images.extend(o_xp..o_xp + i - 1);
    images.extend(o_yp..o_yp + yp);
    images.extend(o_xp + i..o_xp + xp);
    images.push(o_xp + i - 1);
    images.push(o_ym + j - 1);
    let (out_m, out_p) = (xm + ym - 1, xp - 1 + yp);

    let mut by_minus: HashMap<&str, Vec<(&Term, i64)>> = HashMap::new();
    for (t, c) in y.terms() {
        by_minus.entry(t.minus[j - 1].as_str()).or_default().push((t, c));
    }
    let mut par = Parities::new(u);
    let mut out = TensorElement::zero(out_m, out_p);
    for (tx, cx) in x.terms() {
        let Some(matches) = by_minus.get(tx.plus[i - 1].as_str()) else {
            continue;
        };
        for &(ty, cy) in matches {
            let source: Vec<&String> = tx.minus.iter().chain(&tx.plus).chain(&ty.minus).chain(&ty.plus).collect();
            let sign = sign_of(&images, &source, &mut par)?;
            let term = Term {
                minus: images[..out_m].iter().map(|&k| source[k].clone()).collect(),
                plus: images[out_m..out_m + out_p].iter().map(|&k| source[k].clone()).collect(),
            };
            out.add_unchecked(term, sign * cx * cy);
        }
    }
    Ok(out)
}

/// Self-contraction of the `i`-th chain factor against the `j`-th cochain factor (1-based).
pub fn box_ij(x: &TensorElement, i: usize, j: usize, u: &Universe) -> Result<TensorElement> {
    let (km, kp) = x.arity();
    if i == 0 || i > kp || j == 0 || j > km {
        return Err(Error::Shape(format!("¤_{i}{j} on arity ({km},{kp})")));
    }
    let mut images: Vec<usize> = (0..km).filter(|&m| m != j - 1).collect();
    images.extend((km..km + kp).filter(|&m| m != km + i - 1));
    images.push(km + i - 1);
    images.push(j - 1);
    let mut par = Parities::new(u);
    let mut out = TensorElement::zero(km - 1, kp - 1);
    for (t, c) in x.terms() {
        if t.plus[i - 1] != t.minus[j - 1] {
            continue;
        }
        let source: Vec<&String> = t.minus.iter().chain(&t.plus).collect();
        let sign = sign_of(&images, &source, &mut par)?;
        let term = Term {
            minus: images[..km - 1].iter().map(|&k| source[k].clone()).collect(),
            plus: images[km - 1..km + kp - 2].iter().map(|&k| source[k].clone()).collect(),
        };
        out.add_unchecked(term, sign * c);
    }
    Ok(out)
}

/// Reorders cochain factors by `rho_minus` and chain factors by `rho_plus` with the graded sign.
pub fn act_permutation(
    rho_minus: &Permutation,
    rho_plus: &Permutation,
    x: &TensorElement,
    u: &Universe,
) -> Result<TensorElement> {
    if rho_minus.len() != x.k_minus() || rho_plus.len() != x.k_plus() {
        return Err(Error::Shape(format!(
            "permutations of sizes ({}, {}) on arity {:?}",
            rho_minus.len(),
            rho_plus.len(),
            x.arity()
        )));
    }
    let rho = rho_minus.block_sum(rho_plus);
    let mut par = Parities::new(u);
    let mut out = TensorElement::zero(x.k_minus(), x.k_plus());
    for (t, c) in x.terms() {
        let source: Vec<&String> = t.minus.iter().chain(&t.plus).collect();
        let sign = sign_of(rho.images(), &source, &mut par)?;
        let term = Term {
            minus: rho_minus.apply(&t.minus)?,
            plus: rho_plus.apply(&t.plus)?,
        };
        out.add_unchecked(term, sign * c);
    }
    Ok(out)
}

/// Koszul differential: `d*` on cochain factors, `d` on chain factors.
pub fn differential(x: &TensorElement, u: &Universe) -> Result<TensorElement> {
    let km = x.k_minus();
    let mut out = TensorElement::zero(km, x.k_plus());
    let mut par = Parities::new(u);
    for (t, c) in x.terms() {
        let mut prefix = 0u8;
        for m in 0..km + x.k_plus() {
            let name = if m < km { &t.minus[m] } else { &t.plus[m - km] };
            let image = if m < km {
                u.codifferential(name)?
            } else {
                u.differential(name)?
            };
            let sign = if prefix.is_multiple_of(2) { 1 } else { -1 };
            for (b, e) in image {
                let mut nt = t.clone();
                if m < km {
                    nt.minus[m] = b.to_string();
                } else {
                    nt.plus[m - km] = b.to_string();
                }
                out.add_unchecked(nt, sign * c * e);
            }
            prefix += par.of(name)?;
        }
    }
    Ok(out)
}

/// `CF^{⊗k-} ⊗ CF_{⊗k+}` as a flattened complex; the empty product is Z in degree 0.
pub fn slot_complex(k_minus: usize, k_plus: usize, data: &FloerData) -> Result<TensorProduct> {
    let mut factors: Vec<ChainComplex> = Vec::new();
    if k_minus > 0 {
        let co = build_cf_dual(data)?;
        factors.extend(std::iter::repeat_n(co, k_minus));
    }
    if k_plus > 0 {
        let ch = build_cf(data)?;
        factors.extend(std::iter::repeat_n(ch, k_plus));
    }
    if factors.is_empty() {
        factors.push(ChainComplex::zero(GradedBasis::new(data.modulus(), [("1", 0)])?));
    }
    TensorProduct::new(factors)
}

pub fn element_to_chain(x: &TensorElement, tp: &TensorProduct, data: &FloerData) -> Result<Chain> {
    let mut out = Chain::new();
    for (t, c) in x.terms() {
        let tuple = t
            .names()
            .map(|n| data.position(n).ok_or_else(|| Error::Lookup(format!("unknown orbit {n}"))))
            .collect::<Result<Vec<_>>>()?;
        let idx = if tuple.is_empty() { 0 } else { tp.index(&tuple)? };
        *out.entry(idx).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

pub fn element_from_chain(
    v: &Chain,
    k_minus: usize,
    k_plus: usize,
    tp: &TensorProduct,
    data: &FloerData,
) -> Result<TensorElement> {
    let mut out = TensorElement::zero(k_minus, k_plus);
    for (&idx, &c) in v {
        let names: Vec<String> = if k_minus + k_plus == 0 {
            Vec::new()
        } else {
            tp.tuple(idx).into_iter().map(|p| data.orbits()[p].name.clone()).collect()
        };
        out.add_term(Term::new(&names[..k_minus], &names[k_minus..]), c)?;
    }
    Ok(out)
}
