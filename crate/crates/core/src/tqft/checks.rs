use super::element::{CountTable, SlotKey, Term};
use super::ops::{box_ij, diamond, differential, q_of_table};
use crate::error::{Error, Result};
use crate::floer::{congruent, Universe};
use crate::report::Report;
use crate::tqft::TensorElement;

/// Describes how `term` breaks the degree congruence of `t`, if it does.
pub(crate) fn entry_degree_violation(t: &CountTable, term: &Term, u: &Universe) -> Result<Option<String>> {
    let plus: i64 = term.plus.iter().map(|n| u.mu(n)).sum::<Result<i64>>()?;
    let minus: i64 = term.minus.iter().map(|n| u.mu(n)).sum::<Result<i64>>()?;
    let k = &t.key;
    let expected = t.q as i64 + 2 * u.n() as i64 * (1 - k.g as i64 - k.k_minus as i64);
    let modulus = if k.g == 0 { 2 * u.n0() } else { 2 * u.n1() };
    if congruent(plus - minus, expected, modulus) {
        Ok(None)
    } else {
        Ok(Some(format!(
            "degree difference {} is not congruent to {expected} mod {modulus}",
            plus - minus
        )))
    }
}

/// Degree congruence on every entry and face presence for q > 0.
pub fn check_table(t: &CountTable, u: &Universe, strict: bool) -> Report {
    let mut r = Report::new();
    let name = format!("table {} degrees", t.label);
    let mut ok = true;
    for (term, _) in t.entries() {
        match entry_degree_violation(t, term, u) {
            Err(e) => {
                r.fail(format!("table {} orbits", t.label), term.to_string(), e.to_string());
                ok = false;
            }
            Ok(Some(detail)) => {
                if strict {
                    r.fail(name.clone(), term.to_string(), detail);
                } else {
                    r.warn(name.clone(), term.to_string(), detail);
                }
                ok = false;
            }
            Ok(None) => {}
        }
    }
    if ok {
        r.pass(name, format!("{} entries satisfy the congruence", t.len()));
    }
    if t.q > 0 {
        let missing: Vec<String> = (1..=t.q)
            .flat_map(|nu| [(nu, 0u8), (nu, 1u8)])
            .filter(|&(nu, s)| t.face(nu, s).is_none())
            .map(|(nu, s)| format!("{nu}:{s}"))
            .collect();
        if missing.is_empty() {
            r.pass(format!("table {} faces", t.label), format!("all {} faces present", 2 * t.q));
        } else {
            r.fail(format!("table {} faces", t.label), missing.join(" "), "missing faces");
        }
    }
    r
}

fn compare(r: &mut Report, check: String, lhs: &TensorElement, rhs: &TensorElement, what: &str) {
    match lhs.first_difference(rhs) {
        None => r.pass(check, format!("{what} hold exactly ({} terms)", lhs.len())),
        Some((term, a, b)) => r.fail(check, term.to_string(), format!("{what}: {a} vs {b}")),
    }
}

/// `d(Q t) = Q(d t)`, with `Q(d t)` the alternating sum of faces.
pub fn check_cycle<'t>(
    t: &CountTable,
    lookup: impl Fn(&str) -> Option<&'t CountTable>,
    u: &Universe,
) -> Result<Report> {
    let mut r = Report::new();
    let check = format!("table {} boundary", t.label);
    let lhs = differential(&q_of_table(t, u)?, u)?;
    let mut rhs = TensorElement::zero(t.key.k_minus, t.key.k_plus);
    for nu in 1..=t.q {
        for side in [0u8, 1] {
            let label = t.face(nu, side).ok_or_else(|| Error::MissingFace {
                label: t.label.clone(),
                face: format!("{nu}:{side}"),
            })?;
            let face = lookup(label).ok_or_else(|| Error::MissingTable(label.to_string()))?;
            if face.key != t.key || face.q + 1 != t.q {
                r.fail(
                    check.clone(),
                    format!("face {nu}:{side} = {label}"),
                    format!("face has slot {} and q = {}", face.key, face.q),
                );
                return Ok(r);
            }
            let sign = if nu % 2 == 1 { 1 } else { -1 } * if side == 1 { 1 } else { -1 };
            rhs = rhs.add(&q_of_table(face, u)?.scale(sign))?;
        }
    }
    compare(&mut r, check, &lhs, &rhs, "d(Qσ) = Q(dσ)");
    Ok(r)
}

/// Slot of the surface obtained by gluing output `i` of `k1` to input `j` of `k2`.
pub fn compose_keys(k1: SlotKey, k2: SlotKey, i: usize, j: usize) -> Result<SlotKey> {
    if i == 0 || i > k1.k_plus || j == 0 || j > k2.k_minus {
        return Err(Error::Composition(format!("cannot glue output {i} of {k1} to input {j} of {k2}")));
    }
    Ok(SlotKey::new(k1.g + k2.g, k1.k_minus + k2.k_minus - 1, k1.k_plus - 1 + k2.k_plus))
}

/// `Q(t3) = Q(t1) ◊_ij Q(t2)` entrywise.
pub fn check_gluing(
    t1: &CountTable,
    t2: &CountTable,
    t3: &CountTable,
    i: usize,
    j: usize,
    u: &Universe,
) -> Result<Report> {
    let key = compose_keys(t1.key, t2.key, i, j)?;
    if t3.key != key || t3.q != t1.q + t2.q {
        return Err(Error::Composition(format!(
            "{} ◊_{i}{j} {} has slot {key} and q = {}, but {} has slot {} and q = {}",
            t1.label,
            t2.label,
            t1.q + t2.q,
            t3.label,
            t3.key,
            t3.q
        )));
    }
    let glued = diamond(&q_of_table(t1, u)?, &q_of_table(t2, u)?, i, j, u)?;
    let mut r = Report::new();
    compare(
        &mut r,
        format!("gluing {} ◊_{i}{j} {} = {}", t1.label, t2.label, t3.label),
        &q_of_table(t3, u)?,
        &glued,
        "counts",
    );
    Ok(r)
}

/// `Q(t_out) = ¤_ij Q(t_in)` entrywise.
pub fn check_self_gluing(t_in: &CountTable, t_out: &CountTable, i: usize, j: usize, u: &Universe) -> Result<Report> {
    let k = t_in.key;
    if k.k_minus == 0 || k.k_plus == 0 {
        return Err(Error::Composition(format!("{} has no pair of punctures to glue", t_in.label)));
    }
    let want = SlotKey::new(k.g + 1, k.k_minus - 1, k.k_plus - 1);
    if t_out.key != want || t_out.q != t_in.q {
        return Err(Error::Composition(format!(
            "¤_{i}{j} {} has slot {want}, but {} has slot {}",
            t_in.label, t_out.label, t_out.key
        )));
    }
    let traced = box_ij(&q_of_table(t_in, u)?, i, j, u)?;
    let mut r = Report::new();
    compare(
        &mut r,
        format!("self-gluing ¤_{i}{j} {} = {}", t_in.label, t_out.label),
        &q_of_table(t_out, u)?,
        &traced,
        "counts",
    );
    Ok(r)
}
