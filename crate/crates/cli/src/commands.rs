//! Subcommand bodies. Each returns an [`Outcome`] holding the exit code and both renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use floerq_core::floer::{build_cf, build_cf_dual, validate_data, FloerData, Universe};
use floerq_core::graded::{homology as group_homology, ChainComplex, HomologyGroup};
use floerq_core::morse::TorusModel;
use floerq_core::products::{
    self, cap, cup, diagonal_table, euler, intersection, pd_flat, pd_sharp, top_class, unit, zero_homotopy,
    ClassSpace, CocycleElement, ThetaBundle, FOUR_PUNCTURED, TORUS_TRACE,
};
use floerq_core::tqft::{
    box_ij, check_cycle, check_gluing, check_self_gluing, check_table, compose_keys, diamond, q_of_table, CountTable,
    TensorElement, Term,
};
use floerq_core::{Error, Report};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::document::{torus_document, Document, DIAGONAL};
use crate::expr::parse_combination;
use crate::{CliError, EXIT_GLUING, EXIT_OK, EXIT_VALIDATION};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// Data sets and tables of a document, with the diagonal table available as a face or factor.
struct Loaded {
    data: FloerData,
    data2: Option<FloerData>,
    tables: Vec<CountTable>,
    diagonal: CountTable,
}

impl Loaded {
    fn new(doc: &Document) -> Result<Self, CliError> {
        let data = doc.floer_data();
        let mut diagonal = diagonal_table(&data);
        diagonal.label = DIAGONAL.to_string();
        Ok(Loaded {
            data2: doc.floer_data2(),
            tables: doc.count_tables()?,
            diagonal,
            data,
        })
    }

    fn lookup(&self, label: &str) -> Option<&CountTable> {
        self.tables
            .iter()
            .find(|t| t.label == label)
            .or_else(|| (label == DIAGONAL).then_some(&self.diagonal))
    }

    fn universe(&self) -> Result<Universe<'_>, Error> {
        let mut all = vec![&self.data];
        all.extend(self.data2.as_ref());
        Universe::new(&all)
    }

    fn bundle(&self) -> ThetaBundle {
        ThetaBundle::from_tables(self.tables.iter().cloned())
    }
}

fn prefixed(prefix: &str, mut r: Report) -> Report {
    for c in &mut r.checks {
        c.check = format!("{prefix}: {}", c.check);
    }
    r
}

fn report_text(title: &str, r: &Report) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let _ = writeln!(s, "{c}");
    }
    let failed = r.errors().count();
    let _ = writeln!(s, "{title}: {} checks, {failed} failed", r.checks.len());
    s
}

/// Data checks, table degree and boundary checks, then every declared gluing.
pub fn validate(doc: &Document, strict: bool) -> Result<Outcome, CliError> {
    let loaded = Loaded::new(doc)?;
    let mut validation = prefixed("data", validate_data(&loaded.data, strict));
    if let Some(d2) = &loaded.data2 {
        validation.extend(prefixed("data2", validate_data(d2, strict)));
    }
    let mut gluing = Report::new();
    let universe = loaded.universe();
    if let Err(e) = &universe {
        validation.fail("data sets", "data2", e.to_string());
    }
    if let (true, Ok(u)) = (validation.ok(), &universe) {
        for t in &loaded.tables {
            let r = check_table(t, u, strict);
            let degrees_ok = r.ok();
            validation.extend(r);
            if !degrees_ok {
                continue;
            }
            match check_cycle(t, |l| loaded.lookup(l), u) {
                Ok(r) => validation.extend(r),
                Err(e) => validation.fail(format!("table {} boundary", t.label), t.label.clone(), e.to_string()),
            }
        }
        for g in &doc.gluings {
            let name = format!("gluing {} ◊{}{} {} = {}", g.t1, g.i, g.j, g.t2, g.t3);
            let found = [&g.t1, &g.t2, &g.t3].map(|l| loaded.lookup(l).ok_or(l));
            match found {
                [Ok(t1), Ok(t2), Ok(t3)] => match check_gluing(t1, t2, t3, g.i, g.j, u) {
                    Ok(r) => gluing.extend(r),
                    Err(e) => gluing.fail(name, format!("{} ◊ {}", g.t1, g.t2), e.to_string()),
                },
                missing => {
                    let l = missing.iter().find_map(|m| m.err()).expect("one label is missing");
                    validation.fail(name, l.clone(), format!("no table labelled {l}"));
                }
            }
        }
        for g in &doc.self_gluings {
            let name = format!("self-gluing ¤{}{} {} = {}", g.i, g.j, g.t_in, g.t_out);
            match (loaded.lookup(&g.t_in), loaded.lookup(&g.t_out)) {
                (Some(t_in), Some(t_out)) => match check_self_gluing(t_in, t_out, g.i, g.j, u) {
                    Ok(r) => gluing.extend(r),
                    Err(e) => gluing.fail(name, g.t_in.clone(), e.to_string()),
                },
                _ => validation.fail(name, format!("{} / {}", g.t_in, g.t_out), "missing table"),
            }
        }
    }
    let code = if !validation.ok() {
        EXIT_VALIDATION
    } else if !gluing.ok() {
        EXIT_GLUING
    } else {
        EXIT_OK
    };
    let mut text = report_text("validation", &validation);
    if !gluing.checks.is_empty() {
        text.push_str(&report_text("gluing", &gluing));
    }
    let _ = writeln!(text, "exit {code}");
    Ok(Outcome {
        code,
        text,
        json: json!({ "exit": code, "validation": validation.checks, "gluing": gluing.checks }),
    })
}

fn degree_label(mu: i64, modulus: u64) -> String {
    if modulus == 0 {
        mu.to_string()
    } else {
        format!("{} mod {modulus}", mu.rem_euclid(modulus as i64))
    }
}

fn group_text(g: &HomologyGroup) -> String {
    let mut parts = Vec::new();
    if g.rank > 0 {
        parts.push(if g.rank == 1 { "Z".to_string() } else { format!("Z^{}", g.rank) });
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Groups of one complex keyed by μ-degree, negating the grading of a cochain complex.
fn groups(c: &ChainComplex, cochain: bool, modulus: u64) -> Result<Vec<(i64, HomologyGroup)>, CliError> {
    let mut out: Vec<(i64, HomologyGroup)> = group_homology(c)?
        .into_iter()
        .map(|g| {
            let lift = if cochain { -g.degree.lift() } else { g.degree.lift() };
            let mu = if modulus == 0 { lift } else { lift.rem_euclid(modulus as i64) };
            (mu, g)
        })
        .collect();
    out.sort_by_key(|(mu, _)| *mu);
    Ok(out)
}

fn homology_section(data: &FloerData, title: &str, text: &mut String) -> Result<Value, CliError> {
    let m = data.modulus();
    let grading = if m == 0 { "Z".to_string() } else { format!("Z/{m}") };
    let mut sections = serde_json::Map::new();
    for (name, cochain, c) in [("HF_*", false, build_cf(data)?), ("HF^*", true, build_cf_dual(data)?)] {
        let _ = writeln!(text, "{title} {name} (graded by {grading})");
        let mut rows = Vec::new();
        for (mu, g) in groups(&c, cochain, m)? {
            let _ = writeln!(text, "  {:>8}: {}", degree_label(mu, m), group_text(&g));
            let torsion: Vec<String> = g.torsion.iter().map(BigInt::to_string).collect();
            rows.push(json!({ "degree": mu, "rank": g.rank, "torsion": torsion }));
        }
        sections.insert(if cochain { "cohomology" } else { "homology" }.into(), Value::Array(rows));
    }
    sections.insert("modulus".into(), json!(m));
    Ok(Value::Object(sections))
}

/// Ranks and torsion of Floer homology and cohomology per degree class.
pub fn homology(doc: &Document) -> Result<Outcome, CliError> {
    let mut text = String::new();
    let mut out = serde_json::Map::new();
    out.insert("data".into(), homology_section(&doc.floer_data(), "data", &mut text)?);
    if let Some(d2) = doc.floer_data2() {
        out.insert("data2".into(), homology_section(&d2, "data2", &mut text)?);
    }
    Ok(Outcome {
        code: EXIT_OK,
        text,
        json: Value::Object(out),
    })
}

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("coordinate fits in i64")).collect()
}

fn vector_text(v: &[i64]) -> String {
    if v.len() == 1 {
        v[0].to_string()
    } else {
        let parts: Vec<String> = v.iter().map(i64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// Columns padded to a common width.
fn matrix_text(title: &str, rows: &[String], cols: &[String], cells: &[Vec<String>]) -> String {
    let w = rows
        .iter()
        .chain(cols)
        .chain(cells.iter().flatten())
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let mut s = format!("{title}\n{:>w$}", "");
    for c in cols {
        let _ = write!(s, "  {c:>w$}");
    }
    s.push('\n');
    for (r, row) in rows.iter().zip(cells) {
        let _ = write!(s, "{r:>w$}");
        for c in row {
            let _ = write!(s, "  {c:>w$}");
        }
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct BasisEntry {
    name: String,
    degree: i64,
    representative: String,
}

#[derive(Serialize)]
struct ProductEntry {
    left: String,
    right: String,
    degree: i64,
    coordinates: Vec<i64>,
}

/// Classes of one kind, computed per degree on demand.
struct Bases<'a> {
    data: &'a FloerData,
    cochain: bool,
    prefix: &'static str,
    spaces: BTreeMap<i64, ClassSpace>,
}

impl<'a> Bases<'a> {
    fn new(data: &'a FloerData, cochain: bool) -> Self {
        Bases {
            data,
            cochain,
            prefix: if cochain { "u" } else { "h" },
            spaces: BTreeMap::new(),
        }
    }

    fn norm(&self, k: i64) -> i64 {
        match self.data.modulus() {
            0 => k,
            m => k.rem_euclid(m as i64),
        }
    }

    fn space(&mut self, k: i64) -> Result<&ClassSpace, CliError> {
        let k = self.norm(k);
        if !self.spaces.contains_key(&k) {
            self.spaces.insert(k, ClassSpace::new(self.data, self.cochain, k)?);
        }
        Ok(&self.spaces[&k])
    }

    fn elements(&mut self, k: i64) -> Result<Vec<(String, CocycleElement)>, CliError> {
        let k = self.norm(k);
        let prefix = self.prefix;
        let reps = self.space(k)?.free_representatives();
        reps.into_iter()
            .enumerate()
            .map(|(i, e)| Ok((format!("{prefix}{k}_{i}"), CocycleElement::new(e, k, self.data)?)))
            .collect()
    }

    fn names(&mut self, k: i64) -> Result<Vec<String>, CliError> {
        Ok(self.elements(k)?.into_iter().map(|(n, _)| n).collect())
    }

    fn coordinates(&mut self, x: &CocycleElement) -> Result<Vec<i64>, CliError> {
        Ok(small(&self.space(x.degree)?.coordinates(&x.element)?))
    }
}

type Product<'t> = dyn Fn(&CocycleElement, &CocycleElement) -> floerq_core::Result<CocycleElement> + 't;

/// A product table between two families of bases, as JSON entries and text matrices.
#[allow(clippy::too_many_arguments)]
fn product_table(
    title: &str,
    symbol: &str,
    left: &mut Bases,
    right: &mut Bases,
    target: &mut Bases,
    degrees: &[i64],
    shift: impl Fn(i64, i64) -> i64,
    f: &Product,
    text: &mut String,
) -> Result<Vec<ProductEntry>, CliError> {
    let mut entries = Vec::new();
    for &p in degrees {
        let ls = left.elements(p)?;
        if ls.is_empty() {
            continue;
        }
        for &q in degrees {
            let rs = right.elements(q)?;
            if rs.is_empty() {
                continue;
            }
            let k = target.norm(shift(p, q));
            let target_names = target.names(k)?;
            if target_names.is_empty() {
                continue;
            }
            let mut cells = Vec::new();
            for (ln, l) in &ls {
                let mut row = Vec::new();
                for (rn, r) in &rs {
                    let mut z = f(l, r)?;
                    z.degree = k;
                    let coords = target.coordinates(&z)?;
                    row.push(vector_text(&coords));
                    entries.push(ProductEntry {
                        left: ln.clone(),
                        right: rn.clone(),
                        degree: k,
                        coordinates: coords,
                    });
                }
                cells.push(row);
            }
            let heading = format!(
                "{title}: degree {} {symbol} degree {} -> {k} in basis [{}]",
                left.norm(p),
                right.norm(q),
                target_names.join(", ")
            );
            let rows: Vec<String> = ls.iter().map(|(n, _)| n.clone()).collect();
            let cols: Vec<String> = rs.iter().map(|(n, _)| n.clone()).collect();
            text.push_str(&matrix_text(&heading, &rows, &cols, &cells));
        }
    }
    Ok(entries)
}

fn degree_classes(data: &FloerData) -> Vec<i64> {
    let m = data.modulus();
    let mut ds: Vec<i64> = data
        .orbits()
        .iter()
        .map(|o| if m == 0 { o.mu } else { o.mu.rem_euclid(m as i64) })
        .collect();
    ds.sort_unstable();
    ds.dedup();
    ds
}

/// Validates, then builds the cup, intersection and cap tables on homology bases, the
/// duality matrices, unit and top classes and the Euler number.
pub fn products(doc: &Document, strict: bool) -> Result<Outcome, CliError> {
    let checked = validate(doc, strict)?;
    if checked.code != EXIT_OK {
        return Ok(checked);
    }
    let loaded = Loaded::new(doc)?;
    let data = &loaded.data;
    let theta = loaded.bundle();
    let degrees = degree_classes(data);
    let two_n = 2 * data.n() as i64;
    let mut coh = Bases::new(data, true);
    let mut hom = Bases::new(data, false);
    let mut text = String::new();
    let mut out = serde_json::Map::new();

    let mut basis = Vec::new();
    for (bases, label) in [(&mut coh, "HF^*"), (&mut hom, "HF_*")] {
        let _ = writeln!(text, "{label} basis");
        for &k in &degrees {
            for (name, x) in bases.elements(k)? {
                let _ = writeln!(text, "  {name} = {}", x.element);
                basis.push(BasisEntry {
                    name,
                    degree: k,
                    representative: x.element.to_string(),
                });
            }
        }
    }
    out.insert("basis".into(), json!(basis));

    let chi = euler(data);
    let trace = box_ij(&products::identity_element(data), 1, 1, &Universe::single(data))?
        .scalar_value()
        .unwrap_or(0);
    let _ = writeln!(text, "euler {chi} (trace of the identity {trace})");
    out.insert("euler".into(), json!(chi));
    out.insert("trace".into(), json!(trace));
    if let Some(t) = theta.get(TORUS_TRACE) {
        let v = t.get(&Term::new::<&str>(&[], &[]));
        let _ = writeln!(text, "theta_1_0_0 {v}");
        out.insert("theta_1_0_0".into(), json!(v));
    }

    match unit(&theta, data) {
        Ok(one) => {
            let c = coh.coordinates(&one)?;
            let _ = writeln!(text, "unit {} = {} in degree 0", one.element, vector_text(&c));
            out.insert("unit".into(), json!({ "representative": one.element.to_string(), "coordinates": c }));
        }
        Err(e) => {
            let _ = writeln!(text, "unit unavailable: {e}");
        }
    }
    match top_class(&theta, data) {
        Ok(top) => {
            let c = hom.coordinates(&top)?;
            let _ = writeln!(text, "top {} = {} in degree {two_n}", top.element, vector_text(&c));
            out.insert("top".into(), json!({ "representative": top.element.to_string(), "coordinates": c }));
        }
        Err(e) => {
            let _ = writeln!(text, "top class unavailable: {e}");
        }
    }

    let tables: [(&str, &str, bool, bool, bool, i64, &Product); 3] = [
        ("cup", "∪", true, true, true, 0, &|a, b| cup(a, b, &theta, data)),
        ("intersection", "·", false, false, false, -two_n, &|x, y| intersection(x, y, &theta, data)),
        ("cap", "∩", false, true, false, 0, &|x, a| cap(x, a, &theta, data)),
    ];
    for (name, symbol, lc, rc, tc, offset, f) in tables {
        let mut l = Bases::new(data, lc);
        let mut r = Bases::new(data, rc);
        let mut t = Bases::new(data, tc);
        let shift = |p: i64, q: i64| if name == "cap" { p - q } else { p + q + offset };
        match product_table(name, symbol, &mut l, &mut r, &mut t, &degrees, shift, f, &mut text) {
            Ok(entries) => {
                out.insert(name.into(), json!(entries));
            }
            Err(e) => {
                let _ = writeln!(text, "{name} unavailable: {e}");
            }
        }
    }

    match duality(data, &theta, &degrees, &mut coh, &mut hom, &mut text) {
        Ok(v) => {
            out.insert("duality".into(), v);
        }
        Err(e) => {
            let _ = writeln!(text, "duality unavailable: {e}");
        }
    }
    Ok(Outcome {
        code: EXIT_OK,
        text,
        json: Value::Object(out),
    })
}

fn duality(
    data: &FloerData,
    theta: &ThetaBundle,
    degrees: &[i64],
    coh: &mut Bases,
    hom: &mut Bases,
    text: &mut String,
) -> Result<Value, CliError> {
    let two_n = 2 * data.n() as i64;
    let mut sharp_json = Vec::new();
    let mut flat_json = Vec::new();
    let mut inverse = true;
    for &k in degrees {
        let hs = hom.elements(k)?;
        if hs.is_empty() {
            continue;
        }
        let mut sharp_cols = Vec::new();
        let mut round_trip = Vec::new();
        for (_, x) in &hs {
            let s = pd_sharp(x, theta, data)?;
            sharp_cols.push(coh.coordinates(&s)?);
            round_trip.push(hom.coordinates(&pd_flat(&s, theta, data)?)?);
        }
        let us = coh.elements(two_n - k)?;
        let mut flat_cols = Vec::new();
        for (_, a) in &us {
            let f = pd_flat(a, theta, data)?;
            flat_cols.push(hom.coordinates(&f)?);
            if coh.coordinates(&pd_sharp(&f, theta, data)?)? != coh.coordinates(a)? {
                inverse = false;
            }
        }
        for (i, col) in round_trip.iter().enumerate() {
            if col.iter().enumerate().any(|(r, &v)| v != i64::from(r == i)) {
                inverse = false;
            }
        }
        let rows_of = |cols: &[Vec<i64>], nrows: usize| -> Vec<Vec<i64>> {
            (0..nrows).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
        };
        let sharp = rows_of(&sharp_cols, us.len());
        let flat = rows_of(&flat_cols, hs.len());
        let cell = |m: &[Vec<i64>]| -> Vec<Vec<String>> {
            m.iter().map(|r| r.iter().map(i64::to_string).collect()).collect()
        };
        let hn: Vec<String> = hs.iter().map(|(n, _)| n.clone()).collect();
        let un: Vec<String> = us.iter().map(|(n, _)| n.clone()).collect();
        text.push_str(&matrix_text(&format!("pd_sharp degree {k} -> {}", two_n - k), &un, &hn, &cell(&sharp)));
        text.push_str(&matrix_text(&format!("pd_flat degree {} -> {k}", two_n - k), &hn, &un, &cell(&flat)));
        sharp_json.push(json!({ "from": k, "to": two_n - k, "matrix": sharp }));
        flat_json.push(json!({ "from": two_n - k, "to": k, "matrix": flat }));
    }
    let _ = writeln!(text, "pd matrices mutually inverse: {inverse}");
    Ok(json!({ "pd_sharp": sharp_json, "pd_flat": flat_json, "inverse": inverse }))
}

fn cochain_of(s: &str, data: &FloerData, fallback: i64) -> Result<CocycleElement, CliError> {
    let mut e = TensorElement::zero(1, 0);
    for (name, c) in parse_combination(s, data)? {
        e.add_term(Term::new(&[name], &[]), c)?;
    }
    Ok(CocycleElement::new(e, fallback, data)?)
}

pub struct MasseyArgs<'a> {
    pub a: &'a str,
    pub b: &'a str,
    pub c: &'a str,
    pub zeta: Option<&'a str>,
    pub xi: Option<&'a str>,
    pub lambda: Option<&'a str>,
}

/// Massey product of three cochain combinations. Hypothesis failures exit 3 with a witness.
pub fn massey(doc: &Document, args: &MasseyArgs, strict: bool) -> Result<Outcome, CliError> {
    let checked = validate(doc, strict)?;
    if checked.code != EXIT_OK {
        return Ok(checked);
    }
    let loaded = Loaded::new(doc)?;
    let data = &loaded.data;
    let theta = loaded.bundle();
    let a = cochain_of(args.a, data, 0)?;
    let b = cochain_of(args.b, data, 0)?;
    let c = cochain_of(args.c, data, 0)?;
    let zeta = cochain_of(args.zeta.unwrap_or("0"), data, a.degree + b.degree - 1)?;
    let xi = cochain_of(args.xi.unwrap_or("0"), data, b.degree + c.degree - 1)?;
    let default_lambda;
    let lambda = match args.lambda {
        Some(l) => loaded.lookup(l).ok_or_else(|| CliError::validation(format!("no table labelled {l}")))?,
        None => {
            default_lambda = zero_homotopy("lambda", &products::theta_label(FOUR_PUNCTURED));
            &default_lambda
        }
    };
    let result = match products::massey(&a, &b, &c, &theta, &zeta, &xi, lambda, data) {
        Ok(r) => r,
        Err(Error::Hypothesis { what, witness }) => {
            return Ok(Outcome {
                code: EXIT_VALIDATION,
                text: format!("FAIL hypothesis {what}: witness {witness}\nexit {EXIT_VALIDATION}\n"),
                json: json!({ "exit": EXIT_VALIDATION, "hypothesis": what, "witness": witness }),
            });
        }
        Err(e) => return Err(e.into()),
    };
    let rep = &result.representative;
    let class = small(&result.class);
    let indeterminacy: Vec<String> = result.indeterminacy.iter().map(ToString::to_string).collect();
    let classes: Vec<Vec<i64>> = result.indeterminacy_classes.iter().map(|v| small(v)).collect();
    let mut text = String::new();
    let _ = writeln!(text, "PASS hypothesis a ∪ b = d ζ");
    let _ = writeln!(text, "PASS hypothesis b ∪ c = d ξ");
    let _ = writeln!(text, "PASS hypothesis d Q(λ) = Q(θ)◊₁₁Q(θ) − Q(θ)◊₂₁Q(θ)");
    let _ = writeln!(text, "representative {} in degree {}", rep.element, rep.degree);
    let _ = writeln!(text, "class {}", vector_text(&class));
    let _ = writeln!(text, "indeterminacy basis [{}]", indeterminacy.join(", "));
    let _ = writeln!(
        text,
        "trivial modulo indeterminacy: {}",
        if result.trivial { "yes" } else { "no" }
    );
    Ok(Outcome {
        code: EXIT_OK,
        text,
        json: json!({
            "exit": EXIT_OK,
            "representative": rep.element.to_string(),
            "degree": rep.degree,
            "class": class,
            "indeterminacy": indeterminacy,
            "indeterminacy_classes": classes,
            "trivial": result.trivial,
        }),
    })
}

pub fn gen_torus(dim: usize, samples: Option<usize>) -> Result<Document, CliError> {
    let mut model = TorusModel::standard(dim).map_err(|e| CliError::validation(e.to_string()))?;
    if let Some(s) = samples {
        model = model.with_samples(s).map_err(|e| CliError::validation(e.to_string()))?;
    }
    torus_document(&model)
}

pub struct GlueArgs<'a> {
    pub t1: &'a str,
    pub t2: &'a str,
    pub i: usize,
    pub j: usize,
    pub label: Option<&'a str>,
    pub against: Option<&'a str>,
}

/// Either checks `t1 ◊_ij t2` against an existing table, or appends the glued table.
pub fn glue(doc: &Document, args: &GlueArgs) -> Result<(Outcome, Option<Document>), CliError> {
    let loaded = Loaded::new(doc)?;
    let u = loaded.universe()?;
    let find = |l: &str| loaded.lookup(l).ok_or_else(|| CliError::validation(format!("no table labelled {l}")));
    let (t1, t2) = (find(args.t1)?, find(args.t2)?);
    if let Some(against) = args.against {
        let r = match check_gluing(t1, t2, find(against)?, args.i, args.j, &u) {
            Ok(r) => r,
            Err(e) => {
                let mut r = Report::new();
                r.fail("gluing", format!("{} ◊ {}", args.t1, args.t2), e.to_string());
                r
            }
        };
        let code = if r.ok() { EXIT_OK } else { EXIT_GLUING };
        let mut text = report_text("gluing", &r);
        let _ = writeln!(text, "exit {code}");
        return Ok((
            Outcome {
                code,
                text,
                json: json!({ "exit": code, "gluing": r.checks }),
            },
            None,
        ));
    }
    if t1.q != 0 || t2.q != 0 {
        return Err(CliError::validation("only point tables (q = 0) can be glued into a new table"));
    }
    let key = compose_keys(t1.key, t2.key, args.i, args.j).map_err(|e| CliError {
        code: EXIT_GLUING,
        message: e.to_string(),
    })?;
    let x = diamond(&q_of_table(t1, &u)?, &q_of_table(t2, &u)?, args.i, args.j, &u)?;
    let label = args
        .label
        .map(str::to_string)
        .unwrap_or_else(|| format!("{}_{}{}_{}", args.t1, args.i, args.j, args.t2));
    let table = CountTable::from_element(key, label.clone(), &x)?;
    let mut out = doc.clone();
    out.push_table(&table);
    let text = format!("glued {} ◊{}{} {} into {label} on slot {key} with {} entries\n", args.t1, args.i, args.j, args.t2, table.len());
    Ok((
        Outcome {
            code: EXIT_OK,
            json: json!({ "exit": EXIT_OK, "label": label, "slot": key.to_string(), "entries": table.len() }),
            text,
        },
        Some(out),
    ))
}
