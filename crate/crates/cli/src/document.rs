//! The JSON document exchanged by every subcommand.

use std::collections::{BTreeMap, HashMap};

use floerq_core::floer::{FloerData, Orbit};
use floerq_core::morse::{generate_data, generate_tables, TorusModel};
use floerq_core::products::{theta_label, BUNDLE_GLUINGS, IDENTITY};
use floerq_core::tqft::{CountTable, SlotKey, Term};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

pub const VERSION: &str = "floerq/1";

/// Label under which gluings may refer to the diagonal table of the first data set.
pub const DIAGONAL: &str = "diagonal";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Metadata {
    fn is_empty(&self) -> bool {
        self.name.is_none() && self.notes.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSpec {
    pub name: String,
    pub mu: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct M1Spec {
    pub from: String,
    pub to: String,
    pub count: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataSpec {
    pub n: u32,
    #[serde(rename = "N0")]
    pub n0: u64,
    #[serde(rename = "N1")]
    pub n1: u64,
    pub orbits: Vec<OrbitSpec>,
    #[serde(default)]
    pub m1: Vec<M1Spec>,
}

impl DataSpec {
    pub fn to_data(&self) -> FloerData {
        FloerData::new(
            self.n,
            self.n0,
            self.n1,
            self.orbits.iter().map(|o| Orbit::new(o.name.clone(), o.mu)).collect(),
            self.m1.iter().map(|e| (e.from.clone(), e.to.clone(), e.count)).collect(),
        )
    }

    pub fn from_data(data: &FloerData) -> Self {
        DataSpec {
            n: data.n(),
            n0: data.n0(),
            n1: data.n1(),
            orbits: data
                .orbits()
                .iter()
                .map(|o| OrbitSpec {
                    name: o.name.clone(),
                    mu: o.mu,
                })
                .collect(),
            m1: data
                .m1_entries()
                .iter()
                .map(|(a, b, c)| M1Spec {
                    from: a.clone(),
                    to: b.clone(),
                    count: *c,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntrySpec {
    pub minus: Vec<String>,
    pub plus: Vec<String>,
    pub count: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    pub g: u32,
    pub kminus: usize,
    pub kplus: usize,
    #[serde(default)]
    pub q: u32,
    pub label: String,
    #[serde(default)]
    pub entries: Vec<EntrySpec>,
    /// `"ν:side"` to the label of a face table.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub faces: BTreeMap<String, String>,
}

impl TableSpec {
    pub fn to_table(&self) -> Result<CountTable, CliError> {
        let bad = |m: String| CliError::parse(format!("table {}: {m}", self.label));
        let mut t = CountTable::new(SlotKey::new(self.g, self.kminus, self.kplus), self.q, self.label.clone());
        for e in &self.entries {
            let term = Term::new(&e.minus, &e.plus);
            if t.get(&term) != 0 {
                return Err(bad(format!("entry {term} is listed twice")));
            }
            t.set(term, e.count).map_err(|e| bad(e.to_string()))?;
        }
        for (k, target) in &self.faces {
            let (nu, side) = k
                .split_once(':')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| bad(format!("face key {k:?} is not of the form \"nu:side\"")))?;
            t.set_face(nu, side, target.clone()).map_err(|e| bad(e.to_string()))?;
        }
        Ok(t)
    }

    /// Entries in orbit input order, as listed by `order`.
    pub fn from_table(t: &CountTable, order: &HashMap<String, usize>) -> Self {
        let rank = |names: &[String]| -> Vec<(usize, String)> {
            names
                .iter()
                .map(|n| (order.get(n).copied().unwrap_or(usize::MAX), n.clone()))
                .collect()
        };
        let mut entries: Vec<(Vec<(usize, String)>, Vec<(usize, String)>, i64)> =
            t.entries().map(|(term, c)| (rank(&term.minus), rank(&term.plus), c)).collect();
        entries.sort();
        let names = |v: Vec<(usize, String)>| v.into_iter().map(|(_, n)| n).collect();
        TableSpec {
            g: t.key.g,
            kminus: t.key.k_minus,
            kplus: t.key.k_plus,
            q: t.q,
            label: t.label.clone(),
            entries: entries
                .into_iter()
                .map(|(m, p, count)| EntrySpec {
                    minus: names(m),
                    plus: names(p),
                    count,
                })
                .collect(),
            faces: t.faces().map(|((nu, side), l)| (format!("{nu}:{side}"), l.to_string())).collect(),
        }
    }
}

/// `t3 = t1 ◊_ij t2`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingSpec {
    pub t1: String,
    pub t2: String,
    pub i: usize,
    pub j: usize,
    pub t3: String,
}

/// `t_out = ¤_ij t_in`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfGluingSpec {
    pub t_in: String,
    pub t_out: String,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub version: String,
    #[serde(default, skip_serializing_if = "Metadata::is_empty")]
    pub metadata: Metadata,
    #[serde(flatten)]
    pub data: DataSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data2: Option<DataSpec>,
    #[serde(default)]
    pub tables: Vec<TableSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gluings: Vec<GluingSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub self_gluings: Vec<SelfGluingSpec>,
}

const DATA_KEYS: &[&str] = &["n", "N0", "N1", "orbits", "m1"];
const TOP_KEYS: &[&str] = &["version", "metadata", "data2", "tables", "gluings", "self_gluings"];

fn check_keys(v: &Value, allowed: &[&str], path: &str) -> Result<(), CliError> {
    if let Value::Object(map) = v {
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(CliError::parse(format!("unknown field {k:?} in {path}")));
        }
    }
    Ok(())
}

fn check_each(v: &Value, field: &str, allowed: &[&str], path: &str) -> Result<(), CliError> {
    if let Some(Value::Array(items)) = v.get(field) {
        for (i, item) in items.iter().enumerate() {
            check_keys(item, allowed, &format!("{path}{field}[{i}]"))?;
        }
    }
    Ok(())
}

fn check_data_keys(v: &Value, extra: &[&str], path: &str) -> Result<(), CliError> {
    let allowed: Vec<&str> = DATA_KEYS.iter().chain(extra).copied().collect();
    check_keys(v, &allowed, if path.is_empty() { "the document" } else { path })?;
    check_each(v, "orbits", &["name", "mu"], path)?;
    check_each(v, "m1", &["from", "to", "count"], path)
}

/// Rejects any field the format does not define.
fn check_strict(v: &Value) -> Result<(), CliError> {
    check_data_keys(v, TOP_KEYS, "")?;
    if let Some(m) = v.get("metadata") {
        check_keys(m, &["name", "notes"], "metadata")?;
    }
    if let Some(d) = v.get("data2") {
        check_data_keys(d, &[], "data2.")?;
    }
    check_each(v, "tables", &["g", "kminus", "kplus", "q", "label", "entries", "faces"], "")?;
    if let Some(Value::Array(tables)) = v.get("tables") {
        for (i, t) in tables.iter().enumerate() {
            check_each(t, "entries", &["minus", "plus", "count"], &format!("tables[{i}]."))?;
        }
    }
    check_each(v, "gluings", &["t1", "t2", "i", "j", "t3"], "")?;
    check_each(v, "self_gluings", &["t_in", "t_out", "i", "j"], "")
}

impl Document {
    pub fn parse(text: &str, strict: bool) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::parse(e.to_string()))?;
        if strict {
            check_strict(&value)?;
        }
        let doc: Document = serde_json::from_value(value).map_err(|e| CliError::parse(e.to_string()))?;
        if doc.version != VERSION {
            return Err(CliError::parse(format!("unsupported version {:?}, expected {VERSION:?}", doc.version)));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn new(data: &FloerData) -> Self {
        Document {
            version: VERSION.to_string(),
            metadata: Metadata::default(),
            data: DataSpec::from_data(data),
            data2: None,
            tables: Vec::new(),
            gluings: Vec::new(),
            self_gluings: Vec::new(),
        }
    }

    pub fn floer_data(&self) -> FloerData {
        self.data.to_data()
    }

    pub fn floer_data2(&self) -> Option<FloerData> {
        self.data2.as_ref().map(DataSpec::to_data)
    }

    pub fn count_tables(&self) -> Result<Vec<CountTable>, CliError> {
        let mut seen = HashMap::new();
        for t in &self.tables {
            if t.label == DIAGONAL || seen.insert(t.label.as_str(), ()).is_some() {
                return Err(CliError::parse(format!("table label {:?} is reserved or repeated", t.label)));
            }
        }
        self.tables.iter().map(TableSpec::to_table).collect()
    }

    fn orbit_order(&self) -> HashMap<String, usize> {
        self.data
            .orbits
            .iter()
            .chain(self.data2.iter().flat_map(|d| &d.orbits))
            .enumerate()
            .map(|(i, o)| (o.name.clone(), i))
            .collect()
    }

    pub fn push_table(&mut self, t: &CountTable) {
        let spec = TableSpec::from_table(t, &self.orbit_order());
        self.tables.push(spec);
    }
}

/// The torus document: data, the seven generated tables and the gluings they satisfy.
pub fn torus_document(model: &TorusModel) -> Result<Document, CliError> {
    let d = model.dim();
    let data = generate_data(model);
    let mut doc = Document::new(&data);
    doc.metadata = Metadata {
        name: Some(format!("T^{d}")),
        notes: vec![format!(
            "f = sum a_i cos(theta_i), amplitudes {:?}, {} samples per circle",
            model.amplitudes(),
            model.samples()
        )],
    };
    for t in generate_tables(model).map_err(|e| CliError::validation(e.to_string()))? {
        doc.push_table(&t);
    }
    let label = |k: SlotKey| if k == IDENTITY { DIAGONAL.to_string() } else { theta_label(k) };
    doc.gluings = BUNDLE_GLUINGS
        .iter()
        .map(|&(k1, k2, i, j, k3)| GluingSpec {
            t1: label(k1),
            t2: label(k2),
            i,
            j,
            t3: label(k3),
        })
        .collect();
    Ok(doc)
}
