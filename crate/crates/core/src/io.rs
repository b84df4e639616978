//! JSON input, the bundled corpus, and orbit-table output.
//!
//! Simple-root and spherical-root indices are 1-based in every file format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{cross_check, Answer};
use crate::orbits::{OrbitClass, OrbitTable};
use crate::rootsys::{format_root, parse_root, DynkinKind, RootSystem};
use crate::spherical::{Color, ColorKind, Divisor, SphericalSystem, ValidationReport};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid spherical system:\n{0}")]
    Invalid(ValidationReport),
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> InputError {
    InputError::Schema { path: path.into(), message: message.into() }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub kind: String,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ColorJson {
    pub id: String,
    pub kind: String,
    pub moved_by: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ClassRow {
    pub maximal: Vec<Vec<usize>>,
    pub minimal: Vec<usize>,
    pub sigma_zprime: Vec<String>,
    pub sigma_z: Vec<String>,
    pub doubling: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub divisor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bijective: Option<Answer>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<Answer>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassRow>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InputJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Marks a wonderful model variety, where a divisor corresponds to the
    /// highest weight `omega(delta)`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub model: bool,
    pub rootsystem: Vec<ComponentJson>,
    pub sigma: Vec<Vec<i64>>,
    #[serde(default)]
    pub sp: Vec<usize>,
    pub colors: Vec<ColorJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub divisors: BTreeMap<String, BTreeMap<String, u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<Expectation>,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub model: bool,
    pub system: SphericalSystem,
    pub divisors: BTreeMap<String, Divisor>,
    pub expected: Vec<Expectation>,
}

impl CorpusEntry {
    /// A named divisor, or the prime divisor of a color with that id.
    pub fn divisor(&self, name: &str) -> Option<Divisor> {
        self.divisors
            .get(name)
            .cloned()
            .or_else(|| self.system.color_index(name).map(|i| Divisor::single(self.system.colors.len(), i)))
    }
}

/// Name of the divisor assembled from per-color `mult` fields.
pub const INLINE_DIVISOR: &str = "inline";

fn one_based(v: &[usize], rank: usize, path: &str) -> Result<BTreeSet<usize>, InputError> {
    v.iter()
        .enumerate()
        .map(|(i, &a)| {
            if a == 0 || a > rank {
                Err(schema(format!("{path}[{i}]"), format!("simple-root index {a} outside 1..={rank}")))
            } else {
                Ok(a - 1)
            }
        })
        .collect()
}

fn color_kind(s: &str, path: &str) -> Result<ColorKind, InputError> {
    match s {
        "a" => Ok(ColorKind::A),
        "2a" => Ok(ColorKind::TwoA),
        "b" => Ok(ColorKind::B),
        other => Err(schema(path, format!("unknown color kind \"{other}\" (expected \"a\", \"2a\" or \"b\")"))),
    }
}

pub fn parse_input(bytes: &[u8]) -> Result<CorpusEntry, InputError> {
    let raw: InputJson = serde_json::from_slice(bytes).map_err(|e| InputError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_json(raw)
}

pub fn from_json(raw: InputJson) -> Result<CorpusEntry, InputError> {
    let mut parts = vec![];
    for (i, c) in raw.rootsystem.iter().enumerate() {
        let kind = DynkinKind::parse_label(&format!("{}{}", c.kind, c.rank))
            .ok_or_else(|| schema(format!("rootsystem[{i}].kind"), format!("unknown Dynkin type {}", c.kind)))?;
        parts.push(kind);
    }
    let rs = RootSystem::new(&parts).map_err(|e| schema("rootsystem", e.to_string()))?;
    let n = rs.rank();
    for (k, s) in raw.sigma.iter().enumerate() {
        if s.len() != n {
            return Err(schema(format!("sigma[{k}]"), format!("expected {n} coefficients, got {}", s.len())));
        }
    }
    let sp = one_based(&raw.sp, n, "sp")?;
    let mut sys = SphericalSystem { rs, sigma: raw.sigma.clone(), sp, colors: vec![] };
    for (i, c) in raw.colors.iter().enumerate() {
        let path = format!("colors[{i}]");
        let kind = color_kind(&c.kind, &format!("{path}.kind"))?;
        let moved_by = one_based(&c.moved_by, n, &format!("{path}.moved_by"))?;
        let pairing = match (&c.pairing, kind) {
            (Some(p), _) => p.clone(),
            (None, ColorKind::A) => return Err(schema(format!("{path}.pairing"), "required for colors of kind a")),
            (None, _) => match moved_by.iter().next() {
                Some(&alpha) => sys.derived_pairing(kind, alpha),
                None => return Err(schema(format!("{path}.moved_by"), "must not be empty")),
            },
        };
        sys.colors.push(Color { id: c.id.clone(), kind, moved_by, pairing });
    }
    sys.sort_colors();
    let report = sys.validate();
    if !report.is_ok() {
        return Err(InputError::Invalid(report));
    }
    let mut divisors = BTreeMap::new();
    if raw.colors.iter().any(|c| c.mult.is_some()) {
        let entries = raw.colors.iter().filter_map(|c| c.mult.map(|m| (c.id.clone(), m))).collect();
        divisors.insert(INLINE_DIVISOR.to_string(), sys.divisor(&entries).expect("ids checked"));
    }
    for (name, entries) in &raw.divisors {
        let d = sys.divisor(entries).map_err(|m| schema(format!("divisors.{name}"), m))?;
        divisors.insert(name.clone(), d);
    }
    for (i, e) in raw.expected.iter().enumerate() {
        if !divisors.contains_key(&e.divisor) && sys.color_index(&e.divisor).is_none() {
            return Err(schema(format!("expected[{i}].divisor"), format!("unknown divisor {}", e.divisor)));
        }
    }
    Ok(CorpusEntry {
        name: raw.name.unwrap_or_default(),
        model: raw.model,
        system: sys,
        divisors,
        expected: raw.expected,
    })
}

/// Normal form of an entry: colors in normal order, every pairing explicit,
/// inline multiplicities folded into `divisors`.
pub fn to_json(entry: &CorpusEntry) -> InputJson {
    let sys = &entry.system;
    let rootsystem = sys
        .rs
        .components()
        .iter()
        .map(|c| {
            let label = c.kind.label(c.rank);
            let kind: String = label.chars().take_while(|ch| ch.is_ascii_alphabetic()).collect();
            ComponentJson { kind, rank: c.rank }
        })
        .collect();
    let colors = sys
        .colors
        .iter()
        .map(|c| ColorJson {
            id: c.id.clone(),
            kind: c.kind.to_string(),
            moved_by: c.moved_by.iter().map(|a| a + 1).collect(),
            pairing: Some(c.pairing.clone()),
            mult: None,
        })
        .collect();
    let divisors = entry
        .divisors
        .iter()
        .map(|(name, d)| {
            let m = d
                .mult
                .iter()
                .enumerate()
                .filter(|(_, &m)| m != 0)
                .map(|(i, &m)| (sys.colors[i].id.clone(), m))
                .collect();
            (name.clone(), m)
        })
        .collect();
    InputJson {
        name: (!entry.name.is_empty()).then(|| entry.name.clone()),
        description: None,
        model: entry.model,
        rootsystem,
        sigma: sys.sigma.clone(),
        sp: sys.sp.iter().map(|a| a + 1).collect(),
        colors,
        divisors,
        expected: entry.expected.clone(),
    }
}

pub fn serialize(entry: &CorpusEntry) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(entry)).expect("plain data serializes");
    s.push('\n');
    s
}

fn one_based_set(s: &BTreeSet<usize>) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

fn roots(v: &[Vec<i64>]) -> Vec<String> {
    v.iter().map(|r| format_root(r)).collect()
}

/// Roots listed from the first simple root onward.
fn sorted_roots(v: &[Vec<i64>]) -> Vec<String> {
    let mut v = v.to_vec();
    v.sort_by(|a, b| b.cmp(a));
    roots(&v)
}

pub fn class_row(class: &OrbitClass) -> ClassRow {
    ClassRow {
        maximal: class.maximal.iter().map(one_based_set).collect(),
        minimal: one_based_set(&class.minimal),
        sigma_zprime: sorted_roots(&class.sigma_zprime),
        sigma_z: sorted_roots(&class.sigma_z),
        doubling: sorted_roots(&class.doubling),
    }
}

/// Canonical form of a golden row: roots reparsed and sorted.
fn normalize_row(row: &ClassRow, rank: usize) -> Option<ClassRow> {
    let norm = |v: &[String]| -> Option<Vec<String>> {
        let parsed = v.iter().map(|s| parse_root(s, rank)).collect::<Option<Vec<_>>>()?;
        Some(sorted_roots(&parsed))
    };
    let mut maximal: Vec<Vec<usize>> = row
        .maximal
        .iter()
        .map(|m| {
            let mut m = m.clone();
            m.sort_unstable();
            m
        })
        .collect();
    maximal.sort();
    let mut minimal = row.minimal.clone();
    minimal.sort_unstable();
    Some(ClassRow {
        maximal,
        minimal,
        sigma_zprime: norm(&row.sigma_zprime)?,
        sigma_z: norm(&row.sigma_z)?,
        doubling: norm(&row.doubling)?,
    })
}

/// Differences between a computed table and golden rows, as readable lines;
/// empty when they agree up to row order.
pub fn compare_classes(table: &OrbitTable, golden: &[ClassRow], rank: usize) -> Vec<String> {
    let mut got: Vec<ClassRow> = table.classes.iter().map(|c| normalize_row(&class_row(c), rank).unwrap()).collect();
    let mut want = vec![];
    for row in golden {
        match normalize_row(row, rank) {
            Some(r) => want.push(r),
            None => return vec![format!("unparsable golden row {row:?}")],
        }
    }
    let key = |r: &ClassRow| (r.minimal.clone(), r.sigma_zprime.clone());
    got.sort_by_key(key);
    want.sort_by_key(key);
    let mut diffs = vec![];
    if got.len() != want.len() {
        diffs.push(format!("{} classes computed, {} expected", got.len(), want.len()));
    }
    for r in &want {
        if !got.contains(r) {
            diffs.push(format!("missing {r:?}"));
        }
    }
    for r in &got {
        if !want.contains(r) {
            diffs.push(format!("unexpected {r:?}"));
        }
    }
    diffs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Table,
    Json,
    Tex,
}

#[derive(Serialize)]
struct RecordJson {
    sigma_w: Vec<usize>,
    sigma_zprime: Vec<String>,
    sigma_z: Vec<String>,
    doubling: Vec<String>,
    class_id: usize,
    is_minimal: bool,
}

const HEADERS: [&str; 5] = ["Maximal Orbits", "Minimal Orbit", "Orbit in X~", "Orbit in X", "Sigma(delta_Z')"];

fn brace(items: &[String]) -> String {
    if items.is_empty() {
        "{}".into()
    } else {
        format!("{{{}}}", items.join(", "))
    }
}

fn brace_idx(s: &[usize]) -> String {
    brace(&s.iter().map(|i| i.to_string()).collect::<Vec<_>>())
}

pub fn emit_orbit_table(table: &OrbitTable, format: TableFormat) -> String {
    match format {
        TableFormat::Json => {
            let recs: Vec<RecordJson> = table
                .records
                .iter()
                .map(|r| RecordJson {
                    sigma_w: one_based_set(&r.sigma_w),
                    sigma_zprime: roots(&r.sigma_zprime),
                    sigma_z: roots(&r.sigma_z),
                    doubling: roots(&r.doubled_roots()),
                    class_id: r.class_id,
                    is_minimal: r.is_minimal,
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&recs).expect("plain data serializes");
            s.push('\n');
            s
        }
        TableFormat::Table => {
            // One row of cells per line; a class spans as many lines as it
            // has maximal orbits.
            let mut lines: Vec<[String; 5]> = vec![HEADERS.map(String::from)];
            let mut breaks = vec![];
            for c in &table.classes {
                let row = class_row(c);
                breaks.push(lines.len());
                for (i, m) in row.maximal.iter().enumerate() {
                    let mut cells: [String; 5] = Default::default();
                    cells[0] = brace_idx(m);
                    if i == 0 {
                        cells[1] = brace_idx(&row.minimal);
                        cells[2] = brace(&row.sigma_zprime);
                        cells[3] = brace(&row.sigma_z);
                        cells[4] = brace(&row.doubling);
                    }
                    lines.push(cells);
                }
            }
            let widths: Vec<usize> = (0..5).map(|j| lines.iter().map(|l| l[j].chars().count()).max().unwrap()).collect();
            let rule: String = widths.iter().map(|w| "-".repeat(w + 2)).collect::<Vec<_>>().join("+");
            let mut out = String::new();
            for (i, l) in lines.iter().enumerate() {
                if i == 1 || breaks.contains(&i) && i > 1 {
                    let _ = writeln!(out, "{rule}");
                }
                let cells: Vec<String> = l.iter().zip(&widths).map(|(c, w)| format!(" {c:<w$} ")).collect();
                let _ = writeln!(out, "{}", cells.join("|").trim_end());
            }
            out
        }
        TableFormat::Tex => {
            let mut out = String::from("\\begin{tabular}{|c|c|c|c|c|}\n\\hline\n");
            let _ = writeln!(out, "Maximal Orbits & Minimal Orbit & Orbit in $\\widetilde{{X}}$ & Orbit in $X$ & $\\Sigma(\\delta_{{Z'}})$ \\\\");
            out.push_str("\\hline\n");
            let tex_set = |s: &[usize]| format!("$\\{{{}\\}}$", s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","));
            let tex_roots = |v: &[String]| {
                if v.is_empty() {
                    "$\\emptyset$".to_string()
                } else {
                    format!("$\\{{{}\\}}$", v.join(", ").replace('a', "\\alpha_"))
                }
            };
            for c in &table.classes {
                let row = class_row(c);
                let max: Vec<String> = row.maximal.iter().map(|m| tex_set(m)).collect();
                let min = if row.minimal.is_empty() { "$\\emptyset$".into() } else { tex_set(&row.minimal) };
                let _ = writeln!(
                    out,
                    "{} & {} & % diagram: {}\n  & % diagram: {}\n  & {} \\\\",
                    max.join(" \\newline "),
                    min,
                    brace(&row.sigma_zprime),
                    brace(&row.sigma_z),
                    tex_roots(&row.doubling)
                );
                out.push_str("\\hline\n");
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    }
}

const CORPUS_FILES: &[(&str, &str)] = &[
    ("so11_model", include_str!("../corpus/so11_model.json")),
    ("spin7_model", include_str!("../corpus/spin7_model.json")),
    ("ex3", include_str!("../corpus/ex3.json")),
    ("g2_example", include_str!("../corpus/g2_example.json")),
    ("a4_model", include_str!("../corpus/a4_model.json")),
    ("sl2_diagonal", include_str!("../corpus/sl2_diagonal.json")),
    ("sl4_sp4", include_str!("../corpus/sl4_sp4.json")),
    ("sp6_model", include_str!("../corpus/sp6_model.json")),
    ("sp8_model", include_str!("../corpus/sp8_model.json")),
    ("so5_model", include_str!("../corpus/so5_model.json")),
    ("so7_model", include_str!("../corpus/so7_model.json")),
    ("c2_doubled_short", include_str!("../corpus/c2_doubled_short.json")),
    ("f4_model", include_str!("../corpus/f4_model.json")),
    ("g2_rank_one", include_str!("../corpus/g2_rank_one.json")),
    ("b3_spin", include_str!("../corpus/b3_spin.json")),
    ("sl2_torus_pair", include_str!("../corpus/sl2_torus_pair.json")),
    ("a3_linked", include_str!("../corpus/a3_linked.json")),
];

pub fn corpus_names() -> Vec<&'static str> {
    CORPUS_FILES.iter().map(|(n, _)| *n).collect()
}

pub fn corpus_source(name: &str) -> Option<&'static str> {
    CORPUS_FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Every bundled entry; panics if a bundled file fails to parse.
pub fn corpus() -> Vec<CorpusEntry> {
    CORPUS_FILES
        .iter()
        .map(|(n, s)| parse_input(s.as_bytes()).unwrap_or_else(|e| panic!("bundled {n}: {e}")))
        .collect()
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus_source(name).map(|s| parse_input(s.as_bytes()).expect("bundled corpus parses"))
}

/// Replays the golden expectations of an entry; returns one line per
/// mismatch.
pub fn replay(entry: &CorpusEntry) -> Vec<String> {
    let mut failures = vec![];
    for x in &entry.expected {
        let tag = format!("{} / {}", entry.name, x.divisor);
        let Some(d) = entry.divisor(&x.divisor) else {
            failures.push(format!("{tag}: unknown divisor"));
            continue;
        };
        let report = match cross_check(&entry.system, &d) {
            Ok(r) => r,
            Err(err) => {
                failures.push(format!("{tag}: {err}"));
                continue;
            }
        };
        if !report.consistent {
            failures.push(format!("{tag}: closed form disagrees with the orbit computation"));
        }
        if let Some(want) = x.bijective {
            let got = if report.pipeline_bijective { Answer::Yes } else { Answer::No };
            if got != want {
                failures.push(format!("{tag}: orbit computation says {got}, expected {want}"));
            }
        }
        if let Some(want) = x.closed_form {
            if report.closed_form.bijective != want {
                failures.push(format!("{tag}: closed form says {}, expected {want}", report.closed_form.bijective));
            }
        }
        if let Some(rows) = &x.classes {
            for diff in compare_classes(&report.table, rows, entry.system.rs.rank()) {
                failures.push(format!("{tag}: {diff}"));
            }
        }
    }
    failures
}
