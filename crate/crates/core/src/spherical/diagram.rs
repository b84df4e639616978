//! Plain-text diagrams.
//!
//! The rendering has two parts: a picture (one row of node glyphs per
//! Dynkin component, followed by one marker row per spherical root touching
//! it) and data lines (`roots:`, `sigma`, `sp:`, `color`) from which the
//! system is read back. See `docs/diagram-format.md` for the grammar.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Color, ColorKind, SphericalSystem};
use crate::rootsys::catalogue;
use crate::rootsys::{format_root, parse_root, DynkinKind, RootSystem};

const CELL: usize = 4;

fn link(rs: &RootSystem, i: usize, j: usize) -> &'static str {
    match rs.cartan(i, j) * rs.cartan(j, i) {
        0 => "   ",
        1 => "---",
        2 if rs.is_long(i) => "=>=",
        2 => "=<=",
        _ if rs.is_long(i) => ">>>",
        _ => "<<<",
    }
}

pub fn render(sys: &SphericalSystem) -> String {
    let rs = &sys.rs;
    let mut out = String::new();
    for comp in rs.components() {
        let label = comp.kind.label(comp.rank);
        let mut nodes = String::new();
        let mut numbers = String::new();
        for i in comp.indices() {
            nodes.push(if sys.sp.contains(&i) { '*' } else { 'o' });
            if i + 1 < comp.offset + comp.rank {
                nodes.push_str(link(rs, i, i + 1));
            }
            let _ = write!(numbers, "{:<width$}", i + 1, width = CELL);
        }
        let _ = writeln!(out, "{label:<6}{nodes}");
        let _ = writeln!(out, "{:<6}{}", "", numbers.trim_end());
        let far: Vec<String> = comp
            .indices()
            .flat_map(|i| comp.indices().filter(move |&j| j > i + 1).map(move |j| (i, j)))
            .filter(|&(i, j)| rs.cartan(i, j) != 0)
            .map(|(i, j)| format!("a{}-a{}", i + 1, j + 1))
            .collect();
        if !far.is_empty() {
            let _ = writeln!(out, "{:<6}link {}", "", far.join(" "));
        }
        for (k, s) in sys.sigma.iter().enumerate() {
            if comp.indices().all(|i| s[i] == 0) {
                continue;
            }
            let mut row = String::new();
            for i in comp.indices() {
                let mark = if s[i] == 0 { ".".to_string() } else { s[i].to_string() };
                let _ = write!(row, "{mark:<width$}", width = CELL);
            }
            let kind = catalogue::classify_spherical_root(rs, s, &sys.sp)
                .map(|k| k.short_name())
                .unwrap_or_else(|_| "?".into());
            let _ = writeln!(out, "{:<6}{}  {} [{}]", format!("s{}", k + 1), row, format_root(s), kind);
        }
    }
    let _ = writeln!(out, "roots: {}", rs.label());
    for (k, s) in sys.sigma.iter().enumerate() {
        let _ = writeln!(out, "sigma {}: {}", k + 1, format_root(s));
    }
    let sp: Vec<String> = sys.sp.iter().map(|a| (a + 1).to_string()).collect();
    let _ = writeln!(out, "sp: {{{}}}", sp.join(", "));
    for c in &sys.colors {
        let moved: Vec<String> = c.moved_by.iter().map(|a| (a + 1).to_string()).collect();
        let pairing: Vec<String> = c.pairing.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "color {} {} {{{}}} : {}", c.id, c.kind, moved.join(", "), pairing.join(" "));
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("diagram line {line}: {message}")]
pub struct DiagramError {
    pub line: usize,
    pub message: String,
}

fn parse_set(s: &str, line: usize) -> Result<BTreeSet<usize>, DiagramError> {
    let err = |m: &str| DiagramError { line, message: m.to_string() };
    let inner = s.trim().strip_prefix('{').and_then(|x| x.strip_suffix('}')).ok_or_else(|| err("expected {...}"))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| match x.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(err("bad simple-root index")),
        })
        .collect()
}

/// Reads back the data lines of [`render`]; picture lines are skipped.
pub fn parse(text: &str) -> Result<SphericalSystem, DiagramError> {
    let mut rs: Option<RootSystem> = None;
    let mut sigma = vec![];
    let mut sp = None;
    let mut colors = vec![];
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let err = |m: String| DiagramError { line, message: m };
        let l = raw.trim();
        if let Some(rest) = l.strip_prefix("roots:") {
            let mut parts = vec![];
            for label in rest.trim().split('x') {
                let p: (DynkinKind, usize) =
                    DynkinKind::parse_label(label.trim()).ok_or_else(|| err(format!("bad component {label}")))?;
                parts.push(p);
            }
            rs = Some(RootSystem::new(&parts).map_err(|e| err(e.to_string()))?);
        } else if let Some(rest) = l.strip_prefix("sigma ") {
            let rank = rs.as_ref().ok_or_else(|| err("sigma before roots".into()))?.rank();
            let (_, expr) = rest.split_once(':').ok_or_else(|| err("expected sigma k: root".into()))?;
            sigma.push(parse_root(expr, rank).ok_or_else(|| err(format!("bad root {expr}")))?);
        } else if let Some(rest) = l.strip_prefix("sp:") {
            sp = Some(parse_set(rest, line)?);
        } else if let Some(rest) = l.strip_prefix("color ") {
            let (head, pairing) = rest.split_once(':').ok_or_else(|| err("expected ':' in color".into()))?;
            let head = head.trim();
            let (id, rest) = head.split_once(' ').ok_or_else(|| err("missing color kind".into()))?;
            let (kind, moved) = rest.trim().split_once(' ').ok_or_else(|| err("missing moved_by".into()))?;
            let kind = match kind {
                "a" => ColorKind::A,
                "2a" => ColorKind::TwoA,
                "b" => ColorKind::B,
                k => return Err(err(format!("unknown color kind {k}"))),
            };
            let pairing = pairing
                .split_whitespace()
                .map(|x| x.parse::<i64>().map_err(|_| err(format!("bad pairing entry {x}"))))
                .collect::<Result<Vec<_>, _>>()?;
            colors.push(Color { id: id.to_string(), kind, moved_by: parse_set(moved, line)?, pairing });
        }
    }
    let rs = rs.ok_or(DiagramError { line: 0, message: "missing roots: line".into() })?;
    Ok(SphericalSystem { rs, sigma, sp: sp.unwrap_or_default(), colors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_node() {
        let rs = RootSystem::new(&[(DynkinKind::A, 1)]).unwrap();
        let sys = SphericalSystem::from_a_colors(rs, vec![], BTreeSet::new(), vec![], |_, _| None);
        let text = render(&sys);
        assert!(text.starts_with("A1    o\n"));
        assert_eq!(parse(&text).unwrap(), sys);
    }

    #[test]
    fn branch_links_listed() {
        let rs = RootSystem::new(&[(DynkinKind::D, 4)]).unwrap();
        let sys = SphericalSystem::from_a_colors(rs, vec![], BTreeSet::new(), vec![], |_, _| None);
        assert!(render(&sys).contains("link a2-a4"));
    }
}
