//! Context parsers and lattice writers.
//!
//! Input grammars:
//!
//! - cross-table (`.cxt`): a line `B`, an optional title line, `n`, `m`,
//!   `n` object names, `m` attribute names and `n` rows of `m` characters
//!   from `.`/`X`/`x`. Blank lines are ignored, so a title must not be a
//!   bare number.
//! - FIMI: one transaction per line, whitespace-separated item ids. Object
//!   `k` is named `t<k>` and attribute `i` is named `i`.
//! - CSV: header row of attribute names (the first cell is ignored), then
//!   one row per object with its name first and cells in `1`/`0`/`X`/`x`/empty.
//!
//! Sets are written by name. When every name in a universe is a single
//! character the names are concatenated (`abc`), otherwise comma-separated;
//! the empty set is written `∅`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::builders::ConceptLattice;
use crate::context::{AttrId, Concept, Context};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContextFormat {
    CrossTable,
    Fimi,
    Csv,
}

pub fn parse_context(text: &str, fmt: ContextFormat) -> Result<Context> {
    match fmt {
        ContextFormat::CrossTable => parse_cxt(text),
        ContextFormat::Fimi => parse_fimi(text, None),
        ContextFormat::Csv => parse_csv(text),
    }
}

/// Non-blank lines with their 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(k, l)| (k + 1, l.trim_end()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Self {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((line, text)) => {
                self.last = line;
                Ok((line, text))
            }
            None => Err(Error::parse(self.last + 1, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let (line, text) = self.next(what)?;
        text.trim()
            .parse()
            .map_err(|_| Error::parse(line, format!("expected {what}, found {text:?}")))
    }
}

pub fn parse_cxt(text: &str) -> Result<Context> {
    let mut lines = Lines::new(text);
    let (line, magic) = lines.next("header line B")?;
    if magic.trim() != "B" {
        return Err(Error::parse(line, format!("expected header line B, found {magic:?}")));
    }
    if let Some(&(_, next)) = lines.inner.peek() {
        if next.trim().parse::<usize>().is_err() {
            lines.next("title")?;
        }
    }
    let n = lines.count("object count")?;
    let m = lines.count("attribute count")?;
    let mut object_names = Vec::with_capacity(n);
    for _ in 0..n {
        object_names.push(lines.next("object name")?.1.to_string());
    }
    let mut attr_names = Vec::with_capacity(m);
    for _ in 0..m {
        attr_names.push(lines.next("attribute name")?.1.to_string());
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        if m == 0 {
            rows.push(Vec::new());
            continue;
        }
        let (line, row) = lines.next("incidence row")?;
        let row = row.trim();
        if row.chars().count() != m {
            return Err(Error::parse(
                line,
                format!("row has {} cells, expected {m}", row.chars().count()),
            ));
        }
        let mut attrs = Vec::new();
        for (i, ch) in row.chars().enumerate() {
            match ch {
                'X' | 'x' => attrs.push(i as AttrId),
                '.' => {}
                other => return Err(Error::parse(line, format!("invalid cell {other:?}"))),
            }
        }
        rows.push(attrs);
    }
    if let Some(&(line, _)) = lines.inner.peek() {
        return Err(Error::parse(line, "unexpected content after the last row"));
    }
    Context::new(object_names, attr_names, rows)
}

/// Parses FIMI transactions. Every line, including a blank one, is one
/// transaction. `items` fixes the attribute universe; otherwise it is
/// `max id + 1`.
pub fn parse_fimi(text: &str, items: Option<usize>) -> Result<Context> {
    let mut rows = Vec::new();
    let mut max_id: Option<AttrId> = None;
    for (k, line) in text.lines().enumerate() {
        let mut row: Vec<AttrId> = Vec::new();
        for token in line.split_whitespace() {
            let id: AttrId = token
                .parse()
                .map_err(|_| Error::parse(k + 1, format!("item id {token:?} is not a non-negative integer")))?;
            if row.contains(&id) {
                return Err(Error::parse(k + 1, format!("duplicate item {id}")));
            }
            row.push(id);
            max_id = max_id.max(Some(id));
        }
        rows.push(row);
    }
    let universe = max_id.map_or(0, |i| i as usize + 1);
    let m = match items {
        Some(m) if m < universe => {
            return Err(Error::invalid(format!(
                "item {} is outside the declared universe of {m} items",
                universe - 1
            )))
        }
        Some(m) => m,
        None => universe,
    };
    let object_names = (0..rows.len()).map(|k| format!("t{k}")).collect();
    let attr_names = (0..m).map(|i| i.to_string()).collect();
    Context::new(object_names, attr_names, rows)
}

pub fn parse_csv(text: &str) -> Result<Context> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::parse(1, e.to_string()))?
        .clone();
    if header.is_empty() {
        return Err(Error::parse(1, "missing header row"));
    }
    let attr_names: Vec<String> = header.iter().skip(1).map(|s| s.trim().to_string()).collect();
    let m = attr_names.len();
    let mut object_names = Vec::new();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != m + 1 {
            return Err(Error::parse(
                line,
                format!("row has {} cells, expected {}", record.len(), m + 1),
            ));
        }
        object_names.push(record[0].trim().to_string());
        let mut attrs = Vec::new();
        for (i, cell) in record.iter().skip(1).enumerate() {
            match cell.trim() {
                "1" | "X" | "x" => attrs.push(i as AttrId),
                "0" | "" => {}
                other => return Err(Error::parse(line, format!("invalid cell {other:?}"))),
            }
        }
        rows.push(attrs);
    }
    Context::new(object_names, attr_names, rows)
}

/// Writes `ctx` as a cross-table; [`parse_cxt`] reads it back unchanged.
pub fn write_cxt(ctx: &Context) -> String {
    let mut out = String::new();
    let _ = write!(out, "B\n\n{}\n{}\n\n", ctx.n(), ctx.m());
    for name in ctx.object_names().iter().chain(ctx.attr_names()) {
        out.push_str(name);
        out.push('\n');
    }
    let mut row = vec![b'.'; ctx.m()];
    for g in 0..ctx.n() as u32 {
        row.fill(b'.');
        for &i in ctx.row(g) {
            row[i as usize] = b'X';
        }
        out.push_str(std::str::from_utf8(&row).expect("ascii"));
        out.push('\n');
    }
    out
}

/// Renders id sets by name using the rule in the module docs.
#[derive(Debug, Clone)]
struct SetNames<'a> {
    names: &'a [String],
    compact: bool,
}

impl<'a> SetNames<'a> {
    fn new(names: &'a [String]) -> Self {
        Self {
            names,
            compact: names.iter().all(|n| n.chars().count() == 1),
        }
    }

    fn render(&self, ids: &[u32]) -> String {
        if ids.is_empty() {
            return "∅".to_string();
        }
        let sep = if self.compact { "" } else { "," };
        ids.iter()
            .map(|&i| self.names[i as usize].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocConcept {
    pub id: u32,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocMeta {
    pub n: usize,
    pub m: usize,
    pub algorithm: String,
    pub bottom_mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<serde_json::Value>,
}

/// A lattice with names resolved, ready to be written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub concepts: Vec<DocConcept>,
    pub edges: Vec<(u32, u32)>,
    pub top_id: Option<u32>,
    pub bottom_id: Option<u32>,
    pub meta: DocMeta,
    /// Rendered extent/intent labels per concept, for text and DOT output.
    #[serde(skip)]
    labels: Vec<(String, String)>,
}

impl LatticeDocument {
    /// Canonicalizes `lat` and resolves names against `ctx`.
    pub fn from_lattice(
        lat: &ConceptLattice,
        ctx: &Context,
        algorithm: &str,
        stats: Option<serde_json::Value>,
    ) -> Self {
        let canon = lat.canonical();
        let objects = SetNames::new(ctx.object_names());
        let attrs = SetNames::new(ctx.attr_names());
        let names = |all: &[String], ids: &[u32]| ids.iter().map(|&i| all[i as usize].clone()).collect();
        let concepts = canon
            .concepts
            .iter()
            .enumerate()
            .map(|(id, c)| DocConcept {
                id: id as u32,
                extent: names(ctx.object_names(), &c.extent),
                intent: names(ctx.attr_names(), &c.intent),
                support: c.support(),
            })
            .collect();
        let labels = canon
            .concepts
            .iter()
            .map(|c| (objects.render(&c.extent), attrs.render(&c.intent)))
            .collect();
        Self {
            concepts,
            edges: canon.edges,
            top_id: canon.top_id,
            bottom_id: canon.bottom_id,
            meta: DocMeta {
                n: ctx.n(),
                m: ctx.m(),
                algorithm: algorithm.to_string(),
                bottom_mode: canon.bottom_mode.name().to_string(),
                stats,
            },
            labels,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputKind {
    Text,
    Json,
    Dot,
}

/// Writes a document. Text lists concepts only, one `extent | intent |
/// support` line each in canonical order; JSON and DOT also carry edges.
pub fn write_lattice(doc: &LatticeDocument, kind: OutputKind) -> String {
    match kind {
        OutputKind::Text => {
            let mut out = String::new();
            for (c, (extent, intent)) in doc.concepts.iter().zip(&doc.labels) {
                let _ = writeln!(out, "{extent} | {intent} | {}", c.support);
            }
            out
        }
        OutputKind::Json => {
            let mut out = serde_json::to_string_pretty(doc).expect("document serializes");
            out.push('\n');
            out
        }
        OutputKind::Dot => {
            let mut out = String::from("digraph lattice {\n");
            for (c, (extent, intent)) in doc.concepts.iter().zip(&doc.labels) {
                let label = dot_escape(&format!("{extent}|{intent}"));
                let _ = writeln!(out, "  {} [label=\"{label}\"];", c.id);
            }
            for (p, s) in &doc.edges {
                let _ = writeln!(out, "  {p} -> {s};");
            }
            out.push_str("}\n");
            out
        }
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Text listing of a concept list in canonical order.
pub fn write_concepts(concepts: &[Concept], ctx: &Context) -> String {
    let objects = SetNames::new(ctx.object_names());
    let attrs = SetNames::new(ctx.attr_names());
    let mut sorted: Vec<&Concept> = concepts.iter().collect();
    sorted.sort_by(|a, b| (std::cmp::Reverse(a.support()), &a.intent).cmp(&(std::cmp::Reverse(b.support()), &b.intent)));
    let mut out = String::new();
    for c in sorted {
        let _ = writeln!(
            out,
            "{} | {} | {}",
            objects.render(&c.extent),
            attrs.render(&c.intent),
            c.support()
        );
    }
    out
}

/// Byte form used to compare lattices: canonical concepts by id followed
/// by canonical edges, with no metadata.
pub fn canonical_serialization(lat: &ConceptLattice, ctx: &Context) -> String {
    let doc = LatticeDocument::from_lattice(lat, ctx, "", None);
    let mut out = write_lattice(&doc, OutputKind::Text);
    for (p, s) in &doc.edges {
        let _ = writeln!(out, "{p} -> {s}");
    }
    out
}
