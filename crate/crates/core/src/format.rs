//! Text formats for algebras and extension triples.
//!
//! An algebra file:
//!
//! ```text
//! format 1
//! field Q
//! vars x:1 y:1 z:1 u:1 v:1
//! dual XU^[2] + YUV + ZV^[2]
//! label Perazzo
//! ```
//!
//! `ideal f; g; ...` replaces `dual`. A triple file holds `[A]`, `[B]` and
//! `[C]` sections, each inline or `include <path>`, followed by
//! `iota <var>=<poly in C> ...` and `pi <var>=<poly in B> ...`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::algebra::{build_algebra, AlgebraSpec, Presentation};
use crate::error::{Error, Result};
use crate::extension::{ExtensionTriple, RingMapSpec};
use crate::field::Field;
use crate::parse::{parse_divided, parse_polynomial};
use crate::poly::{Polynomial, VariableTable};

pub const FORMAT_VERSION: u32 = 1;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::parse(Some(line), msg)
}

/// Attach a line number to errors raised without one.
fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { line: None, message } => err(line, message),
        Error::Parse { .. } => e,
        other => err(line, other.to_string()),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn split_keyword(line: &str) -> (&str, &str) {
    match line.find(char::is_whitespace) {
        Some(i) => (&line[..i], line[i..].trim()),
        None => (line, ""),
    }
}

fn parse_vars(rest: &str, line: usize) -> Result<VariableTable> {
    let vars = rest
        .split_whitespace()
        .map(|tok| {
            let (name, w) = match tok.split_once(':') {
                Some((n, w)) => (n, w.parse::<u32>().map_err(|_| err(line, format!("bad weight in {tok:?}")))?),
                None => (tok, 1),
            };
            Ok((name.to_string(), w))
        })
        .collect::<Result<Vec<_>>>()?;
    VariableTable::new(vars).map_err(|e| at_line(line, e))
}

#[derive(Default)]
struct AlgebraLines {
    field: Option<Field>,
    vars: Option<(usize, Arc<VariableTable>)>,
    body: Option<(usize, bool, String)>,
    label: Option<String>,
}

impl AlgebraLines {
    fn accept(&mut self, keyword: &str, rest: &str, line: usize) -> Result<bool> {
        match keyword {
            "format" => {
                if rest.parse::<u32>().ok() != Some(FORMAT_VERSION) {
                    return Err(err(line, format!("unsupported format version {rest:?}")));
                }
            }
            "field" => {
                if self.field.is_some() {
                    return Err(err(line, "duplicate field line"));
                }
                self.field = Some(rest.parse().map_err(|e| at_line(line, e))?);
            }
            "vars" => {
                if self.vars.is_some() {
                    return Err(err(line, "duplicate vars line"));
                }
                self.vars = Some((line, Arc::new(parse_vars(rest, line)?)));
            }
            "dual" | "ideal" => {
                if self.body.is_some() {
                    return Err(err(line, "exactly one dual or ideal line is allowed"));
                }
                self.body = Some((line, keyword == "dual", rest.to_string()));
            }
            "label" => self.label = Some(rest.to_string()),
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn finish(self, end: usize) -> Result<AlgebraSpec> {
        let field = self.field.ok_or_else(|| err(end, "missing field line"))?;
        let (_, table) = self.vars.ok_or_else(|| err(end, "missing vars line"))?;
        let (line, dual, text) = self.body.ok_or_else(|| err(end, "missing dual or ideal line"))?;
        let spec = if dual {
            AlgebraSpec::dual(parse_divided(&text, &table, field).map_err(|e| at_line(line, e))?)
        } else {
            let gens = text
                .split(';')
                .map(str::trim)
                .filter(|g| !g.is_empty())
                .map(|g| parse_polynomial(g, &table, field).map_err(|e| at_line(line, e)))
                .collect::<Result<Vec<_>>>()?;
            AlgebraSpec::ideal(table, field, gens)
        };
        Ok(match self.label {
            Some(l) => spec.with_label(l),
            None => spec,
        })
    }
}

/// Parse an algebra description.
pub fn parse_algebra(text: &str) -> Result<AlgebraSpec> {
    let mut lines = AlgebraLines::default();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        last = n;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = split_keyword(line);
        if !lines.accept(kw, rest, n)? {
            return Err(err(n, format!("unknown keyword {kw:?}")));
        }
    }
    lines.finish(last.max(1))
}

pub fn read_algebra(path: impl AsRef<Path>) -> Result<AlgebraSpec> {
    parse_algebra(&std::fs::read_to_string(path)?)
}

/// Render a spec in the algebra file format.
pub fn render_algebra(spec: &AlgebraSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format {FORMAT_VERSION}");
    let _ = writeln!(out, "field {}", spec.field);
    let vars: Vec<String> = (0..spec.table.len())
        .map(|i| format!("{}:{}", spec.table.name(i), spec.table.weight(i)))
        .collect();
    let _ = writeln!(out, "vars {}", vars.join(" "));
    match &spec.presentation {
        Presentation::DualGenerator(f) => {
            let _ = writeln!(out, "dual {f}");
        }
        Presentation::IdealGenerators(gens) => {
            let g: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            let _ = writeln!(out, "ideal {}", g.join("; "));
        }
    }
    if let Some(l) = &spec.label {
        let _ = writeln!(out, "label {l}");
    }
    out
}

/// Unresolved contents of a triple file.
#[derive(Clone, Debug)]
pub struct TripleFile {
    pub a: AlgebraSpec,
    pub b: AlgebraSpec,
    pub c: AlgebraSpec,
    /// `(line, var, poly)` as written.
    pub iota: Vec<(usize, String, String)>,
    pub pi: Vec<(usize, String, String)>,
}

/// `x=a + b y=0` into `[(x, "a + b"), (y, "0")]`.
fn parse_assignments(rest: &str, line: usize) -> Result<Vec<(usize, String, String)>> {
    let mut out: Vec<(usize, String, String)> = Vec::new();
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some((var, poly)) => {
                if var.is_empty() {
                    return Err(err(line, format!("missing variable name in {tok:?}")));
                }
                out.push((line, var.to_string(), poly.to_string()));
            }
            None => match out.last_mut() {
                Some(last) => {
                    last.2.push(' ');
                    last.2.push_str(tok);
                }
                None => return Err(err(line, format!("expected var=poly, got {tok:?}"))),
            },
        }
    }
    Ok(out)
}

enum Section {
    Inline(AlgebraLines),
    Included(AlgebraSpec),
}

/// Parse a triple file; `base` resolves `include` paths.
pub fn parse_triple(text: &str, base: Option<&Path>) -> Result<TripleFile> {
    let mut sections: HashMap<char, (usize, Section)> = HashMap::new();
    let mut current: Option<char> = None;
    let (mut iota, mut pi) = (Vec::new(), Vec::new());
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        last = n;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let c = match name.trim() {
                "A" => 'A',
                "B" => 'B',
                "C" => 'C',
                other => return Err(err(n, format!("unknown section [{other}]"))),
            };
            if sections.contains_key(&c) {
                return Err(err(n, format!("duplicate section [{c}]")));
            }
            sections.insert(c, (n, Section::Inline(AlgebraLines::default())));
            current = Some(c);
            continue;
        }
        let (kw, rest) = split_keyword(line);
        match kw {
            "iota" => {
                iota.extend(parse_assignments(rest, n)?);
                current = None;
                continue;
            }
            "pi" => {
                pi.extend(parse_assignments(rest, n)?);
                current = None;
                continue;
            }
            "format" => {
                if rest.parse::<u32>().ok() != Some(FORMAT_VERSION) {
                    return Err(err(n, format!("unsupported format version {rest:?}")));
                }
                if current.is_none() {
                    continue;
                }
            }
            _ => {}
        }
        let c = current.ok_or_else(|| err(n, format!("{kw:?} outside of an [A], [B] or [C] section")))?;
        let entry = sections.get_mut(&c).expect("current section exists");
        match &mut entry.1 {
            Section::Inline(lines) if kw == "include" => {
                if lines.field.is_some() || lines.vars.is_some() || lines.body.is_some() {
                    return Err(err(n, "include must be the only content of a section"));
                }
                let path = resolve(base, rest);
                let spec = read_algebra(&path).map_err(|e| err(n, format!("in {}: {e}", path.display())))?;
                entry.1 = Section::Included(spec);
            }
            Section::Inline(lines) => {
                if !lines.accept(kw, rest, n)? {
                    return Err(err(n, format!("unknown keyword {kw:?}")));
                }
            }
            Section::Included(_) => return Err(err(n, "include must be the only content of a section")),
        }
    }
    let mut take = |c: char| -> Result<AlgebraSpec> {
        match sections.remove(&c) {
            Some((_, Section::Included(spec))) => Ok(spec),
            Some((start, Section::Inline(lines))) => lines.finish(start),
            None => Err(err(last.max(1), format!("missing section [{c}]"))),
        }
    };
    Ok(TripleFile {
        a: take('A')?,
        b: take('B')?,
        c: take('C')?,
        iota,
        pi,
    })
}

fn resolve(base: Option<&Path>, rest: &str) -> PathBuf {
    let p = Path::new(rest.trim().trim_matches('"'));
    match base {
        Some(b) if p.is_relative() => b.join(p),
        _ => p.to_path_buf(),
    }
}

fn ring_map(
    entries: &[(usize, String, String)],
    source: &Arc<VariableTable>,
    target: &Arc<VariableTable>,
    field: Field,
    what: &str,
) -> Result<RingMapSpec> {
    let mut named = HashMap::new();
    for (line, var, poly) in entries {
        if source.index_of(var).is_none() {
            return Err(err(*line, format!("{what}: {var} is not a source variable")));
        }
        let p = parse_polynomial(poly, target, field).map_err(|e| at_line(*line, e))?;
        if named.insert(var.clone(), p).is_some() {
            return Err(err(*line, format!("{what}: {var} assigned twice")));
        }
    }
    if let Some(missing) = source.names().iter().find(|n| !named.contains_key(*n)) {
        let line = entries.last().map(|e| e.0).unwrap_or(1);
        return Err(err(line, format!("{what}: no image for {missing}")));
    }
    let images: Vec<Polynomial> = source.names().iter().map(|n| named[n].clone()).collect();
    RingMapSpec::new(source.clone(), target.clone(), images).map_err(|e| {
        let line = entries.first().map(|e| e.0).unwrap_or(1);
        at_line(line, e)
    })
}

impl TripleFile {
    /// Build the three algebras and both maps.
    pub fn resolve(self) -> Result<ExtensionTriple> {
        let a = build_algebra(self.a)?;
        let b = build_algebra(self.b)?;
        let c = build_algebra(self.c)?;
        let field = c.field();
        let iota = ring_map(&self.iota, a.table(), c.table(), field, "iota")?;
        let pi = ring_map(&self.pi, c.table(), b.table(), field, "pi")?;
        ExtensionTriple::new(a, b, c, iota, pi)
    }
}

pub fn read_triple(path: impl AsRef<Path>) -> Result<ExtensionTriple> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_triple(&text, path.parent())?.resolve()
}

/// Render a triple with inline sections.
pub fn render_triple(t: &ExtensionTriple) -> String {
    let mut out = String::new();
    for (name, alg) in [("A", &t.a), ("B", &t.b), ("C", &t.c)] {
        let _ = writeln!(out, "[{name}]");
        out.push_str(&render_algebra(alg.spec()));
        out.push('\n');
    }
    for (name, map) in [("iota", &t.iota), ("pi", &t.pi)] {
        let parts: Vec<String> = map
            .source()
            .names()
            .iter()
            .zip(map.images())
            .map(|(v, p)| format!("{v}={}", p.to_string().replace(' ', "")))
            .collect();
        let _ = writeln!(out, "{name} {}", parts.join(" "));
    }
    out
}
