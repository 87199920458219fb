//! Text and JSON serialization.
//!
//! Algebra files:
//!
//! ```text
//! bck 1
//! order 4
//! name C4
//! 0 0 0 0
//! 1 0 0 0
//! 2 2 0 0
//! 3 3 3 0
//! ```
//!
//! Maps are `map <n> v0 ... v(n-1)`, element sets `set <n> e...`, and
//! MV-algebras `mv 1` / `order <n>` / `⊕` rows / `neg v0 ... v(n-1)`.
//! `#` starts a comment anywhere.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_bck, CayleyAlgebra, CayleyTable};
use crate::error::{Error, Result};
use crate::ideals::CongruenceRelation;
use crate::map::UnaryMap;
use crate::mv::MvAlgebra;
use crate::set::ElementSet;

const VERSION: &str = "1";

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("").trim();
            (!l.is_empty()).then_some((i + 1, l))
        })
        .collect()
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| {
        Error::format(
            line,
            format!("expected a non-negative integer, found {tok:?}"),
        )
    })
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| parse_usize(line, t))
        .collect()
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = content_lines(text);
        let last = text.lines().count().max(1);
        Lines {
            lines,
            pos: 0,
            last,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let l = self.lines.get(self.pos).copied().ok_or_else(|| {
            Error::format(
                self.last,
                format!("unexpected end of input, expected {what}"),
            )
        })?;
        self.pos += 1;
        Ok(l)
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    /// `<keyword> <rest>`
    fn keyword(&mut self, keyword: &str) -> Result<(usize, &'a str)> {
        let (n, l) = self.next(keyword)?;
        match l.split_once(char::is_whitespace) {
            Some((k, rest)) if k == keyword => Ok((n, rest.trim())),
            _ => Err(Error::format(
                n,
                format!("expected `{keyword} ...`, found {l:?}"),
            )),
        }
    }

    fn header(&mut self, magic: &str) -> Result<(usize, Option<String>)> {
        let (n, v) = self.keyword(magic)?;
        if v != VERSION {
            return Err(Error::format(
                n,
                format!("unsupported {magic} version {v:?}"),
            ));
        }
        let (n, o) = self.keyword("order")?;
        let order = parse_usize(n, o)?;
        if order == 0 {
            return Err(Error::format(n, "order must be positive"));
        }
        let mut name = None;
        if let Some((_, l)) = self.peek() {
            if let Some(rest) = l.strip_prefix("name") {
                if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                    self.pos += 1;
                    name = Some(rest.trim().to_string());
                }
            }
        }
        Ok((order, name))
    }

    fn rows(&mut self, order: usize) -> Result<Vec<Vec<usize>>> {
        let mut rows = Vec::with_capacity(order);
        for x in 0..order {
            let (n, l) = self.next(&format!("row {x}"))?;
            let row = parse_ints(n, l)?;
            if row.len() != order {
                return Err(Error::format(
                    n,
                    format!("row {x} has {} entries, expected {order}", row.len()),
                ));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= order) {
                return Err(Error::format(
                    n,
                    format!("entry {v} out of range 0..{order}"),
                ));
            }
            rows.push(row);
        }
        Ok(rows)
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Some((n, l)) => Err(Error::format(n, format!("trailing content {l:?}"))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl From<&CayleyTable> for TableJson {
    fn from(t: &CayleyTable) -> Self {
        TableJson {
            order: t.order(),
            table: t.rows(),
            name: t.name().map(str::to_string),
        }
    }
}

fn table_from_json(text: &str) -> Result<CayleyTable> {
    let j: TableJson =
        serde_json::from_str(text).map_err(|e| Error::format(e.line(), e.to_string()))?;
    if j.table.len() != j.order {
        return Err(Error::SizeMismatch {
            expected: j.order,
            found: j.table.len(),
        });
    }
    let t = CayleyTable::from_rows(j.table)?;
    Ok(match j.name {
        Some(n) => t.with_name(n),
        None => t,
    })
}

/// Parses the text format, or the JSON mirror when the input starts with `{`.
pub fn parse_table(text: &str) -> Result<CayleyTable> {
    if text.trim_start().starts_with('{') {
        return table_from_json(text);
    }
    let mut lines = Lines::new(text);
    let (order, name) = lines.header("bck")?;
    let rows = lines.rows(order)?;
    lines.finish()?;
    let t = CayleyTable::from_rows(rows)?;
    Ok(match name {
        Some(n) => t.with_name(n),
        None => t,
    })
}

pub fn parse_algebra(text: &str) -> Result<CayleyAlgebra> {
    check_bck(parse_table(text)?)
}

fn write_rows(out: &mut String, rows: &[Vec<usize>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

pub fn write_table(t: &CayleyTable) -> String {
    let mut out = format!("bck {VERSION}\norder {}\n", t.order());
    if let Some(n) = t.name() {
        out.push_str(&format!("name {n}\n"));
    }
    write_rows(&mut out, &t.rows());
    out
}

pub fn write_algebra(a: &CayleyAlgebra) -> String {
    write_table(&a.table())
}

pub fn table_json(t: &CayleyTable) -> serde_json::Value {
    serde_json::to_value(TableJson::from(t)).expect("plain data serializes")
}

/// Keyword, declared size and the values after it, across any number of lines.
fn parse_sized(text: &str, keyword: &str) -> Result<(usize, Vec<usize>)> {
    let lines = content_lines(text);
    let Some(&(first, l)) = lines.first() else {
        return Err(Error::format(
            1,
            format!("empty input, expected `{keyword} ...`"),
        ));
    };
    let mut toks = l.split_whitespace();
    if toks.next() != Some(keyword) {
        return Err(Error::format(
            first,
            format!("expected `{keyword} ...`, found {l:?}"),
        ));
    }
    let size = toks
        .next()
        .ok_or_else(|| Error::format(first, "missing size"))
        .and_then(|t| parse_usize(first, t))?;
    let mut values = parse_ints(first, &toks.collect::<Vec<_>>().join(" "))?;
    for &(n, l) in &lines[1..] {
        values.extend(parse_ints(n, l)?);
    }
    Ok((size, values))
}

pub fn parse_map(text: &str) -> Result<UnaryMap> {
    let (n, values) = parse_sized(text, "map")?;
    if values.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: values.len(),
        });
    }
    Ok(UnaryMap::new(values))
}

pub fn write_map(m: &UnaryMap) -> String {
    let mut out = format!("map {}", m.domain_order());
    for v in m.values() {
        out.push_str(&format!(" {v}"));
    }
    out.push('\n');
    out
}

/// `set <universe> e...`
pub fn parse_set(text: &str) -> Result<ElementSet> {
    let (n, values) = parse_sized(text, "set")?;
    ElementSet::try_from_elements(n, values)
}

pub fn write_set(s: &ElementSet) -> String {
    let mut out = format!("set {}", s.universe());
    for e in s.iter() {
        out.push_str(&format!(" {e}"));
    }
    out.push('\n');
    out
}

/// `ideal <k> e1 ... ek`, one line of an ideal list.
pub fn write_ideal_line(s: &ElementSet) -> String {
    let mut out = format!("ideal {}", s.len());
    for e in s.iter() {
        out.push_str(&format!(" {e}"));
    }
    out
}

/// `classes {a,b}{c}...`
pub fn write_classes_line(c: &CongruenceRelation) -> String {
    format!("classes {c}")
}

/// Comma- or space-separated elements, with optional braces: `{0,1}`.
pub fn parse_element_list(text: &str, universe: usize) -> Result<ElementSet> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let values = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_usize(1, t))
        .collect::<Result<Vec<_>>>()?;
    ElementSet::try_from_elements(universe, values)
}

pub fn parse_mv(text: &str) -> Result<MvAlgebra> {
    let mut lines = Lines::new(text);
    let (order, _) = lines.header("mv")?;
    let rows = lines.rows(order)?;
    let (n, neg) = lines.keyword("neg")?;
    let neg = parse_ints(n, neg)?;
    if neg.len() != order {
        return Err(Error::format(
            n,
            format!("negation has {} entries, expected {order}", neg.len()),
        ));
    }
    lines.finish()?;
    MvAlgebra::new(rows, neg)
}

pub fn write_mv(m: &MvAlgebra) -> String {
    let mut out = format!("mv {VERSION}\norder {}\n", m.order());
    write_rows(&mut out, &m.oplus_rows());
    out.push_str("neg");
    for v in m.neg_row() {
        out.push_str(&format!(" {v}"));
    }
    out.push('\n');
    out
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn read_with<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    let text = read_text(path)?;
    parse(&text).map_err(|e| Error::in_file(path, e))
}

pub fn read_table(path: &Path) -> Result<CayleyTable> {
    read_with(path, parse_table)
}

pub fn read_algebra(path: &Path) -> Result<CayleyAlgebra> {
    read_with(path, parse_algebra)
}

pub fn read_map(path: &Path) -> Result<UnaryMap> {
    read_with(path, parse_map)
}

pub fn read_set(path: &Path) -> Result<ElementSet> {
    read_with(path, parse_set)
}

pub fn read_mv(path: &Path) -> Result<MvAlgebra> {
    read_with(path, parse_mv)
}
