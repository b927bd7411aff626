//! Plain-text monoid files.
//!
//! ```text
//! # comments run to the end of the line
//! n = 3
//! unit = 0
//! generators = 1        # optional
//! names = e a b         # optional
//! table =
//! 0 1 2
//! 1 1 1
//! 2 2 2
//! ```
//!
//! Values are separated by whitespace or commas and indices are 0-based.
//! Table rows run from the line after `table =` to the next `key =` line.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monoid::{AssociativityCheck, FiniteMonoid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidFile {
    pub monoid: FiniteMonoid,
    pub generators: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    line: usize,
    column: usize,
}

fn tokenize(line_no: usize, text: &str, offset: usize) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, c) in text.chars().enumerate() {
        if c.is_whitespace() || c == ',' {
            if !current.is_empty() {
                tokens.push(Token {
                    text: std::mem::take(&mut current),
                    line: line_no,
                    column: offset + start + 1,
                });
            }
        } else {
            if current.is_empty() {
                start = i;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        tokens.push(Token {
            text: current,
            line: line_no,
            column: offset + start + 1,
        });
    }
    tokens
}

fn index(token: &Token) -> Result<usize> {
    if !token.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(
            token.line,
            token.column,
            format!("expected a non-negative integer, found {:?}", token.text),
        ));
    }
    token
        .text
        .parse()
        .map_err(|_| Error::parse(token.line, token.column, "integer too large"))
}

fn bounded_index(token: &Token, n: usize) -> Result<usize> {
    let v = index(token)?;
    if v >= n {
        return Err(Error::parse(
            token.line,
            token.column,
            format!("index {v} is out of range for n = {n}"),
        ));
    }
    Ok(v)
}

struct Entry {
    line: usize,
    column: usize,
    values: Vec<Token>,
}

fn single(key: &str, entry: &Entry) -> Result<usize> {
    match entry.values.as_slice() {
        [v] => index(v),
        _ => Err(Error::parse(
            entry.line,
            entry.column,
            format!("`{key}` takes exactly one value"),
        )),
    }
}

pub fn parse_monoid_file(text: &str) -> Result<MonoidFile> {
    parse_monoid_file_with(text, AssociativityCheck::UpToLimit)
}

pub fn parse_monoid_file_with(text: &str, check: AssociativityCheck) -> Result<MonoidFile> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    let mut rows: Vec<(usize, Vec<Token>)> = Vec::new();
    let mut table_line = None;
    let mut in_table = false;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if let Some(eq) = content.find('=') {
            let key = content[..eq].trim();
            let key_column = content.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
            if !matches!(key, "n" | "unit" | "generators" | "names" | "table") {
                return Err(Error::parse(line_no, key_column, format!("unknown key {key:?}")));
            }
            if entries.contains_key(key) {
                return Err(Error::parse(line_no, key_column, format!("duplicate key {key:?}")));
            }
            let offset = content[..=eq].chars().count();
            let values = tokenize(line_no, &content[eq + 1..], offset);
            in_table = key == "table";
            if in_table {
                table_line = Some((line_no, key_column));
                if !values.is_empty() {
                    rows.push((line_no, values.clone()));
                }
            }
            entries.insert(
                key.to_string(),
                Entry {
                    line: line_no,
                    column: key_column,
                    values,
                },
            );
        } else if in_table {
            rows.push((line_no, tokenize(line_no, content, 0)));
        } else {
            let col = content.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
            return Err(Error::parse(line_no, col, "expected `key = value`"));
        }
    }

    let missing = |key: &str| Error::parse(last_line + 1, 1, format!("missing required key `{key}`"));
    let n_entry = entries.get("n").ok_or_else(|| missing("n"))?;
    let n = single("n", n_entry)?;
    if n == 0 {
        return Err(Error::parse(n_entry.line, n_entry.values[0].column, "n must be positive"));
    }
    let unit_entry = entries.get("unit").ok_or_else(|| missing("unit"))?;
    let unit = single("unit", unit_entry)?;
    if unit >= n {
        return Err(Error::parse(
            unit_entry.line,
            unit_entry.values[0].column,
            format!("unit {unit} is out of range for n = {n}"),
        ));
    }
    let (table_line, table_column) = table_line.ok_or_else(|| missing("table"))?;

    if rows.len() != n {
        let (line, column) = rows.last().map_or((table_line, table_column), |(l, _)| (*l, 1));
        return Err(Error::parse(
            line,
            column,
            format!("table has {} rows, expected {n}", rows.len()),
        ));
    }
    let mut table = Vec::with_capacity(n);
    for (line, tokens) in &rows {
        if tokens.len() != n {
            let column = tokens.get(n).or(tokens.last()).map_or(1, |t| t.column);
            return Err(Error::parse(
                *line,
                column,
                format!("row has {} entries, expected {n}", tokens.len()),
            ));
        }
        table.push(tokens.iter().map(|t| bounded_index(t, n)).collect::<Result<Vec<_>>>()?);
    }

    let mut monoid = FiniteMonoid::with_check(table, unit, check)?;
    if let Some(e) = entries.get("names") {
        if e.values.len() != n {
            return Err(Error::parse(
                e.line,
                e.column,
                format!("expected {n} names, found {}", e.values.len()),
            ));
        }
        let names = e.values.iter().map(|t| t.text.clone()).collect();
        monoid = monoid
            .with_names(names)
            .map_err(|err| Error::parse(e.line, e.column, err.to_string()))?;
    }
    let generators = entries
        .get("generators")
        .map(|e| e.values.iter().map(|t| bounded_index(t, n)).collect::<Result<Vec<_>>>())
        .transpose()?;
    Ok(MonoidFile { monoid, generators })
}

fn default_names(monoid: &FiniteMonoid) -> bool {
    monoid
        .names()
        .iter()
        .enumerate()
        .all(|(i, s)| *s == (i + 1).to_string())
}

pub fn emit_monoid_file(monoid: &FiniteMonoid, generators: Option<&[usize]>) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("n = {}\nunit = {}\n", monoid.size(), monoid.unit());
    if let Some(g) = generators {
        out.push_str(&format!("generators = {}\n", join(g)));
    }
    if !default_names(monoid) {
        out.push_str(&format!("names = {}\n", monoid.names().join(" ")));
    }
    out.push_str("table =\n");
    for a in monoid.elements() {
        out.push_str(&join(monoid.row(a)));
        out.push('\n');
    }
    out
}
