//! Rendering of command results as JSON, CSV or text.

use nbessel::scalars::monomial_string;
use nbessel::{MultiPoly, NsymElement, QsymElement, TensorElement, WordPoly};
use serde_json::{json, Value};

use crate::config::Format;

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Left-aligned columns separated by two spaces.
    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

/// The result of a command: a JSON value, a table for CSV, and a text
/// rendering.
#[derive(Debug, Clone)]
pub struct Emitted {
    pub json: Value,
    pub table: Table,
    pub text: String,
    /// Whether the command detected a failed identity.
    pub failed: bool,
}

impl Emitted {
    pub fn new(json: Value, table: Table) -> Self {
        let text = table.to_text();
        Emitted {
            json,
            table,
            text,
            failed: false,
        }
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = text;
        self
    }

    pub fn failed(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.table.to_csv(),
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

pub fn nsym_table(f: &NsymElement) -> Table {
    let mut t = Table::new(&["basis", "composition", "coefficient"]);
    for (i, c) in f.terms().iter() {
        t.push(vec![
            f.basis().tag().to_string(),
            i.to_string(),
            c.to_string(),
        ]);
    }
    t
}

pub fn nsym_json(f: &NsymElement) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|(i, c)| json!({ "composition": i.to_string(), "coefficient": c.to_string() }))
        .collect();
    json!({ "basis": f.basis().tag(), "terms": terms })
}

pub fn qsym_table(f: &QsymElement) -> Table {
    let mut t = Table::new(&["basis", "composition", "coefficient"]);
    for (i, c) in f.terms().iter() {
        t.push(vec![
            f.basis().tag().to_string(),
            i.to_string(),
            c.to_string(),
        ]);
    }
    t
}

pub fn qsym_json(f: &QsymElement) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|(i, c)| json!({ "composition": i.to_string(), "coefficient": c.to_string() }))
        .collect();
    json!({ "basis": f.basis().tag(), "terms": terms })
}

pub fn tensor_table(t: &TensorElement) -> Table {
    let (l, r) = t.bases();
    let mut out = Table::new(&["left", "right", "coefficient"]);
    for ((a, b), c) in t.terms().iter() {
        out.push(vec![
            format!("{}[{a}]", l.tag()),
            format!("{}[{b}]", r.tag()),
            c.to_string(),
        ]);
    }
    out
}

pub fn tensor_json(t: &TensorElement) -> Value {
    let (l, r) = t.bases();
    let terms: Vec<Value> = t
        .terms()
        .iter()
        .map(|((a, b), c)| json!({ "H": a.to_string(), "K": b.to_string(), "coefficient": c.to_string() }))
        .collect();
    json!({ "left_basis": l.tag(), "right_basis": r.tag(), "terms": terms })
}

pub fn poly_table(f: &MultiPoly) -> Table {
    let mut t = Table::new(&["monomial", "coefficient"]);
    for (m, c) in f.terms() {
        t.push(vec![
            monomial_string(m),
            nbessel::scalars::format_rational(c),
        ]);
    }
    t
}

pub fn poly_json(f: &MultiPoly) -> Value {
    f.to_json()
}

pub fn words_table(f: &WordPoly, render: &dyn Fn(&[u8]) -> String) -> Table {
    let mut t = Table::new(&["word", "coefficient"]);
    for (w, c) in f.sorted_terms() {
        t.push(vec![render(w), c.to_string()]);
    }
    t
}

pub fn words_json(f: &WordPoly, render: &dyn Fn(&[u8]) -> String) -> Value {
    let terms: Vec<Value> = f
        .sorted_terms()
        .into_iter()
        .map(|(w, c)| json!({ "word": render(w), "coefficient": c.to_string() }))
        .collect();
    Value::Array(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_table_alignment() {
        let mut t = Table::new(&["n", "value"]);
        t.push(vec!["10".into(), "1".into()]);
        assert_eq!(t.to_text(), "n   value\n10  1\n");
    }

    #[test]
    fn csv_quotes_commas() {
        let mut t = Table::new(&["composition"]);
        t.push(vec!["2,1".into()]);
        assert_eq!(t.to_csv(), "composition\n\"2,1\"\n");
    }
}
