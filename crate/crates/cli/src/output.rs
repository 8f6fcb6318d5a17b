use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Plain,
}

/// A header and rows of cells.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(header: I) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I: IntoIterator<Item = S>, S: ToString>(&mut self, row: I) {
        self.rows
            .push(row.into_iter().map(|c| c.to_string()).collect());
    }

    fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(&self.header)
            .expect("writing to memory");
        for row in &self.rows {
            writer.write_record(row).expect("writing to memory");
        }
        String::from_utf8(writer.into_inner().expect("flushing to memory")).expect("csv is UTF-8")
    }
}

/// One result rendered in every format. `success` is false when a
/// verification inside the command failed.
pub struct Output {
    pub json: Value,
    pub table: Table,
    pub latex: String,
    pub plain: String,
    pub success: bool,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        let mut text = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize"),
            Format::Csv => return self.table.to_csv(),
            Format::Latex => self.latex.clone(),
            Format::Plain => self.plain.clone(),
        };
        if !text.ends_with('\n') {
            text.push('\n');
        }
        text
    }
}

/// Rewrites `2q^3*t^10` as `2q^{3}t^{10}`.
pub fn latex_polynomial(text: &str) -> String {
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '*' => {}
            '^' => {
                out.push_str("^{");
                while let Some(&digit) = chars.peek().filter(|c| c.is_ascii_digit()) {
                    out.push(digit);
                    chars.next();
                }
                out.push('}');
            }
            _ => out.push(c),
        }
    }
    out
}

/// A `tabular` environment with the given column spec.
pub fn latex_tabular(spec: &str, table: &Table) -> String {
    let mut out = String::new();
    writeln!(out, "\\begin{{tabular}}{{{spec}}}").unwrap();
    writeln!(out, "{} \\\\", table.header.join(" & ")).unwrap();
    out.push_str("\\hline\n");
    for row in &table.rows {
        writeln!(out, "{} \\\\", row.join(" & ")).unwrap();
    }
    out.push_str("\\end{tabular}\n");
    out
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latex_exponents() {
        assert_eq!(latex_polynomial("1+t+2t^2+3t^13"), "1+t+2t^{2}+3t^{13}");
        assert_eq!(latex_polynomial("q^2*t+q*t^3"), "q^{2}t+qt^{3}");
    }

    #[test]
    fn csv_quotes_cells() {
        let mut t = Table::new(["a", "b"]);
        t.push(["1,2", "3"]);
        assert_eq!(t.to_csv(), "a,b\n\"1,2\",3\n");
    }
}
