// Copyright 2026 The mwspoil Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Labeled result tables rendered as CSV.

/// One table entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Count(u64),
    /// A fraction, printed as a percentage with one decimal (0.049 -> 4.9).
    Percent(f64),
    /// A plain number with a fixed number of decimals.
    Number(f64, usize),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Count(n) => n.to_string(),
            Cell::Percent(x) => format!("{:.1}", x * 100.0),
            Cell::Number(x, dp) => format!("{x:.dp$}"),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Count(n)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResultsTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ResultsTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        ResultsTable { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width differs from header");
        self.rows.push(row);
    }
}

/// Comma-separated, LF-terminated UTF-8.
pub fn emit_results_csv(table: &ResultsTable) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(&table.header).expect("in-memory write");
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 input")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percent_row() {
        let mut t = ResultsTable::new(["method", "spoiler"]);
        t.push(vec!["STV".into(), Cell::Percent(0.049)]);
        assert_eq!(emit_results_csv(&t), "method,spoiler\nSTV,4.9\n");
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(emit_results_csv(&ResultsTable::new(["a", "b"])), "a,b\n");
    }

    #[test]
    fn text_is_quoted_when_needed() {
        let mut t = ResultsTable::new(["x", "n", "v"]);
        t.push(vec!["Borda, \"OM\"".into(), 7u64.into(), Cell::Number(0.12345, 3)]);
        assert_eq!(emit_results_csv(&t), "x,n,v\n\"Borda, \"\"OM\"\"\",7,0.123\n");
    }
}
