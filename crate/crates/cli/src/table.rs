//! CSV tables: comma separated, header row, LF endings, 17 significant digits.

use lrkitaev::analysis::format_sig17;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_sig17(if *x == 0.0 { 0.0 } else { *x }),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.replace([',', '\n', '\r', '"'], " "),
            Cell::Empty => String::new(),
        }
    }
}

/// Status cell for a row: "ok" or the error text.
pub fn status<E: std::fmt::Display>(r: &Result<(), E>) -> Cell {
    match r {
        Ok(()) => Cell::from("ok"),
        Err(e) => Cell::Text(format!("error: {e}")),
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let mut text = self.header.join(",");
        text.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            text.push_str(&cells.join(","));
            text.push('\n');
        }
        out.write_all(text.as_bytes())
    }

    /// Writes to `path`, or to standard output when no path is given.
    pub fn emit(&self, path: Option<&Path>) -> std::io::Result<()> {
        match path {
            Some(p) => {
                let mut f = std::io::BufWriter::new(std::fs::File::create(p)?);
                self.write(&mut f)?;
                f.flush()
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                self.write(&mut lock)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_header_and_rows() {
        let mut t = Table::new(&["L", "S", "status"]);
        t.push(vec![Cell::from(8usize), Cell::from(0.5), Cell::from("ok")]);
        t.push(vec![Cell::from(9usize), Cell::Empty, Cell::Text("error: a, b".into())]);
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "L,S,status\n8,5.0000000000000000e-1,ok\n9,,error: a  b\n");
    }

    #[test]
    fn round_trips_doubles() {
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt() * 1e-300, -123456.789] {
            let s = Cell::Num(x).render();
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
