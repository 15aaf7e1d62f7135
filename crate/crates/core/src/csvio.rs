//! CSV tables with a fixed numeric format.
//!
//! Reals are written with 12 significant digits in scientific notation,
//! fields are comma separated, lines end with LF and a header row is always
//! present.

use std::fmt;
use std::io::{Read, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn num(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_real(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn parse(field: &str) -> Cell {
        if field.is_empty() {
            return Cell::Empty;
        }
        match field.parse::<f64>() {
            Ok(v) if format_real(v) == field => Cell::Num(v),
            _ => Cell::Text(field.to_string()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// Scientific notation with 12 significant digits.
pub fn format_real(v: f64) -> String {
    format!("{v:.11e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        CsvTable {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i].num()).collect())
    }

    pub fn write<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read<R: Read>(input: R) -> csv::Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_reader(input);
        let header = r.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(rec?.iter().map(Cell::parse).collect());
        }
        Ok(CsvTable { header, rows })
    }

    pub fn parse(text: &str) -> csv::Result<Self> {
        Self::read(text.as_bytes())
    }
}

impl fmt::Display for CsvTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut buf = Vec::new();
        self.write(&mut buf).map_err(|_| fmt::Error)?;
        f.write_str(std::str::from_utf8(&buf).map_err(|_| fmt::Error)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_real(4.921637349297176), "4.92163734930e0");
        assert_eq!(format_real(1e-3), "1.00000000000e-3");
        assert_eq!(format_real(-0.25), "-2.50000000000e-1");
    }

    #[test]
    fn writes_header_and_lf() {
        let mut t = CsvTable::new(["a", "x1"]);
        t.push(vec![Cell::Num(1e-3), Cell::Empty]);
        assert_eq!(t.to_string(), "a,x1\n1.00000000000e-3,\n");
    }

    #[test]
    fn empty_table_keeps_header() {
        let t = CsvTable::new(["a", "penalty"]);
        assert_eq!(t.to_string(), "a,penalty\n");
        assert_eq!(CsvTable::parse("a,penalty\n").unwrap(), t);
    }

    #[test]
    fn column_lookup() {
        let mut t = CsvTable::new(["a", "b"]);
        t.push(vec![1.0.into(), None.into()]);
        assert_eq!(t.column("b"), Some(vec![None]));
        assert_eq!(t.column("a"), Some(vec![Some(1.0)]));
        assert_eq!(t.column("c"), None);
    }

    fn cell() -> impl Strategy<Value = Cell> {
        prop_oneof![
            any::<f64>()
                .prop_filter("finite", |v| v.is_finite())
                .prop_map(Cell::Num),
            "[a-z ,\"]{1,8}".prop_map(Cell::Text),
            Just(Cell::Empty),
        ]
    }

    proptest! {
        #[test]
        fn round_trip_is_byte_identical(rows in prop::collection::vec(prop::collection::vec(cell(), 3), 0..12)) {
            let mut t = CsvTable::new(["a", "b", "c"]);
            for r in rows {
                t.push(r);
            }
            let first = t.to_string();
            let again = CsvTable::parse(&first).unwrap().to_string();
            prop_assert_eq!(first, again);
        }
    }
}
