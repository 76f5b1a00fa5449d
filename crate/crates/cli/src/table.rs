//! Delimited output with a header row and 17 significant digits.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
}

impl Format {
    fn sep(self) -> &'static str {
        match self {
            Format::Csv => ",",
            Format::Tsv => "\t",
        }
    }
}

pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Int(v as usize)
    }
}

fn render(cell: &Cell) -> String {
    match cell {
        Cell::Num(v) if v.is_nan() => "NaN".into(),
        Cell::Num(v) => format!("{v:.16e}"),
        Cell::Int(v) => v.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

pub struct TableWriter {
    out: Box<dyn Write>,
    format: Format,
}

impl TableWriter {
    /// Writes to `path`, or to standard output when absent.
    pub fn create(path: Option<&Path>, format: Format) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Self { out, format })
    }

    pub fn header(&mut self, names: &[&str]) -> io::Result<()> {
        writeln!(self.out, "{}", names.join(self.format.sep()))
    }

    pub fn row(&mut self, cells: Vec<Cell>) -> io::Result<()> {
        let line: Vec<String> = cells.iter().map(render).collect();
        writeln!(self.out, "{}", line.join(self.format.sep()))
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        let v = 0.1f64 + 0.2;
        assert_eq!(render(&Cell::Num(v)).parse::<f64>().unwrap(), v);
        assert_eq!(render(&Cell::Num(f64::NAN)), "NaN");
    }
}
