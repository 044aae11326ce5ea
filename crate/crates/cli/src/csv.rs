//! Minimal CSV assembly. Floats use 17 significant digits so they re-parse
//! to the same bits.

use std::fmt::Write;

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Default)]
pub struct Table {
    out: String,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        let mut t = Self::default();
        t.push_raw(header.iter().map(|h| h.as_ref().to_string()));
        t
    }

    fn push_raw<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        let line: Vec<String> = cells.into_iter().collect();
        // cells never contain separators or quotes
        writeln!(self.out, "{}", line.join(",")).expect("writing to a String");
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.push_raw(cells);
    }

    pub fn into_string(self) -> String {
        self.out
    }
}
