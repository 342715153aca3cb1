use std::io::Write;

/// One CSV cell. Numbers are written with 12 significant digits.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// A CSV table: `#`-prefixed echo line, header line, then rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub echo: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(echo: String, header: Vec<String>) -> Self {
        Self {
            echo,
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "# {}", self.echo)?;
        writeln!(w, "{}", self.header.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(format_cell).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        w.flush()
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("table text is UTF-8")
    }

    /// Numeric column by header name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(
            self.rows
                .iter()
                .filter_map(|r| match r[j] {
                    Cell::Num(v) => Some(v),
                    _ => None,
                })
                .collect(),
        )
    }
}

fn format_cell(c: &Cell) -> String {
    match c {
        Cell::Num(v) => format!("{v:.11e}"),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_and_number_format() {
        let mut t = Table::new("demo a=1".into(), vec!["x".into(), "y".into(), "tag".into()]);
        t.push(vec![0.5.into(), Cell::Empty, "dot".into()]);
        t.push(vec![1234.5678.into(), (-1e-20).into(), "scan".into()]);
        assert_eq!(
            t.to_csv(),
            "# demo a=1\nx,y,tag\n5.00000000000e-1,,dot\n1.23456780000e3,-1.00000000000e-20,scan\n"
        );
        assert_eq!(t.column("y").unwrap(), vec![-1e-20]);
        assert!(t.column("z").is_none());
    }
}
