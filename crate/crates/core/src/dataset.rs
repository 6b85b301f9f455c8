//! Numerical databases: an ordered table of objects over real-valued
//! attributes. Row order is preserved from the source; whether that order is
//! meaningful (temporal) is declared by the caller, never inferred.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

/// Options for CSV ingestion.
#[derive(Debug, Clone)]
pub struct CsvOptions {
    /// Field delimiter, `,` by default.
    pub delimiter: u8,
    /// Declare that the row order carries temporal meaning.
    pub temporal_order: bool,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            delimiter: b',',
            temporal_order: false,
        }
    }
}

/// An immutable numerical database: `n` objects by `m` attributes, every cell
/// a finite f64.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    attribute_names: Vec<String>,
    rows: Vec<Vec<f64>>,
    temporal_order: bool,
}

impl Dataset {
    pub fn new(
        attribute_names: Vec<String>,
        rows: Vec<Vec<f64>>,
        temporal_order: bool,
    ) -> Result<Self> {
        let m = attribute_names.len();
        if rows.len() < 2 || m < 1 {
            return Err(Error::EmptyDataset);
        }
        for (j, name) in attribute_names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyAttributeName);
            }
            if attribute_names[..j].contains(name) {
                return Err(Error::DuplicateAttribute(name.clone()));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: m,
                    got: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::ParseError {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(Dataset {
            attribute_names,
            rows,
            temporal_order,
        })
    }

    /// Load from a UTF-8 CSV stream with a header row. Rows and columns in
    /// error positions are 1-based over data rows (the header not counted).
    pub fn from_csv_reader<R: Read>(reader: R, options: &CsvOptions) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(options.delimiter)
            .has_headers(true)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);

        let attribute_names: Vec<String> = rdr.headers()?.iter().map(|h| h.to_string()).collect();
        let m = attribute_names.len();

        let mut rows = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            if record.len() != m {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: m,
                    got: record.len(),
                });
            }
            let mut row = Vec::with_capacity(m);
            for (j, field) in record.iter().enumerate() {
                let v: f64 = field.parse().map_err(|_| Error::ParseError {
                    row: i + 1,
                    col: j + 1,
                })?;
                if !v.is_finite() {
                    return Err(Error::ParseError {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                row.push(v);
            }
            rows.push(row);
        }

        Dataset::new(attribute_names, rows, options.temporal_order)
    }

    pub fn from_csv_path<P: AsRef<Path>>(path: P, options: &CsvOptions) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_csv_reader(file, options)
    }

    /// Serialize back to CSV. Values are printed with the shortest
    /// representation that round-trips, so load -> serialize -> load is
    /// the identity on names and cells.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.attribute_names.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn n_objects(&self) -> usize {
        self.rows.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn attribute_name(&self, j: usize) -> &str {
        &self.attribute_names[j]
    }

    pub fn temporal_order(&self) -> bool {
        self.temporal_order
    }

    pub fn with_temporal_order(mut self, temporal: bool) -> Self {
        self.temporal_order = temporal;
        self
    }

    /// Value of attribute `j` on object `i` (t_i.j).
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    /// The n values of attribute `j` in row order.
    pub fn column(&self, j: usize) -> Result<Vec<f64>> {
        if j >= self.n_attributes() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.n_attributes(),
            });
        }
        Ok(self.rows.iter().map(|r| r[j]).collect())
    }
}
