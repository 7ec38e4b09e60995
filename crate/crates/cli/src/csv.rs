//! Sweep tables as CSV.
//!
//! ```text
//! # nlkg-dispersion v0.1.0 spec=3f2a9c0d41b7e655
//! x,exact_omega,lde2_omega,lde2_ratio,lde2_delta,...,status
//! 0.5,0.98...,...,
//! ```
//!
//! Floats use the shortest representation that round-trips (17 significant
//! digits at most) unless a lower precision is configured; `-inf` marks an
//! exact match in a delta column. A failed cell is empty and the failure is
//! listed in the trailing `status` column as `<column>:<reason>`, separated
//! by `;`. Lines end with LF.

use nlkg_core::analysis::{Cell, SweepSpec, SweepTable};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Formats a float with `precision` significant digits; 17 selects the
/// shortest round-trip representation.
pub fn format_float(v: f64, precision: usize) -> String {
    if precision >= 17 || !v.is_finite() {
        format!("{v:?}")
    } else {
        format!("{:.*e}", precision.saturating_sub(1), v)
    }
}

/// First 16 hex digits of the SHA-256 of the spec's debug rendering.
pub fn spec_hash(spec: &SweepSpec) -> String {
    let digest = Sha256::digest(format!("{spec:?}").as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// In-memory form of an emitted CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub preamble: String,
    pub columns: Vec<String>,
    pub rows: Vec<CsvRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub values: Vec<Option<f64>>,
    pub status: String,
}

impl CsvTable {
    pub fn from_sweep(spec: &SweepSpec, table: &SweepTable) -> Self {
        let mut columns = vec!["x".to_string(), "exact_omega".to_string()];
        for m in &table.methods {
            for field in ["omega", "ratio", "delta"] {
                columns.push(format!("{m}_{field}"));
            }
        }
        let rows = table
            .rows
            .iter()
            .map(|row| {
                let mut values = vec![Some(row.x)];
                let mut failures = Vec::new();
                let mut push = |cell: &Cell, name: String, values: &mut Vec<Option<f64>>| match cell
                {
                    Ok(v) => values.push(Some(*v)),
                    Err(e) => {
                        values.push(None);
                        failures.push(format!("{name}:{}", e.reason_code()));
                    }
                };
                push(&row.exact, "exact".into(), &mut values);
                for (m, cells) in table.methods.iter().zip(&row.cells) {
                    push(&cells.omega, format!("{m}"), &mut values);
                    // ratio and delta fail exactly when omega or exact did
                    values.push(cells.ratio.as_ref().ok().copied());
                    values.push(cells.delta.as_ref().ok().copied());
                }
                CsvRow {
                    values,
                    status: failures.join(";"),
                }
            })
            .collect();
        CsvTable {
            preamble: format!(
                "# nlkg-dispersion v{} spec={}",
                env!("CARGO_PKG_VERSION"),
                spec_hash(spec)
            ),
            columns,
            rows,
        }
    }

    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        out.push_str(&self.preamble);
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push_str(",status\n");
        for row in &self.rows {
            for v in &row.values {
                if let Some(v) = v {
                    out.push_str(&format_float(*v, precision));
                }
                out.push(',');
            }
            out.push_str(&row.status);
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = |msg: &str| CliError::Usage(format!("malformed CSV: {msg}"));
        let mut lines = text.split_terminator('\n');
        let preamble = lines.next().ok_or_else(|| bad("empty file"))?;
        if !preamble.starts_with("# nlkg-dispersion v") {
            return Err(bad("missing preamble"));
        }
        let header = lines.next().ok_or_else(|| bad("missing header"))?;
        let mut columns: Vec<String> = header.split(',').map(str::to_string).collect();
        if columns.pop().as_deref() != Some("status") {
            return Err(bad("last column must be status"));
        }
        let mut rows = Vec::new();
        for line in lines {
            let mut fields: Vec<&str> = line.split(',').collect();
            if fields.len() != columns.len() + 1 {
                return Err(bad("row width does not match header"));
            }
            let status = fields.pop().unwrap_or_default().to_string();
            let values = fields
                .into_iter()
                .map(|f| {
                    if f.is_empty() {
                        Ok(None)
                    } else {
                        f.parse::<f64>().map(Some).map_err(|_| bad("bad float"))
                    }
                })
                .collect::<Result<_, _>>()?;
            rows.push(CsvRow { values, status });
        }
        Ok(CsvTable {
            preamble: preamble.to_string(),
            columns,
            rows,
        })
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}
