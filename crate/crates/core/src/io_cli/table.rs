//! Knot-invariant tables in CSV form.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::verdict::{thin_parity, KnotDescriptor};

/// The bundled table of prime knots with at most 8 crossings.
pub const BUNDLED_TABLE: &str = include_str!("../../data/knots_le8.csv");

const REQUIRED: [&str; 6] = ["name", "crossings", "alternating", "signature", "determinant", "arf"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotTableRow {
    pub name: String,
    pub crossings: u32,
    pub alternating: bool,
    pub signature: i32,
    pub determinant: u64,
    pub arf: u8,
    pub tau: i32,
    /// `τ` was derived as `−σ/2` rather than read from the table.
    pub tau_derived: bool,
}

impl KnotTableRow {
    pub fn descriptor(&self) -> Result<KnotDescriptor> {
        KnotDescriptor::thin(self.name.clone(), self.tau, self.arf, self.determinant)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowError {
    /// Line number in the file (the header is line 1).
    pub line: u64,
    pub name: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct KnotTable {
    pub rows: Vec<KnotTableRow>,
    pub rejected: Vec<RowError>,
}

impl KnotTable {
    pub fn get(&self, name: &str) -> Option<&KnotTableRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

pub fn parse_knot_csv(path: &Path) -> Result<KnotTable> {
    let text = std::fs::read_to_string(path)?;
    parse_knot_csv_str(&text)
}

pub fn bundled_table() -> KnotTable {
    parse_knot_csv_str(BUNDLED_TABLE).expect("bundled table parses")
}

/// Parse a table; columns may appear in any order, bad rows are collected with their
/// line numbers.
pub fn parse_knot_csv_str(text: &str) -> Result<KnotTable> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let column = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let mut idx = [0usize; 6];
    for (slot, name) in idx.iter_mut().zip(REQUIRED) {
        *slot = column(name).ok_or_else(|| Error::MissingColumn(name.to_string()))?;
    }
    let tau_col = column("tau");
    let mut table = KnotTable::default();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(i).unwrap_or("");
        let name = field(idx[0]).to_string();
        let tau_field = tau_col.map(&field).unwrap_or("");
        match parse_row(&name, [field(idx[1]), field(idx[2]), field(idx[3]), field(idx[4]), field(idx[5])], tau_field) {
            Ok(row) => table.rows.push(row),
            Err(message) => table.rejected.push(RowError {
                line,
                name: (!name.is_empty()).then_some(name),
                message,
            }),
        }
    }
    Ok(table)
}

fn number<T: std::str::FromStr>(column: &str, s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|_| format!("{column}: cannot parse `{s}`"))
}

fn parse_row(name: &str, f: [&str; 5], tau: &str) -> std::result::Result<KnotTableRow, String> {
    if name.is_empty() {
        return Err("empty name".into());
    }
    let crossings: u32 = number("crossings", f[0])?;
    let alternating = match f[1] {
        "1" | "true" | "Y" | "y" => true,
        "0" | "false" | "N" | "n" => false,
        other => return Err(format!("alternating: cannot parse `{other}`")),
    };
    let signature: i32 = number("signature", f[2])?;
    let determinant: u64 = number("determinant", f[3])?;
    let arf: u8 = number("arf", f[4])?;
    if determinant == 0 || determinant.is_multiple_of(2) {
        return Err(format!("determinant {determinant} is not odd and positive"));
    }
    if arf > 1 {
        return Err(format!("arf {arf} is not 0 or 1"));
    }
    if !matches!((determinant + 4 * arf as u64) % 8, 1 | 7) {
        return Err(format!("arf {arf} is inconsistent with determinant {determinant}"));
    }
    if signature % 2 != 0 {
        return Err(format!("signature {signature} is odd"));
    }
    let (tau, tau_derived) = if tau.is_empty() {
        if !alternating {
            return Err("non-alternating knot without tau: thin model unavailable".into());
        }
        (-signature / 2, true)
    } else {
        (number("tau", tau)?, false)
    };
    thin_parity(determinant, tau).map_err(|e| e.to_string())?;
    Ok(KnotTableRow {
        name: name.to_string(),
        crossings,
        alternating,
        signature,
        determinant,
        arf,
        tau,
        tau_derived,
    })
}

/// Sort key putting `8_2` before `8_12`.
pub fn natural_key(name: &str) -> (Vec<u64>, String) {
    let nums = name
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .filter_map(|s| s.parse().ok())
        .collect();
    (nums, name.to_string())
}
