//! The thin-knot census: arithmetic and homological routes, run in parallel.

use rayon::prelude::*;
use serde::Serialize;

use super::table::{natural_key, KnotTable, KnotTableRow};
use crate::connected::s_nontrivial_seeded;
use crate::error::{Error, Result};
use crate::verdict::{Settings, RULE_GOMPF};

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub name: String,
    pub crossings: u32,
    pub tau: i32,
    pub tau_derived: bool,
    pub arf: u8,
    pub determinant: u64,
    pub odd_boxes: bool,
    /// `2·Arf + |τ| ≡ 1, 2 (mod 4)`.
    pub arithmetic: bool,
    /// `s ≄ id` on the connected complex of the thin model.
    pub s_nontrivial: bool,
    pub conn_shape: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub max_crossings: u32,
    pub rule: &'static str,
    /// Knots satisfying the criterion, in natural order.
    pub selected: Vec<String>,
    pub entries: Vec<CensusEntry>,
    /// Rows left out, as `(name, reason)`.
    pub rejected: Vec<(String, String)>,
}

fn evaluate(row: &KnotTableRow, settings: &Settings) -> Result<CensusEntry> {
    let knot = row.descriptor()?;
    let arithmetic = knot.arithmetic_criterion().expect("thin descriptor");
    let x = knot.complex()?;
    let s = s_nontrivial_seeded(&x, settings.seed)?;
    if s.nontrivial != arithmetic {
        return Err(Error::ConsistencyViolation(format!(
            "{}: arithmetic criterion gives {arithmetic} but the thin model gives {}",
            row.name, s.nontrivial
        )));
    }
    let odd_boxes = matches!(knot.complex_source, crate::verdict::ComplexSource::ThinModel { odd_boxes: true, .. });
    Ok(CensusEntry {
        name: row.name.clone(),
        crossings: row.crossings,
        tau: row.tau,
        tau_derived: row.tau_derived,
        arf: row.arf,
        determinant: row.determinant,
        odd_boxes,
        arithmetic,
        s_nontrivial: s.nontrivial,
        conn_shape: s.conn_shape,
    })
}

/// Every accepted row with at most `max_crossings` crossings; entries are sorted by name so
/// the output does not depend on row order.
pub fn census(table: &KnotTable, max_crossings: u32, settings: &Settings) -> Result<Census> {
    let mut rows: Vec<&KnotTableRow> = table.rows.iter().filter(|r| r.crossings <= max_crossings).collect();
    rows.sort_by_key(|r| natural_key(&r.name));
    let entries: Vec<CensusEntry> = rows.par_iter().map(|r| evaluate(r, settings)).collect::<Result<_>>()?;
    let selected = entries.iter().filter(|e| e.s_nontrivial).map(|e| e.name.clone()).collect();
    let mut rejected: Vec<(String, String)> = table
        .rejected
        .iter()
        .map(|r| (r.name.clone().unwrap_or_default(), r.message.clone()))
        .collect();
    rejected.sort_by(|a, b| natural_key(&a.0).cmp(&natural_key(&b.0)).then(a.1.cmp(&b.1)));
    Ok(Census {
        max_crossings,
        rule: RULE_GOMPF,
        selected,
        entries,
        rejected,
    })
}
