//! The JSON complex file format.
//!
//! ```json
//! {
//!   "name": "4_1",
//!   "generators": [{"id": "x", "gr": [0, 0]}, ...],
//!   "differential": {"a": [["b", 1, 0], ["c", 0, 1]], ...},
//!   "iota": {"mode": "skew", "matrix": {"x": [["x", 0, 0], ["d", 0, 0]], ...}},
//!   "phi": {"mode": "straight", "matrix": {...}}
//! }
//! ```
//!
//! Each list entry `[target, u, v]` stands for `U^u V^v · target`. Canonical output lists
//! sources and targets in generator order.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::complex::KnotComplex;
use super::involution::solve_involution;
use super::map::{GradedMap, Mode};
use super::phi_iota::PhiIotaComplex;
use crate::core_algebra::{Bigrading, F2Matrix, Monomial};
use crate::error::{Error, Result};

pub type MatrixEntries = IndexMap<String, Vec<(String, u32, u32)>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub id: String,
    pub gr: [i32; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub mode: Mode,
    pub matrix: MatrixEntries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub name: String,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub differential: MatrixEntries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iota: Option<MapEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<MapEntry>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parse and validate a complex file. A missing `iota` is solved for; a missing `phi` is
/// the identity.
pub fn parse_complex_str(text: &str) -> Result<PhiIotaComplex> {
    let file: ComplexFile = serde_json::from_str(text).map_err(parse_error)?;
    file.into_complex()
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<PhiIotaComplex> {
        if self.generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        let gens: Vec<(String, Bigrading)> = self
            .generators
            .iter()
            .map(|g| (g.id.clone(), Bigrading::new(g.gr[0], g.gr[1])))
            .collect();
        let ids: Vec<String> = gens.iter().map(|g| g.0.clone()).collect();
        let mut seen = std::collections::HashSet::new();
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateGenerator(id.clone()));
            }
        }
        let index = |id: &str| ids.iter().position(|x| x == id).ok_or_else(|| Error::UnknownGenerator(id.to_string()));
        let mut entries = Vec::new();
        for (src, targets) in &self.differential {
            let g = index(src)?;
            for (tgt, u, v) in targets {
                entries.push((g, index(tgt)?, Monomial::new(*u, *v)));
            }
        }
        let complex = KnotComplex::from_entries(self.name.clone(), gens, &entries)?;
        let read_map = |name: &str, entry: &MapEntry, expected: Mode| -> Result<GradedMap> {
            if entry.mode != expected {
                return Err(Error::InvalidComplex(format!("{name} must be {}", expected.as_str())));
            }
            let n = complex.len();
            let template = GradedMap::zero(
                complex.gradings().to_vec(),
                complex.gradings().to_vec(),
                expected,
                Bigrading::ZERO,
            );
            let mut bits = F2Matrix::zeros(n, n);
            for (src, targets) in &entry.matrix {
                let g = index(src)?;
                for (tgt, u, v) in targets {
                    let h = index(tgt)?;
                    if template.allowed(h, g) != Some(Monomial::new(*u, *v)) {
                        return Err(Error::MapGrading {
                            map: name.to_string(),
                            source_id: src.clone(),
                            target_id: tgt.clone(),
                        });
                    }
                    bits.toggle(h, g);
                }
            }
            Ok(template.with_bits(bits).expect("entries checked"))
        };
        let iota = match &self.iota {
            Some(e) => read_map("iota", e, Mode::Skew)?,
            None => solve_involution(&complex)?.iota,
        };
        match &self.phi {
            Some(e) => {
                let phi = read_map("phi", e, Mode::Straight)?;
                PhiIotaComplex::new(complex, phi, iota)
            }
            None => PhiIotaComplex::iota_complex(complex, iota),
        }
    }

    pub fn from_complex(x: &PhiIotaComplex) -> Self {
        let c = x.complex();
        let ids = c.ids();
        let matrix = |f: &GradedMap| -> MatrixEntries {
            let mut out = MatrixEntries::new();
            for (g, h, m) in f.entries() {
                out.entry(ids[g].clone())
                    .or_default()
                    .push((ids[h].clone(), m.u_exp, m.v_exp));
            }
            out
        };
        ComplexFile {
            name: c.name().to_string(),
            generators: ids
                .iter()
                .zip(c.gradings())
                .map(|(id, g)| GeneratorEntry {
                    id: id.clone(),
                    gr: [g.gr_u, g.gr_v],
                })
                .collect(),
            differential: matrix(c.differential()),
            iota: Some(MapEntry {
                mode: Mode::Skew,
                matrix: matrix(x.iota()),
            }),
            phi: (!x.is_iota_complex()).then(|| MapEntry {
                mode: Mode::Straight,
                matrix: matrix(x.phi()),
            }),
        }
    }

    /// Canonical text: fixed key order, one generator or source per line.
    pub fn to_canonical_string(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("string serializes");
        let write_matrix = |out: &mut String, m: &MatrixEntries, indent: &str| {
            if m.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            let lines: Vec<String> = m
                .iter()
                .map(|(src, targets)| {
                    let items: Vec<String> = targets.iter().map(|(t, u, v)| format!("[{}, {u}, {v}]", q(t))).collect();
                    format!("{indent}  {}: [{}]", q(src), items.join(", "))
                })
                .collect();
            out.push_str(&lines.join(",\n"));
            let _ = write!(out, "\n{indent}}}");
        };
        let mut out = String::new();
        let _ = writeln!(out, "{{\n  \"name\": {},", q(&self.name));
        out.push_str("  \"generators\": [\n");
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("    {{\"id\": {}, \"gr\": [{}, {}]}}", q(&g.id), g.gr[0], g.gr[1]))
            .collect();
        out.push_str(&gens.join(",\n"));
        out.push_str("\n  ],\n  \"differential\": ");
        write_matrix(&mut out, &self.differential, "  ");
        for (key, entry) in [("iota", &self.iota), ("phi", &self.phi)] {
            if let Some(e) = entry {
                let _ = write!(out, ",\n  \"{key}\": {{\n    \"mode\": \"{}\",\n    \"matrix\": ", e.mode.as_str());
                write_matrix(&mut out, &e.matrix, "    ");
                out.push_str("\n  }");
            }
        }
        out.push_str("\n}\n");
        out
    }
}

/// Canonical file text for a triple.
pub fn serialize_complex(x: &PhiIotaComplex) -> String {
    ComplexFile::from_complex(x).to_canonical_string()
}
