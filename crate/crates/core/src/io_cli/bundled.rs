//! Complex files shipped with the crate.

use std::path::Path;

use crate::cfk::{figure_eight, figure_eight_with_actions, parse_complex_str, staircase_with_box, torus, PhiIotaComplex};
use crate::error::{Error, Result};

/// `(name, file text)` for every bundled complex.
pub const BUNDLED: [(&str, &str); 8] = [
    ("unknot", include_str!("../../data/complexes/unknot.cfk.json")),
    ("4_1", include_str!("../../data/complexes/4_1.cfk.json")),
    ("4_1x4_1_tau", include_str!("../../data/complexes/4_1x4_1_tau.cfk.json")),
    ("4_1x4_1_id", include_str!("../../data/complexes/4_1x4_1_id.cfk.json")),
    ("T2_3", include_str!("../../data/complexes/T2_3.cfk.json")),
    ("T2_3xT2_3", include_str!("../../data/complexes/T2_3xT2_3.cfk.json")),
    ("dot_box3", include_str!("../../data/complexes/dot_box3.cfk.json")),
    ("dot_box5", include_str!("../../data/complexes/dot_box5.cfk.json")),
];

/// The builder a bundled file was generated from.
pub fn reference_complex(name: &str) -> Option<PhiIotaComplex> {
    let k = figure_eight_with_actions();
    let plain = figure_eight();
    let t = torus(1).expect("trefoil");
    Some(match name {
        "unknot" => PhiIotaComplex::trivial(),
        "4_1" => k,
        "4_1x4_1_tau" => k.tensor(&k).with_name("4_1#4_1[tau]"),
        "4_1x4_1_id" => plain.tensor(&plain).with_name("4_1#4_1[id]"),
        "T2_3" => t,
        "T2_3xT2_3" => t.tensor(&t),
        "dot_box3" => staircase_with_box(&[], 3).expect("dot and box"),
        "dot_box5" => staircase_with_box(&[], 5).expect("dot and box"),
        _ => return None,
    })
}

pub fn bundled_text(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn bundled_complex(name: &str) -> Result<PhiIotaComplex> {
    let text = bundled_text(name).ok_or_else(|| {
        let names: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
        Error::InvalidArgument(format!("no bundled complex `{name}` (have: {})", names.join(", ")))
    })?;
    parse_complex_str(text)
}

pub fn parse_complex(path: &Path) -> Result<PhiIotaComplex> {
    parse_complex_str(&std::fs::read_to_string(path)?)
}

/// `bundled:NAME` or a file path.
pub fn load_complex(spec: &str) -> Result<PhiIotaComplex> {
    match spec.strip_prefix("bundled:") {
        Some(name) => bundled_complex(name),
        None => parse_complex(Path::new(spec)),
    }
}
