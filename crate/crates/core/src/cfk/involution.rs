use super::complex::KnotComplex;
use super::map::{GradedMap, Mode};
use crate::core_algebra::{Bigrading, Echelon};
use crate::error::{Error, Result};
use crate::morphisms::{flatten, homotopic_endo, null_homotopic_span, Homotopy, LinearMapSystem, MapShape, SystemSolution};

/// Largest dimension of skew chain maps modulo homotopy that the search enumerates.
pub const MAX_SEARCH_DIMENSION: usize = 20;

/// A solved involution and the homotopy `ι² + s = ∂H + H∂`.
#[derive(Clone, Debug)]
pub struct SolvedInvolution {
    pub iota: GradedMap,
    pub homotopy: Homotopy,
    /// Dimension of skew chain maps modulo null-homotopic ones.
    pub search_dimension: usize,
}

/// Find a skew chain map `ι` with `ι² ≃ s`.
///
/// Candidates are enumerated over canonical representatives of skew chain maps modulo
/// null-homotopic ones, in binary counting order; the first hit is returned.
pub fn solve_involution(c: &KnotComplex) -> Result<SolvedInvolution> {
    let shape = MapShape::new(c.gradings(), c.gradings(), Mode::Skew, Bigrading::ZERO);
    let mut sys = LinearMapSystem::new();
    let x = sys.unknown(shape.clone());
    let eq = sys.equation();
    sys.term(eq, Some(c.differential()), x, None);
    sys.term(eq, None, x, Some(c.differential()));
    let SystemSolution::Solved { kernel, .. } = sys.solve() else {
        unreachable!("homogeneous systems are consistent");
    };
    let maps: Vec<GradedMap> = kernel.iter().map(|v| sys.extract(x, v)).collect();

    let n = c.len();
    let skew_null = null_homotopic_span(c, &shape);
    let mut quotient = skew_null.clone();
    let mut reps = Vec::new();
    for m in &maps {
        if quotient.insert(flatten(m)) {
            let reduced = skew_null.reduce(&flatten(m));
            let bits: Vec<(usize, usize)> = reduced.ones().map(|i| (i / n, i % n)).collect();
            reps.push(
                m.with_bits(crate::core_algebra::F2Matrix::from_entries(n, n, &bits))
                    .expect("reduced representative stays admissible"),
            );
        }
    }
    let d = reps.len();
    if d > MAX_SEARCH_DIMENSION {
        return Err(Error::InvalidArgument(format!(
            "involution search space has dimension {d}, above the limit {MAX_SEARCH_DIMENSION}"
        )));
    }
    let straight = MapShape::new(c.gradings(), c.gradings(), Mode::Straight, Bigrading::ZERO);
    let straight_null: Echelon = null_homotopic_span(c, &straight);
    let s = c.sarkar_map();
    let zero = GradedMap::zero(c.gradings().to_vec(), c.gradings().to_vec(), Mode::Skew, Bigrading::ZERO);
    for mask in 0u64..(1u64 << d) {
        let mut iota = zero.clone();
        for (i, r) in reps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                iota = iota.add(r);
            }
        }
        let defect = iota.compose(&iota).add(&s);
        if straight_null.contains(&flatten(&defect)) {
            let homotopy = homotopic_endo(c, &iota.compose(&iota), &s).expect("membership implies homotopy");
            return Ok(SolvedInvolution {
                iota,
                homotopy,
                search_dimension: d,
            });
        }
    }
    Err(Error::NoInvolution)
}
