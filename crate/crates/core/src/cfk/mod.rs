//! Knot Floer complexes over F2[U, V], their canonical maps, model builders, duals and
//! involutive tensor products.

mod builders;
mod complex;
mod format;
mod involution;
mod map;
mod phi_iota;

pub use builders::{
    box_complex, build, figure_eight, figure_eight_with_actions, staircase, staircase_complex, staircase_with_box,
    thin_model, torus, Model,
};
pub use complex::{KnotComplex, ValidationReport, DIFFERENTIAL_SHIFT};
pub use format::{parse_complex_str, serialize_complex, ComplexFile};
pub use involution::{solve_involution, SolvedInvolution, MAX_SEARCH_DIMENSION};
pub(crate) use map::allowed_pairs;
pub use map::{Endomorphism, GradedMap, Mode};
pub use phi_iota::PhiIotaComplex;
