//! Exact computations over `F₂[𝒰,𝒱]` for knot Floer complexes with an involution and a
//! diffeomorphism action: Sarkar maps, local maps, the δ invariant, connected complexes
//! and strong-cork verdicts.

pub mod a0_delta;
pub mod cfk;
pub mod connected;
pub mod core_algebra;
pub mod error;
pub mod io_cli;
pub mod morphisms;
pub mod verdict;

pub use error::{Error, Result};
