//! Exact arithmetic over F2 and F2[U, V]: bit-packed linear algebra, monomials,
//! bigradings and graded slices.

mod f2;
mod grading;
mod poly;

pub use f2::{kernel, solve_f2, BitVec, Echelon, F2Matrix, Solution};
pub use grading::{slice_basis, Bigrading, GradedSlice};
pub use poly::{formal_derivative, Monomial, Poly, Variable};
