use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Monomial;

/// A bigrading `(gr_U, gr_V)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bigrading {
    pub gr_u: i32,
    pub gr_v: i32,
}

impl Bigrading {
    pub const ZERO: Bigrading = Bigrading { gr_u: 0, gr_v: 0 };

    pub const fn new(gr_u: i32, gr_v: i32) -> Self {
        Self { gr_u, gr_v }
    }

    pub const fn diagonal(d: i32) -> Self {
        Self::new(d, d)
    }

    /// Alexander grading `(gr_U - gr_V) / 2`, when integral.
    pub fn alexander(self) -> Option<i32> {
        let d = self.gr_u - self.gr_v;
        (d % 2 == 0).then_some(d / 2)
    }

    /// Maslov grading `gr_U`.
    pub fn maslov(self) -> i32 {
        self.gr_u
    }

    pub fn swap(self) -> Self {
        Self::new(self.gr_v, self.gr_u)
    }

    /// Componentwise `self >= other` with matching parities, i.e. `other` is reachable
    /// from `self` by multiplying with a monomial.
    pub fn dominates(self, other: Bigrading) -> bool {
        Monomial::between(self, other).is_some()
    }
}

impl Add for Bigrading {
    type Output = Bigrading;
    fn add(self, rhs: Bigrading) -> Bigrading {
        Bigrading::new(self.gr_u + rhs.gr_u, self.gr_v + rhs.gr_v)
    }
}

impl Sub for Bigrading {
    type Output = Bigrading;
    fn sub(self, rhs: Bigrading) -> Bigrading {
        Bigrading::new(self.gr_u - rhs.gr_u, self.gr_v - rhs.gr_v)
    }
}

impl Neg for Bigrading {
    type Output = Bigrading;
    fn neg(self) -> Bigrading {
        Bigrading::new(-self.gr_u, -self.gr_v)
    }
}

impl fmt::Display for Bigrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.gr_u, self.gr_v)
    }
}

/// The F2-basis of one bigraded piece of a free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSlice {
    pub bigrading: Bigrading,
    /// `(monomial, generator index)` pairs in generator order.
    pub basis: Vec<(Monomial, usize)>,
}

impl GradedSlice {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|(_, g)| *g)
    }
}

/// All `(U^a V^b, g)` with `gr(g) + (-2a, -2b) = target`.
///
/// Each generator contributes at most once, so the list is ordered by generator.
pub fn slice_basis(gradings: &[Bigrading], target: Bigrading) -> GradedSlice {
    GradedSlice {
        bigrading: target,
        basis: gradings
            .iter()
            .enumerate()
            .filter_map(|(i, &g)| Monomial::between(g, target).map(|m| (m, i)))
            .collect(),
    }
}
