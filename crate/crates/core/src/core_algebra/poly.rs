//! Monomials and polynomials over F2[U, V].

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use super::Bigrading;

/// One of the two ring variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    U,
    V,
}

/// `U^u_exp V^v_exp`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub u_exp: u32,
    pub v_exp: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { u_exp: 0, v_exp: 0 };

    pub fn new(u_exp: u32, v_exp: u32) -> Self {
        Self { u_exp, v_exp }
    }

    /// Bidegree `(-2 u_exp, -2 v_exp)`.
    pub fn degree(self) -> Bigrading {
        Bigrading::new(-2 * self.u_exp as i32, -2 * self.v_exp as i32)
    }

    /// The monomial `m` with `from + deg(m) = to`, if one exists.
    pub fn between(from: Bigrading, to: Bigrading) -> Option<Monomial> {
        let du = from.gr_u - to.gr_u;
        let dv = from.gr_v - to.gr_v;
        if du < 0 || dv < 0 || du % 2 != 0 || dv % 2 != 0 {
            return None;
        }
        Some(Monomial::new((du / 2) as u32, (dv / 2) as u32))
    }

    pub fn swap(self) -> Self {
        Self::new(self.v_exp, self.u_exp)
    }

    pub fn is_unit(self) -> bool {
        self == Self::ONE
    }

    /// Formal partial derivative over F2; `None` when the result vanishes.
    pub fn derivative(self, var: Variable) -> Option<Monomial> {
        match var {
            Variable::U if self.u_exp % 2 == 1 => Some(Monomial::new(self.u_exp - 1, self.v_exp)),
            Variable::V if self.v_exp % 2 == 1 => Some(Monomial::new(self.u_exp, self.v_exp - 1)),
            _ => None,
        }
    }

    /// Is this a pure power of a single variable (or 1)?
    pub fn is_pure(self) -> bool {
        self.u_exp == 0 || self.v_exp == 0
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.u_exp + rhs.u_exp, self.v_exp + rhs.v_exp)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        for (name, e) in [("U", self.u_exp), ("V", self.v_exp)] {
            match e {
                0 => {}
                1 => f.write_str(name)?,
                _ => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}

/// A polynomial over F2: a set of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeSet<Monomial>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self {
            terms: BTreeSet::from([m]),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Self::zero();
        for t in terms {
            p.add_term(t);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms().map(Monomial::swap))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for t in rhs.terms() {
            out.add_term(t);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for a in self.terms() {
            for b in rhs.terms() {
                out.add_term(a * b);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Formal derivative of `p` with respect to `var`, with F2 coefficients.
pub fn formal_derivative(p: &Poly, var: Variable) -> Poly {
    Poly::from_terms(p.terms().filter_map(|m| m.derivative(var)))
}
