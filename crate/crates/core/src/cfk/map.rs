use serde::{Deserialize, Serialize};

use crate::core_algebra::{slice_basis, Bigrading, BitVec, F2Matrix, Monomial};

/// Equivariance type of a map: straight maps commute with multiplication by `U^a V^b`,
/// skew maps intertwine it with `U^b V^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Straight,
    Skew,
}

impl Mode {
    /// Mode of `outer ∘ inner`.
    pub fn then(self, outer: Mode) -> Mode {
        if self == outer {
            Mode::Straight
        } else {
            Mode::Skew
        }
    }

    pub fn apply(self, g: Bigrading) -> Bigrading {
        match self {
            Mode::Straight => g,
            Mode::Skew => g.swap(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Straight => "straight",
            Mode::Skew => "skew",
        }
    }
}

/// A homogeneous map between free F2[U, V]-modules.
///
/// Entry `(h, g)` of `bits` is set when the image of generator `g` contains `m·h`; the
/// monomial `m` is forced by the gradings, the mode and the shift:
/// `gr(h) + deg(m) = mode(gr(g)) + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    source: Vec<Bigrading>,
    target: Vec<Bigrading>,
    mode: Mode,
    shift: Bigrading,
    bits: F2Matrix,
}

/// A module map carrying its own mode and bidegree.
pub type Endomorphism = GradedMap;

impl GradedMap {
    /// Build a map, returning the first offending `(target, source)` entry if any set bit
    /// has no admissible monomial.
    pub fn new(
        source: Vec<Bigrading>,
        target: Vec<Bigrading>,
        mode: Mode,
        shift: Bigrading,
        bits: F2Matrix,
    ) -> Result<Self, (usize, usize)> {
        assert_eq!(bits.rows(), target.len());
        assert_eq!(bits.cols(), source.len());
        let map = Self {
            source,
            target,
            mode,
            shift,
            bits,
        };
        if let Some(bad) = map.bits.ones().find(|&(h, g)| map.allowed(h, g).is_none()) {
            return Err(bad);
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(
        source: Vec<Bigrading>,
        target: Vec<Bigrading>,
        mode: Mode,
        shift: Bigrading,
        bits: F2Matrix,
    ) -> Self {
        let map = Self {
            source,
            target,
            mode,
            shift,
            bits,
        };
        debug_assert!(map.bits.ones().all(|(h, g)| map.allowed(h, g).is_some()));
        map
    }

    pub fn zero(source: Vec<Bigrading>, target: Vec<Bigrading>, mode: Mode, shift: Bigrading) -> Self {
        let bits = F2Matrix::zeros(target.len(), source.len());
        Self::new_unchecked(source, target, mode, shift, bits)
    }

    pub fn identity(gradings: &[Bigrading]) -> Self {
        Self::new_unchecked(
            gradings.to_vec(),
            gradings.to_vec(),
            Mode::Straight,
            Bigrading::ZERO,
            F2Matrix::identity(gradings.len()),
        )
    }

    /// A map with the same shape and the given bits.
    pub fn with_bits(&self, bits: F2Matrix) -> Result<Self, (usize, usize)> {
        Self::new(self.source.clone(), self.target.clone(), self.mode, self.shift, bits)
    }

    pub fn source(&self) -> &[Bigrading] {
        &self.source
    }

    pub fn target(&self) -> &[Bigrading] {
        &self.target
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn shift(&self) -> Bigrading {
        self.shift
    }

    pub fn bits(&self) -> &F2Matrix {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    /// Bigrading of the image of a homogeneous element of bigrading `g`.
    pub fn image_grading(&self, g: Bigrading) -> Bigrading {
        self.mode.apply(g) + self.shift
    }

    /// The monomial an entry `(h, g)` would carry, if admissible.
    pub fn allowed(&self, h: usize, g: usize) -> Option<Monomial> {
        Monomial::between(self.target[h], self.image_grading(self.source[g]))
    }

    pub fn entry(&self, h: usize, g: usize) -> Option<Monomial> {
        if self.bits.get(h, g) {
            self.allowed(h, g)
        } else {
            None
        }
    }

    /// Admissible `(target, source)` positions, ordered by source then target.
    pub fn allowed_pairs(&self) -> Vec<(usize, usize)> {
        allowed_pairs(&self.source, &self.target, self.mode, self.shift)
    }

    /// Nonzero entries as `(source, target, monomial)` ordered by source then target.
    pub fn entries(&self) -> Vec<(usize, usize, Monomial)> {
        let t = self.bits.transpose();
        t.ones()
            .map(|(g, h)| (g, h, self.allowed(h, g).expect("admissible entry")))
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap) -> GradedMap {
        assert_eq!(inner.target, self.source, "composing maps with mismatched gradings");
        let shift = self.shift + self.mode.apply(inner.shift);
        Self::new_unchecked(
            inner.source.clone(),
            self.target.clone(),
            inner.mode.then(self.mode),
            shift,
            self.bits.mul(&inner.bits),
        )
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        self.assert_same_shape(other);
        Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.mode,
            self.shift,
            self.bits.add(&other.bits),
        )
    }

    pub fn same_shape(&self, other: &GradedMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.mode == other.mode
            && self.shift == other.shift
    }

    fn assert_same_shape(&self, other: &GradedMap) {
        assert!(self.same_shape(other), "adding maps of different shape");
    }

    /// `self^k` for an endomorphism.
    pub fn pow(&self, k: u32) -> GradedMap {
        assert_eq!(self.source, self.target);
        let mut out = GradedMap::identity(&self.source);
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Tensor product; generator `(i, j)` sits at index `i * n2 + j`.
    pub fn tensor(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.mode, other.mode, "tensoring maps of different mode");
        Self::new_unchecked(
            tensor_gradings(&self.source, &other.source),
            tensor_gradings(&self.target, &other.target),
            self.mode,
            self.shift + other.shift,
            self.bits.kronecker(&other.bits),
        )
    }

    /// The dual map between dual modules; skew maps pick up swapped monomials.
    pub fn dual(&self) -> GradedMap {
        Self::new_unchecked(
            negate(&self.target),
            negate(&self.source),
            self.mode,
            match self.mode {
                Mode::Straight => self.shift,
                Mode::Skew => self.shift.swap(),
            },
            self.bits.transpose(),
        )
    }

    /// Block-diagonal sum of two maps with the same mode and shift.
    pub fn direct_sum(&self, other: &GradedMap) -> GradedMap {
        assert_eq!((self.mode, self.shift), (other.mode, other.shift));
        let (r1, c1) = (self.bits.rows(), self.bits.cols());
        let mut bits = F2Matrix::zeros(r1 + other.bits.rows(), c1 + other.bits.cols());
        for (r, c) in self.bits.ones() {
            bits.set(r, c, true);
        }
        for (r, c) in other.bits.ones() {
            bits.set(r1 + r, c1 + c, true);
        }
        Self::new_unchecked(
            [self.source.clone(), other.source.clone()].concat(),
            [self.target.clone(), other.target.clone()].concat(),
            self.mode,
            self.shift,
            bits,
        )
    }

    /// Inverse of a bidegree-zero straight automorphism.
    pub fn inverse(&self) -> Option<GradedMap> {
        if self.source != self.target || self.shift != Bigrading::ZERO || self.mode != Mode::Straight {
            return None;
        }
        let inv = self.bits.inverse()?;
        Some(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            Mode::Straight,
            Bigrading::ZERO,
            inv,
        ))
    }

    /// Relabel source and target gradings after an overall shift of both modules.
    pub fn regraded(&self, source: Vec<Bigrading>, target: Vec<Bigrading>, shift: Bigrading) -> GradedMap {
        Self::new_unchecked(source, target, self.mode, shift, self.bits.clone())
    }

    /// Apply to an element given by its bits over the source generators.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        self.bits.mul_vec(v)
    }

    /// Restrict to the given target rows and source columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> GradedMap {
        Self::new_unchecked(
            cols.iter().map(|&c| self.source[c]).collect(),
            rows.iter().map(|&r| self.target[r]).collect(),
            self.mode,
            self.shift,
            self.bits.select(rows, cols),
        )
    }
}

pub(crate) fn allowed_pairs(
    source: &[Bigrading],
    target: &[Bigrading],
    mode: Mode,
    shift: Bigrading,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (g, &gr) in source.iter().enumerate() {
        let slice = slice_basis(target, mode.apply(gr) + shift);
        out.extend(slice.generators().map(|h| (h, g)));
    }
    out
}

pub(crate) fn tensor_gradings(a: &[Bigrading], b: &[Bigrading]) -> Vec<Bigrading> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x + y)).collect()
}

pub(crate) fn negate(gr: &[Bigrading]) -> Vec<Bigrading> {
    gr.iter().map(|&g| -g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn box1() -> Vec<Bigrading> {
        vec![
            Bigrading::new(0, 0),
            Bigrading::new(1, -1),
            Bigrading::new(-1, 1),
            Bigrading::new(0, 0),
        ]
    }

    #[test]
    fn differential_entries_carry_forced_monomials() {
        let gr = box1();
        let bits = F2Matrix::from_entries(4, 4, &[(1, 0), (2, 0), (3, 1), (3, 2)]);
        let d = GradedMap::new(gr.clone(), gr, Mode::Straight, Bigrading::diagonal(-1), bits).unwrap();
        assert_eq!(d.entry(1, 0), Some(Monomial::new(1, 0)));
        assert_eq!(d.entry(2, 0), Some(Monomial::new(0, 1)));
        assert_eq!(d.entry(3, 1), Some(Monomial::new(0, 1)));
        assert_eq!(d.entry(3, 2), Some(Monomial::new(1, 0)));
    }

    #[test]
    fn inadmissible_bits_rejected() {
        let gr = box1();
        let bits = F2Matrix::from_entries(4, 4, &[(0, 3)]);
        let err = GradedMap::new(gr.clone(), gr, Mode::Straight, Bigrading::diagonal(-1), bits);
        assert_eq!(err.unwrap_err(), (0, 3));
    }

    #[test]
    fn skew_swaps_monomials() {
        let gr = box1();
        let bits = F2Matrix::from_entries(4, 4, &[(0, 0), (2, 1), (1, 2), (3, 3)]);
        let iota = GradedMap::new(gr.clone(), gr, Mode::Skew, Bigrading::ZERO, bits).unwrap();
        assert_eq!(iota.entry(2, 1), Some(Monomial::ONE));
        let sq = iota.compose(&iota);
        assert_eq!(sq.mode(), Mode::Straight);
        assert_eq!(sq.bits(), &F2Matrix::identity(4));
    }

    #[test]
    fn dual_of_dual_is_identity() {
        let gr = box1();
        let bits = F2Matrix::from_entries(4, 4, &[(1, 0), (2, 0), (3, 1), (3, 2)]);
        let d = GradedMap::new(gr.clone(), gr, Mode::Straight, Bigrading::diagonal(-1), bits).unwrap();
        assert_eq!(d.dual().dual(), d);
    }
}
