//! Assembly of linear systems whose unknowns are homogeneous maps.
//!
//! Every equation block is a sum of terms `L ∘ X ∘ R` (with `X` an unknown and `L`, `R`
//! fixed maps or identities) equated to a fixed map. Rows are created only for matrix
//! positions that some term or constant touches.

use std::collections::HashMap;

use crate::cfk::{allowed_pairs, GradedMap, Mode};
use crate::core_algebra::{solve_f2, Bigrading, BitVec, F2Matrix, Solution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapShape {
    pub source: Vec<Bigrading>,
    pub target: Vec<Bigrading>,
    pub mode: Mode,
    pub shift: Bigrading,
}

impl MapShape {
    pub fn new(source: &[Bigrading], target: &[Bigrading], mode: Mode, shift: Bigrading) -> Self {
        Self {
            source: source.to_vec(),
            target: target.to_vec(),
            mode,
            shift,
        }
    }

    pub fn of(f: &GradedMap) -> Self {
        Self::new(f.source(), f.target(), f.mode(), f.shift())
    }

    /// Shape of a homotopy between maps of this shape.
    pub fn homotopy(&self) -> Self {
        Self {
            shift: self.shift + Bigrading::diagonal(1),
            ..self.clone()
        }
    }

    pub fn map_from(&self, bits: F2Matrix) -> GradedMap {
        GradedMap::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.mode,
            self.shift,
            bits,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnknownId(usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EquationId(usize);

struct Unknown {
    shape: MapShape,
    pairs: Vec<(usize, usize)>,
    offset: usize,
}

#[derive(Default)]
pub struct LinearMapSystem {
    unknowns: Vec<Unknown>,
    ncols: usize,
    equations: usize,
    row_index: HashMap<(usize, usize, usize), usize>,
    rows: Vec<Vec<usize>>,
    rhs: Vec<bool>,
    frozen: bool,
}

/// Solution space of a [`LinearMapSystem`].
#[derive(Clone, Debug)]
pub enum SystemSolution {
    Solved {
        particular: BitVec,
        kernel: Vec<BitVec>,
    },
    Inconsistent {
        rank: usize,
        rank_augmented: usize,
        rows: usize,
        functional: BitVec,
    },
}

impl LinearMapSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unknown(&mut self, shape: MapShape) -> UnknownId {
        assert!(!self.frozen, "unknowns must be declared before terms");
        let pairs = allowed_pairs(&shape.source, &shape.target, shape.mode, shape.shift);
        let offset = self.ncols;
        self.ncols += pairs.len();
        self.unknowns.push(Unknown { shape, pairs, offset });
        UnknownId(self.unknowns.len() - 1)
    }

    pub fn equation(&mut self) -> EquationId {
        self.equations += 1;
        EquationId(self.equations - 1)
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn unknown_len(&self, x: UnknownId) -> usize {
        self.unknowns[x.0].pairs.len()
    }

    pub fn unknown_range(&self, x: UnknownId) -> std::ops::Range<usize> {
        let u = &self.unknowns[x.0];
        u.offset..u.offset + u.pairs.len()
    }

    fn row(&mut self, eq: EquationId, k: usize, e: usize) -> usize {
        let next = self.rows.len();
        let r = *self.row_index.entry((eq.0, k, e)).or_insert(next);
        if r == next {
            self.rows.push(Vec::new());
            self.rhs.push(false);
        }
        r
    }

    /// Add the term `left ∘ X ∘ right`; `None` stands for an identity.
    pub fn term(&mut self, eq: EquationId, left: Option<&GradedMap>, x: UnknownId, right: Option<&GradedMap>) {
        self.frozen = true;
        let left_t = left.map(|l| l.bits().transpose());
        let pairs = self.unknowns[x.0].pairs.clone();
        let offset = self.unknowns[x.0].offset;
        for (i, &(h, g)) in pairs.iter().enumerate() {
            let ks: Vec<usize> = match &left_t {
                Some(lt) => lt.row(h).ones().collect(),
                None => vec![h],
            };
            let es: Vec<usize> = match right {
                Some(r) => r.bits().row(g).ones().collect(),
                None => vec![g],
            };
            for &k in &ks {
                for &e in &es {
                    let r = self.row(eq, k, e);
                    self.rows[r].push(offset + i);
                }
            }
        }
    }

    /// Add a fixed map to the right-hand side of `eq`.
    pub fn constant(&mut self, eq: EquationId, c: &GradedMap) {
        self.frozen = true;
        for (k, e) in c.bits().ones() {
            let r = self.row(eq, k, e);
            self.rhs[r] = !self.rhs[r];
        }
    }

    pub fn matrix(&self) -> (F2Matrix, BitVec) {
        let rows = self
            .rows
            .iter()
            .map(|cols| {
                let mut v = BitVec::zeros(self.ncols);
                for &c in cols {
                    v.toggle(c);
                }
                v
            })
            .collect();
        let a = F2Matrix::from_rows(self.ncols, rows);
        let b = BitVec::from_bools(&self.rhs);
        (a, b)
    }

    pub fn solve(&self) -> SystemSolution {
        let (a, b) = self.matrix();
        match solve_f2(&a, &b) {
            Solution::Solved { particular, kernel } => SystemSolution::Solved { particular, kernel },
            Solution::Inconsistent { functional } => {
                let rank = a.rank();
                let mut aug = a.clone();
                let mut rows: Vec<BitVec> = (0..aug.rows()).map(|r| aug.row(r).clone()).collect();
                for (r, row) in rows.iter_mut().enumerate() {
                    *row = row.concat(&BitVec::from_bools(&[b.get(r)]));
                }
                aug = F2Matrix::from_rows(a.cols() + 1, rows);
                SystemSolution::Inconsistent {
                    rank,
                    rank_augmented: aug.rank(),
                    rows: a.rows(),
                    functional,
                }
            }
        }
    }

    /// The value of unknown `x` in the solution vector `v`.
    pub fn extract(&self, x: UnknownId, v: &BitVec) -> GradedMap {
        let u = &self.unknowns[x.0];
        let mut bits = F2Matrix::zeros(u.shape.target.len(), u.shape.source.len());
        for (i, &(h, g)) in u.pairs.iter().enumerate() {
            if v.get(u.offset + i) {
                bits.set(h, g, true);
            }
        }
        u.shape.map_from(bits)
    }

    /// Coordinates of a map in the column layout of unknown `x`; `None` if the map has an
    /// entry outside the admissible pattern.
    pub fn coordinates(&self, x: UnknownId, f: &GradedMap) -> Option<BitVec> {
        let u = &self.unknowns[x.0];
        let mut v = BitVec::zeros(self.ncols);
        let mut hits = 0;
        for (i, &(h, g)) in u.pairs.iter().enumerate() {
            if f.bits().get(h, g) {
                v.set(u.offset + i, true);
                hits += 1;
            }
        }
        (hits == f.bits().count_ones()).then_some(v)
    }
}
