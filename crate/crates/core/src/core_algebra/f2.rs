//! Bit-packed vectors and matrices over F2 with deterministic Gaussian elimination.

use std::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over F2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.toggle(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    pub fn unit(len: usize, i: usize) -> Self {
        Self::from_indices(len, [i])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Dot product over F2.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The sub-vector `self[start..start + len]`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        BitVec::from_indices(
            len,
            self.ones().filter(|&i| i >= start && i < start + len).map(|i| i - start),
        )
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense matrix over F2, stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_cols(rows: usize, cols: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, ones: &[(usize, usize)]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for &(r, c) in ones {
            m.toggle(r, c);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        self.data[r].toggle(c)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut BitVec {
        &mut self.data[r]
    }

    pub fn col(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(BitVec::count_ones).sum()
    }

    /// Set entries as `(row, col)` pairs in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.ones().map(move |c| (r, c)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c) in self.ones() {
            t.set(c, r, true);
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[r];
            for k in row.ones() {
                acc.xor_assign(&other.data[k]);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.data[r].dot(v)))
    }

    /// Kronecker product; entry `((i1, i2), (j1, j2))` lives at `(i1 * r2 + i2, j1 * c2 + j2)`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1) in self.ones() {
            for (r2, c2) in other.ones() {
                out.set(r1 * other.rows + r2, c1 * other.cols + c2, true);
            }
        }
        out
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        Echelon::from_vectors(self.cols, self.data.iter().cloned()).rank()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<BitVec> = self.data.clone();
        let mut inv: Vec<BitVec> = F2Matrix::identity(n).data;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r].get(col))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r].get(col) {
                    let (pa, pi) = (a[col].clone(), inv[col].clone());
                    a[r].xor_assign(&pa);
                    inv[r].xor_assign(&pi);
                }
            }
        }
        Some(Self {
            rows: n,
            cols: n,
            data: inv,
        })
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// An incrementally built row-echelon basis of a subspace of F2^n.
///
/// Rows are kept fully reduced with respect to each other, so membership tests and
/// reductions are deterministic.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(dim: usize, vectors: impl IntoIterator<Item = BitVec>) -> Self {
        let mut e = Self::new(dim);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    /// Reduce `v` modulo the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.dim);
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(pos, r);
        self.pivots.insert(pos, p);
        true
    }
}

/// Outcome of [`solve_f2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Solved {
        particular: BitVec,
        kernel: Vec<BitVec>,
    },
    /// `b` is not in the column span; `functional` satisfies `functional·A = 0`
    /// and `functional·b = 1`.
    Inconsistent { functional: BitVec },
}

impl Solution {
    pub fn particular(&self) -> Option<&BitVec> {
        match self {
            Solution::Solved { particular, .. } => Some(particular),
            Solution::Inconsistent { .. } => None,
        }
    }
}

struct Reduced {
    rows: Vec<BitVec>,
    rhs: BitVec,
    history: Option<Vec<BitVec>>,
    pivots: Vec<usize>,
}

fn reduce_rows(a: &F2Matrix, b: Option<&BitVec>, track: bool) -> Reduced {
    let m = a.rows();
    let mut rows = a.data.clone();
    let mut rhs = b.cloned().unwrap_or_else(|| BitVec::zeros(m));
    let mut history = track.then(|| (0..m).map(|i| BitVec::unit(m, i)).collect::<Vec<_>>());
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..a.cols() {
        let Some(p) = (next..m).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, p);
        let (rn, rp) = (rhs.get(next), rhs.get(p));
        rhs.set(next, rp);
        rhs.set(p, rn);
        if let Some(h) = history.as_mut() {
            h.swap(next, p);
        }
        let pivot_row = rows[next].clone();
        let pivot_rhs = rhs.get(next);
        let pivot_hist = history.as_ref().map(|h| h[next].clone());
        for r in 0..m {
            if r != next && rows[r].get(col) {
                rows[r].xor_assign(&pivot_row);
                if pivot_rhs {
                    rhs.toggle(r);
                }
                if let (Some(h), Some(ph)) = (history.as_mut(), pivot_hist.as_ref()) {
                    h[r].xor_assign(ph);
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == m {
            break;
        }
    }
    Reduced {
        rows,
        rhs,
        history,
        pivots,
    }
}

fn kernel_from(reduced: &Reduced, cols: usize) -> Vec<BitVec> {
    let mut is_pivot = vec![false; cols];
    for &p in &reduced.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVec::unit(cols, free);
            for (i, &p) in reduced.pivots.iter().enumerate() {
                if reduced.rows[i].get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Solve `A·x = b` exactly over F2 with leftmost pivots.
pub fn solve_f2(a: &F2Matrix, b: &BitVec) -> Solution {
    assert_eq!(a.rows(), b.len(), "dimension mismatch in solve_f2");
    let reduced = reduce_rows(a, Some(b), false);
    let rank = reduced.pivots.len();
    if (rank..a.rows()).any(|r| reduced.rhs.get(r)) {
        let tracked = reduce_rows(a, Some(b), true);
        let history = tracked.history.expect("tracked");
        let bad = (rank..a.rows())
            .find(|&r| tracked.rhs.get(r))
            .expect("inconsistent row");
        return Solution::Inconsistent {
            functional: history[bad].clone(),
        };
    }
    let mut particular = BitVec::zeros(a.cols());
    for (i, &p) in reduced.pivots.iter().enumerate() {
        if reduced.rhs.get(i) {
            particular.set(p, true);
        }
    }
    Solution::Solved {
        particular,
        kernel: kernel_from(&reduced, a.cols()),
    }
}

/// Basis of the null space `{x : A·x = 0}`, one vector per free column in increasing order.
pub fn kernel(a: &F2Matrix) -> Vec<BitVec> {
    kernel_from(&reduce_rows(a, None, false), a.cols())
}
