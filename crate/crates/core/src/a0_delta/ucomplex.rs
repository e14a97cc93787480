use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cfk::{KnotComplex, PhiIotaComplex};
use crate::core_algebra::{kernel, BitVec, Echelon, F2Matrix, Variable};
use crate::error::{Error, Result};

/// Truncation policy: how far below the lowest generator homology is examined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WindowPolicy {
    /// Extra powers of `U` added to the torsion bound.
    pub bump: u32,
}

/// Grading window actually used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    /// `(number of generators) × (1 + largest exponent)`.
    pub torsion_bound: u32,
    pub bump: u32,
    /// `U`-power used for nontorsion tests: `torsion_bound + bump`.
    pub depth: u32,
    pub bottom: i32,
    pub top: i32,
}

/// A free chain complex over F2[U] with `deg U = -2` and `deg ∂ = -1`, with optional
/// restricted actions.
///
/// Monomials are implied by gradings, so maps are stored as bit matrices (rows are targets).
#[derive(Clone, Debug)]
pub struct UComplex {
    ids: Vec<String>,
    gradings: Vec<i32>,
    differential: F2Matrix,
    phi: Option<F2Matrix>,
    iota: Option<F2Matrix>,
    policy: WindowPolicy,
    boundary_cache: RefCell<HashMap<i32, Echelon>>,
}

/// `e` with `U^e` carrying grading `to` down to `from`.
fn exponent(from: i32, to: i32) -> Option<u32> {
    let d = to - from;
    (d >= 0 && d % 2 == 0).then_some((d / 2) as u32)
}

impl UComplex {
    pub fn new(
        ids: Vec<String>,
        gradings: Vec<i32>,
        differential: F2Matrix,
        phi: Option<F2Matrix>,
        iota: Option<F2Matrix>,
    ) -> Result<Self> {
        let n = ids.len();
        assert_eq!(gradings.len(), n);
        for (h, g) in differential.ones() {
            if exponent(gradings[g] - 1, gradings[h]).is_none() {
                return Err(Error::BidegreeViolated {
                    source_id: ids[g].clone(),
                    target_id: ids[h].clone(),
                });
            }
        }
        for (name, m) in [("phi", &phi), ("iota", &iota)] {
            if let Some(m) = m {
                if let Some((h, g)) = m.ones().find(|&(h, g)| exponent(gradings[g], gradings[h]).is_none()) {
                    return Err(Error::MapGrading {
                        map: name.into(),
                        source_id: ids[g].clone(),
                        target_id: ids[h].clone(),
                    });
                }
            }
        }
        if let Some((_, g)) = differential.mul(&differential).ones().next() {
            return Err(Error::DifferentialSquare(ids[g].clone()));
        }
        Ok(Self {
            ids,
            gradings,
            differential,
            phi,
            iota,
            policy: WindowPolicy::default(),
            boundary_cache: RefCell::default(),
        })
    }

    /// The Alexander-grading-zero subcomplex: one generator `U^max(A,0) V^max(-A,0)·g`
    /// per generator `g`, at grading `min(gr_U, gr_V)`.
    pub fn a0(x: &PhiIotaComplex) -> Result<Self> {
        let c = x.complex();
        let mut gradings = Vec::with_capacity(c.len());
        for (id, g) in c.ids().iter().zip(c.gradings()) {
            if g.alexander().is_none() {
                return Err(Error::InvalidComplex(format!("generator `{id}` has half-integral Alexander grading")));
            }
            gradings.push(g.gr_u.min(g.gr_v));
        }
        Self::new(
            c.ids().to_vec(),
            gradings,
            c.differential().bits().clone(),
            Some(x.phi().bits().clone()),
            Some(x.iota().bits().clone()),
        )
    }

    /// Set one variable to 1: `Variable::U` leaves an F2[V]-complex graded by `gr_V`,
    /// `Variable::V` an F2[U]-complex graded by `gr_U`.
    pub fn specialize(c: &KnotComplex, var: Variable) -> Self {
        let gradings = c
            .gradings()
            .iter()
            .map(|g| match var {
                Variable::U => g.gr_v,
                Variable::V => g.gr_u,
            })
            .collect();
        Self::new(c.ids().to_vec(), gradings, c.differential().bits().clone(), None, None)
            .expect("specialization of a valid complex")
    }

    pub fn with_policy(mut self, policy: WindowPolicy) -> Self {
        self.policy = policy;
        self.boundary_cache = RefCell::default();
        self
    }

    pub fn policy(&self) -> WindowPolicy {
        self.policy
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn gradings(&self) -> &[i32] {
        &self.gradings
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn differential(&self) -> &F2Matrix {
        &self.differential
    }

    pub fn phi(&self) -> Option<&F2Matrix> {
        self.phi.as_ref()
    }

    pub fn iota(&self) -> Option<&F2Matrix> {
        self.iota.as_ref()
    }

    /// `U`-exponent of a nonzero map entry from `g` to `h`, for a map of degree `degree`.
    pub fn entry_exponent(&self, h: usize, g: usize, degree: i32) -> Option<u32> {
        exponent(self.gradings[g] + degree, self.gradings[h])
    }

    fn max_exponent(&self) -> u32 {
        let mut e = 0;
        for (h, g) in self.differential.ones() {
            e = e.max(self.entry_exponent(h, g, -1).unwrap_or(0));
        }
        for m in [&self.phi, &self.iota].into_iter().flatten() {
            for (h, g) in m.ones() {
                e = e.max(self.entry_exponent(h, g, 0).unwrap_or(0));
            }
        }
        e
    }

    pub fn g_min(&self) -> i32 {
        self.gradings.iter().copied().min().unwrap_or(0)
    }

    pub fn g_max(&self) -> i32 {
        self.gradings.iter().copied().max().unwrap_or(0)
    }

    pub fn window(&self) -> Window {
        let torsion_bound = self.len() as u32 * (1 + self.max_exponent());
        let depth = torsion_bound + self.policy.bump;
        Window {
            torsion_bound,
            bump: self.policy.bump,
            depth,
            bottom: self.g_min() - 2 * depth as i32,
            top: self.g_max() + 2,
        }
    }

    /// Generators spanning grading `k`: those with grading at least `k` and of the same parity.
    pub fn slice(&self, k: i32) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.gradings[i] >= k && (self.gradings[i] - k) % 2 == 0)
            .collect()
    }

    /// Below the lowest generator every slice is the full parity class, so boundary
    /// spaces stabilize.
    fn clamp(&self, k: i32) -> i32 {
        let floor = self.g_min() - 2;
        if k >= floor {
            k
        } else {
            floor + (k - floor).rem_euclid(2)
        }
    }

    /// Boundaries in grading `k`, as a subspace of F2^n.
    pub fn boundaries(&self, k: i32) -> Echelon {
        let k = self.clamp(k);
        if let Some(e) = self.boundary_cache.borrow().get(&k) {
            return e.clone();
        }
        let n = self.len();
        let cols = self.slice(k + 1);
        let e = Echelon::from_vectors(n, cols.iter().map(|&g| self.differential.col(g)));
        self.boundary_cache.borrow_mut().insert(k, e.clone());
        e
    }

    /// Basis of the cycles in grading `k`, as vectors in F2^n.
    pub fn cycles(&self, k: i32) -> Vec<BitVec> {
        let n = self.len();
        let cols = self.slice(k);
        let rows: Vec<usize> = (0..n).collect();
        let sub = self.differential.select(&rows, &cols);
        kernel(&sub)
            .into_iter()
            .map(|v| BitVec::from_indices(n, v.ones().map(|i| cols[i])))
            .collect()
    }

    /// Is the cycle `x` of grading `k` nontorsion, judged at `U^depth` and re-checked at
    /// `U^(depth + 1)`?
    pub fn is_nontorsion(&self, k: i32, x: &BitVec) -> Result<bool> {
        let depth = self.window().depth as i32;
        let at = !self.boundaries(k - 2 * depth).contains(x);
        let beyond = !self.boundaries(k - 2 * depth - 2).contains(x);
        if at != beyond {
            return Err(Error::WindowUnstable(format!(
                "class in grading {k} changes torsion status between U^{depth} and U^{}",
                depth + 1
            )));
        }
        Ok(at)
    }

    /// A nontorsion cycle of highest grading.
    pub fn tower_cycle(&self) -> Result<(i32, BitVec)> {
        let h = self.homology()?;
        let t = h
            .towers
            .first()
            .ok_or_else(|| Error::NotS3Type("no free tower in homology".into()))?;
        Ok((t.grading, t.representative.clone()))
    }

    pub fn homology(&self) -> Result<UHomology> {
        UHomology::compute(self)
    }
}

/// A homology class; `order` is `None` for tower generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub grading: i32,
    pub order: Option<u32>,
    pub representative: BitVec,
}

/// Homology of a [`UComplex`] split into cyclic summands, with chosen representatives.
#[derive(Clone, Debug)]
pub struct UHomology {
    /// Tower generators, highest grading first.
    pub towers: Vec<HomologyClass>,
    /// Torsion summand generators, highest grading first.
    pub torsion: Vec<HomologyClass>,
    pub window: Window,
    reps: BTreeMap<i32, Vec<BitVec>>,
    boundaries: BTreeMap<i32, Echelon>,
}

impl UHomology {
    fn compute(a: &UComplex) -> Result<Self> {
        let window = a.window();
        let depth = window.depth;
        let n = a.len();
        let (lo, hi) = (a.g_min(), a.g_max());
        let mut reps = BTreeMap::new();
        let mut boundaries = BTreeMap::new();
        for k in (lo - 2)..=(hi + 2) {
            let b = a.boundaries(k);
            let mut e = b.clone();
            let r: Vec<BitVec> = a.cycles(k).into_iter().filter(|z| e.insert(z.clone())).collect();
            reps.insert(k, r);
            boundaries.insert(k, b);
        }
        let mut towers = Vec::new();
        let mut torsion = Vec::new();
        for k in (lo..=hi).rev() {
            let rk = &reps[&k];
            if rk.is_empty() {
                continue;
            }
            let mut span = boundaries[&k].clone();
            for r in &reps[&(k + 2)] {
                span.insert(r.clone());
            }
            for order in 1..=depth {
                let killer = a.boundaries(k - 2 * order as i32);
                let cols: Vec<BitVec> = rk.iter().map(|r| killer.reduce(r)).collect();
                let m = F2Matrix::from_cols(n, &cols);
                for c in kernel(&m) {
                    let mut v = BitVec::zeros(n);
                    for i in c.ones() {
                        v.xor_assign(&rk[i]);
                    }
                    if span.insert(v.clone()) {
                        torsion.push(HomologyClass {
                            grading: k,
                            order: Some(order),
                            representative: v,
                        });
                    }
                }
            }
            for r in rk {
                if span.insert(r.clone()) {
                    if a.boundaries(k - 2 * depth as i32 - 2).contains(r) {
                        return Err(Error::WindowUnstable(format!(
                            "tower class in grading {k} dies at U^{}",
                            depth + 1
                        )));
                    }
                    towers.push(HomologyClass {
                        grading: k,
                        order: None,
                        representative: r.clone(),
                    });
                }
            }
        }
        Ok(Self {
            towers,
            torsion,
            window,
            reps,
            boundaries,
        })
    }

    pub fn tower_count(&self) -> usize {
        self.towers.len()
    }

    /// Representatives of a basis of homology in grading `k`, for `k` between two below the
    /// lowest generator and two above the highest.
    pub fn representatives(&self, k: i32) -> &[BitVec] {
        self.reps.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dimension(&self, k: i32) -> usize {
        self.representatives(k).len()
    }

    /// Gradings with nonzero homology in the stored range.
    pub fn graded_dimensions(&self) -> Vec<(i32, usize)> {
        self.reps
            .iter()
            .filter(|(_, r)| !r.is_empty())
            .map(|(k, r)| (*k, r.len()))
            .collect()
    }

    /// Coordinates of the class of cycle `x` in grading `k` with respect to
    /// [`Self::representatives`].
    pub fn coordinates(&self, k: i32, x: &BitVec) -> Option<BitVec> {
        let reps = self.reps.get(&k)?;
        let b = self.boundaries.get(&k)?;
        let n = x.len();
        let cols: Vec<BitVec> = reps.iter().map(|r| b.reduce(r)).collect();
        let target = b.reduce(x);
        match crate::core_algebra::solve_f2(&F2Matrix::from_cols(n, &cols), &target) {
            crate::core_algebra::Solution::Solved { particular, .. } => Some(particular),
            crate::core_algebra::Solution::Inconsistent { .. } => None,
        }
    }

    /// Matrix of `U: H_k → H_{k-2}` in the chosen representatives.
    pub fn u_action(&self, k: i32) -> Option<F2Matrix> {
        let from = self.reps.get(&k)?;
        let to_dim = self.reps.get(&(k - 2))?.len();
        let cols: Vec<BitVec> = from
            .iter()
            .map(|r| self.coordinates(k - 2, r))
            .collect::<Option<Vec<_>>>()?;
        Some(F2Matrix::from_cols(to_dim, &cols))
    }
}
