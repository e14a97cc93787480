//! The A0 subcomplex, U-homology with tower and torsion summands, the cylinder complex
//! and the δ invariant.

mod ucomplex;

use serde::Serialize;

pub use ucomplex::{HomologyClass, UComplex, UHomology, Window, WindowPolicy};

use crate::cfk::PhiIotaComplex;
use crate::core_algebra::{BitVec, F2Matrix};
use crate::error::{Error, Result};
use crate::morphisms::local_map_exists;

/// The total complex `A0 ⊕ A0[-1] ⊕ A0[-1]` with
/// `D(x, y, z) = (∂x, (1+φ)x + ∂y, (1+ι)x + ∂z)`.
#[derive(Clone, Debug)]
pub struct CylComplex {
    pub base: UComplex,
    /// The total complex on `3n` generators: `x`-block, then `y`-block, then `z`-block.
    pub total: UComplex,
}

pub fn build_cyl(a: &UComplex) -> Result<CylComplex> {
    let (phi, iota) = match (a.phi(), a.iota()) {
        (Some(p), Some(i)) => (p, i),
        _ => return Err(Error::InvalidArgument("cylinder needs both phi and iota".into())),
    };
    let n = a.len();
    let d = a.differential();
    let id = F2Matrix::identity(n);
    let one_plus_phi = id.add(phi);
    let one_plus_iota = id.add(iota);
    let mut total = F2Matrix::zeros(3 * n, 3 * n);
    for block in 0..3 {
        for (r, c) in d.ones() {
            total.set(block * n + r, block * n + c, true);
        }
    }
    for (r, c) in one_plus_phi.ones() {
        total.set(n + r, c, true);
    }
    for (r, c) in one_plus_iota.ones() {
        total.set(2 * n + r, c, true);
    }
    let mut ids = Vec::with_capacity(3 * n);
    let mut gradings = Vec::with_capacity(3 * n);
    for (prefix, offset) in [("x", 0), ("y", -1), ("z", -1)] {
        for (id, g) in a.ids().iter().zip(a.gradings()) {
            ids.push(format!("{prefix}:{id}"));
            gradings.push(g + offset);
        }
    }
    let total = UComplex::new(ids, gradings, total, None, None)
        .map_err(|e| Error::ConsistencyViolation(format!("cylinder complex is invalid: {e}")))?
        .with_policy(a.policy());
    Ok(CylComplex { base: a.clone(), total })
}

impl CylComplex {
    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    /// Projection onto the first block.
    pub fn q(&self, v: &BitVec) -> BitVec {
        v.slice(0, self.base.len())
    }
}

/// A cycle `(x, y, z)` of the cylinder: `∂x = 0`, `∂y = (1+φ)x`, `∂z = (1+ι)x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylCycle {
    pub grading: i32,
    pub x: BitVec,
    pub y: BitVec,
    pub z: BitVec,
}

#[derive(Clone, Debug)]
pub struct DeltaResult {
    pub delta: i32,
    pub witness: CylCycle,
    pub window: Window,
}

pub fn delta(x: &PhiIotaComplex) -> Result<DeltaResult> {
    delta_with(x, WindowPolicy::default())
}

/// δ: minus half the top grading of a cylinder cycle whose projection is nontorsion.
pub fn delta_with(x: &PhiIotaComplex, policy: WindowPolicy) -> Result<DeltaResult> {
    let a = UComplex::a0(x)?.with_policy(policy);
    let cyl = build_cyl(&a)?;
    let window = a.window();
    let n = a.len();
    for k in (window.bottom..=a.g_max()).rev() {
        for v in cyl.total.cycles(k) {
            let xpart = v.slice(0, n);
            if xpart.is_zero() || !a.is_nontorsion(k, &xpart)? {
                continue;
            }
            if k % 2 != 0 {
                return Err(Error::OddDeltaGrading(k));
            }
            let witness = CylCycle {
                grading: k,
                x: xpart,
                y: v.slice(n, n),
                z: v.slice(2 * n, n),
            };
            verify_witness(&a, &witness);
            return Ok(DeltaResult {
                delta: -k / 2,
                witness,
                window,
            });
        }
    }
    Err(Error::WindowUnstable("no cylinder class with nontorsion projection inside the window".into()))
}

fn verify_witness(a: &UComplex, w: &CylCycle) {
    let d = a.differential();
    let (phi, iota) = (a.phi().expect("phi"), a.iota().expect("iota"));
    let fx = |m: &F2Matrix| w.x.xor(&m.mul_vec(&w.x));
    assert!(d.mul_vec(&w.x).is_zero(), "witness x is not a cycle");
    assert_eq!(d.mul_vec(&w.y), fx(phi), "witness y fails ∂y = (1+φ)x");
    assert_eq!(d.mul_vec(&w.z), fx(iota), "witness z fails ∂z = (1+ι)x");
}

/// Both sides of the equivalence between `δ = 0` and the existence of a local map from
/// the trivial complex.
#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub delta: i32,
    pub local_map_exists: bool,
}

pub fn delta_zero_iff_local(x: &PhiIotaComplex) -> Result<ConsistencyReport> {
    let d = delta(x)?;
    let local = local_map_exists(&PhiIotaComplex::trivial(), x, false)?.is_ok();
    if (d.delta == 0) != local {
        return Err(Error::ConsistencyViolation(format!(
            "delta = {} but local map from the trivial complex {}",
            d.delta,
            if local { "exists" } else { "does not exist" }
        )));
    }
    Ok(ConsistencyReport {
        delta: d.delta,
        local_map_exists: local,
    })
}

/// Decide the existence of a local map `X1 → X2` through `δ(X2 ⊗ X1^∨) = 0`.
pub fn local_map_via_delta(x1: &PhiIotaComplex, x2: &PhiIotaComplex) -> Result<bool> {
    Ok(delta(&x2.tensor(&x1.dual()))?.delta == 0)
}
