//! Homotopy, homotopy-commutation and local-map decisions, all reduced to exact linear
//! algebra over F2.

mod system;

use serde::Serialize;

pub use system::{EquationId, LinearMapSystem, MapShape, SystemSolution, UnknownId};

use crate::a0_delta::UComplex;
use crate::cfk::{GradedMap, KnotComplex, Mode, PhiIotaComplex};
use crate::core_algebra::{Bigrading, BitVec, Echelon};
use crate::error::Result;

/// A map `H` with `f + g = ∂H + H∂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub map: GradedMap,
}

/// Certificate that a linear system has no solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub rank_augmented: usize,
    /// Indices of equation rows summing to the contradiction `0 = 1`.
    pub functional: Vec<usize>,
}

impl Obstruction {
    fn from_solution(sys: &LinearMapSystem, sol: SystemSolution) -> Option<Self> {
        match sol {
            SystemSolution::Solved { .. } => None,
            SystemSolution::Inconsistent {
                rank,
                rank_augmented,
                rows,
                functional,
            } => Some(Obstruction {
                equations: rows,
                unknowns: sys.ncols(),
                rank,
                rank_augmented,
                functional: functional.ones().collect(),
            }),
        }
    }
}

/// Decide `f ≃ g` for maps from `src` to `tgt`.
pub fn homotopic(
    src: &KnotComplex,
    tgt: &KnotComplex,
    f: &GradedMap,
    g: &GradedMap,
) -> std::result::Result<Homotopy, Obstruction> {
    assert!(f.same_shape(g), "homotopy between maps of different shape");
    let mut sys = LinearMapSystem::new();
    let h = sys.unknown(MapShape::of(f).homotopy());
    let eq = sys.equation();
    sys.term(eq, Some(tgt.differential()), h, None);
    sys.term(eq, None, h, Some(src.differential()));
    sys.constant(eq, f);
    sys.constant(eq, g);
    let sol = sys.solve();
    match &sol {
        SystemSolution::Solved { particular, .. } => {
            let map = sys.extract(h, particular);
            let lhs = tgt.differential().compose(&map).add(&map.compose(src.differential()));
            assert_eq!(lhs.bits(), f.add(g).bits(), "homotopy fails its defining equation");
            Ok(Homotopy { map })
        }
        SystemSolution::Inconsistent { .. } => Err(Obstruction::from_solution(&sys, sol).expect("inconsistent")),
    }
}

/// Decide `f ≃ g` for self-maps of `c`.
pub fn homotopic_endo(c: &KnotComplex, f: &GradedMap, g: &GradedMap) -> std::result::Result<Homotopy, Obstruction> {
    homotopic(c, c, f, g)
}

/// Decide `f∘g ≃ g∘f` for self-maps of `c`.
pub fn commutes_up_to_homotopy(
    c: &KnotComplex,
    f: &GradedMap,
    g: &GradedMap,
) -> std::result::Result<Homotopy, Obstruction> {
    homotopic_endo(c, &f.compose(g), &g.compose(f))
}

/// A chain map `g` with `g∘φ ≃ id` and `φ∘g ≃ id`.
pub fn homotopy_inverse(c: &KnotComplex, phi: &GradedMap) -> Option<GradedMap> {
    if let Some(inv) = phi.inverse() {
        return Some(inv);
    }
    let id = c.identity();
    let shape = MapShape::of(phi);
    let mut sys = LinearMapSystem::new();
    let g = sys.unknown(shape.clone());
    let h1 = sys.unknown(shape.homotopy());
    let h2 = sys.unknown(shape.homotopy());
    let d = c.differential();
    let chain = sys.equation();
    sys.term(chain, Some(d), g, None);
    sys.term(chain, None, g, Some(d));
    let left = sys.equation();
    sys.term(left, None, g, Some(phi));
    sys.term(left, Some(d), h1, None);
    sys.term(left, None, h1, Some(d));
    sys.constant(left, &id);
    let right = sys.equation();
    sys.term(right, Some(phi), g, None);
    sys.term(right, Some(d), h2, None);
    sys.term(right, None, h2, Some(d));
    sys.constant(right, &id);
    match sys.solve() {
        SystemSolution::Solved { particular, .. } => Some(sys.extract(g, &particular)),
        SystemSolution::Inconsistent { .. } => None,
    }
}

/// A witnessed local map together with its homotopies.
#[derive(Clone, Debug)]
pub struct LocalityCertificate {
    pub map: GradedMap,
    pub phi_homotopy: GradedMap,
    pub iota_homotopy: GradedMap,
    /// Diagonal grading shift `d` of the map.
    pub shift: i32,
    /// Nontorsion cycle of `A0(source)` used for the locality test, with its grading.
    pub tower_grading: i32,
    pub tower_cycle: BitVec,
    pub image: BitVec,
    pub solution_dimension: usize,
}

/// Certificate that no local map exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoLocalMap {
    /// Per tried shift: `(shift, dimension of the constraint solution space, rank of the
    /// tower functional on it)`; the rank is zero for every entry.
    pub tried: Vec<(i32, usize, usize)>,
}

/// Search for a local map `X1 → X2`; with `allow_shift`, diagonal grading shifts are tried
/// in order of increasing magnitude.
pub fn local_map_exists(
    x1: &PhiIotaComplex,
    x2: &PhiIotaComplex,
    allow_shift: bool,
) -> Result<std::result::Result<LocalityCertificate, NoLocalMap>> {
    let shifts: Vec<i32> = if allow_shift {
        let span = shift_span(x1, x2);
        std::iter::once(0)
            .chain((1..=span).flat_map(|d| [d, -d]))
            .collect()
    } else {
        vec![0]
    };
    let a1 = UComplex::a0(x1)?;
    let a2 = UComplex::a0(x2)?;
    let (tower_grading, tower_cycle) = a1.tower_cycle()?;
    let mut tried = Vec::new();
    for d in shifts {
        match local_map_with_shift(x1, x2, d, &a2, tower_grading, &tower_cycle)? {
            Ok(cert) => return Ok(Ok(cert)),
            Err(dim) => tried.push((d, dim, 0)),
        }
    }
    Ok(Err(NoLocalMap { tried }))
}

fn shift_span(x1: &PhiIotaComplex, x2: &PhiIotaComplex) -> i32 {
    let spread = |x: &PhiIotaComplex| {
        let g = x.complex().gradings();
        let hi = g.iter().map(|b| b.gr_u.max(b.gr_v)).max().unwrap_or(0);
        let lo = g.iter().map(|b| b.gr_u.min(b.gr_v)).min().unwrap_or(0);
        hi.abs().max(lo.abs())
    };
    spread(x1) + spread(x2)
}

fn local_map_with_shift(
    x1: &PhiIotaComplex,
    x2: &PhiIotaComplex,
    d: i32,
    a2: &UComplex,
    tower_grading: i32,
    tower_cycle: &BitVec,
) -> Result<std::result::Result<LocalityCertificate, usize>> {
    let (c1, c2) = (x1.complex(), x2.complex());
    let shift = Bigrading::diagonal(d);
    let f_shape = MapShape::new(c1.gradings(), c2.gradings(), Mode::Straight, shift);
    let mut sys = LinearMapSystem::new();
    let f = sys.unknown(f_shape.clone());
    let hphi = sys.unknown(f_shape.homotopy());
    let hiota = sys.unknown(MapShape {
        mode: Mode::Skew,
        ..f_shape.homotopy()
    });
    let (d1, d2) = (c1.differential(), c2.differential());
    let chain = sys.equation();
    sys.term(chain, Some(d2), f, None);
    sys.term(chain, None, f, Some(d1));
    let phi_eq = sys.equation();
    sys.term(phi_eq, None, f, Some(x1.phi()));
    sys.term(phi_eq, Some(x2.phi()), f, None);
    sys.term(phi_eq, Some(d2), hphi, None);
    sys.term(phi_eq, None, hphi, Some(d1));
    let iota_eq = sys.equation();
    sys.term(iota_eq, None, f, Some(x1.iota()));
    sys.term(iota_eq, Some(x2.iota()), f, None);
    sys.term(iota_eq, Some(d2), hiota, None);
    sys.term(iota_eq, None, hiota, Some(d1));
    let SystemSolution::Solved { kernel, .. } = sys.solve() else {
        unreachable!("homogeneous systems are consistent");
    };
    let target_grading = tower_grading + d;
    for v in &kernel {
        let map = sys.extract(f, v);
        let image = map.apply(tower_cycle);
        if a2.is_nontorsion(target_grading, &image)? {
            let cert = LocalityCertificate {
                phi_homotopy: sys.extract(hphi, v),
                iota_homotopy: sys.extract(hiota, v),
                map,
                shift: d,
                tower_grading,
                tower_cycle: tower_cycle.clone(),
                image,
                solution_dimension: kernel.len(),
            };
            verify_local(x1, x2, &cert);
            return Ok(Ok(cert));
        }
    }
    Ok(Err(kernel.len()))
}

fn verify_local(x1: &PhiIotaComplex, x2: &PhiIotaComplex, cert: &LocalityCertificate) {
    let (c1, c2) = (x1.complex(), x2.complex());
    let f = &cert.map;
    assert!(c1.is_chain_map(c2, f), "local map witness is not a chain map");
    let defect = |a: &GradedMap, b: &GradedMap, h: &GradedMap| {
        let lhs = a.add(b);
        let rhs = c2.differential().compose(h).add(&h.compose(c1.differential()));
        lhs.bits() == rhs.bits()
    };
    assert!(
        defect(&f.compose(x1.phi()), &x2.phi().compose(f), &cert.phi_homotopy),
        "local map witness does not commute with phi"
    );
    assert!(
        defect(&f.compose(x1.iota()), &x2.iota().compose(f), &cert.iota_homotopy),
        "local map witness does not commute with iota"
    );
}

/// The space of grading-preserving self-maps commuting with `ι` up to homotopy.
#[derive(Clone, Debug)]
pub struct MorphismSpace {
    pub basis: Vec<GradedMap>,
    /// Locality of each basis element.
    pub local: Vec<bool>,
    /// Dimension of the space modulo null-homotopic maps.
    pub dimension_mod_homotopy: usize,
    pub constraints: &'static str,
}

impl MorphismSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &GradedMap) -> bool {
        let coords = |g: &GradedMap| BitVec::from_indices(g.bits().rows() * g.bits().cols(), g.bits().ones().map(|(r, c)| r * g.bits().cols() + c));
        let n = f.bits().rows() * f.bits().cols();
        Echelon::from_vectors(n, self.basis.iter().map(coords)).contains(&coords(f))
    }
}

/// Raw constraint space of self-maps of `X` commuting with `ι` up to homotopy.
pub fn self_local_space(x: &PhiIotaComplex) -> Result<MorphismSpace> {
    let c = x.complex();
    let dmap = c.differential();
    let shape = MapShape::new(c.gradings(), c.gradings(), Mode::Straight, Bigrading::ZERO);
    let mut sys = LinearMapSystem::new();
    let f = sys.unknown(shape.clone());
    let hiota = sys.unknown(MapShape {
        mode: Mode::Skew,
        ..shape.homotopy()
    });
    let chain = sys.equation();
    sys.term(chain, Some(dmap), f, None);
    sys.term(chain, None, f, Some(dmap));
    let iota_eq = sys.equation();
    sys.term(iota_eq, None, f, Some(x.iota()));
    sys.term(iota_eq, Some(x.iota()), f, None);
    sys.term(iota_eq, Some(dmap), hiota, None);
    sys.term(iota_eq, None, hiota, Some(dmap));
    let SystemSolution::Solved { kernel, .. } = sys.solve() else {
        unreachable!("homogeneous systems are consistent");
    };
    let range = sys.unknown_range(f);
    let mut span = Echelon::new(range.len());
    let mut basis = Vec::new();
    for v in &kernel {
        if span.insert(v.slice(range.start, range.len())) {
            basis.push(sys.extract(f, v));
        }
    }
    let a = UComplex::a0(x)?;
    let (k, t) = a.tower_cycle()?;
    let local = basis
        .iter()
        .map(|m| a.is_nontorsion(k, &m.apply(&t)))
        .collect::<Result<Vec<_>>>()?;
    let null = null_homotopic_span(c, &shape);
    let mut with_basis = null.clone();
    for m in &basis {
        with_basis.insert(flat(m));
    }
    Ok(MorphismSpace {
        dimension_mod_homotopy: with_basis.rank() - null.rank(),
        basis,
        local,
        constraints: "chain map, commutes with iota up to homotopy",
    })
}

fn flat(m: &GradedMap) -> BitVec {
    let cols = m.bits().cols();
    BitVec::from_indices(m.bits().rows() * cols, m.bits().ones().map(|(r, c)| r * cols + c))
}

/// Span of maps `∂K + K∂` of the given shape.
pub(crate) fn null_homotopic_span(c: &KnotComplex, shape: &MapShape) -> Echelon {
    let hshape = shape.homotopy();
    let n = c.len();
    let mut span = Echelon::new(n * n);
    let zero = hshape.map_from(crate::core_algebra::F2Matrix::zeros(n, n));
    for (h, g) in zero.allowed_pairs() {
        let mut bits = crate::core_algebra::F2Matrix::zeros(n, n);
        bits.set(h, g, true);
        let k = hshape.map_from(bits);
        let m = c.differential().compose(&k).add(&k.compose(c.differential()));
        span.insert(flat(&m));
    }
    span
}

pub(crate) fn flatten(m: &GradedMap) -> BitVec {
    flat(m)
}
