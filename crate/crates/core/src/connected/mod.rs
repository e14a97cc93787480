//! Connected complexes (images of maximal self-local maps) and 𝒮-nontriviality.

mod standard;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use standard::{recognize_standard, BoxShape, StaircaseShape, StandardForm};

use crate::a0_delta::UComplex;
use crate::cfk::{solve_involution, staircase, staircase_complex, staircase_with_box, GradedMap, KnotComplex, Mode, PhiIotaComplex};
use crate::core_algebra::{Bigrading, BitVec, Echelon, F2Matrix};
use crate::error::{Error, Result};
use crate::morphisms::{homotopic_endo, local_map_exists, self_local_space, Homotopy, Obstruction};

/// Seed used by the greedy search.
pub const GREEDY_SEED: u64 = 0x5eed_c0de;
/// Iteration cap for the greedy search.
pub const GREEDY_ROUNDS: usize = 64;

pub const GREEDY_CAVEAT: &str = "greedy nonmaximal — unverified";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactStandard,
    Greedy,
}

#[derive(Clone, Debug)]
pub struct ConnectedResult {
    /// An `ι`-complex (`φ` is the identity).
    pub conn: PhiIotaComplex,
    /// Local map from the input to `conn`.
    pub projection: GradedMap,
    /// Local map from `conn` to the input with `projection ∘ inclusion = id`.
    pub inclusion: GradedMap,
    pub method: Method,
    /// Recognized shape of `conn`, when it is in standard form.
    pub shape: Option<String>,
    pub caveat: Option<&'static str>,
}

/// Connected complex of the `ι`-complex underlying `x`.
pub fn connected_complex(x: &PhiIotaComplex) -> Result<ConnectedResult> {
    connected_complex_seeded(x, GREEDY_SEED)
}

pub fn connected_complex_seeded(x: &PhiIotaComplex, seed: u64) -> Result<ConnectedResult> {
    let x = x.forget_phi();
    if let Ok(form) = recognize_standard(x.complex()) {
        if let Some(res) = standard_candidate(&x, &form)? {
            return Ok(res);
        }
    }
    greedy(&x, seed)
}

fn middle_grading(form: &StandardForm, c: &KnotComplex) -> Bigrading {
    let n = form.staircase.steps.len();
    c.gradings()[form.staircase.generators[n]]
}

/// Staircase plus the odd-length boxes that occur an odd number of times at the
/// middle of the staircase.
fn candidate_model(x: &PhiIotaComplex, form: &StandardForm) -> Result<PhiIotaComplex> {
    let st = &form.staircase;
    let middle = middle_grading(form, x.complex());
    let mut lengths: Vec<u32> = Vec::new();
    let mut others: Vec<&BoxShape> = Vec::new();
    let mut groups: std::collections::BTreeMap<(u32, Bigrading), usize> = Default::default();
    for b in &form.boxes {
        if b.length % 2 == 1 {
            *groups.entry((b.length, b.shift)).or_default() += 1;
        }
    }
    for ((length, shift), count) in groups {
        if count % 2 == 0 {
            continue;
        }
        let l = length as i32;
        let a_grading = shift + Bigrading::new(1 - l, 1 - l);
        let d_grading = shift + Bigrading::new(l - 1, l - 1);
        let anchored = if st.positive { a_grading } else { d_grading };
        if anchored == middle {
            lengths.push(length);
        } else if shift.gr_u == shift.gr_v {
            others.push(form.boxes.iter().find(|b| b.length == length && b.shift == shift).expect("group member"));
        }
    }
    let mirror_steps: Vec<(u32, u32)> = st.steps.clone();
    let build_positive = |lengths: &[u32]| -> Result<PhiIotaComplex> {
        match lengths {
            [] => staircase(&mirror_steps),
            [l] => staircase_with_box(&mirror_steps, *l),
            _ => Err(Error::Nonstandard("several boxes at the middle".into())),
        }
    };
    if others.is_empty() && lengths.len() <= 1 {
        let model = if st.positive {
            build_positive(&lengths)?
        } else {
            let dual = build_positive(&lengths)?.dual();
            if lengths.is_empty() {
                dual
            } else {
                let m = 2 * st.steps.len() + 1;
                let mut perm: Vec<usize> = (0..m).collect();
                perm.extend([m + 3, m + 2, m + 1, m]);
                dual.permuted(&perm)
            }
        };
        return Ok(model);
    }
    let mut c = if st.positive {
        staircase_complex(&st.steps)
    } else {
        staircase_complex(&st.steps).dual()
    };
    for l in &lengths {
        let li = *l as i32;
        let shift = if st.positive {
            middle - Bigrading::new(1 - li, 1 - li)
        } else {
            middle - Bigrading::new(li - 1, li - 1)
        };
        c = c.direct_sum(&crate::cfk::box_complex(*l).shifted(shift));
    }
    for b in others {
        c = c.direct_sum(&crate::cfk::box_complex(b.length).shifted(b.shift));
    }
    let ids: Vec<String> = (0..c.len()).map(|i| format!("g{i}")).collect();
    let c = c.relabeled(ids)?;
    let iota = solve_involution(&c)?.iota;
    PhiIotaComplex::iota_complex(c, iota)
}

fn standard_candidate(x: &PhiIotaComplex, form: &StandardForm) -> Result<Option<ConnectedResult>> {
    let model = candidate_model(x, form)?.with_name(format!("conn({})", x.name()));
    let Ok(to_model) = local_map_exists(x, &model, false)? else {
        return Ok(None);
    };
    let Ok(from_model) = local_map_exists(&model, x, false)? else {
        return Ok(None);
    };
    let p = to_model.map;
    let i = from_model.map;
    let Some(pi_inv) = p.compose(&i).inverse() else {
        return Ok(None);
    };
    let inclusion = i.compose(&pi_inv);
    let shape = recognize_standard(model.complex()).ok().map(|f| f.to_string());
    Ok(Some(ConnectedResult {
        conn: model,
        projection: p,
        inclusion,
        method: Method::ExactStandard,
        shape,
        caveat: None,
    }))
}

/// Restrict to the image of the Fitting projection of a singular self-local map.
fn shrink(c: &PhiIotaComplex, g: &GradedMap) -> Option<(PhiIotaComplex, GradedMap, GradedMap)> {
    let n = c.len();
    let mut f = g.clone();
    let mut rank = f.bits().rank();
    loop {
        let next = g.compose(&f);
        let r = next.bits().rank();
        f = next;
        if r == rank {
            break;
        }
        rank = r;
    }
    if rank == n || rank == 0 {
        return None;
    }
    let gr = c.complex().gradings();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| (-(gr[j].gr_u + gr[j].gr_v), j));
    let mut span = Echelon::new(n);
    let mut chosen = Vec::new();
    for j in order {
        if span.insert(f.bits().col(j)) {
            chosen.push(j);
        }
    }
    chosen.sort_unstable();
    let sub_gr: Vec<Bigrading> = chosen.iter().map(|&j| gr[j]).collect();
    let cols: Vec<BitVec> = chosen.iter().map(|&j| f.bits().col(j)).collect();
    let e = GradedMap::new(sub_gr.clone(), gr.to_vec(), Mode::Straight, Bigrading::ZERO, F2Matrix::from_cols(n, &cols)).ok()?;
    let kernel = crate::core_algebra::kernel(f.bits());
    let mut all = cols.clone();
    all.extend(kernel);
    let full = F2Matrix::from_cols(n, &all).inverse()?;
    let top: Vec<usize> = (0..chosen.len()).collect();
    let everything: Vec<usize> = (0..n).collect();
    let l_bits = full.select(&top, &everything);
    let l = GradedMap::new(gr.to_vec(), sub_gr.clone(), Mode::Straight, Bigrading::ZERO, l_bits).ok()?;
    let a = l.compose(&f).compose(&e);
    let a_inv = a.inverse()?;
    let d = l.compose(c.complex().differential()).compose(&e);
    let iota = l.compose(&f).compose(c.iota()).compose(&e).compose(&a_inv);
    let ids: Vec<String> = chosen.iter().map(|&j| c.complex().ids()[j].clone()).collect();
    let complex = KnotComplex::from_bits(c.name(), ids, sub_gr, d.bits().clone()).ok()?;
    let sub = PhiIotaComplex::iota_complex(complex, iota).ok()?;
    Some((sub, l.compose(&f), e.compose(&a_inv)))
}

fn greedy(x: &PhiIotaComplex, seed: u64) -> Result<ConnectedResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = x.clone();
    let mut projection = x.complex().identity();
    let mut inclusion = x.complex().identity();
    for _ in 0..GREEDY_ROUNDS {
        let space = self_local_space(&current)?;
        let locals: Vec<&GradedMap> = space.basis.iter().zip(&space.local).filter(|(_, l)| **l).map(|(m, _)| m).collect();
        let a = UComplex::a0(&current)?;
        let (k, t) = a.tower_cycle()?;
        let mut candidates: Vec<GradedMap> = locals.iter().map(|m| (*m).clone()).collect();
        for _ in 0..GREEDY_ROUNDS {
            let mut m = current.complex().zero_map(current.complex(), Mode::Straight, Bigrading::ZERO);
            for b in &space.basis {
                if rng.gen_bool(0.5) {
                    m = m.add(b);
                }
            }
            candidates.push(m);
        }
        let mut progressed = false;
        for g in candidates {
            if g.bits().rank() == current.len() || !a.is_nontorsion(k, &g.apply(&t))? {
                continue;
            }
            if let Some((sub, p, i)) = shrink(&current, &g) {
                projection = p.compose(&projection);
                inclusion = inclusion.compose(&i);
                current = sub;
                progressed = true;
                break;
            }
        }
        if !progressed {
            break;
        }
    }
    let shape = recognize_standard(current.complex()).ok().map(|f| f.to_string());
    Ok(ConnectedResult {
        conn: current.with_name(format!("conn({})", x.name())),
        projection,
        inclusion,
        method: Method::Greedy,
        shape,
        caveat: Some(GREEDY_CAVEAT),
    })
}

/// Whether `s ≄ id` on the connected complex.
#[derive(Clone, Debug)]
pub struct SNontriviality {
    pub nontrivial: bool,
    pub method: Method,
    pub conn_shape: Option<String>,
    pub conn_generators: usize,
    /// Homotopy `s ≃ id` in the trivial case.
    pub homotopy: Option<Homotopy>,
    /// Infeasibility certificate in the nontrivial case.
    pub obstruction: Option<Obstruction>,
    pub caveat: Option<&'static str>,
}

pub fn s_nontrivial(x: &PhiIotaComplex) -> Result<SNontriviality> {
    s_nontrivial_seeded(x, GREEDY_SEED)
}

pub fn s_nontrivial_seeded(x: &PhiIotaComplex, seed: u64) -> Result<SNontriviality> {
    let conn = connected_complex_seeded(x, seed)?;
    let c = conn.conn.complex();
    let s = c.sarkar_map();
    let (homotopy, obstruction) = match homotopic_endo(c, &s, &c.identity()) {
        Ok(h) => (Some(h), None),
        Err(o) => (None, Some(o)),
    };
    Ok(SNontriviality {
        nontrivial: obstruction.is_some(),
        method: conn.method,
        conn_shape: conn.shape,
        conn_generators: c.len(),
        homotopy,
        obstruction,
        caveat: conn.caveat,
    })
}
