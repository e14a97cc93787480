//! Model complexes: boxes, staircases, thin-knot models and the figure-eight knot with
//! its two involutions.

use super::complex::KnotComplex;
use super::involution::solve_involution;
use super::map::Mode;
use super::phi_iota::PhiIotaComplex;
use crate::core_algebra::{Bigrading, Monomial};
use crate::error::{Error, Result};

/// Builder inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Unknot,
    /// A positive staircase with steps `(h_i, v_i)`: `∂y_{2i+1} = U^h y_{2i} + V^v y_{2i+2}`.
    Staircase(Vec<(u32, u32)>),
    /// The torus knot `T(2, 2n+1)`.
    Torus(u32),
    /// Staircase of `|tau|` unit steps (mirrored for negative `tau`), plus one unit box when
    /// `odd_boxes` is set.
    ThinModel { tau: i32, odd_boxes: bool },
    /// A palindromic staircase with one box of side `length` attached at its middle.
    StaircaseWithBox { steps: Vec<(u32, u32)>, length: u32 },
    FigureEight,
}

pub fn build(model: &Model) -> Result<PhiIotaComplex> {
    match model {
        Model::Unknot => Ok(PhiIotaComplex::trivial()),
        Model::Staircase(steps) => staircase(steps),
        Model::Torus(n) => torus(*n),
        Model::ThinModel { tau, odd_boxes } => thin_model(*tau, *odd_boxes),
        Model::StaircaseWithBox { steps, length } => staircase_with_box(steps, *length),
        Model::FigureEight => Ok(figure_eight_with_actions()),
    }
}

/// The box of side `length`:
/// `∂a = U^ℓ b + V^ℓ c`, `∂b = V^ℓ d`, `∂c = U^ℓ d`.
pub fn box_complex(length: u32) -> KnotComplex {
    assert!(length >= 1, "box side must be positive");
    let l = length as i32;
    let gens = vec![
        ("a".to_string(), Bigrading::new(1 - l, 1 - l)),
        ("b".to_string(), Bigrading::new(l, -l)),
        ("c".to_string(), Bigrading::new(-l, l)),
        ("d".to_string(), Bigrading::new(l - 1, l - 1)),
    ];
    let (u, v) = (Monomial::new(length, 0), Monomial::new(0, length));
    KnotComplex::from_entries(format!("box({length})"), gens, &[(0, 1, u), (0, 2, v), (1, 3, v), (2, 3, u)])
        .expect("box is a valid complex")
}

fn staircase_ids(n: usize) -> Vec<String> {
    if n == 0 {
        vec!["x".to_string()]
    } else {
        (0..=2 * n).map(|k| format!("y{k}")).collect()
    }
}

/// The positive staircase complex with the given steps.
pub fn staircase_complex(steps: &[(u32, u32)]) -> KnotComplex {
    let n = steps.len();
    let total_v: i32 = steps.iter().map(|s| s.1 as i32).sum();
    let mut gr = vec![Bigrading::new(0, -2 * total_v)];
    for &(h, v) in steps {
        let y_odd = *gr.last().expect("nonempty") + Bigrading::new(1 - 2 * h as i32, 1);
        gr.push(y_odd);
        gr.push(y_odd + Bigrading::new(-1, 2 * v as i32 - 1));
    }
    let mut entries = Vec::new();
    for (i, &(h, v)) in steps.iter().enumerate() {
        entries.push((2 * i + 1, 2 * i, Monomial::new(h, 0)));
        entries.push((2 * i + 1, 2 * i + 2, Monomial::new(0, v)));
    }
    let gens = staircase_ids(n).into_iter().zip(gr).collect();
    let name = if n == 0 {
        "dot".to_string()
    } else {
        let s: Vec<String> = steps.iter().map(|(h, v)| format!("{h}.{v}")).collect();
        format!("staircase[{}]", s.join(","))
    };
    KnotComplex::from_entries(name, gens, &entries).expect("staircase is a valid complex")
}

fn is_palindromic(steps: &[(u32, u32)]) -> bool {
    let n = steps.len();
    (0..n).all(|i| steps[i].0 == steps[n - 1 - i].1)
}

/// A staircase with its reflection involution `y_k ↦ y_{2n-k}`.
pub fn staircase(steps: &[(u32, u32)]) -> Result<PhiIotaComplex> {
    let c = staircase_complex(steps);
    if !is_palindromic(steps) {
        return Err(Error::InvalidArgument(
            "staircase steps must be symmetric to carry an involution".into(),
        ));
    }
    let m = c.len();
    let ones: Vec<_> = (0..m).map(|k| (k, m - 1 - k)).collect();
    let iota = c.endomorphism("iota", Mode::Skew, &ones)?;
    PhiIotaComplex::iota_complex(c, iota)
}

/// `T(2, 2n+1)`: the staircase of `n` unit steps.
pub fn torus(n: u32) -> Result<PhiIotaComplex> {
    let x = staircase(&vec![(1, 1); n as usize])?;
    Ok(x.with_name(format!("T2_{}", 2 * n + 1)))
}

/// Staircase `⊕` one box of side `length`. The box generator `a` shares the bigrading of the
/// middle staircase generator when that generator is a sink, and `d` does when it is a source.
pub fn staircase_with_box(steps: &[(u32, u32)], length: u32) -> Result<PhiIotaComplex> {
    if !is_palindromic(steps) {
        return Err(Error::InvalidArgument("staircase steps must be symmetric".into()));
    }
    let st = staircase_complex(steps);
    let n = steps.len();
    let l = length as i32;
    let middle = st.gradings()[n];
    let middle_is_source = n % 2 == 1;
    let corner = if middle_is_source { l - 1 } else { 1 - l };
    let bx = box_complex(length).shifted(middle - Bigrading::new(corner, corner));
    let c = st.direct_sum(&bx).with_name(format!("{}+box({length})", st.name()));
    let m = st.len();
    let (a, b, cc, d) = (m, m + 1, m + 2, m + 3);
    let mut ones: Vec<(usize, usize)> = (0..m).filter(|&k| k != n).map(|k| (k, m - 1 - k)).collect();
    ones.extend([(n, n), (b, cc), (cc, b), (d, d), (a, a)]);
    if length % 2 == 1 {
        ones.extend([(n, d), (a, n)]);
        if middle_is_source {
            ones.extend([(b, n + 1), (cc, n - 1)]);
        } else if n > 0 {
            ones.extend([(n + 1, b), (n - 1, cc)]);
        }
    }
    let closed_form = c
        .endomorphism("iota", Mode::Skew, &ones)
        .and_then(|iota| PhiIotaComplex::iota_complex(c.clone(), iota))
        .and_then(|x| x.check_axioms().map(|_| x));
    match closed_form {
        Ok(x) => Ok(x),
        Err(_) => {
            let iota = solve_involution(&c)?.iota;
            PhiIotaComplex::iota_complex(c, iota)
        }
    }
}

/// Thin-knot model: `|tau|` unit steps plus a unit box when `odd_boxes`; negative `tau`
/// gives the mirror.
pub fn thin_model(tau: i32, odd_boxes: bool) -> Result<PhiIotaComplex> {
    let n = tau.unsigned_abs() as usize;
    let steps = vec![(1, 1); n];
    let positive = if odd_boxes {
        staircase_with_box(&steps, 1)?
    } else {
        staircase(&steps)?
    };
    let name = format!("thin({tau},{})", if odd_boxes { "odd" } else { "even" });
    if tau >= 0 {
        return Ok(positive.with_name(name));
    }
    let dual = positive.dual();
    if !odd_boxes {
        return Ok(dual.with_name(name));
    }
    let m = 2 * n + 1;
    let mut perm: Vec<usize> = (0..m).collect();
    perm.extend([m + 3, m + 2, m + 1, m]);
    let mut ids = staircase_ids(n);
    ids.extend(["a", "b", "c", "d"].map(String::from));
    dual.permuted(&perm).relabeled(ids).map(|x| x.with_name(name))
}

/// The figure-eight knot: a dot `x` and a unit box, with the knot involution `ι` and the
/// periodic involution `τ` (as `φ`).
///
/// `ι`: x↦x+d, a↦a+x, b↦c, c↦b, d↦d. `τ`: x↦x+d, a↦a+x, b↦b, c↦c, d↦d.
pub fn figure_eight_with_actions() -> PhiIotaComplex {
    let c = staircase_complex(&[]).direct_sum(&box_complex(1)).with_name("4_1");
    let (x, a, b, cc, d) = (0, 1, 2, 3, 4);
    let iota = c
        .endomorphism("iota", Mode::Skew, &[(x, x), (x, d), (a, a), (a, x), (b, cc), (cc, b), (d, d)])
        .expect("figure-eight iota");
    let tau = c
        .endomorphism("tau", Mode::Straight, &[(x, x), (x, d), (a, a), (a, x), (b, b), (cc, cc), (d, d)])
        .expect("figure-eight tau");
    let tau_inv = tau.inverse().expect("tau is invertible");
    PhiIotaComplex::with_phi_inverse(c, tau, tau_inv, iota).expect("figure-eight triple")
}

/// The figure-eight knot with `φ = id`.
pub fn figure_eight() -> PhiIotaComplex {
    figure_eight_with_actions().forget_phi()
}
