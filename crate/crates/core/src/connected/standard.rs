//! Recognition of complexes that split as one staircase plus boxes.

use std::fmt;

use serde::Serialize;

use crate::cfk::{GradedMap, KnotComplex, Mode};
use crate::core_algebra::{Bigrading, F2Matrix, Monomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircaseShape {
    /// `(h_i, v_i)` in path order; empty for a single dot.
    pub steps: Vec<(u32, u32)>,
    /// False for the dual (mirror) orientation.
    pub positive: bool,
    /// Generators in path order, as indices of the recognized basis.
    #[serde(skip)]
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxShape {
    pub length: u32,
    /// Offset from the standard box gradings.
    pub shift: Bigrading,
    /// `[a, b, c, d]` as indices of the recognized basis.
    #[serde(skip)]
    pub generators: [usize; 4],
}

#[derive(Clone, Debug)]
pub struct StandardForm {
    pub staircase: StaircaseShape,
    pub boxes: Vec<BoxShape>,
    /// Columns are the recognized basis vectors in the original basis.
    pub basis_change: GradedMap,
    pub basis_change_inverse: GradedMap,
    /// The complex rewritten in the recognized basis.
    pub reduced: KnotComplex,
    /// Elementary moves applied.
    pub moves: usize,
}

impl fmt::Display for StaircaseShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("dot");
        }
        let s: Vec<String> = self.steps.iter().map(|(h, v)| format!("{h}.{v}")).collect();
        write!(f, "{}staircase[{}]", if self.positive { "" } else { "-" }, s.join(","))
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.staircase)?;
        for b in &self.boxes {
            write!(f, " + box({})@{}", b.length, b.shift)?;
        }
        Ok(())
    }
}

/// Admissible elementary moves `g ← g + m·h`, ordered by `(g, h)`.
fn moves(c: &KnotComplex) -> Vec<(usize, usize)> {
    let id = c.identity();
    let mut out: Vec<(usize, usize)> = id.allowed_pairs().into_iter().filter(|(h, g)| h != g).map(|(h, g)| (g, h)).collect();
    out.sort_unstable();
    out
}

/// Apply `g ← g + m·h` to a differential: `P ∂ P` with `P = 1 + E_hg`.
fn apply_move(d: &mut F2Matrix, g: usize, h: usize) {
    for r in 0..d.rows() {
        if d.get(r, h) {
            d.toggle(r, g);
        }
    }
    let row_g = d.row(g).clone();
    d.row_mut(h).xor_assign(&row_g);
}

fn apply_to_basis(p: &mut F2Matrix, p_inv: &mut F2Matrix, g: usize, h: usize) {
    for r in 0..p.rows() {
        if p.get(r, h) {
            p.toggle(r, g);
        }
    }
    let row_g = p_inv.row(g).clone();
    p_inv.row_mut(h).xor_assign(&row_g);
}

/// Search for a basis exhibiting `staircase ⊕ boxes` by greedily minimizing the number of
/// arrows with elementary basis moves (with two-move lookahead).
pub fn recognize_standard(c: &KnotComplex) -> Result<StandardForm> {
    if !c.is_reduced() {
        return Err(Error::Nonstandard("complex is not reduced".into()));
    }
    let n = c.len();
    let all_moves = moves(c);
    let mut d = c.differential().bits().clone();
    let mut p = F2Matrix::identity(n);
    let mut p_inv = F2Matrix::identity(n);
    let mut count = 0;
    let limit = 4 * n * n + 16;
    loop {
        if count > limit {
            break;
        }
        let current = d.count_ones();
        let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
        for &(g, h) in &all_moves {
            let mut t = d.clone();
            apply_move(&mut t, g, h);
            let k = t.count_ones();
            if k < current && best.as_ref().is_none_or(|b| k < b.0) {
                best = Some((k, vec![(g, h)]));
            }
        }
        if best.is_none() && classify(c, &d).is_err() {
            'outer: for &(g1, h1) in &all_moves {
                let mut t1 = d.clone();
                apply_move(&mut t1, g1, h1);
                if t1.count_ones() > current + 2 {
                    continue;
                }
                for &(g2, h2) in &all_moves {
                    let mut t2 = t1.clone();
                    apply_move(&mut t2, g2, h2);
                    if t2.count_ones() < current {
                        best = Some((t2.count_ones(), vec![(g1, h1), (g2, h2)]));
                        break 'outer;
                    }
                }
            }
        }
        let Some((_, seq)) = best else {
            break;
        };
        for (g, h) in seq {
            apply_move(&mut d, g, h);
            apply_to_basis(&mut p, &mut p_inv, g, h);
            count += 1;
        }
    }
    let (staircase, boxes) = classify(c, &d)?;
    let gr = c.gradings().to_vec();
    let basis_change = GradedMap::new(gr.clone(), gr.clone(), Mode::Straight, Bigrading::ZERO, p)
        .expect("elementary moves are admissible");
    let basis_change_inverse = GradedMap::new(gr.clone(), gr, Mode::Straight, Bigrading::ZERO, p_inv)
        .expect("elementary moves are admissible");
    let reduced = c.change_basis(&basis_change, &basis_change_inverse);
    debug_assert_eq!(reduced.differential().bits(), &d);
    Ok(StandardForm {
        staircase,
        boxes,
        basis_change,
        basis_change_inverse,
        reduced,
        moves: count,
    })
}

struct Arrow {
    from: usize,
    to: usize,
    mono: Monomial,
}

fn classify(c: &KnotComplex, d: &F2Matrix) -> Result<(StaircaseShape, Vec<BoxShape>)> {
    let n = c.len();
    let gr = c.gradings();
    let arrows: Vec<Arrow> = d
        .ones()
        .map(|(h, g)| Arrow {
            from: g,
            to: h,
            mono: Monomial::between(gr[h], gr[g] + Bigrading::diagonal(-1)).expect("admissible arrow"),
        })
        .collect();
    if let Some(a) = arrows.iter().find(|a| !a.mono.is_pure()) {
        return Err(Error::Nonstandard(format!(
            "arrow {}→{} carries a mixed monomial",
            c.ids()[a.from],
            c.ids()[a.to]
        )));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in &arrows {
        let (x, y) = (find(&mut parent, a.from), find(&mut parent, a.to));
        if x != y {
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut root_index = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_index[r] == usize::MAX {
            root_index[r] = components.len();
            components.push(Vec::new());
        }
        components[root_index[r]].push(v);
    }
    let mut staircase = None;
    let mut boxes = Vec::new();
    for comp in &components {
        let local: Vec<&Arrow> = arrows.iter().filter(|a| comp.contains(&a.from)).collect();
        if let Some(b) = as_box(comp, &local, gr) {
            boxes.push(b);
            continue;
        }
        let Some(s) = as_staircase(comp, &local) else {
            return Err(Error::Nonstandard(format!(
                "component containing `{}` is neither a box nor a staircase",
                c.ids()[comp[0]]
            )));
        };
        if staircase.replace(s).is_some() {
            return Err(Error::Nonstandard("more than one staircase component".into()));
        }
    }
    let staircase = staircase.ok_or_else(|| Error::Nonstandard("no staircase component".into()))?;
    Ok((staircase, boxes))
}

fn as_box(comp: &[usize], arrows: &[&Arrow], gr: &[Bigrading]) -> Option<BoxShape> {
    if comp.len() != 4 || arrows.len() != 4 {
        return None;
    }
    let out = |v: usize| arrows.iter().filter(|a| a.from == v).count();
    let inn = |v: usize| arrows.iter().filter(|a| a.to == v).count();
    let a = *comp.iter().find(|&&v| out(v) == 2 && inn(v) == 0)?;
    let d = *comp.iter().find(|&&v| inn(v) == 2 && out(v) == 0)?;
    let from_a: Vec<&&Arrow> = arrows.iter().filter(|x| x.from == a).collect();
    let (ab, ac) = if from_a[0].mono.v_exp == 0 {
        (from_a[0], from_a[1])
    } else {
        (from_a[1], from_a[0])
    };
    let (b, c) = (ab.to, ac.to);
    let l = ab.mono.u_exp;
    if l == 0 || ab.mono != Monomial::new(l, 0) || ac.mono != Monomial::new(0, l) {
        return None;
    }
    let bd = arrows.iter().find(|x| x.from == b && x.to == d)?;
    let cd = arrows.iter().find(|x| x.from == c && x.to == d)?;
    if bd.mono != Monomial::new(0, l) || cd.mono != Monomial::new(l, 0) {
        return None;
    }
    let li = l as i32;
    Some(BoxShape {
        length: l,
        shift: gr[a] - Bigrading::new(1 - li, 1 - li),
        generators: [a, b, c, d],
    })
}

fn as_staircase(comp: &[usize], arrows: &[&Arrow]) -> Option<StaircaseShape> {
    if comp.len() == 1 {
        return Some(StaircaseShape {
            steps: vec![],
            positive: true,
            generators: comp.to_vec(),
        });
    }
    if comp.len().is_multiple_of(2) || arrows.len() != comp.len() - 1 {
        return None;
    }
    let degree = |v: usize| arrows.iter().filter(|a| a.from == v || a.to == v).count();
    if comp.iter().any(|&v| degree(v) > 2) {
        return None;
    }
    let ends: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) == 1).collect();
    if ends.len() != 2 {
        return None;
    }
    let touching = |v: usize| arrows.iter().find(|a| a.from == v || a.to == v).expect("endpoint arrow");
    let positive = touching(ends[0]).to == ends[0];
    let start = *ends
        .iter()
        .find(|&&v| touching(v).mono.v_exp == 0)
        .unwrap_or(&ends[0]);
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < comp.len() {
        let next = arrows.iter().find_map(|a| {
            if a.from == cur && a.to != prev {
                Some(a.to)
            } else if a.to == cur && a.from != prev {
                Some(a.from)
            } else {
                None
            }
        })?;
        prev = cur;
        cur = next;
        order.push(cur);
    }
    let arrow = |x: usize, y: usize| arrows.iter().find(|a| a.from == x && a.to == y);
    let mut steps = Vec::new();
    for i in 0..(order.len() - 1) / 2 {
        let (y0, y1, y2) = (order[2 * i], order[2 * i + 1], order[2 * i + 2]);
        let (first, second) = if positive {
            (arrow(y1, y0)?, arrow(y1, y2)?)
        } else {
            (arrow(y0, y1)?, arrow(y2, y1)?)
        };
        if first.mono.v_exp != 0 || second.mono.u_exp != 0 || first.mono.u_exp == 0 || second.mono.v_exp == 0 {
            return None;
        }
        steps.push((first.mono.u_exp, second.mono.v_exp));
    }
    Some(StaircaseShape {
        steps,
        positive,
        generators: order,
    })
}
