//! Test-side oracles, written without the library's linear algebra or A0 code.
#![allow(dead_code)]

use corkscrew::cfk::{
    figure_eight, figure_eight_with_actions, staircase, staircase_with_box, thin_model, torus, GradedMap, Mode,
    PhiIotaComplex,
};
use corkscrew::core_algebra::{Bigrading, F2Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense GF(2) rows.
type Row = Vec<bool>;

fn xor_into(a: &mut Row, b: &Row) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= *y;
    }
}

/// Null space of a `rows × cols` matrix given as rows.
pub fn null_space(m: &[Row], cols: usize) -> Vec<Row> {
    let mut a: Vec<Row> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c]) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] {
                xor_into(row, &pivot);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![false; cols];
            v[f] = true;
            for (i, &pc) in pivots.iter().enumerate() {
                if a[i][f] {
                    v[pc] = true;
                }
            }
            v
        })
        .collect()
}

/// Is `v` in the span of `vectors`?
pub fn in_span(vectors: &[Row], v: &Row) -> bool {
    let mut basis: Vec<(usize, Row)> = Vec::new();
    let reduce = |basis: &[(usize, Row)], x: &Row| {
        let mut x = x.clone();
        for (p, b) in basis {
            if x[*p] {
                xor_into(&mut x, b);
            }
        }
        x
    };
    for w in vectors {
        let w = reduce(&basis, w);
        if let Some(p) = w.iter().position(|&b| b) {
            for (_, b) in basis.iter_mut() {
                if b[p] {
                    xor_into(b, &w);
                }
            }
            basis.push((p, w));
        }
    }
    !reduce(&basis, v).iter().any(|&b| b)
}

fn bit(m: &F2Matrix, r: usize, c: usize) -> bool {
    m.get(r, c)
}

/// Generators whose `U^i V^j`-multiple lies in Alexander grading zero at grading `k`.
fn a0_slice(gr: &[Bigrading], k: i32) -> Vec<usize> {
    (0..gr.len())
        .filter(|&g| {
            let (du, dv) = (gr[g].gr_u - k, gr[g].gr_v - k);
            du >= 0 && dv >= 0 && du % 2 == 0 && dv % 2 == 0
        })
        .collect()
}

/// Brute-force δ: the top grading `k` of a cylinder cycle `(x, y, z)` whose `x` survives
/// in the homology of the complex with `U = V = 1`; returns `-k/2`.
pub fn brute_delta(x: &PhiIotaComplex) -> i32 {
    let c = x.complex();
    let gr = c.gradings();
    let n = c.len();
    let d = c.differential().bits();
    let phi = x.phi().bits();
    let iota = x.iota().bits();
    let boundaries1: Vec<Row> = (0..n).map(|g| (0..n).map(|h| bit(d, h, g)).collect()).collect();
    let hi = gr.iter().map(|g| g.gr_u.min(g.gr_v)).max().unwrap();
    let lo = gr.iter().map(|g| g.gr_u.min(g.gr_v)).min().unwrap();
    let mut k = hi;
    while k >= lo - 4 * n as i32 - 8 {
        let xs = a0_slice(gr, k);
        let ys = a0_slice(gr, k + 1);
        let below = a0_slice(gr, k - 1);
        let (nx, ny) = (xs.len(), ys.len());
        let cols = nx + 2 * ny;
        let mut rows: Vec<Row> = Vec::new();
        for &h in &below {
            let mut r = vec![false; cols];
            for (i, &g) in xs.iter().enumerate() {
                r[i] = bit(d, h, g);
            }
            rows.push(r);
        }
        for (block, map) in [(0, phi), (1, iota)] {
            for &h in &xs {
                let mut r = vec![false; cols];
                for (i, &g) in xs.iter().enumerate() {
                    r[i] = bit(map, h, g) ^ (h == g);
                }
                for (j, &g) in ys.iter().enumerate() {
                    r[nx + block * ny + j] = bit(d, h, g);
                }
                rows.push(r);
            }
        }
        for v in null_space(&rows, cols) {
            let mut full = vec![false; n];
            for (i, &g) in xs.iter().enumerate() {
                full[g] = v[i];
            }
            if full.iter().any(|&b| b) && !in_span(&boundaries1, &full) {
                assert!(k % 2 == 0, "odd top grading {k}");
                return -k / 2;
            }
        }
        k -= 1;
    }
    panic!("no nontorsion cylinder class found for {}", x.name());
}

/// A random grading-preserving automorphism built from elementary moves, with its inverse.
pub fn random_basis_change(gr: &[Bigrading], rng: &mut ChaCha8Rng, moves: usize) -> (GradedMap, GradedMap) {
    let id = GradedMap::identity(gr);
    let pairs: Vec<(usize, usize)> = id.allowed_pairs().into_iter().filter(|(h, g)| h != g).collect();
    let mut p = id.clone();
    let mut p_inv = id.clone();
    if pairs.is_empty() {
        return (p, p_inv);
    }
    for _ in 0..moves {
        let (h, g) = pairs[rng.gen_range(0..pairs.len())];
        let e = id.with_bits(F2Matrix::from_entries(gr.len(), gr.len(), &[(h, g)])).unwrap();
        let step = id.add(&e);
        p = p.compose(&step);
        p_inv = step.compose(&p_inv);
    }
    (p, p_inv)
}

/// Conjugate a triple by a random basis change.
pub fn conjugate(x: &PhiIotaComplex, seed: u64, moves: usize) -> PhiIotaComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (p, p_inv) = random_basis_change(x.complex().gradings(), &mut rng, moves);
    x.change_basis(&p, &p_inv)
}

/// Small triples used across property tests.
pub fn models() -> Vec<PhiIotaComplex> {
    let k = figure_eight_with_actions();
    let plain = figure_eight();
    let s = plain.complex().sarkar_map();
    vec![
        PhiIotaComplex::trivial(),
        k.clone(),
        plain.clone(),
        plain.with_phi(s).unwrap().with_name("4_1[s]"),
        torus(1).unwrap(),
        torus(2).unwrap(),
        torus(1).unwrap().dual(),
        staircase(&[(1, 2), (2, 1)]).unwrap(),
        thin_model(-2, true).unwrap(),
        thin_model(3, true).unwrap(),
        thin_model(1, false).unwrap(),
        staircase_with_box(&[], 2).unwrap(),
        staircase_with_box(&[], 3).unwrap(),
        staircase_with_box(&[(1, 1)], 1).unwrap(),
        k.dual(),
    ]
}

/// Is `f` a grading-preserving straight self-map?
pub fn is_straight_endo(f: &GradedMap) -> bool {
    f.mode() == Mode::Straight && f.shift() == Bigrading::ZERO && f.source() == f.target()
}
