//! Acceptance criteria 1 to 11, one `criterion N: PASS|FAIL` line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{brute_delta, conjugate, in_span, models};
use corkscrew::a0_delta::{delta, delta_with, UComplex, WindowPolicy};
use corkscrew::cfk::{
    box_complex, figure_eight, figure_eight_with_actions, staircase_with_box, thin_model, torus, PhiIotaComplex,
};
use corkscrew::connected::{connected_complex, s_nontrivial, Method};
use corkscrew::core_algebra::{BitVec, Echelon, F2Matrix};
use corkscrew::io_cli::{bundled_complex, bundled_table, census, run};
use corkscrew::morphisms::local_map_exists;
use corkscrew::verdict::{
    cor13_arithmetic, cor51_rule, split_routes, thin_parity, torus_sum_invariants, verdict_delta, verdict_gompf,
    verdict_periodic, verdict_split, Conclusion, Settings, Verdict,
};
use serde_json::Value;
use sha2::{Digest, Sha256};

const CENSUS: [&str; 17] = [
    "4_1", "5_2", "6_3", "7_4", "7_5", "7_7", "8_1", "8_2", "8_6", "8_7", "8_12", "8_13", "8_14", "8_15", "8_17", "8_18",
    "8_21",
];

fn within(start: Instant, limit: Duration, what: &str) {
    let t = start.elapsed();
    assert!(t < limit, "{what} took {t:?}, limit {limit:?}");
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("corkscrew").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cli_json(args: &[&str]) -> Value {
    let (code, out, err) = cli(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn vector(ids: &[String], terms: &[&str]) -> BitVec {
    let idx = terms.iter().map(|t| ids.iter().position(|i| i == t).unwrap_or_else(|| panic!("no generator {t}")));
    let mut v = BitVec::zeros(ids.len());
    for i in idx {
        v.toggle(i);
    }
    v
}

fn c1_box_sarkar() {
    let start = Instant::now();
    let b = box_complex(1);
    let s = b.sarkar_map();
    let ids = b.ids();
    for (g, id) in ids.iter().enumerate() {
        let image: Vec<&str> = s.bits().col(g).ones().map(|h| ids[h].as_str()).collect();
        let expected: Vec<&str> = if id == "a" { vec!["a", "d"] } else { vec![id.as_str()] };
        assert_eq!(image, expected, "s({id})");
    }
    assert!(s.entries().iter().all(|(_, _, m)| m.is_unit()));
    within(start, Duration::from_secs(1), "box Sarkar map");
}

/// `(class, ι image, τ|τ image)`; the fourth class reads `b|c + c|b` (a cycle), not `b|b + c|c`.
const ACTIONS: [(&[&str], &[&str], &[&str]); 5] = [
    (&["x|x"], &["x|x", "x|d", "d|x", "d|d"], &["x|x", "x|d", "d|x", "d|d"]),
    (&["x|d"], &["x|d", "d|d"], &["x|d", "d|d"]),
    (&["d|x"], &["d|x", "d|d"], &["d|x", "d|d"]),
    (
        &["a|d", "d|a", "b|c", "c|b"],
        &["a|d", "d|a", "b|c", "c|b", "x|d", "d|x", "d|d"],
        &["a|d", "d|a", "b|c", "c|b", "x|d", "d|x"],
    ),
    (&["d|d"], &["d|d"], &["d|d"]),
];

fn figure_eight_pair() -> (PhiIotaComplex, UComplex) {
    let k = figure_eight_with_actions();
    let kk = k.tensor(&k);
    let a = UComplex::a0(&kk).unwrap();
    (kk, a)
}

fn c2_a0_actions() {
    let start = Instant::now();
    let (kk, a) = figure_eight_pair();
    assert_eq!(kk.len(), 25);
    let h = a.homology().unwrap();
    let ids = a.ids().to_vec();
    assert_eq!(h.tower_count(), 1);
    assert_eq!(h.torsion.len(), 4);
    assert!(h.torsion.iter().all(|t| t.grading == 0 && t.order == Some(1)));
    assert_eq!(h.towers[0].grading, 0);
    assert_eq!(h.dimension(0), 5);
    for (k, dim) in h.graded_dimensions() {
        if k != 0 {
            assert!(k < 0 && k % 2 == 0 && dim == 1, "extra homology in grading {k}");
        }
    }
    let classes: Vec<BitVec> = ACTIONS.iter().map(|(c, _, _)| vector(&ids, c)).collect();
    let coords: Vec<BitVec> = classes.iter().map(|v| h.coordinates(0, v).expect("class is a cycle")).collect();
    assert_eq!(Echelon::from_vectors(5, coords.iter().cloned()).rank(), 5, "classes span H_0");
    for (i, v) in classes.iter().enumerate() {
        assert_eq!(a.is_nontorsion(0, v).unwrap(), i == 0, "nontorsion status of class {i}");
    }
    let (iota, tau) = (a.iota().unwrap(), a.phi().unwrap());
    for (i, (_, iota_image, tau_image)) in ACTIONS.iter().enumerate() {
        let same = |m: &F2Matrix, expected: &[&str]| {
            h.coordinates(0, &m.mul_vec(&classes[i])) == h.coordinates(0, &vector(&ids, expected))
        };
        assert!(same(iota, iota_image), "ι row {i}");
        assert!(same(tau, tau_image), "τ|τ row {i}");
    }
    within(start, Duration::from_secs(10), "A0 actions");
}

fn c3_pipeline() {
    let start = Instant::now();
    let (kk, a) = figure_eight_pair();
    let h = a.homology().unwrap();
    let ids = a.ids().to_vec();
    let reps = h.representatives(0).to_vec();
    let dim = reps.len();
    let act = |m: &F2Matrix| {
        let cols: Vec<BitVec> = reps.iter().map(|r| h.coordinates(0, &m.mul_vec(r)).unwrap()).collect();
        F2Matrix::from_cols(dim, &cols)
    };
    let fixed = corkscrew::core_algebra::kernel(&act(a.iota().unwrap()).add(&F2Matrix::identity(dim)));
    // As printed, the first class also carries `[x|d]`; by the table rows its ι image then
    // picks up `[d|d]`, so the consistent first class drops `[x|d]`. The span is unaffected
    // by adding the other two classes.
    let as_printed = vector(&ids, &["x|x", "x|d", "a|d", "d|a", "b|c", "c|b"]);
    let iota = a.iota().unwrap();
    assert_ne!(h.coordinates(0, &iota.mul_vec(&as_printed)), h.coordinates(0, &as_printed));
    let spanning: [&[&str]; 3] = [&["x|x", "a|d", "d|a", "b|c", "c|b"], &["x|d", "d|x"], &["d|d"]];
    let listed: Vec<BitVec> = spanning.iter().map(|c| h.coordinates(0, &vector(&ids, c)).unwrap()).collect();
    let fixed_span = Echelon::from_vectors(dim, fixed.iter().cloned());
    let listed_span = Echelon::from_vectors(dim, listed.iter().cloned());
    assert_eq!(fixed_span.rank(), 3);
    assert_eq!(listed_span.rank(), 3);
    assert!(listed.iter().all(|v| fixed_span.contains(v)));
    let tau = a.phi().unwrap();
    for (i, c) in spanning.iter().enumerate() {
        let v = vector(&ids, c);
        let invariant = h.coordinates(0, &tau.mul_vec(&v)) == h.coordinates(0, &v);
        assert_eq!(invariant, i != 0, "τ|τ-invariance of class {i}");
        assert_eq!(a.is_nontorsion(0, &v).unwrap(), i == 0, "nontorsion status of class {i}");
    }
    let pinned = brute_delta(&kk);
    assert!(pinned > 0);
    for bump in [0, 1, 3, 8] {
        assert_eq!(delta_with(&kk, WindowPolicy { bump }).unwrap().delta, pinned, "window bump {bump}");
    }
    let v = verdict_delta(&kk, 1).unwrap();
    assert_eq!(v.conclusion, Conclusion::StrongCork);
    v.replay().unwrap();
    within(start, Duration::from_secs(30), "delta pipeline");
}

fn c4_census() {
    let start = Instant::now();
    let result = census(&bundled_table(), 8, &Settings::default()).unwrap();
    let mut got = result.selected.clone();
    let mut want: Vec<String> = CENSUS.iter().map(|s| s.to_string()).collect();
    got.sort();
    want.sort();
    assert_eq!(got, want);
    for absent in ["6_1", "8_3"] {
        assert!(result.entries.iter().any(|e| e.name == absent && !e.arithmetic && !e.s_nontrivial));
    }
    let out = cli_json(&["census", "--table", "bundled", "--max-crossings", "8"]);
    let names: Vec<&str> = out["results"]["selected"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(names, CENSUS.to_vec());
    within(start, Duration::from_secs(5), "census");
}

/// Seeded randomized sweep over the same properties as the proptest suite.
fn c5_properties() {
    let start = Instant::now();
    let ms = models();
    let mut cases = 0;
    for seed in 0..240u64 {
        let x = conjugate(&ms[seed as usize % ms.len()], seed, (seed % 31) as usize);
        let c = x.complex();
        let d = c.differential();
        assert!(d.compose(d).is_zero());
        let s = c.sarkar_map();
        assert!(c.is_chain_map(c, &s));
        assert!(corkscrew::morphisms::homotopic_endo(c, &s.compose(&s), &c.identity()).is_ok());
        x.check_axioms().unwrap();
        let iota = x.iota();
        assert!(corkscrew::morphisms::homotopic_endo(c, &iota.compose(iota), &s).is_ok());
        let dd = x.dual().dual();
        assert_eq!(dd.complex().differential(), d);
        assert_eq!(dd.iota(), x.iota());
        assert_eq!(dd.phi(), x.phi());
        cases += 1;
    }
    for x in &ms {
        x.check_axioms().unwrap();
        cases += 1;
    }
    assert!(cases >= 200);
    within(start, Duration::from_secs(120), "property sweep");
}

fn c6_delta_vs_local() {
    let start = Instant::now();
    let ms = models();
    let mut xs: Vec<PhiIotaComplex> = ms.clone();
    xs.push(figure_eight().tensor(&figure_eight()));
    xs.push(figure_eight_with_actions().tensor(&figure_eight_with_actions()));
    for seed in 0..8u64 {
        xs.push(conjugate(&ms[(seed as usize * 5) % ms.len()], seed, 25));
        let t = ms[seed as usize % 6].tensor(&ms[(seed as usize + 2) % 6].dual());
        xs.push(conjugate(&t, seed, 40));
    }
    assert!(xs.len() >= 20);
    let trivial = PhiIotaComplex::trivial();
    for x in &xs {
        let d = delta(x).unwrap().delta;
        assert_eq!(d, brute_delta(x), "{}", x.name());
        let local = local_map_exists(&trivial, x, false).unwrap().is_ok();
        assert_eq!(d == 0, local, "{}: δ = {d}, local map {local}", x.name());
    }
    within(start, Duration::from_secs(120), "δ vs local maps");
}

fn c7_split_routes() {
    let start = Instant::now();
    let ms = models();
    let plain = figure_eight();
    let with_s = plain.with_phi(plain.complex().sarkar_map()).unwrap();
    let mut pairs = vec![(with_s.clone(), plain.dual()), (plain.clone(), plain.dual())];
    for i in 0..6 {
        for j in 0..2 {
            pairs.push((ms[i].clone(), ms[(i + j + 1) % 6].dual()));
        }
    }
    assert!(pairs.len() >= 10);
    for (x1, x2) in &pairs {
        let routes = split_routes(x1, x2).unwrap();
        assert_eq!(routes.tensor_delta, brute_delta(&x1.tensor(x2)), "{} ⊗ {}", x1.name(), x2.name());
        let v = verdict_split(x1, x2, 1).unwrap();
        assert_eq!(v.is_strong_cork(), !routes.local_map_exists, "{} ⊗ {}", x1.name(), x2.name());
    }
    let gompf = split_routes(&with_s, &plain.dual()).unwrap();
    assert!(!gompf.local_map_exists && gompf.tensor_delta > 0);
    within(start, Duration::from_secs(120), "split routes");
}

fn c8_shapes() {
    let start = Instant::now();
    let k = connected_complex(&figure_eight()).unwrap();
    assert_eq!(k.method, Method::ExactStandard);
    assert_eq!(k.shape.as_deref(), Some("dot + box(1)@(0, 0)"));
    let t = torus(1).unwrap();
    let tt = connected_complex(&t.tensor(&t)).unwrap();
    assert_eq!(tt.method, Method::ExactStandard);
    assert_eq!(tt.shape.as_deref(), Some("staircase[1.1,1.1] + box(1)@(-2, -2)"));
    within(start, Duration::from_secs(10), "connected shapes");
}

fn c9_families() {
    let start = Instant::now();
    for s in 1..=8u32 {
        for n in 0..=5u32 {
            let (arf, tau, det) = torus_sum_invariants(s, n);
            let x = thin_model(tau, thin_parity(det, tau).unwrap()).unwrap();
            let homological = s_nontrivial(&x).unwrap().nontrivial;
            let rule = cor51_rule(s, n);
            assert_eq!(rule, n % 2 == 1 && matches!(s % 4, 2 | 3), "rule for s={s} n={n}");
            assert_eq!(homological, rule, "s={s} n={n}");
            assert_eq!(cor13_arithmetic(arf, tau), rule, "s={s} n={n}");
        }
    }
    let staircases: [&[(u32, u32)]; 4] = [&[], &[(1, 1)], &[(1, 1), (1, 1)], &[(2, 2)]];
    for steps in staircases {
        for l in 1..=5u32 {
            let x = staircase_with_box(steps, l).unwrap();
            assert_eq!(s_nontrivial(&x).unwrap().nontrivial, l % 2 == 1, "{steps:?} box({l})");
        }
    }
    within(start, Duration::from_secs(60), "families");
}

fn c10_slice_witness() {
    let start = Instant::now();
    let out = cli_json(&["delta", "bundled:4_1x4_1_id"]);
    let r = &out["results"];
    assert_eq!(r["delta"], 0);
    assert_eq!(r["witness"]["grading"], 0);
    assert_eq!(r["local_map_from_trivial"], true);
    let x = bundled_complex("4_1x4_1_id").unwrap();
    let ids = x.complex().ids().to_vec();
    let part = |key: &str| -> BitVec {
        let terms: Vec<&str> = r["witness"][key].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        vector(&ids, &terms)
    };
    let (wx, wy, wz) = (part("x"), part("y"), part("z"));
    assert!(!wx.is_zero());
    let d = x.complex().differential().bits();
    assert!(d.mul_vec(&wx).is_zero());
    assert_eq!(d.mul_vec(&wy), wx.xor(&x.phi().bits().mul_vec(&wx)));
    assert_eq!(d.mul_vec(&wz), wx.xor(&x.iota().bits().mul_vec(&wx)));
    let n = ids.len();
    let boundaries: Vec<Vec<bool>> = (0..n).map(|g| (0..n).map(|h| d.get(h, g)).collect()).collect();
    assert!(!in_span(&boundaries, &(0..n).map(|i| wx.get(i)).collect()), "witness x is torsion");
    let (code, text, _) = cli(&["--format", "text", "delta", "bundled:4_1x4_1_id"]);
    assert_eq!(code, 0);
    assert!(text.contains("results.delta: 0") && text.contains("results.witness.x: ["));
    within(start, Duration::from_secs(10), "slice witness");
}

fn certificate_matches_reference(v: &Value) {
    let cert = &v["certificate"];
    let reference = v["certificate_ref"].as_str().expect("StrongCork without certificate reference");
    let kind = cert["kind"].as_str().unwrap();
    let digest = Sha256::digest(serde_json::to_string(cert).unwrap().as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(reference, format!("{kind}:{}", &hex[..16]));
}

fn check_gate(v: &Value, gated: bool, args: &[String]) {
    let conclusion = v["conclusion"].as_str().unwrap();
    if gated {
        assert_eq!(conclusion, "Inconclusive", "{args:?}");
        assert!(v["certificate_ref"].is_null());
    }
    if conclusion == "StrongCork" {
        certificate_matches_reference(v);
    }
}

fn c11_gates() {
    let start = Instant::now();
    let mut commands: Vec<(Vec<String>, bool)> = Vec::new();
    let ms = [-3i64, -2, -1, 1, 2, 3];
    for knot in ["4_1", "3_1", "6_1", "8_21"] {
        for m in ms {
            for i in -2i64..=3 {
                for j in [0i64, 5] {
                    let args = ["verdict", "gompf", "--knot", knot, "-m", &m.to_string(), "-i", &i.to_string(), "-j", &j.to_string()];
                    commands.push((args.map(String::from).to_vec(), m % 2 == 0 || i % 2 == 0));
                }
            }
        }
    }
    for m in ms {
        for i in -4i64..=5 {
            let args = ["verdict", "periodic", "--file", "bundled:4_1", "-m", &m.to_string(), "-i", &i.to_string()];
            commands.push((args.map(String::from).to_vec(), m % 2 == 0 || i.rem_euclid(4) == 0));
        }
        for file in ["bundled:4_1x4_1_tau", "bundled:4_1x4_1_id"] {
            let args = ["delta", file, "--m", &m.to_string()];
            commands.push((args.map(String::from).to_vec(), m % 2 == 0));
        }
    }
    for m in [1i64, 2, 3] {
        for (k1, k2) in [("bundled:4_1", "bundled:4_1"), ("bundled:T2_3", "bundled:T2_3"), ("bundled:4_1x4_1_tau", "bundled:unknot")] {
            let args = ["verdict", "split", "--k1", k1, "--k2", k2, "-m", &m.to_string()];
            commands.push((args.map(String::from).to_vec(), m % 2 == 0));
        }
    }
    let mut strong = 0;
    for (args, gated) in &commands {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = cli_json(&argv);
        for v in out["verdicts"].as_array().unwrap() {
            check_gate(v, *gated, args);
            if v["conclusion"] == "StrongCork" {
                strong += 1;
                let again = cli_json(&argv);
                assert_eq!(again, out, "rerun of {args:?} differs");
            }
        }
    }
    assert!(strong > 0);

    let mut verdicts: Vec<Verdict> = Vec::new();
    let table = bundled_table();
    for knot in ["4_1", "3_1", "6_1"] {
        let d = table.get(knot).unwrap().descriptor().unwrap();
        for m in ms {
            for i in -2..=3 {
                verdicts.push(verdict_gompf(&d, m, i, 1).unwrap());
            }
        }
    }
    let k = figure_eight_with_actions();
    for m in ms {
        for i in -4..=5 {
            verdicts.push(verdict_periodic(&k, m, i).unwrap());
        }
        verdicts.push(verdict_delta(&k.tensor(&k), m).unwrap());
    }
    for v in &verdicts {
        let gated = v.m % 2 == 0
            || match &v.diffeo {
                corkscrew::verdict::DiffeoSpec::TorusTwist { i, .. } => i % 2 == 0,
                corkscrew::verdict::DiffeoSpec::PeriodicTau { i } => i.rem_euclid(4) == 0,
                _ => false,
            };
        if gated {
            assert_eq!(v.conclusion, Conclusion::Inconclusive);
        }
        if v.is_strong_cork() {
            assert!(v.certificate_ref.is_some());
            v.replay().unwrap();
        }
    }
    within(start, Duration::from_secs(60), "verdict gates");
}

fn main() {
    let criteria: [(u32, fn()); 11] = [
        (1, c1_box_sarkar),
        (2, c2_a0_actions),
        (3, c3_pipeline),
        (4, c4_census),
        (5, c5_properties),
        (6, c6_delta_vs_local),
        (7, c7_split_routes),
        (8, c8_shapes),
        (9, c9_families),
        (10, c10_slice_witness),
        (11, c11_gates),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (n, f) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        match catch_unwind(AssertUnwindSafe(f)) {
            Ok(()) => println!("criterion {n}: PASS ({:.2?})", start.elapsed()),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {n}: FAIL ({msg})");
                failed += 1;
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
