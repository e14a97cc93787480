mod common;

use common::{conjugate, models};
use corkscrew::cfk::{solve_involution, GradedMap, KnotComplex, Mode, PhiIotaComplex};
use corkscrew::core_algebra::{Bigrading, BitVec};
use corkscrew::morphisms::{homotopic, homotopic_endo, LinearMapSystem, MapShape, SystemSolution};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 256;

fn config() -> Config {
    Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(0x0c0f_fee5),
        failure_persistence: None,
        ..Config::default()
    }
}

fn triple(index: usize, seed: u64, moves: usize) -> PhiIotaComplex {
    let ms = models();
    conjugate(&ms[index % ms.len()], seed, moves)
}

/// A random grading-preserving chain map `src → tgt`.
fn random_chain_map(src: &KnotComplex, tgt: &KnotComplex, seed: u64) -> GradedMap {
    let mut sys = LinearMapSystem::new();
    let f = sys.unknown(MapShape::new(src.gradings(), tgt.gradings(), Mode::Straight, Bigrading::ZERO));
    let eq = sys.equation();
    sys.term(eq, Some(tgt.differential()), f, None);
    sys.term(eq, None, f, Some(src.differential()));
    let SystemSolution::Solved { particular, kernel } = sys.solve() else {
        panic!("homogeneous system is consistent");
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: BitVec = particular;
    for k in &kernel {
        if rng.gen_bool(0.5) {
            v.xor_assign(k);
        }
    }
    sys.extract(f, &v)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn differential_squares_to_zero(i in 0usize..64, seed in any::<u64>(), moves in 0usize..30) {
        let x = triple(i, seed, moves);
        let d = x.complex().differential();
        prop_assert!(d.compose(d).is_zero());
        let t = x.tensor(&triple(i + 1, seed ^ 1, moves));
        let d = t.complex().differential();
        prop_assert!(d.compose(d).is_zero());
    }

    #[test]
    fn sarkar_is_a_chain_map_squaring_to_identity(i in 0usize..64, seed in any::<u64>(), moves in 0usize..30) {
        let x = triple(i, seed, moves);
        let c = x.complex();
        let s = c.sarkar_map();
        prop_assert!(c.is_chain_map(c, &s));
        prop_assert!(homotopic_endo(c, &s.compose(&s), &c.identity()).is_ok());
    }

    #[test]
    fn sarkar_commutes_with_chain_maps(i in 0usize..64, j in 0usize..64, seed in any::<u64>(), moves in 0usize..20) {
        let x = triple(i, seed, moves);
        let y = triple(j, seed.rotate_left(7), moves);
        let (cx, cy) = (x.complex(), y.complex());
        let f = random_chain_map(cx, cx, seed);
        prop_assert!(homotopic_endo(cx, &f.compose(&cx.sarkar_map()), &cx.sarkar_map().compose(&f)).is_ok());
        let g = random_chain_map(cx, cy, seed ^ 0xff);
        prop_assert!(homotopic(cx, cy, &g.compose(&cx.sarkar_map()), &cy.sarkar_map().compose(&g)).is_ok());
    }

    #[test]
    fn iota_squares_to_sarkar(i in 0usize..64, seed in any::<u64>(), moves in 0usize..30) {
        let x = triple(i, seed, moves);
        prop_assert!(x.check_axioms().is_ok());
        let c = x.complex();
        if c.len() <= 9 {
            let solved = solve_involution(c).unwrap().iota;
            prop_assert!(homotopic_endo(c, &solved.compose(&solved), &c.sarkar_map()).is_ok());
        }
    }

    #[test]
    fn double_dual_is_identity(i in 0usize..64, seed in any::<u64>(), moves in 0usize..30) {
        let x = triple(i, seed, moves);
        let dd = x.dual().dual();
        prop_assert_eq!(dd.name(), x.name());
        prop_assert_eq!(dd.complex().gradings(), x.complex().gradings());
        prop_assert_eq!(dd.complex().differential(), x.complex().differential());
        prop_assert_eq!(dd.iota(), x.iota());
        prop_assert_eq!(dd.phi(), x.phi());
    }
}

#[test]
fn builder_cases_satisfy_the_axioms() {
    for x in models() {
        let c = x.complex();
        assert!(c.differential().compose(c.differential()).is_zero());
        x.check_axioms().unwrap();
        let d = x.dual();
        d.check_axioms().unwrap();
        let t = x.tensor(&d);
        t.check_axioms().unwrap();
    }
}
