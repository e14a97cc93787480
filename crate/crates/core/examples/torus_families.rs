//! Sums `s·T(2, 2n+1)`: the arithmetic rule against the thin model.

use corkscrew::cfk::thin_model;
use corkscrew::connected::s_nontrivial;
use corkscrew::verdict::{cor13_arithmetic, cor51_rule, thin_parity, torus_sum_invariants};

fn main() -> corkscrew::Result<()> {
    println!(" s  n   τ  Arf  det  rule  model");
    for s in 1..=8 {
        for n in 1..=5 {
            let (arf, tau, det) = torus_sum_invariants(s, n);
            let x = thin_model(tau, thin_parity(det, tau)?)?;
            let model = s_nontrivial(&x)?.nontrivial;
            let rule = cor51_rule(s, n);
            assert_eq!(rule, cor13_arithmetic(arf, tau));
            println!("{s:2} {n:2} {tau:3} {arf:4} {det:4}  {rule:5} {model}");
        }
    }
    Ok(())
}
