//! δ of `4_1 # 4_1` with `φ = τ|τ` and with `φ = id`, and the resulting verdicts.

use corkscrew::a0_delta::delta;
use corkscrew::cfk::{figure_eight, figure_eight_with_actions};
use corkscrew::verdict::verdict_delta;

fn main() -> corkscrew::Result<()> {
    let tau = figure_eight_with_actions();
    let plain = figure_eight();
    for x in [tau.tensor(&tau), plain.tensor(&plain)] {
        let d = delta(&x)?;
        let ids = x.complex().ids();
        let xs: Vec<&str> = d.witness.x.ones().map(|i| ids[i].as_str()).collect();
        println!("δ({}) = {} (witness in grading {}: x = {})", x.name(), d.delta, d.witness.grading, xs.join(" + "));
        let v = verdict_delta(&x, 1)?;
        println!("  m = 1: {:?} [{}] {}", v.conclusion, v.rule, v.reason);
        if v.is_strong_cork() {
            v.replay()?;
            println!("  certificate {} replays", v.certificate_ref.as_deref().unwrap_or("-"));
        }
    }
    Ok(())
}
