//! Verdicts for Gompf's swallow-follow family, with certificate replay.

use corkscrew::io_cli::bundled_table;
use corkscrew::verdict::verdict_gompf;

fn main() -> corkscrew::Result<()> {
    let table = bundled_table();
    for knot in ["4_1", "6_1", "8_21"] {
        let d = table.get(knot).expect("bundled knot").descriptor()?;
        for (m, i, j) in [(1, 1, 5), (-3, 3, 0), (2, 1, 0), (1, 2, 0)] {
            let v = verdict_gompf(&d, m, i, j)?;
            println!("{knot} m={m} i={i} j={j}: {:?} [{}] {}", v.conclusion, v.rule, v.reason);
            if v.is_strong_cork() {
                v.replay()?;
            }
        }
    }
    Ok(())
}
