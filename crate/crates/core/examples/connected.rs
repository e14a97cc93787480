//! Connected complexes and `𝒮`-nontriviality.

use corkscrew::cfk::{figure_eight, staircase_with_box, torus, PhiIotaComplex};
use corkscrew::connected::s_nontrivial;

fn main() -> corkscrew::Result<()> {
    let t = torus(1)?;
    let mut xs: Vec<PhiIotaComplex> = vec![figure_eight(), t.clone(), t.tensor(&t)];
    for l in 1..=4 {
        xs.push(staircase_with_box(&[(1, 1)], l)?);
    }
    for x in &xs {
        let s = s_nontrivial(x)?;
        println!(
            "{:28} conn = {:40} ({} generators, {:?}) s-nontrivial: {}",
            x.name(),
            s.conn_shape.as_deref().unwrap_or("?"),
            s.conn_generators,
            s.method,
            s.nontrivial
        );
    }
    Ok(())
}
