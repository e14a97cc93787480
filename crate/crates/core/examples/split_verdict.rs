//! Split diffeomorphisms: local maps against δ of the tensor product.

use corkscrew::cfk::{figure_eight, figure_eight_with_actions, torus};
use corkscrew::verdict::{split_routes, verdict_split};

fn main() -> corkscrew::Result<()> {
    let plain = figure_eight();
    let with_s = plain.with_phi(plain.complex().sarkar_map())?.with_name("4_1[s]");
    let t = torus(1)?;
    let pairs = [
        (with_s, plain.dual()),
        (plain.clone(), plain.dual()),
        (figure_eight_with_actions(), plain.clone()),
        (t.clone(), t.dual()),
    ];
    for (x1, x2) in &pairs {
        let r = split_routes(x1, x2)?;
        let v = verdict_split(x1, x2, 1)?;
        println!(
            "{} ⊗ {}: local map {}^∨ → {}: {}, δ(tensor) = {}, verdict {:?}",
            x1.name(),
            x2.name(),
            x2.name(),
            x1.name(),
            r.local_map_exists,
            r.tensor_delta,
            v.conclusion
        );
    }
    Ok(())
}
