//! δ = 0 exactly when a local map from the trivial complex exists.

use corkscrew::a0_delta::delta;
use corkscrew::cfk::{figure_eight, figure_eight_with_actions, thin_model, torus, PhiIotaComplex};
use corkscrew::morphisms::local_map_exists;

fn main() -> corkscrew::Result<()> {
    let k = figure_eight_with_actions();
    let xs = [
        PhiIotaComplex::trivial(),
        k.tensor(&k),
        figure_eight().tensor(&figure_eight()),
        torus(1)?,
        torus(1)?.dual(),
        thin_model(-2, true)?,
    ];
    for x in &xs {
        let d = delta(x)?.delta;
        let local = match local_map_exists(&PhiIotaComplex::trivial(), x, false)? {
            Ok(cert) => format!("yes (solution space of dimension {})", cert.solution_dimension),
            Err(no) => format!("no ({} shifts tried)", no.tried.len()),
        };
        println!("{:24} δ = {d:2}  local map from trivial: {local}", x.name());
    }
    Ok(())
}
