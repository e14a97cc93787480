//! Homology of `A0(4_1 # 4_1)` with the actions of `ι` and `τ|τ`.

use corkscrew::a0_delta::UComplex;
use corkscrew::cfk::figure_eight_with_actions;
use corkscrew::core_algebra::BitVec;

fn name(ids: &[String], v: &BitVec) -> String {
    let terms: Vec<&str> = v.ones().map(|i| ids[i].as_str()).collect();
    terms.join(" + ")
}

fn main() -> corkscrew::Result<()> {
    let k = figure_eight_with_actions();
    let kk = k.tensor(&k);
    let a = UComplex::a0(&kk)?;
    let h = a.homology()?;
    let ids = a.ids();
    println!("A0({}): {} generators, graded dimensions {:?}", kk.name(), a.len(), h.graded_dimensions());
    let (iota, tau) = (a.iota().expect("iota"), a.phi().expect("phi"));
    for class in h.towers.iter().chain(&h.torsion) {
        let r = &class.representative;
        let kind = if class.order.is_none() { "tower" } else { "torsion" };
        println!("[{}] in grading {} ({kind})", name(ids, r), class.grading);
        println!("    ι   ↦ {}", name(ids, &iota.mul_vec(r)));
        println!("    τ|τ ↦ {}", name(ids, &tau.mul_vec(r)));
    }
    Ok(())
}
