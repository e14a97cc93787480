//! The Sarkar map `s = id + ΦΨ` on a few complexes.

use corkscrew::cfk::{box_complex, figure_eight, torus, KnotComplex};
use corkscrew::morphisms::homotopic_endo;

fn show(c: &KnotComplex) {
    let s = c.sarkar_map();
    let ids = c.ids();
    println!("{}:", c.name());
    for (g, h, mono) in s.add(&c.identity()).entries() {
        println!("  s({}) = {} + {mono}·{}", ids[g], ids[g], ids[h]);
    }
    let trivial = homotopic_endo(c, &s, &c.identity()).is_ok();
    println!("  s ≃ id: {trivial}");
}

fn main() {
    show(&box_complex(1));
    show(&box_complex(2));
    show(figure_eight().complex());
    show(torus(2).unwrap().complex());
}
