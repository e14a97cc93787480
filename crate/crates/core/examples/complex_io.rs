//! Reading and writing complex files.
//!
//! `cargo run --example complex_io` prints the bundled figure-eight file and round-trips
//! every bundled complex; `cargo run --example complex_io -- regenerate DIR` rewrites the
//! bundled files into `DIR`.

use corkscrew::cfk::{parse_complex_str, serialize_complex};
use corkscrew::io_cli::{bundled_text, reference_complex, BUNDLED};

fn main() -> corkscrew::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [cmd, dir] = args.as_slice() {
        if cmd == "regenerate" {
            for (name, _) in BUNDLED {
                let x = reference_complex(name).expect("reference complex");
                std::fs::write(format!("{dir}/{name}.cfk.json"), serialize_complex(&x))?;
            }
            return Ok(());
        }
    }
    print!("{}", bundled_text("4_1").expect("bundled"));
    for (name, _) in BUNDLED {
        let text = bundled_text(name).expect("bundled");
        let x = parse_complex_str(text)?;
        assert_eq!(serialize_complex(&x), text);
        x.check_axioms()?;
        println!("{name}: {} generators, round trip ok", x.len());
    }
    Ok(())
}
