//! Thin knots up to eight crossings whose Gompf corks are strong.

use corkscrew::io_cli::{bundled_table, census};
use corkscrew::verdict::Settings;

fn main() -> corkscrew::Result<()> {
    let result = census(&bundled_table(), 8, &Settings::default())?;
    for e in &result.entries {
        let mark = if e.arithmetic { "*" } else { " " };
        let tau = if e.tau_derived { "from σ" } else { "given" };
        println!(
            "{mark} {:5} τ = {:2} ({tau}), Arf = {}, det = {:3}, conn = {}",
            e.name,
            e.tau,
            e.arf,
            e.determinant,
            e.conn_shape.as_deref().unwrap_or("?")
        );
    }
    for (name, reason) in &result.rejected {
        println!("  {name}: {reason}");
    }
    println!("{} knots: {}", result.selected.len(), result.selected.join(", "));
    Ok(())
}
