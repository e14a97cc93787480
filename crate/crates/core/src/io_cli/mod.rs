//! File ingestion, the bundled knot table and complexes, the census and the command line.

mod bundled;
mod census;
pub mod cli;
mod report;
mod table;

pub use bundled::{bundled_complex, bundled_text, load_complex, parse_complex, reference_complex, BUNDLED};
pub use census::{census, Census, CensusEntry};
pub use cli::run;
pub use report::{Report, TOOL};
pub use table::{
    bundled_table, natural_key, parse_knot_csv, parse_knot_csv_str, KnotTable, KnotTableRow, RowError, BUNDLED_TABLE,
};
