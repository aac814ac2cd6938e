//! Closed-form reference values versus the Rashba coupling γE.
//!
//! ```text
//! cargo run --example oracle_table
//! ```

use spincat::oracle::{oracle_tables, DEFAULT_TABLE_GAMMAS};
use spincat::PhysParams;

fn main() {
    print!("{}", oracle_tables(&PhysParams::default(), &DEFAULT_TABLE_GAMMAS));
}
