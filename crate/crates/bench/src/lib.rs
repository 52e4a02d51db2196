//! Benchmark-only crate; see `benches/main.rs`. Shared setup helpers live
//! here so the bench target stays small.

use jetforge::poly::{Polynomial, Symbols};

/// Parse over freshly declared variables; panics on bad input (bench setup).
pub fn poly(vars: &[&str], text: &str) -> Polynomial {
    Symbols::new(vars.iter().copied(), Vec::<String>::new())
        .expect("valid symbols")
        .parse(text)
        .expect("valid polynomial")
}
