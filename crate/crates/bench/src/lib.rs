//! Fixtures shared by the benchmarks.

use qwiso_core::{walk_operator, CirculantGraph, WalkOperator};

/// Paley orders used by the benchmarks, smallest first.
pub const PALEY_ORDERS: [u64; 4] = [13, 17, 29, 41];

pub fn paley(p: u64) -> CirculantGraph {
    CirculantGraph::paley(p).expect("benchmark orders are Paley primes")
}

pub fn paley_walk(p: u64) -> WalkOperator {
    walk_operator(&paley(p)).expect("Paley walk operators are unitary")
}
