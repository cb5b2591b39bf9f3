//! Shared fixtures for the benchmarks.

use whitehead_core::catalog::{binary_icosahedral, binary_octahedral};
use whitehead_core::{
    realize_presentation, FiniteGroup, IntMatrix, Presentation, DEFAULT_MAX_COSETS,
};

pub fn icosahedral_presentation() -> Presentation {
    binary_icosahedral()
        .construction
        .presentation()
        .expect("built-in")
}

pub fn octahedral_group() -> FiniteGroup {
    let p = binary_octahedral()
        .construction
        .presentation()
        .expect("built-in");
    realize_presentation(&p, DEFAULT_MAX_COSETS).expect("finite")
}

pub fn icosahedral_group() -> FiniteGroup {
    realize_presentation(&icosahedral_presentation(), DEFAULT_MAX_COSETS).expect("finite")
}

/// Deterministic dense `n × n` matrix with small entries.
pub fn lcg_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((state >> 33) % 19) as i64 - 9
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}
