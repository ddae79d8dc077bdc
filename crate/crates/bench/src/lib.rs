//! Benchmark fixtures shared by the criterion benches.

use hiveforge_core::{BranchingTriple, Weight};

pub fn weight(c: &[i64]) -> Weight {
    Weight(c.to_vec())
}

/// The SU(5) pair `{3,4,3,5} ⊗ {4,3,5,4}` with a chosen `ν`.
pub fn su5_triple(nu: &[i64]) -> BranchingTriple {
    BranchingTriple::new(5, weight(&[3, 4, 3, 5]), weight(&[4, 3, 5, 4]), weight(nu)).expect("valid triple")
}

/// `(ρ, ρ, ν)` for SU(n).
pub fn rho_triple(n: usize, nu: &[i64]) -> BranchingTriple {
    let rho = Weight::rho(n - 1);
    BranchingTriple::new(n, rho.clone(), rho, weight(nu)).expect("valid triple")
}
