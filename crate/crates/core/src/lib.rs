//! Coined quantum walks on prime-order circulant graphs.
//!
//! For `G = Cay(ℤ_p, S)` the walk operator `U_G = S_sh · (I_p ⊗ C)` with the
//! Grover coin `C = (2/k)𝟙𝟙ᵀ − I` splits under the DFT over ℤ_p into `p`
//! blocks of size `k × k`. Block `j` has eigenvalues `+1` and `−1`, each with
//! multiplicity `(k−2)/2`, plus a conjugate pair `e^{±iθ_j}` with
//! `cos θ_j = Â(j)/k`. The walk characteristic polynomial therefore carries
//! every Fourier coefficient of the adjacency matrix, Fourier inversion gives
//! back `S`, and the multiplier criterion for prime-order circulants turns
//! that into an isomorphism test.
//!
//! ```
//! use qwiso_core::{full_pipeline_from_spectra, CirculantGraph};
//!
//! let g = CirculantGraph::paley(13).unwrap();
//! let report = full_pipeline_from_spectra(&g).unwrap();
//! assert_eq!(report.recovered_set.elements(), &[1, 3, 4, 9, 10, 12]);
//! ```
//!
//! Modules follow the pipeline: [`modp`] (sets, graphs, exact coefficients),
//! [`walk`] (the operator), [`fourier`] (block decomposition), [`spectral`]
//! (block spectra and polynomials), [`recovery`] (inversion and isomorphism),
//! [`oracle`] (brute-force cross-checks) and [`harness`] (report builders).

pub mod error;
pub mod fourier;
pub mod harness;
pub mod linalg;
pub mod modp;
pub mod oracle;
pub mod poly;
pub mod recovery;
pub mod spectral;
pub mod walk;

pub use error::{Error, Result};
pub use fourier::{
    block_decompose, block_direct, dft_matrix, direct_blocks, gram_determinant, phi_expectation,
    BlockDecomposition, DftMatrix, FourierBlock,
};
pub use harness::{
    coefficient_table, paley_table, scan, verify_paley, CoefficientRow, ScanReport, Tolerances,
    VerifyRow,
};
pub use linalg::CMatrix;
pub use modp::{
    fourier_coefficient, fourier_coefficients, is_prime, make_connection_set, paley_connection_set,
    symmetric_sets, AdjacencyMatrix, CirculantGraph, ConnectionSet, FourierCoefficient,
    PrimeModulus, SrgParameters,
};
pub use num_complex::Complex64;
pub use oracle::{brute_force_isomorphic, char_poly_oracle, OracleResult};
pub use poly::PolynomialCoefficients;
pub use recovery::{
    decide_isomorphism, full_pipeline_from_spectra, full_pipeline_with_tol, quantum_char_poly,
    recover_connection_set, turner_isomorphic, IsoVerdict, RecoveryReport,
};
pub use spectral::{
    block_spectrum, extract_c_multiset, global_char_poly, predicted_block_poly, recover_c,
    BlockSpectrum, CMultiplicity,
};
pub use walk::{
    grover_coin, shift_operator, walk_operator, BasisOrdering, GroverCoin, WalkOperator,
};
