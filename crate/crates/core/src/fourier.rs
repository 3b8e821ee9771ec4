//! Fourier block decomposition of the walk operator.
//!
//! Conjugating `U_G` by `ℱ = F ⊗ I_k`, with `(F e_u)_j = ω^{ju}/√p`, leaves a
//! block-diagonal matrix whose `j`-th `k × k` block is `Ŝ^{(j)} C`, where
//! `Ŝ^{(j)}|s⟩ = ω^{js}|−s⟩`. [`block_decompose`] obtains the blocks by slicing
//! the conjugated matrix; [`block_direct`] assembles them entrywise. The two
//! routes are independent and are compared in tests.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::modp::{CirculantGraph, PrimeModulus};
use crate::walk::{grover_coin, WalkOperator};

/// Off-diagonal residual above which the conjugation is declared broken.
pub const RESIDUAL_HARD_LIMIT: f64 = 1e-8;

/// The unitary DFT over ℤ_p.
#[derive(Debug, Clone)]
pub struct DftMatrix {
    p: PrimeModulus,
    matrix: CMatrix,
}

pub fn dft_matrix(p: PrimeModulus) -> DftMatrix {
    let n = p.get() as usize;
    let scale = 1.0 / (n as f64).sqrt();
    let matrix = CMatrix::from_fn(n, n, |j, u| {
        p.omega_pow(p.mul(j as u64, u as u64) as i64) * scale
    });
    DftMatrix { p, matrix }
}

impl DftMatrix {
    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `F ⊗ I_k`, matching the u-major walk basis.
    pub fn extended(&self, k: usize) -> CMatrix {
        let n = self.p.get() as usize * k;
        CMatrix::from_fn(n, n, |row, col| {
            if row % k == col % k {
                self.matrix[(row / k, col / k)]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }
}

/// One `k × k` block `U_G^{(j)}`.
#[derive(Debug, Clone)]
pub struct FourierBlock {
    j: usize,
    matrix: CMatrix,
}

impl FourierBlock {
    pub fn new(j: usize, matrix: CMatrix) -> Self {
        assert_eq!(matrix.nrows(), matrix.ncols(), "blocks are square");
        Self { j, matrix }
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn k(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        linalg::trace(&self.matrix)
    }

    pub fn unitarity_defect(&self) -> f64 {
        linalg::unitarity_defect(&self.matrix)
    }
}

/// The `p` diagonal blocks of `ℱ U_G ℱ†` and the Frobenius norm of everything
/// outside them.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub blocks: Vec<FourierBlock>,
    pub off_diagonal_residual: f64,
}

pub fn block_decompose(u: &WalkOperator) -> Result<BlockDecomposition> {
    let p = PrimeModulus::new(u.p())?;
    let k = u.k();
    let f = dft_matrix(p).extended(k);
    let conjugated = &(&f * u.matrix()) * f.adjoint();

    let n = u.dim();
    let mut off_sq = 0.0;
    for col in 0..n {
        for row in 0..n {
            if row / k != col / k {
                off_sq += conjugated[(row, col)].norm_sqr();
            }
        }
    }
    let off_diagonal_residual = off_sq.sqrt();
    if off_diagonal_residual > RESIDUAL_HARD_LIMIT {
        return Err(Error::ResidualTooLarge {
            residual: off_diagonal_residual,
            threshold: RESIDUAL_HARD_LIMIT,
        });
    }
    let blocks = (0..p.get() as usize)
        .map(|j| {
            let base = j * k;
            FourierBlock::new(
                j,
                CMatrix::from_fn(k, k, |r, c| conjugated[(base + r, base + c)]),
            )
        })
        .collect();
    Ok(BlockDecomposition {
        blocks,
        off_diagonal_residual,
    })
}

/// `Ŝ^{(j)}` in the canonical coin ordering: column `s` holds `ω^{js}` in row
/// `−s` and zeros elsewhere.
pub fn shift_block(g: &CirculantGraph, j: u64) -> Result<CMatrix> {
    let p = g.modulus();
    if j >= p.get() {
        return Err(Error::IndexOutOfRange { p: p.get(), j });
    }
    let set = g.connection_set();
    let k = set.k();
    let mut m = CMatrix::zeros(k, k);
    for (col, &s) in set.elements().iter().enumerate() {
        let row = set.position(p.neg(s)).expect("S = -S");
        m[(row, col)] = p.omega_pow(p.mul(j, s) as i64);
    }
    Ok(m)
}

/// `U_G^{(j)} = Ŝ^{(j)} C`, built without touching the full operator.
pub fn block_direct(g: &CirculantGraph, j: u64) -> Result<FourierBlock> {
    let shift = shift_block(g, j)?;
    let coin = grover_coin(g.k())?.matrix();
    Ok(FourierBlock::new(j as usize, &shift * &coin))
}

/// All `p` directly assembled blocks, computed concurrently.
pub fn direct_blocks(g: &CirculantGraph) -> Result<Vec<FourierBlock>> {
    (0..g.p())
        .into_par_iter()
        .map(|j| block_direct(g, j))
        .collect()
}

/// `|φ_j⟩ = k^{−1/2} Σ_s ω^{js}|s⟩`.
pub fn phi_vector(g: &CirculantGraph, j: u64) -> Vec<Complex64> {
    let p = g.modulus();
    let scale = 1.0 / (g.k() as f64).sqrt();
    g.connection_set()
        .elements()
        .iter()
        .map(|&s| p.omega_pow(p.mul(j, s) as i64) * scale)
        .collect()
}

/// The uniform coin state `v₊ = 𝟙/√k`.
pub fn uniform_coin_state(k: usize) -> Vec<Complex64> {
    vec![Complex64::new(1.0 / (k as f64).sqrt(), 0.0); k]
}

/// `⟨φ_j|Ŝ^{(j)}|φ_j⟩`.
pub fn phi_expectation(g: &CirculantGraph, j: u64) -> Result<Complex64> {
    let shift = shift_block(g, j)?;
    let phi = phi_vector(g, j);
    Ok(linalg::inner(&phi, &linalg::mat_vec(&shift, &phi)))
}

/// `⟨v₊|Ŝ^{(j)}|v₊⟩`.
pub fn uniform_expectation(g: &CirculantGraph, j: u64) -> Result<Complex64> {
    let shift = shift_block(g, j)?;
    let v = uniform_coin_state(g.k());
    Ok(linalg::inner(&v, &linalg::mat_vec(&shift, &v)))
}

/// Determinant of the Gram matrix of `{|φ_j⟩, Ŝ^{(j)}|v₊⟩}`; strictly
/// positive iff the two vectors span a plane.
pub fn gram_determinant(g: &CirculantGraph, j: u64) -> Result<f64> {
    let shift = shift_block(g, j)?;
    let phi = phi_vector(g, j);
    let w = linalg::mat_vec(&shift, &uniform_coin_state(g.k()));
    let a = linalg::inner(&phi, &phi);
    let b = linalg::inner(&phi, &w);
    let d = linalg::inner(&w, &w);
    Ok((a * d - b * b.conj()).re)
}
