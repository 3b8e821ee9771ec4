//! The coined quantum walk operator `U_G = S_sh · (I_p ⊗ C)` on `ℂ^p ⊗ ℂ^k`.
//!
//! Basis vectors `|u, s⟩` are ordered u-major: the composite index is
//! `u·k + pos(s)` where `pos(s)` is the position of `s` among the sorted
//! elements of the connection set.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::modp::CirculantGraph;

pub const UNITARY_TOL: f64 = 1e-10;
pub const REAL_ENTRY_TOL: f64 = 1e-12;

/// Bijection between `[0, pk)` and pairs `(u, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisOrdering {
    p: u64,
    coin_order: Vec<u64>,
}

impl BasisOrdering {
    pub fn new(g: &CirculantGraph) -> Self {
        Self {
            p: g.p(),
            coin_order: g.connection_set().elements().to_vec(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.coin_order.len()
    }

    pub fn dim(&self) -> usize {
        self.p as usize * self.k()
    }

    pub fn coin_order(&self) -> &[u64] {
        &self.coin_order
    }

    /// Composite index of `|u, s⟩`; `None` if `s ∉ S`.
    pub fn index(&self, u: u64, s: u64) -> Option<usize> {
        let pos = self.coin_order.binary_search(&(s % self.p)).ok()?;
        Some((u % self.p) as usize * self.k() + pos)
    }

    /// Inverse of [`BasisOrdering::index`].
    pub fn pair(&self, index: usize) -> (u64, u64) {
        let k = self.k();
        ((index / k) as u64, self.coin_order[index % k])
    }
}

/// The Grover coin `(2/k)𝟙𝟙ᵀ − I_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroverCoin {
    k: usize,
}

pub fn grover_coin(k: usize) -> Result<GroverCoin> {
    if k < 2 {
        return Err(Error::DegreeTooSmall(k));
    }
    if k % 2 == 1 {
        return Err(Error::OddDegree(k));
    }
    Ok(GroverCoin { k })
}

impl GroverCoin {
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        let off = 2.0 / self.k as f64;
        if row == col {
            off - 1.0
        } else {
            off
        }
    }

    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.k, self.k, |i, j| Complex64::new(self.entry(i, j), 0.0))
    }
}

/// The shift `S_sh|u, s⟩ = |u + s, −s⟩`, stored as the image index of every
/// basis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftOperator {
    ordering: BasisOrdering,
    image: Vec<usize>,
}

pub fn shift_operator(g: &CirculantGraph) -> ShiftOperator {
    let ordering = BasisOrdering::new(g);
    let modulus = g.modulus();
    let image = (0..ordering.dim())
        .map(|idx| {
            let (u, s) = ordering.pair(idx);
            let target_u = (u + s) % modulus.get();
            ordering
                .index(target_u, modulus.neg(s))
                .expect("S = -S keeps the negated coin state in the basis")
        })
        .collect();
    ShiftOperator { ordering, image }
}

impl ShiftOperator {
    pub fn ordering(&self) -> &BasisOrdering {
        &self.ordering
    }

    /// Index of `S_sh e_idx`.
    pub fn apply_index(&self, idx: usize) -> usize {
        self.image[idx]
    }

    pub fn matrix(&self) -> CMatrix {
        let n = self.image.len();
        let mut m = CMatrix::zeros(n, n);
        for (col, &row) in self.image.iter().enumerate() {
            m[(row, col)] = Complex64::new(1.0, 0.0);
        }
        m
    }
}

/// `U_G` as a dense `pk × pk` matrix together with its basis ordering.
#[derive(Debug, Clone)]
pub struct WalkOperator {
    ordering: BasisOrdering,
    matrix: CMatrix,
}

pub fn walk_operator(g: &CirculantGraph) -> Result<WalkOperator> {
    let coin = grover_coin(g.k())?;
    let shift = shift_operator(g);
    let k = coin.k();
    let n = shift.ordering.dim();
    // Column (u, l) of I ⊗ C has entries C[i][l] at rows (u, i); the shift
    // then moves row (u, i) to its image.
    let mut matrix = CMatrix::zeros(n, n);
    for col in 0..n {
        let base = col - col % k;
        let l = col % k;
        for i in 0..k {
            let row = shift.apply_index(base + i);
            matrix[(row, col)] = Complex64::new(coin.entry(i, l), 0.0);
        }
    }
    let op = WalkOperator {
        ordering: shift.ordering,
        matrix,
    };
    let defect = op.unitarity_defect();
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation: defect });
    }
    Ok(op)
}

impl WalkOperator {
    pub fn ordering(&self) -> &BasisOrdering {
        &self.ordering
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn p(&self) -> u64 {
        self.ordering.p()
    }

    pub fn k(&self) -> usize {
        self.ordering.k()
    }

    pub fn dim(&self) -> usize {
        self.ordering.dim()
    }

    pub fn unitarity_defect(&self) -> f64 {
        linalg::unitarity_defect(&self.matrix)
    }

    pub fn max_imaginary_entry(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                worst = worst.max(self.matrix[(i, j)].im.abs());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        linalg::trace(&self.matrix)
    }

    pub fn apply(&self, state: &[Complex64]) -> Vec<Complex64> {
        linalg::mat_vec(&self.matrix, state)
    }
}
