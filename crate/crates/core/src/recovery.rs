//! From walk spectra back to connection sets, and two routes to an
//! isomorphism verdict: comparing walk characteristic polynomials, and
//! searching for a multiplier `t` with `t·S₁ = S₂`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::block_decompose;
use crate::modp::{make_connection_set, CirculantGraph, ConnectionSet, PrimeModulus};
use crate::poly::PolynomialCoefficients;
use crate::spectral::{global_char_poly, recover_c_with_tol, DEFAULT_TOL_EIG};
use crate::walk::walk_operator;

/// Largest distance of a recovered indicator value from `{0, 1}`.
pub const ROUNDING_TOL: f64 = 1e-6;
/// Relative coefficient tolerance for calling two walk polynomials equal.
pub const POLY_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryReport {
    pub p: u64,
    pub k: usize,
    /// `c_j = Â(j)/k` for `j = 0..p`, with `c_0 = 1`.
    pub c_values: Vec<f64>,
    pub recovered_set: ConnectionSet,
    pub max_rounding_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub witness_multiplier: Option<u64>,
    pub spectral_equal: bool,
    pub method_agreement: bool,
}

/// Fourier inversion `𝟙_S(u) = (1/p) Σ_j k·c_j·ω^{−ju}`, rounded to `{0, 1}`.
pub fn recover_connection_set(c_values: &[f64], p: u64, k: usize) -> Result<RecoveryReport> {
    let modulus = PrimeModulus::new(p)?;
    if c_values.len() != p as usize {
        return Err(Error::WrongLength {
            expected: p as usize,
            found: c_values.len(),
        });
    }
    if (c_values[0] - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "c_0 must be 1, got {}",
            c_values[0]
        )));
    }
    if let Some(&bad) = c_values
        .iter()
        .find(|c| c.is_nan() || c.abs() > 1.0 + 1e-12)
    {
        return Err(Error::COutOfRange(bad));
    }

    let kf = k as f64;
    let indicator: Vec<f64> = (0..p)
        .map(|u| {
            let sum: Complex64 = c_values
                .iter()
                .enumerate()
                .map(|(j, &c)| modulus.omega_pow(-(modulus.mul(j as u64, u) as i64)) * (kf * c))
                .sum();
            sum.re / p as f64
        })
        .collect();

    if indicator[0].abs() > ROUNDING_TOL {
        return Err(Error::NonzeroAtOrigin {
            value: indicator[0],
        });
    }
    let residual = indicator
        .iter()
        .map(|&x| x.abs().min((x - 1.0).abs()))
        .fold(0.0, f64::max);
    if residual > ROUNDING_TOL {
        return Err(Error::RoundingResidualTooLarge {
            residual,
            threshold: ROUNDING_TOL,
        });
    }
    let elements: Vec<i64> = indicator
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0.5)
        .map(|(u, _)| u as i64)
        .collect();
    if elements.len() != k {
        return Err(Error::WrongCardinality {
            expected: k,
            found: elements.len(),
        });
    }
    Ok(RecoveryReport {
        p,
        k,
        c_values: c_values.to_vec(),
        recovered_set: make_connection_set(p, &elements)?,
        max_rounding_residual: residual,
    })
}

/// Smallest `t ∈ [1, p−1]` with `t·S₁ = S₂`, or `None` if there is none.
pub fn turner_isomorphic(s1: &ConnectionSet, s2: &ConnectionSet) -> Result<Option<u64>> {
    if s1.p() != s2.p() {
        return Err(Error::ModulusMismatch(s1.p(), s2.p()));
    }
    if s1.k() != s2.k() {
        return Err(Error::DegreeMismatch(s1.k(), s2.k()));
    }
    Ok((1..s1.p()).find(|&t| s1.scaled(t).as_ref() == Some(s2)))
}

/// `χ_q(G, λ)` through the Fourier blocks of the full walk operator.
pub fn quantum_char_poly(g: &CirculantGraph) -> Result<PolynomialCoefficients> {
    let u = walk_operator(g)?;
    let dec = block_decompose(&u)?;
    global_char_poly(&dec.blocks)
}

/// Runs both isomorphism routes and cross-checks them.
///
/// For strongly regular inputs with `k ≥ 6` the two routes must agree, and a
/// disagreement is returned as [`Error::MethodDisagreement`]. For other inputs
/// it is only reported through `method_agreement`.
pub fn decide_isomorphism(g1: &CirculantGraph, g2: &CirculantGraph) -> Result<IsoVerdict> {
    if g1.p() != g2.p() {
        return Err(Error::ModulusMismatch(g1.p(), g2.p()));
    }
    let spectral_equal = quantum_char_poly(g1)?.approx_eq(&quantum_char_poly(g2)?, POLY_REL_TOL);
    let witness = match turner_isomorphic(g1.connection_set(), g2.connection_set()) {
        Ok(t) => t,
        Err(Error::DegreeMismatch(..)) => None,
        Err(e) => return Err(e),
    };
    let isomorphic = witness.is_some();
    let method_agreement = spectral_equal == isomorphic;
    let hypotheses_hold =
        g1.k() == g2.k() && g1.k() >= 6 && g1.is_strongly_regular() && g2.is_strongly_regular();
    if hypotheses_hold && !method_agreement {
        return Err(Error::MethodDisagreement {
            k: g1.k(),
            spectral_equal,
            turner: isomorphic,
        });
    }
    Ok(IsoVerdict {
        isomorphic,
        witness_multiplier: witness,
        spectral_equal,
        method_agreement,
    })
}

/// Rebuilds `S` from the walk spectrum alone: `U_G` → Fourier blocks →
/// `c_j` per block (`c_0 := 1`) → Fourier inversion. The result must equal
/// the input set exactly.
pub fn full_pipeline_from_spectra(g: &CirculantGraph) -> Result<RecoveryReport> {
    full_pipeline_with_tol(g, DEFAULT_TOL_EIG)
}

pub fn full_pipeline_with_tol(g: &CirculantGraph, tol_eig: f64) -> Result<RecoveryReport> {
    let u = walk_operator(g)?;
    let dec = block_decompose(&u)?;
    let mut c_values = Vec::with_capacity(dec.blocks.len());
    c_values.push(1.0);
    for block in &dec.blocks[1..] {
        c_values.push(recover_c_with_tol(block, tol_eig)?);
    }
    let report = recover_connection_set(&c_values, g.p(), g.k())?;
    if &report.recovered_set != g.connection_set() {
        return Err(Error::RecoveredSetMismatch {
            original: g.connection_set().elements().to_vec(),
            recovered: report.recovered_set.elements().to_vec(),
        });
    }
    Ok(report)
}
