//! Spectra of Fourier blocks and the walk characteristic polynomial.
//!
//! Every block `U_G^{(j)}` of a prime-order circulant has `(k−2)/2`
//! eigenvalues at `+1`, as many at `−1`, and one conjugate pair `e^{±iθ_j}`
//! with `cos θ_j = Â(j)/k`. [`block_spectrum`] measures this rather than
//! assuming it, and [`recover_c`] reads `Â(j)/k` off the spectrum alone.

use faer::Mat;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::FourierBlock;
use crate::linalg;
use crate::poly::PolynomialCoefficients;

/// Default distance within which an eigenvalue counts as `±1`.
pub const DEFAULT_TOL_EIG: f64 = 1e-8;
/// Every eigenvalue of a unitary block must satisfy `||λ| − 1| ≤` this.
pub const UNIT_CIRCLE_TOL: f64 = 1e-9;
/// Relative imaginary residual tolerated in a block polynomial.
pub const BLOCK_POLY_IMAG_TOL: f64 = 1e-9;
/// Two c-values closer than this belong to the same cluster.
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// Upper bound on the number of distinct c-values [`extract_c_multiset`] resolves.
pub const MAX_DISTINCT_C: usize = 8;

/// Classified spectrum of one block.
#[derive(Debug, Clone)]
pub struct BlockSpectrum {
    pub j: usize,
    pub mult_plus_one: usize,
    pub mult_minus_one: usize,
    /// Angle of the conjugate pair, in `(0, π)`.
    pub theta: Option<f64>,
    /// `cos θ`, the mean real part of the pair.
    pub c: Option<f64>,
    pub eigenvalues: Vec<Complex64>,
}

impl BlockSpectrum {
    pub fn k(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Monic polynomial with the measured eigenvalues as roots.
    pub fn polynomial(&self) -> Result<PolynomialCoefficients> {
        PolynomialCoefficients::from_roots(&self.eigenvalues, BLOCK_POLY_IMAG_TOL)
    }

    /// `(+1)·m₊ + (−1)·m₋ + 2c`, the trace the classification predicts.
    pub fn classified_trace(&self) -> f64 {
        self.mult_plus_one as f64 - self.mult_minus_one as f64 + 2.0 * self.c.unwrap_or(0.0)
    }
}

pub fn block_spectrum(b: &FourierBlock, tol_eig: f64) -> Result<BlockSpectrum> {
    let eigenvalues = linalg::eigenvalues(b.matrix())?;
    classify(b.j(), eigenvalues, tol_eig)
}

fn classify(j: usize, eigenvalues: Vec<Complex64>, tol_eig: f64) -> Result<BlockSpectrum> {
    let deviation = eigenvalues
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    if deviation > UNIT_CIRCLE_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    let one = Complex64::new(1.0, 0.0);
    let mut plus = 0;
    let mut minus = 0;
    let mut rest = Vec::new();
    for &z in &eigenvalues {
        if (z - one).norm() <= tol_eig {
            plus += 1;
        } else if (z + one).norm() <= tol_eig {
            minus += 1;
        } else {
            rest.push(z);
        }
    }
    let (theta, c) = match rest.as_slice() {
        [] => (None, None),
        [z] => return Err(Error::UnpairedEigenvalue { j, eigenvalue: *z }),
        [a, b] => {
            if (a - b.conj()).norm() > tol_eig {
                return Err(Error::UnpairedEigenvalue { j, eigenvalue: *a });
            }
            let c = 0.5 * (a.re + b.re);
            let s = 0.5 * (a.im.abs() + b.im.abs());
            (Some(s.atan2(c)), Some(c))
        }
        _ => {
            return Err(Error::MoreThanOnePair {
                j,
                count: rest.len(),
                eigenvalues: rest,
            })
        }
    };
    Ok(BlockSpectrum {
        j,
        mult_plus_one: plus,
        mult_minus_one: minus,
        theta,
        c,
        eigenvalues,
    })
}

/// `(λ−1)^{(k−2)/2} (λ+1)^{(k−2)/2} (λ² − 2cλ + 1)`, expanded by convolution.
pub fn predicted_block_poly(c: f64, k: usize) -> Result<PolynomialCoefficients> {
    if !(c > -1.0 && c < 1.0) {
        return Err(Error::COutOfRange(c));
    }
    if k < 2 {
        return Err(Error::DegreeTooSmall(k));
    }
    if k % 2 == 1 {
        return Err(Error::OddDegree(k));
    }
    let half = (k - 2) / 2;
    let minus = PolynomialCoefficients::from_ascending(vec![-1.0, 1.0])?;
    let plus = PolynomialCoefficients::from_ascending(vec![1.0, 1.0])?;
    let quadratic = PolynomialCoefficients::from_ascending(vec![1.0, -2.0 * c, 1.0])?;
    let mut acc = quadratic;
    for _ in 0..half {
        acc = acc.mul(&minus).mul(&plus);
    }
    Ok(acc)
}

/// `Â(j)/k` recovered from the block's spectrum with the default tolerance.
pub fn recover_c(b: &FourierBlock) -> Result<f64> {
    recover_c_with_tol(b, DEFAULT_TOL_EIG)
}

pub fn recover_c_with_tol(b: &FourierBlock, tol_eig: f64) -> Result<f64> {
    block_spectrum(b, tol_eig)?
        .c
        .ok_or(Error::DegenerateBlock { j: b.j() })
}

/// `χ_q = Π_j det(λI − U_G^{(j)})`; each factor comes from the block's own
/// eigenvalues, the product from coefficient convolution.
pub fn global_char_poly(blocks: &[FourierBlock]) -> Result<PolynomialCoefficients> {
    let factors: Vec<PolynomialCoefficients> = blocks
        .par_iter()
        .map(|b| {
            let ev = linalg::eigenvalues(b.matrix())?;
            PolynomialCoefficients::from_roots(&ev, BLOCK_POLY_IMAG_TOL)
        })
        .collect::<Result<_>>()?;
    Ok(PolynomialCoefficients::product(&factors))
}

/// One distinct value of `Re λ` among the conjugate pairs off `±1`, with the
/// number of pairs sharing it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CMultiplicity {
    pub c: f64,
    pub multiplicity: usize,
}

/// Reads the multiset `{c_j : j ≠ 0}` back out of a global characteristic
/// polynomial of degree `pk`.
///
/// The roots of `χ_q` are highly repeated, so they are not located
/// individually. Instead the power sums `Σ λ^m` are taken from the
/// coefficients (Newton's identities); on the unit circle `Re λ^m = T_m(Re λ)`,
/// which turns them into moments of the real parts. Multiplying by `x² − 1`
/// cancels the atoms at `±1`, and the remaining atoms and their weights are
/// fitted from a Hankel system (Prony's method). The smallest number of
/// distinct values that reproduces the extra moments, yields integer
/// multiplicities and accounts for all `p − 1` pairs is returned, sorted by c.
pub fn extract_c_multiset(
    poly: &PolynomialCoefficients,
    k: usize,
    p: u64,
) -> Result<Vec<CMultiplicity>> {
    let n = p as usize * k;
    if poly.degree() != n {
        return Err(Error::InvalidInput(format!(
            "polynomial has degree {}, expected p·k = {n}",
            poly.degree()
        )));
    }
    let pairs = p as usize - 1;
    let max_atoms = ((p as usize - 1) / 2).clamp(1, MAX_DISTINCT_C);
    // a fit with d atoms uses ν_0 … ν_{2d−1} and checks ν_{2d}, ν_{2d+1}
    let nu = annihilated_moments(poly, 2 * max_atoms + 2);

    for d in 1..=max_atoms {
        if let Some(atoms) = fit_atoms(&nu, d, pairs) {
            for w in atoms.windows(2) {
                if w[1].c - w[0].c < 10.0 * CLUSTER_RADIUS {
                    return Err(Error::ClusteringAmbiguous(format!(
                        "c-values {} and {} are closer than {:e}",
                        w[0].c,
                        w[1].c,
                        10.0 * CLUSTER_RADIUS
                    )));
                }
            }
            return Ok(atoms);
        }
    }
    Err(Error::ClusteringAmbiguous(format!(
        "no decomposition into at most {max_atoms} distinct c-values reproduces the moments"
    )))
}

/// `ν_m = Σ_i x_i^m (x_i² − 1)` over the real parts `x_i` of all roots, for
/// `m = 0..len`.
fn annihilated_moments(poly: &PolynomialCoefficients, len: usize) -> Vec<f64> {
    let power = poly.power_sums(len + 1);
    // chebyshev[m][l]: coefficient of T_l in x^m
    let mut chebyshev: Vec<Vec<f64>> = vec![vec![1.0]];
    for m in 1..=len + 1 {
        let prev = &chebyshev[m - 1];
        let mut next = vec![0.0; m + 1];
        for (l, &b) in prev.iter().enumerate() {
            if l == 0 {
                next[1] += b;
            } else {
                next[l + 1] += 0.5 * b;
                next[l - 1] += 0.5 * b;
            }
        }
        chebyshev.push(next);
    }
    let mu: Vec<f64> = chebyshev
        .iter()
        .map(|row| row.iter().zip(&power).map(|(b, s)| b * s).sum())
        .collect();
    (0..len).map(|m| mu[m + 2] - mu[m]).collect()
}

fn fit_atoms(nu: &[f64], d: usize, pairs: usize) -> Option<Vec<CMultiplicity>> {
    let hankel = Mat::from_fn(d, d, |r, c| nu[r + c]);
    let rhs: Vec<f64> = (0..d).map(|r| -nu[r + d]).collect();
    let q = linalg::solve_real(&hankel, &rhs);
    if q.iter().any(|x| !x.is_finite()) {
        return None;
    }
    // companion matrix of x^d + q_{d-1} x^{d-1} + … + q_0
    let companion = Mat::from_fn(d, d, |r, c| {
        if c == d - 1 {
            -q[r]
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    let roots = linalg::real_eigenvalues(&companion).ok()?;
    if roots.iter().any(|z| z.im.abs() > CLUSTER_RADIUS) {
        return None;
    }
    let mut xs: Vec<f64> = roots.iter().map(|z| z.re).collect();
    xs.sort_by(f64::total_cmp);
    if xs.iter().any(|&x| !(x > -1.0 && x < 1.0)) {
        return None;
    }
    let vander = Mat::from_fn(d, d, |m, a| xs[a].powi(m as i32));
    let weights = linalg::solve_real(&vander, &nu[..d]);

    let mut atoms = Vec::with_capacity(d);
    for (&x, &w) in xs.iter().zip(&weights) {
        // each pair contributes two roots with real part x
        let count = w / (2.0 * (x * x - 1.0));
        let rounded = count.round();
        if !count.is_finite() || rounded < 1.0 || (count - rounded).abs() > 1e-4 {
            return None;
        }
        atoms.push(CMultiplicity {
            c: x,
            multiplicity: rounded as usize,
        });
    }
    if atoms.iter().map(|a| a.multiplicity).sum::<usize>() != pairs {
        return None;
    }
    // the fitted atoms must also reproduce the next moments not used in the fit
    let scale = 2.0 * pairs as f64;
    for (m, &value) in nu.iter().enumerate().take(2 * d + 2) {
        let predicted: f64 = atoms
            .iter()
            .map(|a| 2.0 * a.multiplicity as f64 * a.c.powi(m as i32) * (a.c * a.c - 1.0))
            .sum();
        if (predicted - value).abs() > 1e-7 * scale {
            return None;
        }
    }
    Some(atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{block_decompose, block_direct, direct_blocks};
    use crate::modp::{fourier_coefficient, make_connection_set, CirculantGraph};
    use crate::walk::walk_operator;

    fn paley13_blocks() -> Vec<FourierBlock> {
        let g = CirculantGraph::paley(13).unwrap();
        block_decompose(&walk_operator(&g).unwrap()).unwrap().blocks
    }

    #[test]
    fn paley13_block_spectra() {
        let blocks = paley13_blocks();
        let s1 = block_spectrum(&blocks[1], DEFAULT_TOL_EIG).unwrap();
        assert_eq!((s1.mult_plus_one, s1.mult_minus_one), (2, 2));
        assert!((s1.c.unwrap() - 0.217129).abs() < 5e-7);
        let s2 = block_spectrum(&blocks[2], DEFAULT_TOL_EIG).unwrap();
        assert!((s2.c.unwrap() + 0.383796).abs() < 5e-7);
        let theta = s2.theta.unwrap();
        assert!(theta > 0.0 && theta < std::f64::consts::PI);
        assert!((theta.cos() - s2.c.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn paley13_zero_block_is_degenerate() {
        let blocks = paley13_blocks();
        let s0 = block_spectrum(&blocks[0], DEFAULT_TOL_EIG).unwrap();
        assert_eq!(s0.theta, None);
        assert_eq!((s0.mult_plus_one, s0.mult_minus_one), (4, 2));
        assert_eq!(
            recover_c(&blocks[0]).unwrap_err(),
            Error::DegenerateBlock { j: 0 }
        );
    }

    #[test]
    fn classification_errors() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        match classify(3, vec![one, i, -one], 1e-8) {
            Err(Error::UnpairedEigenvalue { j: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match classify(3, vec![i, i], 1e-8) {
            Err(Error::UnpairedEigenvalue { .. }) => {}
            other => panic!("{other:?}"),
        }
        let a = Complex64::from_polar(1.0, 0.5);
        let b = Complex64::from_polar(1.0, 1.5);
        match classify(1, vec![a, a.conj(), b, b.conj()], 1e-8) {
            Err(Error::MoreThanOnePair { count: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        match classify(1, vec![Complex64::new(1.1, 0.0)], 1e-8) {
            Err(Error::NotUnitary { .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn predicted_polynomial_examples() {
        assert_eq!(
            predicted_block_poly(0.0, 4).unwrap().coeffs(),
            &[-1.0, 0.0, 0.0, 0.0, 1.0]
        );
        assert_eq!(predicted_block_poly(1.0, 6), Err(Error::COutOfRange(1.0)));
        assert_eq!(predicted_block_poly(-1.0, 6), Err(Error::COutOfRange(-1.0)));
        assert_eq!(predicted_block_poly(0.1, 5), Err(Error::OddDegree(5)));
        assert_eq!(predicted_block_poly(0.1, 0), Err(Error::DegreeTooSmall(0)));

        // k = 6: compare with the product over its six roots
        let c: f64 = 0.217129;
        let theta = c.acos();
        let one = Complex64::new(1.0, 0.0);
        let roots = [
            one,
            one,
            -one,
            -one,
            Complex64::from_polar(1.0, theta),
            Complex64::from_polar(1.0, -theta),
        ];
        let from_roots = PolynomialCoefficients::from_roots(&roots, 1e-12).unwrap();
        let predicted = predicted_block_poly(c, 6).unwrap();
        assert!(predicted.absolute_distance(&from_roots) < 1e-14);
        // constant term: (−1)^{2}·(1)^{2}... = product of roots = 1·1·1·1·1
        assert!((predicted.coeffs()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn predicted_matches_measured_for_paley13_j5() {
        let blocks = paley13_blocks();
        let spectrum = block_spectrum(&blocks[5], DEFAULT_TOL_EIG).unwrap();
        let predicted = predicted_block_poly(spectrum.c.unwrap(), 6).unwrap();
        assert!(predicted.absolute_distance(&spectrum.polynomial().unwrap()) <= 1e-8);
    }

    #[test]
    fn recovered_c_matches_closed_form() {
        for p in [13u64, 17, 29] {
            let g = CirculantGraph::paley(p).unwrap();
            let k = g.k() as f64;
            let exact = [
                (-(p as f64).sqrt() - 1.0) / (2.0 * k),
                ((p as f64).sqrt() - 1.0) / (2.0 * k),
            ];
            for b in direct_blocks(&g).unwrap().iter().skip(1) {
                let c = recover_c(b).unwrap();
                assert!(exact.iter().any(|e| (e - c).abs() <= 1e-9), "p = {p}: {c}");
                let direct = fourier_coefficient(g.connection_set(), b.j() as u64)
                    .unwrap()
                    .value
                    / k;
                assert!((c - direct).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn trace_matches_classification() {
        for b in paley13_blocks() {
            let s = block_spectrum(&b, DEFAULT_TOL_EIG).unwrap();
            assert!((b.trace().re - s.classified_trace()).abs() <= 1e-9);
            assert_eq!(s.k(), 6);
        }
    }

    #[test]
    fn global_polynomial_of_pentagon() {
        let g = CirculantGraph::new(make_connection_set(5, &[1, 4]).unwrap());
        let poly = global_char_poly(&direct_blocks(&g).unwrap()).unwrap();
        assert_eq!(poly.degree(), 10);
        let cs = extract_c_multiset(&poly, 2, 5).unwrap();
        assert_eq!(cs.len(), 2);
        let quarter = std::f64::consts::TAU / 5.0;
        assert!((cs[0].c - (2.0 * quarter).cos()).abs() < 1e-9);
        assert!((cs[1].c - quarter.cos()).abs() < 1e-9);
        assert!(cs.iter().all(|c| c.multiplicity == 2));
    }

    #[test]
    fn extract_from_paley_polynomials() {
        for (p, lo, hi) in [(13u64, -0.383796, 0.217129), (17, -0.3202, 0.1952)] {
            let g = CirculantGraph::paley(p).unwrap();
            let poly = global_char_poly(&direct_blocks(&g).unwrap()).unwrap();
            assert_eq!(poly.degree(), p as usize * g.k());
            let cs = extract_c_multiset(&poly, g.k(), p).unwrap();
            assert_eq!(cs.len(), 2);
            let half = (p as usize - 1) / 2;
            assert_eq!((cs[0].multiplicity, cs[1].multiplicity), (half, half));
            let tol = if p == 13 { 5e-7 } else { 5e-5 };
            assert!((cs[0].c - lo).abs() < tol && (cs[1].c - hi).abs() < tol);
        }
    }

    #[test]
    fn extract_rejects_wrong_degree() {
        let g = CirculantGraph::paley(13).unwrap();
        let poly = global_char_poly(&direct_blocks(&g).unwrap()).unwrap();
        assert!(matches!(
            extract_c_multiset(&poly, 6, 17),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn single_direct_block_recovery() {
        let g = CirculantGraph::paley(41).unwrap();
        let b = block_direct(&g, 7).unwrap();
        let s = block_spectrum(&b, DEFAULT_TOL_EIG).unwrap();
        assert_eq!((s.mult_plus_one, s.mult_minus_one), (9, 9));
    }
}
