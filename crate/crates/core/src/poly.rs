//! Dense monic real polynomials in ascending-power form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Monic real polynomial, coefficients in ascending powers of λ.
///
/// JSON form: `{"degree": 2, "coeffs": [1.0, -0.4, 1.0], "monic": true}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct PolynomialCoefficients {
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    degree: usize,
    coeffs: Vec<f64>,
    monic: bool,
}

impl From<PolynomialCoefficients> for PolyRepr {
    fn from(p: PolynomialCoefficients) -> Self {
        PolyRepr {
            degree: p.degree(),
            coeffs: p.coeffs,
            monic: true,
        }
    }
}

impl TryFrom<PolyRepr> for PolynomialCoefficients {
    type Error = Error;

    fn try_from(r: PolyRepr) -> Result<Self> {
        if !r.monic {
            return Err(Error::InvalidInput(
                "only monic polynomials are supported".into(),
            ));
        }
        if r.coeffs.len() != r.degree + 1 {
            return Err(Error::InvalidInput(format!(
                "degree {} does not match {} coefficients",
                r.degree,
                r.coeffs.len()
            )));
        }
        PolynomialCoefficients::from_ascending(r.coeffs)
    }
}

impl PolynomialCoefficients {
    pub fn one() -> Self {
        Self { coeffs: vec![1.0] }
    }

    /// The leading coefficient must be 1 (to 1e-12); it is then stored as exactly 1.
    pub fn from_ascending(mut coeffs: Vec<f64>) -> Result<Self> {
        match coeffs.last_mut() {
            Some(lead) if (*lead - 1.0).abs() <= 1e-12 => *lead = 1.0,
            _ => return Err(Error::InvalidInput("polynomial is not monic".into())),
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// `Π (λ − r)`. Imaginary parts are dropped once their largest modulus,
    /// relative to the largest coefficient, is at most `imag_tol`.
    pub fn from_roots(roots: &[Complex64], imag_tol: f64) -> Result<Self> {
        let mut acc = vec![Complex64::new(1.0, 0.0)];
        for r in spread_order(roots) {
            let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
            for (i, &a) in acc.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            acc = next;
        }
        let scale = acc.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
        let imag = acc.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if imag > imag_tol * scale {
            return Err(Error::ComplexCoefficients {
                residual: imag / scale,
            });
        }
        Self::from_ascending(acc.into_iter().map(|z| z.re).collect())
    }

    /// `Π (λ − r)` for the spectrum of a real matrix, multiplied in real
    /// arithmetic: roots with `|Im r| ≤ pair_tol` contribute `λ − Re r`, and
    /// each root in the upper half plane contributes `λ² − 2 Re r·λ + |r|²`
    /// on behalf of itself and its conjugate.
    pub fn from_conjugate_roots(roots: &[Complex64], pair_tol: f64) -> Result<Self> {
        let upper = roots.iter().filter(|r| r.im > pair_tol).count();
        let lower = roots.iter().filter(|r| r.im < -pair_tol).count();
        if upper != lower {
            return Err(Error::InvalidInput(format!(
                "roots are not closed under conjugation ({upper} above, {lower} below the axis)"
            )));
        }
        let mut coeffs = vec![1.0];
        for r in spread_order(roots).filter(|r| r.im >= -pair_tol) {
            let factor: &[f64] = if r.im > pair_tol {
                &[r.norm_sqr(), -2.0 * r.re, 1.0]
            } else {
                &[-r.re, 1.0]
            };
            let mut next = vec![0.0; coeffs.len() + factor.len() - 1];
            for (i, &a) in coeffs.iter().enumerate() {
                for (m, &f) in factor.iter().enumerate() {
                    next[i + m] += a * f;
                }
            }
            coeffs = next;
        }
        Self::from_ascending(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Product by coefficient convolution.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Self>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| acc.mul(f))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max)
    }

    /// `max_i |a_i − b_i| / max(‖a‖_∞, ‖b‖_∞)`; infinite when the degrees differ.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        if self.degree() != other.degree() {
            return f64::INFINITY;
        }
        let scale = self.max_abs().max(other.max_abs());
        let diff = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        diff / scale
    }

    /// Largest absolute coefficient difference; infinite when degrees differ.
    pub fn absolute_distance(&self, other: &Self) -> f64 {
        if self.degree() != other.degree() {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        self.relative_distance(other) <= rel_tol
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Power sums `P_m = Σ λ_i^m` of the roots for `m = 0..=max`, from the
    /// coefficients by Newton's identities.
    pub fn power_sums(&self, max: usize) -> Vec<f64> {
        let n = self.degree();
        // e[i] is the coefficient of λ^{n−i}
        let e = |i: usize| if i <= n { self.coeffs[n - i] } else { 0.0 };
        let mut sums = Vec::with_capacity(max + 1);
        sums.push(n as f64);
        for m in 1..=max {
            let mut s = -(m as f64) * e(m);
            for i in 1..m {
                s -= e(i) * sums[m - i];
            }
            sums.push(s);
        }
        sums
    }

    /// `|a_i − s·a_{n−i}|` maximized over `i`, relative to the largest
    /// coefficient; zero for a self-reciprocal polynomial with sign `s`.
    pub fn palindromic_defect(&self, sign: f64) -> f64 {
        let n = self.degree();
        let worst = (0..=n)
            .map(|i| (self.coeffs[i] - sign * self.coeffs[n - i]).abs())
            .fold(0.0, f64::max);
        worst / self.max_abs()
    }
}

/// Roots sorted by argument and then visited in bit-reversed index order, so
/// every partial product samples the whole circle. Multiplying a cluster of
/// equal roots in a row builds binomial-sized intermediate coefficients that
/// later cancel and take all precision with them.
fn spread_order(roots: &[Complex64]) -> impl Iterator<Item = Complex64> + '_ {
    let mut sorted: Vec<usize> = (0..roots.len()).collect();
    sorted.sort_by(|&a, &b| roots[a].arg().total_cmp(&roots[b].arg()));
    let n = roots.len();
    let bits = n.next_power_of_two().trailing_zeros();
    (0..n.next_power_of_two())
        .map(move |i| {
            if bits == 0 {
                0
            } else {
                i.reverse_bits() >> (usize::BITS - bits)
            }
        })
        .filter(move |&i| i < n)
        .map(move |i| roots[sorted[i]])
}
