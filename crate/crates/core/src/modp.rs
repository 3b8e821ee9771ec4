//! Arithmetic over ℤ_p, connection sets and circulant graphs.
//!
//! A circulant graph `Cay(ℤ_p, S)` is fully described by its connection set
//! `S`, so [`ConnectionSet`] is the unit everything else is built from. It is
//! kept in a canonical form (sorted representatives in `[1, p-1]`) and equality
//! is structural on that form.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest imaginary part tolerated in `Σ_s ω^{js}` before it is discarded.
pub const FOURIER_IMAG_TOL: f64 = 1e-10;

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An odd prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Canonical representative of `x` in `[0, p)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn neg(self, x: u64) -> u64 {
        (self.0 - x % self.0) % self.0
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    /// `ω^m` with `ω = e^{2πi/p}`. The exponent is reduced mod p before the
    /// angle is formed so the phase error does not grow with `|m|`.
    pub fn omega_pow(self, m: i64) -> Complex64 {
        let r = self.reduce(m);
        let angle = 2.0 * PI * r as f64 / self.0 as f64;
        Complex64::new(angle.cos(), angle.sin())
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<'de> Deserialize<'de> for PrimeModulus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        PrimeModulus::new(p).map_err(serde::de::Error::custom)
    }
}

/// A symmetric subset `S ⊂ ℤ_p \ {0}`.
///
/// Serialized as `{"p": 13, "elements": [1, 3, 4, 9, 10, 12]}`; deserialization
/// runs the same validation as [`make_connection_set`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawConnectionSet")]
pub struct ConnectionSet {
    p: PrimeModulus,
    elements: Vec<u64>,
}

#[derive(Deserialize)]
struct RawConnectionSet {
    p: u64,
    elements: Vec<i64>,
}

impl TryFrom<RawConnectionSet> for ConnectionSet {
    type Error = Error;

    fn try_from(raw: RawConnectionSet) -> Result<Self> {
        make_connection_set(raw.p, &raw.elements)
    }
}

/// Validates and normalizes a connection set: elements are reduced mod p,
/// sorted and deduplicated; the result must exclude 0 and be closed under
/// negation. Closure under negation forces `k` to be even.
pub fn make_connection_set(p: u64, elements: &[i64]) -> Result<ConnectionSet> {
    let modulus = PrimeModulus::new(p)?;
    if elements.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut reduced: Vec<u64> = elements.iter().map(|&x| modulus.reduce(x)).collect();
    reduced.sort_unstable();
    reduced.dedup();
    if reduced[0] == 0 {
        return Err(Error::ZeroInSet { p });
    }
    for &s in &reduced {
        let neg = modulus.neg(s);
        if reduced.binary_search(&neg).is_err() {
            return Err(Error::NotSymmetric {
                p,
                element: s,
                missing: neg,
            });
        }
    }
    Ok(ConnectionSet {
        p: modulus,
        elements: reduced,
    })
}

/// Nonzero quadratic residues mod p, for `p ≡ 1 (mod 4)`.
pub fn paley_connection_set(p: u64) -> Result<ConnectionSet> {
    let modulus = PrimeModulus::new(p)?;
    if p % 4 != 1 {
        return Err(Error::NotCongruentOneModFour(p));
    }
    let squares: Vec<i64> = (1..p).map(|x| modulus.mul(x, x) as i64).collect();
    make_connection_set(p, &squares)
}

impl ConnectionSet {
    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn p(&self) -> u64 {
        self.p.get()
    }

    /// Sorted canonical representatives.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// The degree `k = |S|`.
    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&(x % self.p())).is_ok()
    }

    /// Position of `s` in the canonical (ascending) ordering.
    pub fn position(&self, s: u64) -> Option<usize> {
        self.elements.binary_search(&(s % self.p())).ok()
    }

    /// `t·S = {t·s mod p}`. Returns `None` when `p | t`.
    pub fn scaled(&self, t: u64) -> Option<ConnectionSet> {
        if t % self.p() == 0 {
            return None;
        }
        let mut elements: Vec<u64> = self.elements.iter().map(|&s| self.p.mul(t, s)).collect();
        elements.sort_unstable();
        Some(ConnectionSet {
            p: self.p,
            elements,
        })
    }

    /// Indicator function `𝟙_S` as a length-p vector.
    pub fn indicator(&self) -> Vec<bool> {
        let mut out = vec![false; self.p() as usize];
        for &s in &self.elements {
            out[s as usize] = true;
        }
        out
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}} mod {}", self.p)
    }
}

/// Number of symmetric connection sets of size `k` in ℤ_p, `C((p-1)/2, k/2)`.
pub fn symmetric_set_count(p: u64, k: usize) -> u128 {
    if k % 2 == 1 || k == 0 {
        return 0;
    }
    binomial((p as u128 - 1) / 2, k as u128 / 2)
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Every symmetric connection set of size `k` in ℤ_p, in lexicographic order
/// of the chosen negation pairs `{s, p-s}`, `1 ≤ s ≤ (p-1)/2`.
pub fn symmetric_sets(p: u64, k: usize) -> Result<Vec<ConnectionSet>> {
    let modulus = PrimeModulus::new(p)?;
    if k == 0 || k % 2 == 1 || k as u64 > p - 1 {
        return Err(Error::InvalidInput(format!(
            "no symmetric connection sets of size {k} in Z_{p}"
        )));
    }
    let half = ((p - 1) / 2) as usize;
    let pick = k / 2;
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = (0..pick).collect();
    loop {
        let elements: Vec<i64> = chosen
            .iter()
            .flat_map(|&i| {
                let s = i as i64 + 1;
                [s, modulus.get() as i64 - s]
            })
            .collect();
        out.push(make_connection_set(p, &elements)?);

        // advance the combination
        let mut i = pick;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if chosen[i] < half - pick + i {
                break;
            }
        }
        chosen[i] += 1;
        for l in i + 1..pick {
            chosen[l] = chosen[l - 1] + 1;
        }
    }
}

/// Parameters `(n, k, λ, μ)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParameters {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParameters {
    /// `k(k − λ − 1) = (n − k − 1)μ`.
    pub fn is_feasible(&self) -> bool {
        let (n, k, l, m) = (
            self.n as i128,
            self.k as i128,
            self.lambda as i128,
            self.mu as i128,
        );
        k * (k - l - 1) == (n - k - 1) * m
    }
}

impl fmt::Display for SrgParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

/// A 0/1 adjacency matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    data: Vec<u8>,
}

impl AdjacencyMatrix {
    /// Builds from explicit rows; must be square, 0/1, symmetric, zero diagonal.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidInput("adjacency matrix is not square".into()));
            }
            data.extend_from_slice(row);
        }
        let m = Self { n, data };
        for u in 0..n {
            if m.get(u, u) != 0 {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            for v in 0..n {
                let x = m.get(u, v);
                if x > 1 || x != m.get(v, u) {
                    return Err(Error::InvalidInput(format!(
                        "entry ({u},{v}) breaks the 0/1 symmetric form"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u8 {
        self.data[u * self.n + v]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.data[u * self.n..(u + 1) * self.n]
            .iter()
            .map(|&x| x as usize)
            .sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (0..self.n).all(|v| self.get(u, v) == self.get(v, u)))
    }

    /// Relabels vertices: the result has an edge `{π(u), π(v)}` for every
    /// edge `{u, v}` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> AdjacencyMatrix {
        let mut data = vec![0u8; self.n * self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                data[perm[u] * self.n + perm[v]] = self.get(u, v);
            }
        }
        AdjacencyMatrix { n: self.n, data }
    }

    fn squared(&self) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for u in 0..n {
            for w in 0..n {
                if self.get(u, w) == 0 {
                    continue;
                }
                for v in 0..n {
                    out[u * n + v] += self.get(w, v) as u64;
                }
            }
        }
        out
    }
}

/// `Cay(ℤ_p, S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CirculantGraph {
    set: ConnectionSet,
}

impl CirculantGraph {
    pub fn new(set: ConnectionSet) -> Self {
        Self { set }
    }

    pub fn paley(p: u64) -> Result<Self> {
        paley_connection_set(p).map(Self::new)
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.set.modulus()
    }

    pub fn p(&self) -> u64 {
        self.set.p()
    }

    pub fn k(&self) -> usize {
        self.set.k()
    }

    /// `A[u][v] = 1` iff `v − u mod p ∈ S`.
    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let p = self.p() as usize;
        let modulus = self.modulus();
        let mut data = vec![0u8; p * p];
        for u in 0..p {
            for v in 0..p {
                if self.set.contains(modulus.reduce(v as i64 - u as i64)) {
                    data[u * p + v] = 1;
                }
            }
        }
        AdjacencyMatrix { n: p, data }
    }

    /// Strong-regularity check through the integer identity
    /// `A² = kI + λA + μ(J − I − A)`. Returns `None` when the identity fails
    /// for every choice of `λ, μ`, and for the complete graph (no
    /// non-adjacent pair to pin μ).
    pub fn srg_parameters(&self) -> Option<SrgParameters> {
        let a = self.adjacency_matrix();
        let n = a.n();
        let sq = a.squared();
        let k = self.k() as u64;
        let first_adjacent = self.set.elements()[0] as usize;
        let first_non_adjacent = (1..n).find(|&v| a.get(0, v) == 0)?;
        let lambda = sq[first_adjacent];
        let mu = sq[first_non_adjacent];
        for u in 0..n {
            for v in 0..n {
                let expected = if u == v {
                    k
                } else if a.get(u, v) == 1 {
                    lambda
                } else {
                    mu
                };
                if sq[u * n + v] != expected {
                    return None;
                }
            }
        }
        Some(SrgParameters {
            n: n as u64,
            k,
            lambda,
            mu,
        })
    }

    pub fn is_strongly_regular(&self) -> bool {
        self.srg_parameters().is_some()
    }
}

/// `Â_G(j)` for one frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierCoefficient {
    pub j: u64,
    pub value: f64,
}

/// `Â_G(j) = Σ_{s∈S} ω^{js}` by direct summation. The imaginary part vanishes
/// because `S = −S`; it is checked against [`FOURIER_IMAG_TOL`] and dropped.
pub fn fourier_coefficient(s: &ConnectionSet, j: u64) -> Result<FourierCoefficient> {
    let p = s.p();
    if j >= p {
        return Err(Error::IndexOutOfRange { p, j });
    }
    let modulus = s.modulus();
    let sum: Complex64 = s
        .elements()
        .iter()
        .map(|&x| modulus.omega_pow(modulus.mul(j, x) as i64))
        .sum();
    if sum.im.abs() > FOURIER_IMAG_TOL {
        return Err(Error::ImaginaryResidualTooLarge { j, imag: sum.im });
    }
    Ok(FourierCoefficient { j, value: sum.re })
}

/// All `p` coefficients `Â_G(0), …, Â_G(p−1)`.
pub fn fourier_coefficients(s: &ConnectionSet) -> Result<Vec<f64>> {
    (0..s.p())
        .map(|j| fourier_coefficient(s, j).map(|c| c.value))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(PrimeModulus::new(2).is_err());
        assert_eq!(PrimeModulus::new(15), Err(Error::NotPrime(15)));
    }

    #[test]
    fn paley_13_is_quadratic_residues() {
        let s = make_connection_set(13, &[1, 3, 4, 9, 10, 12]).unwrap();
        assert_eq!(s.k(), 6);
        assert_eq!(paley_connection_set(13).unwrap(), s);
        assert_eq!(paley_connection_set(17).unwrap().k(), 8);
        assert_eq!(paley_connection_set(5).unwrap().elements(), &[1, 4]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            make_connection_set(13, &[1, 2]),
            Err(Error::NotSymmetric {
                p: 13,
                element: 1,
                missing: 12
            })
        );
        assert_eq!(
            make_connection_set(13, &[0, 1, 12]),
            Err(Error::ZeroInSet { p: 13 })
        );
        assert_eq!(
            make_connection_set(13, &[13, 1, 12]),
            Err(Error::ZeroInSet { p: 13 })
        );
        assert_eq!(make_connection_set(9, &[1, 8]), Err(Error::NotPrime(9)));
        assert_eq!(make_connection_set(13, &[]), Err(Error::EmptySet));
        assert_eq!(
            paley_connection_set(7),
            Err(Error::NotCongruentOneModFour(7))
        );
        assert_eq!(paley_connection_set(21), Err(Error::NotPrime(21)));
    }

    #[test]
    fn normalization() {
        let s = make_connection_set(5, &[4, -1, 1, 6, 1]).unwrap();
        assert_eq!(s.elements(), &[1, 4]);
        assert_eq!(s.k(), 2);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = paley_connection_set(13).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"p":13,"elements":[1,3,4,9,10,12]}"#);
        let back: ConnectionSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<ConnectionSet>(r#"{"p":13,"elements":[1,2]}"#).is_err());
        assert!(serde_json::from_str::<ConnectionSet>(r#"{"p":12,"elements":[1,11]}"#).is_err());
    }

    #[test]
    fn pentagon_adjacency() {
        let g = CirculantGraph::new(make_connection_set(5, &[1, 4]).unwrap());
        let a = g.adjacency_matrix();
        let expected = AdjacencyMatrix::from_rows(&[
            vec![0, 1, 0, 0, 1],
            vec![1, 0, 1, 0, 0],
            vec![0, 1, 0, 1, 0],
            vec![0, 0, 1, 0, 1],
            vec![1, 0, 0, 1, 0],
        ])
        .unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn adjacency_rows_and_symmetry() {
        let g = CirculantGraph::paley(13).unwrap();
        let a = g.adjacency_matrix();
        assert!(a.is_symmetric());
        assert!((0..13).all(|u| a.degree(u) == 6 && a.get(u, u) == 0));
    }

    #[test]
    fn srg_parameters_of_paley_graphs() {
        for p in [13u64, 17, 29, 41] {
            let params = CirculantGraph::paley(p).unwrap().srg_parameters().unwrap();
            assert_eq!(
                params,
                SrgParameters {
                    n: p,
                    k: (p - 1) / 2,
                    lambda: (p - 5) / 4,
                    mu: (p - 1) / 4
                }
            );
            assert!(params.is_feasible());
        }
        assert_eq!(
            CirculantGraph::paley(29).unwrap().srg_parameters().unwrap(),
            SrgParameters {
                n: 29,
                k: 14,
                lambda: 6,
                mu: 7
            }
        );
    }

    #[test]
    fn cycle_13_is_not_strongly_regular() {
        // A² for the 13-cycle: vertices at distance 2 share one neighbour,
        // other non-adjacent pairs share none, so μ is not constant.
        let g = CirculantGraph::new(make_connection_set(13, &[1, 12]).unwrap());
        assert_eq!(g.srg_parameters(), None);
        // the pentagon is srg(5,2,0,1)
        let c5 = CirculantGraph::new(make_connection_set(5, &[1, 4]).unwrap());
        assert_eq!(
            c5.srg_parameters(),
            Some(SrgParameters {
                n: 5,
                k: 2,
                lambda: 0,
                mu: 1
            })
        );
    }

    #[test]
    fn fourier_coefficients_of_paley_13() {
        let s = paley_connection_set(13).unwrap();
        assert_eq!(fourier_coefficient(&s, 0).unwrap().value, 6.0);
        let a1 = fourier_coefficient(&s, 1).unwrap().value;
        let a2 = fourier_coefficient(&s, 2).unwrap().value;
        assert!((a1 - 6.0 * 0.217129).abs() < 1e-5);
        assert!((a2 + 6.0 * 0.383796).abs() < 1e-5);
        // Gauss sum values (−1 ± √13)/2
        assert!((a1 - (13f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        assert!((a2 + (13f64.sqrt() + 1.0) / 2.0).abs() < 1e-12);
        assert_eq!(
            fourier_coefficient(&s, 13),
            Err(Error::IndexOutOfRange { p: 13, j: 13 })
        );
    }

    #[test]
    fn srg_spectrum_has_two_restricted_values() {
        for p in [13u64, 17, 29, 41] {
            let s = paley_connection_set(p).unwrap();
            let coeffs = fourier_coefficients(&s).unwrap();
            let mut distinct: Vec<f64> = Vec::new();
            for &c in &coeffs[1..] {
                if !distinct.iter().any(|&d| (d - c).abs() < 1e-9) {
                    distinct.push(c);
                }
            }
            assert_eq!(distinct.len(), 2, "p = {p}");
            // inversion at u = 0 and Parseval
            let sum: f64 = coeffs.iter().sum();
            assert!((sum / p as f64).abs() <= 1e-9);
            let energy: f64 = coeffs.iter().map(|c| c * c).sum();
            let expected = (p as usize * s.k()) as f64;
            assert!((energy - expected).abs() <= 1e-8 * expected);
        }
    }

    #[test]
    fn enumerates_symmetric_sets() {
        let sets = symmetric_sets(13, 6).unwrap();
        assert_eq!(sets.len(), 20);
        assert_eq!(symmetric_set_count(13, 6), 20);
        assert!(sets.windows(2).all(|w| w[0] != w[1]));
        assert_eq!(symmetric_sets(5, 2).unwrap().len(), 2);
        assert!(symmetric_sets(13, 14).is_err());
        assert!(symmetric_sets(13, 5).is_err());
        assert_eq!(symmetric_set_count(41, 20), 184_756);
    }

    #[test]
    fn scaling_by_a_multiplier() {
        let s = make_connection_set(13, &[1, 12]).unwrap();
        assert_eq!(s.scaled(2).unwrap().elements(), &[2, 11]);
        assert!(s.scaled(13).is_none());
    }
}
