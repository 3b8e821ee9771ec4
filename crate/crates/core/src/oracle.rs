//! Brute-force ground truth used to falsify the fast paths.
//!
//! Nothing here is on the library's main route; everything is size-guarded.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::linalg;
use crate::modp::AdjacencyMatrix;
use crate::poly::PolynomialCoefficients;
use crate::walk::WalkOperator;

pub const CHAR_POLY_LIMIT: usize = 1000;
pub const PERMUTATION_LIMIT: usize = 8;
/// Eigenvalues closer than this to the real axis count as real.
pub const ORACLE_REAL_TOL: f64 = 1e-9;

/// `det(λI − U)` from a dense eigendecomposition of the whole operator.
///
/// `U` is real, so the real eigensolver is used and conjugate eigenvalues are
/// multiplied pairwise as real quadratics.
pub fn char_poly_oracle(u: &WalkOperator) -> Result<PolynomialCoefficients> {
    if u.dim() > CHAR_POLY_LIMIT {
        return Err(Error::TooLarge {
            size: u.dim(),
            limit: CHAR_POLY_LIMIT,
        });
    }
    let m = u.matrix();
    let real = faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].re);
    let ev = linalg::real_eigenvalues(&real)?;
    PolynomialCoefficients::from_conjugate_roots(&ev, ORACLE_REAL_TOL)
}

/// Exhaustive search for a vertex permutation mapping `a1` onto `a2`.
pub fn brute_force_isomorphic(a1: &AdjacencyMatrix, a2: &AdjacencyMatrix) -> Result<bool> {
    if a1.n() != a2.n() {
        return Err(Error::ShapeMismatch(a1.n(), a2.n()));
    }
    let n = a1.n();
    if n > PERMUTATION_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: PERMUTATION_LIMIT,
        });
    }
    let deg1: Vec<usize> = (0..n).map(|u| a1.degree(u)).collect();
    let deg2: Vec<usize> = (0..n).map(|u| a2.degree(u)).collect();
    let mut s1 = deg1.clone();
    let mut s2 = deg2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(false);
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(a1, a2, &deg1, &deg2, 0, &mut image, &mut used))
}

fn extend(
    a1: &AdjacencyMatrix,
    a2: &AdjacencyMatrix,
    deg1: &[usize],
    deg2: &[usize],
    next: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a1.n();
    if next == n {
        return true;
    }
    for v in 0..n {
        if used[v] || deg1[next] != deg2[v] {
            continue;
        }
        let consistent = (0..next).all(|u| a1.get(u, next) == a2.get(image[u], v));
        if !consistent {
            continue;
        }
        image[next] = v;
        used[v] = true;
        if extend(a1, a2, deg1, deg2, next + 1, image, used) {
            return true;
        }
        used[v] = false;
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    CharPoly,
    Iso,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OraclePayload {
    CharPoly(PolynomialCoefficients),
    Iso(bool),
}

/// An oracle answer with the wall time it took.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub kind: OracleKind,
    pub payload: OraclePayload,
    pub cost: Duration,
}

impl OracleResult {
    pub fn char_poly(u: &WalkOperator) -> Result<Self> {
        let start = Instant::now();
        let poly = char_poly_oracle(u)?;
        Ok(Self {
            kind: OracleKind::CharPoly,
            payload: OraclePayload::CharPoly(poly),
            cost: start.elapsed(),
        })
    }

    pub fn isomorphism(a1: &AdjacencyMatrix, a2: &AdjacencyMatrix) -> Result<Self> {
        let start = Instant::now();
        let iso = brute_force_isomorphic(a1, a2)?;
        Ok(Self {
            kind: OracleKind::Iso,
            payload: OraclePayload::Iso(iso),
            cost: start.elapsed(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::{make_connection_set, CirculantGraph};
    use crate::walk::walk_operator;
    use num_complex::Complex64;

    fn graph(p: u64, s: &[i64]) -> CirculantGraph {
        CirculantGraph::new(make_connection_set(p, s).unwrap())
    }

    #[test]
    fn pentagon_relabelled() {
        let a = graph(5, &[1, 4]).adjacency_matrix();
        let b = a.permuted(&[3, 0, 4, 1, 2]);
        assert_ne!(a, b);
        assert!(brute_force_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn seven_cycles() {
        let a = graph(7, &[1, 6]).adjacency_matrix();
        let b = graph(7, &[2, 5]).adjacency_matrix();
        assert!(brute_force_isomorphic(&a, &b).unwrap());
        let c = graph(7, &[1, 2, 5, 6]).adjacency_matrix();
        assert!(!brute_force_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn same_degree_non_isomorphic() {
        // two triangles versus a hexagon
        let mut rows = vec![vec![0u8; 6]; 6];
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            rows[u][v] = 1;
            rows[v][u] = 1;
        }
        let triangles = AdjacencyMatrix::from_rows(&rows).unwrap();
        let mut rows = vec![vec![0u8; 6]; 6];
        for u in 0..6 {
            rows[u][(u + 1) % 6] = 1;
            rows[(u + 1) % 6][u] = 1;
        }
        let hexagon = AdjacencyMatrix::from_rows(&rows).unwrap();
        assert!(!brute_force_isomorphic(&triangles, &hexagon).unwrap());
    }

    #[test]
    fn size_guards() {
        let a = graph(11, &[1, 10]).adjacency_matrix();
        assert!(matches!(
            brute_force_isomorphic(&a, &a),
            Err(Error::TooLarge { .. })
        ));
        let b = graph(5, &[1, 4]).adjacency_matrix();
        assert_eq!(
            brute_force_isomorphic(&a, &b),
            Err(Error::ShapeMismatch(11, 5))
        );
    }

    #[test]
    fn pentagon_char_poly() {
        let u = walk_operator(&graph(5, &[1, 4])).unwrap();
        let r = OracleResult::char_poly(&u).unwrap();
        assert_eq!(r.kind, OracleKind::CharPoly);
        let OraclePayload::CharPoly(poly) = r.payload else {
            panic!("wrong payload")
        };
        assert_eq!(poly.degree(), 10);
        assert!(poly.eval(Complex64::new(1.0, 0.0)).norm() < 1e-10);
        let ev = linalg::eigenvalues(u.matrix()).unwrap();
        assert!(ev.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
    }
}
