//! Report builders behind the command-line tool: one verification row per
//! Paley graph, the per-frequency coefficient table, and the exhaustive scan
//! over symmetric connection sets.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{block_decompose, direct_blocks};
use crate::modp::{
    fourier_coefficient, symmetric_set_count, symmetric_sets, CirculantGraph, ConnectionSet,
    SrgParameters,
};
use crate::recovery::{recover_connection_set, turner_isomorphic, POLY_REL_TOL};
use crate::spectral::{extract_c_multiset, global_char_poly, recover_c_with_tol, DEFAULT_TOL_EIG};
use crate::walk::walk_operator;
use crate::PolynomialCoefficients;

/// Largest number of candidate sets [`scan`] will enumerate.
pub const SCAN_LIMIT: u128 = 100_000;
/// Overridden tolerances must lie in `(0, MAX_TOLERANCE]`.
pub const MAX_TOLERANCE: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eig: DEFAULT_TOL_EIG,
        }
    }
}

impl Tolerances {
    pub fn with_eig(eig: f64) -> Result<Self> {
        if !(eig > 0.0 && eig <= MAX_TOLERANCE) {
            return Err(Error::InvalidInput(format!(
                "eigenvalue tolerance {eig} must be positive and at most {MAX_TOLERANCE}"
            )));
        }
        Ok(Self { eig })
    }

    pub fn eig(&self) -> f64 {
        self.eig
    }
}

/// One row of the Paley verification table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub p: u64,
    pub parameters: SrgParameters,
    pub k: usize,
    /// Distinct `c_j`, `j ≠ 0`, ascending, read from the global polynomial.
    pub c_values: Vec<f64>,
    pub off_diagonal_residual: f64,
    pub recovered: bool,
}

pub fn verify_paley(p: u64, tol: Tolerances) -> Result<VerifyRow> {
    let g = CirculantGraph::paley(p)?;
    let parameters = g.srg_parameters().ok_or_else(|| {
        Error::InvalidInput(format!("Paley({p}) failed the strong regularity check"))
    })?;
    let u = walk_operator(&g)?;
    let dec = block_decompose(&u)?;

    let mut c_values = vec![1.0];
    for block in &dec.blocks[1..] {
        c_values.push(recover_c_with_tol(block, tol.eig())?);
    }
    let recovered = match recover_connection_set(&c_values, p, g.k()) {
        Ok(report) => &report.recovered_set == g.connection_set(),
        Err(
            Error::RoundingResidualTooLarge { .. }
            | Error::WrongCardinality { .. }
            | Error::NonzeroAtOrigin { .. }
            | Error::NotSymmetric { .. },
        ) => false,
        Err(e) => return Err(e),
    };

    let poly = global_char_poly(&dec.blocks)?;
    let distinct = extract_c_multiset(&poly, g.k(), p)?;
    Ok(VerifyRow {
        p,
        parameters,
        k: g.k(),
        c_values: distinct.iter().map(|c| c.c).collect(),
        off_diagonal_residual: dec.off_diagonal_residual,
        recovered,
    })
}

/// `Â(j)/k` computed directly next to the value read off block `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub j: u64,
    pub direct: f64,
    pub recovered: f64,
    pub abs_diff: f64,
}

pub fn coefficient_table(g: &CirculantGraph, tol: Tolerances) -> Result<Vec<CoefficientRow>> {
    let u = walk_operator(g)?;
    let dec = block_decompose(&u)?;
    let k = g.k() as f64;
    dec.blocks
        .iter()
        .map(|block| {
            let j = block.j() as u64;
            let direct = fourier_coefficient(g.connection_set(), j)?.value / k;
            // the j = 0 block carries no pair; Â(0) = k for every k-regular graph
            let recovered = if j == 0 {
                1.0
            } else {
                recover_c_with_tol(block, tol.eig())?
            };
            Ok(CoefficientRow {
                j,
                direct,
                recovered,
                abs_diff: (direct - recovered).abs(),
            })
        })
        .collect()
}

pub fn paley_table(p: u64, tol: Tolerances) -> Result<Vec<CoefficientRow>> {
    coefficient_table(&CirculantGraph::paley(p)?, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanMember {
    pub set: Vec<u64>,
    pub srg: Option<SrgParameters>,
    /// Smallest `t` mapping the group's first member onto this one.
    pub multiplier_from_first: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanGroup {
    pub id: usize,
    pub members: Vec<ScanMember>,
}

/// Two strongly regular members with `k ≥ 6` on which the polynomial
/// comparison and the multiplier search disagree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanAnomaly {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub spectral_equal: bool,
    pub turner: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub p: u64,
    pub k: usize,
    pub set_count: usize,
    pub srg_count: usize,
    pub groups: Vec<ScanGroup>,
    pub anomalies: Vec<ScanAnomaly>,
    /// Disagreeing pairs that are not both strongly regular with k ≥ 6.
    pub other_disagreements: usize,
}

/// Enumerates every symmetric connection set of size `k` in ℤ_p, groups them
/// by walk characteristic polynomial and compares the grouping with the
/// multiplier classes.
///
/// Polynomials come from directly assembled Fourier blocks; the full
/// conjugation route is too slow for large enumerations and is checked
/// against the direct route elsewhere.
pub fn scan(p: u64, k: usize) -> Result<ScanReport> {
    let count = symmetric_set_count(p, k);
    if count > SCAN_LIMIT {
        return Err(Error::TooManySets {
            count,
            limit: SCAN_LIMIT,
        });
    }
    let sets = symmetric_sets(p, k)?;
    let mut analysed: Vec<(ConnectionSet, PolynomialCoefficients, Option<SrgParameters>)> = sets
        .into_par_iter()
        .map(|s| {
            let g = CirculantGraph::new(s);
            let poly = global_char_poly(&direct_blocks(&g)?)?;
            let srg = g.srg_parameters();
            Ok((g.connection_set().clone(), poly, srg))
        })
        .collect::<Result<_>>()?;
    // emission order is the sorted element list, whatever the enumeration order
    analysed.sort_by(|a, b| a.0.elements().cmp(b.0.elements()));

    // grouping by tolerance against each group's first member
    let mut group_of = Vec::with_capacity(analysed.len());
    let mut representatives: Vec<usize> = Vec::new();
    for (i, (_, poly, _)) in analysed.iter().enumerate() {
        let found = representatives
            .iter()
            .position(|&r| analysed[r].1.approx_eq(poly, POLY_REL_TOL));
        match found {
            Some(g) => group_of.push(g),
            None => {
                group_of.push(representatives.len());
                representatives.push(i);
            }
        }
    }

    // multiplier classes via the orbit minimum of t·S
    let class_of: Vec<Vec<u64>> = analysed
        .iter()
        .map(|(s, _, _)| {
            (1..p)
                .filter_map(|t| s.scaled(t))
                .map(|x| x.elements().to_vec())
                .min()
                .expect("p > 1")
        })
        .collect();

    let srg_members: Vec<usize> = (0..analysed.len())
        .filter(|&i| analysed[i].2.is_some())
        .collect();
    let mut anomalies = Vec::new();
    for (x, &i) in srg_members.iter().enumerate() {
        for &j in &srg_members[x + 1..] {
            let spectral_equal = group_of[i] == group_of[j];
            let turner = class_of[i] == class_of[j];
            if spectral_equal != turner && k >= 6 {
                anomalies.push(ScanAnomaly {
                    a: analysed[i].0.elements().to_vec(),
                    b: analysed[j].0.elements().to_vec(),
                    spectral_equal,
                    turner,
                });
            }
        }
    }

    // pairs split differently by the two partitions
    let mut by_group: HashMap<usize, usize> = HashMap::new();
    let mut by_class: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut by_both: HashMap<(usize, Vec<u64>), usize> = HashMap::new();
    for i in 0..analysed.len() {
        *by_group.entry(group_of[i]).or_insert(0) += 1;
        *by_class.entry(class_of[i].clone()).or_insert(0) += 1;
        *by_both
            .entry((group_of[i], class_of[i].clone()))
            .or_insert(0) += 1;
    }
    let both = pairs(&by_both);
    let total_disagreements = pairs(&by_group) - both + pairs(&by_class) - both;

    let mut groups: Vec<ScanGroup> = representatives
        .iter()
        .enumerate()
        .map(|(id, _)| ScanGroup {
            id,
            members: Vec::new(),
        })
        .collect();
    for (i, (s, _, srg)) in analysed.iter().enumerate() {
        let first = &analysed[representatives[group_of[i]]].0;
        groups[group_of[i]].members.push(ScanMember {
            set: s.elements().to_vec(),
            srg: *srg,
            multiplier_from_first: turner_isomorphic(first, s)?,
        });
    }

    Ok(ScanReport {
        p,
        k,
        set_count: analysed.len(),
        srg_count: srg_members.len(),
        groups,
        other_disagreements: total_disagreements - anomalies.len(),
        anomalies,
    })
}

fn pairs<K>(counts: &HashMap<K, usize>) -> usize {
    counts.values().map(|&c| c * (c - 1) / 2).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_bounds() {
        assert!(Tolerances::with_eig(1e-9).is_ok());
        assert!(Tolerances::with_eig(1e-2).is_ok());
        assert!(Tolerances::with_eig(0.0).is_err());
        assert!(Tolerances::with_eig(-1e-8).is_err());
        assert!(Tolerances::with_eig(0.5).is_err());
        assert_eq!(Tolerances::default().eig(), 1e-8);
    }

    #[test]
    fn verify_row_for_13() {
        let row = verify_paley(13, Tolerances::default()).unwrap();
        assert_eq!(
            row.parameters,
            SrgParameters {
                n: 13,
                k: 6,
                lambda: 2,
                mu: 3
            }
        );
        assert_eq!(row.c_values.len(), 2);
        assert!((row.c_values[0] + 0.3838).abs() < 5e-5);
        assert!((row.c_values[1] - 0.2171).abs() < 5e-5);
        assert!(row.off_diagonal_residual <= 1e-10);
        assert!(row.recovered);
        assert_eq!(
            verify_paley(7, Tolerances::default()),
            Err(Error::NotCongruentOneModFour(7))
        );
    }

    #[test]
    fn coefficient_table_rows() {
        let rows = paley_table(13, Tolerances::default()).unwrap();
        assert_eq!(rows.len(), 13);
        assert_eq!((rows[0].direct, rows[0].recovered), (1.0, 1.0));
        assert!((rows[7].direct + 0.383796).abs() < 5e-7);
        assert!(rows.iter().all(|r| r.abs_diff <= 1e-5));
    }

    #[test]
    fn scan_pentagon() {
        let report = scan(5, 2).unwrap();
        assert_eq!(report.set_count, 2);
        assert_eq!(report.groups.len(), 1);
        let members = &report.groups[0].members;
        assert_eq!(members[0].set, vec![1, 4]);
        assert_eq!(members[1].set, vec![2, 3]);
        assert_eq!(members[1].multiplier_from_first, Some(2));
        assert!(report.anomalies.is_empty());
        assert_eq!(report.other_disagreements, 0);
    }

    #[test]
    fn scan_input_errors() {
        assert!(matches!(scan(13, 14), Err(Error::InvalidInput(_))));
        assert!(matches!(scan(13, 3), Err(Error::InvalidInput(_))));
        assert!(matches!(scan(83, 40), Err(Error::TooManySets { .. })));
    }
}
