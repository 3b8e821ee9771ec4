//! Report generation behind the `qwiso` binary.
//!
//! Every command produces a [`Report`]: rendered text plus the exit code the
//! process should finish with. Numbers are rounded before rendering (6
//! decimals for coefficients, 3 significant digits for residuals) so the
//! output is byte-stable.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use qwiso_core::{
    decide_isomorphism, full_pipeline_with_tol, paley_table, scan, verify_paley, CirculantGraph,
    ConnectionSet, Error, Tolerances,
};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_DISAGREEMENT: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qwiso",
    version,
    about = "Quantum walk spectra of prime-order circulant graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Eigenvalue classification tolerance, in (0, 1e-2].
    #[arg(long, env = "QWISO_TOL_EIG", global = true)]
    pub tol_eig: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Paley connection set (quadratic residues) for p ≡ 1 mod 4.
    Paley {
        #[arg(long)]
        p: u64,
    },
    /// Walk-spectrum verification for Paley graphs, one row per prime.
    Verify {
        #[arg(long, required = true)]
        p: Vec<u64>,
    },
    /// Per-frequency coefficients, computed directly and read off the blocks.
    Table2 {
        #[arg(long)]
        p: u64,
    },
    /// Rebuild a connection set from the walk spectrum.
    Recover {
        /// Use the Paley graph of this order.
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        p: Option<u64>,
        /// Read the connection set from a JSON file.
        #[arg(long)]
        set: Option<PathBuf>,
    },
    /// Compare two circulant graphs with both isomorphism tests.
    Isotest {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Group every symmetric connection set of size k by walk polynomial.
    Scan {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: usize,
    },
}

/// Rendered output and the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub exit_code: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Self {
            text,
            exit_code: EXIT_OK,
        }
    }
}

/// Rounds to 6 decimals and clears negative zero.
pub fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Keeps 3 significant digits, enough for a residual.
pub fn round_sci(x: f64) -> f64 {
    format!("{x:.2e}").parse().expect("formatted float parses")
}

pub fn tolerances(cli: &Cli) -> anyhow::Result<Tolerances> {
    match cli.tol_eig {
        None => Ok(Tolerances::default()),
        Some(eig) => Tolerances::with_eig(eig).context("invalid eigenvalue tolerance"),
    }
}

/// Exit code for a failed command: method disagreements get their own code.
pub fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::MethodDisagreement { .. } | Error::RecoveredSetMismatch { .. }) => {
            EXIT_DISAGREEMENT
        }
        _ => EXIT_ERROR,
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    let tol = tolerances(cli)?;
    match &cli.command {
        Command::Paley { p } => paley(*p, cli.format),
        Command::Verify { p } => verify(p, tol, cli.format),
        Command::Table2 { p } => table2(*p, tol, cli.format),
        Command::Recover { p, set } => {
            let g = match (p, set) {
                (Some(p), _) => CirculantGraph::paley(*p)?,
                (None, Some(path)) => CirculantGraph::new(read_set(path)?),
                (None, None) => bail!("either --p or --set is required"),
            };
            recover(&g, tol, cli.format)
        }
        Command::Isotest { a, b } => isotest(&read_set(a)?, &read_set(b)?, cli.format),
        Command::Scan { p, k } => scan_report(*p, *k, cli.format),
    }
}

pub fn read_set(path: &Path) -> anyhow::Result<ConnectionSet> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("{} is not a valid connection set", path.display()))
}

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn fmt6(values: &[f64], sep: &str) -> String {
    values
        .iter()
        .map(|v| format!("{v:.6}"))
        .collect::<Vec<_>>()
        .join(sep)
}

fn paley(p: u64, format: Format) -> anyhow::Result<Report> {
    let g = CirculantGraph::paley(p)?;
    let s = g.connection_set();
    let text = match format {
        Format::Json => json(s)?,
        Format::Csv => format!("p,elements\n{},{}\n", s.p(), join(s.elements(), " ")),
        Format::Plain => format!("{s}\n"),
    };
    Ok(Report::ok(text))
}

#[derive(Serialize)]
struct VerifyOut {
    p: u64,
    parameters: [u64; 4],
    k: usize,
    c: Vec<f64>,
    off_diagonal_residual: f64,
    recovered: bool,
}

fn verify(primes: &[u64], tol: Tolerances, format: Format) -> anyhow::Result<Report> {
    let mut rows = Vec::with_capacity(primes.len());
    for &p in primes {
        let row =
            verify_paley(p, tol).with_context(|| format!("verification failed for p = {p}"))?;
        let sp = row.parameters;
        rows.push(VerifyOut {
            p,
            parameters: [sp.n, sp.k, sp.lambda, sp.mu],
            k: row.k,
            c: row.c_values.iter().copied().map(round6).collect(),
            off_diagonal_residual: round_sci(row.off_diagonal_residual),
            recovered: row.recovered,
        });
    }
    let text = match format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut out = String::from("p,parameters,k,c,off_diagonal_residual,recovered\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},({}),{},{},{:.2e},{}",
                    r.p,
                    join(&r.parameters, ";"),
                    r.k,
                    fmt6(&r.c, ";"),
                    r.off_diagonal_residual,
                    r.recovered
                );
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for r in &rows {
                let _ = writeln!(
                    out,
                    "p={} srg({}) k={} c=[{}] residual={:.2e} recovered={}",
                    r.p,
                    join(&r.parameters, ","),
                    r.k,
                    fmt6(&r.c, ", "),
                    r.off_diagonal_residual,
                    if r.recovered { "yes" } else { "no" }
                );
            }
            out
        }
    };
    let all_recovered = rows.iter().all(|r| r.recovered);
    Ok(Report {
        text,
        exit_code: if all_recovered {
            EXIT_OK
        } else {
            EXIT_DISAGREEMENT
        },
    })
}

#[derive(Serialize)]
struct CoefficientOut {
    j: u64,
    direct: f64,
    recovered: f64,
    abs_diff: f64,
}

fn table2(p: u64, tol: Tolerances, format: Format) -> anyhow::Result<Report> {
    let rows: Vec<CoefficientOut> = paley_table(p, tol)?
        .into_iter()
        .map(|r| CoefficientOut {
            j: r.j,
            direct: round6(r.direct),
            recovered: round6(r.recovered),
            abs_diff: round_sci(r.abs_diff),
        })
        .collect();
    let text = match format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut out = String::from("j,direct,recovered,abs_diff\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{:.6},{:.6},{:.2e}",
                    r.j, r.direct, r.recovered, r.abs_diff
                );
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for r in &rows {
                let _ = writeln!(out, "{:>3}  {:>10.6}  {:>10.6}", r.j, r.direct, r.recovered);
            }
            out
        }
    };
    Ok(Report::ok(text))
}

#[derive(Serialize)]
struct RecoverOut {
    p: u64,
    k: usize,
    c_values: Vec<f64>,
    recovered_set: Vec<u64>,
    max_rounding_residual: f64,
}

fn recover(g: &CirculantGraph, tol: Tolerances, format: Format) -> anyhow::Result<Report> {
    let report = full_pipeline_with_tol(g, tol.eig())?;
    let out = RecoverOut {
        p: report.p,
        k: report.k,
        c_values: report.c_values.iter().copied().map(round6).collect(),
        recovered_set: report.recovered_set.elements().to_vec(),
        max_rounding_residual: round_sci(report.max_rounding_residual),
    };
    let text = match format {
        Format::Json => json(&out)?,
        Format::Csv => {
            let mut out_text = String::from("j,c\n");
            for (j, c) in out.c_values.iter().enumerate() {
                let _ = writeln!(out_text, "{j},{c:.6}");
            }
            out_text
        }
        Format::Plain => format!(
            "recovered {} (max rounding residual {:.2e})\n",
            report.recovered_set, out.max_rounding_residual
        ),
    };
    Ok(Report::ok(text))
}

fn isotest(a: &ConnectionSet, b: &ConnectionSet, format: Format) -> anyhow::Result<Report> {
    let g1 = CirculantGraph::new(a.clone());
    let g2 = CirculantGraph::new(b.clone());
    let verdict = decide_isomorphism(&g1, &g2)?;
    let text = match format {
        Format::Json => json(&verdict)?,
        Format::Csv => format!(
            "isomorphic,witness_multiplier,spectral_equal,method_agreement\n{},{},{},{}\n",
            verdict.isomorphic,
            verdict
                .witness_multiplier
                .map(|t| t.to_string())
                .unwrap_or_default(),
            verdict.spectral_equal,
            verdict.method_agreement
        ),
        Format::Plain => {
            let witness = match verdict.witness_multiplier {
                Some(t) => format!("t = {t}"),
                None => "none".into(),
            };
            format!(
                "isomorphic: {}\nwitness: {witness}\nspectra equal: {}\nmethods agree: {}\n",
                verdict.isomorphic, verdict.spectral_equal, verdict.method_agreement
            )
        }
    };
    Ok(Report {
        text,
        exit_code: if verdict.method_agreement {
            EXIT_OK
        } else {
            EXIT_DISAGREEMENT
        },
    })
}

fn scan_report(p: u64, k: usize, format: Format) -> anyhow::Result<Report> {
    let report = scan(p, k)?;
    let text = match format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut out = String::from("group,set,srg,multiplier_from_first\n");
            for g in &report.groups {
                for m in &g.members {
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        g.id,
                        join(&m.set, " "),
                        m.srg.map(|s| s.to_string()).unwrap_or_default(),
                        m.multiplier_from_first
                            .map(|t| t.to_string())
                            .unwrap_or_default()
                    );
                }
            }
            out
        }
        Format::Plain => {
            let mut out = format!(
                "{} sets, {} strongly regular, {} polynomial classes\n",
                report.set_count,
                report.srg_count,
                report.groups.len()
            );
            for g in &report.groups {
                let _ = writeln!(out, "group {}:", g.id);
                for m in &g.members {
                    let srg = m.srg.map(|s| format!(" srg{s}")).unwrap_or_default();
                    let t = match m.multiplier_from_first {
                        Some(t) => format!(" t={t}"),
                        None => " not a multiple".into(),
                    };
                    let _ = writeln!(out, "  {{{}}}{srg}{t}", join(&m.set, ","));
                }
            }
            let _ = writeln!(
                out,
                "anomalies: {}, other disagreements: {}",
                report.anomalies.len(),
                report.other_disagreements
            );
            out
        }
    };
    Ok(Report {
        text,
        exit_code: if report.anomalies.is_empty() {
            EXIT_OK
        } else {
            EXIT_DISAGREEMENT
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("qwiso").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn rounding() {
        assert_eq!(round6(0.2171292), 0.217129);
        assert_eq!(round6(-1e-9).to_string(), "0");
        assert_eq!(round_sci(9.7315e-15), 9.73e-15);
    }

    #[test]
    fn grammar() {
        let cli = parse(&["verify", "--p", "13", "--p", "17", "--format", "csv"]);
        assert!(matches!(&cli.command, Command::Verify { p } if p == &[13, 17]));
        assert_eq!(cli.format, Format::Csv);
        assert!(Cli::try_parse_from(["qwiso", "recover"]).is_err());
        assert!(Cli::try_parse_from(["qwiso", "recover", "--p", "13", "--set", "x"]).is_err());
        assert!(Cli::try_parse_from(["qwiso", "scan", "--p", "13"]).is_err());
    }

    #[test]
    fn tolerance_override_is_validated() {
        let mut cli = parse(&["table2", "--p", "13"]);
        cli.tol_eig = Some(0.5);
        assert!(run(&cli).is_err());
        cli.tol_eig = Some(1e-9);
        assert_eq!(run(&cli).unwrap().exit_code, EXIT_OK);
    }

    #[test]
    fn table2_plain_rows() {
        let cli = parse(&["table2", "--p", "13", "--format", "plain"]);
        let text = run(&cli).unwrap().text;
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 13);
        assert_eq!(lines[0], "  0    1.000000    1.000000");
        assert_eq!(lines[7], "  7   -0.383796   -0.383796");
    }

    #[test]
    fn verify_rejects_non_paley_primes() {
        let err = run(&parse(&["verify", "--p", "7"])).unwrap_err();
        assert_eq!(exit_code_for(&err), EXIT_ERROR);
    }

    #[test]
    fn disagreement_maps_to_its_own_code() {
        let err = anyhow::Error::new(Error::MethodDisagreement {
            k: 6,
            spectral_equal: true,
            turner: false,
        });
        assert_eq!(exit_code_for(&err), EXIT_DISAGREEMENT);
    }
}
