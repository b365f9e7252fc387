//! `pdg`: analyze, export and verify functional digraphs of power maps
//! on finite cyclic groups.
//!
//! Exit codes: 0 success (or isomorphic), 1 verification failure or
//! non-isomorphic, 2 usage error, 3 cap-exceeded refusal.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pdg_core::digraph::PowerDigraph;
use pdg_core::spectral::{self, AdjacencyMatrix};
use pdg_core::verify::{self, VerifyConfig};
use pdg_core::{aut, canon, report, Error};

#[derive(Parser)]
#[command(name = "pdg", version, about = "Power digraphs of cyclic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MatrixOrder {
    Canonical,
    Natural,
}

#[derive(Subcommand)]
enum Command {
    /// Full structural report for G(n, k).
    Analyze {
        n: u64,
        k: u64,
        /// Emit JSON instead of the text table.
        #[arg(long)]
        json: bool,
    },
    /// Graphviz DOT export, one edge line per vertex.
    Dot { n: u64, k: u64 },
    /// Adjacency matrix export.
    Matrix {
        n: u64,
        k: u64,
        /// Row/column ordering: canonical is block-structured by
        /// component and height, natural is label order.
        #[arg(long, value_enum, default_value = "canonical")]
        order: MatrixOrder,
        /// Emit JSON (ordering plus 0/1 rows).
        #[arg(long)]
        json: bool,
    },
    /// Characteristic polynomial in factored closed form.
    Charpoly {
        n: u64,
        k: u64,
        /// Print the expanded integer polynomial instead.
        #[arg(long)]
        expand: bool,
    },
    /// Minimal polynomial in factored closed form.
    Minpoly {
        n: u64,
        k: u64,
        #[arg(long)]
        expand: bool,
    },
    /// Automorphism group order and wreath structure.
    Aut {
        n: u64,
        k: u64,
        #[arg(long)]
        json: bool,
    },
    /// Canonical isomorphism certificate.
    Cert { n: u64, k: u64 },
    /// Compare two graphs; exit 0 when isomorphic, 1 when not.
    Iso { n1: u64, k1: u64, n2: u64, k2: u64 },
    /// Run the theory-vs-oracle verification sweeps.
    Verify {
        #[arg(long, default_value_t = 300)]
        max_n: u64,
        #[arg(long, default_value_t = 64)]
        max_matrix_n: u64,
        #[arg(long, default_value_t = 40)]
        max_minpoly_n: u64,
        #[arg(long, default_value_t = 8)]
        max_exhaustive_n: u64,
        #[arg(long, default_value_t = 50)]
        samples: u64,
        /// Stop at the first failure.
        #[arg(long)]
        fail_fast: bool,
    },
}

#[derive(Serialize)]
struct MatrixJson {
    n: u64,
    k: u64,
    order: &'static str,
    ordering: Vec<u64>,
    rows: Vec<Vec<u8>>,
}

#[derive(Serialize)]
struct AutJson {
    n: u64,
    k: u64,
    #[serde(flatten)]
    summary: report::AutSummary,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Domain(_) => ExitCode::from(2),
                Error::CapExceeded(_) => ExitCode::from(3),
                Error::Internal(_) => ExitCode::from(1),
            }
        }
    }
}

fn run(command: Command) -> pdg_core::Result<ExitCode> {
    match command {
        Command::Analyze { n, k, json } => {
            let r = report::analyze(n, k)?;
            if json {
                println!("{}", to_json(&r));
            } else {
                print!("{}", report::render_text(&r));
            }
        }
        Command::Dot { n, k } => {
            let g = PowerDigraph::build(n, k)?;
            print!("{}", render_dot(&g));
        }
        Command::Matrix { n, k, order, json } => {
            let g = PowerDigraph::build(n, k)?;
            let m = match order {
                MatrixOrder::Canonical => spectral::canonical_matrix(&g),
                MatrixOrder::Natural => AdjacencyMatrix::natural(&g),
            };
            if json {
                let rows = (0..m.size())
                    .map(|i| (0..m.size()).map(|j| m.entry(i, j)).collect())
                    .collect();
                let doc = MatrixJson {
                    n,
                    k: g.k(),
                    order: match order {
                        MatrixOrder::Canonical => "canonical",
                        MatrixOrder::Natural => "natural",
                    },
                    ordering: m.ordering().to_vec(),
                    rows,
                };
                println!("{}", to_json(&doc));
            } else {
                print!("{}", render_matrix(&m));
            }
        }
        Command::Charpoly { n, k, expand } => {
            let p = spectral::char_poly(n, k)?;
            if expand {
                println!("{}", p.expand());
            } else {
                println!("{p}");
            }
        }
        Command::Minpoly { n, k, expand } => {
            let p = spectral::min_poly(n, k)?;
            if expand {
                println!("{}", p.expand());
            } else {
                println!("{p}");
            }
        }
        Command::Aut { n, k, json } => {
            let r = aut::aut_order(n, k)?;
            if json {
                let doc = AutJson {
                    n,
                    k: pdg_core::numtheory::normalize_exponent(n, k)?,
                    summary: report::AutSummary {
                        tree_aut_order: r.tree_aut_order.to_string(),
                        total_order: r.total_order.to_string(),
                        structure: r.structure.clone(),
                        classes: r
                            .per_class
                            .iter()
                            .map(|c| report::AutClassReport {
                                cycle_length: c.cycle_length,
                                multiplicity: c.multiplicity,
                                component_order: c.component_order.to_string(),
                            })
                            .collect(),
                    },
                };
                println!("{}", to_json(&doc));
            } else {
                println!("|Aut| = {}", r.total_order);
                println!("|Aut(T1)| = {}", r.tree_aut_order);
                println!("structure: {}", r.structure);
            }
        }
        Command::Cert { n, k } => {
            println!("{}", canon::certificate(n, k)?);
        }
        Command::Iso { n1, k1, n2, k2 } => {
            let c1 = canon::certificate(n1, k1)?;
            let c2 = canon::certificate(n2, k2)?;
            let isomorphic = n1 == n2 && c1 == c2;
            println!("{c1}");
            println!("{c2}");
            println!(
                "{}",
                if isomorphic {
                    "isomorphic"
                } else {
                    "not isomorphic"
                }
            );
            if !isomorphic {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify {
            max_n,
            max_matrix_n,
            max_minpoly_n,
            max_exhaustive_n,
            samples,
            fail_fast,
        } => {
            let cfg = VerifyConfig {
                max_n,
                max_matrix_n,
                max_minpoly_n,
                max_exhaustive_n,
                backtracking_samples: samples,
                fail_fast,
            };
            if [max_n, max_matrix_n, max_minpoly_n, max_exhaustive_n]
                .iter()
                .any(|&c| c < 2)
            {
                return Err(Error::Domain("all verification caps must be >= 2".into()));
            }
            let report = verify::run(&cfg);
            print!("{}", report.render());
            if !report.is_success() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn render_dot(g: &PowerDigraph) -> String {
    let mut out = format!("digraph G_{}_{} {{\n", g.n(), g.k());
    for a in 0..g.n() {
        out.push_str(&format!("{a} -> {};\n", g.succ(a)));
    }
    out.push_str("}\n");
    out
}

fn render_matrix(m: &AdjacencyMatrix) -> String {
    let n = m.size();
    let mut out = String::with_capacity(n * (2 * n + 1));
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(' ');
            }
            out.push(if m.entry(i, j) == 1 { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}
