//! `fibcube` — disjoint hypercube packings in Fibonacci cubes.
//!
//! Exit codes: 0 success; 1 domain errors (a named precondition is violated,
//! the methods disagree, or the search budget runs out); 2 usage errors;
//! 3 invalid certificates and certificates exceeding the known maximum.

use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fibcube_core::{
    build_packing, decimal_string, density_ratio, fib, oracle_max_packing, q_eval, q_row,
    verify_certificate, BigRational, Certificate, Method, OracleOutcome, SeqValue, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "fibcube",
    version,
    about = "Count, construct and verify maximum families of disjoint k-cubes in Fibonacci cubes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate |Γ_n| and q_1(n)..q_kmax(n) for n = 0..=nmax
    Table {
        #[arg(long)]
        kmax: usize,
        #[arg(long)]
        nmax: usize,
        /// one JSON object per line instead of the aligned table
        #[arg(long)]
        json: bool,
    },
    /// Evaluate q_k(n) by one counting route, or cross-check all five
    Qk {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::FibRecurrence)]
        method: MethodArg,
    },
    /// Build a maximum-packing certificate for k-cubes in Γ_n
    Pack {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = PackFormat::Json)]
        format: PackFormat,
    },
    /// Check a packing certificate (a file path, or '-' for stdin)
    Verify { input: String },
    /// Exact maximum by exhaustive search, independent of the counting routes
    Oracle {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        /// search-node budget (default 10^8; FIBCUBE_ORACLE_BUDGET overrides)
        #[arg(long)]
        budget: Option<u64>,
        /// print the maximizing packing as a certificate instead of a summary
        #[arg(long)]
        witness: bool,
    },
    /// Tabulate the covered fraction q_k(n) / |Γ_n|
    Ratio {
        #[arg(short)]
        k: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 12)]
        digits: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Recurrence,
    FibRecurrence,
    Closed,
    Convolution,
    Genfun,
    /// evaluate every route and fail on any disagreement
    All,
}

impl MethodArg {
    fn single(self) -> Option<Method> {
        match self {
            MethodArg::Recurrence => Some(Method::Recurrence),
            MethodArg::FibRecurrence => Some(Method::FibRecurrence),
            MethodArg::Closed => Some(Method::Closed),
            MethodArg::Convolution => Some(Method::Convolution),
            MethodArg::Genfun => Some(Method::GenFun),
            MethodArg::All => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PackFormat {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Table { kmax, nmax, json } => cmd_table(kmax, nmax, json),
        Command::Qk { k, n, method } => cmd_qk(k, n, method),
        Command::Pack { k, n, format } => cmd_pack(k, n, format),
        Command::Verify { input } => cmd_verify(&input),
        Command::Oracle {
            k,
            n,
            budget,
            witness,
        } => cmd_oracle(k, n, budget, witness),
        Command::Ratio { k, nmax, digits } => cmd_ratio(k, nmax, digits),
    }
}

fn cmd_table(kmax: usize, nmax: usize, json: bool) -> Result<ExitCode, String> {
    let orders: Vec<SeqValue> = (0..=nmax).map(|n| fib(n + 2)).collect();
    let rows: Vec<Vec<SeqValue>> = (1..=kmax)
        .map(|k| q_row(k, nmax).expect("k >= 1"))
        .collect();
    if json {
        for n in 0..=nmax {
            let mut line = String::new();
            write!(line, "{{\"n\":{n},\"order\":{}", orders[n]).unwrap();
            line.push_str(",\"q\":{");
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                write!(line, "\"{}\":{}", i + 1, row[n]).unwrap();
            }
            line.push_str("}}");
            println!("{line}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let mut labels = vec!["n".to_string(), "|Γ_n|".to_string()];
    labels.extend((1..=kmax).map(|k| format!("q_{k}")));
    let mut cells: Vec<Vec<String>> = Vec::new();
    cells.push((0..=nmax).map(|n| n.to_string()).collect());
    cells.push(orders.iter().map(|v| v.to_string()).collect());
    for row in &rows {
        cells.push(row.iter().map(|v| v.to_string()).collect());
    }
    print_table(&labels, &cells);
    Ok(ExitCode::SUCCESS)
}

/// Aligned table: first column holds labels, remaining columns are
/// right-aligned values; byte-stable across runs.
fn print_table(labels: &[String], cells: &[Vec<String>]) {
    let label_width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let columns = cells.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..columns)
        .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    for (label, row) in labels.iter().zip(cells) {
        let mut line = String::new();
        line.push_str(label);
        for _ in label.chars().count()..label_width {
            line.push(' ');
        }
        for (c, cell) in row.iter().enumerate() {
            line.push_str("  ");
            for _ in cell.len()..widths[c] {
                line.push(' ');
            }
            line.push_str(cell);
        }
        println!("{line}");
    }
}

fn cmd_qk(k: usize, n: usize, method: MethodArg) -> Result<ExitCode, String> {
    match method.single() {
        Some(m) => {
            let v = q_eval(k, n, m).map_err(|e| e.to_string())?;
            println!("{v}");
            Ok(ExitCode::SUCCESS)
        }
        None => {
            let mut values = Vec::new();
            for m in Method::ALL {
                let v = q_eval(k, n, m).map_err(|e| e.to_string())?;
                println!("{:<14}  {v}", m.to_string());
                values.push(v);
            }
            if values.windows(2).any(|w| w[0] != w[1]) {
                return Err(format!("counting routes disagree on q_{k}({n})"));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_pack(k: usize, n: usize, format: PackFormat) -> Result<ExitCode, String> {
    if k == 0 {
        return Err("pack requires cube dimension k >= 1 \
                    (a packing of 0-cubes is every vertex alone)"
            .into());
    }
    let packing = build_packing(k, n);
    match format {
        PackFormat::Json => println!("{}", Certificate::from(&packing).to_json()),
        PackFormat::Text => {
            println!(
                "n={} k={} count={}",
                packing.n(),
                packing.k(),
                packing.len()
            );
            for cube in packing.cubes() {
                let dirs: Vec<String> = cube.dirs().iter().map(|d| d.to_string()).collect();
                println!("{} {}", cube.base(), dirs.join(","));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(input: &str) -> Result<ExitCode, String> {
    let data = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("cannot read {input}: {e}"))?
    };
    let cert = match Certificate::from_json(&data) {
        Ok(cert) => cert,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(3));
        }
    };
    let report = verify_certificate(&cert);
    println!("{report}");
    if report.is_consistent() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn cmd_oracle(k: usize, n: usize, budget: Option<u64>, witness: bool) -> Result<ExitCode, String> {
    let budget = match budget {
        Some(b) => b,
        None => match std::env::var("FIBCUBE_ORACLE_BUDGET") {
            Ok(s) => s
                .parse::<u64>()
                .map_err(|_| format!("FIBCUBE_ORACLE_BUDGET is not a node count: {s:?}"))?,
            Err(_) => DEFAULT_BUDGET,
        },
    };
    let outcome = oracle_max_packing(n, k, budget);
    if witness {
        println!("{}", Certificate::from(outcome.witness()).to_json());
    }
    match outcome {
        OracleOutcome::Exact { count, nodes, .. } => {
            if witness {
                eprintln!("exact maximum {count} for k={k} n={n} ({nodes} nodes)");
            } else {
                println!("q_{k}({n}) = {count} (exact, {nodes} nodes)");
            }
            Ok(ExitCode::SUCCESS)
        }
        OracleOutcome::BudgetExceeded {
            best_count, nodes, ..
        } => {
            if !witness {
                println!("q_{k}({n}) >= {best_count} (search budget exhausted)");
            }
            Err(format!(
                "node budget exhausted after {nodes} nodes; best found {best_count} \
                 is a lower bound, not a proven maximum"
            ))
        }
    }
}

fn cmd_ratio(k: usize, nmax: usize, digits: usize) -> Result<ExitCode, String> {
    if k == 0 {
        return Err("ratio requires cube dimension k >= 1".into());
    }
    let row = q_row(k, nmax).expect("k >= 1");
    let labels: Vec<String> = vec![
        "n".into(),
        format!("q_{k}"),
        "|Γ_n|".into(),
        format!("q_{k}/|Γ_n|"),
    ];
    let mut cells: Vec<Vec<String>> = vec![Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    for (n, q) in row.iter().enumerate() {
        let order = fib(n + 2);
        let ratio: BigRational = density_ratio(k, n).expect("k >= 1");
        cells[0].push(n.to_string());
        cells[1].push(q.to_string());
        cells[2].push(order.to_string());
        cells[3].push(decimal_string(&ratio, digits));
    }
    // one row per n reads better than one column per n here
    let columns = transpose_for_rows(&labels, &cells);
    for line in columns {
        println!("{line}");
    }
    Ok(ExitCode::SUCCESS)
}

/// Renders label headers plus one line per n, columns right-aligned.
fn transpose_for_rows(labels: &[String], columns: &[Vec<String>]) -> Vec<String> {
    let widths: Vec<usize> = labels
        .iter()
        .zip(columns)
        .map(|(l, col)| {
            col.iter()
                .map(String::len)
                .chain([l.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = Vec::with_capacity(columns.first().map_or(0, Vec::len) + 1);
    let mut header = String::new();
    for (i, label) in labels.iter().enumerate() {
        if i > 0 {
            header.push_str("  ");
        }
        for _ in label.chars().count()..widths[i] {
            header.push(' ');
        }
        header.push_str(label);
    }
    out.push(header);
    for r in 0..columns.first().map_or(0, Vec::len) {
        let mut line = String::new();
        for (i, col) in columns.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            for _ in col[r].len()..widths[i] {
                line.push(' ');
            }
            line.push_str(&col[r]);
        }
        out.push(line);
    }
    out
}
