//! Acceptance suite.
//!
//! Runs every criterion sequentially at its stated tolerance and wall-clock
//! budget and prints one pass/fail line per criterion. Exits nonzero if any
//! criterion fails. Run it alone with
//! `cargo test -p fibcube --test acceptance`, or pass criterion numbers to
//! run a subset.

use std::process::Command;
use std::time::{Duration, Instant};

use fibcube_core::{
    binomial, build_packing, decimal_string, delta, density_ratio, fib, gamma, oracle_max_packing,
    q_eval, verify_packing, BigRational, Method, OracleOutcome, SeqValue, Verdict, DEFAULT_BUDGET,
};

type Criterion = (
    usize,
    &'static str,
    fn() -> Result<String, String>,
    Duration,
);

fn main() {
    let picked: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "reference table",
            criterion_1 as fn() -> _,
            Duration::from_secs(1),
        ),
        (
            2,
            "five-way method agreement",
            criterion_2,
            Duration::from_secs(10),
        ),
        (
            3,
            "matching count and order parity",
            criterion_3,
            Duration::from_secs(10),
        ),
        (4, "search agreement", criterion_4, Duration::from_secs(300)),
        (
            5,
            "constructive packings verify at the tabulated size",
            criterion_5,
            Duration::from_secs(30),
        ),
        (
            6,
            "Fibonacci lower bound",
            criterion_6,
            Duration::from_secs(10),
        ),
        (
            7,
            "series and binomial identities",
            criterion_7,
            Duration::from_secs(10),
        ),
        (
            8,
            "density convergence",
            criterion_8,
            Duration::from_secs(30),
        ),
    ];
    let mut failed = 0;
    let mut ran = 0;
    for (id, name, check, budget) in criteria {
        if !picked.is_empty() && !picked.contains(&id) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let overtime = elapsed > budget;
        match result {
            Ok(detail) if !overtime => {
                println!("criterion {id} ({name}): PASS — {detail} [{elapsed:.2?}]");
            }
            Ok(detail) => {
                failed += 1;
                println!(
                    "criterion {id} ({name}): FAIL — values pass but {elapsed:.2?} exceeds \
                     the {budget:?} budget — {detail}"
                );
            }
            Err(detail) => {
                failed += 1;
                println!("criterion {id} ({name}): FAIL — {detail} [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", ran - failed, ran);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fibcube"));
    cmd.env_remove("FIBCUBE_ORACLE_BUDGET");
    cmd
}

fn u(v: u64) -> SeqValue {
    SeqValue::from(v)
}

/// `table --kmax 3 --nmax 5` reproduces the reference values exactly.
fn criterion_1() -> Result<String, String> {
    let out = bin()
        .args(["table", "--kmax", "3", "--nmax", "5"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err("table command failed".into());
    }
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let expected: [(&str, [u64; 6]); 4] = [
        ("|Γ_n|", [1, 2, 3, 5, 8, 13]),
        ("q_1", [0, 1, 1, 2, 4, 6]),
        ("q_2", [0, 0, 0, 1, 1, 2]),
        ("q_3", [0, 0, 0, 0, 0, 1]),
    ];
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() != 5 {
        return Err(format!("expected 5 table rows, got {}", lines.len()));
    }
    for (row, (label, values)) in lines[1..].iter().zip(expected) {
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.first() != Some(&label) {
            return Err(format!("row label mismatch: {row:?}"));
        }
        let got: Vec<u64> = fields[1..].iter().filter_map(|f| f.parse().ok()).collect();
        if got != values {
            return Err(format!("row {label}: got {got:?}, want {values:?}"));
        }
    }
    Ok("all four rows exact".into())
}

/// All five routes return identical exact integers for k ≤ 6, n ≤ 60.
fn criterion_2() -> Result<String, String> {
    let mut checked = 0;
    for k in 1..=6 {
        for n in 0..=60 {
            let want = q_eval(k, n, Method::Recurrence).map_err(|e| e.to_string())?;
            for m in Method::ALL {
                let got = q_eval(k, n, m).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(format!(
                        "k={k} n={n}: {m} gives {got}, recurrence gives {want}"
                    ));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (k, n) pairs, zero disagreements"))
}

/// q_eval(1, n) = ⌊F_{n+2}/2⌋ and F_{n+2} is even exactly when n ≡ 1 (mod 3).
fn criterion_3() -> Result<String, String> {
    for n in 0..=60 {
        let half = fib(n + 2) >> 1;
        for m in Method::ALL {
            let got = q_eval(1, n, m).map_err(|e| e.to_string())?;
            if got != half {
                return Err(format!("n={n}: {m} gives {got}, floor(F/2) is {half}"));
            }
        }
        let even = fib(n + 2) % 2u32 == u(0);
        if even != (n % 3 == 1) {
            return Err(format!("n={n}: order parity breaks the residue rule"));
        }
        if (gamma(n) == 0) != even {
            return Err(format!("n={n}: gamma disagrees with order parity"));
        }
    }
    Ok("matching count and parity hold through n = 60".into())
}

/// Exhaustive search agrees with the formulas on the desk-scale grid:
/// k = 1 for n ≤ 18, k = 2 and 3 for n ≤ 10, k = 4 for n ≤ 11.
fn criterion_4() -> Result<String, String> {
    let grid: [(usize, usize); 4] = [(1, 18), (2, 10), (3, 10), (4, 11)];
    let mut mismatches = Vec::new();
    let mut agreed = 0;
    for (k, nmax) in grid {
        for n in 0..=nmax {
            // the two n = 10 refutations are beyond any wall-clock budget for
            // this branching; cap them and let the outcome speak for itself,
            // and give the k = 4, n = 11 instance enough room to finish
            let budget = match (k, n) {
                (2, 10) | (3, 10) => 200_000_000,
                (4, 11) => 2_000_000_000,
                _ => DEFAULT_BUDGET,
            };
            let formula = q_eval(k, n, Method::FibRecurrence).map_err(|e| e.to_string())?;
            match oracle_max_packing(n, k, budget) {
                OracleOutcome::Exact { count, witness, .. } => {
                    let report = verify_packing(&witness);
                    if !report.is_valid() {
                        return Err(format!("k={k} n={n}: witness failed verification"));
                    }
                    if u(count as u64) == formula {
                        agreed += 1;
                    } else {
                        mismatches.push(format!(
                            "k={k} n={n}: search proves {count}, formula gives {formula}"
                        ));
                    }
                }
                OracleOutcome::BudgetExceeded {
                    best_count,
                    witness,
                    nodes,
                } => {
                    if u(best_count as u64) > formula {
                        let report = verify_packing(&witness);
                        if !report.is_valid() {
                            return Err(format!("k={k} n={n}: witness failed verification"));
                        }
                        mismatches.push(format!(
                            "k={k} n={n}: search exhibits a valid packing of {best_count}, \
                             formula gives {formula}"
                        ));
                    } else {
                        mismatches.push(format!(
                            "k={k} n={n}: not settled within {nodes} nodes \
                             (search found >= {best_count}, formula gives {formula})"
                        ));
                    }
                }
            }
        }
    }
    if mismatches.is_empty() {
        Ok(format!(
            "search matches the formulas on all {agreed} instances"
        ))
    } else {
        for line in &mismatches {
            println!("    {line}");
        }
        Err(format!(
            "{} instances agree, {} do not: {}",
            agreed,
            mismatches.len(),
            mismatches.join("; ")
        ))
    }
}

/// Built packings for k ≤ 5, n ≤ 25 verify clean with exactly the tabulated
/// number of cubes.
fn criterion_5() -> Result<String, String> {
    let mut cubes_total = 0usize;
    for k in 1..=5 {
        for n in 0..=25 {
            let p = build_packing(k, n);
            let want = q_eval(k, n, Method::FibRecurrence).map_err(|e| e.to_string())?;
            if u(p.len() as u64) != want {
                return Err(format!(
                    "k={k} n={n}: built {} cubes, expected {want}",
                    p.len()
                ));
            }
            let report = verify_packing(&p);
            if !report.is_valid() {
                return Err(format!("k={k} n={n}: built packing failed verification"));
            }
            if report.verdict != Verdict::Optimal {
                return Err(format!(
                    "k={k} n={n}: verdict {} on a built packing",
                    report.verdict
                ));
            }
            cubes_total += p.len();
        }
    }
    Ok(format!("130 packings verified, {cubes_total} cubes total"))
}

/// q_k(n) ≥ F_{n-2k+2} on its stated range, with the two boundary equalities.
fn criterion_6() -> Result<String, String> {
    for k in 1..=5 {
        for n in (2 * k - 2)..=60 {
            let q = q_eval(k, n, Method::FibRecurrence).map_err(|e| e.to_string())?;
            let bound = fib(n + 2 - 2 * k);
            if q < bound {
                return Err(format!("k={k} n={n}: q = {q} below bound {bound}"));
            }
        }
    }
    for k in 1..=6 {
        if k >= 2 {
            let at_edge = q_eval(k, 2 * k - 2, Method::FibRecurrence).unwrap();
            if at_edge != u(0) {
                return Err(format!("k={k}: q_k(2k-2) = {at_edge}, want 0"));
            }
        }
        let first = q_eval(k, 2 * k - 1, Method::FibRecurrence).unwrap();
        if first != u(1) {
            return Err(format!("k={k}: q_k(2k-1) = {first}, want 1"));
        }
    }
    Ok("bound and boundary equalities hold (k ≤ 5 resp. 6, n ≤ 60)".into())
}

/// Series route internals: δ_k matches the coefficients of
/// x^{2k-1}/(1-x³)^k computed by independent series arithmetic, and the
/// binomial column-sum identity holds.
fn criterion_7() -> Result<String, String> {
    const DEG: usize = 40;
    // series powers built here from scratch: coefficient vectors multiplied
    // term by term, nothing shared with the delta implementation
    let mul = |a: &[SeqValue], b: &[SeqValue]| -> Vec<SeqValue> {
        let mut c = vec![u(0); DEG + 1];
        for i in 0..=DEG {
            for j in 0..=DEG - i {
                let prod = &a[i] * &b[j];
                c[i + j] += prod;
            }
        }
        c
    };
    let mut geometric = vec![u(0); DEG + 1]; // 1/(1-x^3)
    for e in (0..=DEG).step_by(3) {
        geometric[e] = u(1);
    }
    let mut power = vec![u(0); DEG + 1]; // (1/(1-x^3))^k, k = 0 to start
    power[0] = u(1);
    for k in 1..=5 {
        power = mul(&power, &geometric);
        let shift = 2 * k - 1;
        for n in 0..=DEG {
            let expected = if n >= shift {
                power[n - shift].clone()
            } else {
                u(0)
            };
            if delta(k, n) != expected {
                return Err(format!(
                    "k={k}: delta({k}, {n}) != series coefficient {expected}"
                ));
            }
        }
    }
    // independent Pascal triangle for the column-sum identity
    let mut pascal = vec![vec![u(0); 33]; 33];
    for i in 0..33 {
        pascal[i][0] = u(1);
        for j in 1..=i {
            pascal[i][j] = &pascal[i - 1][j - 1] + &pascal[i - 1][j];
        }
        for (j, cell) in pascal[i].iter().enumerate() {
            if binomial(i, j) != *cell {
                return Err(format!(
                    "binomial({i}, {j}) disagrees with Pascal's triangle"
                ));
            }
        }
    }
    for k in 2..=6 {
        for i in 0..=30usize {
            let sum = (0..=i).fold(u(0), |acc, l| acc + &pascal[l][k - 2]);
            if sum != pascal[i + 1][k - 1] {
                return Err(format!("column-sum identity fails at k={k} i={i}"));
            }
        }
    }
    Ok("δ series matches to degree 40 (k ≤ 5); column sums match (k ≤ 6, i ≤ 30)".into())
}

/// Density ratios: q_1 density within 10⁻⁶ of 1/2 at n = 40; for k = 2, 3
/// the ratio converges monotonically (per residue class mod 3) and moves
/// less than 10⁻⁴ across n = 58..60; the `ratio` command tabulates the same.
fn criterion_8() -> Result<String, String> {
    let gap = |a: &BigRational, b: &BigRational| -> BigRational {
        if a > b {
            a - b
        } else {
            b - a
        }
    };
    let tol_micro = BigRational::new(1.into(), 1_000_000.into());
    let half = BigRational::new(1.into(), 2.into());
    let r1 = density_ratio(1, 40).map_err(|e| e.to_string())?;
    if gap(&r1, &half) >= tol_micro {
        return Err(format!(
            "density_ratio(1, 40) = {} strays from 1/2",
            decimal_string(&r1, 9)
        ));
    }

    let tol = BigRational::new(1.into(), 10_000.into());
    for k in 2..=3usize {
        let r: Vec<BigRational> = (0..=60)
            .map(|n| density_ratio(k, n).expect("k >= 1"))
            .collect();
        for n in (2 * k + 3)..=60 {
            if r[n] < r[n - 3] {
                return Err(format!("k={k}: ratio decreases from n={} to n={n}", n - 3));
            }
        }
        for n in (2 * k + 6)..=60 {
            if gap(&r[n], &r[n - 3]) > gap(&r[n - 3], &r[n - 6]) {
                return Err(format!("k={k}: convergence stalls at n={n}"));
            }
        }
        let spread = gap(
            r[58..=60].iter().max().unwrap(),
            r[58..=60].iter().min().unwrap(),
        );
        if spread >= tol {
            return Err(format!(
                "k={k}: ratios at n=58..60 spread {}",
                decimal_string(&spread, 8)
            ));
        }

        // the CLI tabulation shows the same convergence
        let out = bin()
            .args([
                "ratio",
                "-k",
                &k.to_string(),
                "--nmax",
                "60",
                "--digits",
                "12",
            ])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("ratio command failed for k={k}"));
        }
        let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        let tail: Vec<f64> = text
            .lines()
            .skip(59)
            .filter_map(|l| l.split_whitespace().last()?.parse().ok())
            .collect();
        if tail.len() != 3 {
            return Err(format!("k={k}: expected 3 tail rows, got {}", tail.len()));
        }
        if (tail[2] - tail[0]).abs() >= 1e-4 || (tail[1] - tail[0]).abs() >= 1e-4 {
            return Err(format!(
                "k={k}: tabulated tail spread exceeds 1e-4: {tail:?}"
            ));
        }
    }
    Ok("q_1 density at 1/2; k = 2, 3 ratios settled to within 1e-4 by n = 60".into())
}
