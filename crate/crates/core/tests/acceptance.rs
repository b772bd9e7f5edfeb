//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the report reads top to bottom; the
//! process exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use palinradix::arith::is_prime_u64;
use palinradix::binomial::{central_coefficient, classify_binomial, construct_binomial, small_binomial_base};
use palinradix::palindrome::{complete_scan, complete_scan_bound, scan_bases, three_digit_reps};
use palinradix::tables::{self, TableRow};
use palinradix::theorems::{brown_sweep, nagell_ljunggren_solutions};
use palinradix::{Natural, ScanReport};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x7061_6c69_6e64;
const RANDOM_INSTANCES: usize = 10_000;

type Outcome = Result<String, String>;

fn fixture(name: &str) -> Vec<Vec<String>> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden").join(name);
    let mut rdr = csv::Reader::from_path(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    rdr.records()
        .map(|r| r.expect("fixture row").iter().map(str::to_owned).collect())
        .collect()
}

fn compare<R: TableRow>(name: &str, rows: &[R]) -> Result<usize, String> {
    let expected = fixture(name);
    let header: Vec<String> = csv::Reader::from_path(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden").join(name),
    )
    .and_then(|mut r| r.headers().map(|h| h.iter().map(str::to_owned).collect()))
    .map_err(|e| e.to_string())?;
    if header != R::HEADER {
        return Err(format!("header {header:?} != {:?}", R::HEADER));
    }
    if rows.len() != expected.len() {
        return Err(format!("{} rows computed, {} expected", rows.len(), expected.len()));
    }
    for (row, exp) in rows.iter().zip(&expected) {
        let got = row.fields();
        if &got != exp {
            return Err(format!("row {got:?} != {exp:?}"));
        }
    }
    Ok(rows.len())
}

fn table1() -> Outcome {
    let rows = tables::table1(100).map_err(|e| e.to_string())?;
    let n = compare("table1.csv", &rows)?;
    let red: Vec<u64> = rows.iter().filter(|r| r.is_maximal()).map(|r| r.n).collect();
    if red != [3, 4, 6, 11, 19, 47, 53, 79] {
        return Err(format!("b(N) = N-1 at {red:?}"));
    }
    Ok(format!("{n} entries, b(N) = N-1 exactly at {red:?}"))
}

fn table3() -> Outcome {
    let (rows, odd) = tables::table3(64).map_err(|e| e.to_string())?;
    if !odd.is_empty() {
        return Err(format!("non-Mersenne or non-binomial minimal bases: {odd:?}"));
    }
    if let Some(r) = rows.iter().find(|r| r.b != (1u64 << r.x) - 1) {
        return Err(format!("n = {}: base {} is not 2^{} - 1", r.n, r.b, r.x));
    }
    let n = compare("table3.csv", &rows)?;
    let r63 = &rows[62];
    if r63.representation.to_string() != "(1,9,36,84,126,126,84,36,9,1)_127" {
        return Err(format!("n = 63 gives {}", r63.representation));
    }
    Ok(format!("{n} rows, n = 63 -> {}", r63.representation))
}

fn table2() -> Outcome {
    let rows = tables::table2(20);
    let n = compare("table2.csv", &rows)?;
    Ok(format!("{n} non-binomial 3-digit rows"))
}

fn table4() -> Outcome {
    let rows = tables::table4(29, 1 << 30).map_err(|e| e.to_string())?;
    let n = compare("table4.csv", &rows)?;
    let flagged = rows.iter().filter(|r| !r.binomial).count();
    Ok(format!("{n} rows, {flagged} non-binomial"))
}

fn table5() -> Outcome {
    let rows = tables::table5(30);
    let n = compare("table5.csv", &rows)?;
    let pal: Vec<u32> = rows.iter().filter(|r| r.palindromic).map(|r| r.n).collect();
    if pal != [1, 2, 3, 4] {
        return Err(format!("palindromic in base 3 for n in {pal:?}"));
    }
    Ok(format!("{n} rows, palindromic exactly for n in {pal:?}"))
}

fn exhaustive_claim() -> Outcome {
    let mut records = 0;
    for n in 1..=24u32 {
        let report = complete_scan(&Natural::pow2(n), 2, 1).map_err(|e| e.to_string())?;
        if !report.exhaustive || report.base_range.1 < complete_scan_bound(n) {
            return Err(format!("n = {n}: scan not exhaustive"));
        }
        if let Some(bad) = report.claim_violations().next() {
            return Err(format!("n = {n}: {} is neither binomial nor 3-digit", bad.rep));
        }
        records += report.records.len();
    }
    Ok(format!("n <= 24, {records} records, no counterexample"))
}

fn oracle_three_digit(n: u64, b: u64) -> Vec<(u64, u64)> {
    // c + d·b + c·b^2 = n over c in [1, b), d in [0, b); d is forced by c.
    let mut out = Vec::new();
    for c in 1..b {
        let outer = c + c * b * b;
        if outer > n {
            break;
        }
        let rest = n - outer;
        if rest % b == 0 && rest / b < b {
            out.push((c, rest / b));
        }
    }
    out
}

fn marco_holds(report: &ScanReport) -> Result<usize, String> {
    let mut even = 0;
    for r in report.records.iter().filter(|r| r.digit_count % 2 == 0) {
        even += 1;
        let b1 = BigUint::from(r.base()) + 1u32;
        if r.value.as_biguint() % &b1 != BigUint::ZERO {
            return Err(format!("{}: base + 1 does not divide {}", r.rep, r.value));
        }
    }
    Ok(even)
}

fn theorem_oracles() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);

    for _ in 0..RANDOM_INSTANCES {
        let n: u64 = rng.gen_range(5..=1 << 20);
        let root = (n as f64).sqrt() as u64 + 2;
        let b = rng.gen_range(2..=root);
        let got = three_digit_reps(&Natural::from(n), b);
        if got != oracle_three_digit(n, b) {
            return Err(format!("three_digit_reps({n}, {b}) = {got:?}"));
        }
    }

    let mut even = 0;
    for n in 1..=24u32 {
        let report = complete_scan(&Natural::pow2(n), 2, 1).map_err(|e| e.to_string())?;
        even += marco_holds(&report)?;
    }
    for _ in 0..200 {
        let v: u64 = rng.gen_range(3..=1 << 24);
        let report = scan_bases(&Natural::from(v), 2, 4096, 2, 1).map_err(|e| e.to_string())?;
        even += marco_holds(&report)?;
    }

    for _ in 0..RANDOM_INSTANCES {
        let k: usize = rng.gen_range(0..=20);
        let central = central_coefficient(k as u64).to_u64().unwrap();
        let b = rng.gen_range(central + 1..=central.max(2) * 1000);
        let alpha = rng.gen_range(1..=(b - 1) / central);
        let rep = construct_binomial(alpha, k, b)
            .ok_or_else(|| format!("construct_binomial({alpha}, {k}, {b}) refused a gated triple"))?;
        match classify_binomial(&rep) {
            Some(cls) if cls.alpha == alpha && cls.degree == k => {}
            other => return Err(format!("classify({rep}) = {other:?}, want alpha {alpha}, k {k}")),
        }
    }

    for n in 2..=10_000u32 {
        let w = small_binomial_base(n).map_err(|e| e.to_string())?;
        let x = (2.0 * n as f64).sqrt().ceil() as u32;
        if !w.passes_gate() || w.r + w.y * w.k != n || w.y > x + 1 {
            return Err(format!("n = {n}: witness {w:?}"));
        }
    }

    Ok(format!(
        "{RANDOM_INSTANCES} closed-form instances, {even} even-length records, \
         {RANDOM_INSTANCES} binomial round trips, gated witnesses for n <= 10^4"
    ))
}

fn repunit_census() -> Outcome {
    let sols = nagell_ljunggren_solutions(100, 30).map_err(|e| e.to_string())?;
    let got: Vec<(u64, u32, String)> = sols
        .iter()
        .map(|e| {
            let (y, q) = e.perfect_power.clone().expect("filtered");
            (e.x, e.n, format!("{y}^{q}"))
        })
        .collect();
    let want = vec![
        (3, 5, "11^2".to_string()),
        (7, 4, "20^2".to_string()),
        (18, 3, "7^3".to_string()),
    ];
    if got != want {
        return Err(format!("found {got:?}"));
    }
    Ok("11^2 base 3, 20^2 base 7, 7^3 base 18, nothing else".into())
}

fn brown() -> Outcome {
    let s = brown_sweep(10_000).map_err(|e| e.to_string())?;
    if !s.theorem_failures.is_empty() {
        return Err(format!("b(N) = N-1 for composite {:?}", s.theorem_failures));
    }
    if !s.witness_failures.is_empty() {
        return Err(format!("no witness for {:?}", s.witness_failures));
    }
    if s.maximal.iter().any(|&v| !(matches!(v, 3 | 4 | 6) || is_prime_u64(v))) {
        return Err("maximal set check disagrees".into());
    }
    Ok(format!("{} values, {} with b(N) = N-1, all 3, 4, 6 or prime", s.checked, s.maximal.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("table 1 reproduction", Duration::from_secs(1), table1),
        ("table 3 reproduction", Duration::from_secs(10), table3),
        ("table 2 reproduction", Duration::from_secs(30), table2),
        ("table 4 reproduction", Duration::from_secs(60), table4),
        ("table 5 reproduction", Duration::from_secs(1), table5),
        ("exhaustive claim, n <= 24", Duration::from_secs(300), exhaustive_claim),
        ("theorem oracles", Duration::from_secs(600), theorem_oracles),
        ("repunit perfect powers", Duration::from_secs(30), repunit_census),
        ("brown sweep, N <= 10^4", Duration::from_secs(120), brown),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > *budget => Err(format!("{msg}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {} {name} ({took:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name} ({took:.2?}): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
