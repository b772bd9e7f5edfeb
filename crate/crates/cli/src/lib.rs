//! Command implementations behind the `palinradix` binary.
//!
//! Every command writes its primary output to `out` and diagnostics to
//! `err`, and returns the process exit code: 0 success, 1 runtime failure,
//! 2 usage error, 3 counterexample or golden mismatch.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use palinradix::palindrome::{min_pal_base_capped, scan_bases, two_digit_reps};
use palinradix::radix::Representation;
use palinradix::tables::{self, TableRow};
use palinradix::theorems::{check_conjectures_with, ConjectureId, ConjectureReport, SweepOptions, Verdict};
use palinradix::{Error, Natural, PalindromeRecord, MAX_BASE};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_BASE_ENV: &str = "PALINRADIX_MAX_BASE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "palinradix", version, about = "Palindromic representations of integers in arbitrary bases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Least base in which N is a palindrome
    Minbase(MinbaseArgs),
    /// List the palindromic representations of 2^n over a base range
    Scan(ScanArgs),
    /// Recompute one of the reference tables
    Table(TableArgs),
    /// Sweep the conjectures about powers of two
    Conjectures(ConjectureArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct MinbaseArgs {
    /// Decimal value
    #[arg(required_unless_present = "pow2", conflicts_with = "pow2")]
    pub n: Option<String>,
    /// Use 2^n
    #[arg(long)]
    pub pow2: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Scan 2^n
    #[arg(long)]
    pub pow2: u32,
    #[arg(long, default_value_t = 2)]
    pub min_base: u64,
    /// Defaults to floor(2^(n/2))
    #[arg(long)]
    pub max_base: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub min_digits: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub jobs: u64,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Table number
    #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
    pub id: u8,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Compare the CSV rendering against this file
    #[arg(long)]
    pub golden: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 64)]
    pub max_n: u32,
    /// Largest base listed in the census of minimal bases
    #[arg(long, default_value_t = 4095)]
    pub census_max_base: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub jobs: u64,
}

/// One palindromic representation, with every integer as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub target: String,
    pub base: String,
    pub digits: Vec<String>,
    pub palindromic: bool,
    pub digit_count: usize,
    pub binomial_alpha: Option<String>,
    pub binomial_k: Option<usize>,
    pub mersenne_x: Option<u32>,
}

impl OutputRecord {
    pub fn from_record(r: &PalindromeRecord) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            target: r.value.to_string(),
            base: r.base().to_string(),
            digits: r.rep.digits().iter().map(u64::to_string).collect(),
            palindromic: true,
            digit_count: r.digit_count,
            binomial_alpha: r.binomial.as_ref().map(|b| b.alpha.to_string()),
            binomial_k: r.binomial.as_ref().map(|b| b.degree),
            mersenne_x: r.mersenne_exponent,
        }
    }

    const CSV_HEADER: [&'static str; 9] = [
        "schema_version",
        "target",
        "base",
        "digits",
        "palindromic",
        "digit_count",
        "binomial_alpha",
        "binomial_k",
        "mersenne_x",
    ];

    fn csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        vec![
            self.schema_version.to_string(),
            self.target.clone(),
            self.base.clone(),
            self.digits.join(" "),
            self.palindromic.to_string(),
            self.digit_count.to_string(),
            opt(self.binomial_alpha.clone()),
            opt(self.binomial_k.map(|k| k.to_string())),
            opt(self.mersenne_x.map(|x| x.to_string())),
        ]
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(
                Error::InvalidBase(_)
                | Error::BaseTooLarge(_)
                | Error::InvalidRange { .. }
                | Error::InvalidArgument(_)
                | Error::UndefinedInput(_),
            ) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

type CmdResult = Result<i32, CliError>;

/// The scan cap from the environment; `None` when unset.
pub fn env_base_cap() -> Result<Option<u64>, CliError> {
    match std::env::var(MAX_BASE_ENV) {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&v| v >= 2)
            .map(Some)
            .ok_or_else(|| CliError::Usage(format!("{MAX_BASE_ENV} must be an integer >= 2, got {s:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("{MAX_BASE_ENV}: {e}"))),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Minbase(a) => cmd_minbase(&a, out),
        Command::Scan(a) => cmd_scan(&a, out, err),
        Command::Table(a) => cmd_table(&a, out, err),
        Command::Conjectures(a) => cmd_conjectures(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn write_records(records: &[OutputRecord], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Text => {
            for r in records {
                let mut line = format!("({})_{} digits={}", r.digits.join(","), r.base, r.digit_count);
                match (&r.binomial_alpha, r.binomial_k) {
                    (Some(a), Some(k)) => write!(line, " binomial alpha={a} k={k}").unwrap(),
                    _ => line.push_str(" non-binomial"),
                }
                if let Some(x) = r.mersenne_x {
                    write!(line, " base=2^{x}-1").unwrap();
                }
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(OutputRecord::CSV_HEADER)?;
            for r in records {
                w.write_record(r.csv_fields())?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn cmd_minbase(a: &MinbaseArgs, out: &mut dyn Write) -> CmdResult {
    let n = match (&a.n, a.pow2) {
        (_, Some(e)) => Natural::pow2(e),
        (Some(s), None) => s.trim().parse::<Natural>().map_err(|_| CliError::Usage(format!("not a decimal integer: {s:?}")))?,
        (None, None) => return Err(CliError::Usage("give N or --pow2".into())),
    };
    if n.is_zero() {
        return Err(CliError::Usage("N must be positive".into()));
    }
    let cap = env_base_cap()?.unwrap_or(MAX_BASE);
    let (b, rep) = min_pal_base_capped(&n, cap)?;
    let record = PalindromeRecord::new(n, rep);
    if a.format == Format::Text {
        writeln!(out, "b={b} {}", record.rep)?;
    } else {
        write_records(&[OutputRecord::from_record(&record)], a.format, out)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_scan(a: &ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let n = Natural::pow2(a.pow2);
    let root = n.isqrt().to_u64().unwrap_or(u64::MAX);
    let hi = a.max_base.unwrap_or(root.min(MAX_BASE));
    if hi > MAX_BASE {
        return Err(Error::BaseTooLarge(hi).into());
    }
    if a.min_base < 2 || a.min_base > hi {
        return Err(Error::InvalidRange { lo: a.min_base, hi }.into());
    }
    let cap = env_base_cap()?;
    let eff_hi = cap.map_or(hi, |c| hi.min(c));
    if a.min_base > eff_hi {
        return Err(CliError::Usage(format!("{MAX_BASE_ENV}={eff_hi} lies below --min-base {}", a.min_base)));
    }

    let mut records = Vec::new();
    let scan_hi = eff_hi.min(root);
    if a.min_base <= scan_hi {
        records = scan_bases(&n, a.min_base, scan_hi, a.min_digits, a.jobs as usize)?.records;
    }
    if a.min_digits <= 2 && eff_hi > root {
        for (base, c) in two_digit_reps(&n)? {
            if (a.min_base..=eff_hi).contains(&base) {
                let rep = Representation::new(base, vec![c, c])?;
                records.push(PalindromeRecord::new(n.clone(), rep));
            }
        }
    }
    records.sort_by_key(|r| r.base());

    let output: Vec<OutputRecord> = records.iter().map(OutputRecord::from_record).collect();
    write_records(&output, a.format, out)?;

    let violations: Vec<&PalindromeRecord> =
        records.iter().filter(|r| !r.is_binomial() && r.digit_count != 3).collect();
    let mut summary = format!(
        "2^{}: {} palindromic representations in bases {}..={}",
        a.pow2,
        records.len(),
        a.min_base,
        eff_hi
    );
    if eff_hi < hi {
        write!(summary, " (truncated by {MAX_BASE_ENV}, requested up to {hi})").unwrap();
    }
    if violations.is_empty() {
        summary.push_str("; every one is binomial or has three digits");
    } else {
        summary.push_str("; claim violated");
    }
    let sink: &mut dyn Write = if a.format == Format::Text { out } else { err };
    writeln!(sink, "{summary}")?;
    for v in &violations {
        writeln!(sink, "counterexample: {} ({} digits, not binomial)", v.rep, v.digit_count)?;
    }
    Ok(if violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION })
}

/// A computed table as header plus string rows, with its text rendering.
struct Rendered {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    text: String,
    /// Rows that contradict an expected pattern.
    anomalies: Vec<String>,
}

fn collect<R: TableRow>(rows: &[R]) -> (Vec<&'static str>, Vec<Vec<String>>) {
    (R::HEADER.to_vec(), rows.iter().map(TableRow::fields).collect())
}

fn render_table(id: u8) -> Result<Rendered, CliError> {
    let mut text = String::new();
    let mut anomalies = Vec::new();
    let (header, rows) = match id {
        1 => {
            let rows = tables::table1(100)?;
            text.push_str("   |");
            for j in 0..10 {
                write!(text, "{j:>5}").unwrap();
            }
            text.push('\n');
            text.push_str(&"-".repeat(53));
            text.push('\n');
            for i in (0..100).step_by(10) {
                write!(text, "{i:>3}|").unwrap();
                for j in 0..10u64 {
                    let cell = match (i + j).checked_sub(1).map(|k| &rows[k as usize]) {
                        Some(r) if r.is_maximal() => format!("{}*", r.b),
                        Some(r) => r.b.to_string(),
                        None => String::new(),
                    };
                    write!(text, "{cell:>5}").unwrap();
                }
                text.push('\n');
            }
            text.push_str("* b(N) = N - 1\n");
            collect(&rows)
        }
        2 => {
            let rows = tables::table2(20);
            text.push_str("n b c d\n");
            for r in &rows {
                writeln!(text, "{} {} {} {}", r.n, r.b, r.c, r.d).unwrap();
            }
            collect(&rows)
        }
        3 => {
            let (rows, odd) = tables::table3(64)?;
            text.push_str("n k x r b representation\n");
            for r in &rows {
                writeln!(text, "{} {} {} {} {} {}", r.n, r.k, r.x, r.r, r.b, r.representation).unwrap();
            }
            for (n, rep) in odd {
                anomalies.push(format!("b(2^{n}) = {}: {rep} is not a binomial form in base 2^x - 1", rep.base()));
            }
            collect(&rows)
        }
        4 => {
            let rows = tables::table4(29, 1 << 30)?;
            for r in &rows {
                let flag = if r.binomial { "" } else { " [non-binomial]" };
                writeln!(text, "b({}^{}) = {}, {}{flag}", r.p, r.n, r.b, r.representation).unwrap();
            }
            collect(&rows)
        }
        5 => {
            let rows = tables::table5(30);
            for r in &rows {
                let flag = if r.palindromic { "" } else { " [non-palindromic]" };
                writeln!(text, "2^{} = {}{flag}", r.n, r.representation).unwrap();
            }
            collect(&rows)
        }
        _ => return Err(CliError::Usage(format!("unknown table {id}"))),
    };
    Ok(Rendered { header, rows, text, anomalies })
}

fn table_csv(t: &Rendered) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    {
        let mut w = csv_writer(&mut buf);
        w.write_record(&t.header)?;
        for row in &t.rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(buf)
}

fn table_json(t: &Rendered) -> serde_json::Value {
    let rows = t
        .rows
        .iter()
        .map(|row| {
            let obj = t
                .header
                .iter()
                .zip(row)
                .map(|(k, v)| {
                    let value = match v.as_str() {
                        "true" => serde_json::Value::Bool(true),
                        "false" => serde_json::Value::Bool(false),
                        _ => serde_json::Value::String(v.clone()),
                    };
                    (k.to_string(), value)
                })
                .collect();
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::Value::Array(rows)
}

/// First line where `got` and the file at `path` differ.
fn golden_diff(got: &[u8], path: &Path) -> Result<Option<String>, CliError> {
    let want = std::fs::read(path)?;
    if want == got {
        return Ok(None);
    }
    let got = String::from_utf8_lossy(got);
    let want = String::from_utf8_lossy(&want);
    let mut g = got.lines();
    let mut w = want.lines();
    for line in 1.. {
        match (g.next(), w.next()) {
            (Some(a), Some(b)) if a == b => continue,
            (None, None) => return Ok(Some("line endings differ".into())),
            (a, b) => {
                return Ok(Some(format!(
                    "line {line}: computed {:?}, golden {:?}",
                    a.unwrap_or("<end>"),
                    b.unwrap_or("<end>")
                )))
            }
        }
    }
    unreachable!()
}

pub fn cmd_table(a: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let t = render_table(a.id)?;
    let csv = table_csv(&t)?;
    match a.format {
        Format::Text => out.write_all(t.text.as_bytes())?,
        Format::Csv => out.write_all(&csv)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &table_json(&t))?;
            writeln!(out)?;
        }
    }
    let mut code = EXIT_OK;
    for line in &t.anomalies {
        writeln!(err, "counterexample: {line}")?;
        code = EXIT_VIOLATION;
    }
    if let Some(path) = &a.golden {
        match golden_diff(&csv, path)? {
            None => writeln!(err, "table {} matches {}", a.id, path.display())?,
            Some(diff) => {
                writeln!(err, "table {} differs from {}: {diff}", a.id, path.display())?;
                code = EXIT_VIOLATION;
            }
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct WitnessJson {
    n: u32,
    representation: String,
    violates: bool,
}

#[derive(Serialize)]
struct CensusJson {
    base: String,
    exponents: Vec<u32>,
}

#[derive(Serialize)]
struct ReportJson {
    id: String,
    statement: &'static str,
    range_tested: String,
    verdict: String,
    witnesses: Vec<WitnessJson>,
    census: Vec<CensusJson>,
    uncovered: Vec<u32>,
}

impl From<&ConjectureReport> for ReportJson {
    fn from(r: &ConjectureReport) -> Self {
        ReportJson {
            id: r.id.to_string(),
            statement: r.id.statement(),
            range_tested: r.range_tested.clone(),
            verdict: r.verdict.to_string(),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessJson { n: w.n, representation: w.rep.to_string(), violates: w.violates })
                .collect(),
            census: r
                .census
                .iter()
                .map(|(b, ns)| CensusJson { base: b.to_string(), exponents: ns.clone() })
                .collect(),
            uncovered: r.uncovered.clone(),
        }
    }
}

fn join_u32(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
}

fn report_text(r: &ConjectureReport) -> String {
    let mut s = format!("({}) {}\n", r.id, r.id.statement());
    writeln!(s, "    range: {}", r.range_tested).unwrap();
    writeln!(s, "    verdict: {}", r.verdict).unwrap();
    let bad: Vec<_> = r.witnesses.iter().filter(|w| w.violates).collect();
    match r.id {
        ConjectureId::D => {
            for (b, ns) in &r.census {
                writeln!(s, "    base {b}: n = {}", join_u32(ns)).unwrap();
            }
        }
        ConjectureId::E => {
            for w in r.witnesses.iter().filter(|w| !w.violates) {
                writeln!(s, "    2^{} = {}", w.n, w.rep).unwrap();
            }
        }
        _ => writeln!(s, "    checked: {} values", r.witnesses.len()).unwrap(),
    }
    for w in bad {
        writeln!(s, "    counterexample: n = {}, {}", w.n, w.rep).unwrap();
    }
    if !r.uncovered.is_empty() {
        writeln!(s, "    not covered under {MAX_BASE_ENV}: n = {}", join_u32(&r.uncovered)).unwrap();
    }
    s
}

pub fn cmd_conjectures(a: &ConjectureArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let opts = SweepOptions { jobs: a.jobs as usize, base_cap: env_base_cap()?.unwrap_or(MAX_BASE) };
    let reports = check_conjectures_with(a.max_n, a.census_max_base, &opts)?;
    match a.format {
        Format::Text => {
            let blocks: Vec<String> = reports.iter().map(report_text).collect();
            write!(out, "{}", blocks.join("\n"))?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["id", "statement", "range", "verdict", "checked", "violations"])?;
            for r in &reports {
                let violations = r.witnesses.iter().filter(|w| w.violates).count();
                w.write_record([
                    r.id.to_string(),
                    r.id.statement().to_string(),
                    r.range_tested.clone(),
                    r.verdict.to_string(),
                    r.witnesses.len().to_string(),
                    violations.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let json: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out)?;
        }
    }
    let failed = reports.iter().any(|r| r.verdict == Verdict::Counterexample);
    if a.format != Format::Text {
        let holds = reports.iter().filter(|r| r.verdict == Verdict::Holds).count();
        writeln!(err, "{holds} of {} conjectures hold in range", reports.len())?;
    }
    Ok(if failed { EXIT_VIOLATION } else { EXIT_OK })
}
