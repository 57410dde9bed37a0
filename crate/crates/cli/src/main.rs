use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use narayana::bounds::{search_bound_unchecked, BoundReport};
use narayana::highprec::{AlgebraicConstants, Precision};
use narayana::pipeline::{run_pipeline, PipelineConfig};
use narayana::reduction::{run_campaign, CampaignSummary};
use narayana::repdigit::as_block_repdigit;
use narayana::report::{render_solutions, Format, Report, ReportHeader};
use narayana::search::{
    block_repdigit_scan, enumerate_solutions, mersenne_scan, single_term_repdigits, verify_table1,
    MAX_VERIFIED_BASE, TABLE_N_MAX,
};
use narayana::sequence::global_cache;
use narayana::Error;

const EXIT_MISMATCH: u8 = 1;
const EXIT_PRECISION: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Sums of two Narayana numbers that are repdigits.
#[derive(Parser, Debug)]
#[command(name = "repdigits", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Working precision in decimal digits (at least 30).
    #[arg(long, global = true, env = "NARAYANA_PRECISION", default_value_t = Precision::DEFAULT.get())]
    precision: u32,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output format: table, json or csv.
    #[arg(long, global = true, default_value = "table")]
    format: Format,
    /// Accept bases above 100. Results there are not covered by the proof.
    #[arg(long, global = true)]
    allow_out_of_scope: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print N_n for a range of indices.
    Seq {
        #[arg(long, default_value_t = 0)]
        from: usize,
        #[arg(long, default_value_t = 30)]
        to: usize,
    },
    /// Decide whether a value is an m-block repdigit.
    Blocks {
        #[arg(long)]
        value: BigUint,
        #[arg(long)]
        block_size: u32,
    },
    /// Reproduce the bound chain for one base or all of 2..=100.
    Bound {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        base: Option<u32>,
        #[arg(long)]
        all: bool,
    },
    /// Run the two-step reduction.
    Reduce {
        #[arg(long, default_value = "2:100", value_parser = parse_range)]
        base_range: RangeInclusive<u32>,
    },
    /// Enumerate solutions (n, m, l, a, b).
    Search {
        #[arg(long, default_value_t = TABLE_N_MAX)]
        nmax: u64,
        #[arg(long, default_value = "2:100", value_parser = parse_range)]
        base_range: RangeInclusive<u32>,
        #[arg(long, default_value_t = 3)]
        lmin: u32,
    },
    /// Check the solution table and its corollaries.
    Verify,
    /// Bound, reduce, search and verify in one run.
    Pipeline {
        #[arg(long, default_value = "2:100", value_parser = parse_range)]
        base_range: RangeInclusive<u32>,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    let lo: u32 = lo.trim().parse().map_err(|e| format!("bad lower end: {e}"))?;
    let hi: u32 = hi.trim().parse().map_err(|e| format!("bad upper end: {e}"))?;
    if lo < 2 || lo > hi {
        return Err(format!("need 2 <= LO <= HI, got {lo}:{hi}"));
    }
    Ok(lo..=hi)
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Mismatch(out)) => {
            print!("{out}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        _ if e.is_precision_exhausted() => EXIT_PRECISION,
        Error::Precondition(_) | Error::DigitOutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_MISMATCH,
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let g = &cli.global;
    if g.precision < Precision::MIN_DIGITS {
        return Err(Failure::Usage(format!(
            "precision must be at least {} digits, got {}",
            Precision::MIN_DIGITS,
            g.precision
        )));
    }
    if g.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.jobs)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start {} threads: {e}", g.jobs)))?;
    pool.install(|| dispatch(&cli))
}

fn check_scope(g: &Global, hi: u32) -> Result<bool, Failure> {
    if hi <= MAX_VERIFIED_BASE {
        return Ok(false);
    }
    if !g.allow_out_of_scope {
        return Err(Failure::Usage(format!(
            "bases above {MAX_VERIFIED_BASE} need --allow-out-of-scope"
        )));
    }
    eprintln!("warning: bases above {MAX_VERIFIED_BASE} are beyond the proved range");
    Ok(true)
}

fn header(g: &Global, command: &str) -> ReportHeader {
    ReportHeader::new(Precision::digits(g.precision)).with("command", command)
}

fn range_str(r: &RangeInclusive<u32>) -> String {
    format!("{}:{}", r.start(), r.end())
}

fn dispatch(cli: &Cli) -> Result<String, Failure> {
    let g = &cli.global;
    let precision = Precision::digits(g.precision);
    match &cli.command {
        Command::Seq { from, to } => Ok(seq(g, *from, *to)),
        Command::Blocks { value, block_size } => {
            if *block_size < 1 {
                return Err(Failure::Usage("--block-size must be at least 1".into()));
            }
            let found = as_block_repdigit(value, *block_size)
                .map(|(block, length)| serde_json::json!({"block": block.to_string(), "length": length}));
            let mut s = serde_json::to_string(&found.unwrap_or(serde_json::Value::Null)).unwrap();
            s.push('\n');
            Ok(s)
        }
        Command::Bound { base, all } => {
            let bases: Vec<u32> = if *all { (2..=MAX_VERIFIED_BASE).collect() } else { vec![base.unwrap()] };
            let b_max = *bases.iter().max().unwrap();
            if bases.iter().any(|&b| b < 2) {
                return Err(Failure::Usage("base must be at least 2".into()));
            }
            let beyond = check_scope(g, b_max)?;
            let c = AlgebraicConstants::cached(precision)?;
            let reports = bases
                .iter()
                .map(|&b| search_bound_unchecked(&c, b))
                .collect::<narayana::Result<Vec<_>>>()?;
            let meta = header(g, "bound").with("beyond_proved_range", beyond);
            Ok(render_bounds(&meta, &reports, g.format))
        }
        Command::Reduce { base_range } => {
            let beyond = check_scope(g, *base_range.end())?;
            let summary = run_campaign(base_range.clone(), precision)?;
            let meta = header(g, "reduce")
                .with("bases", range_str(base_range))
                .with("beyond_proved_range", beyond);
            Ok(render_campaign(&meta, &summary, g.format))
        }
        Command::Search { nmax, base_range, lmin } => {
            let beyond = check_scope(g, *base_range.end())?;
            let rows = enumerate_solutions(*nmax, base_range.clone(), *lmin)?;
            let meta = header(g, "search")
                .with("nmax", nmax)
                .with("bases", range_str(base_range))
                .with("lmin", lmin)
                .with("beyond_proved_range", beyond);
            Ok(render_solutions(&meta, &rows, g.format))
        }
        Command::Verify => verify(),
        Command::Pipeline { base_range } => {
            check_scope(g, *base_range.end())?;
            let config = PipelineConfig {
                precision,
                bases: base_range.clone(),
            };
            let report = run_pipeline(&config)?;
            let passed = report.passed;
            let out = match g.format {
                Format::Json => Report::new(config.header(), &report).to_json(),
                _ => format!("{}{}", config.header().comment_lines(), report.summary()),
            };
            if passed {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
    }
}

fn seq(g: &Global, from: usize, to: usize) -> String {
    let values = global_cache().range(from, to);
    let meta = header(g, "seq").with("from", from).with("to", to);
    match g.format {
        Format::Json => Report::new(meta, values).to_json(),
        Format::Csv => {
            let mut s = meta.comment_lines();
            s.push_str("n,value\n");
            for v in values {
                s.push_str(&format!("{},{}\n", v.index, v.value));
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for v in values {
                s.push_str(&format!("{:>5} {}\n", v.index, v.value));
            }
            s
        }
    }
}

fn render_bounds(meta: &ReportHeader, reports: &[BoundReport], format: Format) -> String {
    match format {
        Format::Json => Report::new(meta.clone(), reports).to_json(),
        Format::Csv => {
            let mut s = meta.comment_lines();
            s.push_str("b,matveev_prefactor,log_t,ninety_log_b,m_b,m_b_ceil\n");
            for r in reports {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.b,
                    r.coeff_lambda1.to_sci_string(8),
                    r.log_t.to_sci_string(8),
                    r.ninety_log_b.to_sci_string(8),
                    r.m_b.to_sci_string(8),
                    r.m_b_ceil
                ));
            }
            s
        }
        Format::Table => {
            let mut s = meta.comment_lines();
            for r in reports {
                s.push_str(&format!(
                    "b = {}\n  Matveev prefactor  {} (<= 2e13)\n  T = 2e27 log^3 b   {}\n  log T              {} < 63 + 3 log log b = {} < 90 log b = {}\n  M_b                {}\n",
                    r.b,
                    r.coeff_lambda1.to_sci_string(6),
                    r.t_value.to_sci_string(6),
                    r.log_t.to_sci_string(6),
                    r.log_t_bound.to_sci_string(6),
                    r.ninety_log_b.to_sci_string(6),
                    r.m_b.to_sci_string(6),
                ));
            }
            s
        }
    }
}

fn render_campaign(meta: &ReportHeader, summary: &CampaignSummary, format: Format) -> String {
    if format == Format::Json {
        return Report::new(meta.clone(), summary).to_json();
    }
    let rows = summary.bases.iter().map(|r| {
        let retries = r
            .step1
            .iter()
            .map(|c| c.retries)
            .chain(r.step2.iter().map(|c| c.max_retries))
            .max()
            .unwrap_or(0);
        (r.b, &r.m_bound, r.digits, r.step1_m0_bound, r.gap_bound, r.step2_bound, retries)
    });
    let mut s = meta.comment_lines();
    if format == Format::Csv {
        s.push_str("b,m_bound,digits,step1_m0,step1_gap,step2,max_retries\n");
        for (b, m, d, m0, gap, s2, rt) in rows {
            s.push_str(&format!("{b},{m},{d},{m0},{gap},{s2},{rt}\n"));
        }
    } else {
        s.push_str(&format!(
            "{:>4} {:>37} {:>6} {:>8} {:>9} {:>6} {:>7}\n",
            "b", "M", "digits", "step1_m0", "step1_gap", "step2", "retries"
        ));
        for (b, m, d, m0, gap, s2, rt) in rows {
            s.push_str(&format!("{b:>4} {m:>37} {d:>6} {m0:>8} {gap:>9} {s2:>6} {rt:>7}\n"));
        }
        s.push_str(&format!(
            "max: n <= {} (m = 0), n - m <= {}, n <= {} (m >= 1)\n",
            summary.global_m0_bound, summary.global_gap_bound, summary.global_step2_bound
        ));
    }
    s
}

fn verify() -> Result<String, Failure> {
    let table = verify_table1();
    let mut s = format!("Table 1: {}\n", table.ratio());
    for t in &table.missing {
        s.push_str(&format!("  missing {:?}\n", t.as_tuple()));
    }
    for t in &table.extra {
        s.push_str(&format!("  extra {:?}\n", t.as_tuple()));
    }
    let mut ok = table.passed();
    let mut check = |name: &str, pass: bool, detail: String| {
        ok &= pass;
        s.push_str(&format!("{name}: {} ({detail})\n", if pass { "ok" } else { "FAILED" }));
    };

    let single = single_term_repdigits(TABLE_N_MAX, 2..=MAX_VERIFIED_BASE, 3)?;
    check(
        "single-term repdigits, l >= 3",
        single == [(9, 3, 1, 3), (15, 3, 3, 6)],
        format!("{single:?}"),
    );
    let l4 = enumerate_solutions(TABLE_N_MAX, 2..=MAX_VERIFIED_BASE, 4)?;
    check("solutions with l >= 4", l4.len() == 6, format!("{} found", l4.len()));
    let l7 = enumerate_solutions(TABLE_N_MAX, 2..=MAX_VERIFIED_BASE, 7)?;
    check("solutions with l >= 7", l7.is_empty(), format!("{} found", l7.len()));
    let m3 = mersenne_scan(TABLE_N_MAX, 3);
    let m2 = mersenne_scan(TABLE_N_MAX, 2);
    let m2_desc: Vec<String> = m2
        .iter()
        .map(|h| format!("N_{} = 2^{} - 1{}", h.n, h.ell, if h.prime { ", prime" } else { "" }))
        .collect();
    check(
        "N_n = 2^l - 1 with l >= 3",
        m3.is_empty(),
        format!("none; with l >= 2: {}", m2_desc.join("; ")),
    );
    let one = block_repdigit_scan(TABLE_N_MAX, 1, 2)?;
    let ones: Vec<u64> = one.iter().map(|h| h.n).collect();
    check("1-block repdigits", ones == [14], format!("n in {ones:?}"));
    let two = block_repdigit_scan(TABLE_N_MAX, 2, 2)?;
    check("2-block repdigits", two.is_empty(), format!("{} found", two.len()));

    if ok {
        Ok(s)
    } else {
        Err(Failure::Mismatch(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let exhausted = Error::PrecisionExhausted {
            context: "x".into(),
            digits: 30,
        };
        assert_eq!(exit_code(&exhausted), EXIT_PRECISION);
        assert_eq!(exit_code(&Error::Precondition("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::EpsilonNonPositive { tried: 10 }), EXIT_MISMATCH);
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2:100").unwrap(), 2..=100);
        assert!(parse_range("1:5").is_err());
        assert!(parse_range("9:5").is_err());
        assert!(parse_range("7").is_err());
    }
}
