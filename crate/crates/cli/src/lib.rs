//! Command implementations behind the `gogmagog` binary.
//!
//! Exit codes: 0 on success, 1 when an input is not a valid trapezoid or a
//! verification fails, 2 on usage and parse errors. Data goes to stdout,
//! diagnostics to stderr.

pub mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gogmagog::bijection::{gog_to_magog_with_case, magog_to_gog_with_case};
use gogmagog::enumeration::{enumerate_partition, Ranker};
use gogmagog::format::{self, Format};
use gogmagog::harness::{self, HarnessConfig, VerifyReport};
use gogmagog::statistics::{distribution, find_statistic_counterexample, Pairing, StatSelector};
use gogmagog::{count, enumerate, BigUint, Error, Kind, Trapezoid, TrapezoidParams};

use render::{render_ascii, RenderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gogmagog", version, about = "Gog and Magog trapezoids with two rows")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a trapezoid file against its definition.
    Validate {
        /// Input file, or `-` for stdin.
        #[arg(default_value = "-")]
        input: String,
        /// Report format.
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Apply the bijection.
    Map {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "auto")]
        direction: Direction,
        /// Output format; defaults to the input's format.
        #[arg(long)]
        format: Option<DataFormat>,
    },
    /// Stream every trapezoid of a family in canonical order.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value = "text")]
        format: DataFormat,
        /// Stop after this many instances.
        #[arg(long)]
        limit: Option<u64>,
        /// Emit only shard `i` of `p` (a contiguous run of the order).
        #[arg(long)]
        partition: Option<Partition>,
    },
    /// Print the exact size of a family.
    Count {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "dp")]
        method: CountMethod,
    },
    /// Print the 0-based canonical rank of a trapezoid.
    Rank {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print the trapezoid with a given canonical rank.
    Unrank {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        index: String,
        #[arg(long, default_value = "text")]
        format: DataFormat,
    },
    /// Statistic of one trapezoid, or its distribution over a family.
    Stats(StatsArgs),
    /// Search for a trapezoid whose statistic is not carried to its image.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        ell: i64,
        /// `mrr`, `bc` or `constant`.
        #[arg(long, default_value = "mrr")]
        pairing: String,
        #[arg(long, default_value = "text")]
        format: DataFormat,
    },
    /// Run the exhaustive verifiers.
    Verify {
        #[arg(long, required_unless_present = "grid")]
        n: Option<usize>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        ell: i64,
        /// Run n = 3..=8 and ell = 0..=2.
        #[arg(long, conflicts_with = "n")]
        grid: bool,
        /// Skip enumeration-backed checks above this family size.
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
        #[arg(long, default_value_t = 100)]
        max_failures: usize,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
    },
    /// Draw a trapezoid as text.
    Render {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        mark_bug: bool,
        #[arg(long)]
        mark_pivot: bool,
        #[arg(long)]
        bounds: bool,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub ell: i64,
}

impl FamilyArgs {
    fn resolve(&self) -> Result<(Kind, TrapezoidParams), Error> {
        Ok((self.kind.into(), TrapezoidParams::new(self.n, self.ell)?))
    }
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Single-instance mode: a trapezoid file, or `-` for stdin.
    pub input: Option<String>,
    #[arg(long)]
    pub kind: Option<KindArg>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub ell: i64,
    /// Preset (`mrr`, `bc`, `right_gog`, `right_magog`, `constant`) or a
    /// comma-separated component list.
    #[arg(long, default_value = "mrr")]
    pub stat: String,
    #[arg(long, default_value = "csv")]
    pub format: TableFormat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Gog,
    Magog,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Gog => Kind::Gog,
            KindArg::Magog => Kind::Magog,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Direction {
    Auto,
    MagogToGog,
    GogToMagog,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DataFormat {
    Text,
    Json,
}

impl From<DataFormat> for Format {
    fn from(f: DataFormat) -> Format {
        match f {
            DataFormat::Text => Format::Text,
            DataFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CountMethod {
    Dp,
    Enumerate,
}

#[derive(Debug, Clone, Copy)]
pub struct Partition {
    pub index: usize,
    pub parts: usize,
}

impl FromStr for Partition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (i, p) = s.split_once('/').ok_or("expected `i/p`")?;
        let index = i.parse().map_err(|_| format!("bad shard index `{i}`"))?;
        let parts = p.parse().map_err(|_| format!("bad shard count `{p}`"))?;
        if parts == 0 || index >= parts {
            return Err(format!("shard {index}/{parts} does not exist"));
        }
        Ok(Partition { index, parts })
    }
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidParams { .. }
            | Error::RankOutOfRange { .. }
            | Error::InvalidPartition { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { io.stderr } else { io.stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, io) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            EXIT_INVALID
        }
    }
}

fn read_input(input: &str, io: &mut Io<'_>) -> Result<String, Failure> {
    if input == "-" {
        let mut buf = String::new();
        io.stdin.read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{input}: {e}")))
    }
}

fn read_instance(input: &str, io: &mut Io<'_>) -> Result<(Trapezoid, Format), Failure> {
    let text = read_input(input, io)?;
    Ok(format::parse_auto(&text).map_err(Error::from)?)
}

fn execute(command: Command, io: &mut Io<'_>) -> CmdResult {
    match command {
        Command::Validate { input, format } => cmd_validate(&input, format, io),
        Command::Map {
            input,
            direction,
            format,
        } => cmd_map(&input, direction, format, io),
        Command::Enumerate {
            family,
            format,
            limit,
            partition,
        } => cmd_enumerate(&family, format.into(), limit, partition, io),
        Command::Count { family, method } => cmd_count(&family, method, io),
        Command::Rank { input } => cmd_rank(&input, io),
        Command::Unrank { family, index, format } => cmd_unrank(&family, &index, format.into(), io),
        Command::Stats(args) => cmd_stats(&args, io),
        Command::Counterexample {
            n,
            ell,
            pairing,
            format,
        } => cmd_counterexample(n, ell, &pairing, format.into(), io),
        Command::Verify {
            n,
            ell,
            grid,
            cap,
            max_failures,
            format,
        } => cmd_verify(n, ell, grid, cap, max_failures, format, io),
        Command::Render {
            input,
            mark_bug,
            mark_pivot,
            bounds,
        } => {
            let (instance, _) = read_instance(&input, io)?;
            let spec = RenderSpec {
                instance,
                mark_bug,
                mark_pivot,
                show_bounds: bounds,
            };
            io.stdout.write_all(render_ascii(&spec)?.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

pub fn cmd_validate(input: &str, format: ReportFormat, io: &mut Io<'_>) -> CmdResult {
    let (t, _) = read_instance(input, io)?;
    let report = t.validate();
    match format {
        ReportFormat::Json => {
            let value = serde_json::json!({
                "kind": t.kind(),
                "valid": report.is_valid(),
                "violations": report.violations,
            });
            writeln!(io.stdout, "{value}")?;
        }
        ReportFormat::Text => {
            if report.is_valid() {
                writeln!(io.stdout, "valid")?;
            }
            for v in &report.violations {
                writeln!(io.stdout, "{v}")?;
            }
        }
    }
    Ok(if report.is_valid() { EXIT_OK } else { EXIT_INVALID })
}

pub fn cmd_map(input: &str, direction: Direction, format: Option<DataFormat>, io: &mut Io<'_>) -> CmdResult {
    let (t, in_format) = read_instance(input, io)?;
    let expected = match direction {
        Direction::Auto => t.kind(),
        Direction::MagogToGog => Kind::Magog,
        Direction::GogToMagog => Kind::Gog,
    };
    if t.kind() != expected {
        return Err(Failure::Usage(format!(
            "direction expects a {expected} trapezoid, input is a {}",
            t.kind()
        )));
    }
    t.ensure_valid()?;
    let (image, case): (Trapezoid, _) = match &t {
        Trapezoid::Magog(m) => {
            let (g, case) = magog_to_gog_with_case(m);
            (g.into(), case)
        }
        Trapezoid::Gog(g) => {
            let (m, case) = gog_to_magog_with_case(g);
            (m.into(), case)
        }
    };
    let out_format = format.map(Format::from).unwrap_or(in_format);
    io.stdout.write_all(format::serialize(&image, out_format).as_bytes())?;
    writeln!(io.stderr, "case: {case}")?;
    Ok(EXIT_OK)
}

pub fn cmd_enumerate(
    family: &FamilyArgs,
    format: Format,
    limit: Option<u64>,
    partition: Option<Partition>,
    io: &mut Io<'_>,
) -> CmdResult {
    let (kind, params) = family.resolve()?;
    let stream = match partition {
        Some(Partition { index, parts }) => enumerate_partition(kind, params, index, parts)?,
        None => enumerate(kind, params)?,
    };
    let mut out = io::BufWriter::new(&mut *io.stdout);
    for t in stream.take(limit.map_or(usize::MAX, |l| l.min(usize::MAX as u64) as usize)) {
        out.write_all(format::serialize(&t, format).as_bytes())?;
    }
    out.flush()?;
    Ok(EXIT_OK)
}

pub fn cmd_count(family: &FamilyArgs, method: CountMethod, io: &mut Io<'_>) -> CmdResult {
    let (kind, params) = family.resolve()?;
    let total = match method {
        CountMethod::Dp => count(kind, params)?,
        CountMethod::Enumerate => BigUint::from(enumerate(kind, params)?.count()),
    };
    writeln!(io.stdout, "{total}")?;
    Ok(EXIT_OK)
}

pub fn cmd_rank(input: &str, io: &mut Io<'_>) -> CmdResult {
    let (t, _) = read_instance(input, io)?;
    t.ensure_valid()?;
    let ranker = Ranker::new(t.kind(), t.params())?;
    writeln!(io.stdout, "{}", ranker.rank(&t)?)?;
    Ok(EXIT_OK)
}

pub fn cmd_unrank(family: &FamilyArgs, index: &str, format: Format, io: &mut Io<'_>) -> CmdResult {
    let (kind, params) = family.resolve()?;
    let rank: BigUint = index
        .parse()
        .map_err(|_| Failure::Usage(format!("`{index}` is not a non-negative integer")))?;
    let t = Ranker::new(kind, params)?.unrank(&rank)?;
    io.stdout.write_all(format::serialize(&t, format).as_bytes())?;
    Ok(EXIT_OK)
}

fn selector_for(stat: &str, kind: Kind) -> Result<StatSelector, Failure> {
    if stat == "bc" {
        return Ok(match kind {
            Kind::Gog => StatSelector::right_gog(),
            Kind::Magog => StatSelector::right_magog(),
        });
    }
    stat.parse().map_err(Failure::Usage)
}

pub fn cmd_stats(args: &StatsArgs, io: &mut Io<'_>) -> CmdResult {
    if let Some(input) = &args.input {
        let (t, _) = read_instance(input, io)?;
        t.ensure_valid()?;
        let stats = selector_for(&args.stat, t.kind())?.extract(&t);
        match args.format {
            TableFormat::Csv => {
                let names: Vec<_> = stats.0.iter().map(|(c, _)| c.name()).collect();
                let values: Vec<_> = stats.values().iter().map(|v| v.to_string()).collect();
                writeln!(io.stdout, "{}\n{}", names.join(","), values.join(","))?;
            }
            TableFormat::Json => {
                // written by hand to keep the selector's component order
                let fields: Vec<_> = stats.0.iter().map(|(c, v)| format!("\"{}\":{v}", c.name())).collect();
                writeln!(io.stdout, "{{{}}}", fields.join(","))?;
            }
        }
        return Ok(EXIT_OK);
    }
    let (Some(kind), Some(n)) = (args.kind, args.n) else {
        return Err(Failure::Usage(
            "give an input file, or --kind and --n for a distribution".into(),
        ));
    };
    let kind = Kind::from(kind);
    let params = TrapezoidParams::new(n, args.ell)?;
    let table = distribution(kind, params, &selector_for(&args.stat, kind)?)?;
    match args.format {
        TableFormat::Csv => io.stdout.write_all(table.to_csv().as_bytes())?,
        TableFormat::Json => writeln!(io.stdout, "{}", table.to_json())?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_counterexample(n: usize, ell: i64, pairing: &str, format: Format, io: &mut Io<'_>) -> CmdResult {
    let params = TrapezoidParams::new(n, ell)?;
    let pairing: Pairing = pairing.parse().map_err(Failure::Usage)?;
    match find_statistic_counterexample(params, &pairing)? {
        None => {
            writeln!(io.stderr, "statistic preserved on all of {params}")?;
        }
        Some(w) => {
            let m: Trapezoid = w.magog.into();
            let g: Trapezoid = w.gog.into();
            match format {
                Format::Text => {
                    io.stdout.write_all(format::to_text(&m).as_bytes())?;
                    io.stdout.write_all(format::to_text(&g).as_bytes())?;
                }
                Format::Json => {
                    let value = serde_json::json!({
                        "magog": format::to_json_value(&m),
                        "gog": format::to_json_value(&g),
                        "magog_stat": w.magog_stat.values(),
                        "gog_stat": w.gog_stat.values(),
                    });
                    writeln!(io.stdout, "{value}")?;
                }
            }
            writeln!(io.stderr, "magog: {}\ngog:   {}", w.magog_stat, w.gog_stat)?;
        }
    }
    Ok(EXIT_OK)
}

fn report_line(r: &VerifyReport) -> String {
    let status = match r.status {
        harness::CheckStatus::Passed => "passed",
        harness::CheckStatus::Failed => "FAILED",
        harness::CheckStatus::Skipped => "skipped",
    };
    format!(
        "n={} ell={} {:?}: {} (magog {} / gog {} checked, {} failures)",
        r.params.n, r.params.ell, r.check, status, r.instances_checked.magog, r.instances_checked.gog, r.failure_count
    )
}

pub fn cmd_verify(
    n: Option<usize>,
    ell: i64,
    grid: bool,
    cap: u64,
    max_failures: usize,
    format: ReportFormat,
    io: &mut Io<'_>,
) -> CmdResult {
    let config = HarnessConfig {
        enumeration_cap: cap,
        failure_cap: max_failures,
    };
    let reports = if grid {
        harness::verify_grid(3..=8, 0..=2, &config)?
    } else {
        let n = n.ok_or_else(|| Failure::Usage("--n is required without --grid".into()))?;
        harness::verify_all(TrapezoidParams::new(n, ell)?, &config)?
    };
    match format {
        ReportFormat::Json => {
            let value = serde_json::to_value(&reports).expect("reports serialize");
            writeln!(io.stdout, "{value}")?;
        }
        ReportFormat::Text => {
            for r in &reports {
                writeln!(io.stdout, "{}", report_line(r))?;
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        writeln!(io.stderr, "{failed} check(s) failed")?;
        Ok(EXIT_INVALID)
    } else {
        Ok(EXIT_OK)
    }
}
