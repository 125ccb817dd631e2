use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tileprove::constructions::{self, Tiling};
use tileprove::number_theory::forms_of;
use tileprove::search_3a2b::{run_search, Pruning, SearchOptions, Shape};
use tileprove::search_equilateral::{self, compare_with_reference, scan_range, ScanRow};
use tileprove::tile_models::Gamma;
use tileprove::verdict::{self, rule, Evidence};
use tileprove::Error;

macro_rules! out {
    ($($arg:tt)*) => {
        emit(format_args!($($arg)*))
    };
}

/// Writes a line to stdout; a closed pipe ends the process quietly.
fn emit(args: std::fmt::Arguments) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{args}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("cannot write to stdout: {e}");
    }
}

const SEARCH_CAP: u32 = 200;
const VERDICT_CAP: u32 = 100;

#[derive(Parser, Debug)]
#[command(
    name = "tileprove",
    version,
    about = "Exact case analysis and constructions for N-tilings of a triangle"
)]
struct Cli {
    /// Worker threads for the searches.
    #[arg(long, global = true, env = "TILEPROVE_JOBS", value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest N accepted (at most 200).
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u32).range(3..=SEARCH_CAP as i64))]
    max_n: u32,
    /// Progress on standard error.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ShapeArg {
    Isosceles,
    Scalene,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum PruningArg {
    Standard,
    Listing,
    NoBudget,
    Unpruned,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum GammaArg {
    #[value(name = "pi3")]
    Pi3,
    #[value(name = "2pi3")]
    TwoPi3,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Family {
    Quadratic,
    Biquadratic,
    Double,
    Pythagorean,
    Hexagonal,
    Bisected,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Case-by-case certificate for N.
    Verdict {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search for 3α + 2β = π solutions of the coloring and area equations.
    #[command(name = "search-3a2b")]
    Search3a2b {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        shape: ShapeArg,
        #[arg(long, value_enum, default_value_t = PruningArg::Standard)]
        pruning: PruningArg,
        /// Stop after the first outer slice with a hit.
        #[arg(long)]
        first_hit: bool,
        /// Write the hit list here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search for rational tiles of an equilateral triangle with γ = π/3 or 2π/3.
    SearchEquilateral {
        #[arg(long, required_unless_present = "range")]
        n: Option<u32>,
        /// Both values when omitted.
        #[arg(long, value_enum)]
        gamma: Option<GammaArg>,
        /// Scan LO:HI and compare with the reference table.
        #[arg(long, conflicts_with = "n")]
        range: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate a tiling.
    ///
    /// Parameters by family: quadratic "a2,b2,c2,n" (squared tile sides); biquadratic "e,f";
    /// pythagorean "a,b,c"; hexagonal "k"; bisected "k"; double "FAMILY:PARAMS[:LEG]".
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a tiling file exactly.
    Verify { file: PathBuf },
    /// Coloring number of a tiling file.
    Color {
        file: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Closed forms of N.
    Forms {
        #[arg(long)]
        n: u32,
    },
    /// Imported rules evaluated for every N up to --max-n.
    Table,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange { .. }
            | Error::InvalidParams(_)
            | Error::Parse(_)
            | Error::NotPythagorean(_)
            | Error::NotRightTriangle
            | Error::DegenerateTile(_)
            | Error::MalformedTiling(_)
            | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type CliResult = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_n(n: u32, cli: &Cli, cap: u32) -> CliResult {
    let cap = cap.min(cli.max_n);
    if !(3..=cap).contains(&n) {
        return Err(usage(format!("--n must be in 3..={cap}, got {n}")));
    }
    Ok(())
}

fn note(cli: &Cli, msg: impl AsRef<str>) {
    if cli.verbose {
        eprintln!("{}", msg.as_ref());
    }
}

fn write_json<T: Serialize>(path: &PathBuf, value: &T) -> CliResult {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    fs::write(path, s + "\n").map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) {
    out!(
        "{}",
        serde_json::to_string_pretty(value).expect("output serializes")
    );
}

fn read_tiling(path: &PathBuf) -> std::result::Result<Tiling, Failure> {
    let s = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(Tiling::from_json(&s)?)
}

fn family_name(f: Family) -> String {
    f.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn gamma_of(g: GammaArg) -> Gamma {
    match g {
        GammaArg::Pi3 => Gamma::PiOver3,
        GammaArg::TwoPi3 => Gamma::TwoPiOver3,
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Verdict { n, json } => {
            check_n(*n, cli, VERDICT_CAP)?;
            let t = Instant::now();
            let cert = verdict::verdict(*n)?;
            note(cli, format!("verdict N={n} in {:.2?}", t.elapsed()));
            if let Some(path) = json {
                write_json(path, &cert)?;
            }
            if cli.format == Format::Json {
                print_json(&cert);
                return Ok(());
            }
            let impossible = cert
                .cases
                .iter()
                .filter(|c| c.status.is_impossible())
                .count();
            out!(
                "N={n}: {} ({impossible} of {} cases impossible)",
                cert.overall,
                cert.cases.len()
            );
            for c in &cert.cases {
                let detail: Vec<String> = c
                    .evidence
                    .iter()
                    .map(|e| match e {
                        Evidence::Citation { rule, .. } => format!("rule {rule}"),
                        Evidence::Transcript {
                            search,
                            complete,
                            hits,
                            digest,
                        } => format!(
                            "{search}: {hits} hit(s){} sha256 {}",
                            if *complete { "" } else { " (stopped at first)" },
                            &digest[..12]
                        ),
                        Evidence::Construction {
                            family,
                            params,
                            tiles,
                            verified,
                        } => {
                            format!("{family} {params}: {tiles} tiles, verified={verified}")
                        }
                        Evidence::Forms { forms } => format!("forms: {}", render_forms(forms)),
                    })
                    .collect();
                out!(
                    "  {:<24} {:<19} {}",
                    format!("{:?}", c.case),
                    format!("{:?}", c.status),
                    detail.join("; ")
                );
            }
        }
        Command::Search3a2b {
            n,
            shape,
            pruning,
            first_hit,
            json,
        } => {
            check_n(*n, cli, SEARCH_CAP)?;
            let shape = match shape {
                ShapeArg::Isosceles => Shape::Isosceles,
                ShapeArg::Scalene => Shape::Scalene,
            };
            let pruning = match pruning {
                PruningArg::Standard => Pruning::Standard,
                PruningArg::Listing => Pruning::Listing,
                PruningArg::NoBudget => Pruning::NoBudget,
                PruningArg::Unpruned => Pruning::Unpruned,
            };
            note(
                cli,
                format!("searching N={n} {shape:?} with {pruning:?} pruning"),
            );
            let t = Instant::now();
            let report = run_search(
                *n,
                shape,
                SearchOptions {
                    pruning,
                    stop_at_first_hit: *first_hit,
                },
            )?;
            note(
                cli,
                format!(
                    "{} tuples, {} roots in (0,1), {} degenerate tuples, {:.2?}",
                    report.diagnostics.tuples_examined,
                    report.diagnostics.roots_in_unit_interval,
                    report.diagnostics.degenerate_tuples.len(),
                    t.elapsed()
                ),
            );
            if let Some(path) = json {
                write_json(path, &report.hits)?;
            }
            if cli.format == Format::Json {
                print_json(&report);
                return Ok(());
            }
            out!(
                "N={n} {shape:?} ({pruning:?}): {} hit(s){}",
                report.hits.len(),
                if report.stopped_early {
                    ", stopped at first hit"
                } else {
                    ""
                }
            );
            for h in &report.hits {
                let (p, d) = (h.params, h.decomposition);
                out!(
                    "  M={} P={} Q={} R={} | p={} q={} r={} u={} v={} w={} k={} l={} m={} | s={} | {:?}",
                    p.m, p.p, p.q, p.r, d.p, d.q, d.r, d.u, d.v, d.w, d.k, d.ell, d.m, h.s, h.which_area
                );
            }
        }
        Command::SearchEquilateral {
            n,
            gamma,
            range,
            json,
        } => {
            let gammas = match gamma {
                Some(g) => vec![gamma_of(*g)],
                None => vec![Gamma::PiOver3, Gamma::TwoPiOver3],
            };
            let (lo, hi) = match (n, range) {
                (Some(n), _) => (*n, *n),
                (None, Some(r)) => {
                    let (a, b) = r
                        .split_once(':')
                        .ok_or_else(|| usage("--range takes LO:HI"))?;
                    let parse = |x: &str| {
                        x.trim()
                            .parse::<u32>()
                            .map_err(|_| usage(format!("bad range bound {x:?}")))
                    };
                    (parse(a)?, parse(b)?)
                }
                (None, None) => return Err(usage("give --n or --range")),
            };
            check_n(lo, cli, SEARCH_CAP)?;
            check_n(hi, cli, SEARCH_CAP)?;
            if lo > hi {
                return Err(usage(format!("empty range {lo}:{hi}")));
            }
            if n.is_some() {
                let reports: Vec<_> = gammas
                    .iter()
                    .map(|&g| search_equilateral::search(lo, g))
                    .collect::<Result<_, _>>()?;
                if let Some(path) = json {
                    let all: Vec<_> = reports.iter().flat_map(|r| r.candidates.clone()).collect();
                    write_json(path, &all)?;
                }
                if cli.format == Format::Json {
                    print_json(&reports);
                    return Ok(());
                }
                for r in &reports {
                    out!(
                        "N={} gamma={}: {} candidate(s)",
                        r.n,
                        r.gamma.label(),
                        r.candidates.len()
                    );
                    for c in &r.candidates {
                        out!(
                            "  tile ({},{},{}) s={} p={} q={} r={} {:?}",
                            c.tile.0,
                            c.tile.1,
                            c.tile.2,
                            c.s,
                            c.p,
                            c.q,
                            c.r,
                            c.branch
                        );
                    }
                }
                return Ok(());
            }
            let mut rows: Vec<ScanRow> = Vec::new();
            for &g in &gammas {
                rows.extend(scan_range(lo, hi, g)?);
            }
            rows.sort_by_key(|r| (r.n, r.gamma));
            let discrepancies = if gammas.len() == 2 {
                compare_with_reference(&rows, lo, hi)
            } else {
                Vec::new()
            };
            if let Some(path) = json {
                write_json(path, &rows)?;
            }
            if cli.format == Format::Json {
                print_json(&serde_json::json!({ "rows": rows, "discrepancies": discrepancies }));
                return Ok(());
            }
            out!("{:>4}  {:<6} tile", "N", "gamma");
            for r in &rows {
                for (t, b) in r.tiles.iter().zip(&r.branches) {
                    out!(
                        "{:>4}  {:<6} ({},{},{}) {:?}",
                        r.n,
                        r.gamma.label(),
                        t.0,
                        t.1,
                        t.2,
                        b
                    );
                }
            }
            for d in &discrepancies {
                out!("discrepancy: {d}");
            }
        }
        Command::Gen {
            family,
            params,
            out,
            svg,
        } => {
            let t = constructions::generate(&family_name(*family), params)?;
            let report = constructions::verify(&t)?;
            if !report.passed() {
                return Err(Failure::Internal(format!(
                    "generated tiling fails verification: {report:?}"
                )));
            }
            if let Some(path) = svg {
                constructions::write_svg(&t, path, None)?;
            }
            match out {
                Some(path) => {
                    fs::write(path, t.to_json() + "\n")
                        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                    out!("{} tiles written to {}", t.n(), path.display());
                }
                None => out!("{}", t.to_json()),
            }
        }
        Command::Verify { file } => {
            let t = read_tiling(file)?;
            let r = constructions::verify(&t)?;
            if cli.format == Format::Json {
                print_json(&r);
            } else {
                out!(
                    "N={} congruent={} disjoint={} covers={}: {}",
                    r.n,
                    r.congruent,
                    r.disjoint,
                    r.covers,
                    if r.passed() {
                        "valid tiling"
                    } else {
                        "NOT a valid tiling"
                    }
                );
            }
        }
        Command::Color { file, svg } => {
            let t = read_tiling(file)?;
            let c = match constructions::coloring_number(&t) {
                Ok(c) => c,
                Err(Error::NotColorable(violated)) => {
                    if cli.format == Format::Json {
                        print_json(&serde_json::json!({ "not_colorable": violated }));
                    } else {
                        out!("NotColorable: {}", constructions::describe(&violated));
                    }
                    return Ok(());
                }
                Err(e) => return Err(e.into()),
            };
            if let Some(path) = svg {
                constructions::write_svg(&t, path, Some(&c.colors))?;
            }
            if cli.format == Format::Json {
                print_json(&c);
            } else {
                let identity = match c.identity_holds {
                    Some(true) => "holds",
                    Some(false) => "FAILS",
                    None => "not checked (irrational squared lengths)",
                };
                let sign = if c.sign > 0 { "+" } else { "-" };
                out!("M={} sign={sign} X{sign}Y+Z=M(a+b+c) {identity}", c.m);
            }
        }
        Command::Forms { n } => {
            if *n == 0 || *n > 1_000_000 {
                return Err(usage(format!("--n must be in 1..=1000000, got {n}")));
            }
            let forms = forms_of(*n as u64);
            if cli.format == Format::Json {
                print_json(&forms);
            } else {
                out!("{}", render_forms(&forms));
            }
        }
        Command::Table => {
            let ids = [
                "commensurable-forms",
                "right-tile-isosceles",
                "isosceles-gamma-2alpha",
                "gamma-2pi3-at-least-12",
            ];
            if cli.format == Format::Json {
                let rows: Vec<_> = (3..=cli.max_n)
                    .map(|n| {
                        let excluded: Vec<&str> = ids.iter().copied().filter(|id| (rule(id).excludes)(n)).collect();
                        serde_json::json!({ "n": n, "forms": forms_of(n as u64), "excluded_by": excluded })
                    })
                    .collect();
                print_json(&rows);
                return Ok(());
            }
            out!("Imported rules only; `verdict --n N` adds the computed cases.");
            for (i, id) in ids.iter().enumerate() {
                out!("  [{}] {}: {}", i + 1, id, rule(id).statement);
            }
            out!("{:>4}  {:<32} excluded by", "N", "forms");
            for n in 3..=cli.max_n {
                let excluded: Vec<String> = ids
                    .iter()
                    .enumerate()
                    .filter(|(_, id)| (rule(id).excludes)(n))
                    .map(|(i, _)| format!("[{}]", i + 1))
                    .collect();
                out!(
                    "{n:>4}  {:<32} {}",
                    render_forms(&forms_of(n as u64)),
                    excluded.join(" ")
                );
            }
        }
    }
    Ok(())
}

fn render_forms(forms: &[tileprove::number_theory::NForm]) -> String {
    if forms.is_empty() {
        return "none".into();
    }
    forms
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        builder = builder.num_threads(j as usize);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            eprintln!("run `tileprove --help` for usage");
            ExitCode::from(1)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(2)
        }
    }
}
