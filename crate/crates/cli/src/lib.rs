//! The `dopcalc` command-line front end as a library, so that tests can run
//! commands in-process.

pub mod commands;
pub mod config;
pub mod report;
pub mod ring;

use std::io::Read;
use std::path::PathBuf;

use anyhow::Context;
use clap::Parser;
use dopcalc::groebner::DEFAULT_DEGREE_CAP;
use dopcalc::AlgError;

pub use config::{Format, ModuleChoice, RunConfig, Window};
pub use report::{Report, Status, Table};
pub use ring::{parse_ring, FieldSpec, RingDescription};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Dimensions of D^n(R, R) by order and degree.
    Dops,
    /// Colimit over orders of Ext^i_R(P^n, M).
    Svdb,
    /// Local cohomology of R at the irrelevant ideal.
    Lc,
    /// R^i D(ω_R) against H^{d+i}_Δ(ω_P).
    TheoremA,
    /// Ext^i_R(P^n, ω) against H^{i+1}_{R+}(Hom_R(P^n, ω)).
    Horrocks,
    /// Surjectivity of D^n(R, R) -> D^n(R, K) in degrees 0 down to -depth.
    Dsimple,
    /// Endomorphisms of R over the subring of p^e-th powers.
    Frobenius,
    /// Operator dimensions over Q against F_p for a ring over ZZ.
    TorsionScan,
    /// Depth implied by the vanishing of R^i D(R).
    Depth,
    /// Minimal generators of D^n for the left and right structures.
    Leftright,
}

impl Command {
    pub fn name(self) -> String {
        clap::ValueEnum::to_possible_value(&self)
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "dopcalc",
    version,
    about = "Differential operators and local cohomology of graded algebras"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Ring-description file, or `-` for standard input.
    #[arg(required_unless_present = "ring_text")]
    pub ring: Option<PathBuf>,
    /// The ring description itself, instead of a file.
    #[arg(long, conflicts_with = "ring")]
    pub ring_text: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub order: usize,
    #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
    pub window: Window,
    /// Largest power of the ideal; defaults to the window width plus 3.
    #[arg(long)]
    pub tmax: Option<usize>,
    /// Largest order; defaults to the window width plus 3.
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    pub primes: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Worker threads; the output does not depend on this.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: i32,
    /// Cohomological indices.
    #[arg(long = "i", value_delimiter = ',', default_value = "0")]
    pub indices: Vec<usize>,
    /// Degrees 0, -1, ..., -depth for dsimple.
    #[arg(long, default_value_t = 2)]
    pub depth: i32,
    /// Largest index scanned by depth.
    #[arg(long, default_value_t = 2)]
    pub imax: usize,
    /// Frobenius exponent e, for q = p^e.
    #[arg(long, default_value_t = 1)]
    pub exponent: u32,
    /// The module M for svdb.
    #[arg(long, value_enum, default_value_t = ModuleChoice::Ring)]
    pub module: ModuleChoice,
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        let default = self.window.width() + 3;
        RunConfig {
            order: self.order,
            window: self.window,
            indices: self.indices.clone(),
            t_max: self.tmax.unwrap_or(default),
            n_max: self.nmax.unwrap_or(default),
            primes: self.primes.clone(),
            format: self.format,
            degree_cap: self.degree_cap,
            depth: self.depth,
            i_max: self.imax,
            exponent: self.exponent,
            module: self.module,
        }
    }

    fn ring_source(&self) -> anyhow::Result<String> {
        if let Some(t) = &self.ring_text {
            return Ok(t.clone());
        }
        let path = self.ring.as_ref().context("no ring given")?;
        if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading the ring from standard input")?;
            return Ok(s);
        }
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// Adds a remediation hint to errors caused by too small bounds.
fn hint(e: anyhow::Error) -> anyhow::Error {
    let msg = match e.downcast_ref::<AlgError>() {
        Some(AlgError::WindowTooNarrow(_)) => "widen --window",
        Some(AlgError::InfeasibleBound(_)) => "widen --window or raise --order, --nmax or --tmax",
        _ => return e,
    };
    anyhow::anyhow!("{e:#} (hint: {msg})")
}

/// Parses the ring, runs the command on a pool of the requested size and
/// builds the report.
pub fn execute(cli: &Cli) -> anyhow::Result<Report> {
    let cfg = cli.config();
    cfg.validate()?;
    let src = cli.ring_source()?;
    let ring = parse_ring(&src).context("parsing the ring description")?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        anyhow::ensure!(w > 0, "--workers must be positive");
        pool = pool.num_threads(w);
    }
    let pool = pool.build().context("starting the worker pool")?;
    let outcome = pool
        .install(|| commands::dispatch(cli.command, &ring, &cfg))
        .map_err(hint)?;
    Ok(Report {
        schema: report::SCHEMA,
        tool: "dopcalc",
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command.name(),
        ring: ring.to_string(),
        config: cfg,
        status: outcome.status,
        tables: outcome.tables,
        notes: outcome.notes,
    })
}

/// Runs a command line and returns the rendered report.
pub fn run_args<I, T>(args: I) -> anyhow::Result<(Report, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let report = execute(&cli)?;
    let text = report.render(cli.format);
    Ok((report, text))
}
