use std::fmt;
use std::str::FromStr;

use anyhow::{bail, ensure};
use dopcalc::exactalg::is_prime;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Tsv,
    Json,
}

/// The module `M` for `svdb`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModuleChoice {
    /// `M = R`.
    Ring,
    /// The canonical module, in its internal grading.
    Omega,
}

/// A degree window `lo..=hi`, written `LO:HI`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("expected LO:HI, found '{s}'"))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<i32>()
                .map_err(|e| format!("bad window bound '{x}': {e}"))
        };
        Ok(Window {
            lo: parse(lo)?,
            hi: parse(hi)?,
        })
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl Serialize for Window {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Window {
    pub fn pair(self) -> (i32, i32) {
        (self.lo, self.hi)
    }

    pub fn width(self) -> usize {
        (self.hi - self.lo).max(0) as usize
    }
}

/// Every bound of a run. The worker count is deliberately absent: output
/// must not depend on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub order: usize,
    pub window: Window,
    pub indices: Vec<usize>,
    pub t_max: usize,
    pub n_max: usize,
    pub primes: Vec<u64>,
    pub format: Format,
    pub degree_cap: i32,
    pub depth: i32,
    pub i_max: usize,
    pub exponent: u32,
    pub module: ModuleChoice,
}

impl RunConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        let w = self.window;
        ensure!(w.lo <= w.hi, "window {w} is empty");
        ensure!(
            self.t_max > 0 && self.n_max > 0,
            "--tmax and --nmax must be positive"
        );
        ensure!(self.depth >= 0, "--depth must be nonnegative");
        ensure!(!self.indices.is_empty(), "--i needs at least one index");
        for &p in &self.primes {
            if !is_prime(p) || p >= 1 << 31 {
                bail!("{p} is not a prime below 2^31");
            }
        }
        let largest = [
            w.lo.unsigned_abs() as i64,
            w.hi.unsigned_abs() as i64,
            self.order as i64,
            self.t_max as i64,
            self.n_max as i64,
            self.depth as i64,
        ]
        .into_iter()
        .max()
        .unwrap_or(0);
        ensure!(
            self.degree_cap as i64 >= largest,
            "--degree-cap {} is below another bound ({largest}); raise it to at least {largest}",
            self.degree_cap
        );
        Ok(())
    }
}
