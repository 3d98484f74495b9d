//! Exhaustive checks of the theory on small instances.
//!
//! Every suite walks a finite grid of objects in a fixed order and stops at
//! the first failing instance, so reports are reproducible. A [`Mutation`]
//! corrupts one formula to show that a suite can actually fail.

mod adjunctions;
mod algebra;
mod equivalences;
mod formulas;
mod hom;
mod preservation;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dir::Dir;
use crate::error::{Error, Result};
use crate::poly::Poly;

pub use adjunctions::check_adjunctions;
pub use algebra::check_algebra;
pub use equivalences::check_equivalences;
pub use hom::check_hom_formulas;
pub use preservation::check_preservation;

pub const SUITES: [&str; 5] = [
    "hom",
    "adjunctions",
    "preservation",
    "equivalences",
    "algebra",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A failed instance: the inputs and both sides of the equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub law: String,
    pub inputs: Value,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub status: Status,
    pub instances: u64,
    pub counterexample: Option<Counterexample>,
    /// Wall-clock time; not serialized and ignored by `==` so reports stay
    /// reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for Report {
    fn eq(&self, other: &Self) -> bool {
        self.suite == other.suite
            && self.status == other.status
            && self.instances == other.instances
            && self.counterexample == other.counterexample
    }
}

impl Eq for Report {}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        write!(
            f,
            "{:<13} {status} ({} instances)",
            self.suite, self.instances
        )?;
        if let Some(c) = &self.counterexample {
            write!(
                f,
                "\n  law:    {}\n  inputs: {}\n  lhs:    {}\n  rhs:    {}",
                c.law, c.inputs, c.lhs, c.rhs
            )?;
        }
        Ok(())
    }
}

/// Bounds of the test grid: largest exponent or base, most terms, largest
/// test set, most legs in a wide diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub exp: usize,
    pub terms: usize,
    pub set: usize,
    pub legs: usize,
}

impl Grid {
    pub const DEFAULT: Grid = Grid {
        exp: 3,
        terms: 3,
        set: 3,
        legs: 3,
    };

    pub fn polys(&self) -> Vec<Poly> {
        multisets(self.exp, self.terms)
            .into_iter()
            .map(Poly::new)
            .collect()
    }

    pub fn dirs(&self) -> Vec<Dir> {
        multisets(self.exp, self.terms)
            .into_iter()
            .map(Dir::new)
            .collect()
    }

    /// The same grid with every bound capped at `cap`.
    pub fn capped(&self, cap: usize) -> Grid {
        Grid {
            exp: self.exp.min(cap),
            terms: self.terms.min(cap),
            set: self.set.min(cap),
            legs: self.legs.min(cap),
        }
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::DEFAULT
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "exp={},terms={},set={},legs={}",
            self.exp, self.terms, self.set, self.legs
        )
    }
}

/// Parses `exp=3,terms=2`; missing keys keep their defaults. Bounds above the
/// defaults are refused because the suites are sized for them.
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut grid = Grid::DEFAULT;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("grid entry {part:?} is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("grid value {value:?} is not a number")))?;
            let (slot, max) = match key.trim() {
                "exp" => (&mut grid.exp, Grid::DEFAULT.exp),
                "terms" => (&mut grid.terms, Grid::DEFAULT.terms),
                "set" => (&mut grid.set, Grid::DEFAULT.set),
                "legs" => (&mut grid.legs, Grid::DEFAULT.legs),
                other => return Err(Error::Invalid(format!("unknown grid key {other:?}"))),
            };
            if value > max {
                return Err(Error::Invalid(format!(
                    "grid bound {key}={value} exceeds {max}"
                )));
            }
            *slot = value;
        }
        Ok(grid)
    }
}

/// A deliberate corruption of one formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Hom counts add the factors instead of multiplying them.
    HomSumInsteadOfProduct,
    /// `⊗` adds exponents instead of multiplying them.
    TensorAddsExponents,
    /// `[A, Q]` forgets the `a^{q_j}` multiplicities.
    InternalHomDropsMultiplicity,
    /// Evaluation counts take `0^0 = 0`.
    ZeroToTheZeroIsZero,
    /// Cartesian means injective base maps.
    CartesianTestInjectiveOnly,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::HomSumInsteadOfProduct,
        Mutation::TensorAddsExponents,
        Mutation::InternalHomDropsMultiplicity,
        Mutation::ZeroToTheZeroIsZero,
        Mutation::CartesianTestInjectiveOnly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::HomSumInsteadOfProduct => "hom-sum-instead-of-product",
            Mutation::TensorAddsExponents => "tensor-adds-exponents",
            Mutation::InternalHomDropsMultiplicity => "internal-hom-drops-multiplicity",
            Mutation::ZeroToTheZeroIsZero => "zero-to-the-zero-is-zero",
            Mutation::CartesianTestInjectiveOnly => "cartesian-test-injective-only",
        }
    }

    /// Picks a mutation from a seed.
    pub fn from_seed(seed: u64) -> Mutation {
        Mutation::ALL[(seed % Mutation::ALL.len() as u64) as usize]
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown mutation {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub grid: Grid,
    pub mutation: Option<Mutation>,
    /// Drives the sampled parts of the suites.
    pub seed: u64,
}

impl Config {
    pub fn with_grid(grid: Grid) -> Self {
        Config {
            grid,
            ..Config::default()
        }
    }

    pub fn mutated(mut self, mutation: Mutation) -> Self {
        self.mutation = Some(mutation);
        self
    }
}

pub fn run_suite(name: &str, config: &Config) -> Result<Report> {
    match name {
        "hom" => Ok(check_hom_formulas(config)),
        "adjunctions" => Ok(check_adjunctions(config)),
        "preservation" => Ok(check_preservation(config)),
        "equivalences" => Ok(check_equivalences(config)),
        "algebra" => Ok(check_algebra(config)),
        other => Err(Error::Invalid(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

pub fn run_all(config: &Config) -> Vec<Report> {
    SUITES
        .iter()
        .map(|s| run_suite(s, config).expect("known suite"))
        .collect()
}

/// Signals that a suite found its counterexample.
pub(crate) struct Stop;

pub(crate) type Step = std::result::Result<(), Stop>;

/// Instance counter and first failure of a running suite.
pub(crate) struct Run {
    instances: u64,
    failure: Option<Counterexample>,
}

impl Run {
    fn new() -> Self {
        Run {
            instances: 0,
            failure: None,
        }
    }

    /// Records one instance of `law`; `inputs` is only built on failure.
    pub(crate) fn eq<T: PartialEq + fmt::Display>(
        &mut self,
        law: &str,
        lhs: T,
        rhs: T,
        inputs: impl FnOnce() -> Value,
    ) -> Step {
        self.instances += 1;
        if lhs == rhs {
            return Ok(());
        }
        self.failure = Some(Counterexample {
            law: law.to_string(),
            inputs: inputs(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
        Err(Stop)
    }

    pub(crate) fn holds(&mut self, law: &str, ok: bool, inputs: impl FnOnce() -> Value) -> Step {
        self.eq(law, ok, true, inputs)
    }
}

/// Runs a suite body and packages the result.
pub(crate) fn report(suite: &str, body: impl FnOnce(&mut Run) -> Step) -> Report {
    let start = Instant::now();
    let mut run = Run::new();
    let _ = body(&mut run);
    Report {
        suite: suite.to_string(),
        status: if run.failure.is_some() {
            Status::Fail
        } else {
            Status::Pass
        },
        instances: run.instances,
        counterexample: run.failure,
        elapsed: start.elapsed(),
    }
}

/// Descending multisets of values `<= max_value` with at most `max_len`
/// elements, shortest first.
pub fn multisets(max_value: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for m in &layer {
            let top = m.last().copied().unwrap_or(max_value);
            for v in (0..=top).rev() {
                let mut grown = m.clone();
                grown.push(v);
                next.push(grown);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Non-decreasing sequences `i_1 <= ... <= i_k` over `0..n`, for
/// `1 <= k <= max_len`: multisets of indices.
pub(crate) fn index_multisets(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().copied().unwrap_or(0);
            for v in start..n {
                let mut grown = m.clone();
                grown.push(v);
                next.push(grown);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
