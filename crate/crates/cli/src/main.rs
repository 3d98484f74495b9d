//! `polydir`: a calculator for polynomial and Dirichlet functors.

use std::fmt::Display;
use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use num_bigint::BigUint;
use polydir::bundle::{
    bundle_of_dir, bundle_of_poly, dir_of_bundle, dirichlet_transform, factorize,
    inverse_transform, poly_of_bundle,
};
use polydir::finset::wide_pullback;
use polydir::laws::{self, Config, Grid, Mutation};
use polydir::topos::{self, SubobjectWitness};
use polydir::{
    dir, parse_dir, parse_poly, poly, print_dir, print_poly, Budget, BunMorphism, Bundle, Dir,
    FinFunction, Kind, Poly, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "polydir",
    version,
    about = "Polynomial and Dirichlet functors over finite sets"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Read expressions as polynomials (sums of y^k).
    #[arg(long, global = true, conflicts_with = "dir")]
    poly: bool,
    /// Read expressions as Dirichlet polynomials (sums of k^y).
    #[arg(long, global = true)]
    dir: bool,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest enumeration allowed.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Law-suite grid, e.g. `exp=2,terms=3,set=3,legs=2`.
    #[arg(long, global = true, value_name = "SPEC", value_parser = Grid::from_str)]
    grid: Option<Grid>,
    /// Seed for the sampled parts of the law suites.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Corrupt one formula in the law suites, by name or by seed.
    #[arg(long, global = true, value_name = "NAME|N", value_parser = parse_mutation)]
    mutate: Option<Mutation>,
    /// Report wall-clock time of law suites.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate at a set of size X.
    Eval { expr: String, x: usize },
    /// Count morphisms.
    Hom { source: String, target: String },
    /// List morphisms.
    Enum { source: String, target: String },
    /// Sum.
    Add { left: String, right: String },
    /// Product.
    Mul { left: String, right: String },
    /// Substitution `P ∘ Q` of polynomials.
    Compose { outer: String, inner: String },
    /// Tensor product of polynomials.
    Tensor { left: String, right: String },
    /// Internal hom `[A, Q]` for the tensor product.
    Ihom { a: String, q: String },
    /// Cartesian exponential `Q^A`.
    Power { q: String, a: String },
    /// Global sections, the number of maps `P -> y`.
    Gamma { expr: String },
    /// Swap `Σ y^k` and `Σ k^y`.
    Transform { expr: String },
    /// The canonical bundle of an expression.
    ToBundle { expr: String },
    /// The polynomial (or, with --dir, Dirichlet polynomial) of a bundle given as JSON.
    FromBundle { bundle: String },
    /// Wide pullback of functions given as JSON with a common codomain.
    #[command(arg_required_else_help = true)]
    Pullback { legs: Vec<String> },
    /// Vertical/cartesian factorization of a bundle morphism given as JSON.
    Factorize { morphism: String },
    /// The subobject classifier of bundles.
    Omega,
    /// Characteristic map of the subobject of a bundle given by index sets.
    Classify {
        bundle: String,
        /// Elements of the total set, 0-indexed.
        #[arg(long, value_delimiter = ',')]
        total: Vec<usize>,
        /// Elements of the base set, 0-indexed.
        #[arg(long, value_delimiter = ',')]
        base: Vec<usize>,
    },
    /// Exponential `E^F` of bundles given as JSON.
    Exp { base: String, exponent: String },
    /// Run a law suite, or `all`.
    Check { suite: String },
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    match s.parse::<u64>() {
        Ok(seed) => Ok(Mutation::from_seed(seed)),
        Err(_) => s.parse().map_err(|e: polydir::Error| e.to_string()),
    }
}

enum Parsed {
    Poly(Poly),
    Dir(Dir),
}

type Fallible<T> = Result<T, String>;

struct App {
    opts: Opts,
}

impl App {
    fn budget(&self) -> Budget {
        Budget(self.opts.budget)
    }

    /// The flag, or a guess from the first expression.
    fn kind(&self, first: &str) -> Kind {
        if self.opts.dir || (!self.opts.poly && first.contains("^y")) {
            Kind::Dir
        } else {
            Kind::Poly
        }
    }

    fn read(&self, kind: Kind, text: &str) -> Fallible<Parsed> {
        match kind {
            Kind::Poly => parse_poly(text).map(Parsed::Poly),
            Kind::Dir => parse_dir(text).map(Parsed::Dir),
        }
        .map_err(|e| format!("{text:?}: {e}"))
    }

    fn poly(&self, text: &str) -> Fallible<Poly> {
        if self.opts.dir {
            return Err("this command takes polynomials".into());
        }
        parse_poly(text).map_err(|e| format!("{text:?}: {e}"))
    }

    fn emit<T: Serialize>(&self, text: impl Display, value: &T) -> Fallible<()> {
        if self.opts.json {
            say(serde_json::to_string(value).map_err(|e| e.to_string())?);
        } else {
            say(text);
        }
        Ok(())
    }

    fn emit_expr(&self, v: &Parsed) -> Fallible<()> {
        match v {
            Parsed::Poly(p) => self.emit(print_poly(p), p),
            Parsed::Dir(d) => self.emit(print_dir(d), d),
        }
    }

    fn emit_count(&self, n: &BigUint) -> Fallible<()> {
        let value = match u64::try_from(n) {
            Ok(small) => json!(small),
            Err(_) => json!(n.to_string()),
        };
        self.emit(n, &json!({ "count": value }))
    }

    fn pair(&self, left: &str, right: &str) -> Fallible<(Parsed, Parsed)> {
        let kind = self.kind(left);
        Ok((self.read(kind, left)?, self.read(kind, right)?))
    }

    fn run(&self, command: &Command) -> Fallible<ExitCode> {
        match command {
            Command::Eval { expr, x } => {
                let n = match self.read(self.kind(expr), expr)? {
                    Parsed::Poly(p) => p.eval_count(*x),
                    Parsed::Dir(d) => d.eval_count(*x),
                };
                self.emit_count(&n)?;
            }
            Command::Hom { source, target } => {
                let n = match self.pair(source, target)? {
                    (Parsed::Poly(p), Parsed::Poly(q)) => poly::hom_count(&p, &q),
                    (Parsed::Dir(d), Parsed::Dir(e)) => dir::hom_count(&d, &e),
                    _ => unreachable!("one kind per pair"),
                };
                self.emit_count(&n)?;
            }
            Command::Enum { source, target } => match self.pair(source, target)? {
                (Parsed::Poly(p), Parsed::Poly(q)) => {
                    let homs =
                        poly::hom_enumerate(&p, &q, self.budget()).map_err(|e| e.to_string())?;
                    self.emit(lines(&homs), &homs)?;
                }
                (Parsed::Dir(d), Parsed::Dir(e)) => {
                    let homs =
                        dir::hom_enumerate(&d, &e, self.budget()).map_err(|e| e.to_string())?;
                    self.emit(lines(&homs), &homs)?;
                }
                _ => unreachable!("one kind per pair"),
            },
            Command::Add { left, right } => {
                let sum = match self.pair(left, right)? {
                    (Parsed::Poly(p), Parsed::Poly(q)) => Parsed::Poly(p.add(&q)),
                    (Parsed::Dir(d), Parsed::Dir(e)) => Parsed::Dir(d.add(&e)),
                    _ => unreachable!("one kind per pair"),
                };
                self.emit_expr(&sum)?;
            }
            Command::Mul { left, right } => {
                let product = match self.pair(left, right)? {
                    (Parsed::Poly(p), Parsed::Poly(q)) => Parsed::Poly(p.multiply(&q)),
                    (Parsed::Dir(d), Parsed::Dir(e)) => Parsed::Dir(d.multiply(&e)),
                    _ => unreachable!("one kind per pair"),
                };
                self.emit_expr(&product)?;
            }
            Command::Compose { outer, inner } => {
                let p = self.poly(outer)?.substitute(&self.poly(inner)?);
                self.emit_expr(&Parsed::Poly(p))?;
            }
            Command::Tensor { left, right } => {
                let p = self.poly(left)?.tensor(&self.poly(right)?);
                self.emit_expr(&Parsed::Poly(p))?;
            }
            Command::Ihom { a, q } => {
                let p = Poly::internal_hom(&self.poly(a)?, &self.poly(q)?, self.budget())
                    .map_err(|e| e.to_string())?;
                self.emit_expr(&Parsed::Poly(p))?;
            }
            Command::Power { q, a } => {
                let p = Poly::power(&self.poly(q)?, &self.poly(a)?, self.budget())
                    .map_err(|e| e.to_string())?;
                self.emit_expr(&Parsed::Poly(p))?;
            }
            Command::Gamma { expr } => self.emit_count(&self.poly(expr)?.global_sections())?,
            Command::Transform { expr } => {
                let swapped = match self.read(self.kind(expr), expr)? {
                    Parsed::Poly(p) => Parsed::Dir(dirichlet_transform(&p)),
                    Parsed::Dir(d) => Parsed::Poly(inverse_transform(&d)),
                };
                self.emit_expr(&swapped)?;
            }
            Command::ToBundle { expr } => {
                let pi = match self.read(self.kind(expr), expr)? {
                    Parsed::Poly(p) => bundle_of_poly(&p),
                    Parsed::Dir(d) => bundle_of_dir(&d),
                };
                self.emit(format!("{pi}\nproj {}", pi.proj()), &pi)?;
            }
            Command::FromBundle { bundle } => {
                let pi: Bundle = from_json(bundle)?;
                let v = if self.opts.dir {
                    Parsed::Dir(dir_of_bundle(&pi))
                } else {
                    Parsed::Poly(poly_of_bundle(&pi))
                };
                self.emit_expr(&v)?;
            }
            Command::Pullback { legs } => {
                let legs: Vec<FinFunction> =
                    legs.iter().map(|s| from_json(s)).collect::<Fallible<_>>()?;
                let limit = wide_pullback(&legs).map_err(|e| e.to_string())?;
                let tuples: Vec<String> = limit
                    .tuples
                    .iter()
                    .map(|t| {
                        let shown: Vec<String> = t.iter().map(|x| (x + 1).to_string()).collect();
                        format!("({})", shown.join(", "))
                    })
                    .collect();
                let text = format!("{} elements: {}", limit.set.size(), tuples.join(" "));
                self.emit(
                    text,
                    &json!({ "set": limit.set, "projections": limit.projections }),
                )?;
            }
            Command::Factorize { morphism } => {
                let m: BunMorphism = from_json(morphism)?;
                let f = factorize(&m);
                let text = format!(
                    "vertical  {} -> {}: {}\ncartesian {} -> {}: {}",
                    f.vertical.source(),
                    f.vertical.target(),
                    f.vertical,
                    f.cartesian.source(),
                    f.cartesian.target(),
                    f.cartesian
                );
                self.emit(
                    text,
                    &json!({ "vertical": f.vertical, "cartesian": f.cartesian }),
                )?;
            }
            Command::Omega => {
                let o = topos::omega();
                let text = format!(
                    "{}\nproj {}\ntrue {}\ntotal: 1 now, 2 later, 3 never; base: 1 true, 2 false",
                    o.bundle,
                    o.bundle.proj(),
                    o.truth
                );
                self.emit(text, &o)?;
            }
            Command::Classify {
                bundle,
                total,
                base,
            } => {
                let pi: Bundle = from_json(bundle)?;
                let w = SubobjectWitness::from_sets(&pi, total, base).map_err(|e| e.to_string())?;
                let chi = topos::classify(&w);
                let names = ["now", "later", "never"];
                let values: Vec<&str> = chi.total_map().map().iter().map(|&v| names[v]).collect();
                self.emit(format!("{chi}\n{}", values.join(" ")), &chi)?;
            }
            Command::Exp { base, exponent } => {
                let (e, f): (Bundle, Bundle) = (from_json(base)?, from_json(exponent)?);
                let x = topos::exponential(&e, &f, self.budget()).map_err(|e| e.to_string())?;
                let text = format!("{}\nproj {}", x.object(), x.object().proj());
                self.emit(text, &json!({ "object": x.object(), "eval": x.eval() }))?;
            }
            Command::Check { suite } => return self.check(suite),
        }
        Ok(ExitCode::SUCCESS)
    }

    fn check(&self, suite: &str) -> Fallible<ExitCode> {
        let config = Config {
            grid: self.opts.grid.unwrap_or_default(),
            mutation: self.opts.mutate,
            seed: self.opts.seed,
        };
        let reports = if suite == "all" {
            laws::run_all(&config)
        } else {
            vec![laws::run_suite(suite, &config).map_err(|e| e.to_string())?]
        };
        if self.opts.json {
            let values: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("reports serialize");
                    if self.opts.timing {
                        v["elapsed_ms"] = json!(r.elapsed.as_secs_f64() * 1e3);
                    }
                    v
                })
                .collect();
            let out = if suite == "all" {
                json!(values)
            } else {
                values[0].clone()
            };
            say(out);
        } else {
            for r in &reports {
                if self.opts.timing {
                    say(format!("{r} [{:.3}s]", r.elapsed.as_secs_f64()));
                } else {
                    say(r);
                }
            }
        }
        Ok(if reports.iter().all(|r| r.passed()) {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        })
    }
}

/// Writes a line to stdout; a closed pipe is not an error.
fn say(line: impl Display) {
    let _ = writeln!(io::stdout().lock(), "{line}");
}

fn lines<T: Display>(items: &[T]) -> String {
    let shown: Vec<String> = items.iter().map(T::to_string).collect();
    if shown.is_empty() {
        "(none)".into()
    } else {
        shown.join("\n")
    }
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Fallible<T> {
    serde_json::from_str(text).map_err(|e| format!("{text:?}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let app = App { opts: cli.opts };
    match app.run(&cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
