mod plot;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sharklab::construct::{
    double, phi_truncation, recipe_bound, witness, AlphaSeq, DoublingKind, DoublingSpec, NamedMap,
    PhiSpec, Strategy, WitnessOptions,
};
use sharklab::order::{shark_cmp, shark_tail, SharkClass};
use sharklab::pattern::{cover_digraph, is_stefan, OrbitPattern};
use sharklab::periodic::{period_set, realize_loop, verify_sharkovsky, IntervalCycle};
use sharklab::rational::{parse_rational, Interval};
use sharklab::{iterate, Error, MapFile, PieceBudget, PlMap, Rational};

const DEFAULT_BOUND: u64 = 12;

#[derive(Parser)]
#[command(
    name = "sharklab",
    version,
    about = "Exact periodic-orbit analysis of piecewise-linear interval maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Dot,
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two classes in the Sharkovsky order.
    OrderCmp { a: String, b: String },
    /// List the tail of a class up to a bound.
    OrderTail {
        class: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
    },
    /// Evaluate a map at one or more points.
    MapEval {
        #[arg(long)]
        map: PathBuf,
        #[arg(required = true)]
        x: Vec<String>,
    },
    /// Write the n-th iterate of a map.
    MapIterate {
        #[arg(long)]
        map: PathBuf,
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least periods up to the bound, with the smallest point of each.
    Periods {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Check that the period set is a Sharkovsky tail.
    Verify {
        #[arg(long)]
        map: PathBuf,
        /// Defaults to the `bound=` recorded in the map comment, else 12.
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Covering digraph of an orbit pattern.
    Digraph {
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether an orbit pattern is a Štefan cycle.
    Stefan {
        #[arg(long = "pattern", value_name = "PATTERN")]
        flag: Option<String>,
        pattern: Option<String>,
    },
    /// Realize a cycle of intervals as a periodic point, with a certificate.
    ///
    /// With `--map`, each positional is an interval `lo,hi`. With `--pattern`,
    /// the positionals are gap indices of the pattern's connect-the-dots map.
    Realize {
        #[arg(long, conflicts_with = "pattern", required_unless_present = "pattern")]
        map: Option<PathBuf>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(required = true, allow_hyphen_values = true)]
        cycle: Vec<String>,
    },
    /// Synthesize a map whose period set is the tail of a class.
    Witness {
        class: String,
        #[arg(long, default_value = "stefan-doubling")]
        strategy: String,
        #[arg(long, default_value = "G")]
        op: String,
        #[arg(long, default_value = "1/3")]
        a: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a doubling operator to a self-map of [0, 1].
    Double {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value = "G")]
        op: String,
        #[arg(long, default_value = "1/3")]
        a: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated infinite composition of G and H operators.
    Phi {
        /// `01` repeats forever, `1(0)` is eventually periodic, `[011]` is finite.
        #[arg(long, default_value = "01")]
        alpha: String,
        #[arg(long, default_value = "1/3")]
        a: String,
        #[arg(long, default_value = "1/3")]
        b: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Seed map; the zero map when omitted.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a map as CSV samples or an SVG polyline.
    Plot {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Resource(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_map(path: &Path) -> Result<(PlMap, Option<String>), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read map file {}: {e}", path.display())))?;
    let file = MapFile::parse(&text)?;
    let map = file.to_map()?;
    Ok((map, file.comment))
}

fn emit(text: String, out: &Option<PathBuf>) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn parse_class(field: &str, text: &str) -> Result<SharkClass, Failure> {
    text.parse::<SharkClass>()
        .map_err(|e| Failure::Input(format!("{field}: {e}")))
}

fn parse_pattern(text: &str) -> Result<OrbitPattern, Failure> {
    Ok(text.parse::<OrbitPattern>()?)
}

fn check_bound(bound: u64) -> Result<u64, Failure> {
    if bound == 0 {
        return Err(Failure::Input(
            "cannot parse bound: must be at least 1".into(),
        ));
    }
    Ok(bound)
}

fn periods_table(report: &sharklab::periodic::PeriodReport) -> String {
    let mut out = String::from("period  witness\n");
    for (n, w) in &report.entries {
        let _ = writeln!(out, "{n:>6}  {w}");
    }
    out
}

fn run(cli: Cli) -> Outcome {
    let budget = PieceBudget::from_env()?;
    match cli.command {
        Command::OrderCmp { a, b } => {
            let (ca, cb) = (parse_class("a", &a)?, parse_class("b", &b)?);
            let sign = match shark_cmp(ca, cb) {
                std::cmp::Ordering::Less => "≺",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => "≻",
            };
            Ok(format!("{ca} {sign} {cb}\n"))
        }
        Command::OrderTail { class, bound } => {
            let c = parse_class("class", &class)?;
            let tail = shark_tail(c, check_bound(bound)?);
            let items: Vec<String> = tail.iter().map(u64::to_string).collect();
            Ok(format!("{}\n", items.join(" ")))
        }
        Command::MapEval { map, x } => {
            let (f, _) = read_map(&map)?;
            let xs = x
                .iter()
                .enumerate()
                .map(|(i, t)| parse_rational(&format!("x[{i}]"), t))
                .collect::<Result<Vec<Rational>, Error>>()?;
            let mut out = String::new();
            for x in xs {
                let _ = writeln!(out, "{x} {}", f.eval(&x)?);
            }
            Ok(out)
        }
        Command::MapIterate { map, n, out } => {
            let (f, _) = read_map(&map)?;
            if n == 0 {
                return Err(Failure::Input("cannot parse n: must be at least 1".into()));
            }
            let fnn = iterate(&f, n, budget)?;
            emit(
                MapFile::from_map(&fnn, Some(format!("iterate n={n}"))).to_text(),
                &out,
            )
        }
        Command::Periods { map, bound, format } => {
            let bound = check_bound(bound)?;
            let (f, _) = read_map(&map)?;
            let report = period_set(&f, bound, budget)?;
            match format {
                Format::Json => Ok(format!("{}\n", report.to_json())),
                _ => Ok(periods_table(&report)),
            }
        }
        Command::Verify { map, bound, format } => {
            let (f, comment) = read_map(&map)?;
            let bound = match bound {
                Some(b) => b,
                None => comment
                    .as_deref()
                    .and_then(recipe_bound)
                    .unwrap_or(DEFAULT_BOUND),
            };
            let report = verify_sharkovsky(&f, check_bound(bound)?, budget)?;
            let text = match format {
                Format::Json => format!("{}\n", report.to_json()),
                _ => {
                    let mut t = periods_table(&report);
                    match report.tail_class {
                        Some(c) if report.ambiguous_at_bound => {
                            let _ = writeln!(t, "tail of {c} (also of 2^inf) up to {bound}: pass");
                        }
                        Some(c) => {
                            let _ = writeln!(t, "tail of {c} up to {bound}: pass");
                        }
                        None => {
                            let _ = writeln!(t, "not a Sharkovsky tail up to {bound}: FAIL");
                        }
                    }
                    t
                }
            };
            if report.passes() {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
        Command::Digraph {
            pattern,
            format,
            out,
        } => {
            let p = parse_pattern(&pattern)?;
            let g = cover_digraph(&p);
            let text = match format {
                Format::Json => {
                    let edges: Vec<_> = g.edges().map(|(i, j)| serde_json::json!([i, j])).collect();
                    format!(
                        "{}\n",
                        serde_json::json!({ "nodes": g.node_count(), "edges": edges })
                    )
                }
                Format::Dot => g.to_dot(),
                _ => {
                    return Err(Failure::Input(
                        "cannot parse format: digraph supports dot and json".into(),
                    ))
                }
            };
            emit(text, &out)
        }
        Command::Stefan { flag, pattern } => {
            let text = flag
                .or(pattern)
                .ok_or_else(|| Failure::Input("cannot parse pattern: missing".into()))?;
            let p = parse_pattern(&text)?;
            Ok(format!(
                "stefan: {}\n",
                if is_stefan(&p) { "yes" } else { "no" }
            ))
        }
        Command::Realize {
            map,
            pattern,
            cycle,
        } => {
            let (f, intervals) = match (map, pattern) {
                (Some(path), _) => {
                    let (f, _) = read_map(&path)?;
                    let js = cycle
                        .iter()
                        .enumerate()
                        .map(|(i, t)| Interval::parse(&format!("interval[{i}]"), t))
                        .collect::<Result<Vec<_>, Error>>()?;
                    (f, js)
                }
                (None, Some(text)) => {
                    let p = parse_pattern(&text)?;
                    let js = cycle
                        .iter()
                        .enumerate()
                        .map(|(i, t)| {
                            let raw = t.trim().trim_start_matches('J');
                            match raw.parse::<usize>() {
                                Ok(k) if (1..p.m()).contains(&k) => Ok(p.gap(k)),
                                _ => Err(Failure::Input(format!(
                                    "cannot parse walk[{i}]: {t:?} is not a gap index in 1..{}",
                                    p.m() - 1
                                ))),
                            }
                        })
                        .collect::<Result<Vec<_>, Failure>>()?;
                    (sharklab::pattern::connect_the_dots(&p), js)
                }
                (None, None) => unreachable!("clap requires one of --map, --pattern"),
            };
            let cert = realize_loop(&f, &IntervalCycle::new(intervals)?, budget)?;
            cert.validate(&f)?;
            let json = serde_json::to_string_pretty(&cert).expect("certificates serialize");
            Ok(format!("{json}\n"))
        }
        Command::Witness {
            class,
            strategy,
            op,
            a,
            depth,
            out,
        } => {
            let opts = WitnessOptions {
                strategy: strategy.parse::<Strategy>()?,
                kind: op.parse::<DoublingKind>()?,
                a: parse_rational("a", &a)?,
                depth,
                budget,
            };
            let w = witness(parse_class("class", &class)?, &opts)?;
            let mut recipe = w.recipe;
            if let Some((threshold, tail)) = &w.truncation {
                let _ = write!(recipe, " threshold={threshold} tail_bound={tail}");
            }
            emit(MapFile::from_map(&w.map, Some(recipe)).to_text(), &out)
        }
        Command::Double { map, op, a, out } => {
            let (f, _) = read_map(&map)?;
            let spec = DoublingSpec::new(op.parse()?, parse_rational("a", &a)?)?;
            let d = double(&f, &spec)?;
            let comment = format!("double op={} a={}", spec.kind(), spec.a());
            emit(MapFile::from_map(&d, Some(comment)).to_text(), &out)
        }
        Command::Phi {
            alpha,
            a,
            b,
            depth,
            map,
            out,
        } => {
            let alpha: AlphaSeq = alpha.parse()?;
            let spec = PhiSpec::constant(
                alpha.clone(),
                parse_rational("a", &a)?,
                parse_rational("b", &b)?,
                depth,
            )?;
            let seed = match map {
                Some(path) => read_map(&path)?.0,
                None => sharklab::construct::make_named(NamedMap::G),
            };
            let t = phi_truncation(&spec, &seed)?;
            let comment = format!(
                "phi alpha={alpha} a={a} b={b} depth={depth} threshold={} tail_bound={}",
                t.threshold, t.tail_bound
            );
            emit(MapFile::from_map(&t.map, Some(comment)).to_text(), &out)
        }
        Command::Plot {
            map,
            format,
            samples,
            out,
        } => {
            let (f, _) = read_map(&map)?;
            let text = match format {
                Format::Csv => plot::csv(&f, samples),
                Format::Svg => plot::svg(&f),
                _ => {
                    return Err(Failure::Input(
                        "cannot parse format: plot supports csv and svg".into(),
                    ))
                }
            };
            emit(text, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
