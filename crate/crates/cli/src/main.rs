use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use enhanced_orbits::canonical::{representative_from_invariants, ClosedSeed, NilpotentSeed};
use enhanced_orbits::classify::{descend, is_closed, mvw_stabilizer_witness};
use enhanced_orbits::invariants::{quotient_map, InvariantVector};
use enhanced_orbits::linalg::Scalar;
use enhanced_orbits::oracle::{classification_crosscheck, invariance_suite, SuiteReport};
use enhanced_orbits::rep::{sample, sample_twisted, EnhancedPoint, Group, Kind, PointData};
use enhanced_orbits::Error;

const EXIT_NOT_CLOSED: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_SCHEMA: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "enhanced-orbits",
    version,
    about = "Invariants, closed orbits and descendants of g x E"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Evaluate the generating invariants at a point.
    Invariants {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether the orbit of a point is closed.
    Classify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
    /// Build the closed nilpotent point with the given invariants.
    Represent {
        #[command(flatten)]
        group: GroupFlags,
        /// Invariant vector as inline JSON or a file path.
        #[arg(long)]
        invariants: String,
        #[command(flatten)]
        out: Output,
    },
    /// Stabilizer and normal-space decomposition of a closed seed.
    Descend {
        /// Closed or nilpotent seed as inline JSON or a file path.
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: Output,
    },
    /// A twisted stabilizer element of a GL closed seed.
    Witness {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        out: Output,
    },
    /// A seeded group element, twisted element and point.
    Sample {
        #[command(flatten)]
        group: GroupFlags,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Run the invariance and classification cross-checks.
    Check {
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
        /// Comma-separated seed coefficients.
        #[arg(long, default_value = "-1,1,2", allow_hyphen_values = true)]
        grid: String,
        /// Samples per group in the invariance suite.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct GroupFlags {
    #[arg(long, value_parser = parse_kind)]
    group: Option<Kind>,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args)]
struct Target {
    #[command(flatten)]
    group: GroupFlags,
    /// Point as inline JSON or a file path; `-` reads stdin.
    #[arg(long)]
    point: String,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    match Kind::parse(s) {
        Ok(Kind::Gram) => Err("gram groups are given inside the point JSON".into()),
        Ok(k) => Ok(k),
        Err(e) => Err(e.to_string()),
    }
}

/// Outcome of one verb: the rendered payload and the exit status.
struct Reply {
    json: Value,
    text: String,
    status: u8,
}

impl Reply {
    fn ok(json: Value, text: String) -> Reply {
        Reply {
            json,
            text,
            status: 0,
        }
    }
}

struct Failure {
    status: u8,
    code: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match &e {
            e if e.is_unsupported() => EXIT_UNSUPPORTED,
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_SCHEMA,
        };
        Failure {
            status,
            code: e.code(),
            message: e.to_string(),
        }
    }
}

fn schema(message: impl Into<String>) -> Failure {
    Failure {
        status: EXIT_SCHEMA,
        code: "schema",
        message: message.into(),
    }
}

impl GroupFlags {
    fn resolve(&self) -> Result<Option<Group>, Failure> {
        match (self.group, self.rank) {
            (Some(k), Some(n)) => Ok(Some(Group::standard(k, n))),
            (None, None) => Ok(None),
            _ => Err(schema("--group and --rank go together")),
        }
    }
}

/// Reads inline JSON, `-` for stdin, or a file path.
fn load(arg: &str) -> Result<Value, Failure> {
    let text = match arg.trim_start().chars().next() {
        Some('{') | Some('[') => arg.to_string(),
        _ if arg == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| schema(format!("stdin: {e}")))?;
            s
        }
        _ => std::fs::read_to_string(Path::new(arg)).map_err(|e| schema(format!("{arg}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| schema(format!("invalid JSON: {e}")))
}

fn decode<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| schema(format!("{what}: {e}")))
}

fn load_point(target: &Target) -> Result<EnhancedPoint, Failure> {
    let data: PointData = decode(load(&target.point)?, "point")?;
    Ok(data.into_point(target.group.resolve()?.as_ref())?)
}

fn load_seed(arg: &str) -> Result<ClosedSeed, Failure> {
    let v = load(arg)?;
    if v.get("k").is_some() {
        return Ok(ClosedSeed::nilpotent(decode::<NilpotentSeed>(v, "seed")?));
    }
    decode(v, "closed seed")
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn run(verb: Verb) -> Result<(Reply, Format), Failure> {
    match verb {
        Verb::Invariants { target, out } => {
            let iv = quotient_map(&load_point(&target)?);
            Ok((Reply::ok(to_json(&iv), iv.to_string()), out.format))
        }
        Verb::Classify { target, out } => {
            let r = is_closed(&load_point(&target)?)?;
            let mut text = format!(
                "{}\norbit dimension {} (closed orbit in the fiber: {})\n",
                if r.is_closed { "closed" } else { "not closed" },
                r.orbit_dim,
                r.minimal_orbit_dim
            );
            if let Some(k) = r.zero_jet_order {
                writeln!(text, "zero part jet order {k}").unwrap();
            }
            for (c, k) in r.eigenvalues.iter().zip(&r.block_jet_orders) {
                writeln!(text, "eigenvalue {c} jet order {k}").unwrap();
            }
            let factors: Vec<String> = r.stabilizer.iter().map(ToString::to_string).collect();
            write!(
                text,
                "stabilizer {} of dimension {}",
                factors.join(" x "),
                r.stabilizer_dim
            )
            .unwrap();
            let status = if r.is_closed { 0 } else { EXIT_NOT_CLOSED };
            Ok((
                Reply {
                    json: to_json(&r),
                    text,
                    status,
                },
                out.format,
            ))
        }
        Verb::Represent {
            group,
            invariants,
            out,
        } => {
            let mut v = load(&invariants)?;
            let flags = group.resolve()?;
            if let (Some(g), Value::Object(map)) = (&flags, &mut v) {
                map.entry("kind").or_insert_with(|| json!(g.kind()));
                map.entry("rank").or_insert_with(|| json!(g.rank()));
            }
            let iv: InvariantVector = decode(v, "invariant vector")?;
            let g = flags.unwrap_or_else(|| Group::standard(iv.kind, iv.rank));
            let p = representative_from_invariants(&g, &iv)?;
            Ok((Reply::ok(to_json(&p), p.to_string()), out.format))
        }
        Verb::Descend { input, out } => {
            let seed = load_seed(&input)?;
            let r = descend(&seed)?;
            let factors: Vec<String> = r.factors.iter().map(ToString::to_string).collect();
            let text = format!(
                "H = {}\nnormal space: enhanced module ({}) + triv^{k} + chi^{}\ndimension {} = {} + 2*{k} + {}",
                factors.join(" x "),
                r.enhanced_dim,
                r.mult_k + r.gamma,
                r.normal_dim,
                r.enhanced_dim,
                r.gamma,
                k = r.mult_k,
            );
            Ok((Reply::ok(to_json(&r), text), out.format))
        }
        Verb::Witness { input, out } => {
            let e = mvw_stabilizer_witness(&load_seed(&input)?)?;
            let text = format!("delta {}\n{}", e.delta.value(), e.g);
            Ok((Reply::ok(to_json(&e), text), out.format))
        }
        Verb::Sample { group, seed, out } => {
            let g = group
                .resolve()?
                .ok_or_else(|| schema("sample needs --group and --rank"))?;
            let (e, p) = sample(&g, seed);
            let tw = sample_twisted(&g, seed)?;
            let json = json!({"element": e, "twisted": tw, "point": p});
            let text = format!("element\n{}twisted\n{}point\n{p}", e.g, tw.g);
            Ok((Reply::ok(json, text), out.format))
        }
        Verb::Check {
            max_rank,
            grid,
            trials,
            seed,
            out,
        } => {
            let grid = grid
                .split(',')
                .map(|s| s.trim().parse::<Scalar>())
                .collect::<Result<Vec<_>, _>>()?;
            let mut reports: Vec<SuiteReport> = Vec::new();
            for kind in Kind::STANDARD {
                for n in 1..=max_rank {
                    reports.push(invariance_suite(&Group::standard(kind, n), trials, seed));
                }
            }
            reports.push(classification_crosscheck(max_rank, &grid));
            let passed = reports.iter().all(SuiteReport::passed);
            let text = reports
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({"passed": passed, "suites": reports});
            Ok((
                Reply {
                    json,
                    text,
                    status: if passed { 0 } else { 1 },
                },
                out.format,
            ))
        }
    }
}

fn requested_format() -> Format {
    let args: Vec<String> = std::env::args().collect();
    let text = args
        .windows(2)
        .any(|w| w[0] == "--format" && w[1] == "text")
        || args.iter().any(|a| a == "--format=text");
    if text {
        Format::Text
    } else {
        Format::Json
    }
}

fn report_failure(f: &Failure, format: Format) -> ExitCode {
    match format {
        Format::Json => println!(
            "{}",
            json!({"error": {"code": f.code, "message": f.message}})
        ),
        Format::Text => eprintln!("error [{}]: {}", f.code, f.message),
    }
    ExitCode::from(f.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_SCHEMA);
        }
    };
    match run(cli.verb) {
        Ok((reply, format)) => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&reply.json).expect("JSON values print")
                ),
                Format::Text => println!("{}", reply.text.trim_end()),
            }
            ExitCode::from(reply.status)
        }
        Err(f) => report_failure(&f, requested_format()),
    }
}
