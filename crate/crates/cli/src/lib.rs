//! Command implementations for the `modvis` binary.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use modvis_core::counting::{
    count_reports, delta_star_series, euclid_visible_count, mean_delta_diagnostic, Census,
    CountReport, Grid,
};
use modvis_core::enumeration::trace_for_exp_radius;
use modvis_core::orchard::{
    blocking_check, default_far_points, eclipse_pairs, fibonacci_pair, min_eclipse_epsilon,
    PairEclipse, Radius,
};
use modvis_core::visibility::{classify, is_even_place, ray_decompose};
use modvis_core::{enumerate, parse_point, EnumerationConfig, Error, OrbitPoint, Visibility};
use num_rational::Ratio;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "modvis",
    version,
    about = "Visible points of the orbit of i under SL2(Z)"
)]
pub struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

/// Disk size: `e^R` (rounded to the trace bound `round(x + 1/x)`) or an exact trace bound.
#[derive(Debug, Clone, clap::Args)]
#[group(required = true, multiple = false)]
pub struct Disk {
    /// e^R.
    #[arg(long)]
    pub x: Option<f64>,
    /// Largest trace A + D.
    #[arg(long)]
    pub exact_trace: Option<i128>,
}

impl Disk {
    fn max_trace(&self) -> modvis_core::Result<i128> {
        match (self.x, self.exact_trace) {
            (_, Some(n)) => Ok(n),
            (Some(x), None) => trace_for_exp_radius(x),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    Linear,
    Geometric,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List orbit points with A + D <= N, sorted by trace.
    Enumerate {
        #[command(flatten)]
        disk: Disk,
        /// Add a visibility column.
        #[arg(long)]
        classify: bool,
        /// Leave out the base point i.
        #[arg(long)]
        no_origin: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Quadrant, visibility, ray position and parity of points.
    Classify {
        /// Points as (B+i)/D or B/D.
        #[arg(required = true, allow_hyphen_values = true)]
        points: Vec<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Whether a point is visible from i, with the blocking point if not.
    Visible {
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Visible and hidden counts in disks.
    Count {
        /// Comma-separated e^R values.
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "exact_trace",
            required_unless_present = "exact_trace"
        )]
        x: Vec<f64>,
        /// Comma-separated trace bounds.
        #[arg(long, value_delimiter = ',')]
        exact_trace: Vec<i128>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Normalized error Delta* sampled over e^R.
    Delta {
        #[arg(long)]
        x_min: f64,
        #[arg(long)]
        x_max: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, value_enum, default_value = "linear")]
        grid: GridArg,
        /// Also print the mean of Delta* over [1, R] to stderr.
        #[arg(long)]
        mean: bool,
    },
    /// Smallest eclipsing radius within a disk.
    OrchardMin {
        #[command(flatten)]
        disk: Disk,
        /// Emit the closest pairs as CSV instead of the minimum as JSON.
        #[arg(long)]
        pairs: Option<usize>,
    },
    /// Fibonacci pair with trace product -2.
    OrchardFib {
        #[arg(long)]
        n: u32,
    },
    /// Whether thickened points of a disk block every farther point.
    OrchardBlock {
        /// Largest trace of the blocking disk.
        #[arg(long, default_value_t = 3)]
        exact_trace: i128,
        /// Radius as a float.
        #[arg(long, conflicts_with = "sinh2")]
        eps: Option<f64>,
        /// Exact sinh^2 of the radius as p/q; default 1, i.e. eps = log(1 + sqrt 2).
        #[arg(long)]
        sinh2: Option<String>,
    },
    /// Primitive integer vectors in the Euclidean disk of a given radius.
    Euclid {
        #[arg(long)]
        radius: f64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Compute(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::NotOrbitPoint { .. }
            | Error::InvalidArgument(_)
            | Error::TraceGuard { .. } => CliError::Usage(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs a parsed command, writing to `--output` or `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let text = render(&cli.command)?;
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn ratio_json(r: Ratio<i128>) -> Value {
    json!({ "numer": r.numer().to_string(), "denom": r.denom().to_string() })
}

fn point_json(z: &OrbitPoint) -> Value {
    json!({ "point": z.to_string(), "B": z.b(), "D": z.d(), "A": z.a(), "trace": z.trace() })
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Produces the full output of a command.
pub fn render(command: &Command) -> CliResult<String> {
    match command {
        Command::Enumerate {
            disk,
            classify,
            no_origin,
            format,
        } => {
            let cfg = EnumerationConfig::new(disk.max_trace()?)?.include_origin(!no_origin);
            let points = enumerate(&cfg)?;
            let flags = if *classify {
                let census = Census::new(cfg.max_trace())?;
                let all = census.enumeration().points();
                let mut flags = Vec::with_capacity(points.len());
                for (k, z) in all.iter().enumerate() {
                    if points.contains(z) {
                        flags.push(Some(census.is_visible_at(k)));
                    }
                }
                flags
            } else {
                vec![None; points.len()]
            };
            match format {
                Format::Json => Ok(to_json(&Value::Array(
                    points
                        .iter()
                        .zip(&flags)
                        .map(|(z, v)| {
                            let mut o = point_json(z);
                            if let Some(v) = v {
                                o["visible"] = json!(v);
                            }
                            o
                        })
                        .collect(),
                ))),
                _ => {
                    let mut s = String::from(if *classify {
                        "B,D,A,trace,visible\n"
                    } else {
                        "B,D,A,trace\n"
                    });
                    for (z, v) in points.iter().zip(&flags) {
                        write!(s, "{},{},{},{}", z.b(), z.d(), z.a(), z.trace()).unwrap();
                        if let Some(v) = v {
                            write!(s, ",{v}").unwrap();
                        }
                        s.push('\n');
                    }
                    Ok(s)
                }
            }
        }
        Command::Classify { points, format } => {
            let rows = points
                .iter()
                .map(|p| classify_row(p))
                .collect::<CliResult<Vec<Value>>>()?;
            match format {
                Format::Json => Ok(to_json(&Value::Array(rows))),
                _ => {
                    let mut s = String::from(
                        "B,D,A,trace,quadrant,visible,witness_b,witness_d,ray_index,even_place\n",
                    );
                    for r in &rows {
                        let field = |k: &str| match &r[k] {
                            Value::Null => String::new(),
                            Value::String(x) => x.clone(),
                            v => v.to_string(),
                        };
                        let cols: Vec<String> = [
                            "B",
                            "D",
                            "A",
                            "trace",
                            "quadrant",
                            "visible",
                            "witness_b",
                            "witness_d",
                            "ray_index",
                            "even_place",
                        ]
                        .iter()
                        .map(|k| field(k))
                        .collect();
                        s.push_str(&cols.join(","));
                        s.push('\n');
                    }
                    Ok(s)
                }
            }
        }
        Command::Visible { point } => {
            let z = parse_point(point)?;
            Ok(match classify(&z)? {
                Visibility::Visible => "visible\n".to_string(),
                Visibility::Hidden(w) => format!(
                    "invisible witness (a,b,d) = ({},{},{}) point {}\n",
                    w.a,
                    w.b,
                    w.d,
                    w.point()
                ),
            })
        }
        Command::Count {
            x,
            exact_trace,
            format,
        } => {
            let reports = if exact_trace.is_empty() {
                if x.is_empty() {
                    return Err(CliError::Usage("need at least one x".into()));
                }
                count_reports(x)?
            } else {
                exact_reports(exact_trace)?
            };
            Ok(match format {
                Format::Table => tables_text(&reports),
                Format::Csv => {
                    let mut s = String::from("x,H,visible,invisible,error,approx,delta_star\n");
                    for r in &reports {
                        writeln!(
                            s,
                            "{},{},{},{},{},{},{}",
                            r.x, r.total, r.visible, r.invisible, r.error, r.approx_invisible, r.delta_star
                        )
                        .unwrap();
                    }
                    s
                }
                Format::Json => to_json(&Value::Array(
                    reports
                        .iter()
                        .map(|r| {
                            json!({
                                "x": r.x, "H": r.total, "visible": r.visible, "invisible": r.invisible,
                                "error": r.error, "approx": r.approx_invisible, "delta_star": r.delta_star,
                            })
                        })
                        .collect(),
                )),
            })
        }
        Command::Delta {
            x_min,
            x_max,
            samples,
            grid,
            mean,
        } => {
            let grid = match grid {
                GridArg::Linear => Grid::Linear,
                GridArg::Geometric => Grid::Geometric,
            };
            let mut s = String::from("x,delta_star\n");
            for (x, d) in delta_star_series(*x_min, *x_max, *samples, grid)? {
                writeln!(s, "{x},{d}").unwrap();
            }
            if *mean {
                eprintln!("mean_delta_star,{}", mean_delta_diagnostic(*x_max)?);
            }
            Ok(s)
        }
        Command::OrchardMin { disk, pairs } => {
            let n = disk.max_trace()?;
            if let Some(k) = pairs {
                let mut s = String::from("z_B,z_D,w_B,w_D,T,sinh2_eps_min\n");
                for p in eclipse_pairs(n, Some(*k))? {
                    writeln!(
                        s,
                        "{},{},{},{},{},{}",
                        p.z.b(),
                        p.z.d(),
                        p.w.b(),
                        p.w.d(),
                        p.trace_product,
                        p.sinh2
                    )
                    .unwrap();
                }
                return Ok(s);
            }
            let best = min_eclipse_epsilon(n)?;
            Ok(to_json(&min_json(n, &best)))
        }
        Command::OrchardFib { n } => {
            let pair = fibonacci_pair(*n)?;
            let t = pair.threshold();
            Ok(to_json(&json!({
                "n": n,
                "gamma": pair.gamma.entries().to_vec(),
                "tau": pair.tau.entries().to_vec(),
                "z": point_json(&pair.z()),
                "w": point_json(&pair.w()),
                "trace_product": pair.trace_product(),
                "sinh2_eps_min": ratio_json(t.value()),
                "eps_min": t.epsilon(),
                "sinh2_product": ratio_json(pair.sinh2_product()),
                "eps_min_times_exp_radius": pair.scaled_epsilon(),
            })))
        }
        Command::OrchardBlock {
            exact_trace,
            eps,
            sinh2,
        } => {
            let radius = match (eps, sinh2) {
                (Some(e), _) => Radius::Float(*e),
                (None, Some(r)) => Radius::SinhSquared(
                    r.parse::<Ratio<i128>>()
                        .map_err(|_| CliError::Usage(format!("cannot parse ratio {r:?}")))?,
                ),
                (None, None) => Radius::BLOCKING,
            };
            let far = default_far_points(*exact_trace)?;
            let report = blocking_check(radius, *exact_trace, &far)?;
            Ok(to_json(&json!({
                "max_trace": exact_trace,
                "checked": report.checked,
                "blocked": report.is_blocked(),
                "witness": report.witness.as_ref().map(point_json),
            })))
        }
        Command::Euclid { radius } => Ok(format!("{}\n", euclid_visible_count(*radius)?)),
    }
}

fn exact_reports(traces: &[i128]) -> CliResult<Vec<CountReport>> {
    let max = *traces.iter().max().expect("nonempty");
    let census = Census::new(max)?;
    traces
        .iter()
        .map(|&n| {
            // The x with round(x + 1/x) = n at the centre of its rounding window.
            let c = n as f64;
            let x = (c + (c * c - 4.0).sqrt()) / 2.0;
            Ok(CountReport::new(
                x,
                census.total_up_to(n)?,
                census.visible_up_to(n)?,
            ))
        })
        .collect()
}

fn min_json(n: i128, best: &PairEclipse) -> Value {
    let bound = Ratio::from_integer(n * n - 4) * best.sinh2;
    json!({
        "max_trace": n,
        "z": point_json(&best.z),
        "w": point_json(&best.w),
        "trace_product": best.trace_product,
        "sinh2_eps_min": ratio_json(best.sinh2),
        "eps_min": (*best.sinh2.numer() as f64 / *best.sinh2.denom() as f64).sqrt().asinh(),
        "sinh2_times_n2_minus_4": ratio_json(bound),
        "bound_holds": bound >= Ratio::from_integer(4),
    })
}

fn classify_row(input: &str) -> CliResult<Value> {
    let z = parse_point(input)?;
    let mut row = point_json(&z);
    if z.is_origin() {
        row["quadrant"] = Value::Null;
        row["visible"] = Value::Null;
        return Ok(row);
    }
    row["quadrant"] = json!(format!("{:?}", z.quadrant().quadrant));
    let pos = ray_decompose(&z)?;
    match classify(&z)? {
        Visibility::Visible => row["visible"] = json!(true),
        Visibility::Hidden(w) => {
            row["visible"] = json!(false);
            row["witness_b"] = json!(w.b);
            row["witness_d"] = json!(w.d);
        }
    }
    row["ray_index"] = json!(pos.index);
    row["even_place"] = json!(is_even_place(&z)?);
    Ok(row)
}

fn tables_text(reports: &[CountReport]) -> String {
    let mut s = String::from("x,visible,invisible,error,approx\n");
    for r in reports {
        writeln!(
            s,
            "{},{},{},{:.2},{:.2}",
            r.x, r.visible, r.invisible, r.error, r.approx_invisible
        )
        .unwrap();
    }
    s
}

/// Table text for the given `e^R` values: `x,visible,invisible,error,approx`
/// with two decimals on the float columns.
pub fn emit_tables(xs: &[f64]) -> modvis_core::Result<String> {
    if xs.is_empty() {
        return Err(Error::InvalidArgument("need at least one x".into()));
    }
    if let Some(x) = xs.iter().find(|&&x| x.is_nan() || x <= 1.0) {
        return Err(Error::InvalidArgument(format!("x must exceed 1, got {x}")));
    }
    Ok(tables_text(&count_reports(xs)?))
}
