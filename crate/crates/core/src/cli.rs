//! Command-line front end: flag parsing, record assembly and CSV/JSON output.
//!
//! Data goes to the output stream, diagnostics to the error stream. Exit codes
//! are 0 on success, 2 for invalid input, 3 for lookups outside the gold table
//! and 4 for convergence or solver failures.

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{classify_regime, compare_models, evaluate_model, SweepScale, SweepSpec};
use crate::asymptotics::TermBreakdown;
use crate::error::{Error, Result};
use crate::exact::{Model, SummationPolicy};
use crate::gold::correction_factor;
use crate::units::{parse_quantity, QueryPoint};

/// Header of every energy/pressure record, in serialization order.
pub const OUTPUT_FIELDS: [&str; 8] = [
    "separation_m",
    "temperature_K",
    "tau",
    "model",
    "energy_J_per_m2",
    "pressure_Pa",
    "correction_factor",
    "truncation_error",
];

#[derive(Debug, Parser)]
#[command(name = "casimir", version, about = "Finite-temperature Casimir free energy and pressure between ideal plates")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output serialization.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Relative tolerance of the Matsubara sum.
    #[arg(long, default_value_t = 1e-12, global = true)]
    rel_tol: f64,

    /// Maximum number of nonzero Matsubara frequencies.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    max_terms: usize,

    /// Smallest tau accepted by the exact summation.
    #[arg(long, default_value_t = 1e-3, global = true)]
    tau_floor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Exact,
    LowT,
    HighT,
    Casimir,
    Gold,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Exact => Model::Exact,
            ModelArg::LowT => Model::LowT,
            ModelArg::HighT => Model::HighT,
            ModelArg::Casimir => Model::CasimirZeroT,
            ModelArg::Gold => Model::GoldCorrected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScaleArg {
    Linear,
    Log,
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Plate separation, e.g. 300nm, 0.8um, 1e-6m.
    #[arg(long, allow_hyphen_values = true)]
    separation: String,
    /// Temperature, e.g. 300K.
    #[arg(long, allow_hyphen_values = true)]
    temperature: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Free energy per unit area for one model.
    Energy {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = ModelArg::Exact)]
        model: ModelArg,
    },
    /// Pressure for one model.
    Pressure {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = ModelArg::Exact)]
        model: ModelArg,
    },
    /// Regime parameter and validity label.
    Regime {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Low-temperature expansion terms and their ratios.
    Terms {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Gold correction factor.
    Correction {
        #[command(flatten)]
        point: PointArgs,
    },
    /// All models against the exact sum.
    Compare {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Separation sweep at fixed temperature.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        l_start: String,
        #[arg(long, allow_hyphen_values = true)]
        l_stop: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = ScaleArg::Linear)]
        scale: ScaleArg,
        #[arg(long, allow_hyphen_values = true)]
        temperature: String,
        /// Comma-separated models.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "exact,low-t,high-t,casimir")]
        models: Vec<ModelArg>,
        /// Add the gold correction factor to each row.
        #[arg(long)]
        with_correction: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Real(f64),
    Text(&'static str),
    Empty,
}

fn format_real(x: f64) -> String {
    // 17 significant digits.
    format!("{x:.16e}")
}

/// Streams rows of one fixed schema as CSV or a JSON array of objects.
struct RecordWriter<'a, W: Write> {
    out: &'a mut W,
    format: Format,
    fields: &'a [&'a str],
    rows: usize,
}

impl<'a, W: Write> RecordWriter<'a, W> {
    fn begin(out: &'a mut W, format: Format, fields: &'a [&'a str]) -> io::Result<Self> {
        match format {
            Format::Csv => writeln!(out, "{}", fields.join(","))?,
            Format::Json => writeln!(out, "[")?,
        }
        Ok(Self {
            out,
            format,
            fields,
            rows: 0,
        })
    }

    fn row(&mut self, cells: &[Cell]) -> io::Result<()> {
        debug_assert_eq!(cells.len(), self.fields.len());
        match self.format {
            Format::Csv => {
                let line: Vec<String> = cells
                    .iter()
                    .map(|c| match c {
                        Cell::Real(x) => format_real(*x),
                        Cell::Text(s) => (*s).to_string(),
                        Cell::Empty => String::new(),
                    })
                    .collect();
                writeln!(self.out, "{}", line.join(","))?;
            }
            Format::Json => {
                if self.rows > 0 {
                    writeln!(self.out, ",")?;
                }
                let members: Vec<String> = self
                    .fields
                    .iter()
                    .zip(cells)
                    .filter_map(|(k, c)| {
                        let v = match c {
                            Cell::Real(x) if x.is_finite() => format_real(*x),
                            Cell::Real(_) => "null".to_string(),
                            Cell::Text(s) => format!("\"{s}\""),
                            Cell::Empty => return None,
                        };
                        Some(format!("\"{k}\":{v}"))
                    })
                    .collect();
                write!(self.out, "{{{}}}", members.join(","))?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    fn finish(self) -> io::Result<()> {
        if self.format == Format::Json {
            if self.rows > 0 {
                writeln!(self.out)?;
            }
            writeln!(self.out, "]")?;
        }
        self.out.flush()
    }
}

fn parse_length(text: &str) -> Result<f64> {
    parse_quantity(text)?.to_meters()
}

fn parse_temperature(text: &str) -> Result<f64> {
    parse_quantity(text)?.to_kelvin()
}

fn parse_point(args: &PointArgs) -> Result<QueryPoint> {
    QueryPoint::new(parse_length(&args.separation)?, parse_temperature(&args.temperature)?)
}

fn output_record(
    point: &QueryPoint,
    model: Model,
    energy: f64,
    pressure: f64,
    correction: Option<f64>,
    truncation_error: f64,
) -> [Cell; 8] {
    [
        Cell::Real(point.separation()),
        Cell::Real(point.temperature()),
        Cell::Real(point.tau()),
        Cell::Text(model.tag()),
        Cell::Real(energy),
        Cell::Real(pressure),
        correction.map_or(Cell::Empty, Cell::Real),
        Cell::Real(truncation_error),
    ]
}

enum Failure {
    Usage(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs the CLI with `argv[0]` as the program name, writing to the given streams.
pub fn run_with<O: Write, E: Write>(argv: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Runs the CLI on the process's standard streams.
pub fn run(argv: &[String]) -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn execute<O: Write, E: Write>(cli: &Cli, out: &mut O, err: &mut E) -> std::result::Result<(), Failure> {
    let policy = SummationPolicy::new(cli.rel_tol, cli.max_terms, cli.tau_floor)?;
    match &cli.command {
        Command::Energy { point, model } | Command::Pressure { point, model } => {
            let is_energy = matches!(cli.command, Command::Energy { .. });
            let p = parse_point(point)?;
            let model = Model::from(*model);
            let (energy, pressure) = evaluate_model(model, &p, &policy)?;
            let correction = match model {
                Model::GoldCorrected => Some(correction_factor(p.separation(), p.temperature())?),
                _ => None,
            };
            let error = if is_energy {
                energy.truncation_error
            } else {
                pressure.truncation_error
            };
            let mut w = RecordWriter::begin(out, cli.format, &OUTPUT_FIELDS)?;
            w.row(&output_record(&p, model, energy.value, pressure.value, correction, error))?;
            w.finish()?;
        }
        Command::Regime { point } => {
            let p = parse_point(point)?;
            let r = classify_regime(&p);
            let mut w = RecordWriter::begin(out, cli.format, &["separation_m", "temperature_K", "tau", "label"])?;
            w.row(&[
                Cell::Real(p.separation()),
                Cell::Real(p.temperature()),
                Cell::Real(r.tau_value),
                Cell::Text(r.label.tag()),
            ])?;
            w.finish()?;
        }
        Command::Terms { point } => {
            let p = parse_point(point)?;
            let t = TermBreakdown::new(&p);
            let fields = [
                "separation_m",
                "temperature_K",
                "tau",
                "casimir_term",
                "pair_term",
                "blackbody_term",
                "exponential_term",
                "ratio_2_to_1",
                "ratio_3_to_1",
                "ratio_4_to_1",
            ];
            let mut w = RecordWriter::begin(out, cli.format, &fields)?;
            w.row(&[
                Cell::Real(p.separation()),
                Cell::Real(p.temperature()),
                Cell::Real(p.tau()),
                Cell::Real(t.casimir_term),
                Cell::Real(t.pair_term),
                Cell::Real(t.blackbody_term),
                Cell::Real(t.exponential_term),
                Cell::Real(t.ratio_2_to_1),
                Cell::Real(t.ratio_3_to_1),
                Cell::Real(t.ratio_4_to_1),
            ])?;
            w.finish()?;
        }
        Command::Correction { point } => {
            let p = parse_point(point)?;
            let factor = correction_factor(p.separation(), p.temperature())?;
            let mut w = RecordWriter::begin(out, cli.format, &["separation_m", "temperature_K", "correction_factor"])?;
            w.row(&[Cell::Real(p.separation()), Cell::Real(p.temperature()), Cell::Real(factor)])?;
            w.finish()?;
        }
        Command::Compare { point } => {
            let p = parse_point(point)?;
            let c = compare_models(&p, &policy)?;
            let fields = [
                "separation_m",
                "temperature_K",
                "tau",
                "exact_J_per_m2",
                "low_t_J_per_m2",
                "high_t_J_per_m2",
                "casimir_J_per_m2",
                "rel_dev_low_t",
                "rel_dev_high_t",
                "rel_dev_casimir",
            ];
            let mut w = RecordWriter::begin(out, cli.format, &fields)?;
            w.row(&[
                Cell::Real(p.separation()),
                Cell::Real(p.temperature()),
                Cell::Real(p.tau()),
                Cell::Real(c.exact),
                Cell::Real(c.low_t),
                Cell::Real(c.high_t),
                Cell::Real(c.casimir),
                Cell::Real(c.rel_dev_low_t),
                Cell::Real(c.rel_dev_high_t),
                Cell::Real(c.rel_dev_casimir),
            ])?;
            w.finish()?;
        }
        Command::Sweep {
            l_start,
            l_stop,
            steps,
            scale,
            temperature,
            models,
            with_correction,
        } => {
            let spec = SweepSpec {
                l_start: parse_length(l_start)?,
                l_stop: parse_length(l_stop)?,
                l_steps: *steps,
                scale: match scale {
                    ScaleArg::Linear => SweepScale::Linear,
                    ScaleArg::Log => SweepScale::Log,
                },
                temperature: parse_temperature(temperature)?,
                models: models.iter().map(|&m| Model::from(m)).collect(),
                include_correction: *with_correction,
            };
            spec.validate()?;
            stream_sweep(&spec, &policy, cli.format, out, err)?;
        }
    }
    Ok(())
}

/// Writes one record per (grid point, model) as each point is evaluated.
fn stream_sweep<O: Write, E: Write>(
    spec: &SweepSpec,
    policy: &SummationPolicy,
    format: Format,
    out: &mut O,
    err: &mut E,
) -> io::Result<()> {
    let mut w = RecordWriter::begin(out, format, &OUTPUT_FIELDS)?;
    for (index, point) in spec.points().enumerate() {
        let point = match point {
            Ok(p) => p,
            Err(e) => {
                writeln!(err, "warning: row {index}: {e}")?;
                continue;
            }
        };
        let correction = if spec.include_correction {
            match correction_factor(point.separation(), point.temperature()) {
                Ok(f) => Some(f),
                Err(e) => {
                    writeln!(err, "warning: row {index}: {e}")?;
                    None
                }
            }
        } else {
            None
        };
        for &model in &spec.models {
            match evaluate_model(model, &point, policy) {
                Ok((energy, pressure)) => w.row(&output_record(
                    &point,
                    model,
                    energy.value,
                    pressure.value,
                    correction,
                    energy.truncation_error,
                ))?,
                Err(e) => writeln!(err, "warning: row {index} model {model}: {e}")?,
            }
        }
    }
    w.finish()
}
