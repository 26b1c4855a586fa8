use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use trimetric::commands::{self, Space};
use trimetric::experiments::{self, ExperimentName, Settings};
use trimetric::input::read_source;
use trimetric::output::{emit, write_atomic};
use trimetric::CliResult;

/// Asymmetric log-ratio metrics on triangles, triangulated surfaces and
/// convex polygons.
///
/// JSON arguments are read inline when they start with `[` or `{`, from
/// standard input when given as `-`, and from a file otherwise.
#[derive(Parser)]
#[command(name = "trimetric", version)]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Quadrature tolerance for path lengths.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Number of grid points for sampled paths and grids.
    #[arg(long, global = true, default_value_t = 20)]
    grid: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Directed distances, symmetrizations and family members.
    Distance {
        #[arg(long, value_enum)]
        space: Space,
        x: String,
        y: String,
        /// Use triangle or surface coordinates as given, without rescaling.
        #[arg(long)]
        raw: bool,
        /// Family parameters in [0, 1].
        #[arg(long = "t")]
        t: Vec<f64>,
    },
    /// CSV samples of the geodesic from X to Y with additivity residuals.
    Geodesic {
        #[arg(long, value_enum)]
        space: Space,
        x: String,
        y: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finsler norm of a tangent vector.
    Norm {
        #[arg(long, value_enum)]
        space: Space,
        point: String,
        vector: String,
        #[arg(long = "t")]
        t: Vec<f64>,
    },
    /// Unit ball of the quadrant-chart norm at `[A1, A2]`.
    UnitBall {
        point: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a named experiment; prints the JSON report or writes
    /// `<name>.json`, `<name>.csv` and figures into `--out-dir`.
    Experiment {
        name: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Comma-separated sequence indices.
        #[arg(long, value_delimiter = ',')]
        ns: Option<Vec<u64>>,
        /// Number of random samples or pairs.
        #[arg(long)]
        samples: Option<usize>,
        /// Polygon size for polygon-bounds.
        #[arg(long)]
        polygon_n: Option<usize>,
        /// Quadrant point `A1,A2` for unit-ball.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        point: Option<Vec<f64>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

fn print_warnings(w: &[String]) {
    for line in w {
        eprintln!("warning: {line}");
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Distance { space, x, y, raw, t } => {
            let out = commands::distance(space, &read_source(&x)?, &read_source(&y)?, raw, &t)?;
            print_warnings(&out.warnings);
            emit(None, &out.text)
        }
        Command::Geodesic { space, x, y, out } => {
            let (table, o) = commands::geodesic_table(space, &read_source(&x)?, &read_source(&y)?, cli.grid)?;
            print_warnings(&o.warnings);
            emit(out.as_deref(), &table.to_csv())
        }
        Command::Norm { space, point, vector, t } => {
            let out = commands::norm(space, &read_source(&point)?, &read_source(&vector)?, &t)?;
            print_warnings(&out.warnings);
            emit(None, &out.text)
        }
        Command::UnitBall { point, format, out } => {
            let p = commands::parse_quadrant_point(&read_source(&point)?)?;
            let text = match format {
                Format::Csv => commands::unit_ball_table(&p, cli.grid).to_csv(),
                Format::Svg => commands::unit_ball_svg(&p),
            };
            emit(out.as_deref(), &text)
        }
        Command::Experiment {
            name,
            out_dir,
            ns,
            samples,
            polygon_n,
            point,
        } => {
            let name = ExperimentName::from_id(&name)?;
            let settings = Settings {
                seed: cli.seed,
                tol: cli.tol,
                grid: cli.grid,
                ns,
                samples,
                polygon_n,
                point: point.map(|p| (p[0], p[1])),
            };
            let report = experiments::run(name, &settings)?;
            let passed = report.verdicts.iter().filter(|v| v.passed).count();
            eprintln!("{}: {passed}/{} verdicts passed", name.id(), report.verdicts.len());
            match out_dir {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)?;
                    let file = |ext: &str| dir.join(format!("{}.{ext}", name.id()));
                    write_atomic(&file("csv"), report.csv().as_bytes())?;
                    write_atomic(&file("json"), report.json().as_bytes())?;
                    for a in &report.artifacts {
                        write_atomic(&Path::new(&dir).join(&a.file_name), a.contents.as_bytes())?;
                    }
                    Ok(())
                }
                None => emit(None, &report.json()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("trimetric: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
