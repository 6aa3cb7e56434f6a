//! The `polycasimir` command line.
//!
//! Exit codes: 0 on success, 2 for usage or validation errors, 1 when a
//! computation fails. Each run that gets past argument parsing writes one
//! manifest: next to `--out` as `<out>.manifest.json`, otherwise as a single
//! JSON line on stderr.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::extensions::{
    cylinder_energy_asymptotic, cylinder_energy_exact, rd_polygon_scale, CylinderConfig, ProductSpaceSpec,
};
use crate::regularization::{
    circle_casimir_energy, polygon_casimir_energy, reconcile, square_casimir_energy, EnergySource, LaurentEnergy,
};
use crate::report::{
    compare_grid, cumulative_curves, emit, regime_table, CylinderRecord, Dataset, Format, InflateRecord, RdScaleRecord,
    ZeroList,
};
use crate::specfun::BesselZeroTable;
use crate::spectra::{
    disk_frequencies, inflate_eigen_factor, inflate_energy_factor, polygon_factor, polygon_frequencies,
    square_frequencies, Truncation,
};

#[derive(Debug, Parser)]
#[command(
    name = "polycasimir",
    version,
    about = "Dirichlet spectra and Casimir energies of polygons, disks and squares"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Serialize)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "POLYCASIMIR_THREADS", default_value_t = 0)]
    threads: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SourceArg {
    Formula,
    PaperConstants,
}

impl From<SourceArg> for EnergySource {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Formula => EnergySource::Formula,
            SourceArg::PaperConstants => EnergySource::PaperConstants,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum DomainArg {
    Disk,
    Square,
    Polygon,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Positive zeros of J_m.
    Zeros(ZerosArgs),
    /// Frequencies of the disk, square or polygon.
    Spectrum(SpectrumArgs),
    /// Paired polygon and square grid spectra with summary metrics.
    Compare(CompareArgs),
    /// Leading-order polygon/square ratios per index regime.
    Regimes(PolygonArgs),
    /// Regularized energy of the disk.
    CircleEnergy(CircleArgs),
    /// Regularized energy of the square.
    SquareEnergy(SquareArgs),
    /// Regularized energy of the regular polygon.
    PolygonEnergy(PolygonEnergyArgs),
    /// Energy scale factor of R^D × P_N.
    RdScale(RdScaleArgs),
    /// Casimir energy of a polygonal cylinder.
    Cylinder(CylinderArgs),
    /// Eigenvalue and energy factors of a slightly inflated disk.
    Inflate(InflateArgs),
    /// Closed-form values against the published constants.
    Reconcile,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
struct ZerosArgs {
    /// Bessel order m.
    #[arg(long, default_value_t = 0)]
    order: u32,
    #[arg(long, default_value_t = 10)]
    count: u32,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
struct PolygonArgs {
    #[arg(long, default_value_t = 4)]
    sides: u32,
    /// Truncation order of the polygon factor (2, 3 or 4).
    #[arg(long, default_value_t = 4)]
    order: u32,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = DomainArg::Polygon)]
    domain: DomainArg,
    #[command(flatten)]
    #[serde(flatten)]
    polygon: PolygonArgs,
    /// G×G index grid.
    #[arg(long, conflicts_with = "count")]
    grid: Option<u32>,
    /// The K lowest frequencies (disk and polygon only).
    #[arg(long)]
    count: Option<u32>,
    /// Radius of the disk or polygon, side of the square.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
struct CompareArgs {
    #[arg(long, default_value_t = 100)]
    grid: u32,
    #[command(flatten)]
    #[serde(flatten)]
    polygon: PolygonArgs,
    /// Emit sorted frequency and cumulative energy curves instead of pairs.
    #[arg(long)]
    curves: bool,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
struct CircleArgs {
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, value_enum, default_value_t = SourceArg::PaperConstants)]
    source: SourceArg,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
struct SquareArgs {
    /// Side length.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
struct PolygonEnergyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    polygon: PolygonArgs,
    #[command(flatten)]
    #[serde(flatten)]
    circle: CircleArgs,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
struct RdScaleArgs {
    #[arg(long, default_value_t = 0)]
    dims: u32,
    #[arg(long, default_value_t = 4)]
    sides: u32,
    #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
    s: f64,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
struct CylinderArgs {
    #[arg(long, default_value_t = 2.0)]
    length: f64,
    #[arg(long, default_value_t = 4)]
    sides: u32,
    /// Transverse modes kept.
    #[arg(long, default_value_t = 10)]
    count: u32,
    /// K₁ series terms per mode.
    #[arg(long, default_value_t = 8)]
    terms: u32,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
struct InflateArgs {
    #[arg(long = "delta-r", allow_negative_numbers = true)]
    delta_r: f64,
}

/// Record of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub flags: BTreeMap<String, String>,
    pub tool_version: String,
    pub outputs: Vec<String>,
}

fn flag_map<T: Serialize>(global: &GlobalArgs, command: &T) -> (String, BTreeMap<String, String>) {
    fn flatten(v: serde_json::Value, into: &mut BTreeMap<String, String>) {
        if let serde_json::Value::Object(map) = v {
            for (k, v) in map {
                let text = match v {
                    serde_json::Value::String(s) => s,
                    serde_json::Value::Null => continue,
                    other => other.to_string(),
                };
                into.insert(k, text);
            }
        }
    }
    let mut flags = BTreeMap::new();
    flatten(serde_json::to_value(global).expect("plain data"), &mut flags);
    // externally tagged: {"name": {args}} or "name" for unit variants
    let name = match serde_json::to_value(command).expect("plain data") {
        serde_json::Value::Object(map) => {
            let (name, args) = map.into_iter().next().expect("one variant");
            flatten(args, &mut flags);
            name
        }
        serde_json::Value::String(name) => name,
        _ => unreachable!("commands serialize as enum variants"),
    };
    (name, flags)
}

fn validate_polygon(p: &PolygonArgs) -> Result<()> {
    polygon_factor(p.sides, p.order).map(|_| ())
}

/// Checks every numeric flag without running any heavy computation.
fn validate(command: &Command) -> Result<()> {
    match command {
        Command::Zeros(a) => {
            if a.count == 0 {
                return Err(Error::invalid("count", "at least one zero"));
            }
        }
        Command::Spectrum(a) => {
            if !matches!(a.domain, DomainArg::Disk) {
                validate_polygon(&a.polygon)?;
            }
            require_positive("radius", a.radius)?;
            match (a.grid, a.count) {
                (Some(0), _) => return Err(Error::invalid("grid", "grid side must be at least 1")),
                (_, Some(0)) => return Err(Error::invalid("count", "count must be at least 1")),
                (None, Some(_)) if matches!(a.domain, DomainArg::Square) => {
                    return Err(Error::invalid("count", "the square spectrum is only available on a grid"))
                }
                _ => {}
            }
        }
        Command::Compare(a) => {
            validate_polygon(&a.polygon)?;
            if a.grid < 2 {
                return Err(Error::invalid("grid", format!("grid side must be at least 2, got {}", a.grid)));
            }
        }
        Command::Regimes(p) => validate_polygon(p)?,
        Command::CircleEnergy(c) => {
            require_positive("radius", c.radius)?;
        }
        Command::SquareEnergy(a) => {
            require_positive("radius", a.radius)?;
        }
        Command::PolygonEnergy(a) => {
            validate_polygon(&a.polygon)?;
            require_positive("radius", a.circle.radius)?;
        }
        Command::RdScale(a) => {
            ProductSpaceSpec::new(a.dims, a.sides, a.s)?;
        }
        Command::Cylinder(a) => {
            CylinderConfig::new(a.length, a.sides, a.count, a.terms)?;
        }
        Command::Inflate(a) => {
            inflate_eigen_factor(a.delta_r)?;
        }
        Command::Reconcile => {}
    }
    Ok(())
}

fn render<T: Dataset>(data: &T, format: Format) -> Result<String> {
    Ok(emit(data, format))
}

fn execute(command: &Command, format: Format) -> Result<String> {
    match command {
        Command::Zeros(a) => {
            let table = BesselZeroTable::new(a.order + 1, a.count)?;
            render(&ZeroList(table.row(a.order).to_vec()), format)
        }
        Command::Spectrum(a) => {
            let spectrum = match a.domain {
                DomainArg::Square => square_frequencies(a.radius, a.grid.unwrap_or(10))?,
                DomainArg::Disk | DomainArg::Polygon => {
                    let truncation = match (a.grid, a.count) {
                        (_, Some(count)) => Truncation::Global { count },
                        (grid, None) => Truncation::Grid { side: grid.unwrap_or(10) },
                    };
                    let disk = disk_frequencies(a.radius, truncation)?;
                    if matches!(a.domain, DomainArg::Disk) {
                        disk
                    } else {
                        polygon_frequencies(&polygon_factor(a.polygon.sides, a.polygon.order)?, &disk)?
                    }
                }
            };
            render(&spectrum, format)
        }
        Command::Compare(a) => {
            let grid = compare_grid(a.grid, &polygon_factor(a.polygon.sides, a.polygon.order)?)?;
            if a.curves {
                render(&cumulative_curves(&grid), format)
            } else {
                render(&grid, format)
            }
        }
        Command::Regimes(p) => render(&regime_table(&polygon_factor(p.sides, p.order)?), format),
        Command::CircleEnergy(c) => render(&circle_casimir_energy(c.radius, c.source.into())?, format),
        Command::SquareEnergy(a) => {
            let e = LaurentEnergy {
                finite: square_casimir_energy(a.radius)?,
                pole_residue: 0.0,
                source: EnergySource::Formula,
            };
            render(&e, format)
        }
        Command::PolygonEnergy(a) => {
            let factor = polygon_factor(a.polygon.sides, a.polygon.order)?;
            render(&polygon_casimir_energy(&factor, a.circle.radius, a.circle.source.into())?, format)
        }
        Command::RdScale(a) => {
            let spec = ProductSpaceSpec::new(a.dims, a.sides, a.s)?;
            let record = RdScaleRecord {
                dims: a.dims,
                sides: a.sides,
                s: a.s,
                exponent: spec.exponent(),
                scale: rd_polygon_scale(&spec)?,
            };
            render(&record, format)
        }
        Command::Cylinder(a) => {
            let cfg = CylinderConfig::new(a.length, a.sides, a.count, a.terms)?;
            let asymptotic = match cylinder_energy_asymptotic(&cfg) {
                Ok(v) => Some(v),
                Err(Error::Regime { .. }) => None,
                Err(e) => return Err(e),
            };
            let record = CylinderRecord {
                length: a.length,
                sides: a.sides,
                modes: a.count,
                terms: a.terms,
                exact: cylinder_energy_exact(&cfg)?,
                asymptotic,
            };
            render(&record, format)
        }
        Command::Inflate(a) => {
            let record = InflateRecord {
                delta_r: a.delta_r,
                eigen_factor: inflate_eigen_factor(a.delta_r)?,
                energy_factor: inflate_energy_factor(a.delta_r, false)?,
                energy_factor_simplified: inflate_energy_factor(a.delta_r, true)?,
            };
            render(&record, format)
        }
        Command::Reconcile => render(&reconcile()?, format),
    }
}

fn manifest_path(out: &std::path::Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Runs the command line on `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    let (name, flags) = flag_map(&cli.global, &cli.command);
    let mut manifest =
        RunManifest { command: name, flags, tool_version: env!("CARGO_PKG_VERSION").to_string(), outputs: Vec::new() };

    let format = match cli.global.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let result = validate(&cli.command).and_then(|()| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads)
            .build()
            .map_err(|e| Error::invalid("threads", e.to_string()))?;
        pool.install(|| execute(&cli.command, format))
    });

    let code = match result {
        Ok(text) => match &cli.global.out {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => {
                    manifest.outputs.push(path.display().to_string());
                    0
                }
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    1
                }
            },
            None => match stdout.write_all(text.as_bytes()) {
                Ok(()) => 0,
                Err(_) => 1,
            },
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    };

    let json = serde_json::to_string(&manifest).expect("plain data");
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(manifest_path(path), json + "\n") {
                let _ = writeln!(stderr, "error: cannot write manifest: {e}");
                return 1;
            }
        }
        None => {
            let _ = writeln!(stderr, "{json}");
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("polycasimir").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn zeros_json() {
        let (code, out, err) = run_args(&["zeros", "--order", "0", "--count", "3", "--format", "json"]);
        assert_eq!(code, 0, "{err}");
        let v: Vec<f64> = serde_json::from_str(&out).unwrap();
        assert!((v[0] - 2.404_825_557_695_773).abs() < 1e-14);
        assert!((v[2] - 8.653_727_912_911_013).abs() < 1e-14);
        let m: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(m["command"], "zeros");
        assert_eq!(m["flags"]["count"], "3");
    }

    #[test]
    fn usage_and_validation_errors_exit_2() {
        assert_eq!(run_args(&["zeros", "--bogus"]).0, 2);
        assert_eq!(run_args(&["nonsense"]).0, 2);
        assert_eq!(run_args(&["compare", "--grid", "1"]).0, 2);
        assert_eq!(run_args(&["regimes", "--order", "5"]).0, 2);
        assert_eq!(run_args(&["inflate", "--delta-r", "0.5"]).0, 2);
        assert_eq!(run_args(&["circle-energy", "--radius", "-1"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn negative_flags_parse() {
        let (code, out, _) = run_args(&["inflate", "--delta-r", "-0.05"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"delta_r\":-0.050000000000000003"));
        let (code, _, _) = run_args(&["rd-scale", "--dims", "2", "--s", "-0.5"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn polygon_energy_tabulated_constants() {
        let (code, out, _) =
            run_args(&["polygon-energy", "--sides", "4", "--radius", "1", "--source", "paper-constants"]);
        assert_eq!(code, 0);
        let e: LaurentEnergy = serde_json::from_str(&out).unwrap();
        assert!((e.pole_residue + 1.266_783 / 128.0).abs() < 1e-8);
    }
}
