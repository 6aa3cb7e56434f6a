//! CSV and JSON with reals at 17 significant digits.
//!
//! CSV files carry a header line, the data rows, then `# key=value` lines
//! for any scalar metadata. JSON is compact with fields in declaration
//! order. Non-finite reals are written as `null` in JSON and as `inf`,
//! `-inf` or `NaN` in CSV.

use std::collections::BTreeMap;
use std::io;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{ComparisonGrid, ComparisonPair, ComparisonSummary, CurvePoint, RegimeReport};
use crate::error::{Error, Result};
use crate::regularization::{LaurentEnergy, ReconciliationReport, ReconciliationRow};
use crate::spectra::{Domain, Mode, Spectrum, SpectrumEntry, Truncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Csv,
    Json,
}

/// `x` with 17 significant digits: positional for exponents in [−7, 15],
/// scientific otherwise.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if (0..=15).contains(&exp) {
        let split = exp as usize + 1;
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    } else if (-7..0).contains(&exp) {
        format!("{sign}0.{}{digits}", "0".repeat((-exp - 1) as usize))
    } else {
        format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..])
    }
}

struct RealFormatter;

impl serde_json::ser::Formatter for RealFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_real(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, RealFormatter);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse { format: "json", reason: e.to_string() })
}

fn csv_err(reason: impl ToString) -> Error {
    Error::Parse { format: "csv", reason: reason.to_string() }
}

/// A CSV row type with a fixed header.
trait CsvRow: DeserializeOwned {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

fn write_csv<R: CsvRow>(rows: &[R], meta: &[(&str, String)]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(R::HEADER).expect("in-memory write");
    for r in rows {
        w.write_record(r.fields()).expect("in-memory write");
    }
    let mut out = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8");
    for (k, v) in meta {
        out.push_str(&format!("# {k}={v}\n"));
    }
    out
}

type Meta = BTreeMap<String, String>;

fn read_csv<R: CsvRow>(text: &str) -> Result<(Vec<R>, Meta)> {
    let mut meta = Meta::new();
    let mut body = String::new();
    for line in text.lines() {
        if let Some(c) = line.strip_prefix('#') {
            let (k, v) = c.trim().split_once('=').ok_or_else(|| csv_err(format!("bad metadata line {line:?}")))?;
            meta.insert(k.to_string(), v.to_string());
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers().map_err(csv_err)?.clone();
    if header.iter().ne(R::HEADER.iter().copied()) {
        return Err(csv_err(format!("expected header {:?}, got {:?}", R::HEADER.join(","), header.as_slice())));
    }
    let rows = r.deserialize().collect::<std::result::Result<Vec<R>, _>>().map_err(csv_err)?;
    Ok((rows, meta))
}

fn meta_get<T: FromStr>(meta: &Meta, key: &str) -> Result<T> {
    let v = meta.get(key).ok_or_else(|| csv_err(format!("missing metadata {key}")))?;
    v.parse().map_err(|_| csv_err(format!("bad value for {key}: {v:?}")))
}

fn single<R>(mut rows: Vec<R>) -> Result<R> {
    if rows.len() != 1 {
        return Err(csv_err(format!("expected exactly one row, got {}", rows.len())));
    }
    Ok(rows.remove(0))
}

/// Anything the command line can print.
pub trait Dataset: Sized {
    fn to_csv(&self) -> String;
    fn to_json(&self) -> String;
    fn from_csv(text: &str) -> Result<Self>;
    fn from_json(text: &str) -> Result<Self>;
}

pub fn emit<T: Dataset>(data: &T, format: Format) -> String {
    match format {
        Format::Csv => data.to_csv(),
        Format::Json => data.to_json(),
    }
}

pub fn parse<T: Dataset>(text: &str, format: Format) -> Result<T> {
    match format {
        Format::Csv => T::from_csv(text),
        Format::Json => T::from_json(text),
    }
}

macro_rules! json_via_serde {
    () => {
        fn to_json(&self) -> String {
            to_json(self)
        }
        fn from_json(text: &str) -> Result<Self> {
            from_json(text)
        }
    };
}

impl CsvRow for ComparisonPair {
    const HEADER: &'static [&'static str] = &["m", "n", "omega_polygon", "omega_square", "rel_diff"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.n.to_string(),
            format_real(self.omega_polygon),
            format_real(self.omega_square),
            format_real(self.rel_diff),
        ]
    }
}

impl Dataset for ComparisonGrid {
    fn to_csv(&self) -> String {
        let s = &self.summary;
        write_csv(
            &self.pairs,
            &[
                ("grid", self.grid.to_string()),
                ("sides", self.sides.to_string()),
                ("mean_rel_diff", format_real(s.mean_rel_diff)),
                ("max_rel_diff", format_real(s.max_rel_diff)),
                ("cumulative_sum_ratio", format_real(s.cumulative_sum_ratio)),
                ("energy_rel_diff", format_real(s.energy_rel_diff)),
            ],
        )
    }

    fn from_csv(text: &str) -> Result<Self> {
        let (pairs, meta) = read_csv(text)?;
        Ok(ComparisonGrid {
            grid: meta_get(&meta, "grid")?,
            sides: meta_get(&meta, "sides")?,
            summary: ComparisonSummary {
                mean_rel_diff: meta_get(&meta, "mean_rel_diff")?,
                max_rel_diff: meta_get(&meta, "max_rel_diff")?,
                cumulative_sum_ratio: meta_get(&meta, "cumulative_sum_ratio")?,
                energy_rel_diff: meta_get(&meta, "energy_rel_diff")?,
            },
            pairs,
        })
    }

    json_via_serde!();
}

impl CsvRow for CurvePoint {
    const HEADER: &'static [&'static str] =
        &["index", "omega_polygon", "omega_square", "energy_polygon", "energy_square"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            format_real(self.omega_polygon),
            format_real(self.omega_square),
            format_real(self.energy_polygon),
            format_real(self.energy_square),
        ]
    }
}

impl Dataset for Vec<CurvePoint> {
    fn to_csv(&self) -> String {
        write_csv(self, &[])
    }
    fn from_csv(text: &str) -> Result<Self> {
        Ok(read_csv(text)?.0)
    }
    json_via_serde!();
}

impl CsvRow for RegimeReport {
    const HEADER: &'static [&'static str] =
        &["regime", "polygon_coeff", "square_coeff", "square_coeff_exact", "paper_diff", "formula_diff"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.regime.as_str().to_string(),
            format_real(self.polygon_coeff),
            format_real(self.square_coeff),
            format_real(self.square_coeff_exact),
            format_real(self.paper_diff),
            format_real(self.formula_diff),
        ]
    }
}

impl Dataset for Vec<RegimeReport> {
    fn to_csv(&self) -> String {
        write_csv(self, &[])
    }
    fn from_csv(text: &str) -> Result<Self> {
        Ok(read_csv(text)?.0)
    }
    json_via_serde!();
}

impl CsvRow for LaurentEnergy {
    const HEADER: &'static [&'static str] = &["finite", "pole_residue", "source"];
    fn fields(&self) -> Vec<String> {
        vec![format_real(self.finite), format_real(self.pole_residue), self.source.as_str().to_string()]
    }
}

impl Dataset for LaurentEnergy {
    fn to_csv(&self) -> String {
        write_csv(std::slice::from_ref(self), &[])
    }
    fn from_csv(text: &str) -> Result<Self> {
        single(read_csv(text)?.0)
    }
    json_via_serde!();
}

impl CsvRow for ReconciliationRow {
    const HEADER: &'static [&'static str] = &["part", "formula", "paper", "abs_gap", "rel_gap"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.part.clone(),
            format_real(self.formula),
            format_real(self.paper),
            format_real(self.abs_gap),
            format_real(self.rel_gap),
        ]
    }
}

impl Dataset for ReconciliationReport {
    fn to_csv(&self) -> String {
        write_csv(&self.rows, &[])
    }
    fn from_csv(text: &str) -> Result<Self> {
        Ok(ReconciliationReport { rows: read_csv(text)?.0 })
    }
    fn to_json(&self) -> String {
        to_json(&self.rows)
    }
    fn from_json(text: &str) -> Result<Self> {
        Ok(ReconciliationReport { rows: from_json(text)? })
    }
}

/// Positive zeros of one Bessel function, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZeroList(pub Vec<f64>);

#[derive(Deserialize)]
struct ZeroRow {
    n: u32,
    zero: f64,
}

impl CsvRow for ZeroRow {
    const HEADER: &'static [&'static str] = &["n", "zero"];
    fn fields(&self) -> Vec<String> {
        vec![self.n.to_string(), format_real(self.zero)]
    }
}

impl Dataset for ZeroList {
    fn to_csv(&self) -> String {
        let rows: Vec<ZeroRow> =
            self.0.iter().enumerate().map(|(i, &z)| ZeroRow { n: i as u32 + 1, zero: z }).collect();
        write_csv(&rows, &[])
    }
    fn from_csv(text: &str) -> Result<Self> {
        let rows: Vec<ZeroRow> = read_csv(text)?.0;
        if rows.iter().enumerate().any(|(i, r)| r.n as usize != i + 1) {
            return Err(csv_err("zero indices must run 1, 2, 3, …"));
        }
        Ok(ZeroList(rows.into_iter().map(|r| r.zero).collect()))
    }
    json_via_serde!();
}

#[derive(Deserialize)]
struct EntryRow {
    m: u32,
    n: u32,
    omega: f64,
}

impl CsvRow for EntryRow {
    const HEADER: &'static [&'static str] = &["m", "n", "omega"];
    fn fields(&self) -> Vec<String> {
        vec![self.m.to_string(), self.n.to_string(), format_real(self.omega)]
    }
}

fn domain_str(d: Domain) -> String {
    match d {
        Domain::Disk => "disk".into(),
        Domain::Square => "square".into(),
        Domain::Polygon { sides } => format!("polygon:{sides}"),
    }
}

fn parse_domain(s: &str) -> Result<Domain> {
    match s {
        "disk" => Ok(Domain::Disk),
        "square" => Ok(Domain::Square),
        _ => s
            .strip_prefix("polygon:")
            .and_then(|n| n.parse().ok())
            .map(|sides| Domain::Polygon { sides })
            .ok_or_else(|| csv_err(format!("bad domain {s:?}"))),
    }
}

fn truncation_str(t: Truncation) -> String {
    match t {
        Truncation::Grid { side } => format!("grid:{side}"),
        Truncation::Global { count } => format!("global:{count}"),
    }
}

fn parse_truncation(s: &str) -> Result<Truncation> {
    let bad = || csv_err(format!("bad truncation {s:?}"));
    let (kind, v) = s.split_once(':').ok_or_else(bad)?;
    let v: u32 = v.parse().map_err(|_| bad())?;
    match kind {
        "grid" => Ok(Truncation::Grid { side: v }),
        "global" => Ok(Truncation::Global { count: v }),
        _ => Err(bad()),
    }
}

impl Dataset for Spectrum {
    fn to_csv(&self) -> String {
        let rows: Vec<EntryRow> =
            self.entries.iter().map(|e| EntryRow { m: e.mode.m, n: e.mode.n, omega: e.omega }).collect();
        write_csv(
            &rows,
            &[
                ("domain", domain_str(self.domain)),
                ("scale", format_real(self.scale)),
                ("truncation", truncation_str(self.truncation)),
                ("sorted", self.sorted.to_string()),
            ],
        )
    }
    fn from_csv(text: &str) -> Result<Self> {
        let (rows, meta): (Vec<EntryRow>, _) = read_csv(text)?;
        Ok(Spectrum {
            domain: parse_domain(&meta_get::<String>(&meta, "domain")?)?,
            scale: meta_get(&meta, "scale")?,
            truncation: parse_truncation(&meta_get::<String>(&meta, "truncation")?)?,
            sorted: meta_get(&meta, "sorted")?,
            entries: rows.into_iter().map(|r| SpectrumEntry { mode: Mode::new(r.m, r.n), omega: r.omega }).collect(),
        })
    }
    json_via_serde!();
}

/// Energy scale factor of R^D × P_N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RdScaleRecord {
    pub dims: u32,
    pub sides: u32,
    pub s: f64,
    pub exponent: f64,
    pub scale: f64,
}

impl CsvRow for RdScaleRecord {
    const HEADER: &'static [&'static str] = &["dims", "sides", "s", "exponent", "scale"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.dims.to_string(),
            self.sides.to_string(),
            format_real(self.s),
            format_real(self.exponent),
            format_real(self.scale),
        ]
    }
}

/// Cylinder energy; `asymptotic` is absent outside its regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderRecord {
    pub length: f64,
    pub sides: u32,
    pub modes: u32,
    pub terms: u32,
    pub exact: f64,
    pub asymptotic: Option<f64>,
}

impl CsvRow for CylinderRecord {
    const HEADER: &'static [&'static str] = &["length", "sides", "modes", "terms", "exact", "asymptotic"];
    fn fields(&self) -> Vec<String> {
        vec![
            format_real(self.length),
            self.sides.to_string(),
            self.modes.to_string(),
            self.terms.to_string(),
            format_real(self.exact),
            self.asymptotic.map(format_real).unwrap_or_default(),
        ]
    }
}

/// Scale factors for a disk of radius 1 + ΔR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InflateRecord {
    pub delta_r: f64,
    pub eigen_factor: f64,
    pub energy_factor: f64,
    pub energy_factor_simplified: f64,
}

impl CsvRow for InflateRecord {
    const HEADER: &'static [&'static str] = &["delta_r", "eigen_factor", "energy_factor", "energy_factor_simplified"];
    fn fields(&self) -> Vec<String> {
        vec![
            format_real(self.delta_r),
            format_real(self.eigen_factor),
            format_real(self.energy_factor),
            format_real(self.energy_factor_simplified),
        ]
    }
}

macro_rules! single_record {
    ($($t:ty),*) => {$(
        impl Dataset for $t {
            fn to_csv(&self) -> String {
                write_csv(std::slice::from_ref(self), &[])
            }
            fn from_csv(text: &str) -> Result<Self> {
                single(read_csv(text)?.0)
            }
            json_via_serde!();
        }
    )*};
}

single_record!(RdScaleRecord, CylinderRecord, InflateRecord);
