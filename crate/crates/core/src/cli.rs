//! Command-line front end. Reports are deterministic: the same arguments and
//! input files always produce byte-identical output.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chern::{
    nodal_surface_chern, plane_nc_curve_chern, stack_chern, ChernError, NodalSurface, PlaneNodeCuspCurve,
    MAX_KLT_MULTIPLICITY,
};
use crate::config::{parse_config, ConfigError, ParsedConfig, SurfaceInput};
use crate::criteria::{
    bogomolov_stack, jet_h0_coefficient, nevanlinna_excess, nodal_surface_lhs, nodes_cusps_lhs,
    plane_pair_lhs, remark_form_lhs, theorem_a_lhs, CriteriaError, NevanlinnaConfig, PlanePairConfig,
};
use crate::model::{ChernNumbers, CriterionVerdict, TheoremTag};
use crate::oracle::{count_orbifold_jet_generators, leading_coefficient_with, OracleConfig, OracleError};
use crate::rational::{Multiplicity, Rational};
use crate::scan::{grid_scan, Family, ParamValue, ScanError, ScanRequest, SweepRange};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

const INFINITE_NOTE: &str = "note: infinite multiplicity present; 1/m is taken as 0 (logarithmic boundary)";

#[derive(Debug, Parser)]
#[command(
    name = "orbichern",
    version,
    about = "Exact Chern numbers and hyperbolicity criteria for orbifold surfaces"
)]
pub struct Cli {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report to a file instead of standard output
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Add decimal approximations (6 significant digits) next to exact values
    #[arg(long, global = true)]
    pub approx: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chern numbers of the associated stack
    Chern(InputArgs),
    /// Evaluate positivity criteria
    Criteria(CriteriaArgs),
    /// Sweep one parameter of a family
    Scan(ScanArgs),
    /// Leading asymptotic coefficient of chi of the k-jet bundle
    Oracle(OracleArgs),
    /// Enumerate local generators of orbifold jet differentials
    Generators(GeneratorArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliFamily {
    PlanePair,
    NodesCusps,
    NodalSurface,
    NodalJet,
    Nevanlinna,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct FamilyParams {
    #[arg(long, value_enum)]
    pub family: Option<CliFamily>,
    #[arg(long)]
    pub d1: Option<i64>,
    #[arg(long)]
    pub d2: Option<i64>,
    #[arg(long)]
    pub m1: Option<Multiplicity>,
    #[arg(long)]
    pub m2: Option<Multiplicity>,
    /// Both plane-pair multiplicities, or the cusp weighting for nodes-cusps
    #[arg(short = 'm')]
    pub m: Option<Multiplicity>,
    /// Degree
    #[arg(short = 'd')]
    pub d: Option<i64>,
    /// Number of nodes of a plane curve
    #[arg(short = 'n')]
    pub n: Option<i64>,
    /// Number of cusps
    #[arg(short = 'c')]
    pub c: Option<i64>,
    /// Number of nodes of a surface
    #[arg(short = 'l')]
    pub l: Option<i64>,
    /// Jet order
    #[arg(short = 'k')]
    pub k: Option<i64>,
    /// Comma-separated multiplicities for nevanlinna
    #[arg(long, value_delimiter = ',')]
    pub mults: Vec<Multiplicity>,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// TOML configuration file
    #[arg(long, conflicts_with = "family")]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub params: FamilyParams,
}

#[derive(Debug, Clone, Args)]
pub struct CriteriaArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Evaluate only this criterion
    #[arg(long, conflicts_with = "all")]
    pub criterion: Option<TheoremTag>,
    /// Evaluate every criterion that applies, not just the primary one
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub params: FamilyParams,
    /// Swept parameter and inclusive range, e.g. m=2..100 or m2=2..50,inf
    #[arg(long)]
    pub sweep: SweepRange,
    #[arg(long)]
    pub criterion: Option<TheoremTag>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub jet_order: u32,
    #[arg(long, default_value_t = OracleConfig::default().max_jet_order)]
    pub max_jet_order: u32,
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorArgs {
    #[arg(long)]
    pub jet_order: u32,
    /// Weighted degree N
    #[arg(long)]
    pub weight: u64,
    /// Comma-separated multiplicities, one per variable
    #[arg(long, value_delimiter = ',', required = true)]
    pub mults: Vec<Multiplicity>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

macro_rules! input_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        }
    )*};
}

input_error!(
    ConfigError,
    CriteriaError,
    ChernError,
    ScanError,
    std::io::Error,
    csv::Error,
    serde_json::Error
);

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if help {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return if help { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let result = execute(&cli).and_then(|report| match &cli.output {
        Some(path) => std::fs::write(path, report).map_err(CliError::from),
        None => out.write_all(report.as_bytes()).map_err(CliError::from),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command and returns the rendered report.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let style = Style {
        format: cli.format,
        approx: cli.approx,
    };
    match &cli.command {
        Command::Chern(args) => chern_report(&resolve_sources(args)?, style),
        Command::Criteria(args) => criteria_report(args, style),
        Command::Scan(args) => scan_report(args, style),
        Command::Oracle(args) => oracle_report(args, style),
        Command::Generators(args) => generators_report(args, style),
    }
}

#[derive(Debug, Clone, Copy)]
struct Style {
    format: Format,
    approx: bool,
}

#[derive(Debug, Clone)]
enum Source {
    Surface(SurfaceInput),
    PlanePair(PlanePairConfig),
    NodesCusps { d: i64, n: i64, c: i64, m: i64 },
    NodalSurface(NodalSurface),
    NodalJet { k: u32, d: i64, l: i64 },
    Nevanlinna(NevanlinnaConfig),
}

impl Source {
    fn label(&self) -> String {
        match self {
            Source::Surface(SurfaceInput::Log(_)) => "surface (log)".into(),
            Source::Surface(SurfaceInput::Ambient(_)) => "surface (ambient)".into(),
            Source::PlanePair(p) => {
                let (d1, d2) = p.degrees();
                let (m1, m2) = p.multiplicities();
                format!("plane-pair d1={d1} d2={d2} m1={m1} m2={m2}")
            }
            Source::NodesCusps { d, n, c, m } => format!("nodes-cusps d={d} n={n} c={c} m={m}"),
            Source::NodalSurface(s) => format!("nodal-surface d={} l={}", s.degree(), s.nodes()),
            Source::NodalJet { k, d, l } => format!("nodal-jet k={k} d={d} l={l}"),
            Source::Nevanlinna(cfg) => {
                let ms: Vec<String> = cfg.multiplicities().iter().map(ToString::to_string).collect();
                format!("nevanlinna m={}", ms.join(","))
            }
        }
    }

    fn has_infinite_multiplicity(&self) -> bool {
        match self {
            Source::Surface(s) => s.has_infinite_multiplicity(),
            Source::PlanePair(p) => {
                let (m1, m2) = p.multiplicities();
                m1.is_infinite() || m2.is_infinite()
            }
            Source::Nevanlinna(cfg) => cfg.multiplicities().iter().any(Multiplicity::is_infinite),
            _ => false,
        }
    }

    fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.has_infinite_multiplicity() {
            notes.push(format!("{INFINITE_NOTE} [{}]", self.label()));
        }
        if let Source::NodesCusps { m, .. } = self {
            if *m != MAX_KLT_MULTIPLICITY {
                notes.push(format!(
                    "note: cusp order evaluated at m={m}; the nodes-cusps criterion itself is stated for m={MAX_KLT_MULTIPLICITY}"
                ));
            }
        }
        notes
    }

    fn chern(&self) -> Result<Option<ChernNumbers>, CliError> {
        Ok(match self {
            Source::Surface(s) => Some(stack_chern(&s.surface())),
            Source::PlanePair(p) => Some(stack_chern(&p.surface())),
            Source::NodesCusps { d, n, c, m } => {
                Some(plane_nc_curve_chern(&PlaneNodeCuspCurve::new(*d, *n, *c, *m)?))
            }
            Source::NodalSurface(s) => Some(nodal_surface_chern(s)),
            Source::NodalJet { d, l, .. } => Some(nodal_surface_chern(&NodalSurface::new(*d, *l)?)),
            Source::Nevanlinna(_) => None,
        })
    }

    fn primary(&self) -> TheoremTag {
        match self {
            Source::Surface(_) => TheoremTag::TheoremA,
            Source::PlanePair(_) => TheoremTag::PlanePair,
            Source::NodesCusps { .. } => TheoremTag::NodesCusps,
            Source::NodalSurface(_) => TheoremTag::NodalSurface,
            Source::NodalJet { k: 2, .. } => TheoremTag::Jet2,
            Source::NodalJet { .. } => TheoremTag::Jet3,
            Source::Nevanlinna(_) => TheoremTag::Nevanlinna,
        }
    }

    fn applicable(&self) -> Vec<TheoremTag> {
        use TheoremTag::*;
        match self {
            Source::Surface(SurfaceInput::Log(_)) => vec![TheoremA, BogomolovStack],
            Source::Surface(SurfaceInput::Ambient(_)) => vec![TheoremA, RemarkForm, BogomolovStack],
            Source::PlanePair(_) => vec![PlanePair, TheoremA, RemarkForm, BogomolovStack],
            Source::NodesCusps { .. } => vec![NodesCusps, BogomolovStack],
            Source::NodalSurface(_) => vec![NodalSurface, BogomolovStack, Jet2, Jet3],
            Source::NodalJet { .. } => vec![self.primary()],
            Source::Nevanlinna(_) => vec![Nevanlinna],
        }
    }

    fn evaluate(&self, tag: TheoremTag) -> Result<VerdictRow, CliError> {
        let mut normalization = None;
        let verdict: CriterionVerdict = match (self, tag) {
            (Source::Surface(s), TheoremTag::TheoremA) => theorem_a_lhs(&s.surface()),
            (Source::Surface(SurfaceInput::Ambient(a)), TheoremTag::RemarkForm) => remark_form_lhs(a),
            (Source::PlanePair(p), TheoremTag::PlanePair) => plane_pair_lhs(p),
            (Source::PlanePair(p), TheoremTag::TheoremA) => theorem_a_lhs(&p.surface()),
            (Source::PlanePair(p), TheoremTag::RemarkForm) => remark_form_lhs(&p.ambient()),
            (Source::NodesCusps { d, n, c, .. }, TheoremTag::NodesCusps) => nodes_cusps_lhs(*d, *n, *c)?,
            (Source::NodalSurface(s), TheoremTag::NodalSurface) => nodal_surface_lhs(s.degree(), s.nodes())?,
            (Source::NodalSurface(s), TheoremTag::Jet2 | TheoremTag::Jet3) => {
                let k = if tag == TheoremTag::Jet2 { 2 } else { 3 };
                let jet = jet_h0_coefficient(k, s.degree(), s.nodes())?;
                normalization = Some(jet.normalization);
                jet.verdict
            }
            (Source::NodalJet { k, d, l }, _) if tag == self.primary() => {
                let jet = jet_h0_coefficient(*k, *d, *l)?;
                normalization = Some(jet.normalization);
                jet.verdict
            }
            (Source::Nevanlinna(cfg), TheoremTag::Nevanlinna) => nevanlinna_excess(cfg),
            (_, TheoremTag::BogomolovStack)
                if !matches!(self, Source::Nevanlinna(_) | Source::NodalJet { .. }) =>
            {
                bogomolov_stack(&self.chern()?.expect("surface source"))
            }
            _ => {
                return Err(CliError::Input(format!(
                    "criterion {tag} does not apply to {}",
                    self.label()
                )))
            }
        };
        Ok(VerdictRow {
            source: self.label(),
            criterion: verdict.tag(),
            lhs: verdict.lhs().clone(),
            holds: verdict.holds(),
            citation: verdict.tag().citation(),
            normalization,
        })
    }
}

fn missing(family: CliFamily, flag: &str) -> CliError {
    let name = family
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    CliError::Input(format!("--family {name} requires {flag}"))
}

fn finite_value(m: Multiplicity, flag: &str) -> Result<i64, CliError> {
    m.value()
        .map(|v| v as i64)
        .ok_or_else(|| CliError::Input(format!("{flag} must be finite here")))
}

fn source_from_params(p: &FamilyParams) -> Result<Source, CliError> {
    let family = p
        .family
        .ok_or_else(|| CliError::Input("either --config or --family is required".into()))?;
    let need = |v: Option<i64>, flag: &str| v.ok_or_else(|| missing(family, flag));
    Ok(match family {
        CliFamily::PlanePair => {
            let m1 = p.m1.or(p.m).ok_or_else(|| missing(family, "--m1 or -m"))?;
            let m2 = p.m2.or(p.m).ok_or_else(|| missing(family, "--m2 or -m"))?;
            Source::PlanePair(PlanePairConfig::new(
                need(p.d1, "--d1")?,
                need(p.d2, "--d2")?,
                m1,
                m2,
            )?)
        }
        CliFamily::NodesCusps => {
            let m = match p.m {
                Some(m) => finite_value(m, "-m")?,
                None => MAX_KLT_MULTIPLICITY,
            };
            let (d, n, c) = (need(p.d, "-d")?, need(p.n, "-n")?, need(p.c, "-c")?);
            PlaneNodeCuspCurve::new(d, n, c, m)?;
            Source::NodesCusps { d, n, c, m }
        }
        CliFamily::NodalSurface => {
            Source::NodalSurface(NodalSurface::new(need(p.d, "-d")?, need(p.l, "-l")?)?)
        }
        CliFamily::NodalJet => {
            let k = need(p.k, "-k")?;
            if !(2..=3).contains(&k) {
                return Err(CriteriaError::UnsupportedJetOrder(k.clamp(0, u32::MAX as i64) as u32).into());
            }
            let (d, l) = (need(p.d, "-d")?, need(p.l, "-l")?);
            NodalSurface::new(d, l)?;
            Source::NodalJet { k: k as u32, d, l }
        }
        CliFamily::Nevanlinna => {
            if p.mults.is_empty() {
                return Err(missing(family, "--mults"));
            }
            Source::Nevanlinna(NevanlinnaConfig::new(p.mults.clone())?)
        }
    })
}

fn sources_from_config(cfg: ParsedConfig) -> Vec<Source> {
    let mut sources = Vec::new();
    sources.extend(cfg.surface.map(Source::Surface));
    sources.extend(cfg.plane_pair.map(Source::PlanePair));
    sources.extend(cfg.nodes_cusps.map(|p| Source::NodesCusps {
        d: p.d,
        n: p.n,
        c: p.c,
        m: MAX_KLT_MULTIPLICITY,
    }));
    sources.extend(cfg.nodal_surface.map(Source::NodalSurface));
    sources.extend(cfg.nevanlinna.map(Source::Nevanlinna));
    sources
}

fn resolve_sources(args: &InputArgs) -> Result<Vec<Source>, CliError> {
    match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let cfg = parse_config(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok(sources_from_config(cfg))
        }
        None => Ok(vec![source_from_params(&args.params)?]),
    }
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_string(value: &Value) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

#[derive(Debug, Clone, Serialize)]
struct ChernRow {
    source: String,
    c1_sq: Rational,
    c2: Rational,
    difference: Rational,
}

fn chern_report(sources: &[Source], style: Style) -> Result<String, CliError> {
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for source in sources {
        if let Some(ch) = source.chern()? {
            notes.extend(source.notes());
            rows.push(ChernRow {
                source: source.label(),
                difference: ch.difference(),
                c1_sq: ch.c1_sq,
                c2: ch.c2,
            });
        }
    }
    if rows.is_empty() {
        return Err(CliError::Input(
            "no surface data to compute Chern numbers for".into(),
        ));
    }
    match style.format {
        Format::Text => {
            let mut s = String::new();
            for row in &rows {
                writeln!(s, "[{}]", row.source).unwrap();
                for (name, value) in [
                    ("c1^2", &row.c1_sq),
                    ("c2", &row.c2),
                    ("c1^2 - c2", &row.difference),
                ] {
                    write!(s, "{name} = {value}").unwrap();
                    if style.approx {
                        write!(s, " (approx {})", value.approx()).unwrap();
                    }
                    s.push('\n');
                }
            }
            for note in &notes {
                writeln!(s, "{note}").unwrap();
            }
            Ok(s)
        }
        Format::Csv => {
            let mut header = vec!["source", "c1_sq", "c2", "c1_sq_minus_c2"];
            if style.approx {
                header.push("approx");
            }
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut v = vec![
                        r.source.clone(),
                        r.c1_sq.to_string(),
                        r.c2.to_string(),
                        r.difference.to_string(),
                    ];
                    if style.approx {
                        v.push(r.difference.approx());
                    }
                    v
                })
                .collect();
            csv_string(&header, &table)
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("plain data");
                    if style.approx {
                        v["approx"] = json!(r.difference.approx());
                    }
                    v
                })
                .collect();
            json_string(&json!({ "chern": rows, "notes": notes }))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct VerdictRow {
    source: String,
    criterion: TheoremTag,
    lhs: Rational,
    holds: bool,
    citation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalization: Option<u64>,
}

fn criteria_report(args: &CriteriaArgs, style: Style) -> Result<String, CliError> {
    let sources = resolve_sources(&args.input)?;
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for source in &sources {
        let tags = match (args.criterion, args.all) {
            (Some(tag), _) if sources.len() > 1 && !source.applicable().contains(&tag) => continue,
            (Some(tag), _) => vec![tag],
            (None, true) => source.applicable(),
            (None, false) => vec![source.primary()],
        };
        notes.extend(source.notes());
        for tag in tags {
            rows.push(source.evaluate(tag)?);
        }
    }
    if rows.is_empty() {
        return Err(CliError::Input(
            "requested criterion applies to nothing in the input".into(),
        ));
    }
    match style.format {
        Format::Text => {
            let mut s = String::new();
            for row in &rows {
                write!(
                    s,
                    "[{}] {}: lhs={} holds={}",
                    row.source, row.criterion, row.lhs, row.holds
                )
                .unwrap();
                if style.approx {
                    write!(s, " approx={}", row.lhs.approx()).unwrap();
                }
                if let Some(norm) = row.normalization {
                    write!(s, " normalization={norm}").unwrap();
                }
                writeln!(s, "\n  {}", row.citation).unwrap();
            }
            for note in &notes {
                writeln!(s, "{note}").unwrap();
            }
            Ok(s)
        }
        Format::Csv => {
            let mut header = vec!["source", "criterion", "lhs", "holds"];
            if style.approx {
                header.push("approx");
            }
            header.push("citation");
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut v = vec![
                        r.source.clone(),
                        r.criterion.to_string(),
                        r.lhs.to_string(),
                        r.holds.to_string(),
                    ];
                    if style.approx {
                        v.push(r.lhs.approx());
                    }
                    v.push(r.citation.to_string());
                    v
                })
                .collect();
            csv_string(&header, &table)
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("plain data");
                    if style.approx {
                        v["approx"] = json!(r.lhs.approx());
                    }
                    v
                })
                .collect();
            json_string(&json!({ "verdicts": rows, "notes": notes }))
        }
    }
}

fn param_value(m: Multiplicity) -> ParamValue {
    match m.value() {
        Some(v) => ParamValue::Int(v as i64),
        None => ParamValue::Infinity,
    }
}

fn scan_family(p: &FamilyParams) -> Result<Family, CliError> {
    match p.family {
        Some(CliFamily::PlanePair) => Ok(Family::PlanePair),
        Some(CliFamily::NodesCusps) => Ok(Family::NodesCusps),
        Some(CliFamily::NodalSurface) => Ok(Family::NodalSurface),
        Some(CliFamily::NodalJet) => Ok(Family::NodalJet),
        Some(CliFamily::Nevanlinna) => Err(CliError::Input("nevanlinna cannot be scanned".into())),
        None => Err(CliError::Input("scan requires --family".into())),
    }
}

fn scan_request(args: &ScanArgs) -> Result<ScanRequest, CliError> {
    let p = &args.params;
    let family = scan_family(p)?;
    let mut fixed = BTreeMap::new();
    let ints = [
        ("d1", p.d1),
        ("d2", p.d2),
        ("d", p.d),
        ("n", p.n),
        ("c", p.c),
        ("l", p.l),
        ("k", p.k),
    ];
    for (name, value) in ints {
        if let Some(v) = value {
            fixed.insert(name.to_string(), ParamValue::Int(v));
        }
    }
    for (name, value) in [("m1", p.m1), ("m2", p.m2), ("m", p.m)] {
        if let Some(m) = value {
            fixed.insert(name.to_string(), param_value(m));
        }
    }
    if !p.mults.is_empty() {
        return Err(CliError::Input("--mults only applies to nevanlinna".into()));
    }
    fixed.remove(&args.sweep.name);
    if args.sweep.name == "m" {
        fixed.remove("m1");
        fixed.remove("m2");
    }
    Ok(ScanRequest::new(
        family,
        fixed,
        args.sweep.clone(),
        args.criterion,
    )?)
}

fn scan_report(args: &ScanArgs, style: Style) -> Result<String, CliError> {
    let req = scan_request(args)?;
    let rows = grid_scan(&req)?;
    let minimal = rows.iter().find(|r| r.holds).map(|r| r.param);
    let sweep = req.swept();
    let range = format!(
        "{}..{}{}",
        sweep.start,
        sweep.end,
        if sweep.include_infinity { ",inf" } else { "" }
    );
    let infinite = sweep.include_infinity || req.fixed().values().any(|v| *v == ParamValue::Infinity);
    match style.format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "family: {}", req.family()).unwrap();
            writeln!(
                s,
                "criterion: {} ({})",
                req.criterion(),
                req.criterion().citation()
            )
            .unwrap();
            let fixed: Vec<String> = req.fixed().iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(s, "fixed: {}", fixed.join(" ")).unwrap();
            for row in &rows {
                write!(
                    s,
                    "{}={} lhs={} holds={}",
                    sweep.name, row.param, row.lhs, row.holds
                )
                .unwrap();
                if style.approx {
                    write!(s, " approx={}", row.lhs.approx()).unwrap();
                }
                s.push('\n');
            }
            match minimal {
                Some(v) => writeln!(s, "minimal {} = {v}", sweep.name).unwrap(),
                None => writeln!(s, "no passing value of {} in {range}", sweep.name).unwrap(),
            }
            if infinite {
                writeln!(s, "{INFINITE_NOTE}").unwrap();
            }
            Ok(s)
        }
        Format::Csv => {
            let mut header = vec!["param", "lhs", "holds"];
            if style.approx {
                header.push("approx");
            }
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut v = vec![r.param.to_string(), r.lhs.to_string(), r.holds.to_string()];
                    if style.approx {
                        v.push(r.lhs.approx());
                    }
                    v
                })
                .collect();
            csv_string(&header, &table)
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("plain data");
                    if style.approx {
                        v["approx"] = json!(r.lhs.approx());
                    }
                    v
                })
                .collect();
            let notes: Vec<&str> = if infinite { vec![INFINITE_NOTE] } else { vec![] };
            json_string(&json!({
                "family": req.family(),
                "criterion": req.criterion(),
                "citation": req.criterion().citation(),
                "fixed": req.fixed().iter().map(|(k, v)| (k.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
                "sweep": { "name": sweep.name, "range": range },
                "rows": rows,
                "minimal": minimal,
                "notes": notes,
            }))
        }
    }
}

fn oracle_report(args: &OracleArgs, style: Style) -> Result<String, CliError> {
    let cfg = OracleConfig {
        max_jet_order: args.max_jet_order,
    };
    let (form, degree) = leading_coefficient_with(args.jet_order, &cfg)?;
    let denominator = Rational::from(form.common_denominator());
    let integral = form.scale(&denominator);
    match style.format {
        Format::Text => {
            let mut s = format!(
                "{}, degree {degree}\n= ({integral})/{denominator}\n",
                form.to_common_denominator_string()
            );
            if style.approx {
                writeln!(
                    s,
                    "approx: {}*c1^2 {}*c2",
                    form.alpha.approx(),
                    form.beta.approx()
                )
                .unwrap();
            }
            Ok(s)
        }
        Format::Csv => {
            let mut header = vec!["jet_order", "degree", "alpha", "beta", "gamma"];
            let mut row = vec![
                args.jet_order.to_string(),
                degree.to_string(),
                form.alpha.to_string(),
                form.beta.to_string(),
                form.gamma.to_string(),
            ];
            if style.approx {
                header.extend(["alpha_approx", "beta_approx"]);
                row.extend([form.alpha.approx(), form.beta.approx()]);
            }
            csv_string(&header, &[row])
        }
        Format::Json => {
            let mut v = json!({
                "jet_order": args.jet_order,
                "degree": degree,
                "alpha": form.alpha,
                "beta": form.beta,
                "gamma": form.gamma,
                "form": form.to_common_denominator_string(),
                "denominator": denominator,
            });
            if style.approx {
                v["alpha_approx"] = json!(form.alpha.approx());
                v["beta_approx"] = json!(form.beta.approx());
            }
            json_string(&v)
        }
    }
}

fn generators_report(args: &GeneratorArgs, style: Style) -> Result<String, CliError> {
    let (rank, monomials) = count_orbifold_jet_generators(args.jet_order, args.weight, &args.mults)?;
    match style.format {
        Format::Text => {
            let mut s = format!("rank = {rank}\n");
            for m in &monomials {
                writeln!(
                    s,
                    "exponents={} ceil={}",
                    render(&m.exponents),
                    render(&m.ceil_powers)
                )
                .unwrap();
            }
            Ok(s)
        }
        Format::Csv => {
            let table: Vec<Vec<String>> = monomials
                .iter()
                .map(|m| vec![render(&m.exponents), render(&m.ceil_powers)])
                .collect();
            csv_string(&["exponents", "ceil_powers"], &table)
        }
        Format::Json => json_string(&json!({ "rank": rank, "generators": monomials })),
    }
}

fn render<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data")
}
