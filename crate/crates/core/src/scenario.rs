//! Scenario files, batch evaluation and report rendering.
//!
//! A scenario is a TOML document:
//!
//! ```toml
//! title = "singlet at 60/60"
//! inequalities = ["original", "generalized", "bound"]
//! triples = [["a", "b", "c"]]          # optional; default: consecutive windows
//!
//! [source]
//! kind = "state"                       # state | density | model
//! name = "singlet"
//!
//! [[directions]]
//! name = "a"
//! angle = 0.0                          # degrees from +z towards +x
//!
//! [[directions]]
//! name = "d"
//! vector = [0.0, 1.0, 0.0]             # any non-zero vector, normalized
//!
//! [integration]                        # used by model sources only
//! method = "monte-carlo"               # or "sphere-quadrature"
//! sample_count = 100000
//! seed = 7
//! confidence_sigma = 3.0
//!
//! [output]
//! path = "singlet.csv"
//! format = "csv"                       # csv | human
//! ```
//!
//! Relative output paths are resolved against `$CORRELAB_OUT_DIR` when set.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::inequality::{
    bell_original, bound_check, correlate, evaluate_triple, extension, generalized_bell,
    statistical_tolerance, Correlation, CorrelationSource, InequalityReport, BELL_ORIGINAL,
    DEFAULT_TOLERANCE, GENERALIZED_BELL, THREE_TERM_BOUND,
};
use crate::lhv::{
    model_by_name, singlet_basis_mixture_expectation, singlet_qm_decomposition,
    HiddenVariableModel, IntegrationConfig, MODEL_NAMES,
};
use crate::quantum::{qm_correlation, rearrangement_check, sixty_degree_triple};
use crate::spin::{
    singlet, state_by_name, ComplexMatrix, DensityMatrix, Direction, TwoQubitState, STATE_NAMES,
};

/// Environment variable naming the directory for relative output paths.
pub const OUT_DIR_ENV: &str = "CORRELAB_OUT_DIR";

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Config(String),
    #[error("evaluation failed: {0}")]
    Engine(Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl ScenarioError {
    /// 1 for configuration and I/O problems, 2 for evaluation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Engine(_) => 2,
            _ => 1,
        }
    }

    fn config(key: &str, err: impl std::fmt::Display) -> Self {
        ScenarioError::Config(format!("{key}: {err}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityKind {
    Original,
    Generalized,
    Bound,
    /// Four-setting CHSH, driven by the `chsh` quadruples.
    ChshExtension,
}

fn default_inequalities() -> Vec<InequalityKind> {
    vec![
        InequalityKind::Original,
        InequalityKind::Generalized,
        InequalityKind::Bound,
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SourceSpec {
    /// A registered state name or explicit `[re, im]` amplitudes in
    /// `(↑↑, ↑↓, ↓↑, ↓↓)` order.
    State {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        amplitudes: Option<Vec<[f64; 2]>>,
    },
    /// `name = "maximally-mixed"`, a Werner parameter, or 16 row-major
    /// `[re, im]` entries.
    Density {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        werner: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        entries: Option<Vec<[f64; 2]>>,
    },
    Model {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        state: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        family: Option<String>,
    },
}

impl SourceSpec {
    /// Short-hand used on the command line: a state name, a model name,
    /// `maximally-mixed`, or `werner:<p>`.
    pub fn from_name(name: &str) -> Result<Self, ScenarioError> {
        if let Some(p) = name.strip_prefix("werner:") {
            let p: f64 = p
                .parse()
                .map_err(|e| ScenarioError::config("source", format!("werner parameter: {e}")))?;
            return Ok(SourceSpec::Density {
                name: None,
                werner: Some(p),
                entries: None,
            });
        }
        if name == "maximally-mixed" {
            return Ok(SourceSpec::Density {
                name: Some(name.into()),
                werner: None,
                entries: None,
            });
        }
        if STATE_NAMES.contains(&name) {
            return Ok(SourceSpec::State {
                name: Some(name.into()),
                amplitudes: None,
            });
        }
        if MODEL_NAMES.contains(&name) {
            return Ok(SourceSpec::Model {
                name: name.into(),
                state: None,
                family: None,
            });
        }
        let mut available: Vec<&str> = STATE_NAMES.to_vec();
        available.extend(MODEL_NAMES);
        available.extend(["maximally-mixed", "werner:<p>"]);
        Err(ScenarioError::Config(format!(
            "source: unknown source `{name}`; available: {}",
            available.join(", ")
        )))
    }

    pub fn resolve(&self) -> Result<ResolvedSource, ScenarioError> {
        match self {
            SourceSpec::State { name, amplitudes } => {
                let (state, label) = match (name, amplitudes) {
                    (Some(n), None) => (
                        state_by_name(n).map_err(|e| ScenarioError::config("source.name", e))?,
                        n.clone(),
                    ),
                    (None, Some(amps)) => (parse_amplitudes(amps)?, "amplitudes".into()),
                    _ => {
                        return Err(ScenarioError::Config(
                            "source: a state needs exactly one of `name` or `amplitudes`".into(),
                        ))
                    }
                };
                Ok(ResolvedSource::State {
                    state,
                    label: format!("state:{label}"),
                })
            }
            SourceSpec::Density {
                name,
                werner,
                entries,
            } => {
                let (rho, label) =
                    match (name.as_deref(), werner, entries) {
                        (Some("maximally-mixed"), None, None) => (
                            DensityMatrix::maximally_mixed(),
                            "maximally-mixed".to_string(),
                        ),
                        (Some(other), None, None) => {
                            return Err(ScenarioError::Config(format!(
                            "source.name: unknown density `{other}`; available: maximally-mixed"
                        )))
                        }
                        (None, Some(p), None) => (
                            DensityMatrix::werner(*p)
                                .map_err(|e| ScenarioError::config("source.werner", e))?,
                            format!("werner({p})"),
                        ),
                        (None, None, Some(e)) => (parse_density(e)?, "entries".to_string()),
                        _ => return Err(ScenarioError::Config(
                            "source: a density needs exactly one of `name`, `werner` or `entries`"
                                .into(),
                        )),
                    };
                Ok(ResolvedSource::Density {
                    rho,
                    label: format!("density:{label}"),
                })
            }
            SourceSpec::Model {
                name,
                state,
                family,
            } => {
                let model = model_by_name(name, state.as_deref(), family.as_deref())
                    .map_err(|e| ScenarioError::config("source", e))?;
                let label = format!("model:{}", model.descriptor());
                Ok(ResolvedSource::Model { model, label })
            }
        }
    }
}

fn parse_amplitudes(amps: &[[f64; 2]]) -> Result<TwoQubitState, ScenarioError> {
    let amps: [[f64; 2]; 4] = amps.try_into().map_err(|_| {
        ScenarioError::Config(format!(
            "source.amplitudes: expected 4 [re, im] pairs, got {}",
            amps.len()
        ))
    })?;
    let c = amps.map(|[re, im]| num_complex::Complex64::new(re, im));
    let norm: f64 = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > crate::spin::INPUT_TOL {
        return Err(ScenarioError::Config(format!(
            "source.amplitudes: state norm is {norm}, expected 1"
        )));
    }
    TwoQubitState::normalized(c).map_err(|e| ScenarioError::config("source.amplitudes", e))
}

fn parse_density(entries: &[[f64; 2]]) -> Result<DensityMatrix, ScenarioError> {
    let m = ComplexMatrix::new(
        4,
        4,
        entries
            .iter()
            .map(|[re, im]| num_complex::Complex64::new(*re, *im))
            .collect(),
    )
    .map_err(|e| ScenarioError::config("source.entries", e))?;
    DensityMatrix::new(m).map_err(|e| ScenarioError::config("source.entries", e))
}

#[derive(Debug)]
pub enum ResolvedSource {
    State {
        state: TwoQubitState,
        label: String,
    },
    Density {
        rho: DensityMatrix,
        label: String,
    },
    Model {
        model: Box<dyn HiddenVariableModel>,
        label: String,
    },
}

impl ResolvedSource {
    pub fn as_source(&self) -> CorrelationSource<'_> {
        match self {
            ResolvedSource::State { state, .. } => CorrelationSource::State(state),
            ResolvedSource::Density { rho, .. } => CorrelationSource::Density(rho),
            ResolvedSource::Model { model, .. } => CorrelationSource::Model(model.as_ref()),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            ResolvedSource::State { label, .. }
            | ResolvedSource::Density { label, .. }
            | ResolvedSource::Model { label, .. } => label,
        }
    }

    pub fn is_statistical(&self) -> bool {
        self.as_source().is_statistical()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedDirection {
    pub name: String,
    /// Degrees from +z towards +x, in the xz-plane.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<[f64; 3]>,
}

impl NamedDirection {
    pub fn angle(name: &str, degrees: f64) -> Self {
        NamedDirection {
            name: name.into(),
            angle: Some(degrees),
            vector: None,
        }
    }

    pub fn resolve(&self) -> Result<Direction, ScenarioError> {
        let key = format!("directions.{}", self.name);
        match (self.angle, self.vector) {
            (Some(deg), None) if deg.is_finite() => Ok(Direction::planar_degrees(deg)),
            (None, Some([x, y, z])) => {
                Direction::normalized(x, y, z).map_err(|e| ScenarioError::config(&key, e))
            }
            _ => Err(ScenarioError::Config(format!(
                "{key}: give exactly one finite `angle` or `vector`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Human,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: OutputFormat,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            path: PathBuf::from("correlab.csv"),
            format: OutputFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default = "default_inequalities")]
    pub inequalities: Vec<InequalityKind>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triples: Vec<[String; 3]>,
    /// Quadruples `(a, a′, b, b′)` for the CHSH extension.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chsh: Vec<[String; 4]>,
    pub source: SourceSpec,
    #[serde(default)]
    pub directions: Vec<NamedDirection>,
    #[serde(default)]
    pub integration: IntegrationConfig,
    #[serde(default)]
    pub output: OutputSpec,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string().trim_end().into()))
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|e| match e {
            ScenarioError::Parse(msg) => ScenarioError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    fn direction_index(&self, key: &str, name: &str) -> Result<usize, ScenarioError> {
        self.directions
            .iter()
            .position(|d| d.name == name)
            .ok_or_else(|| {
                let names: Vec<&str> = self.directions.iter().map(|d| d.name.as_str()).collect();
                ScenarioError::Config(format!(
                    "{key}: unknown direction `{name}`; available: {}",
                    names.join(", ")
                ))
            })
    }

    /// Explicit triples, or every run of three consecutive directions.
    pub fn resolved_triples(&self) -> Result<Vec<[usize; 3]>, ScenarioError> {
        let triples: Vec<[usize; 3]> = if self.triples.is_empty() {
            (0..self.directions.len().saturating_sub(2))
                .map(|i| [i, i + 1, i + 2])
                .collect()
        } else {
            self.triples
                .iter()
                .map(|t| {
                    Ok([
                        self.direction_index("triples", &t[0])?,
                        self.direction_index("triples", &t[1])?,
                        self.direction_index("triples", &t[2])?,
                    ])
                })
                .collect::<Result<_, ScenarioError>>()?
        };
        if triples.is_empty() {
            return Err(ScenarioError::Config(
                "directions: no direction triples".into(),
            ));
        }
        Ok(triples)
    }
}

/// One output row: an inequality on one direction triple.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub triple: String,
    pub report: InequalityReport,
}

/// One correlation table row.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRow {
    pub x: String,
    pub y: String,
    pub correlation: Correlation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub source: String,
    pub rows: Vec<ReportRow>,
    pub correlations: Vec<CorrelationRow>,
}

/// Evaluates every selected inequality on every triple of `scenario`.
pub fn evaluate(scenario: &Scenario) -> Result<Evaluation, ScenarioError> {
    let source = scenario.source.resolve()?;
    let cfg = &scenario.integration;
    if source.is_statistical() {
        cfg.validate()
            .map_err(|e| ScenarioError::config("integration", e))?;
    }
    let directions: Vec<Direction> = scenario
        .directions
        .iter()
        .map(NamedDirection::resolve)
        .collect::<Result<_, _>>()?;
    let triples = scenario.resolved_triples()?;
    let chsh: Vec<[usize; 4]> = scenario
        .chsh
        .iter()
        .map(|q| {
            let mut out = [0; 4];
            for (slot, name) in out.iter_mut().zip(q) {
                *slot = scenario.direction_index("chsh", name)?;
            }
            Ok(out)
        })
        .collect::<Result<_, ScenarioError>>()?;
    let wants = |k| scenario.inequalities.contains(&k);
    if wants(InequalityKind::ChshExtension) && chsh.is_empty() {
        return Err(ScenarioError::Config(
            "chsh: `chsh-extension` selected but no quadruples given".into(),
        ));
    }

    let name = |i: usize| scenario.directions[i].name.as_str();
    let mut rows = Vec::new();
    let mut correlations: Vec<CorrelationRow> = Vec::new();
    let mut record = |x: usize, y: usize, c: Correlation| {
        if !correlations
            .iter()
            .any(|r| r.x == name(x) && r.y == name(y))
        {
            correlations.push(CorrelationRow {
                x: name(x).into(),
                y: name(y).into(),
                correlation: c,
            });
        }
    };

    for &[i, j, k] in &triples {
        let eval = evaluate_triple(
            source.as_source(),
            &directions[i],
            &directions[j],
            &directions[k],
            Some(cfg),
        )
        .map_err(ScenarioError::Engine)?;
        record(i, j, eval.p_ab);
        record(i, k, eval.p_ac);
        record(j, k, eval.p_bc);
        let triple = format!("{}|{}|{}", name(i), name(j), name(k));
        for report in eval.reports {
            let kind = match report.name.as_str() {
                BELL_ORIGINAL => InequalityKind::Original,
                GENERALIZED_BELL => InequalityKind::Generalized,
                THREE_TERM_BOUND => InequalityKind::Bound,
                _ => continue,
            };
            if wants(kind) {
                rows.push(ReportRow {
                    triple: triple.clone(),
                    report,
                });
            }
        }
    }

    if wants(InequalityKind::ChshExtension) {
        for &[a, a2, b, b2] in &chsh {
            let pairs = [(a, b), (a, b2), (a2, b), (a2, b2)];
            let mut values = [0.0; 4];
            let mut uncertainties = [0.0; 4];
            for (slot, &(x, y)) in pairs.iter().enumerate() {
                let c = correlate(
                    source.as_source(),
                    &directions[x],
                    &directions[y],
                    Some(cfg),
                )
                .map_err(ScenarioError::Engine)?;
                values[slot] = c.value;
                uncertainties[slot] = c.uncertainty;
                record(x, y, c);
            }
            let tolerance = if source.is_statistical() {
                statistical_tolerance(&uncertainties, cfg.confidence_sigma)
            } else {
                DEFAULT_TOLERANCE
            };
            let report = extension::chsh(values[0], values[1], values[2], values[3], tolerance)
                .map_err(ScenarioError::Engine)?;
            rows.push(ReportRow {
                triple: format!("{}|{}|{}|{}", name(a), name(a2), name(b), name(b2)),
                report,
            });
        }
    }

    Ok(Evaluation {
        source: source.label().to_string(),
        rows,
        correlations,
    })
}

/// Fixed scientific notation with 17 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_error(e: csv::Error) -> ScenarioError {
    ScenarioError::Config(format!("csv: {e}"))
}

pub fn render_reports_csv(eval: &Evaluation) -> Result<String, ScenarioError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "name",
        "lhs",
        "rhs",
        "margin",
        "satisfied",
        "source",
        "triple",
        "tolerance",
        "inputs",
    ])
    .map_err(csv_error)?;
    for row in &eval.rows {
        let r = &row.report;
        let inputs: Vec<String> = r.inputs.iter().map(|&x| format_number(x)).collect();
        w.write_record([
            r.name.clone(),
            format_number(r.lhs),
            format_number(r.rhs),
            format_number(r.margin),
            r.satisfied.to_string(),
            eval.source.clone(),
            row.triple.clone(),
            format_number(r.tolerance),
            inputs.join(" "),
        ])
        .map_err(csv_error)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| ScenarioError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii csv"))
}

pub fn render_correlations_csv(eval: &Evaluation) -> Result<String, ScenarioError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "y", "correlation", "uncertainty", "samples", "method"])
        .map_err(csv_error)?;
    for row in &eval.correlations {
        let c = &row.correlation;
        w.write_record([
            row.x.clone(),
            row.y.clone(),
            format_number(c.value),
            format_number(c.uncertainty),
            c.sample_count.map(|n| n.to_string()).unwrap_or_default(),
            c.method.map(|m| m.as_str()).unwrap_or("exact").to_string(),
        ])
        .map_err(csv_error)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| ScenarioError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii csv"))
}

pub fn render_human(eval: &Evaluation) -> String {
    let mut out = String::new();
    writeln!(out, "source: {}", eval.source).unwrap();
    writeln!(out, "\ncorrelations").unwrap();
    for row in &eval.correlations {
        let c = &row.correlation;
        write!(out, "  P({}, {}) = {:+.12}", row.x, row.y, c.value).unwrap();
        if c.uncertainty > 0.0 {
            write!(out, " ± {:.3e}", c.uncertainty).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "\ninequalities").unwrap();
    for row in &eval.rows {
        let r = &row.report;
        writeln!(
            out,
            "  {:<18} {:<12} lhs = {:+.12}  rhs = {:+.12}  margin = {:+.12}  {}",
            r.name,
            row.triple,
            r.lhs,
            r.rhs,
            r.margin,
            if r.satisfied { "satisfied" } else { "VIOLATED" }
        )
        .unwrap();
    }
    out
}

/// Command-line overrides for [`run_scenario`].
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub sample_count: Option<u64>,
    pub output: Option<PathBuf>,
    /// Base for relative output paths; defaults to `$CORRELAB_OUT_DIR`.
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub report_path: PathBuf,
    pub correlations_path: PathBuf,
    pub evaluation: Evaluation,
}

fn resolve_output(path: &Path, out_dir: Option<&Path>) -> PathBuf {
    match out_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

/// Sibling file `<stem>.correlations.<ext>` of the report.
pub fn correlations_path(report: &Path) -> PathBuf {
    let stem = report
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "correlab".into());
    let ext = report
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    report.with_file_name(format!("{stem}.correlations.{ext}"))
}

fn write_file(path: &Path, contents: &str) -> Result<(), ScenarioError> {
    let io = |source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io)?;
    }
    fs::write(path, contents).map_err(io)
}

/// Loads, evaluates and writes a scenario: the inequality report at the
/// output path and the correlation table next to it.
pub fn run_scenario(path: &Path, opts: &RunOptions) -> Result<RunOutcome, ScenarioError> {
    let mut scenario = Scenario::load(path)?;
    if let Some(seed) = opts.seed {
        scenario.integration.seed = seed;
    }
    if let Some(n) = opts.sample_count {
        scenario.integration.sample_count = n;
    }
    let evaluation = evaluate(&scenario)?;

    let env_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    let out_dir = opts.out_dir.clone().or(env_dir);
    let target = opts.output.clone().unwrap_or(scenario.output.path.clone());
    let report_path = resolve_output(&target, out_dir.as_deref());
    let correlations_path = correlations_path(&report_path);

    let (report, table) = match scenario.output.format {
        OutputFormat::Csv => (
            render_reports_csv(&evaluation)?,
            render_correlations_csv(&evaluation)?,
        ),
        OutputFormat::Human => (
            render_human(&evaluation),
            render_correlations_csv(&evaluation)?,
        ),
    };
    write_file(&report_path, &report)?;
    write_file(&correlations_path, &table)?;
    Ok(RunOutcome {
        report_path,
        correlations_path,
        evaluation,
    })
}

/// One pinned quantity of [`paper_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub label: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
}

impl CheckLine {
    fn new(label: &str, value: f64, expected: f64, tolerance: f64) -> Self {
        CheckLine {
            label: label.into(),
            value,
            expected,
            tolerance,
        }
    }

    fn flag(label: &str, value: bool, expected: bool) -> Self {
        let f = |b: bool| if b { 1.0 } else { 0.0 };
        CheckLine::new(label, f(value), f(expected), 0.5)
    }

    pub fn passed(&self) -> bool {
        (self.value - self.expected).abs() <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            3
        }
    }

    pub fn render(&self) -> String {
        let mut out =
            String::from("singlet, coplanar a, b, c with a∠b = b∠c = 60°, a′ = b′ = c\n\n");
        for line in &self.lines {
            let status = if line.passed() { "ok" } else { "MISMATCH" };
            writeln!(
                out,
                "{:<8} {} = {}",
                status,
                line.label,
                display_value(line)
            )
            .unwrap();
        }
        let failures: Vec<&CheckLine> = self.lines.iter().filter(|l| !l.passed()).collect();
        if failures.is_empty() {
            writeln!(out, "\nall {} quantities match", self.lines.len()).unwrap();
        } else {
            writeln!(out, "\n{} mismatches:", failures.len()).unwrap();
            for l in failures {
                writeln!(
                    out,
                    "  {}: got {:e}, expected {:e}, diff {:e} > tolerance {:e}",
                    l.label,
                    l.value,
                    l.expected,
                    (l.value - l.expected).abs(),
                    l.tolerance
                )
                .unwrap();
            }
        }
        out
    }
}

fn display_value(line: &CheckLine) -> String {
    if line.tolerance == 0.5 {
        return (line.value == 1.0).to_string();
    }
    // 12 decimals, trailing zeros dropped
    let s = format!("{:.12}", line.value);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" => "0".to_string(),
        other => other.to_string(),
    }
}

/// Recomputes the 60° singlet counterexample and the inequality verdicts
/// built on it, each against its pinned value.
pub fn paper_check() -> CheckReport {
    let psi = singlet();
    let [a, b, c] = sixty_degree_triple();
    let p_ab = qm_correlation(&psi, &a, &b);
    let p_ac = qm_correlation(&psi, &a, &c);
    let p_bc = qm_correlation(&psi, &b, &c);
    let rr = rearrangement_check(&psi, &a, &b, &c, &c, 1e-9).expect("positive tolerance");
    let orig = bell_original(p_ab, p_ac, p_bc, DEFAULT_TOLERANCE).expect("valid correlations");
    let gen = generalized_bell(p_ab, p_ac, p_bc, DEFAULT_TOLERANCE).expect("valid correlations");
    let bound = bound_check(&[p_ab, p_ac, p_bc], DEFAULT_TOLERANCE).expect("positive tolerance");
    let composite = bound.composite.expect("three values");

    CheckReport {
        lines: vec![
            CheckLine::new("P(a,b)", p_ab, -0.5, 1e-12),
            CheckLine::new("P(a,c)", p_ac, 0.5, 1e-12),
            CheckLine::new("P(b,c)", p_bc, -0.5, 1e-12),
            CheckLine::new("lhs", rr.lhs, -1.0, 1e-9),
            CheckLine::new("rhs(+)", rr.rhs_plus, -0.25, 1e-9),
            CheckLine::new("rhs(-)", rr.rhs_minus, -1.75, 1e-9),
            CheckLine::flag("rearrangement holds (+)", rr.equal_plus, false),
            CheckLine::flag("rearrangement holds (-)", rr.equal_minus, false),
            CheckLine::new(
                "four-term basis mixture P(a,b)",
                singlet_basis_mixture_expectation(&a, &b),
                0.0,
                1e-12,
            ),
            CheckLine::new(
                "four-term cross-term expansion P(a,b)",
                singlet_qm_decomposition(&a, &b),
                -0.5,
                1e-12,
            ),
            CheckLine::new("bell_original lhs", orig.lhs, 1.0, 1e-9),
            CheckLine::new("bell_original rhs", orig.rhs, 0.5, 1e-9),
            CheckLine::flag("bell_original satisfied", orig.satisfied, false),
            CheckLine::new("generalized_bell lhs", gen.lhs, 1.0, 1e-9),
            CheckLine::new("generalized_bell rhs", gen.rhs, 2.5, 1e-9),
            CheckLine::new("generalized_bell margin", gen.margin, 1.5, 1e-9),
            CheckLine::flag("generalized_bell satisfied", gen.satisfied, true),
            CheckLine::new("three_term_bound composite", composite.lhs, 1.5, 1e-9),
            CheckLine::flag("three_term_bound satisfied", composite.satisfied, true),
        ],
    }
}

/// Correlation against planar angle `θ` between `a = +z` and `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    pub columns: Vec<String>,
    pub angles: Vec<f64>,
    /// `rows[i][j]`: value of column `j` at `angles[i]`.
    pub rows: Vec<Vec<f64>>,
}

impl CurveTable {
    pub fn render(&self) -> String {
        let mut out = String::from("# angle_deg");
        for c in &self.columns {
            write!(out, "\t{c}").unwrap();
        }
        out.push('\n');
        for (angle, row) in self.angles.iter().zip(&self.rows) {
            write!(out, "{}", format_number(*angle)).unwrap();
            for v in row {
                write!(out, "\t{}", format_number(*v)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Angles `start, start + step, …` up to `stop` (inclusive within 1e-9).
pub fn angle_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, ScenarioError> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(ScenarioError::Config(format!(
            "curve: invalid range start={start} stop={stop} step={step}"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| start + k as f64 * step).collect())
}

/// One correlation column per source; statistical sources get an extra
/// `<label>:uncertainty` column.
pub fn correlation_curve(
    sources: &[ResolvedSource],
    start: f64,
    stop: f64,
    step: f64,
    cfg: &IntegrationConfig,
) -> Result<CurveTable, ScenarioError> {
    let angles = angle_grid(start, stop, step)?;
    if sources.is_empty() {
        return Err(ScenarioError::Config("curve: no sources".into()));
    }
    if sources.iter().any(ResolvedSource::is_statistical) {
        cfg.validate()
            .map_err(|e| ScenarioError::config("integration", e))?;
    }
    let mut columns = Vec::new();
    for s in sources {
        columns.push(s.label().to_string());
        if s.is_statistical() {
            columns.push(format!("{}:uncertainty", s.label()));
        }
    }
    let a = Direction::Z;
    let mut rows = Vec::with_capacity(angles.len());
    for &deg in &angles {
        let b = Direction::planar_degrees(deg);
        let mut row = Vec::new();
        for s in sources {
            let c = correlate(s.as_source(), &a, &b, Some(cfg)).map_err(ScenarioError::Engine)?;
            row.push(c.value);
            if s.is_statistical() {
                row.push(c.uncertainty);
            }
        }
        rows.push(row);
    }
    Ok(CurveTable {
        columns,
        angles,
        rows,
    })
}
