//! Command driver behind the `orbit-hk` binary: configuration, the four
//! commands and the JSON report.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::chevalley::{AlgebraError, Element, LieAlgebra, CONVENTION_VERSION};
use crate::hyperkahler::{self as hk, HkError, PotentialFamily};
use crate::orbit::{self, OrbitError, OrbitPoint, Sl2Triple};
use crate::report::{CheckList, CheckRecord};
use crate::rootsystem::{RootSystemError, Series, SimpleType};
use crate::sampling::{random_element, stream_rng};
use crate::sl2geom::{self, Sl2Error};

pub const REPORT_SCHEMA: &str = "orbit-hk-report/1";
pub const CACHE_ENV: &str = "ORBIT_HK_CACHE";
pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_TRIALS_E8: usize = 25;
pub const DEFAULT_SEED: u64 = 42;
pub const ETA_FLOOR: f64 = 1e-6;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Hk(#[from] HkError),
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Orbit(OrbitError::BadTriple { .. }) => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        }
    }
}

impl From<RootSystemError> for CliError {
    fn from(e: RootSystemError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Verify,
    LambdaTable,
    EguchiHanson,
    Spectrum,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Verify => "verify",
            Command::LambdaTable => "lambda-table",
            Command::EguchiHanson => "eguchi-hanson",
            Command::Spectrum => "spectrum",
        })
    }
}

/// `all` or a single type such as `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum AlgebraSpec {
    All,
    One(SimpleType),
}

impl FromStr for AlgebraSpec {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            Ok(AlgebraSpec::All)
        } else {
            s.parse().map(AlgebraSpec::One)
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::All => f.write_str("all"),
            AlgebraSpec::One(t) => write!(f, "{t}"),
        }
    }
}

impl From<AlgebraSpec> for String {
    fn from(a: AlgebraSpec) -> String {
        a.to_string()
    }
}

impl TryFrom<String> for AlgebraSpec {
    type Error = RootSystemError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Which sl(2)-triple `spectrum` decomposes under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleSpec {
    Theta,
    Principal,
    /// Coefficients in the Chevalley basis, each entry `[re, im]`.
    Explicit { e: Vec<[f64; 2]>, h: Vec<[f64; 2]>, f: Vec<[f64; 2]> },
}

impl TripleSpec {
    /// `theta`, `principal`, or a path to a JSON file `{"e": [[re, im], ...], "h": ..., "f": ...}`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "theta" => Ok(TripleSpec::Theta),
            "principal" => Ok(TripleSpec::Principal),
            path => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("--triple {path}: {e}")))?;
                #[derive(Deserialize)]
                struct Coeffs {
                    e: Vec<[f64; 2]>,
                    h: Vec<[f64; 2]>,
                    f: Vec<[f64; 2]>,
                }
                let c: Coeffs = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("--triple {path}: {e}")))?;
                Ok(TripleSpec::Explicit { e: c.e, h: c.h, f: c.f })
            }
        }
    }

    fn build(&self, alg: &LieAlgebra) -> Result<Sl2Triple, CliError> {
        let elem = |v: &[[f64; 2]]| -> Result<Element, CliError> {
            if v.len() != alg.dim() {
                return Err(CliError::Usage(format!("triple has {} coefficients, algebra has dimension {}", v.len(), alg.dim())));
            }
            Ok(Element::from_coeffs(v.iter().map(|p| num_complex::Complex64::new(p[0], p[1])).collect()))
        };
        Ok(match self {
            TripleSpec::Theta => Sl2Triple::theta(alg),
            TripleSpec::Principal => Sl2Triple::principal(alg),
            TripleSpec::Explicit { e, h, f } => Sl2Triple { e: elem(e)?, h: elem(h)?, f: elem(f)? },
        })
    }
}

/// Everything a run depends on. Defaults: 200 trials (25 for `E8`), seed 42,
/// `c = 0`, `t = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub algebra: AlgebraSpec,
    /// Potential parameter `c >= 0`, in the `rho' = sqrt(lambda^2 eta + c) / (2 eta)` convention.
    pub c: f64,
    pub t: Option<f64>,
    pub eta: Option<f64>,
    /// `None` means the per-algebra default.
    pub trials: Option<usize>,
    pub seed: u64,
    pub tol: BTreeMap<String, f64>,
    pub triple: TripleSpec,
    pub json: Option<PathBuf>,
    pub cache: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            algebra: AlgebraSpec::All,
            c: 0.0,
            t: None,
            eta: None,
            trials: None,
            seed: DEFAULT_SEED,
            tol: BTreeMap::new(),
            triple: TripleSpec::Theta,
            json: None,
            cache: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.c.is_finite() && self.c >= 0.0) {
            return Err(CliError::Usage(format!("--c must be finite and >= 0, got {}", self.c)));
        }
        if self.t.is_some() && self.eta.is_some() {
            return Err(CliError::Usage("--t and --eta are mutually exclusive".into()));
        }
        if let Some(t) = self.t {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Usage(format!("--t must be positive, got {t}")));
            }
        }
        if let Some(e) = self.eta {
            if !(e.is_finite() && e >= ETA_FLOOR) {
                return Err(CliError::Usage(format!("--eta must be at least {ETA_FLOOR}, got {e}")));
            }
        }
        if self.trials == Some(0) {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        for (k, v) in &self.tol {
            if !(v.is_finite() && *v > 0.0) {
                return Err(CliError::Usage(format!("--tol {k}={v}: tolerance must be positive")));
            }
        }
        Ok(())
    }

    pub fn trials_for(&self, ty: SimpleType) -> usize {
        self.trials.unwrap_or(if ty.series == Series::E && ty.rank == 8 { DEFAULT_TRIALS_E8 } else { DEFAULT_TRIALS })
    }

    fn cache_dir(&self) -> Option<PathBuf> {
        self.cache.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
    }
}

/// Parses `name=value`.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub checks: CheckList,
    pub constants: BTreeMap<String, Value>,
}

impl Section {
    fn new(name: impl Into<String>) -> Self {
        Section { name: name.into(), checks: CheckList::default(), constants: BTreeMap::new() }
    }

    fn constant(&mut self, k: &str, v: impl Serialize) {
        self.constants.insert(k.to_string(), serde_json::to_value(v).expect("serializable"));
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Versions {
    pub code: String,
    pub structure_constants: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub versions: Versions,
    pub config: RunConfig,
    pub pass: bool,
    pub sections: Vec<Section>,
    pub warnings: Vec<String>,
    /// Wall-clock seconds per section; the only nondeterministic field.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    fn new(config: &RunConfig) -> Self {
        Report {
            schema: REPORT_SCHEMA.into(),
            versions: Versions { code: env!("CARGO_PKG_VERSION").into(), structure_constants: CONVENTION_VERSION.into() },
            config: config.clone(),
            pass: true,
            sections: Vec::new(),
            warnings: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    fn finish(mut self) -> Self {
        let tol = self.config.tol.clone();
        for s in &mut self.sections {
            for c in &mut s.checks.checks {
                if let Some(&t) = tol.get(&c.name) {
                    *c = CheckRecord::numeric(c.name.clone(), c.max_residual, t);
                }
            }
        }
        self.pass = self.sections.iter().all(|s| s.checks.all_pass());
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_json(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    /// Human-readable summary, one line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(&format!("[{}]\n", s.name));
            for c in &s.checks.checks {
                let mark = if c.pass { "ok  " } else { "FAIL" };
                out.push_str(&format!("  {mark} {:<40} {:>12.3e}  (tol {:.0e})\n", c.name, c.max_residual, c.tolerance));
            }
            for (k, v) in &s.constants {
                out.push_str(&format!("       {k} = {v}\n"));
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push_str(if self.pass { "PASS\n" } else { "FAIL\n" });
        out
    }
}

/// The types `verify --algebra all` runs.
pub fn verify_types() -> Vec<SimpleType> {
    ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4", "E6", "E7", "E8"]
        .iter()
        .map(|s| s.parse().expect("valid label"))
        .collect()
}

/// The rows of the `lambda-table` command.
pub fn lambda_table_types() -> Vec<SimpleType> {
    [
        "A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "G2", "F4", "E6", "E7", "E8",
    ]
    .iter()
    .map(|s| s.parse().expect("valid label"))
    .collect()
}

fn types_for(config: &RunConfig, all: fn() -> Vec<SimpleType>) -> Vec<SimpleType> {
    match config.algebra {
        AlgebraSpec::All => all(),
        AlgebraSpec::One(t) => vec![t],
    }
}

fn load(ty: SimpleType, config: &RunConfig, report: &mut Report) -> Result<LieAlgebra, CliError> {
    let dir = config.cache_dir();
    if let Some(d) = &dir {
        std::fs::create_dir_all(d)?;
    }
    let (alg, warnings) = LieAlgebra::load_or_build(ty, dir.as_deref())?;
    report.warnings.extend(warnings);
    Ok(alg)
}

fn orbit_point<'a>(alg: &'a LieAlgebra, config: &RunConfig) -> Result<OrbitPoint<'a>, CliError> {
    Ok(match (config.t, config.eta) {
        (_, Some(eta)) => OrbitPoint::minimal_with_eta(alg, eta)?,
        (t, None) => OrbitPoint::minimal(alg, t.unwrap_or(1.0))?,
    })
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let report = match config.command {
        Command::Verify => run_verify(config)?,
        Command::LambdaTable => run_lambda_table(config)?,
        Command::EguchiHanson => run_eguchi_hanson(config)?,
        Command::Spectrum => run_spectrum(config)?,
    };
    if let Some(p) = &config.json {
        report.write_json(p)?;
    }
    Ok(report)
}

/// Exact layer, orbit geometry and the hyperKähler checks for each type.
pub fn run_verify(config: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(config);
    for ty in types_for(config, verify_types) {
        let start = Instant::now();
        let alg = load(ty, config, &mut report)?;
        let trials = config.trials_for(ty);
        let mut sec = Section::new(ty.to_string());

        let mut exact = alg.verify(config.seed);
        for c in &mut exact.checks {
            c.name = format!("algebra_{}", c.name);
        }
        sec.checks.extend(exact);

        let point = orbit_point(&alg, config)?;
        let lambda_sq = hk::lambda_squared(&alg);
        let eta = point.eta();
        sec.constant("dim", alg.dim());
        sec.constant("lambda_sq", lambda_sq);
        sec.constant("eta", eta);
        sec.constant("c", config.c);
        sec.constant("trials", trials);

        let coh = orbit::cohomogeneity(&point)?;
        let v_dirs = hk::complement_directions(&alg).len() / 2;
        sec.checks.push(CheckRecord::exact("cohomogeneity_one", coh.cohomogeneity as i64 - 1));
        sec.checks.push(CheckRecord::exact("tangent_dim_formula", coh.tangent_real_dim as i64 - 2 * (2 + v_dirs as i64)));
        sec.checks.push(CheckRecord::numeric("group_orbit_complement", coh.complement_residual, hk::SCALAR_TOL));
        sec.constant("tangent_real_dim", coh.tangent_real_dim);
        sec.constant("group_orbit_real_dim", coh.group_orbit_real_dim);
        sec.constant("cohomogeneity", coh.cohomogeneity);

        let spectrum = orbit::sl2_spectrum(&alg, &Sl2Triple::theta(&alg))?;
        sec.checks.push(CheckRecord::flag("theta_triple_minimal", spectrum.minimal));
        sec.constant("sl2_highest_weights", spectrum.multiplicities());

        let pot = PotentialFamily::for_algebra(&alg, config.c)?;
        let q = hk::verify_quaternionic(&point, &pot, trials, config.seed)?;
        sec.constant("min_gram_eigenvalue", q.min_gram_eigenvalue);
        sec.checks.push(CheckRecord::flag(
            "positivity_condition_agrees_with_gram",
            hk::positivity_condition(&pot, eta) == (q.min_gram_eigenvalue > 0.0),
        ));
        sec.checks.extend(q.checks);

        if alg.rank() > 1 {
            let dev = hk::uniqueness_deviation(&point, config.c)?;
            let predicted = config.c / (lambda_sq as f64 * eta);
            let err = (dev - predicted).abs();
            let err = if predicted > 0.0 { err / predicted } else { err };
            sec.checks.push(CheckRecord::numeric("uniqueness_deviation_matches_prediction", err, 1e-6));
            sec.constant("uniqueness_deviation", dev);
            sec.constant("uniqueness_prediction", predicted);
        }

        let mut worst = [0.0f64; 4];
        let mut rng = stream_rng(config.seed, u64::MAX);
        for _ in 0..trials {
            let a = random_element(alg.dim(), &mut rng);
            let b = random_element(alg.dim(), &mut rng);
            let r = hk::derivative_residuals(&point, &a, &b);
            let asm = hk::kahler_assembly_residual(&point, &pot, &a, &b)?;
            for (w, v) in worst.iter_mut().zip([r.d_eta, r.d_i_d_eta, r.wedge, asm]) {
                *w = w.max(v);
            }
        }
        for (name, v) in ["d_eta", "d_i_d_eta", "d_eta_wedge_i_d_eta", "omega_i_assembled"].iter().zip(worst) {
            sec.checks.push(CheckRecord::numeric(*name, v, hk::SCALAR_TOL));
        }

        report.timings.insert(sec.name.clone(), start.elapsed().as_secs_f64());
        report.sections.push(sec);
    }
    Ok(report.finish())
}

/// One row of the `lambda^2` table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaRow {
    pub algebra: String,
    pub computed: i64,
    /// Listed value where the indexing is unambiguous.
    pub published: Option<i64>,
    /// Listed value read with `n` tied to the matrix size.
    pub published_matrix_size: Option<i64>,
    /// Listed value read with `n` tied to the rank.
    pub published_rank_index: Option<i64>,
    pub matches: bool,
}

pub fn lambda_row(alg: &LieAlgebra) -> LambdaRow {
    let ty = alg.simple_type();
    let computed = hk::lambda_squared(alg);
    let (published, by_size, by_rank) = match ty.series {
        Series::A => (Some(hk::published::special_linear(ty.rank)), None, None),
        Series::B | Series::C | Series::D => (
            None,
            hk::published::classical_matrix_size(ty.series, ty.rank),
            hk::published::classical_rank_index(ty.series, ty.rank),
        ),
        _ => (hk::published::exceptional(ty.series, ty.rank), None, None),
    };
    let matches = match published {
        Some(p) => p == computed,
        None => by_size == Some(computed) || by_rank == Some(computed),
    };
    LambdaRow {
        algebra: ty.to_string(),
        computed,
        published,
        published_matrix_size: by_size,
        published_rank_index: by_rank,
        matches,
    }
}

pub fn run_lambda_table(config: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(config);
    let mut sec = Section::new("lambda_table");
    let start = Instant::now();
    let mut rows = Vec::new();
    for ty in types_for(config, lambda_table_types) {
        let alg = load(ty, config, &mut report)?;
        let row = lambda_row(&alg);
        let reference = row.published.or(match (row.published_matrix_size, row.published_rank_index) {
            (Some(a), _) if a == row.computed => Some(a),
            (_, Some(b)) if b == row.computed => Some(b),
            (a, _) => a,
        });
        sec.checks.push(CheckRecord::exact(format!("lambda_sq_{ty}"), row.computed - reference.unwrap_or(0)));
        if !row.matches {
            report.warnings.push(format!(
                "{ty}: computed lambda^2 = {} (= 2 h^vee), listed value {}",
                row.computed,
                reference.map_or("none".into(), |v| v.to_string())
            ));
        }
        rows.push(row);
    }
    sec.constant("rows", &rows);
    report.timings.insert(sec.name.clone(), start.elapsed().as_secs_f64());
    report.sections.push(sec);
    Ok(report.finish())
}

/// The `sl(2)` sweep: ODE, frame diagonal, Eguchi-Hanson form and bolt limit.
/// `--c` is converted to the `sl(2)` parameter `c / 4`.
pub fn run_eguchi_hanson(config: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(config);
    let start = Instant::now();
    let mut sec = Section::new("eguchi_hanson");
    let c_sl2 = hk::sl2_c_from_global(config.c);
    let t = match (config.t, config.eta) {
        (_, Some(eta)) => eta.sqrt() / 2.0,
        (t, None) => t.unwrap_or(1.0),
    };
    let mut rng = stream_rng(config.seed, 0);

    let frame = sl2geom::eh_metric_components(t, c_sl2)?;
    sec.checks.push(CheckRecord::numeric("frame_off_diagonal", frame.max_off_diagonal(), 1e-10));
    sec.checks.push(CheckRecord::numeric("frame_diagonal", frame.diagonal_mismatch(), hk::SCALAR_TOL));
    sec.checks.push(CheckRecord::numeric("frame_d_eta", frame.d_eta_defect.abs(), 1e-12));
    sec.constant("c_sl2", c_sl2);
    sec.constant("t", t);
    sec.constant("frame_diagonal", frame.diagonal());

    let base = sl2geom::eh_metric_components(1.0, 0.0)?;
    let want = [1.0 / 32.0, 2.0, 2.0, 2.0];
    let err = base.diagonal().iter().zip(want).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max);
    sec.checks.push(CheckRecord::numeric("frame_t1_c0", err, 1e-10));

    let (mut ode, mut fi, mut rho2) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let eta = rng.random_range(0.1..10.0);
        let c = rng.random_range(0.0..10.0);
        let r = sl2geom::ode_residual(eta, c)?;
        ode = ode.max(r.residual.abs());
        fi = fi.max(r.first_integral.abs());
        rho2 = rho2.max(r.second_derivative.abs());
    }
    sec.checks.push(CheckRecord::numeric("ode_residual", ode, 1e-12));
    sec.checks.push(CheckRecord::numeric("ode_first_integral", fi, 1e-12));
    sec.checks.push(CheckRecord::numeric("rho_second_derivative", rho2, 1e-12));

    let mut eh = 0.0f64;
    for (i, c) in [0.0, 1.0, 3.0].into_iter().cycle().take(100).enumerate() {
        let r0 = (16.0f64 * c).powf(0.25);
        let r = r0 * (1.0 + 1e-2) + 0.05 * i as f64 + rng.random_range(0.0..1.0);
        eh = eh.max(sl2geom::eh_standard_form_check(r, c)?);
    }
    sec.checks.push(CheckRecord::numeric("eh_standard_form", eh, hk::SCALAR_TOL));

    let mut random_frames = 0.0f64;
    let mut s12 = 0.0f64;
    for _ in 0..100 {
        let f = sl2geom::eh_metric_components(rng.random_range(0.1..3.0), rng.random_range(0.0..5.0))?;
        random_frames = random_frames.max(f.diagonal_mismatch()).max(f.max_off_diagonal());
        s12 = s12.max(((f.gram[1][1] - f.gram[2][2]) / f.gram[1][1]).abs());
    }
    sec.checks.push(CheckRecord::numeric("frame_random", random_frames, hk::SCALAR_TOL));
    sec.checks.push(CheckRecord::numeric("sigma1_eq_sigma2", s12, 1e-12));

    if c_sl2 > 0.0 {
        let b = sl2geom::bolt_limit(c_sl2, 1e-3)?;
        sec.checks.push(CheckRecord::numeric("bolt_limit_mismatch", b.mismatch, hk::SCALAR_TOL));
        sec.checks.push(CheckRecord::flag("bolt_w_and_sigma3_vanish", b.w < 1e-2 && b.sigma3 < 1e-2 * b.sigma1));
        sec.constant("bolt", b);
    }
    report.timings.insert(sec.name.clone(), start.elapsed().as_secs_f64());
    report.sections.push(sec);
    Ok(report.finish())
}

pub fn run_spectrum(config: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(config);
    for ty in types_for(config, verify_types) {
        let start = Instant::now();
        let alg = load(ty, config, &mut report)?;
        let triple = config.triple.build(&alg)?;
        let mut sec = Section::new(ty.to_string());
        let (he, hf, ef) = triple.residuals(&alg)?;
        sec.constant("triple_residuals", [he, hf, ef]);
        let spec = orbit::sl2_spectrum(&alg, &triple)?;
        let mut ef_err = 0.0f64;
        for (k, d) in &spec.ef_diagonals {
            for (j, v) in d.iter().enumerate() {
                let want = ((j as i64 + 1) * (k - j as i64)) as f64;
                ef_err = ef_err.max((v - want).abs());
            }
        }
        sec.checks.push(CheckRecord::numeric("ef_spectrum", ef_err, hk::SCALAR_TOL));
        sec.checks.push(CheckRecord::numeric("ef_diagonal_action", spec.ef_residual, hk::SCALAR_TOL));
        let weights = spec.ad_h_weights();
        let total: usize = weights.values().sum();
        sec.checks.push(CheckRecord::exact("weights_account_for_dim", total as i64 - alg.dim() as i64));
        let sig = orbit::minimality_signature(&alg, &triple);
        sec.checks.push(CheckRecord::flag("signature_agrees_with_decomposition", orbit::signature_is_minimal(&sig) == spec.minimal));
        sec.constant("highest_weights", spec.multiplicities());
        sec.constant("ef_diagonals", &spec.ef_diagonals);
        sec.constant("minimal", spec.minimal);
        report.timings.insert(sec.name.clone(), start.elapsed().as_secs_f64());
        report.sections.push(sec);
    }
    Ok(report.finish())
}

/// The report as JSON with `timings` removed, for determinism comparisons.
pub fn deterministic_json(report: &Report) -> String {
    let mut v = serde_json::to_value(report).expect("report serializes");
    if let Some(o) = v.as_object_mut() {
        o.remove("timings");
    }
    serde_json::to_string_pretty(&v).expect("value serializes")
}

/// Config echo used by the binary when it cannot build a report.
pub fn error_json(config: Option<&RunConfig>, err: &CliError) -> Value {
    json!({ "schema": REPORT_SCHEMA, "config": config, "error": err.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let mut c = RunConfig::new(Command::Verify);
        c.algebra = "G2".parse().unwrap();
        c.tol.insert("g_j_invariant".into(), 1e-7);
        c.triple = TripleSpec::Explicit { e: vec![[1.0, 0.0]], h: vec![[0.0, 0.0]], f: vec![[0.0, 1.0]] };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&s).unwrap(), c);
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::new(Command::Verify);
        c.eta = Some(1e-7);
        assert!(matches!(c.validate(), Err(CliError::Usage(_))));
        c.eta = Some(1.0);
        c.t = Some(1.0);
        assert!(c.validate().is_err());
        assert!("Q3".parse::<AlgebraSpec>().is_err());
        assert_eq!(parse_tolerance("a=1e-3").unwrap(), ("a".into(), 1e-3));
        assert!(parse_tolerance("a").is_err());
    }

    #[test]
    fn e8_trials_default() {
        let c = RunConfig::new(Command::Verify);
        assert_eq!(c.trials_for("E8".parse().unwrap()), 25);
        assert_eq!(c.trials_for("E7".parse().unwrap()), 200);
    }

    #[test]
    fn tolerance_override_changes_verdict() {
        let mut c = RunConfig::new(Command::Verify);
        c.algebra = "A1".parse().unwrap();
        c.trials = Some(5);
        assert!(run(&c).unwrap().pass);
        c.tol.insert("g_j_invariant".into(), 1e-300);
        let r = run(&c).unwrap();
        let rec = r.sections[0].checks.get("g_j_invariant").unwrap().clone();
        assert_eq!(rec.pass, rec.max_residual < 1e-300);
    }

    #[test]
    fn lambda_rows() {
        let a3 = LieAlgebra::of_type("A3".parse().unwrap()).unwrap();
        let row = lambda_row(&a3);
        assert_eq!((row.computed, row.published, row.matches), (8, Some(8), true));
        let b3 = LieAlgebra::of_type("B3".parse().unwrap()).unwrap();
        let row = lambda_row(&b3);
        assert_eq!(row.computed, 10);
        assert_eq!(row.published_matrix_size, Some(10));
        assert_eq!(row.published_rank_index, Some(2));
    }
}
