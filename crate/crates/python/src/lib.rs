//! Python bindings: scan or repair a single source text, or a whole project.

use std::collections::BTreeMap;
use std::path::PathBuf;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use leakfix_core::engine::{self, EngineConfig, FrameworkFilter, Mode};
use leakfix_core::patch::{RXJS, RXJS_OPERATORS};
use leakfix_core::scanner::{Fp1Scope, LeakKind};

#[pyclass(frozen, get_all, skip_from_py_object, module = "leakfix")]
#[derive(Clone)]
struct Candidate {
    kind: String,
    line: u32,
    column: u32,
    component: String,
    binding: String,
    status: String,
}

#[pymethods]
impl Candidate {
    fn __repr__(&self) -> String {
        format!("Candidate({} at {}:{} in {}, {})", self.kind, self.line, self.column, self.component, self.status)
    }
}

#[pyclass(frozen, get_all, skip_from_py_object, module = "leakfix")]
#[derive(Clone)]
struct FileReport {
    path: String,
    frameworks: Vec<String>,
    candidates: Vec<Candidate>,
    parse_error: Option<String>,
}

#[pymethods]
impl FileReport {
    #[getter]
    fn repaired(&self) -> usize {
        self.candidates.iter().filter(|c| c.status == "repaired").count()
    }

    fn __repr__(&self) -> String {
        format!("FileReport({:?}, {} candidates)", self.path, self.candidates.len())
    }
}

impl From<&engine::FileReport> for FileReport {
    fn from(f: &engine::FileReport) -> Self {
        Self {
            path: f.path.clone(),
            frameworks: f.framework.iter().map(|k| k.as_str().to_owned()).collect(),
            candidates: f
                .candidates
                .iter()
                .map(|c| Candidate {
                    kind: c.kind.as_str().to_owned(),
                    line: c.line,
                    column: c.column,
                    component: c.component.clone(),
                    binding: c.binding.clone(),
                    status: c.status.as_str().to_owned(),
                })
                .collect(),
            parse_error: f.parse_error.clone(),
        }
    }
}

/// Outcome of `repair_source`: the rewritten text plus its report.
#[pyclass(frozen, get_all, module = "leakfix")]
struct RepairResult {
    text: String,
    changed: bool,
    report: FileReport,
}

#[pyclass(frozen, module = "leakfix")]
struct Report {
    inner: engine::RepairReport,
}

#[pymethods]
impl Report {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        engine::RepairReport::from_json(text)
            .map(|inner| Self { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn files(&self) -> Vec<FileReport> {
        self.inner.files.iter().map(FileReport::from).collect()
    }

    /// `{kind: {"detected": n, "repaired": n, "skipped": n}}`
    #[getter]
    fn totals(&self) -> BTreeMap<&'static str, BTreeMap<&'static str, usize>> {
        self.inner
            .totals
            .iter()
            .map(|(k, t)| {
                (
                    k.as_str(),
                    BTreeMap::from([("detected", t.detected), ("repaired", t.repaired), ("skipped", t.skipped)]),
                )
            })
            .collect()
    }

    #[getter]
    fn errors(&self) -> Vec<(String, String)> {
        self.inner.errors.iter().map(|e| (e.path.clone(), e.message.clone())).collect()
    }

    #[getter]
    fn total_detected(&self) -> usize {
        self.inner.total_detected()
    }

    #[getter]
    fn total_repaired(&self) -> usize {
        self.inner.total_repaired()
    }

    #[getter]
    fn parse_errors(&self) -> usize {
        self.inner.parse_errors()
    }

    fn summary(&self, mode: &str) -> PyResult<String> {
        Ok(engine::render_summary(&self.inner, parse_mode(mode)?, false))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Report({} files, {} detected, {} repaired)",
            self.inner.files.len(),
            self.inner.total_detected(),
            self.inner.total_repaired()
        )
    }
}

fn parse_mode(mode: &str) -> PyResult<Mode> {
    match mode {
        "write" => Ok(Mode::Write),
        "dry-run" | "dry_run" => Ok(Mode::DryRun),
        "check" => Ok(Mode::Check),
        _ => Err(PyValueError::new_err(format!("unknown mode {mode:?}"))),
    }
}

fn apply_options(
    config: &mut EngineConfig,
    patterns: Option<Vec<String>>,
    fp1_scope: &str,
    operator_import: &str,
) -> PyResult<()> {
    if let Some(patterns) = patterns {
        config.enabled_kinds = patterns
            .iter()
            .map(|p| p.parse::<LeakKind>().map_err(|e| PyValueError::new_err(e.to_string())))
            .collect::<PyResult<_>>()?;
    }
    config.fp1_scope = match fp1_scope {
        "angular-only" => Fp1Scope::AngularOnly,
        "all-classes" => Fp1Scope::AllClasses,
        _ => return Err(PyValueError::new_err(format!("unknown fp1 scope {fp1_scope:?}"))),
    };
    config.operator_import_path = match operator_import {
        RXJS | RXJS_OPERATORS => operator_import.to_owned(),
        _ => return Err(PyValueError::new_err(format!("unsupported operator import {operator_import:?}"))),
    };
    Ok(())
}

/// Repair one source text. `path` only selects the dialect (by extension)
/// and labels the report.
#[pyfunction]
#[pyo3(signature = (text, path = "input.tsx", patterns = None, fp1_scope = "angular-only", operator_import = "rxjs"))]
fn repair_source(
    text: &str,
    path: &str,
    patterns: Option<Vec<String>>,
    fp1_scope: &str,
    operator_import: &str,
) -> PyResult<RepairResult> {
    let mut config = EngineConfig::new(".");
    apply_options(&mut config, patterns, fp1_scope, operator_import)?;
    let (new_text, report) = engine::repair_file(text, path, &config);
    Ok(RepairResult { changed: new_text != text, text: new_text, report: FileReport::from(&report) })
}

/// Scan a project tree. Defaults to dry-run; pass `mode="write"` to patch files.
#[pyfunction]
#[pyo3(signature = (
    root, mode = "dry-run", patterns = None, include = None, exclude = None, framework = "auto",
    fp1_scope = "angular-only", operator_import = "rxjs", jobs = None, json_out = None
))]
#[allow(clippy::too_many_arguments)]
fn scan_project(
    py: Python<'_>,
    root: PathBuf,
    mode: &str,
    patterns: Option<Vec<String>>,
    include: Option<Vec<String>>,
    exclude: Option<Vec<String>>,
    framework: &str,
    fp1_scope: &str,
    operator_import: &str,
    jobs: Option<usize>,
    json_out: Option<PathBuf>,
) -> PyResult<Report> {
    let mut config = EngineConfig::new(root);
    config.mode = parse_mode(mode)?;
    apply_options(&mut config, patterns, fp1_scope, operator_import)?;
    if let Some(globs) = include {
        config.include_globs = globs;
    }
    config.exclude_globs.extend(exclude.unwrap_or_default());
    config.framework_filter = match framework {
        "auto" => FrameworkFilter::Auto,
        "react" => FrameworkFilter::React,
        "angular" => FrameworkFilter::Angular,
        _ => return Err(PyValueError::new_err(format!("unknown framework {framework:?}"))),
    };
    config.jobs = jobs.filter(|&n| n > 0);
    config.json_out = json_out;
    let outcome = py.detach(|| engine::scan_project(&config)).map_err(|e| PyOSError::new_err(e.to_string()))?;
    if let Some(path) = &config.json_out {
        std::fs::write(path, outcome.report.to_json()).map_err(|e| PyOSError::new_err(e.to_string()))?;
    }
    Ok(Report { inner: outcome.report })
}

#[pyfunction]
fn leak_kinds() -> Vec<&'static str> {
    LeakKind::ALL.iter().map(|k| k.as_str()).collect()
}

#[pymodule]
fn leakfix(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Candidate>()?;
    m.add_class::<FileReport>()?;
    m.add_class::<RepairResult>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(repair_source, m)?)?;
    m.add_function(wrap_pyfunction!(scan_project, m)?)?;
    m.add_function(wrap_pyfunction!(leak_kinds, m)?)?;
    Ok(())
}
