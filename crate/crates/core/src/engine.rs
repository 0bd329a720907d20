//! Project orchestration: discover files, run parse → detect → scan → plan →
//! apply per file, write results and build the report.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use globset::{Glob, GlobSet, GlobSetBuilder};
use oxc_allocator::Allocator;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::detector::{detect_components, ComponentKind, FrameworkComponent};
use crate::patch::{plan_file, PatchOptions, SkipReason, RXJS};
use crate::scanner::{scan_component, Cleanup, Fp1Scope, LeakCandidate, LeakKind, ScanOptions};
use crate::source_model::{apply_edits, parse, unified_diff, EditSet, SourceDialect};

pub const DEFAULT_INCLUDE: &[&str] = &["**/*.{js,jsx,ts,tsx}"];
pub const DEFAULT_EXCLUDE: &[&str] = &["**/node_modules/**", "**/dist/**", "**/build/**", "**/*.d.ts"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Write,
    DryRun,
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameworkFilter {
    #[default]
    Auto,
    React,
    Angular,
}

impl FrameworkFilter {
    fn admits(self, kind: ComponentKind) -> bool {
        match self {
            Self::Auto => true,
            Self::React => kind != ComponentKind::AngularClass,
            Self::Angular => kind == ComponentKind::AngularClass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub root: PathBuf,
    pub include_globs: Vec<String>,
    pub exclude_globs: Vec<String>,
    pub enabled_kinds: BTreeSet<LeakKind>,
    pub framework_filter: FrameworkFilter,
    pub fp1_scope: Fp1Scope,
    pub operator_import_path: String,
    pub mode: Mode,
    pub emit_diff: bool,
    pub json_out: Option<PathBuf>,
    /// Worker threads; `None` uses the rayon default, `Some(1)` runs inline.
    pub jobs: Option<usize>,
}

impl EngineConfig {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self {
            root: root.into(),
            include_globs: DEFAULT_INCLUDE.iter().map(|s| s.to_string()).collect(),
            exclude_globs: DEFAULT_EXCLUDE.iter().map(|s| s.to_string()).collect(),
            enabled_kinds: LeakKind::ALL.into_iter().collect(),
            framework_filter: FrameworkFilter::Auto,
            fp1_scope: Fp1Scope::AngularOnly,
            operator_import_path: RXJS.to_owned(),
            mode: Mode::Write,
            emit_diff: false,
            json_out: None,
            jobs: None,
        }
    }

    fn scan_options(&self) -> ScanOptions {
        ScanOptions { enabled: self.enabled_kinds.clone(), fp1_scope: self.fp1_scope }
    }

    fn patch_options(&self) -> PatchOptions {
        PatchOptions { operator_module: self.operator_import_path.clone(), ..PatchOptions::default() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("root {0} is not a directory")]
    BadRoot(PathBuf),
    #[error("invalid glob `{pattern}`: {message}")]
    BadGlob { pattern: String, message: String },
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateStatus {
    Repaired,
    SkippedExistingCleanup,
    ReportedOnly,
    SkippedOverlap,
}

impl CandidateStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Repaired => "repaired",
            Self::SkippedExistingCleanup => "skipped_existing_cleanup",
            Self::ReportedOnly => "reported_only",
            Self::SkippedOverlap => "skipped_overlap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub kind: LeakKind,
    pub line: u32,
    pub column: u32,
    pub component: String,
    /// Handle binding name, `-` when the result is discarded.
    pub binding: String,
    pub status: CandidateStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FileReport {
    pub path: String,
    pub framework: Vec<ComponentKind>,
    pub candidates: Vec<CandidateReport>,
    pub parse_error: Option<String>,
}

impl FileReport {
    pub fn repaired(&self) -> usize {
        self.candidates.iter().filter(|c| c.status == CandidateStatus::Repaired).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct KindTotals {
    pub detected: usize,
    pub repaired: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportError {
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairReport {
    pub version: u32,
    pub root: String,
    pub files: Vec<FileReport>,
    pub totals: BTreeMap<LeakKind, KindTotals>,
    pub errors: Vec<ReportError>,
}

impl RepairReport {
    pub fn new(root: impl Into<String>) -> Self {
        Self {
            version: 1,
            root: root.into(),
            files: Vec::new(),
            totals: LeakKind::ALL.into_iter().map(|k| (k, KindTotals::default())).collect(),
            errors: Vec::new(),
        }
    }

    pub fn add_file(&mut self, file: FileReport) {
        for c in &file.candidates {
            let t = self.totals.entry(c.kind).or_default();
            t.detected += 1;
            if c.status == CandidateStatus::Repaired {
                t.repaired += 1;
            } else {
                t.skipped += 1;
            }
        }
        self.files.push(file);
    }

    pub fn total_repaired(&self) -> usize {
        self.totals.values().map(|t| t.repaired).sum()
    }

    pub fn total_detected(&self) -> usize {
        self.totals.values().map(|t| t.detected).sum()
    }

    pub fn parse_errors(&self) -> usize {
        self.files.iter().filter(|f| f.parse_error.is_some()).count()
    }

    /// Pretty JSON with keys in declaration order and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report is always serializable");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Everything produced for one file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileRepair {
    pub new_text: String,
    pub report: FileReport,
    /// The applied edits; empty when nothing changed.
    pub edits: EditSet,
    /// Missing candidates, whether or not they were repaired.
    pub missing: usize,
    /// Internal failure that forced the file to stay unchanged.
    pub error: Option<String>,
}

pub fn repair_file(text: &str, path: &str, config: &EngineConfig) -> (String, FileReport) {
    let repair = repair_file_detailed(text, path, config);
    (repair.new_text, repair.report)
}

pub fn repair_file_detailed(text: &str, path: &str, config: &EngineConfig) -> FileRepair {
    let dialect = SourceDialect::from_path(path).unwrap_or(SourceDialect::Plain);
    let mut report = FileReport { path: path.to_owned(), ..FileReport::default() };
    let unchanged = |report: FileReport, missing, error| FileRepair {
        new_text: text.to_owned(),
        report,
        edits: EditSet::new(),
        missing,
        error,
    };
    let allocator = Allocator::default();
    let tree = match parse(&allocator, text, dialect) {
        Ok(tree) => tree,
        Err(e) => {
            report.parse_error = Some(e.to_string());
            return unchanged(report, 0, None);
        }
    };
    let components: Vec<FrameworkComponent> =
        detect_components(&tree).into_iter().filter(|c| config.framework_filter.admits(c.kind)).collect();
    let kinds: BTreeSet<ComponentKind> = components.iter().map(|c| c.kind).collect();
    report.framework = kinds.into_iter().collect();
    let scan = config.scan_options();
    let mut candidates: Vec<LeakCandidate> = components.iter().flat_map(|c| scan_component(&tree, c, &scan)).collect();
    candidates.sort_by_key(|c| (c.site.call_span.start, c.site.call));
    let missing = candidates.iter().filter(|c| c.cleanup == Cleanup::Missing).count();
    let plan = plan_file(&tree, &components, &candidates, &config.patch_options());

    let status_of = |cand: &LeakCandidate| match &cand.cleanup {
        Cleanup::Present(_) => CandidateStatus::SkippedExistingCleanup,
        Cleanup::Unrepairable(_) => CandidateStatus::ReportedOnly,
        Cleanup::Missing if plan.repaired.iter().any(|r| r.site.call == cand.site.call) => CandidateStatus::Repaired,
        Cleanup::Missing => match plan.skipped.iter().find(|s| s.candidate.site.call == cand.site.call) {
            Some(s) if s.reason == SkipReason::Overlap => CandidateStatus::SkippedOverlap,
            _ => CandidateStatus::ReportedOnly,
        },
    };
    report.candidates = candidates
        .iter()
        .map(|c| CandidateReport {
            kind: c.site.leak_kind,
            line: c.site.call_span.line,
            column: c.site.call_span.column,
            component: c.component.clone(),
            binding: c.site.binding.name().unwrap_or("-").to_owned(),
            status: status_of(c),
        })
        .collect();
    if plan.edits.is_empty() {
        return unchanged(report, missing, None);
    }

    let failure = match apply_edits(text, &plan.edits) {
        Ok(new_text) => {
            let check = Allocator::default();
            match parse(&check, &new_text, dialect) {
                Ok(_) => return FileRepair { new_text, report, edits: plan.edits, missing, error: None },
                Err(e) => format!("patched output does not parse ({e}); file left unchanged"),
            }
        }
        Err(e) => format!("{e}; file left unchanged"),
    };
    for c in &mut report.candidates {
        if c.status == CandidateStatus::Repaired {
            c.status = CandidateStatus::ReportedOnly;
        }
    }
    unchanged(report, missing, Some(failure))
}

/// Result of a project run beyond the report itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectOutcome {
    pub report: RepairReport,
    /// (path, unified diff) for changed files when diffs were requested.
    pub diffs: Vec<(String, String)>,
    /// Candidates lacking cleanup, repaired or not.
    pub missing: usize,
}

fn glob_set(patterns: &[String]) -> Result<GlobSet, EngineError> {
    let mut builder = GlobSetBuilder::new();
    for p in patterns {
        let glob = Glob::new(p).map_err(|e| EngineError::BadGlob { pattern: p.clone(), message: e.to_string() })?;
        builder.add(glob);
    }
    builder.build().map_err(|e| EngineError::BadGlob { pattern: patterns.join(","), message: e.to_string() })
}

/// Project-relative paths of matching files, lexicographically ordered.
pub fn discover_files(config: &EngineConfig) -> Result<Vec<String>, EngineError> {
    if !config.root.is_dir() {
        return Err(EngineError::BadRoot(config.root.clone()));
    }
    let include = glob_set(&config.include_globs)?;
    let exclude = glob_set(&config.exclude_globs)?;
    let excluded_dirs: Vec<String> =
        config.exclude_globs.iter().filter_map(|g| g.strip_suffix("/**").map(str::to_owned)).collect();
    let exclude_dirs = glob_set(&excluded_dirs)?;
    let mut files: Vec<String> = walkdir::WalkDir::new(&config.root)
        .follow_links(false)
        .into_iter()
        .filter_entry(|e| {
            if e.depth() == 0 || !e.file_type().is_dir() {
                return true;
            }
            !exclude_dirs.is_match(relative(&config.root, e.path()))
        })
        .filter_map(Result::ok)
        .filter(|e| e.file_type().is_file())
        .map(|e| relative(&config.root, e.path()))
        .filter(|rel| include.is_match(rel) && !exclude.is_match(rel))
        .collect();
    files.sort();
    Ok(files)
}

fn relative(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    rel.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/")
}

struct FileOutcome {
    report: FileReport,
    errors: Vec<ReportError>,
    diff: Option<String>,
    missing: usize,
}

fn process_file(config: &EngineConfig, rel: String) -> Result<FileOutcome, ReportError> {
    let full = config.root.join(&rel);
    let bytes = fs::read(&full).map_err(|e| ReportError { path: rel.clone(), message: e.to_string() })?;
    let text = String::from_utf8(bytes)
        .map_err(|_| ReportError { path: rel.clone(), message: "file is not valid UTF-8".to_owned() })?;
    let repair = repair_file_detailed(&text, &rel, config);
    let mut errors = Vec::new();
    if let Some(message) = &repair.error {
        errors.push(ReportError { path: rel.clone(), message: message.clone() });
    }
    let changed = repair.new_text != text;
    let mut diff = None;
    if changed {
        match config.mode {
            Mode::Write => {
                if let Err(e) = write_atomically(&full, &repair.new_text) {
                    errors.push(ReportError { path: rel.clone(), message: format!("write failed: {e}") });
                }
            }
            _ if config.emit_diff => diff = Some(unified_diff(&text, &repair.new_text, &rel)),
            _ => {}
        }
    }
    Ok(FileOutcome { report: repair.report, errors, diff, missing: repair.missing })
}

/// Replace `path` through a sibling temp file so readers never see a
/// partially written source file.
pub fn write_atomically(path: &Path, contents: &str) -> io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    if let Ok(meta) = fs::metadata(path) {
        let _ = fs::set_permissions(tmp.path(), meta.permissions());
    }
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn scan_project(config: &EngineConfig) -> Result<ProjectOutcome, EngineError> {
    let files = discover_files(config)?;
    let run = |files: Vec<String>| -> Vec<Result<FileOutcome, ReportError>> {
        files.into_par_iter().map(|rel| process_file(config, rel)).collect()
    };
    let results = match config.jobs {
        Some(1) => files.into_iter().map(|rel| process_file(config, rel)).collect(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| EngineError::Pool(e.to_string()))?
            .install(|| run(files)),
        None => run(files),
    };
    let mut report = RepairReport::new(config.root.display().to_string());
    let mut diffs = Vec::new();
    let mut missing = 0;
    for result in results {
        match result {
            Ok(outcome) => {
                if let Some(d) = outcome.diff {
                    diffs.push((outcome.report.path.clone(), d));
                }
                missing += outcome.missing;
                report.errors.extend(outcome.errors);
                report.add_file(outcome.report);
            }
            Err(e) => report.errors.push(e),
        }
    }
    Ok(ProjectOutcome { report, diffs, missing })
}

/// Human-readable summary: one line per repaired file, then per-kind totals.
pub fn render_summary(report: &RepairReport, mode: Mode, color: bool) -> String {
    let paint = |code: &str, s: &str| if color { format!("\x1b[{code}m{s}\x1b[0m") } else { s.to_owned() };
    let verb = match mode {
        Mode::Write => "repaired",
        Mode::DryRun | Mode::Check => "would repair",
    };
    let mut out = String::new();
    for file in report.files.iter().filter(|f| f.repaired() > 0) {
        let n = file.repaired();
        out.push_str(&format!("{} {} ({n} fix{})\n", paint("32", verb), file.path, if n == 1 { "" } else { "es" }));
    }
    out.push_str(&format!("\n{:<20}{:>10}{:>10}{:>10}\n", "pattern", "detected", "repaired", "skipped"));
    for (kind, t) in &report.totals {
        out.push_str(&format!("{:<20}{:>10}{:>10}{:>10}\n", kind.as_str(), t.detected, t.repaired, t.skipped));
    }
    let parse_errors = report.parse_errors();
    out.push_str(&format!(
        "\n{} files scanned, {} detected, {} repaired",
        report.files.len(),
        report.total_detected(),
        report.total_repaired()
    ));
    if parse_errors > 0 {
        out.push_str(&format!(", {}", paint("33", &format!("{parse_errors} parse error(s)"))));
    }
    out.push('\n');
    out
}

/// Print the summary (and diffs outside write mode) to `out`, parse and IO
/// errors to `err`, and write the JSON report when configured.
pub fn emit_report(
    outcome: &ProjectOutcome,
    config: &EngineConfig,
    color: bool,
    out: &mut dyn io::Write,
    err: &mut dyn io::Write,
) -> Result<(), EngineError> {
    let report = &outcome.report;
    if config.emit_diff && config.mode != Mode::Write {
        for (_, diff) in &outcome.diffs {
            let _ = out.write_all(diff.as_bytes());
        }
    }
    let _ = out.write_all(render_summary(report, config.mode, color).as_bytes());
    for file in &report.files {
        if let Some(e) = &file.parse_error {
            let _ = writeln!(err, "parse error {}: {e}", file.path);
        }
    }
    for e in &report.errors {
        let _ = writeln!(err, "error {}: {}", e.path, e.message);
    }
    if let Some(path) = &config.json_out {
        fs::write(path, report.to_json()).map_err(|source| EngineError::Output { path: path.clone(), source })?;
    }
    Ok(())
}
