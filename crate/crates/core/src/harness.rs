//! Labeled fixture corpus and the structural checks run over it: label
//! matching, golden outputs, idempotence and reparse validity.
//!
//! Layout: `<root>/<kind>/<framework>/<case>/{input.<ext>, expected.<ext>, meta.json}`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use oxc_allocator::Allocator;
use serde::{Deserialize, Serialize};

use crate::detector::ComponentKind;
use crate::engine::{discover_files, repair_file, repair_file_detailed, CandidateStatus, EngineConfig};
use crate::scanner::LeakKind;
use crate::source_model::{parse, EditSet, SourceDialect};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseLabel {
    pub kind: LeakKind,
    pub line: u32,
    pub status: CandidateStatus,
}

/// Contents of `meta.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseMeta {
    pub id: String,
    pub kinds: Vec<LeakKind>,
    pub framework: ComponentKind,
    pub labels: Vec<CaseLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusCase {
    pub id: String,
    pub leak_kinds: Vec<LeakKind>,
    pub framework: ComponentKind,
    pub input_path: PathBuf,
    pub expected_path: PathBuf,
    pub labels: Vec<CaseLabel>,
}

impl CorpusCase {
    /// No label asks for a repair, so the golden output is the input.
    pub fn is_clean(&self) -> bool {
        self.labels.iter().all(|l| l.status != CandidateStatus::Repaired)
    }

    /// File name the engine sees; only the extension matters.
    pub fn display_path(&self) -> String {
        self.input_path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct KindMetrics {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

impl KindMetrics {
    /// Vacuous ratios count as 1.
    pub fn precision(&self) -> f64 {
        ratio(self.true_positives, self.true_positives + self.false_positives)
    }

    pub fn recall(&self) -> f64 {
        ratio(self.true_positives, self.true_positives + self.false_negatives)
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CorpusMetrics {
    pub cases: usize,
    pub per_kind: BTreeMap<LeakKind, KindMetrics>,
    pub golden_mismatches: Vec<String>,
    pub idempotence_failures: Vec<String>,
    pub reparse_failures: Vec<String>,
    /// Malformed fixtures; never counted against the tool.
    pub harness_errors: Vec<String>,
}

impl CorpusMetrics {
    pub fn all_pass(&self) -> bool {
        self.harness_errors.is_empty()
            && self.golden_mismatches.is_empty()
            && self.idempotence_failures.is_empty()
            && self.reparse_failures.is_empty()
            && self.per_kind.values().all(|m| m.false_positives == 0 && m.false_negatives == 0)
    }
}

/// Cases sorted by directory path, plus descriptions of malformed ones.
pub fn load_corpus(root: &Path) -> (Vec<CorpusCase>, Vec<String>) {
    let mut cases = Vec::new();
    let mut errors = Vec::new();
    let mut metas: Vec<PathBuf> = walkdir::WalkDir::new(root)
        .into_iter()
        .filter_map(Result::ok)
        .filter(|e| e.file_name() == "meta.json")
        .map(|e| e.into_path())
        .collect();
    metas.sort();
    for meta_path in metas {
        match load_case(&meta_path) {
            Ok(case) => cases.push(case),
            Err(e) => errors.push(format!("{}: {e}", meta_path.display())),
        }
    }
    (cases, errors)
}

fn load_case(meta_path: &Path) -> Result<CorpusCase, String> {
    let dir = meta_path.parent().ok_or("meta.json has no parent directory")?;
    let meta: CaseMeta = serde_json::from_str(&fs::read_to_string(meta_path).map_err(|e| e.to_string())?)
        .map_err(|e| format!("bad meta.json: {e}"))?;
    let find = |stem: &str| -> Result<PathBuf, String> {
        let mut found: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(|e| e.to_string())?
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.file_stem().is_some_and(|s| s == stem) && SourceDialect::from_path(p).is_some())
            .collect();
        match found.len() {
            1 => Ok(found.remove(0)),
            0 => Err(format!("missing {stem}.<ext>")),
            _ => Err(format!("several {stem}.<ext> files")),
        }
    };
    let input_path = find("input")?;
    let expected_path = find("expected")?;
    if input_path.extension() != expected_path.extension() {
        return Err("input and expected extensions differ".into());
    }
    Ok(CorpusCase {
        id: meta.id,
        leak_kinds: meta.kinds,
        framework: meta.framework,
        input_path,
        expected_path,
        labels: meta.labels,
    })
}

/// Detailed outcome for one case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub id: String,
    pub input: String,
    pub output: String,
    pub expected: String,
    pub edits: EditSet,
    pub found: Vec<CaseLabel>,
    pub repaired: usize,
    pub second_output: String,
    pub second_repaired: usize,
    pub reparses: bool,
}

pub fn run_case(case: &CorpusCase, config: &EngineConfig) -> Result<CaseResult, String> {
    let input = fs::read_to_string(&case.input_path).map_err(|e| format!("{}: {e}", case.id))?;
    let expected = fs::read_to_string(&case.expected_path).map_err(|e| format!("{}: {e}", case.id))?;
    let path = case.display_path();
    let first = repair_file_detailed(&input, &path, config);
    if let Some(e) = &first.report.parse_error {
        return Err(format!("{}: input does not parse: {e}", case.id));
    }
    let found =
        first.report.candidates.iter().map(|c| CaseLabel { kind: c.kind, line: c.line, status: c.status }).collect();
    let second = repair_file_detailed(&first.new_text, &path, config);
    let dialect = SourceDialect::from_path(&path).unwrap_or(SourceDialect::Plain);
    let alloc = Allocator::default();
    let reparses = parse(&alloc, &first.new_text, dialect).is_ok();
    Ok(CaseResult {
        id: case.id.clone(),
        repaired: first.report.repaired(),
        second_repaired: second.report.repaired(),
        second_output: second.new_text,
        output: first.new_text,
        edits: first.edits,
        input,
        expected,
        found,
        reparses,
    })
}

pub fn run_corpus(root: &Path) -> CorpusMetrics {
    run_corpus_with(root, &EngineConfig::new(root))
}

pub fn run_corpus_with(root: &Path, config: &EngineConfig) -> CorpusMetrics {
    let (cases, errors) = load_corpus(root);
    evaluate(&cases, config, errors)
}

/// Metrics for an explicit case list (e.g. a filtered sub-corpus).
pub fn evaluate(cases: &[CorpusCase], config: &EngineConfig, harness_errors: Vec<String>) -> CorpusMetrics {
    let mut metrics = CorpusMetrics {
        per_kind: LeakKind::ALL.into_iter().map(|k| (k, KindMetrics::default())).collect(),
        harness_errors,
        ..CorpusMetrics::default()
    };
    for case in cases {
        let result = match run_case(case, config) {
            Ok(r) => r,
            Err(e) => {
                metrics.harness_errors.push(e);
                continue;
            }
        };
        metrics.cases += 1;
        let mut unmatched: Vec<CaseLabel> = case.labels.clone();
        for found in &result.found {
            let m = metrics.per_kind.entry(found.kind).or_default();
            match unmatched.iter().position(|l| l == found) {
                Some(i) => {
                    unmatched.swap_remove(i);
                    m.true_positives += 1;
                }
                None => m.false_positives += 1,
            }
        }
        for label in unmatched {
            metrics.per_kind.entry(label.kind).or_default().false_negatives += 1;
        }
        if result.output != result.expected {
            metrics.golden_mismatches.push(case.id.clone());
        }
        if result.second_output != result.output || result.second_repaired != 0 {
            metrics.idempotence_failures.push(case.id.clone());
        }
        if !result.reparses {
            metrics.reparse_failures.push(case.id.clone());
        }
    }
    metrics
}

/// True iff repairing the already-repaired project changes no bytes.
/// Works in memory; the project on disk is not modified.
pub fn check_idempotence(project_root: &Path, config: &EngineConfig) -> bool {
    check_idempotence_with(project_root, config, |text, path, config| repair_file(text, path, config).0)
}

pub fn check_idempotence_with(
    project_root: &Path,
    config: &EngineConfig,
    repair: impl Fn(&str, &str, &EngineConfig) -> String,
) -> bool {
    let mut config = config.clone();
    config.root = project_root.to_path_buf();
    let Ok(files) = discover_files(&config) else { return false };
    files.iter().all(|rel| {
        let Ok(text) = fs::read_to_string(project_root.join(rel)) else { return true };
        let once = repair(&text, rel, &config);
        repair(&once, rel, &config) == once
    })
}

pub fn summarize(metrics: &CorpusMetrics) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:<20}{:>5}{:>5}{:>5}{:>11}{:>8}\n", "pattern", "tp", "fp", "fn", "precision", "recall"));
    for (kind, m) in &metrics.per_kind {
        if m.true_positives + m.false_positives + m.false_negatives == 0 {
            continue;
        }
        out.push_str(&format!(
            "{:<20}{:>5}{:>5}{:>5}{:>11.2}{:>8.2}\n",
            kind.as_str(),
            m.true_positives,
            m.false_positives,
            m.false_negatives,
            m.precision(),
            m.recall()
        ));
    }
    let verdict = |failures: &[String]| {
        if failures.is_empty() {
            "pass".to_owned()
        } else {
            format!("FAIL ({})", failures.join(", "))
        }
    };
    out.push_str(&format!("\ncases: {}\n", metrics.cases));
    out.push_str(&format!("golden outputs: {}\n", verdict(&metrics.golden_mismatches)));
    out.push_str(&format!("idempotence: {}\n", verdict(&metrics.idempotence_failures)));
    out.push_str(&format!("reparse: {}\n", verdict(&metrics.reparse_failures)));
    if !metrics.harness_errors.is_empty() {
        out.push_str(&format!("harness errors: {}\n", metrics.harness_errors.join("; ")));
    }
    out
}

/// Whether `after` equals `before` with `edits` applied and nothing else:
/// every byte outside the edited ranges is carried over unchanged.
pub fn locality_holds(before: &str, after: &str, edits: &EditSet) -> bool {
    let mut cursor_in = 0;
    let mut cursor_out = 0;
    for edit in edits.sorted() {
        let kept = &before[cursor_in..edit.start];
        if after.get(cursor_out..cursor_out + kept.len()) != Some(kept) {
            return false;
        }
        cursor_out += kept.len();
        if after.get(cursor_out..cursor_out + edit.replacement.len()) != Some(edit.replacement.as_str()) {
            return false;
        }
        cursor_out += edit.replacement.len();
        cursor_in = edit.end;
    }
    after.get(cursor_out..) == Some(&before[cursor_in..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_passes_vacuously() {
        let dir = tempfile::tempdir().unwrap();
        let metrics = run_corpus(dir.path());
        assert_eq!(metrics.cases, 0);
        assert!(metrics.all_pass());
        let table = summarize(&metrics);
        assert_eq!(table.lines().count(), 1 + 1 + 4);
        assert!(table.contains("golden outputs: pass"));
    }

    #[test]
    fn planted_false_positive_lowers_one_precision() {
        let mut metrics = CorpusMetrics::default();
        metrics
            .per_kind
            .insert(LeakKind::Timeout, KindMetrics { true_positives: 3, false_positives: 1, false_negatives: 0 });
        metrics.per_kind.insert(LeakKind::Interval, KindMetrics { true_positives: 2, ..KindMetrics::default() });
        assert_eq!(metrics.per_kind[&LeakKind::Timeout].precision(), 0.75);
        assert_eq!(metrics.per_kind[&LeakKind::Interval].precision(), 1.0);
        let table = summarize(&metrics);
        let row = |name: &str| {
            table
                .lines()
                .find(|l| l.starts_with(name))
                .unwrap()
                .split_whitespace()
                .map(str::to_owned)
                .collect::<Vec<_>>()
        };
        assert_eq!(row("FP3a_Timeout")[4..], ["0.75", "1.00"]);
        assert_eq!(row("FP3b_Interval")[4..], ["1.00", "1.00"]);
    }

    #[test]
    fn locality_detects_stray_changes() {
        let edits = EditSet::from(vec![crate::source_model::Edit::insert(1, "X")]);
        assert!(locality_holds("ab", "aXb", &edits));
        assert!(!locality_holds("ab", "aXc", &edits));
        assert!(!locality_holds("ab", "aXbb", &edits));
    }
}
