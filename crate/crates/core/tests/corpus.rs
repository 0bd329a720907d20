use std::fs;
use std::path::{Path, PathBuf};

use leakfix_core::engine::{repair_file, CandidateStatus, EngineConfig};
use leakfix_core::harness::{check_idempotence, check_idempotence_with, load_corpus, run_corpus, summarize, CaseMeta};
use leakfix_core::scanner::LeakKind;

fn corpus_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn fixture_project() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/project")
}

#[test]
fn shipped_corpus_matches_labels_and_goldens() {
    let metrics = run_corpus(&corpus_root());
    assert!(metrics.cases >= 40, "only {} cases", metrics.cases);
    assert!(metrics.all_pass(), "{}", summarize(&metrics));
    for m in metrics.per_kind.values() {
        assert_eq!((m.precision(), m.recall()), (1.0, 1.0));
    }
}

#[test]
fn corpus_metrics_are_deterministic() {
    assert_eq!(run_corpus(&corpus_root()), run_corpus(&corpus_root()));
}

#[test]
fn every_case_declares_its_framework_directory() {
    let (cases, errors) = load_corpus(&corpus_root());
    assert!(errors.is_empty(), "{errors:?}");
    for case in cases {
        let dir =
            case.input_path.parent().unwrap().parent().unwrap().file_name().unwrap().to_string_lossy().into_owned();
        let expected = match case.framework {
            leakfix_core::detector::ComponentKind::ReactClass => "react-class",
            leakfix_core::detector::ComponentKind::ReactFunction => "react-function",
            leakfix_core::detector::ComponentKind::AngularClass => "angular",
        };
        assert_eq!(dir, expected, "{}", case.id);
    }
}

fn copy_case(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), to.join(entry.file_name())).unwrap();
    }
}

#[test]
fn mislabeled_case_yields_exactly_one_false_negative() {
    let dir = tempfile::tempdir().unwrap();
    let case_dir = dir.path().join("fp3a/react-class/bare-timeout");
    copy_case(&corpus_root().join("fp3a/react-class/bare-timeout"), &case_dir);
    copy_case(&corpus_root().join("fp2/react-class/hashchange"), &dir.path().join("fp2/react-class/hashchange"));

    let meta_path = case_dir.join("meta.json");
    let mut meta: CaseMeta = serde_json::from_str(&fs::read_to_string(&meta_path).unwrap()).unwrap();
    meta.labels[0].line += 40;
    fs::write(&meta_path, serde_json::to_string_pretty(&meta).unwrap()).unwrap();

    let metrics = run_corpus(dir.path());
    let timeout = metrics.per_kind[&LeakKind::Timeout];
    assert_eq!(timeout.false_negatives, 1);
    assert_eq!(timeout.false_positives, 1);
    let total_fn: usize = metrics.per_kind.values().map(|m| m.false_negatives).sum();
    assert_eq!(total_fn, 1);
    assert!(metrics.golden_mismatches.is_empty());
}

#[test]
fn malformed_fixture_is_a_harness_error_not_a_tool_failure() {
    let dir = tempfile::tempdir().unwrap();
    let case_dir = dir.path().join("fp4/angular/broken");
    fs::create_dir_all(&case_dir).unwrap();
    fs::write(case_dir.join("meta.json"), "{ not json").unwrap();
    fs::write(case_dir.join("input.ts"), "").unwrap();
    let metrics = run_corpus(dir.path());
    assert_eq!(metrics.harness_errors.len(), 1);
    assert_eq!(metrics.cases, 0);
    assert!(metrics.per_kind.values().all(|m| m.false_positives + m.false_negatives == 0));
    assert!(!metrics.all_pass());
}

#[test]
fn fixture_project_is_idempotent() {
    assert!(check_idempotence(&fixture_project(), &EngineConfig::new(fixture_project())));
}

#[test]
fn double_patching_repair_is_caught() {
    // Appends a second cleanup on every pass, as a naive template would.
    let broken = |text: &str, path: &str, config: &EngineConfig| {
        let (out, report) = repair_file(text, path, config);
        if report.candidates.iter().any(|c| c.status != CandidateStatus::ReportedOnly) {
            format!("{out}// cleanup\n")
        } else {
            out
        }
    };
    let project = fixture_project();
    assert!(!check_idempotence_with(&project, &EngineConfig::new(&project), broken));
}
