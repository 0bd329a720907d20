use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use leakfix_core::engine::RepairReport;

fn leakfix(args: &[&str], root: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leakfix")).args(args).arg(root).env("NO_COLOR", "1").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const HASH_ROUTER: &str = "\
import React from 'react';

class HashRouter extends React.Component {
  componentDidMount() {
    window.addEventListener('hashchange', this.onHashChange);
  }

  onHashChange = () => this.setState({ hash: window.location.hash });
}
";

const CLEAN_TIMER: &str = "\
import { useEffect } from 'react';

export function Beep() {
  useEffect(() => {
    const id = setTimeout(() => console.log('beep'), 10);
    return () => clearTimeout(id);
  }, []);
  return null;
}
";

fn project(files: &[(&str, &str)]) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (rel, text) in files {
        let path = dir.path().join(rel);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(path, text).unwrap();
    }
    dir
}

#[test]
fn empty_directory_reports_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = leakfix(&[], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 repaired"));
    assert!(!stdout(&out).contains("repaired src"));
}

#[test]
fn write_mode_patches_once() {
    let dir = project(&[("src/HashRouter.jsx", HASH_ROUTER)]);
    let first = leakfix(&[], dir.path());
    assert!(first.status.success());
    assert!(stdout(&first).contains("repaired src/HashRouter.jsx"));
    let patched = fs::read_to_string(dir.path().join("src/HashRouter.jsx")).unwrap();
    assert!(patched.contains(
        "  componentWillUnmount() {\n    window.removeEventListener('hashchange', this.onHashChange);\n  }\n"
    ));

    let second = leakfix(&[], dir.path());
    assert!(stdout(&second).contains("1 detected, 0 repaired"), "{}", stdout(&second));
    assert_eq!(fs::read_to_string(dir.path().join("src/HashRouter.jsx")).unwrap(), patched);
}

#[test]
fn dry_run_prints_diff_without_touching_files() {
    let dir = project(&[("src/HashRouter.jsx", HASH_ROUTER)]);
    let out = leakfix(&["--dry-run", "--diff"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("+++ b/src/HashRouter.jsx"));
    assert!(text.contains("+    window.removeEventListener('hashchange', this.onHashChange);"));
    assert!(text.contains("would repair"));
    assert_eq!(fs::read_to_string(dir.path().join("src/HashRouter.jsx")).unwrap(), HASH_ROUTER);
}

#[test]
fn check_mode_exit_status_tracks_missing_cleanup() {
    let leaky = project(&[("a/HashRouter.jsx", HASH_ROUTER), ("b/Beep.jsx", CLEAN_TIMER)]);
    assert_eq!(leakfix(&["--check"], leaky.path()).status.code(), Some(1));
    let clean = project(&[("b/Beep.jsx", CLEAN_TIMER)]);
    assert_eq!(leakfix(&["--check"], clean.path()).status.code(), Some(0));
    assert_eq!(fs::read_to_string(leaky.path().join("a/HashRouter.jsx")).unwrap(), HASH_ROUTER);
}

#[test]
fn json_report_and_pattern_filter() {
    let dir = project(&[("HashRouter.jsx", HASH_ROUTER), ("Beep.jsx", CLEAN_TIMER)]);
    let json = dir.path().join("out/report.json");
    fs::create_dir_all(json.parent().unwrap()).unwrap();
    let out = leakfix(&["--dry-run", "--patterns", "fp3a", "--json", json.to_str().unwrap()], dir.path());
    assert!(out.status.success());
    let report = RepairReport::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.files.iter().map(|f| f.path.as_str()).collect::<Vec<_>>(), ["Beep.jsx", "HashRouter.jsx"]);
    assert_eq!(report.total_detected(), 1);
    assert_eq!(report.total_repaired(), 0);
}

#[test]
fn operator_import_path_is_configurable() {
    let src = "\
import { Component, OnInit } from '@angular/core';
import { map } from 'rxjs/operators';

@Component({ selector: 'app-x', template: '' })
export class XComponent implements OnInit {
  ngOnInit() {
    this.svc.value$.pipe(map(v => v + 1)).subscribe(v => (this.v = v));
  }
}
";
    let dir = project(&[("x.component.ts", src)]);
    let out = leakfix(&["--operator-import", "rxjs/operators"], dir.path());
    assert!(out.status.success());
    let patched = fs::read_to_string(dir.path().join("x.component.ts")).unwrap();
    assert!(patched.contains("import { map, takeUntil } from 'rxjs/operators';"), "{patched}");
    assert!(patched.contains("import { Subject } from 'rxjs';"), "{patched}");
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(leakfix(&["--patterns", "fp9"], dir.path()).status.code(), Some(2));
    assert_eq!(leakfix(&["--dry-run", "--check"], dir.path()).status.code(), Some(2));
}
