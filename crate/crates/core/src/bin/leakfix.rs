use std::io::{self, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};

use leakfix_core::engine::{emit_report, scan_project, EngineConfig, FrameworkFilter, Mode};
use leakfix_core::patch::{RXJS, RXJS_OPERATORS};
use leakfix_core::scanner::{Fp1Scope, LeakKind};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Framework {
    Auto,
    React,
    Angular,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Scope {
    AngularOnly,
    AllClasses,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OperatorImport {
    #[value(name = "rxjs")]
    Rxjs,
    #[value(name = "rxjs/operators")]
    RxjsOperators,
}

/// Find and fix subscription, listener, timer and animation-frame leaks in
/// React and Angular components.
///
/// After a write run, execute the project's own test suite to confirm the
/// patches preserve behaviour.
#[derive(Debug, Parser)]
#[command(name = "leakfix", version, group(ArgGroup::new("mode").args(["dry_run", "check"])))]
struct Cli {
    /// Project root to scan.
    #[arg(default_value = ".")]
    root: PathBuf,
    /// Report and optionally diff, but leave files untouched.
    #[arg(long)]
    dry_run: bool,
    /// Like --dry-run; exit 1 when any leak lacks cleanup.
    #[arg(long)]
    check: bool,
    /// Print unified diffs (ignored in write mode).
    #[arg(long)]
    diff: bool,
    /// Write the JSON report to PATH.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Comma-separated patterns to handle: fp1,fp2,fp3a,fp3b,fp4.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    patterns: Option<Vec<LeakKind>>,
    /// Files to scan; replaces the default source globs.
    #[arg(long, value_name = "GLOB")]
    include: Vec<String>,
    /// Extra exclusions on top of node_modules, dist, build and .d.ts.
    #[arg(long, value_name = "GLOB")]
    exclude: Vec<String>,
    #[arg(long, value_enum, default_value = "auto")]
    framework: Framework,
    /// Where subscription fixes apply.
    #[arg(long, value_enum, default_value = "angular-only")]
    fp1_scope: Scope,
    /// Module to import takeUntil from.
    #[arg(long, value_enum, default_value = "rxjs")]
    operator_import: OperatorImport,
    /// Worker threads (1 = sequential).
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
}

impl Cli {
    fn into_config(self) -> EngineConfig {
        let mut config = EngineConfig::new(self.root);
        if !self.include.is_empty() {
            config.include_globs = self.include;
        }
        config.exclude_globs.extend(self.exclude);
        if let Some(kinds) = self.patterns {
            config.enabled_kinds = kinds.into_iter().collect();
        }
        config.framework_filter = match self.framework {
            Framework::Auto => FrameworkFilter::Auto,
            Framework::React => FrameworkFilter::React,
            Framework::Angular => FrameworkFilter::Angular,
        };
        config.fp1_scope = match self.fp1_scope {
            Scope::AngularOnly => Fp1Scope::AngularOnly,
            Scope::AllClasses => Fp1Scope::AllClasses,
        };
        config.operator_import_path = match self.operator_import {
            OperatorImport::Rxjs => RXJS,
            OperatorImport::RxjsOperators => RXJS_OPERATORS,
        }
        .to_owned();
        config.mode = if self.check {
            Mode::Check
        } else if self.dry_run {
            Mode::DryRun
        } else {
            Mode::Write
        };
        config.emit_diff = self.diff;
        config.json_out = self.json;
        config.jobs = self.jobs.filter(|&n| n > 0);
        config
    }
}

fn main() -> ExitCode {
    let config = Cli::parse().into_config();
    let color = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && io::stdout().is_terminal();
    let outcome = match scan_project(&config) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("leakfix: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit_report(&outcome, &config, color, &mut io::stdout().lock(), &mut io::stderr().lock()) {
        eprintln!("leakfix: {e}");
        return ExitCode::from(2);
    }
    if config.mode == Mode::Check && outcome.missing > 0 {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
