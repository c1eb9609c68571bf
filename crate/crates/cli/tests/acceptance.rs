//! Process-level acceptance checks: determinism of reports, the full
//! default suite inside its time budget, and the exit-code contract
//! (0 pass, 1 relation failure, 2 usage or parse problem, 3 abort).

use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use triq::measurement::{random_rank1_povm, OrthonormalBasis};
use triq::measures::ghz;
use triq::operator::random_pure_state;
use triq::{C64, CMat, DensityOperator, DimsProfile};

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triq"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn a09_same_seed_gives_byte_identical_reports() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let args = ["--suite", "all", "--seed", "7"];
    assert_eq!(code(&run_in(first.path(), &args)), 0);
    assert_eq!(code(&run_in(second.path(), &args)), 0);
    let a = std::fs::read(first.path().join("report.json")).unwrap();
    let b = std::fs::read(second.path().join("report.json")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "reports differ between identical runs");
    println!(
        "acceptance 09 determinism: PASS (two runs, {} identical bytes)",
        a.len()
    );
}

#[test]
fn a10_full_default_suite_passes_in_budget() {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let out = run_in(dir.path(), &["--suite", "all"]);
    let elapsed = start.elapsed();
    assert_eq!(code(&out), 0, "stdout: {}", stdout(&out));
    assert!(elapsed.as_secs_f64() < 600.0, "took {elapsed:?}");

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    let blocks = report["relations"].as_array().unwrap();
    assert_eq!(blocks.len(), 20);
    for block in blocks {
        assert_eq!(block["aggregate"]["evaluations"], 300);
        assert_eq!(block["aggregate"]["passes"], 300);
    }
    assert_eq!(report["config"]["trials"], 100);
    assert_eq!(report["config"]["seed"], 42);
    println!(
        "acceptance 10 full default suite: PASS ({} relations x 300 evaluations, {elapsed:?})",
        blocks.len()
    );
}

#[test]
fn worked_examples_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["--suite", "examples"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("ghz:"));
    assert!(text.contains("split_mub_povm:"));
    assert!(text.contains("z_axis_tightness:"));

    let alias = run_in(dir.path(), &["--suite", "paper-examples"]);
    assert_eq!(code(&alias), 0);
}

#[test]
fn fifty_trials_at_one_dims_triple_gives_fifty_results_per_relation() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "--suite", "all", "--dims", "2,2,2", "--trials", "50", "--seed", "7", "--out",
            "report.json",
        ],
    );
    assert_eq!(code(&out), 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    for block in report["relations"].as_array().unwrap() {
        assert_eq!(block["results"].as_array().unwrap().len(), 50);
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["--trials", "0"][..],
        &["--relation", "nonsense"][..],
        &["--dims", "2,2"][..],
        &["--dims", "1,2,2"][..],
        &["--suite", "unknown"][..],
        &["--log-base", "10"][..],
        &["--suite", "examples", "--log-base", "e"][..],
        &["--relation", "thm5_mub", "--state", "missing.json"][..],
    ] {
        let out = run_in(dir.path(), args);
        assert_eq!(code(&out), 2, "args {args:?}: {}", stdout(&out));
    }
}

#[test]
fn nats_and_csv_variants_run_clean() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["--suite", "all", "--dims", "2,2,2", "--trials", "2", "--log-base", "e"],
    );
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let out = run_in(
        dir.path(),
        &["--suite", "all", "--dims", "2,2,2", "--trials", "2", "--format", "csv"],
    );
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("relation,link,"));
    assert_eq!(csv.lines().count(), 1 + 20 * 2);
}

#[test]
fn eval_mode_confirms_the_tight_unbiased_pair_sum() {
    let dir = tempfile::tempdir().unwrap();
    triq::io::write_state(&dir.path().join("ghz.json"), &ghz()).unwrap();
    let z = OrthonormalBasis::computational("a", 2).to_povm();
    let x = OrthonormalBasis::fourier("a", 2).to_povm();
    triq::io::write_povm(&dir.path().join("z.json"), &z).unwrap();
    triq::io::write_povm(&dir.path().join("x.json"), &x).unwrap();

    let out = run_in(
        dir.path(),
        &[
            "--relation", "thm5_mub", "--state", "ghz.json", "--povm", "z.json", "--povm",
            "x.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("thm5_mub"));
    assert!(text.contains("PASS"));
}

#[test]
fn eval_mode_flags_a_corrupted_state_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let dims = DimsProfile::new(&[("a", 2), ("b", 2)]).unwrap();
    let pure = random_pure_state(dims.clone(), 31).to_density();
    let eps = 2e-3;
    let corrupted = DensityOperator::new(
        pure.mat() * C64::new(1.0 - eps, 0.0)
            + CMat::identity(4, 4) * C64::new(eps / 4.0, 0.0),
        dims,
    )
    .unwrap();
    triq::io::write_state(&dir.path().join("state.json"), &corrupted).unwrap();
    let z = OrthonormalBasis::computational("a", 2).to_povm();
    triq::io::write_povm(&dir.path().join("z.json"), &z).unwrap();

    let out = run_in(
        dir.path(),
        &[
            "--relation", "thm2_basis_invariance", "--state", "state.json", "--povm", "z.json",
        ],
    );
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn eval_mode_rejects_inconsistent_dims_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    triq::io::write_state(&dir.path().join("ghz.json"), &ghz()).unwrap();
    let wide = random_rank1_povm("a", 3, 4, 5).unwrap();
    triq::io::write_povm(&dir.path().join("wide.json"), &wide).unwrap();

    let out = run_in(
        dir.path(),
        &[
            "--relation", "thm5_mub", "--state", "ghz.json", "--povm", "wide.json", "--povm",
            "wide.json",
        ],
    );
    assert_eq!(code(&out), 2, "{}", stdout(&out));
}

#[test]
fn restricted_suite_honors_the_relation_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "--suite", "all", "--relation", "thm5_mub", "--relation", "eq33_ssa", "--dims",
            "2,2,2", "--trials", "3", "--out", "narrow.json",
        ],
    );
    assert_eq!(code(&out), 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("narrow.json")).unwrap())
            .unwrap();
    let blocks = report["relations"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    assert_eq!(blocks[0]["relation"], "thm5_mub");
    assert_eq!(blocks[1]["relation"], "eq33_ssa");
}
