//! End-to-end checks of the `lvtlab` binary: exit codes, artifact layout,
//! determinism, and the config-file path.

use std::path::Path;
use std::process::Command;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_lvtlab")
}

fn tmp_dir(label: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("lvtlab-test-{label}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn list_names_every_preset() {
    let out = Command::new(exe()).arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in [
        "fig1-iho3d",
        "fig2-chaos",
        "fig3-quartic1d",
        "fig4/5-r4-2d",
        "fig6-disk",
        "fig7-airy",
        "fig8/9-slvt-2d",
        "figC-ide-3d",
        "box-suite",
        "linear-suite",
    ] {
        assert!(text.contains(name), "missing {name} in list output");
    }
}

#[test]
fn unknown_preset_exits_2_with_the_list() {
    let out = Command::new(exe()).args(["run", "no-such-preset"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("fig1-iho3d"), "error should list presets: {err}");
}

#[test]
fn describe_mentions_desk_and_paper_scales() {
    let out = Command::new(exe()).args(["describe", "fig1-iho3d"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Shells(10)"), "desk scale M=10: {text}");
    assert!(text.contains("Shells(60)"), "paper scale M=60: {text}");
}

#[test]
fn box_suite_runs_fast_and_writes_artifacts() {
    let dir = tmp_dir("box");
    let t0 = std::time::Instant::now();
    let out = Command::new(exe())
        .args(["run", "box-suite", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(t0.elapsed().as_secs_f64() < 30.0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "box-suite failed:\n{stdout}");
    for m in [10, 20, 40] {
        let base = dir.join(format!("box-m{m}"));
        for f in ["fields.csv", "summary.json", "plot.gp", "lvt1.csv"] {
            assert!(base.join(f).is_file(), "missing {f} for M={m}");
        }
    }
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("box-m10/summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["scenario"], "box-m10");
    assert!(summary["theorems"].as_array().unwrap().len() >= 3);
}

#[test]
fn csv_headers_match_schema() {
    let dir = tmp_dir("schema");
    let out = Command::new(exe())
        .args(["run", "box-suite", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let fields = std::fs::read_to_string(dir.join("box-m10/fields.csv")).unwrap();
    assert!(fields.starts_with("coord,rho,tau,tau1,xi,lap_rho\n"));
    let theorem = std::fs::read_to_string(dir.join("box-m10/lvt1.csv")).unwrap();
    assert!(theorem.starts_with("coord,lhs,rhs,residual,mask\n"));
}

#[test]
fn identical_runs_produce_identical_csv_bytes() {
    let dir_a = tmp_dir("det-a");
    let dir_b = tmp_dir("det-b");
    for dir in [&dir_a, &dir_b] {
        let out = Command::new(exe())
            .args(["run", "fig7-airy", "--out"])
            .arg(dir)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let a = std::fs::read(dir_a.join("fig7-airy/friedel_asymptotics.csv")).unwrap();
    let b = std::fs::read(dir_b.join("fig7-airy/friedel_asymptotics.csv")).unwrap();
    assert_eq!(a, b, "CSV bytes differ between identical runs");
    let sa = std::fs::read(dir_a.join("fig7-airy/summary.json")).unwrap();
    let sb = std::fs::read(dir_b.join("fig7-airy/summary.json")).unwrap();
    assert_eq!(sa, sb);
}

#[test]
fn config_file_round_trip() {
    let dir = tmp_dir("config");
    let cfg = dir.join("ho.cfg");
    std::fs::write(
        &cfg,
        "[system]\nkind = iho\nomega = 1.0\ndim = 1\n\n[filling]\nm = 3\n\n[grid]\nextent = 9.0\npoints = 1200\n\n[checks]\ntheorems = lvt1, lvt_basic, slvt\n",
    )
    .unwrap();
    let out = Command::new(exe())
        .args(["run", cfg.to_str().unwrap(), "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "config run failed:\n{stdout}");
    assert!(dir.join("ho/summary.json").is_file());
    assert!(stdout.contains("lvt1"));
}

#[test]
fn threads_env_is_accepted() {
    let dir = tmp_dir("threads");
    let out = Command::new(exe())
        .env("LVTLAB_THREADS", "2")
        .args(["run", "box-suite", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn grid_refine_reports_bounded_drift() {
    let dir = tmp_dir("refine");
    let out = Command::new(exe())
        .args(["run", "fig3-quartic1d", "--grid-refine", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "refine run failed:\n{stdout}");
    assert!(stdout.contains("refine lvt_generalized"), "missing drift report:\n{stdout}");
    assert!(!stdout.contains("DRIFT EXCEEDS"), "drift over 10%:\n{stdout}");
    assert!(dir.join("fig3-quartic1d-refined/summary.json").is_file());
}

#[test]
fn linear_suite_passes_its_gates() {
    let dir = tmp_dir("linear");
    let out = Command::new(exe())
        .args(["run", "linear-suite", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "linear-suite failed:\n{stdout}");
    assert!(Path::new(&dir.join("linear-3d-axis/summary.json")).is_file());
    assert!(stdout.contains("axis3d_closed_vs_quadrature"));
}
