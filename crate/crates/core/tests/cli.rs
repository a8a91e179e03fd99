mod common;

use std::fs;
use std::process::Command;

use paca::synthetic::{Blob, SyntheticScene};

fn paca() -> Command {
    Command::new(env!("CARGO_BIN_EXE_paca"))
}

fn code(cmd: &mut Command) -> i32 {
    cmd.output().unwrap().status.code().unwrap()
}

#[test]
fn match_succeeds_with_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let goal = common::write_scene(dir.path(), "goal", &common::tabletop());
    let real = common::write_scene(dir.path(), "real", &common::tabletop().translated(0.0, 5.0));
    let out = dir.path().join("plan.json");
    let overlay = dir.path().join("overlay.png");
    let status = code(
        paca()
            .args(["match", "--goal"])
            .arg(&goal)
            .arg("--real")
            .arg(&real)
            .arg("--out")
            .arg(&out)
            .arg("--overlay")
            .arg(&overlay),
    );
    assert_eq!(status, 0);
    let plan: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(plan["objects"][0]["matches"][0]["transform"]["dx"], -20.0);
    assert!(overlay.exists());
}

#[test]
fn missing_input_is_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let status = code(
        paca()
            .args(["hough", "--image", "/does/not/exist.png", "--out"])
            .arg(dir.path().join("x")),
    );
    assert_eq!(status, 2);
}

#[test]
fn corrupt_dump_is_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let goal = common::write_scene(dir.path(), "goal", &common::tabletop());
    let real = common::write_scene(dir.path(), "real", &common::tabletop());
    fs::write(&real, b"PACX").unwrap();
    let status = code(
        paca()
            .args(["match", "--goal"])
            .arg(&goal)
            .arg("--real")
            .arg(&real)
            .arg("--out")
            .arg(dir.path().join("p.json")),
    );
    assert_eq!(status, 3);
}

#[test]
fn disjoint_vocabulary_is_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let a = SyntheticScene::new(32, 32).object("mug", vec![Blob::round(16.0, 16.0, 3.0)]);
    let b = SyntheticScene::new(32, 32).object("plate", vec![Blob::round(16.0, 16.0, 3.0)]);
    let goal = common::write_scene(dir.path(), "goal", &a);
    let real = common::write_scene(dir.path(), "real", &b);
    let status = code(
        paca()
            .args(["match", "--goal"])
            .arg(&goal)
            .arg("--real")
            .arg(&real)
            .arg("--out")
            .arg(dir.path().join("p.json")),
    );
    assert_eq!(status, 1);
}

#[test]
fn bad_config_is_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"tau1": 0.95, "tau2": 0.9}"#).unwrap();
    let status = code(
        paca()
            .arg("--config")
            .arg(&cfg)
            .args(["eval", "--dataset"])
            .arg(dir.path())
            .arg("--out")
            .arg(dir.path().join("m.json")),
    );
    assert_eq!(status, 3);

    // 6dof without intrinsics.
    let status = code(
        paca()
            .args(["--mode", "6dof", "eval", "--dataset"])
            .arg(dir.path())
            .arg("--out")
            .arg(dir.path().join("m.json")),
    );
    assert_eq!(status, 3);
}

#[test]
fn empty_dataset_is_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("dataset.json"), r#"{"pairs": []}"#).unwrap();
    let status = code(
        paca()
            .args(["eval", "--dataset"])
            .arg(dir.path())
            .arg("--out")
            .arg(dir.path().join("m.json")),
    );
    assert_eq!(status, 3);
}
