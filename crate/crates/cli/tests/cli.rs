//! End-to-end runs of the `trispec` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use trispec::prover::{linear_verdicts, Artifact, ArtifactKind, IntermediateRecord, ProverConfig};
use trispec::Interval;

const CONTROL: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/control.json");

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}"));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn trispec(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trispec"))
        .arg("--out")
        .arg(out)
        .args(args)
        .env_remove("TRISPEC_CONFIG")
        .output()
        .expect("running trispec")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_config(dir: &Path, cfg: &ProverConfig) -> PathBuf {
    let path = dir.join("config.json");
    fs::write(&path, serde_json::to_string_pretty(cfg).unwrap()).unwrap();
    path
}

#[test]
fn usage_errors_exit_with_2() {
    let out = scratch("usage");
    for args in [
        vec!["valxi", "--side", "A:+v21", "--n", "40", "--index", "0"],
        vec!["valxi", "--side", "A:+v21", "--n", "40", "--index", "41"],
        vec!["valxi", "--side", "A:+v31", "--index", "1"],
        vec!["valxi", "--side", "C:+v21", "--index", "1"],
        vec!["position", "--side", "A:+v21", "--k", "3"],
        vec!["position", "--side", "A:+v21", "--k", "4"],
        vec!["interm", "--side", "A:+v21"],
        vec!["interm", "--side", "nonsense"],
        vec!["frobnicate"],
    ] {
        let o = trispec(&out, &args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
    }
    let o = trispec(&out, &["--config", "/nonexistent/config.json", "prove"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn control_triangle_segment_and_positions() {
    let out = scratch("control");
    let o = trispec(&out, &["--config", CONTROL, "valxi", "--side", "R:+v21", "--index", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let verdict = out.join("verdicts/R_+v21_2of4.json");
    assert!(verdict.is_file());
    let o = trispec(&out, &["--config", CONTROL, "position", "--side", "R:+v21", "--k", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(out.join("positions/R_+v21.json").is_file());

    // every artifact names a manifest that was written
    for sub in ["verdicts", "positions"] {
        for entry in fs::read_dir(out.join(sub)).unwrap() {
            let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
            let hash = v["manifest"].as_str().unwrap();
            assert!(out.join("manifests").join(format!("{hash}.json")).is_file());
        }
    }

    // a threshold equal to the quotient cannot be decided
    let mut cfg = ProverConfig::load(Path::new(CONTROL)).unwrap();
    cfg.xi21_bar = "2".into();
    let path = write_config(&out, &cfg);
    let o = trispec(&out, &["--config", path.to_str().unwrap(), "valxi", "--side", "R:+v21", "--index", "2"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert!(stderr(&o).contains("undecided") || stderr(&o).contains("straddle"), "{}", stderr(&o));
}

#[test]
fn control_triangle_intermediates() {
    let out = scratch("interm");
    // a degenerate parallelogram: every side is the right isosceles triangle
    let mut cfg = ProverConfig::load(Path::new(CONTROL)).unwrap();
    cfg.parallelograms[0].v21 = ["0".into(), "0".into()];
    cfg.parallelograms[0].v41 = ["0".into(), "0".into()];
    let path = write_config(&out, &cfg);
    let o = trispec(&out, &["--config", path.to_str().unwrap(), "interm", "--side", "R:+v41"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rec = Artifact::<IntermediateRecord>::read(&out.join("intermediates/R_+v41.json"), ArtifactKind::Intermediates).unwrap();
    let enc = rec.payload.over_side().unwrap();
    let pi2 = Interval::pi(128).sqr();
    assert!(enc[0].contains(&pi2.mul_u32(10)), "λ2 = {}", enc[0]);
    assert!(enc[1].contains(&pi2.mul_u32(13)), "λ3 = {}", enc[1]);
}

/// Writes sealed verdict and position records of the synthetic linear fields.
fn linear_fixtures(dir: &Path, cfg: &ProverConfig) {
    let (verdicts, positions) = linear_verdicts(cfg).unwrap();
    for v in verdicts {
        let name = format!("{}_{}_{}of{}.json", v.parallelogram, v.side, v.sub_index, cfg.n_sub);
        Artifact::seal(ArtifactKind::Verdict, "fixture", v).unwrap().write(&dir.join("verdicts").join(name)).unwrap();
    }
    for p in positions {
        let name = format!("{}.json", p.side.replace(':', "_"));
        Artifact::seal(ArtifactKind::Positions, "fixture", p).unwrap().write(&dir.join("positions").join(name)).unwrap();
    }
}

#[test]
fn prove_over_fixture_sets() {
    let out = scratch("prove");
    let mut cfg = ProverConfig::reference();
    cfg.n_sub = 3;
    cfg.precision_bits = 128;
    let config = write_config(&out, &cfg);
    let fixtures = out.join("fixtures");
    linear_fixtures(&fixtures, &cfg);
    let args = ["--config", config.to_str().unwrap(), "prove", "--fixtures", fixtures.to_str().unwrap()];

    let o = trispec(&out, &args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(out.join("certificate.json").is_file());

    let victim = fixtures.join("verdicts/B_-v41_2of3.json");
    let text = fs::read_to_string(&victim).unwrap();
    fs::write(&victim, text.replacen("\"sub_index\": 2", "\"sub_index\": 1", 1)).unwrap();
    let o = trispec(&out, &args);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("integrity"), "{}", stderr(&o));

    fs::remove_file(&victim).unwrap();
    let o = trispec(&out, &args);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("B:-v41:2/3"), "{}", stderr(&o));
}

#[test]
fn plot_data_is_deterministic() {
    let a = scratch("plot-a");
    let b = scratch("plot-b");
    for out in [&a, &b] {
        let o = trispec(out, &["--config", CONTROL, "plot-data", "grid", "--parallelogram", "R"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let o = trispec(out, &["--config", CONTROL, "plot-data", "levelsets", "--parallelogram", "R", "--lattice", "3", "--mesh", "6"]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    for name in ["grid_R.csv", "levelsets_R.csv"] {
        let (x, y) = (fs::read(a.join("plot").join(name)).unwrap(), fs::read(b.join("plot").join(name)).unwrap());
        assert!(!x.is_empty());
        assert_eq!(x, y, "{name} differs between identical runs");
    }
    let grid = fs::read_to_string(a.join("plot/grid_R.csv")).unwrap();
    assert_eq!(grid.lines().count(), 1 + 64);
}
