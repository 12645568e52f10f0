use std::path::Path;
use std::process::{Command, Output};

use identispace_core::geom::Vec3;
use identispace_core::mesh::TriangleMesh;
use identispace_core::stl::{to_stl_bytes, StlMode};

fn identispace(args: &[&str]) -> Output {
    identispace_env(args, None)
}

fn identispace_env(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_identispace"));
    cmd.args(args).env_remove("IDENTISPACE_CONFIG");
    if let Some(path) = config {
        cmd.env("IDENTISPACE_CONFIG", path);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn tetrahedron(drop_last: bool) -> TriangleMesh {
    let vertices = vec![
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(0.0, 0.0, 1.0),
    ];
    let mut triangles = vec![[0, 2, 1], [0, 1, 3], [1, 2, 3], [0, 3, 2]];
    if drop_last {
        triangles.pop();
    }
    TriangleMesh::from_parts(vertices, triangles).unwrap()
}

#[test]
fn sample_prints_surface_points() {
    let o = identispace(&["sample", "--surface", "torus", "0", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "40 0 0");
    let o = identispace(&["sample", "--surface", "klein", "0", "0"]);
    assert_eq!(stdout(&o).trim(), "30 2.5 0");
    let o = identispace(&["sample", "--surface", "klein", "0", "18"]);
    assert_eq!(stdout(&o).trim(), "20 0 0");
    let o = identispace(&["sample", "--surface", "roman", "0", "0"]);
    assert_eq!(stdout(&o).trim(), "0 0 0");
}

#[test]
fn sample_accepts_negative_coordinates() {
    let a = identispace(&["sample", "--surface", "torus", "-3", "-5"]);
    let b = identispace(&["sample", "--surface", "torus", "15", "31"]);
    assert!(a.status.success());
    let parse = |o: &Output| -> Vec<f64> { stdout(o).split_whitespace().map(|t| t.parse().unwrap()).collect() };
    for (x, y) in parse(&a).iter().zip(parse(&b)) {
        assert!((x - y).abs() < 1e-9);
    }
}

#[test]
fn homology_prints_every_degree() {
    let o = identispace(&["homology", "--space", "rp2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "H_0(rp2) = Z\nH_1(rp2) = Z/2\nH_2(rp2) = 0\n");
    let o = identispace(&["homology", "--space", "torus", "--dim", "1"]);
    assert_eq!(stdout(&o), "H_1(torus) = Z^2\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["homology", "--space", "sphere", "--dim", "5"],
        vec!["homology"],
        vec!["homology", "--space", "moebius"],
        vec!["generate", "--surface", "torus", "--thickness", "0"],
        vec!["generate", "--surface", "torus", "--inner-radius", "40"],
        vec!["generate", "--surface", "klein", "--lat-ribs", "2"],
        vec!["sample", "--surface", "torus", "nan", "0"],
        vec!["frobnicate"],
        vec!["validate", "/nonexistent/file.stl"],
    ] {
        let o = identispace(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn invalid_parameters_name_the_invariant() {
    let o = identispace(&["generate", "--surface", "torus", "--thickness", "0"]);
    assert!(stderr(&o).contains("thickness"), "{}", stderr(&o));
    let o = identispace(&["generate", "--surface", "klein", "--inner-radius", "31"]);
    assert!(stderr(&o).contains("inner_radius"), "{}", stderr(&o));
}

#[test]
fn validate_reports_open_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let closed = dir.path().join("closed.stl");
    let open = dir.path().join("open.stl");
    std::fs::write(&closed, to_stl_bytes(&tetrahedron(false), StlMode::Binary).unwrap()).unwrap();
    std::fs::write(&open, to_stl_bytes(&tetrahedron(true), StlMode::Ascii).unwrap()).unwrap();

    let o = identispace(&["validate", closed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: watertight"));

    let o = identispace(&["validate", open.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("boundary edges: 3"), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: NOT watertight"));
}

#[test]
fn validate_rejects_truncated_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cut.stl");
    let mut bytes = to_stl_bytes(&tetrahedron(false), StlMode::Binary).unwrap();
    bytes.pop();
    std::fs::write(&path, bytes).unwrap();
    let o = identispace(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error:"));
}

#[test]
fn validate_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.stl");
    std::fs::write(&path, to_stl_bytes(&tetrahedron(false), StlMode::Binary).unwrap()).unwrap();
    let o = identispace(&["validate", "--json", path.to_str().unwrap()]);
    let json_line = stdout(&o).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&json_line).unwrap();
    assert_eq!(v["component_count"], 1);
    assert_eq!(v["triangle_count"], 4);
    assert_eq!(v["euler_characteristic_per_component"][0], 2);
    assert_eq!(v["watertight_per_component"][0], true);
}

#[test]
fn generate_writes_a_valid_small_model() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("small.stl");
    let o = identispace(&[
        "generate",
        "--surface",
        "klein",
        "--lat-ribs",
        "4",
        "--long-ribs",
        "4",
        "--outer-density",
        "2",
        "--inner-density",
        "2",
        "--resolution",
        "6",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("segments: 180"), "{text}");
    let size = std::fs::metadata(&out).unwrap().len();
    assert!(text.contains(&format!("({size} bytes, binary)")));
    let o = identispace(&["validate", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn config_layers_apply_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("id.conf");
    std::fs::write(&cfg, "# file layer\nsurface = torus\nouter-radius = 50\ninner-radius = 5\n").unwrap();

    // defaults only
    let o = identispace(&["sample", "--surface", "torus", "0", "0"]);
    assert_eq!(stdout(&o).trim(), "40 0 0");
    // file over defaults, through the environment
    let o = identispace_env(&["sample", "0", "0"], Some(&cfg));
    assert_eq!(stdout(&o).trim(), "55 0 0");
    // flags over the file
    let o = identispace_env(&["sample", "--inner-radius", "7", "0", "0"], Some(&cfg));
    assert_eq!(stdout(&o).trim(), "57 0 0");
    // explicit --config wins over the environment
    let other = dir.path().join("other.conf");
    std::fs::write(&other, "surface = torus\nouter-radius = 20\n").unwrap();
    let o = identispace_env(&["sample", "--config", other.to_str().unwrap(), "0", "0"], Some(&cfg));
    assert_eq!(stdout(&o).trim(), "30 0 0");
}

#[test]
fn config_file_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "surface = torus\ncolour = red\n").unwrap();
    let o = identispace(&["sample", "--config", cfg.to_str().unwrap(), "0", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown key 'colour'"), "{}", stderr(&o));

    let o = identispace(&["homology", "--config", "/nonexistent.conf", "--space", "circle"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn homology_space_can_come_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("h.conf");
    std::fs::write(&cfg, "space = circle\n").unwrap();
    let o = identispace_env(&["homology"], Some(&cfg));
    assert_eq!(stdout(&o), "H_0(circle) = Z\nH_1(circle) = Z\n");
}
