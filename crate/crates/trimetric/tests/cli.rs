use std::process::{Command, Output};

fn trimetric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimetric")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(text: &str, key: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with(key)).unwrap();
    line.split(" = ").nth(1).unwrap().trim().parse().unwrap()
}

#[test]
fn witness_distances() {
    let h = 3f64.sqrt() / 2.0;
    let y = format!("[{h}, {h}, {}]", 1.0 - h);
    let o = trimetric(&["distance", "--space", "triangle", "--raw", "[1,1,1]", &y]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!((value(&text, "eta(X,Y)") - h.ln()).abs() < 1e-10);
    assert!((value(&text, "eta(Y,X)") - (1.0 / (1.0 - h)).ln()).abs() < 1e-10);
    assert!((value(&text, "max") - value(&text, "eta(Y,X)")).abs() == 0.0);
}

#[test]
fn domain_and_input_errors_have_distinct_codes() {
    let o = trimetric(&["distance", "--space", "triangle", "[1,0,1]", "[1,1,1]"]);
    assert_eq!(o.status.code(), Some(3));
    let o = trimetric(&["distance", "--space", "triangle", "[1,1]", "[1,1,1]"]);
    assert_eq!(o.status.code(), Some(2));
    let o = trimetric(&["experiment", "no-such-experiment"]);
    assert_eq!(o.status.code(), Some(2));
    let o = trimetric(&["distance", "--space", "triangle", "/nonexistent/x.json", "[1,1,1]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn geodesic_csv_has_one_row_per_sample() {
    let o = trimetric(&["--grid", "2", "geodesic", "--space", "triangle", "[1,1,1]", "[1,1,2]"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("t,"));
    let last: Vec<f64> = lines[2].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
}

#[test]
fn surface_distance_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(
        &path,
        r#"{"edges": 3, "faces": [[0, 1, 2]], "boundary": [true, true, true], "coords": {"f0": [1, 1, 1]}}"#,
    )
    .unwrap();
    let q = r#"{"edges": 3, "faces": [[0, 1, 2]], "boundary": [true, true, true], "coords": {"f0": [1, 1, 2]}}"#;
    let o = trimetric(&["distance", "--space", "surface", path.to_str().unwrap(), q]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = trimetric(&["distance", "--space", "triangle", "[1,1,1]", "[1,1,2]"]);
    assert_eq!(value(&stdout(&o), "eta(X,Y)"), value(&stdout(&t), "eta(X,Y)"));
}

#[test]
fn experiment_output_is_reproducible() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let o = trimetric(&["--seed", "7", "experiment", "unit-ball", "--out-dir", dir.path().to_str().unwrap()]);
        assert!(o.status.success());
    }
    let mut names: Vec<String> = std::fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["unit-ball.csv", "unit-ball.json", "unit-ball.svg"]);
    for n in &names {
        assert_eq!(std::fs::read(a.path().join(n)).unwrap(), std::fs::read(b.path().join(n)).unwrap());
    }
}

#[test]
fn failed_command_leaves_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    let o = trimetric(&["geodesic", "--space", "triangle", "--out", out.to_str().unwrap(), "[1,1,-1]", "[1,1,1]"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn identical_inputs_are_at_distance_zero() {
    let sq = r#"{"n": 4, "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}"#;
    let o = trimetric(&["distance", "--space", "polygon", sq, sq]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(value(&stdout(&o), "eta_sup(X,Y)"), 0.0);
    let o = trimetric(&["distance", "--space", "triangle", "[1,2,2]", "[1,2,2]"]);
    assert_eq!(value(&stdout(&o), "eta(X,Y)"), 0.0);
    assert_eq!(value(&stdout(&o), "eta(Y,X)"), 0.0);
}

#[test]
fn reversed_geodesic_ends_at_reverse_distance() {
    let last = |x: &str, y: &str| -> f64 {
        let o = trimetric(&["--grid", "11", "geodesic", "--space", "triangle", x, y]);
        let text = stdout(&o);
        let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
        let col = header.iter().position(|h| *h == "eta_from_start").unwrap();
        text.lines().last().unwrap().split(',').nth(col).unwrap().parse().unwrap()
    };
    let d = trimetric(&["distance", "--space", "triangle", "[1,1,1]", "[1,1,2]"]);
    assert!((last("[1,1,1]", "[1,1,2]") - value(&stdout(&d), "eta(X,Y)")).abs() < 1e-12);
    assert!((last("[1,1,2]", "[1,1,1]") - value(&stdout(&d), "eta(Y,X)")).abs() < 1e-12);
}
