use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_symrep"));
    c.env_remove("SYMREP_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn symrep")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares against tests/golden/NAME; `UPDATE_GOLDEN=1` rewrites the file instead.
fn golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

fn build(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = run(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

#[test]
fn build_writes_canonical_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = build(
        dir.path(),
        "m.mod",
        &[
            "--group", "sym", "--n", "8", "--module", "rstd", "--ring", "gf:2",
        ],
    );
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(value(&text, "d"), Some("6"));
    let p = build(
        dir.path(),
        "r5.mod",
        &["--n", "5", "--module", "rstd", "--ring", "gf:3"],
    );
    golden("rstd5_gf3.mod", &std::fs::read_to_string(&p).unwrap());
    let q = run(&["build", "--n", "4", "--module", "ustd", "--ring", "q"]);
    assert!(q.status.success());
    golden("ustd4_q.mod", &stdout(&q));
    let alt = run(&[
        "build",
        "--group",
        "alt",
        "--n",
        "5",
        "--module",
        "perm",
        "--ring",
        "gf:9".replace("9", "3:2").as_str(),
    ]);
    assert!(alt.status.success());
    assert_eq!(value(&stdout(&alt), "group"), Some("alt"));
}

#[test]
fn build_rejects_bad_combinations() {
    for args in [
        vec![
            "build",
            "--outer-twist",
            "--n",
            "7",
            "--module",
            "rstd",
            "--ring",
            "gf:2",
        ],
        vec!["build", "--n", "2", "--module", "rstd", "--ring", "gf:2"],
        vec!["build", "--n", "5", "--module", "spin", "--ring", "gf:2"],
        vec!["build", "--n", "5", "--module", "rstd", "--ring", "gf:4"],
        vec!["build", "--n", "5", "--ring", "gf:2"],
        vec!["build", "--exceptional", "Alt5_GF4_dim2", "--n", "5"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn identify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let p = build(
        dir.path(),
        "r10.mod",
        &["--n", "10", "--module", "rstd", "--ring", "gf:7"],
    );
    let o = run(&["identify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(value(&text, "verdict"), Some("StandardRstd"));
    assert_eq!(value(&text, "d"), Some("9"));
    assert_eq!(value(&text, "intertwiner verified"), Some("true"));
    golden("identify_rstd10_gf7.txt", &text);

    let p = build(
        dir.path(),
        "o6.mod",
        &[
            "--n",
            "6",
            "--module",
            "rstd",
            "--ring",
            "gf:2",
            "--outer-twist",
        ],
    );
    let text = stdout(&run(&["identify", p.to_str().unwrap()]));
    assert_eq!(value(&text, "verdict"), Some("OuterTwisted(StandardRstd)"));
    assert_eq!(value(&text, "twists"), Some("outer"));
    golden("identify_outer6_gf2.txt", &text);

    let p = build(
        dir.path(),
        "a6.mod",
        &["--exceptional", "Alt6_GF9_adjoint_dim3"],
    );
    let o = run(&["identify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "verdict"), Some("NotRecognized"));
    assert!(value(&stdout(&o), "reason").is_some());

    let p = build(
        dir.path(),
        "a9.mod",
        &[
            "--n",
            "9",
            "--module",
            "rstd",
            "--ring",
            "gf:5",
            "--restrict-alt",
        ],
    );
    let text = stdout(&run(&["identify", p.to_str().unwrap()]));
    assert_eq!(value(&text, "verdict"), Some("StandardRstd"));
    assert_eq!(value(&text, "group"), Some("alt"));
}

#[test]
fn malformed_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = build(
        dir.path(),
        "m.mod",
        &["--n", "5", "--module", "rstd", "--ring", "gf:2"],
    );
    let text = std::fs::read_to_string(&p).unwrap();
    let cut = dir.path().join("cut.mod");
    std::fs::write(&cut, text.lines().take(7).collect::<Vec<_>>().join("\n")).unwrap();
    let bad = dir.path().join("bad.mod");
    std::fs::write(
        &bad,
        text.replacen("generator: (1 2)\n", "generator: (1 2)\nz", 1),
    )
    .unwrap();
    let swapped = dir.path().join("swapped.mod");
    std::fs::write(
        &swapped,
        text.replacen("generator: (1 2)", "generator: (2 3)", 1),
    )
    .unwrap();
    let wrong = dir.path().join("wrong.mod");
    // a singular generator image
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let at = lines.iter().position(|l| l == "generator: (2 3)").unwrap();
    lines[at + 1] = "0 0 0 0".into();
    std::fs::write(&wrong, lines.join("\n") + "\n").unwrap();
    for path in [
        &cut,
        &bad,
        &swapped,
        &wrong,
        &dir.path().join("missing.mod"),
    ] {
        let o = run(&["identify", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{}", path.display());
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    }
}

#[test]
fn decompose_and_weights() {
    let dir = tempfile::tempdir().unwrap();
    let p = build(
        dir.path(),
        "r7.mod",
        &["--n", "7", "--module", "rstd", "--ring", "gf:2"],
    );
    let o = run(&["decompose", p.to_str().unwrap(), "(1 2 3)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(value(&text, "dim B"), Some("2"));
    assert_eq!(value(&text, "dim C"), Some("4"));
    assert_eq!(value(&text, "direct"), Some("true"));
    golden("decompose_rstd7_gf2.txt", &text);
    // characteristic 2 against a transposition
    let o = run(&["decompose", p.to_str().unwrap(), "(1 2)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["weights", p.to_str().unwrap(), "1,2,3,4"]);
    assert_eq!(o.status.code(), Some(2));

    let p = build(
        dir.path(),
        "p6.mod",
        &["--n", "6", "--module", "perm", "--ring", "gf:3"],
    );
    let o = run(&["weights", p.to_str().unwrap(), "1,2,3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(value(&text, "dims"), Some("3,1,1,1"));
    golden("weights_perm6_gf3.txt", &text);
    let o = run(&["weights", p.to_str().unwrap(), "1,2,3,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_local_equations() {
    let dir = tempfile::tempdir().unwrap();
    let p = build(
        dir.path(),
        "u.mod",
        &["--n", "6", "--module", "ustd", "--ring", "gf:5"],
    );
    let text = stdout(&run(&["check", p.to_str().unwrap()]));
    assert_eq!(value(&text, "all hold"), Some("true"));
    let p = build(
        dir.path(),
        "s.mod",
        &[
            "--n",
            "5",
            "--module",
            "ustd",
            "--ring",
            "gf:7",
            "--sign-twist",
        ],
    );
    let o = run(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "all hold"), Some("false"));
    let p = build(
        dir.path(),
        "a.mod",
        &[
            "--n", "6", "--module", "ustd", "--ring", "gf:5", "--group", "alt",
        ],
    );
    assert_eq!(run(&["check", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn table_cells() {
    let o = run(&["table", "--n-range", "5..9", "--chars", "2,7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    golden("table_5_9.txt", &text);
    let cells: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(cells.len(), 10);
    for c in &cells {
        assert_eq!(value(c, "faithful"), Some("true"), "{c}");
        assert_eq!(value(c, "irreducible"), Some("true"), "{c}");
    }
    let a52 = cells[0];
    assert_eq!(value(a52, "dim"), Some("2"));
    let a87 = cells
        .iter()
        .find(|c| c.starts_with("cell: Alt(8) p=7"))
        .unwrap();
    assert_eq!(value(a87, "dim"), Some("7"));
    let a92 = cells
        .iter()
        .find(|c| c.starts_with("cell: Alt(9) p=2"))
        .unwrap();
    assert_eq!(value(a92, "dim"), Some("8"));
    assert_eq!(value(a92, "minimality"), Some("conjectural"));
    assert_eq!(
        value(a92, "note"),
        Some("lower bound 8; three classical modules; identification out of scope")
    );
    assert_eq!(run(&["table", "--n-range", "9..5"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--chars", "4"]).status.code(), Some(2));
}

#[test]
fn seed_is_deterministic_and_env_overridable() {
    let dir = tempfile::tempdir().unwrap();
    let p = build(
        dir.path(),
        "r8.mod",
        &["--n", "8", "--module", "rstd", "--ring", "gf:3"],
    );
    let a = stdout(&run(&["identify", p.to_str().unwrap(), "--seed", "7"]));
    let b = stdout(
        &bin()
            .args(["identify", p.to_str().unwrap()])
            .env("SYMREP_SEED", "7")
            .output()
            .unwrap(),
    );
    let c = stdout(&run(&["identify", p.to_str().unwrap(), "--seed", "7"]));
    assert_eq!(a, b);
    assert_eq!(a, c);
    let o = bin()
        .args(["identify", p.to_str().unwrap()])
        .env("SYMREP_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
