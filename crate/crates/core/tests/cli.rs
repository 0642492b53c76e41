use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn c2stems(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c2stems"))
        .args(args)
        .env_remove("C2STEMS_WINDOW")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares stdout against `tests/golden/<name>`; set `UPDATE_GOLDEN=1` to
/// rewrite the files.
fn assert_golden(name: &str, args: &[&str]) {
    let first = c2stems(args);
    assert_eq!(first.status.code(), Some(0), "{args:?}: {}", stderr(&first));
    let second = c2stems(args);
    assert_eq!(first.stdout, second.stdout, "{args:?} is not deterministic");
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &first.stdout).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(stdout(&first), expected, "{args:?} differs from {name}");
}

#[test]
fn golden_outputs() {
    let cases: &[(&str, &[&str])] = &[
        ("eval_free_orbit.txt", &["eval", "2 - rho*eta"]),
        ("eval_relation3.txt", &["eval", "rho^3 * x[7]"]),
        ("eval_relation4.txt", &["eval", "x[1]*w[4]"]),
        ("eval_square.csv", &["--format", "csv", "eval", "x[4]*x[4]"]),
        (
            "eval_rational.txt",
            &["--mode", "rational", "eval", "eta/3 + w[1]^2/2"],
        ),
        ("rational.txt", &["rational", "x[2] + w[2] - x[9]"]),
        (
            "basis_box.txt",
            &[
                "basis", "--smin", "-2", "--smax", "2", "--wmin", "-4", "--wmax", "4",
            ],
        ),
        (
            "basis_box.csv",
            &[
                "--format", "csv", "basis", "--smin", "-2", "--smax", "2", "--wmin", "-4",
                "--wmax", "4",
            ],
        ),
        ("multable_2.txt", &["multable", "--bound", "2"]),
        ("divtable_16.txt", &["divtable", "--max", "16"]),
        (
            "divtable_16.csv",
            &["--format", "csv", "divtable", "--max", "16"],
        ),
        (
            "name.txt",
            &["name", "x[7]", "x[9]", "w[-2]", "eta", "rho^2"],
        ),
        ("e1_window6.txt", &["--window", "6", "e1"]),
        (
            "e1_window6.csv",
            &["--window", "6", "--format", "csv", "e1"],
        ),
        (
            "check_divisibility_8.txt",
            &["check", "--window", "8", "divisibility"],
        ),
        (
            "check_presentation.csv",
            &["--format", "csv", "check", "presentation"],
        ),
    ];
    for (name, args) in cases {
        assert_golden(name, args);
    }
}

#[test]
fn eval_examples() {
    let o = c2stems(&["eval", "2 - rho*eta"]);
    assert_eq!(stdout(&o), "w[0]  degree (0,0)  phi_e=2  phi_fix=0\n");
    let o = c2stems(&["eval", "rho^3 * x[7]"]);
    assert!(stdout(&o).starts_with("x[4] "));
    let o = c2stems(&["eval", "x[1]*w[4]"]);
    assert!(stdout(&o).starts_with("0 "));
    let o = c2stems(&["eval", "w[2]*w[3]"]);
    assert!(stdout(&o).starts_with("2*w[5] "));
}

#[test]
fn basis_boxes() {
    let o = c2stems(&[
        "basis", "--smin", "0", "--smax", "0", "--wmin", "0", "--wmax", "0",
    ]);
    let names: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().next().unwrap().to_owned())
        .collect();
    assert_eq!(names, ["1", "w[0]"]);
    let o = c2stems(&["basis", "--smin", "3", "--smax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["eval", "x[0]"], 2),
        (&["eval", "2 + * rho"], 2),
        (&["eval", "eta^8 / 2^4"], 1),
        (&["eval", "eta / 2"], 1),
        (&["frobnicate"], 2),
        (&["check", "--window", "4", "presentation"], 2),
        (&["check", "--window", "8", "divisibility"], 0),
        (&["check", "presentation", "--corrupt-n", "9=3"], 1),
        (&["name", "2*eta"], 1),
        (&["name", "x[2]"], 0),
        (&["e1", "--catalog", "/nonexistent/catalog.txt"], 2),
        (&["--window", "0", "divtable"], 2),
        (&["--help"], 0),
    ];
    for (args, code) in cases {
        let o = c2stems(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn parse_errors_are_positioned() {
    let o = c2stems(&["eval", "2 + * rho"]);
    assert!(stderr(&o).contains("byte 4"), "{}", stderr(&o));
}

#[test]
fn inexact_division_message() {
    let o = c2stems(&["eval", "eta^8 / 2^4"]);
    assert!(stderr(&o).contains("not divisible by 16"), "{}", stderr(&o));
}

#[test]
fn window_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_c2stems"))
        .args(["divtable"])
        .env("C2STEMS_WINDOW", "8")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).lines().count(), 9);
    let o = Command::new(env!("CARGO_BIN_EXE_c2stems"))
        .args(["--window", "3", "divtable"])
        .env("C2STEMS_WINDOW", "8")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn every_subcommand_writes_csv() {
    let cases: &[&[&str]] = &[
        &["eval", "rho + eta"],
        &["rational", "w[2]"],
        &[
            "basis", "--smin", "0", "--smax", "1", "--wmin", "0", "--wmax", "1",
        ],
        &["multable", "--bound", "1"],
        &["divtable", "--max", "4"],
        &["name", "eta"],
        &["--window", "3", "e1"],
        &["--window", "8", "check", "divisibility"],
    ];
    for args in cases {
        let mut full = vec!["--format", "csv"];
        full.extend_from_slice(args);
        let o = c2stems(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
        let width = reader.headers().unwrap().len();
        assert!(width >= 2, "{args:?}");
        for record in reader.records() {
            assert_eq!(record.unwrap().len(), width, "{args:?}");
        }
    }
}

#[test]
fn custom_catalog() {
    let dir = std::env::temp_dir().join(format!("c2stems-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    fs::write(&good, "# one torsion class\nx 1 1 1 torsion:0\n").unwrap();
    let o = c2stems(&[
        "--window",
        "3",
        "--format",
        "csv",
        "e1",
        "--catalog",
        good.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("Q x,Q,0,0,2,0,2"), "{text}");
    assert!(text.contains("Q/rho x,Q,1,0,3,0,3"), "{text}");

    let negative = dir.join("negative.txt");
    fs::write(&negative, "bad -1 0 0 free\n").unwrap();
    let o = c2stems(&["e1", "--catalog", negative.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let malformed = dir.join("malformed.txt");
    fs::write(&malformed, "h0 0 1\n").unwrap();
    let o = c2stems(&["e1", "--catalog", malformed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn full_check_passes_at_default_window() {
    let o = c2stems(&["check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o)
        .lines()
        .last()
        .unwrap()
        .ends_with("0 failed, 3 notes"));
}
