use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SINGLE_EDGE: &str = "LGF 1\nv a 1\nv b 2\ne a b\n";
const K22: &str = "LGF 1\nv u1 1\nv u2 1\nv v1 2\nv v2 2\ne u1 v1\ne u1 v2\ne u2 v1\ne u2 v2\n";
const K22_DRAWING: &str = "LDF 1\nl 1 u1 u2\nl 2 v1 v2\n";
/// K_{3,3}-like: three vertices on top all joined to three below.
const K33: &str = "LGF 1\nv a 1\nv b 1\nv c 1\nv x 2\nv y 2\nv z 2\n\
e a x\ne a y\ne a z\ne b x\ne b y\ne b z\ne c x\ne c y\ne c z\n";

fn levelplan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levelplan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn bundled(&self) -> PathBuf {
        let dir = self.path("bundled");
        let o = levelplan(&["bundled", dir.to_str().unwrap()]);
        assert!(o.status.success());
        dir
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_single_edge_is_planar() {
    let f = Files::new();
    let g = f.put("e.lgf", SINGLE_EDGE);
    for algo in ["oracle", "satcheck", "vegraph-test"] {
        let o = levelplan(&["check", &g, "--algo", algo]);
        assert_eq!(o.status.code(), Some(0), "{algo}");
        assert_eq!(stdout(&o), "planar\n");
    }
}

#[test]
fn check_k33_is_not_planar() {
    let f = Files::new();
    let g = f.put("k33.lgf", K33);
    for algo in ["oracle", "satcheck", "vegraph-test"] {
        let o = levelplan(&["check", &g, "--algo", algo]);
        assert_eq!(o.status.code(), Some(1), "{algo}");
        assert_eq!(stdout(&o), "not planar\n");
    }
}

#[test]
fn verify_k22_counts_one() {
    let f = Files::new();
    let o = levelplan(&[
        "verify",
        &f.put("k22.lgf", K22),
        &f.put("k22.ldf", K22_DRAWING),
    ]);
    assert_eq!(stdout(&o), "1\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_mismatch_is_malformed_input() {
    let f = Files::new();
    let o = levelplan(&[
        "verify",
        &f.put("e.lgf", SINGLE_EDGE),
        &f.put("k22.ldf", K22_DRAWING),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_and_missing_files_exit_3() {
    let f = Files::new();
    let bad = f.put("bad.lgf", "LGF 1\nv a x\n");
    assert_eq!(levelplan(&["check", &bad]).status.code(), Some(3));
    let dangling = f.put("dangling.lgf", "LGF 1\nv a 1\ne a b\n");
    assert_eq!(levelplan(&["check", &dangling]).status.code(), Some(3));
    assert_eq!(
        levelplan(&["check", s(&f.path("missing.lgf"))])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn usage_errors_exit_2() {
    let f = Files::new();
    let g = f.put("e.lgf", SINGLE_EDGE);
    assert_eq!(
        levelplan(&["embed", &g, "--algo", "satcheck"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        levelplan(&["check", &g, "--algo", "nonsense"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(levelplan(&["frobnicate"]).status.code(), Some(2));
    let b = f.bundled();
    let wrong = levelplan(&[
        "embed",
        &g,
        "--algo",
        "randerath",
        "--replay",
        s(&b.join("harrigan-healy.rpf")),
    ]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_4() {
    let f = Files::new();
    let o = levelplan(&["check", &f.put("k33.lgf", K33), "--budget", "2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn bundled_breaks_the_embedders_but_not_the_oracle() {
    let f = Files::new();
    let b = f.bundled();
    let g = b.join("graph.lgf");
    assert_eq!(
        levelplan(&["check", s(&g), "--algo", "oracle"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        levelplan(&["check", s(&g), "--algo", "satcheck"])
            .status
            .code(),
        Some(0)
    );

    for algo in ["randerath", "healy-kuusik"] {
        let replay = b.join(format!("{algo}.rpf"));
        let o = levelplan(&["embed", s(&g), "--algo", algo, "--replay", s(&replay)]);
        assert_eq!(o.status.code(), Some(1), "{algo}");
        assert!(stdout(&o).contains("contradiction"), "{}", stdout(&o));
        assert!(stdout(&o).contains("conflict:"), "{}", stdout(&o));
    }

    let out = f.path("hh.ldf");
    let replay = b.join("harrigan-healy.rpf");
    let o = levelplan(&[
        "embed",
        s(&g),
        "--algo",
        "harrigan-healy",
        "--replay",
        s(&replay),
        "-o",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = levelplan(&["verify", s(&g), s(&out)]);
    assert_eq!(v.status.code(), Some(1));
    assert_ne!(stdout(&v), "0\n");

    let witness = f.path("oracle.ldf");
    assert_eq!(
        levelplan(&["embed", s(&g), "-o", s(&witness)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(stdout(&levelplan(&["verify", s(&g), s(&witness)])), "0\n");
}

#[test]
fn render_marks_crossings() {
    let f = Files::new();
    let b = f.bundled();
    let g = b.join("graph.lgf");
    let replay = b.join("harrigan-healy.rpf");
    let hh = levelplan(&[
        "render",
        s(&g),
        "--algo",
        "harrigan-healy",
        "--replay",
        s(&replay),
    ]);
    assert_eq!(hh.status.code(), Some(0));
    assert!(stdout(&hh).matches(r#"class="crossing""#).count() >= 1);
    let oracle = levelplan(&["render", s(&g)]);
    assert_eq!(stdout(&oracle).matches(r#"class="crossing""#).count(), 0);
    assert_eq!(
        stdout(&hh),
        stdout(&levelplan(&[
            "render",
            s(&g),
            "--algo",
            "harrigan-healy",
            "--replay",
            s(&replay)
        ]))
    );

    let k22 = f.put("k22.lgf", K22);
    let d = f.put("k22.ldf", K22_DRAWING);
    let svg = f.path("k22.svg");
    assert!(levelplan(&["render", &k22, "--drawing", &d, "-o", s(&svg)])
        .status
        .success());
    assert_eq!(
        fs::read_to_string(svg)
            .unwrap()
            .matches(r#"class="crossing""#)
            .count(),
        1
    );
}

#[test]
fn properize_writes_proper_lgf() {
    let f = Files::new();
    let g = f.put("long.lgf", "LGF 1\nv a 1\nv b 4\ne a b\n");
    let o = levelplan(&["properize", &g]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("a__b__1") && text.contains("a__b__2"));
    let again = f.put("proper.lgf", &text);
    assert_eq!(stdout(&levelplan(&["properize", &again])), text);
    // Embedding a non-proper input works on the subdivided graph.
    let d = levelplan(&["embed", &g, "--algo", "randerath"]);
    assert!(d.status.success());
    assert!(stdout(&d).contains("a__b__2"));
}

#[test]
fn seeded_embedding_is_reproducible() {
    let f = Files::new();
    let g = s(&f.bundled().join("graph.lgf")).to_string();
    let run = || levelplan(&["embed", &g, "--algo", "healy-kuusik", "--seed", "17"]);
    let (a, b) = (run(), run());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn fuzz_then_shrink() {
    let f = Files::new();
    let out = f.path("reports");
    let o = levelplan(&[
        "fuzz",
        "--iterations",
        "3000",
        "--seed",
        "0",
        "--target",
        "randerath",
        "-o",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut dirs: Vec<_> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    dirs.sort();
    assert!(!dirs.is_empty(), "{}", stdout(&o));
    let dir = &dirs[0];
    for file in ["graph.lgf", "replay.rpf", "report.txt"] {
        assert!(dir.join(file).exists());
    }
    let small = f.path("small");
    let o = levelplan(&["shrink", s(dir), "-o", s(&small)]);
    assert_eq!(o.status.code(), Some(0));
    let g = small.join("graph.lgf");
    assert_eq!(levelplan(&["check", s(&g)]).status.code(), Some(0));
    let e = levelplan(&[
        "embed",
        s(&g),
        "--algo",
        "randerath",
        "--replay",
        s(&small.join("replay.rpf")),
    ]);
    assert_eq!(e.status.code(), Some(1));

    // A tampered report no longer reproduces.
    fs::write(small.join("replay.rpf"), "RPF 1\nalgo randerath\n").unwrap();
    assert_eq!(levelplan(&["shrink", s(&small)]).status.code(), Some(1));
}
