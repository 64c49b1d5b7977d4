use lenslab::classify::{classify_all, ClassificationReport};
use lenslab::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("lenslab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn json_report_round_trips() {
    let (code, out, _) = call(&["classify", "7", "--m-bound", "5", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(ClassificationReport::from_json(&out).unwrap(), classify_all(7, 5).unwrap());
}

#[test]
fn csv_and_text_outputs() {
    let (code, out, _) = call(&["classify", "5", "--m-bound", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, classify_all(5, 3).unwrap().to_csv());
    let (_, out, _) = call(&["classify", "5", "--m-bound", "3"]);
    assert_eq!(out, classify_all(5, 3).unwrap().to_text());
}

#[test]
fn lens_table() {
    let (code, out, _) = call(&["d-lens", "5", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "0 1\n1 1/5\n2 -1/5\n3 -1/5\n4 1/5\n");
    assert_eq!(call(&["d-lens", "-5", "1", "0"]).1, "-1\n");
}

#[test]
fn surgery_commands() {
    assert_eq!(call(&["h1", "7", "3", "0"]).1, "9 spin=false\n");
    assert_eq!(call(&["h1", "5", "0", "-3"]).1, "15 null\n");
    let (code, out, _) = call(&["obstruct", "7", "3", "0", "9"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("obstructed [linking]"), "{out}");
    assert!(call(&["obstruct", "7", "1", "-1", "8"]).1.starts_with("realized"));
    assert_eq!(call(&["obstruct", "5", "0", "5", "25"]).0, 2);
}

#[test]
fn plumbing_file() {
    let dir = std::env::temp_dir().join(format!("lenslab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("single.json");
    std::fs::write(&good, r#"{"vertices":[{"weight":-2}],"edges":[]}"#).unwrap();
    let (code, out, _) = call(&["d-plumbing", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "det -2 classes 2\n(-2) -1/4 self-conjugate\n(0) 1/4 self-conjugate\n");
    let indefinite = dir.join("indefinite.json");
    std::fs::write(&indefinite, r#"{"vertices":[{"weight":-1},{"weight":-1}],"edges":[[0,1]]}"#).unwrap();
    assert_eq!(call(&["d-plumbing", indefinite.to_str().unwrap()]).0, 3);
    let malformed = dir.join("bad.json");
    std::fs::write(&malformed, r#"{"vertices":[{"weight":-2}],"edges":[[0,0]]}"#).unwrap();
    assert_eq!(call(&["d-plumbing", malformed.to_str().unwrap()]).0, 2);
    assert_eq!(call(&["d-plumbing", dir.join("missing.json").to_str().unwrap()]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lenslab");
    let ok = std::process::Command::new(bin).args(["d-lens", "11", "3", "1"]).output().unwrap();
    assert!(ok.status.success());
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "1/2\n");
    let bad = std::process::Command::new(bin).args(["cone", "9", "1", "1", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let threads = std::process::Command::new(bin)
        .env("LENSLAB_THREADS", "1")
        .args(["classify", "5", "--m-bound", "2", "--format", "csv"])
        .output()
        .unwrap();
    assert!(threads.status.success());
}
