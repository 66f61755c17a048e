use std::path::Path;
use std::process::{Command, Output};

fn cubic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_word_reports_matrix_and_vertices() {
    let o = cubic(&["classify-word", "yzyzxyxyzyzxyx"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "Hyperbolic");
    assert_eq!(v["ind"], "V1");
    assert_eq!(v["attr"], "V2");
    assert_eq!(v["trace"], "258");
}

#[test]
fn fatou_exit_codes() {
    assert!(cubic(&["certify-fatou", "--params", "markoff", "--depth", "6"]).status.success());
    // no escape root at D = 4
    assert_eq!(cubic(&["certify-fatou", "--params", "torus:4"]).status.code(), Some(1));
    // start inside the radius-2 polydisk
    assert_eq!(cubic(&["certify-fatou", "--point", "1,1,1", "--depth", "4"]).status.code(), Some(2));
}

#[test]
fn picard_verify_flags_bad_words() {
    let ok = cubic(&["picard-verify", "--word", "xz", "--word", "xyzx", "--samples", "500"]);
    assert!(ok.status.success(), "{}", stdout(&ok));
    let bad = cubic(&["picard-verify", "--word", "yzyzxyxyzyzxyx", "--samples", "500"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("ERROR"));
}

#[test]
fn orbit_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("orbit.csv");
    let o = cubic(&["orbit", "--params", "raw:0,0,0,20", "--point", "1,2,3", "--word", "xyz", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "step,prefix,x,y,z,residual");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.ends_with(",0.0")));
}

fn scan_to(path: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["scan", "--slice", "torus", "--grid", "3,2", "--depth", "5", "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    cubic(&args)
}

#[test]
fn scans_are_reproducible_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    assert!(scan_to(&a, &[]).status.success());
    assert!(scan_to(&b, &["--workers", "1"]).status.success());
    let full = std::fs::read(&a).unwrap();
    assert_eq!(full, std::fs::read(&b).unwrap());
    assert_eq!(full.iter().filter(|&&c| c == b'\n').count(), 7);

    // drop the last record and half of the one before it
    let newlines: Vec<usize> = full.iter().enumerate().filter(|(_, &c)| c == b'\n').map(|(i, _)| i).collect();
    std::fs::write(&b, &full[..newlines[4] + 10]).unwrap();
    let o = scan_to(&b, &["--resume"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("2 written, 4 already present"));
    assert_eq!(full, std::fs::read(&b).unwrap());

    // a different configuration refuses to resume
    let o = cubic(&["scan", "--slice", "torus", "--grid", "3,2", "--depth", "6", "--resume", "--out", b.to_str().unwrap()]);
    assert!(!o.status.success());
}

#[test]
fn heatmap_from_scan() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.jsonl");
    let img = dir.path().join("h.ppm");
    assert!(scan_to(&s, &[]).status.success());
    let o = cubic(&["heatmap", "--input", s.to_str().unwrap(), "--field", "fatou-words", "--out", img.to_str().unwrap()]);
    assert!(o.status.success());
    let bytes = std::fs::read(&img).unwrap();
    let header = b"P6\n3 2\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    assert_eq!(bytes.len(), header.len() + 3 * 6);
}
