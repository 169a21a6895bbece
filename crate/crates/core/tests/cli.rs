use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use palqa::{corpus, image, GrayImage};

fn palqa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_palqa")).args(args).output().expect("spawn palqa")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_image(dir: &Path, name: &str, img: &GrayImage) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, image::write_pgm(img)).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn encode_flat_reports_zero_budget() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_image(dir.path(), "flat.pgm", &GrayImage::filled(32, 32, 128).unwrap());
    let out = dir.path().join("flat.palqa");
    let o = palqa(&["encode", s(&input), "-q", "16", "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "b_total=0"), "{text}");
    assert!(text.lines().any(|l| l == "gpp=0"), "{text}");
    assert_eq!(std::fs::read(&out).unwrap().len(), palqa::payload::HEADER_LEN);

    // header-only payload decodes to the flat image
    let back = dir.path().join("back.pgm");
    assert_eq!(palqa(&["decode", s(&out), "-o", s(&back)]).status.code(), Some(0));
    let img = image::read_pgm(&std::fs::read(&back).unwrap()).unwrap();
    assert_eq!(img, GrayImage::filled(32, 32, 128).unwrap());
}

#[test]
fn encode_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let src = corpus::natural(40, 24, 11);
    let input = write_image(dir.path(), "in.pgm", &src);
    let payload = dir.path().join("in.palqa");
    let back = dir.path().join("out.pgm");
    let o = palqa(&["encode", s(&input), "-q", "8", "-o", s(&payload)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(palqa(&["decode", s(&payload), "-o", s(&back)]).status.success());
    let got = image::read_pgm(&std::fs::read(&back).unwrap()).unwrap();
    assert_eq!(got, palqa::codec::reference_reconstruction(&src, 8).unwrap());

    // identical inputs give identical bytes
    let again = dir.path().join("again.palqa");
    palqa(&["encode", s(&input), "-q", "8", "-o", s(&again)]);
    assert_eq!(std::fs::read(&payload).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = palqa(&["encode", "/no/such/file.pgm", "-q", "8", "-o", s(&dir.path().join("x"))]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());

    assert_eq!(palqa(&["encode"]).status.code(), Some(1));
    assert_eq!(palqa(&["frobnicate"]).status.code(), Some(1));

    let bad = dir.path().join("bad.palqa");
    std::fs::write(&bad, b"NOPE\x01\x08\x00\x08\x00\x08\x00\x08\0\0\0\0\0\0\0\0").unwrap();
    let o = palqa(&["decode", s(&bad), "-o", s(&dir.path().join("y.pgm"))]);
    assert_eq!(o.status.code(), Some(2));

    let not_pgm = dir.path().join("not.pgm");
    std::fs::write(&not_pgm, b"P2\n2 2\n255\n0 0 0 0\n").unwrap();
    let o = palqa(&["encode", s(&not_pgm), "-q", "8", "-o", s(&dir.path().join("z"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rd_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_image(dir.path(), "n.pgm", &corpus::natural(64, 64, 3));
    let csv = dir.path().join("rd.csv");
    let o = palqa(&["rd-sweep", s(&input), "-q", "32,8,16", "--methods", "palqa,nzneqr", "--csv", s(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(palqa::codec::CSV_HEADER));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let keys: Vec<(&str, u32)> = rows.iter().map(|r| (r[0], r[1].parse().unwrap())).collect();
    assert_eq!(
        keys,
        [("nzneqr", 8), ("nzneqr", 16), ("nzneqr", 32), ("palqa", 8), ("palqa", 16), ("palqa", 32)]
    );
    for i in 0..3 {
        let (n, p) = (&rows[i], &rows[i + 3]);
        assert!(p[2].parse::<f64>().unwrap() < n[2].parse::<f64>().unwrap());
        assert_eq!(p[4], n[4]);
    }

    // stdout when no --csv, literal model raises b_state
    let adopted = stdout(&palqa(&["rd-sweep", s(&input), "-q", "8", "--methods", "palqa"]));
    let literal = stdout(&palqa(&["--literal-eq6", "rd-sweep", s(&input), "-q", "8", "--methods", "palqa"]));
    let b_state = |t: &str| t.lines().nth(1).unwrap().split(',').nth(6).unwrap().parse::<u64>().unwrap();
    assert!(b_state(&literal) > b_state(&adopted));
}

#[test]
fn export_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_image(dir.path(), "n.pgm", &corpus::natural(16, 16, 4));
    let a = dir.path().join("a.qc");
    let b = dir.path().join("b.qc");
    for p in [&a, &b] {
        assert!(palqa(&["export-circuit", s(&input), "-q", "8", "--block", "2", "-o", s(p)]).status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let c = palqa::circuit::Circuit::from_text(&text, palqa::circuit::QubitLayout::BLOCK, "").unwrap();
    assert!(c.counts().mcx > 0);

    // flat block: Hadamards only
    let flat = write_image(dir.path(), "flat.pgm", &GrayImage::filled(8, 8, 128).unwrap());
    let o = palqa(&["export-circuit", s(&flat), "-q", "8", "--block", "0"]);
    let gates: Vec<String> =
        stdout(&o).lines().filter(|l| !l.starts_with('#') && !l.starts_with("qubits")).map(String::from).collect();
    assert_eq!(gates.len(), 6);
    assert!(gates.iter().all(|g| g.starts_with("h ")));

    let o = palqa(&["export-circuit", s(&flat), "-q", "8", "--block", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_image(dir.path(), "n.pgm", &corpus::natural(16, 16, 5));
    let o = palqa(&["verify", s(&input), "-q", "16", "--block", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("result=PASS"));

    let o = palqa(&["verify", s(&input), "-q", "16", "--block", "1", "--tamper"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("result=FAIL"));

    let o = Command::new(env!("CARGO_BIN_EXE_palqa"))
        .args(["verify", s(&input), "-q", "16", "--block", "1"])
        .env("PALQA_MAX_QUBITS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
