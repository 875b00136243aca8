use std::process::{Command, Output};

fn algolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algolab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn nakayama_t63() {
    let out = algolab(&["nakayama", "--n", "6", "--l", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["gldim"].as_u64(), v["domdim"].as_u64()), (Some(3), Some(3)));
    assert_eq!(v["higher_auslander"], true);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, String::from_utf8(algolab(&["nakayama", "--n", "6", "--l", "3", "--json"]).stdout).unwrap());
    assert!(text.find("\"domdim\"").unwrap() < text.find("\"gldim\"").unwrap());
}

#[test]
fn replicate_a2_verified() {
    let out = algolab(&["replicate", "--base", "A2:linear", "--m", "2", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verified"], "oracle-verified");
    assert_eq!((v["domdim"].as_i64(), v["idim"].as_i64()), (Some(3), Some(3)));
    for key in ["domdim", "idim", "gldim", "higher_auslander", "minimal_ag", "schedule"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn gl_verdicts() {
    let v = json(&algolab(&["gl", "--weights", "2,2,2,2", "--d", "1"]));
    assert_eq!(v["torsion"], true);
    let v = json(&algolab(&["gl", "--weights", "2,3,7", "--d", "1", "--scan", "25", "--json"]));
    assert_eq!((v["torsion"].as_bool(), v["scan"].as_str()), (Some(false), Some("certified")));
    assert_eq!(v["omega"], "1x1+2x2+6x3+-2c");
}

#[test]
fn serre_formal_and_sgc() {
    let v = json(&algolab(&["check-serre-formal", "--kupisch", "[3,3,3,3,3,2,1]"]));
    assert_eq!(v["verdict"], "serre_formal");
    let v = json(&algolab(&["check-serre-formal", "--kupisch", "[3,3,3,3,2,1]"]));
    assert_eq!(v["verdict"], "not_serre_formal");
    let v = json(&algolab(&["sgc", "--n", "4", "--l", "3", "--m", "1", "--verify"]));
    assert_eq!(v["kupisch"], "[3,3,3,3,2,1]");
    assert_eq!(v["verified"], "oracle-verified");
}

#[test]
fn usage_errors_exit_one() {
    let out = algolab(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(algolab(&["nakayama", "--n", "3", "--l", "5"]).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_algolab"))
        .args(["nakayama", "--n", "6", "--l", "3"])
        .env("ALGOLAB_BOUND", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_algolab"))
        .args(["nakayama", "--kupisch", "[3,2,2,1]"])
        .env("ALGOLAB_BOUND", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_targets() {
    let out = algolab(&["verify", "--target", "replicated-linearA"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    let out = algolab(&["verify", "--target", "self-test"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert!(!v["diffs"].as_array().unwrap().is_empty());
}

#[test]
fn nakayama_sweep_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("naka.csv");
    let p = path.to_str().unwrap();
    let out = algolab(&["sweep", "--family", "nakayama", "--n", "2..10", "--l", "2..10", "--m", "0..4", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        ["id", "family", "params", "m", "domdim", "idim", "gldim", "ha", "min_ag", "sf", "schedule_t", "verified"]
    );
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let p: Vec<usize> =
            rec[0].trim_start_matches("nakayama:").split(',').map(|s| s[2..].parse().unwrap()).collect();
        let (n, l, m) = (p[0], p[1], p[2]);
        assert_eq!(&rec[7] == "true", l == 2 || n.abs_diff(m) % l == 0, "{}", &rec[0]);
        assert_ne!(&rec[11], "MISMATCH");
        rows += 1;
    }
    assert_eq!(rows, 9 * 10 / 2 * 5);
    let first = std::fs::read(&path).unwrap();
    algolab(&["sweep", "--family", "nakayama", "--n", "2..10", "--l", "2..10", "--m", "0..4", "--out", p]);
    assert_eq!(first, std::fs::read(&path).unwrap());
}

#[test]
fn dynkin_sweep_schedule() {
    let out = algolab(&["sweep", "--family", "dynkin", "--types", "A2,A3,A4", "--all-orientations", "--m", "1..8"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let label = &rec[2];
        let n: usize = label[1..2].parse().unwrap();
        let bits = &label[3..];
        let h = n + 1;
        let m: usize = rec[3].parse().unwrap();
        // h_A = h/2 exactly when the orientation is fixed by the diagram flip
        let flipped: String = bits.chars().rev().map(|c| if c == '0' { '1' } else { '0' }).collect();
        let period = if h % 2 == 0 && flipped == bits { h / 2 } else { h };
        assert_eq!(&rec[8] == "true", (m + 1) % period == 0, "{}", &rec[0]);
        assert_eq!(&rec[11], "oracle-verified");
    }
}

#[test]
fn empty_sweep() {
    let out = algolab(&["sweep", "--family", "nakayama", "--n", "5..4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
    let out = algolab(&["sweep", "--family", "gl", "--weights", "2,3,7", "--d", "1", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["status"]["state"], "complete");
    assert_eq!(v["rows"][0]["sf"], true);
}
