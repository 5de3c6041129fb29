use std::fs;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbitlab"))
}

#[test]
fn identical_config_gives_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let outputs: Vec<(String, String)> = ["a", "b"]
        .iter()
        .map(|name| {
            let out = dir.path().join(name);
            let run = bin()
                .args(["--mode", "bs", "-p", "1", "-q", "2", "-r", "2", "--jmax", "3"])
                .args(["--samples", "2000", "--seed", "7", "--suite", "gap,decay,carry,theta"])
                .arg("--out")
                .arg(&out)
                .output()
                .unwrap();
            assert!(run.status.success());
            (
                fs::read_to_string(out.join("reports.jsonl")).unwrap(),
                fs::read_to_string(out.join("summary.csv")).unwrap(),
            )
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
    let jsonl = &outputs[0].0;
    assert!(jsonl.lines().all(|l| l.starts_with("{\"claim\":")));
    assert!(jsonl.contains("\"value\":\"1/2\""));
    assert!(outputs[0].1.starts_with("claim,mode,params,value,bound,ci_low,ci_high,pass"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    let out = dir.path().join("out");
    fs::write(
        &path,
        format!("mode = \"vaes\"\nprimes = [2, 3, 5]\nsamples = 3000\nout = {:?}\n", out.display().to_string()),
    )
    .unwrap();
    let o = bin().arg("--config").arg(&path).args(["--nmax", "1"]).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let jsonl = fs::read_to_string(out.join("reports.jsonl")).unwrap();
    assert!(jsonl.contains("thm-s-v.3"));
    assert!(jsonl.contains("p=3 n=1"));
    assert!(!jsonl.contains("p=5"));
}

#[test]
fn non_coprime_is_rejected() {
    let o = bin().args(["--mode", "bs", "-p", "2", "-q", "4"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("coprime"));
}
