use std::path::Path;
use std::process::{Command, Output};

fn rankbreak(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankbreak")).current_dir(dir).args(args).output().expect("spawn rankbreak")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn sa_example_attack_writes_plaintext() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("msg.bin"), b"structured distortion").unwrap();
    assert_eq!(code(&rankbreak(d, &["keygen", "--scheme", "sa-example", "--seed", "11", "--out", "keys"])), 0);
    let enc = rankbreak(d, &["encrypt", "--key", "keys/public.key", "--input", "msg.bin", "--out", "ct.txt"]);
    assert_eq!(code(&enc), 0);

    let overbeck = rankbreak(d, &["attack", "--method", "overbeck", "--key", "keys/public.key", "--input", "ct.txt"]);
    assert_eq!(code(&overbeck), 1);
    assert!(String::from_utf8_lossy(&overbeck.stdout).contains("reason=XStarStarRankDeficient"));

    let sa =
        rankbreak(d, &["attack", "--method", "sa", "--key", "keys/public.key", "--input", "ct.txt", "--out", "p.bin"]);
    assert_eq!(code(&sa), 0, "{}", String::from_utf8_lossy(&sa.stderr));
    assert!(String::from_utf8_lossy(&sa.stdout).contains("outcome=broken"));
    assert_eq!(std::fs::read(d.join("p.bin")).unwrap(), b"structured distortion");
}

#[test]
fn legitimate_roundtrip_and_wrong_key() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("msg.bin"), b"twelve bytes").unwrap();
    let gen = |seed: &str, out: &str| {
        rankbreak(
            d,
            &[
                "keygen", "--scheme", "gpt", "--m", "12", "--n", "12", "--k", "4", "--t", "1", "--seed", seed, "--out",
                out,
            ],
        )
    };
    assert_eq!(code(&gen("1", "a")), 0);
    assert_eq!(code(&gen("2", "b")), 0);
    assert_eq!(code(&rankbreak(d, &["encrypt", "--key", "a/public.key", "--input", "msg.bin", "--out", "ct.txt"])), 0);
    assert_eq!(code(&rankbreak(d, &["decrypt", "--key", "a/private.key", "--input", "ct.txt", "--out", "p.bin"])), 0);
    assert_eq!(std::fs::read(d.join("p.bin")).unwrap(), b"twelve bytes");

    let wrong = rankbreak(d, &["decrypt", "--key", "b/private.key", "--input", "ct.txt", "--out", "q.bin"]);
    assert_eq!(code(&wrong), 1);
    assert!(!d.join("q.bin").exists());

    let gpt =
        rankbreak(d, &["attack", "--method", "gpt", "--key", "a/public.key", "--input", "ct.txt", "--out", "r.bin"]);
    assert_eq!(code(&gpt), 0);
    assert_eq!(std::fs::read(d.join("r.bin")).unwrap(), b"twelve bytes");
}

#[test]
fn loidreau_keygen_at_reference_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = [
        "keygen",
        "--scheme",
        "ggpt-loidreau",
        "--q",
        "2",
        "--m",
        "24",
        "--n",
        "24",
        "--k",
        "12",
        "--a",
        "3",
        "--that",
        "40",
        "--seed",
        "7",
        "--out",
        "L",
    ];
    assert_eq!(code(&rankbreak(d, &args)), 0);
    let public = std::fs::read_to_string(d.join("L/public.key")).unwrap();
    assert!(public.contains("scheme=ggpt-loidreau"));
    assert!(public.contains("G_pub=12 64 "));
    assert!(!public.contains("sigma="));
    assert!(std::fs::read_to_string(d.join("L/private.key")).unwrap().contains("sigma=64 64 "));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&rankbreak(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&rankbreak(dir.path(), &["attack", "--method", "magic", "--key", "k", "--input", "c"])), 2);
    assert_eq!(code(&rankbreak(dir.path(), &["experiment", "--trials", "3"])), 2);
}

#[test]
fn experiment_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let run = |out: &str| {
        let args = [
            "experiment",
            "--which",
            "assumptions",
            "--trials",
            "12",
            "--m",
            "6",
            "--n",
            "6",
            "--k",
            "3",
            "--a",
            "2",
            "--that",
            "7",
            "--seed",
            "5",
            "--out",
            out,
        ];
        assert_eq!(code(&rankbreak(d, &args)), 0);
        std::fs::read_to_string(d.join(out).join("report.kv")).unwrap()
    };
    let strip = |s: String| s.lines().filter(|l| !l.starts_with("time.")).collect::<Vec<_>>().join("\n");
    let (r1, r2) = (run("r1"), run("r2"));
    assert!(r1.contains("assumption1.trials=12"));
    assert_eq!(strip(r1), strip(r2));
    assert!(d.join("r1/report.txt").exists());

    let args = ["experiment", "--which", "attack-success", "--scheme", "gpt", "--trials", "3", "--out", "g"];
    assert_eq!(code(&rankbreak(d, &args)), 0);
    assert!(std::fs::read_to_string(d.join("g/report.kv")).unwrap().contains("attack.successes=3"));
}
