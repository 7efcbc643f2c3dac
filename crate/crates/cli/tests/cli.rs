use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use nadpcm::codec::{encode_traced, CodecConfig, PredictorMode};
use nadpcm::par::Exec;
use nadpcm::signal::load_wav;

fn nadpcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nadpcm"))
        .args(args)
        .output()
        .expect("spawn nadpcm")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn synth(path: &Path, kind: &str, seconds: &str, seed: &str) {
    let o = nadpcm(&["synth", s(path), "--kind", kind, "--seconds", seconds, "--seed", seed]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn encode_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("in.wav");
    let bits = dir.path().join("in.nadp");
    let out = dir.path().join("out.wav");
    synth(&wav, "ar", "0.3", "1");

    let o = nadpcm(&["encode", s(&wav), s(&bits), "--nq", "3", "--mode", "mlp", "--quiet"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("SEGSNR"));
    let o = nadpcm(&["decode", s(&bits), s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));

    // the WAV holds the decoder output to 16 bits
    let x = load_wav(&wav).unwrap();
    let cfg = CodecConfig::new(3, PredictorMode::Mlp);
    let rec = encode_traced(&x, &cfg, Exec::default()).unwrap().reconstruction;
    let y = load_wav(&out).unwrap();
    assert_eq!(y.len(), x.len());
    for (a, b) in y.samples.iter().zip(&rec) {
        assert!((a - b).abs() <= 1.0 / 32768.0, "{a} vs {b}");
    }

    let o = nadpcm(&["eval", s(&wav), s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("SEGSNR"));
}

#[test]
fn default_flags_encode() {
    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("in.wav");
    let bits = dir.path().join("in.nadp");
    synth(&wav, "tones", "0.1", "0");
    let o = nadpcm(&["encode", s(&wav), s(&bits)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = nadpcm(&["decode", s(&bits), s(&dir.path().join("out.wav"))]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("nq=5 mode=committee_median epochs=6"));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("in.wav");
    synth(&wav, "noise", "0.1", "0");
    let bits = dir.path().join("x.nadp");
    for args in [
        vec!["encode", s(&wav), s(&bits), "--nq", "7"],
        vec!["encode", s(&wav), s(&bits), "--mode", "lstm"],
        vec!["encode", s(&wav), s(&bits), "--frame-len", "10"],
        vec!["synth", s(&wav), "--seconds", "0"],
        vec!["frobnicate"],
    ] {
        let o = nadpcm(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    assert!(!bits.exists());
}

#[test]
fn runtime_errors_exit_1_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let bits = dir.path().join("x.nadp");
    let o = nadpcm(&["encode", s(&dir.path().join("missing.wav")), s(&bits)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!bits.exists());

    let wav = dir.path().join("in.wav");
    synth(&wav, "ar", "0.1", "0");
    assert!(nadpcm(&["encode", s(&wav), s(&bits), "--nq", "2", "--quiet"]).status.success());
    let good = fs::read(&bits).unwrap();
    let out = dir.path().join("out.wav");

    let mut bad = good.clone();
    bad[..4].copy_from_slice(b"RIFF");
    fs::write(&bits, &bad).unwrap();
    let o = nadpcm(&["decode", s(&bits), s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad magic"), "{}", stderr(&o));

    let mut bad = good.clone();
    bad[4] = bad[4].wrapping_add(1);
    fs::write(&bits, &bad).unwrap();
    let o = nadpcm(&["decode", s(&bits), s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("version"), "{}", stderr(&o));

    fs::write(&bits, &good[..good.len() - 2]).unwrap();
    assert_eq!(nadpcm(&["decode", s(&bits), s(&out)]).status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn synth_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.wav");
    let b = dir.path().join("b.wav");
    let c = dir.path().join("c.wav");
    synth(&a, "ar", "0.2", "4");
    synth(&b, "ar", "0.2", "4");
    synth(&c, "ar", "0.2", "5");
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
    assert_eq!(load_wav(&a).unwrap().len(), 1600);
}

#[test]
fn grid_over_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    for (i, kind) in ["ar", "tones", "noise"].iter().enumerate() {
        synth(&corpus.join(format!("{kind}.wav")), kind, "0.1", &i.to_string());
    }
    fs::write(corpus.join("notes.txt"), "not audio").unwrap();

    let run = |name: &str, extra: &[&str]| {
        let out = dir.path().join(name);
        let mut args = vec!["grid", s(&corpus), s(&out), "--epochs-list", "2"];
        args.extend_from_slice(extra);
        let o = nadpcm(&args);
        assert!(o.status.success(), "{}", stderr(&o));
        let rows = fs::read_to_string(&out).unwrap();
        let summary = fs::read_to_string(out.with_file_name(name.replace(".csv", "_summary.csv"))).unwrap();
        (rows, summary)
    };
    let (rows, summary) = run("a.csv", &[]);
    // 3 files x 4 nq x 2 modes, plus headers
    assert_eq!(rows.lines().count(), 25);
    assert_eq!(summary.lines().count(), 9);
    assert!(rows.lines().skip(1).all(|l| l.contains(",2,")));
    let (rows_again, summary_again) = run("b.csv", &["--sequential"]);
    assert_eq!(rows, rows_again);
    assert_eq!(summary, summary_again);

    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    let o = nadpcm(&["grid", s(&empty), s(&dir.path().join("c.csv"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!dir.path().join("c.csv").exists());
}
