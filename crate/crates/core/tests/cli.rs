//! The command-line front end, run in-process against temporary caches.

use std::fs;
use std::path::Path;

fn run(cache: &Path, args: &[&str]) -> (i32, String, String) {
    let mut full = vec![
        "sporadic".to_string(),
        "--cache-dir".into(),
        cache.display().to_string(),
    ];
    full.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = sporadic::cli::run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn dim_prints_one() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(
        dir.path(),
        &["dim", "--k", "3", "--genus", "0", "--regular-cusps", "6"],
    );
    assert_eq!((code, out.as_str()), (0, "1\n"));
}

#[test]
fn trace_at_seven() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(dir.path(), &["trace", "--p", "7"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("A = 10\n"), "{out}");
    assert!(out.contains("split"));
    let (_, csv, _) = run(dir.path(), &["trace", "--p", "7", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 1 + 8 + 1);
}

#[test]
fn theorem1_table_and_short_series() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(
        dir.path(),
        &["theorem1", "--max-prime", "199", "--terms", "200"],
    );
    assert_eq!(code, 0);
    assert!(out.contains("45 rows, 0 not passing"));
    let (code, _, err) = run(
        dir.path(),
        &["theorem1", "--max-prime", "199", "--terms", "150"],
    );
    assert_eq!(code, 2);
    assert!(err.contains("--terms 200"), "{err}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["--help"]).0, 0);
    assert_eq!(run(dir.path(), &["frobnicate"]).0, 2);
    assert_eq!(run(dir.path(), &["dim", "--k", "4", "--genus", "0"]).0, 2);
    assert_eq!(run(dir.path(), &["trace", "--p", "7", "--cover", "5"]).0, 2);
    assert_eq!(
        run(dir.path(), &["stienstra-beukers", "--max-prime", "60"]).0,
        0
    );
    assert_eq!(run(dir.path(), &["three-cover", "--max-prime", "13"]).0, 1);
}

#[test]
fn records_and_csv_share_columns() {
    let dir = tempfile::tempdir().unwrap();
    let (_, records, _) = run(
        dir.path(),
        &[
            "stienstra-beukers",
            "--max-prime",
            "30",
            "--format",
            "records",
        ],
    );
    let first: serde_json::Value = serde_json::from_str(records.lines().next().unwrap()).unwrap();
    for key in ["family", "p", "m", "r", "required", "achieved", "pass"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    let (_, csv, _) = run(
        dir.path(),
        &["stienstra-beukers", "--max-prime", "30", "--format", "csv"],
    );
    assert_eq!(
        csv.lines().next(),
        Some("family,p,m,r,required,achieved,pass")
    );
    assert_eq!(csv.lines().count(), records.lines().count() + 1);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# small run\nmax-prime = 30\nformat = csv\n").unwrap();
    let cfg = cfg.display().to_string();
    let (_, out, _) = run(dir.path(), &["--config", &cfg, "stienstra-beukers"]);
    assert_eq!(out.lines().count(), 1 + 8);
    let (_, out, _) = run(
        dir.path(),
        &["--config", &cfg, "stienstra-beukers", "--max-prime", "12"],
    );
    assert_eq!(out.lines().count(), 1 + 3);
    fs::write(dir.path().join("bad.cfg"), "colour = blue\n").unwrap();
    let bad = dir.path().join("bad.cfg").display().to_string();
    assert_eq!(
        run(
            dir.path(),
            &["--config", &bad, "dim", "--k", "3", "--genus", "0"]
        )
        .0,
        2
    );
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["asd", "--p", "13", "--terms", "1600"];
    let (c1, cold, err1) = run(dir.path(), &args);
    let (c2, warm, err2) = run(dir.path(), &args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(cold, warm);
    assert!(err1.contains("series g: computed"), "{err1}");
    assert!(err2.contains("series g: hit"), "{err2}");
    let (_, one_worker, _) = run(
        dir.path(),
        &["asd", "--p", "13", "--terms", "1600", "--workers", "1"],
    );
    assert_eq!(one_worker, cold);
}

#[test]
fn truncated_series_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["theorem1", "--max-prime", "50"];
    let (_, first, _) = run(dir.path(), &args);
    let path = dir.path().join("series-g.txt");
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, &text[..text.len() / 2]).unwrap();
    let (code, again, err) = run(dir.path(), &args);
    assert_eq!(code, 0);
    assert_eq!(first, again);
    assert!(err.contains("corrupt"), "{err}");
    assert_eq!(fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn cache_status_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["det", "--p", "5"]);
    let (_, status, _) = run(dir.path(), &["cache", "status"]);
    assert!(status.contains("counts 5-2"));
    assert!(status.contains("counts 25-2"));
    let (code, _, _) = run(dir.path(), &["cache", "clear"]);
    assert_eq!(code, 0);
    let (_, status, _) = run(dir.path(), &["cache", "status"]);
    assert!(status.ends_with("0 entries\n"), "{status}");
}

#[test]
fn unwritable_cache_dir_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("not-a-dir");
    fs::write(&file, "x").unwrap();
    assert_eq!(run(&file, &["cache", "status"]).0, 2);
}
