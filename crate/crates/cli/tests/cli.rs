mod common;

use std::fs;

use common::*;
use serde_json::Value;

fn args(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn fixture_with_title_writes_six_circles() {
    let dir = tempfile::tempdir().unwrap();
    let (svg, png, json) = out_paths(dir.path());
    let mut a = fixture_args(dir.path());
    a.extend(args(&["--title", "Six lists", "--out"]));
    a.push(svg.display().to_string());
    a.push("--png".into());
    a.push(png.display().to_string());
    a.push("--regions".into());
    a.push(json.display().to_string());
    let out = run(&a);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = fs::read_to_string(&svg).unwrap();
    assert_eq!(svg_radii(&doc).len(), 6);
    assert!(doc.contains(">Six lists</text>"));
    assert!(fs::read(&png).unwrap().starts_with(b"\x89PNG"));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 3);
}

#[test]
fn progress_lines_and_final_status() {
    let dir = tempfile::tempdir().unwrap();
    let mut a = fixture_args(dir.path());
    a.extend(args(&["--regions"]));
    a.push(dir.path().join("r.json").display().to_string());
    let out = run(&a);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8(out.stderr).unwrap();
    let lines: Vec<&str> = stderr.lines().collect();
    let (last, epochs) = lines.split_last().unwrap();
    for (k, line) in epochs.iter().enumerate() {
        let fields: Vec<&str> = line.split(' ').collect();
        assert_eq!(fields.len(), 3, "{line}");
        assert_eq!(fields[0], format!("epoch={}", k + 1));
        assert!(fields[1].strip_prefix("loss=").unwrap().parse::<f64>().is_ok());
        assert!(fields[2].strip_prefix("lr=").unwrap().parse::<f64>().is_ok());
    }
    assert!(last.starts_with("status="));
    assert!(last.contains(&format!(" epochs={} ", epochs.len())));

    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["layout"]["epochs"].as_u64().unwrap() as usize, epochs.len());
    let status = last.split(' ').next().unwrap().strip_prefix("status=").unwrap();
    assert_eq!(report["layout"]["stop_reason"], status);
}

#[test]
fn quiet_mode_only_confirms_writes() {
    let dir = tempfile::tempdir().unwrap();
    let mut a = fixture_args(dir.path());
    a.extend(args(&["--quiet", "--out"]));
    a.push(dir.path().join("q.svg").display().to_string());
    let out = run(&a);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), format!("wrote {}", dir.path().join("q.svg").display()));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture_args(dir.path());
    let svg = dir.path().join("v.svg").display().to_string();
    let cases: Vec<Vec<String>> = vec![
        [&a[..2], &["--out".to_string(), svg.clone()]].concat(),
        a.clone(),
        [&a[..], &["--out".to_string(), svg.clone(), "--nope".to_string()]].concat(),
        [&a[..], &["--out".to_string(), svg.clone(), "--bg".to_string(), "#12345".to_string()]].concat(),
    ];
    for c in cases {
        let out = run(&c);
        assert_eq!(out.status.code(), Some(2), "{c:?}");
        assert!(!out.stderr.is_empty());
    }
    let mut eleven = Vec::new();
    for k in 0..11 {
        let p = dir.path().join(format!("s{k}.txt"));
        fs::write(&p, format!("x{k}\n")).unwrap();
        eleven.push("--set".to_string());
        eleven.push(format!("S{k}={}", p.display()));
    }
    eleven.extend(["--out".to_string(), svg]);
    assert_eq!(run(&eleven).status.code(), Some(2));
    assert_eq!(run(&eleven[2..]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    let empty = dir.path().join("empty.txt");
    let blanks = dir.path().join("blanks.txt");
    fs::write(&good, "a\nb\n").unwrap();
    fs::write(&empty, "").unwrap();
    fs::write(&blanks, " \n,\n").unwrap();
    fs::write(dir.path().join("bad.txt"), [0xffu8, 0xfe, 0x00]).unwrap();
    let svg = dir.path().join("v.svg").display().to_string();
    for other in ["empty.txt", "blanks.txt", "missing.txt", "bad.txt"] {
        let a = vec![
            "--set".to_string(),
            format!("A={}", good.display()),
            "--set".to_string(),
            format!("B={}", dir.path().join(other).display()),
            "--out".to_string(),
            svg.clone(),
        ];
        let out = run(&a);
        assert_eq!(out.status.code(), Some(1), "{other}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
        assert!(!dir.path().join("v.svg").exists());
    }
}

#[test]
fn disjoint_pair_report() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("x.txt"), "1\n2\n3\n").unwrap();
    fs::write(dir.path().join("y.txt"), "4,5\n").unwrap();
    let json = dir.path().join("r.json");
    let a = vec![
        "--set".to_string(),
        format!("X={}:#112233", dir.path().join("x.txt").display()),
        "--set".to_string(),
        format!("Y={}", dir.path().join("y.txt").display()),
        "--regions".to_string(),
        json.display().to_string(),
        "--out".to_string(),
        dir.path().join("v.svg").display().to_string(),
    ];
    assert_eq!(run(&a).status.code(), Some(0));
    let text = fs::read_to_string(&json).unwrap();
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["regions"].as_array().unwrap().len(), 2);
    let inter = report["intersections"].as_array().unwrap();
    assert_eq!(inter.len(), 2);
    assert!(inter.iter().all(|e| e["sets"].as_array().unwrap().len() == 1 && e["pruned"] == false));
    assert_eq!(report["union_size"], 5);
    assert_eq!(report["layout"]["stop_reason"], "converged");
    // Fixed key order.
    let keys = ["\"sets\"", "\"union_size\"", "\"regions\"", "\"intersections\"", "\"layout\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    let svg = fs::read_to_string(dir.path().join("v.svg")).unwrap();
    assert!(svg.contains("fill=\"#112233\""));
}

#[test]
fn exclusive_counts_sum_to_union() {
    let dir = tempfile::tempdir().unwrap();
    let mut a = fixture_args(dir.path());
    let json = dir.path().join("r.json");
    a.extend(["--quiet".to_string(), "--regions".to_string(), json.display().to_string()]);
    assert_eq!(run(&a).status.code(), Some(0));
    let report: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let sum: u64 = report["regions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["exclusive_count"].as_u64().unwrap())
        .sum();
    assert_eq!(sum, report["union_size"].as_u64().unwrap());
    let circles = report["layout"]["circles"].as_array().unwrap();
    assert_eq!(circles.len(), 6);
    assert_eq!(circles[0]["name"], "Set A");
}
