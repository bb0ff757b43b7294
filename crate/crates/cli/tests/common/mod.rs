#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

/// The six worked-example lists, as typed into the input boxes. Set E
/// repeats "AE".
pub const FIXTURE: [(&str, &str); 6] = [
    ("Set A", "A\nB\nC\nD\nE\nF\nG\nH\nI\n"),
    ("Set B", "E, F, G, J, K, L, M, N, O, P, Q, R, S, T, U\n"),
    ("Set C", "P\nQ\nR\nV\nW\nX\nY\n"),
    ("Set D", "R, S, Y, Z, AA, AB\n"),
    ("Set E", "AE\nAB\nAC\nAD\nAE\nAF\nAG\nAH\nAI\nAJ\n"),
    ("Set F", "G, H, I, T, U, AJ, AK, AL, AM\n"),
];

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_areavenn")
}

/// Writes the fixture lists into `dir` and returns `--set` arguments for them.
pub fn fixture_args(dir: &Path) -> Vec<String> {
    let mut args = Vec::new();
    for (k, (name, text)) in FIXTURE.iter().enumerate() {
        let path = dir.join(format!("set{k}.txt"));
        fs::write(&path, text).unwrap();
        args.push("--set".to_string());
        args.push(format!("{name}={}", path.display()));
    }
    args
}

/// Independent reading of a list: split on newlines and commas, trim,
/// drop blanks and repeats.
pub fn oracle_set(text: &str) -> BTreeSet<String> {
    text.split(['\n', ','])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn run(args: &[String]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

pub fn out_paths(dir: &Path) -> (PathBuf, PathBuf, PathBuf) {
    (dir.join("v.svg"), dir.join("v.png"), dir.join("v.json"))
}

/// Radii of every `<circle>` in document order.
pub fn svg_radii(svg: &str) -> Vec<f64> {
    svg.lines()
        .filter(|l| l.trim_start().starts_with("<circle "))
        .map(|l| {
            let start = l.find(" r=\"").unwrap() + 4;
            let end = start + l[start..].find('"').unwrap();
            l[start..end].parse().unwrap()
        })
        .collect()
}

/// Text of every count label in document order.
pub fn svg_count_labels(svg: &str) -> Vec<String> {
    svg.lines()
        .filter(|l| l.contains("class=\"count\""))
        .map(|l| {
            let start = l.find('>').unwrap() + 1;
            let end = l.rfind("</text>").unwrap();
            l[start..end].to_string()
        })
        .collect()
}
