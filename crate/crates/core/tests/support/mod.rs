//! Golden-file harness shared by the golden and acceptance targets.

use std::fs;
use std::path::{Path, PathBuf};

use arthur_packets::cli;

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Cases from `commands.txt`: one `name: args...` per line, `#` for comments.
pub fn cases() -> Vec<Case> {
    let text = fs::read_to_string(root().join("commands.txt")).expect("commands.txt");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, rest) = l.split_once(':').expect("name: args");
            Case { name: name.trim().to_string(), args: rest.split_whitespace().map(String::from).collect() }
        })
        .collect()
}

/// Run a case in-process. Relative `--input` paths resolve against the
/// golden directory.
pub fn render(case: &Case) -> String {
    let mut args = vec!["arthur".to_string()];
    let mut prev_input = false;
    for a in &case.args {
        if prev_input {
            args.push(root().join(a).to_string_lossy().into_owned());
        } else {
            args.push(a.clone());
        }
        prev_input = a == "--input";
    }
    let (code, out, err) = cli::run(args);
    format!("exit: {code}\n--- stdout\n{out}--- stderr\n{err}")
}

pub fn expected_path(case: &Case) -> PathBuf {
    root().join("expected").join(format!("{}.txt", case.name))
}

/// Compare every case against its committed output; with `UPDATE_GOLDEN=1`
/// rewrite them instead. Returns the names of mismatching cases.
pub fn compare_all() -> Vec<String> {
    let update = std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1");
    let mut bad = Vec::new();
    for case in cases() {
        let got = render(&case);
        let path = expected_path(&case);
        if update {
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, &got).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            _ => bad.push(case.name),
        }
    }
    bad
}
