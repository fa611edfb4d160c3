//! Golden corpus: `golden/<case>.args` holds the expected exit code on its
//! first line and one argument per line after it; `<case>.json` is the
//! expected envelope. `BLESS=1` rewrites the expected files.

use std::fs;
use std::path::PathBuf;

use schinzel_cli::{check_envelope, run_args};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn golden_corpus() {
    let bless = std::env::var_os("BLESS").is_some();
    let mut cases: Vec<PathBuf> = fs::read_dir(dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "args"))
        .collect();
    cases.sort();
    assert!(cases.len() >= 20, "corpus went missing");
    let mut failures = Vec::new();
    for case in &cases {
        let text = fs::read_to_string(case).unwrap();
        let mut lines = text.lines();
        let code: i32 = lines.next().unwrap().trim().parse().unwrap();
        let argv: Vec<&str> = std::iter::once("schinzel").chain(lines).collect();
        let run = run_args(&argv).unwrap_or_else(|e| panic!("{}: {e:#}", case.display()));
        let expected = case.with_extension("json");
        if bless {
            fs::write(&expected, run.json()).unwrap();
        } else {
            let want = fs::read_to_string(&expected)
                .unwrap_or_else(|_| panic!("missing {}", expected.display()));
            if want != run.json() {
                failures.push(format!("{}: envelope differs", case.display()));
            }
        }
        if run.code != code {
            failures.push(format!("{}: exit {} != {code}", case.display(), run.code));
        }
        let checks = check_envelope(&run.envelope).unwrap();
        if !checks.iter().all(|c| c.pass) {
            failures.push(format!("{}: verify failed {checks:?}", case.display()));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
