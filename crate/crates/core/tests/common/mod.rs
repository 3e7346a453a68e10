//! Fixture and corpus loading shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use dockslim_core::RuleId;

pub fn core_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core")
}

pub struct Fixture {
    pub name: String,
    pub text: String,
    /// `# expect: <rule> <line>` headers.
    pub expect: BTreeSet<(RuleId, usize)>,
    /// `# not-fixable: <rule> <line>` headers.
    pub not_fixable: BTreeSet<(RuleId, usize)>,
}

impl Fixture {
    pub fn single_smell(&self) -> bool {
        self.expect.len() == 1
    }
}

fn entry(rest: &str) -> (RuleId, usize) {
    let mut it = rest.split_whitespace();
    let rule = it.next().expect("rule name").parse().expect("known rule");
    let line = it.next().expect("line").parse().expect("line number");
    (rule, line)
}

pub fn fixtures() -> Vec<Fixture> {
    let dir = core_dir().join("tests/fixtures");
    let mut out: Vec<Fixture> = fs::read_dir(&dir)
        .expect("fixture directory")
        .map(|e| e.expect("dir entry").path())
        .map(|path| {
            let text = fs::read_to_string(&path).expect("fixture text");
            let mut f = Fixture {
                name: path.file_name().unwrap().to_string_lossy().into_owned(),
                expect: BTreeSet::new(),
                not_fixable: BTreeSet::new(),
                text,
            };
            for line in f.text.lines().take_while(|l| l.starts_with('#')) {
                if let Some(rest) = line.strip_prefix("# expect:") {
                    if rest.trim() != "none" {
                        f.expect.insert(entry(rest));
                    }
                } else if let Some(rest) = line.strip_prefix("# not-fixable:") {
                    f.not_fixable.insert(entry(rest));
                }
            }
            f
        })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Real-world Dockerfiles collected from published packages.
pub fn corpus() -> Vec<(String, String)> {
    let dir = core_dir().join("tests/corpus");
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .map(|p| {
            let bytes = fs::read(&p).expect("corpus file");
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, dockslim_core::decode_source(&bytes).0)
        })
        .collect();
    out.sort();
    out
}
