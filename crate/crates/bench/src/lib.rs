//! Inputs for the benchmarks.

use std::fs;
use std::path::Path;

use dockslim_core::decode_source;

/// The real-world Dockerfiles kept with the core crate's tests, sorted
/// by name.
pub fn corpus() -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/corpus");
    let mut paths: Vec<_> = fs::read_dir(&dir)
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| decode_source(&fs::read(p).expect("corpus file")).0)
        .collect()
}

/// Total size of `texts` in bytes.
pub fn bytes(texts: &[String]) -> u64 {
    texts.iter().map(|t| t.len() as u64).sum()
}
