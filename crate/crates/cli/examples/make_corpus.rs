//! Regenerates the bundled corpus and its golden reports.
//!
//! cargo run -p gpdcoh-cli --example make_corpus

use std::fs;
use std::path::PathBuf;

use gpdcoh::io::to_json;
use gpdcoh_cli::corpus::{documents, invoke, normalize, GOLDEN_CASES};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let golden = dir.join("golden");
    fs::create_dir_all(&golden)?;
    for (name, doc) in documents() {
        fs::write(dir.join(name), to_json(&doc))?;
    }
    for case in GOLDEN_CASES {
        let out = invoke(&dir, case.args, None);
        assert_eq!(out.code, case.exit, "{}: {}", case.name, out.stderr);
        let ext = if case.args.contains(&"tsv") { "tsv" } else { "json" };
        fs::write(golden.join(format!("{}.{ext}", case.name)), normalize(&out.stdout))?;
        println!("{} -> exit {}", case.name, out.code);
    }
    Ok(())
}
