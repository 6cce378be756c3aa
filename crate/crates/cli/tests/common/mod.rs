//! Helpers shared by the CLI integration and acceptance tests.

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn demo_dataset() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/demo_transactions.csv")
}

pub fn gamine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamine"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

/// Zeroes every `*_ms` field so byte comparisons ignore wall-clock noise.
pub fn scrub_timings(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            for (key, entry) in map.iter_mut() {
                if key.ends_with("_ms") {
                    *entry = serde_json::json!(0.0);
                } else {
                    scrub_timings(entry);
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                scrub_timings(item);
            }
        }
        _ => {}
    }
}

pub fn parse_structured(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_str(&stdout_of(output)).expect("valid JSON report")
}
