//! Checks that need the real road networks. Ignored by default; install the
//! files (see README) and run `cargo test -p jobroute --test datasets -- --ignored`.

mod common;

use std::process::Command;

use common::datasets;

#[test]
#[ignore = "needs OL.cedge in $JOBROUTE_DATA_DIR"]
fn oldenburg_statistics() {
    let d = datasets::oldenburg()
        .unwrap_or_else(|| panic!("OL.cedge not found in {}", datasets::data_dir().display()));
    assert_eq!(d.net.poi_count(), 6105);
    assert_eq!(d.net.edge_count(), 7035);
    let out = Command::new(env!("CARGO_BIN_EXE_jobroute"))
        .args(["graph-info", "--format", "oldenburg", "--graph"])
        .arg(d.path.as_ref().unwrap())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("n=6105\nm=7035\n"));
}

#[test]
#[ignore = "needs road-euroroad in $JOBROUTE_DATA_DIR"]
fn europe_statistics() {
    let d = datasets::erd();
    assert!(
        d.is_real(),
        "no Europe road file in {}",
        datasets::data_dir().display()
    );
    // 1.2K nodes and 1.4K edges when rounded
    assert_eq!((d.net.poi_count() as f64 / 100.0).round(), 12.0);
    assert_eq!((d.net.edge_count() as f64 / 100.0).round(), 14.0);
}
