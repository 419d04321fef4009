use std::io::Write;

use dmckay::verify::{verify_all, VerifyConfig};

#[test]
fn acceptance() {
    let reports = verify_all(&VerifyConfig::default());
    // through the raw handle so the lines survive output capture
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for r in &reports {
        writeln!(out, "{r}").unwrap();
    }
    drop(out);
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
