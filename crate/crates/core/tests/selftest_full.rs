use hsmult_core::selftest::{run_selftest, SelftestOptions};

#[test]
fn default_selftest_passes() {
    let reports = run_selftest(&SelftestOptions::default());
    for r in &reports {
        println!("{}: {} cases", r.name, r.cases);
    }
    for r in &reports {
        assert!(r.passed(), "{}: {:?}", r.name, r.failures);
    }
    assert!(reports[0].cases >= 100);
    assert!(reports[1].cases >= 20);
}
