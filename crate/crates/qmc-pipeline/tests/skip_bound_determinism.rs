//! The incremental-bound skip pattern is a function of the stream order
//! alone, so reports agree across worker counts even with skipping on.

use qmc_pipeline::{run_verification, PipelineConfig};
use std::path::PathBuf;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[test]
fn skip_pattern_is_worker_independent() {
    let mut base = PipelineConfig::new(9, vec![fixture("graphs9.g6")]);
    base.use_skip_bound = true;
    base.spot_check_every = 10;
    let mut one = base.clone();
    one.workers = 1;
    let mut three = base.clone();
    three.workers = 3;
    let r1 = run_verification(&one).unwrap();
    let r3 = run_verification(&three).unwrap();
    assert_eq!(r1.skipped_by_bound, r3.skipped_by_bound);
    assert_eq!(r1.exact_solves, r3.exact_solves);
    assert_eq!(r1.spot_checks, r3.spot_checks);
    assert_eq!(r1.max_c.to_bits(), r3.max_c.to_bits());
    assert!(r1.certified && r3.certified);
}
