//! Behavioral tests of the verification pipeline: determinism across
//! worker counts, incremental-bound soundness, and resume safety.

use qmc_pipeline::{run_verification, CertifyMethod, PipelineConfig};
use std::path::PathBuf;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[test]
fn worker_count_does_not_change_the_report() {
    let mut base = PipelineConfig::new(7, vec![fixture("graphs7.g6")]);
    base.use_skip_bound = false;
    let mut one = base.clone();
    one.workers = 1;
    let mut four = base.clone();
    four.workers = 4;
    let r1 = run_verification(&one).unwrap();
    let r4 = run_verification(&four).unwrap();
    assert_eq!(r1.counts.survivors, r4.counts.survivors);
    assert_eq!(r1.max_c.to_bits(), r4.max_c.to_bits());
    assert_eq!(r1.argmax_graph6, r4.argmax_graph6);
}

#[test]
fn skip_bound_is_spot_checked_and_sound() {
    let mut config = PipelineConfig::new(9, vec![fixture("graphs9.g6")]);
    config.use_skip_bound = true;
    config.spot_check_every = 1; // recheck every skip
    let with_bound = run_verification(&config).unwrap();
    assert!(with_bound.certified);

    let mut exact = PipelineConfig::new(9, vec![fixture("graphs9.g6")]);
    exact.use_skip_bound = false;
    let reference = run_verification(&exact).unwrap();
    assert_eq!(with_bound.counts.survivors, reference.counts.survivors);
    // Every exact value the bounded run produced matches the reference
    // certification outcome.
    assert!(with_bound.max_c <= reference.target + 1e-9);
    assert!(reference.certified);
}

#[test]
fn sdp_certification_reproduces_level_two_bound_at_order_five() {
    // The single survivor at order five is the 5-cycle; its level-2 value
    // must stay at or below the target while exceeding the exact value.
    let mut config = PipelineConfig::new(5, vec![fixture("graphs5.g6")]);
    config.method = CertifyMethod::SdpLevel2;
    let rep = run_verification(&config).unwrap();
    assert_eq!(rep.counts.survivors, 1);
    assert!(rep.certified);
    assert!(rep.max_c > 1.2 && rep.max_c <= 2.0 + 1e-6, "c = {}", rep.max_c);

    let mut exact = PipelineConfig::new(5, vec![fixture("graphs5.g6")]);
    exact.method = CertifyMethod::ExactEig;
    let exact_rep = run_verification(&exact).unwrap();
    assert!(
        rep.max_c >= exact_rep.max_c - 1e-6,
        "relaxation {} must dominate exact {}",
        rep.max_c,
        exact_rep.max_c
    );
}

#[test]
fn resume_continues_without_double_counting() {
    let dir = std::env::temp_dir().join(format!("qmc-resume-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);

    // First pass writes the full log.
    let mut config = PipelineConfig::new(7, vec![fixture("graphs7.g6")]);
    config.out_dir = Some(dir.clone());
    let first = run_verification(&config).unwrap();

    // Truncate the CSV to simulate an interrupted run, keeping half the
    // rows, then resume.
    let csv = dir.join("s7.csv");
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let keep = 1 + (lines.len() - 1) / 2;
    std::fs::write(&csv, lines[..keep].join("\n")).unwrap();

    let resumed = run_verification(&config).unwrap();
    assert!(resumed.resumed_rows > 0);
    assert_eq!(resumed.counts.total, first.counts.total);
    assert_eq!(resumed.counts.survivors, first.counts.survivors);
    assert_eq!(resumed.max_c, first.max_c);

    // The rewritten CSV has exactly one row per record plus the header.
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), first.counts.total + 1);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn rejects_even_or_oversized_orders() {
    let config = PipelineConfig::new(6, vec![fixture("graphs6.g6")]);
    assert!(run_verification(&config).is_err());
    let config = PipelineConfig::new(15, vec![]);
    assert!(run_verification(&config).is_err());
}
