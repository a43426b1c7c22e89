use iabcache::analytic::{coverage_mbs, Destination};
use iabcache::model::{db_to_linear, Tier};
use iabcache::montecarlo::{empirical_apt, simulate};
use iabcache::Config64;

#[test]
fn half_width_shrinks_as_inverse_square_root() {
    let cfg = Config64::default();
    let x = db_to_linear(10.0);
    let small = simulate(&cfg, 200, 1_000, 3).unwrap().joint_coverage(Destination::UserToMbs, x);
    let large = simulate(&cfg, 200, 4_000, 3).unwrap().joint_coverage(Destination::UserToMbs, x);
    let ratio = small.ci_half_width_99 / large.ci_half_width_99;
    assert!((ratio - 2.0).abs() < 0.3, "ratio {ratio}");
}

#[test]
fn observation_window_is_large_enough() {
    let cfg = Config64::default();
    let mut wide = cfg.clone();
    wide.numeric.window_radius = 3_000.0;
    let x = db_to_linear(5.0);
    let a = simulate(&cfg, 200, 4_000, 9).unwrap();
    let b = simulate(&wide, 200, 4_000, 9).unwrap();
    for dest in [Destination::UserToMbs, Destination::SbsToMbsBackhaul] {
        let (ea, eb) = (a.joint_coverage(dest, x), b.joint_coverage(dest, x));
        assert!((ea.mean - eb.mean).abs() <= ea.ci_half_width_99 + eb.ci_half_width_99, "{dest:?}");
    }
}

#[test]
fn same_seed_reproduces_realizations() {
    let cfg = Config64::default();
    let a = simulate(&cfg, 100, 500, 77).unwrap();
    let b = simulate(&cfg, 100, 500, 77).unwrap();
    let c = simulate(&cfg, 100, 500, 78).unwrap();
    let (mut ta, mut tb, mut tc) = (Vec::new(), Vec::new(), Vec::new());
    a.write_trace(&mut ta).unwrap();
    b.write_trace(&mut tb).unwrap();
    c.write_trace(&mut tc).unwrap();
    assert_eq!(ta, tb);
    assert_ne!(ta, tc);
}

#[test]
fn empirical_coverage_brackets_analytic_value() {
    let cfg = Config64::default();
    let x = db_to_linear(10.0);
    let run = simulate(&cfg, 0, 8_000, 5).unwrap();
    let e = run.joint_coverage(Destination::UserToMbs, x);
    let a = coverage_mbs(x, 0, &cfg).unwrap().value;
    // model error allowance on top of sampling noise
    assert!((e.mean - a).abs() <= e.ci_half_width_99 + 0.005, "{} vs {a}", e.mean);
    let nl = run.noise_limited_coverage(Tier::Mbs, x);
    assert!(nl.mean >= e.mean);
}

#[test]
fn empirical_throughput_vanishes_without_spectrum() {
    let cfg = Config64::default();
    let z = empirical_apt(0.0, 100, cfg.gamma0, 300, 1, &cfg).unwrap();
    assert_eq!(z.mean, 0.0);
    assert!(empirical_apt(1.5, 100, cfg.gamma0, 300, 1, &cfg).is_err());
}
