#![allow(clippy::excessive_precision)]
use proptest::prelude::*;
use tpl::samplers::RngState;
use tpl::verify::{
    chi_square_compare, draw, gid_mc_check, ks_compare, run_suite, GidConstruction, McReport, SuiteConfig, K_DEFAULT,
};

#[test]
fn quick_suite_passes_with_default_seed() {
    let out = run_suite(&SuiteConfig::quick(SuiteConfig::default().seed)).unwrap();
    let failed: Vec<_> = out.reports.iter().filter(|r| !r.pass).map(|r| r.to_string()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(out.controls_rejected());
    assert_eq!(out.exit_code(), 0);
    assert!(out.lines().iter().any(|l| l.starts_with("control/")));
}

#[test]
fn planted_defect_is_caught() {
    let cfg = SuiteConfig { planted_defect: true, ..SuiteConfig::quick(5) };
    assert_eq!(run_suite(&cfg).unwrap().exit_code(), 3);
}

#[test]
fn ks_rejects_a_shifted_sample() {
    let xs = draw(5000, &mut RngState::new(3, 0), |r| Ok(-tpl::samplers::uniform(r).ln() + 0.1)).unwrap();
    let exp_cdf = |x: f64| Ok(if x <= 0.0 { 0.0 } else { -(-x).exp_m1() });
    assert!(!ks_compare("shifted", &xs, exp_cdf, 3).unwrap().report.pass);
    let ok = draw(5000, &mut RngState::new(3, 1), |r| Ok(-tpl::samplers::uniform(r).ln())).unwrap();
    assert!(ks_compare("exact", &ok, exp_cdf, 3).unwrap().report.pass);
}

#[test]
fn chi_square_flags_a_biased_die() {
    let fair = [1000, 1010, 990, 1005, 995, 1000];
    let biased = [1200, 950, 950, 950, 950, 1000];
    let p = [1.0 / 6.0; 6];
    assert!(chi_square_compare("fair", &fair, &p, 0).unwrap().report.pass);
    assert!(!chi_square_compare("biased", &biased, &p, 0).unwrap().report.pass);
}

#[test]
fn geometric_check_separates_constructions() {
    let mut rng = RngState::new(4, 0);
    let good = gid_mc_check(0.6, 1.0, 1.0, 0.3, 50_000, GidConstruction::Tempered, K_DEFAULT, &mut rng).unwrap();
    assert!(good.iter().all(|r| r.pass));
    let naive = gid_mc_check(0.6, 1.0, 1.0, 0.3, 50_000, GidConstruction::StableScaling, K_DEFAULT, &mut rng).unwrap();
    assert!(naive.iter().any(|r| !r.pass));
}

#[test]
fn malformed_report_lines_are_rejected() {
    assert!("a\t1\t2".parse::<McReport>().is_err());
    assert!("a\tx\t2\t3\t4\ttrue\t5\t3".parse::<McReport>().is_err());
}

proptest! {
    #[test]
    fn report_lines_round_trip(
        name in "[a-z/=.0-9]{1,20}",
        stat in -1e6f64..1e6,
        target in -1e6f64..1e6,
        tol in 0.0f64..10.0,
        k in 1.0f64..5.0,
        n in 0u64..1_000_000,
        seed in any::<u64>(),
    ) {
        let r = McReport::new(name, stat, target, tol, k, n, seed);
        let back: McReport = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }
}
