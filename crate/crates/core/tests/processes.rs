#![allow(clippy::excessive_precision)]
use proptest::prelude::*;
use tpl::laws::{NbParams, TplParams};
use tpl::paths::{
    nb_path, ou_path, sato_compensators, sato_path_with, tpl_levy_path, OuConfig, OuScheme, OuStart, Representation,
    SatoConfig, TimeGrid,
};
use tpl::samplers::RngState;
use tpl::verify::{ks_two_sample, laplace_compare, mean_and_se, K_DEFAULT};

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let (ma, _) = mean_and_se(a);
    let (mb, _) = mean_and_se(b);
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma).powi(2);
        sbb += (y - mb).powi(2);
    }
    sab / (saa * sbb).sqrt()
}

#[test]
fn levy_path_endpoint_does_not_depend_on_grid() {
    let plus = TplParams::new(0.6, 1.0, 2.0, 1.0).unwrap();
    let minus = TplParams::new(-1.5, 2.0, 1.0, 1.0).unwrap();
    let coarse = TimeGrid::new(vec![0.0, 1.0]).unwrap();
    let fine = TimeGrid::uniform(1.0, 64).unwrap();
    for (p, rep) in
        [(plus, Representation::GammaTps), (minus, Representation::GammaTps), (minus, Representation::CppLml)]
    {
        let mut r1 = RngState::new(11, 1);
        let mut r2 = RngState::new(11, 2);
        let a: Vec<f64> = (0..5000).map(|_| tpl_levy_path(&p, &coarse, rep, &mut r1).unwrap().last()).collect();
        let b: Vec<f64> = (0..5000).map(|_| tpl_levy_path(&p, &fine, rep, &mut r2).unwrap().last()).collect();
        let r = ks_two_sample(&format!("{rep:?}"), &a, &b, 11).unwrap();
        assert!(r.report.pass, "{}", r.report);
    }
}

#[test]
fn levy_increments_are_uncorrelated() {
    let p = TplParams::new(-1.0, 1.0, 1.0, 1.0).unwrap();
    let grid = TimeGrid::uniform(2.0, 2).unwrap();
    let mut rng = RngState::new(12, 0);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for _ in 0..20_000 {
        let inc = tpl_levy_path(&p, &grid, Representation::NbGamma, &mut rng).unwrap().increments();
        a.push(inc[0]);
        b.push(inc[1]);
    }
    assert!(pearson(&a, &b).abs() < 4.0 / (20_000f64).sqrt());
}

#[test]
fn nb_path_sits_on_its_lattice() {
    let p = NbParams::new(0.4, 2.0, 0.5, 0.25).unwrap();
    let grid = TimeGrid::uniform(3.0, 30).unwrap();
    let path = nb_path(&p, &grid, &mut RngState::new(13, 0)).unwrap();
    for (t, v) in grid.times().iter().zip(path.values()) {
        let k = (v - 0.25 * t) / 0.5;
        assert!((k - k.round()).abs() < 1e-9 && k >= -1e-9);
    }
    assert!(path.increments().iter().all(|d| *d >= 0.25 * 0.1 - 1e-12));
}

#[test]
fn stationary_ou_autocorrelation_decays_exponentially() {
    let tpl = TplParams::new(0.7, 0.5, 20.0, 0.5).unwrap();
    let cfg = OuConfig::new(tpl, 25.0, OuStart::Stationary).unwrap();
    let h = 0.04;
    let grid = TimeGrid::new(vec![0.0, h]).unwrap();
    let mut rng = RngState::new(14, 0);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for _ in 0..20_000 {
        let v = ou_path(&cfg, &grid, OuScheme::Exact, &mut rng).unwrap();
        a.push(v.values()[0]);
        b.push(v.values()[1]);
    }
    let r = pearson(&a, &b);
    let want = (-25.0 * h).exp();
    let se = (1.0 - want * want) / (20_000f64).sqrt();
    assert!((r - want).abs() < 4.0 * se, "corr {r} vs {want}");
    let marginal = laplace_compare("ou/X(h)", &b, |s| tpl.laplace(s), &[0.05, 0.2], K_DEFAULT, 14).unwrap();
    assert!(marginal.iter().all(|r| r.pass));
}

#[test]
fn ou_euler_converges_to_exact_under_common_numbers() {
    let tpl = TplParams::new(0.5, 1.0, 4.0, 1.0).unwrap();
    let cfg = OuConfig::new(tpl, 2.0, OuStart::Value(1.0)).unwrap();
    let gap = |steps: usize| {
        let grid = TimeGrid::uniform(1.0, steps).unwrap();
        let mut total = 0.0;
        for k in 0..200 {
            let exact = ou_path(&cfg, &grid, OuScheme::Exact, &mut RngState::new(15, k)).unwrap().last();
            let euler = ou_path(&cfg, &grid, OuScheme::Euler, &mut RngState::new(15, k)).unwrap().last();
            total += (exact - euler).abs();
        }
        total / 200.0
    };
    let (g10, g1000) = (gap(10), gap(1000));
    assert!(g1000 < g10 / 20.0, "{g10} {g1000}");
}

#[test]
fn sato_increments_are_independent() {
    let tpl = TplParams::new(0.5, 0.5, 1.0, 1.0).unwrap();
    let cfg = SatoConfig::new(tpl, 0.4, 1e-4).unwrap();
    let grid = TimeGrid::new(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
    let comp = sato_compensators(&cfg, &grid).unwrap();
    let mut rng = RngState::new(16, 0);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for _ in 0..20_000 {
        let inc = sato_path_with(&cfg, &grid, &comp, &mut rng).unwrap().path.increments();
        a.push(inc[0]);
        b.push(inc[2]);
    }
    assert!(pearson(&a, &b).abs() < 4.0 / (20_000f64).sqrt());
    let (m, se) = mean_and_se(&b);
    let want = cfg.mean_increment(2.0, 3.0);
    assert!((m - want).abs() < 4.0 * se + 2.0 * cfg.truncation_bound(), "{m} vs {want}");
}

#[test]
fn paths_are_reproducible_and_csv_is_stable() {
    let p = TplParams::new(0.5, 1.0, 2.0, 1.0).unwrap();
    let grid = TimeGrid::uniform(1.0, 20).unwrap();
    let csv = |seed| {
        let path = tpl_levy_path(&p, &grid, Representation::GammaTps, &mut RngState::new(seed, 0)).unwrap();
        let mut buf = Vec::new();
        path.write_csv(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    };
    let a = csv(17);
    assert_eq!(a, csv(17));
    assert_ne!(a, csv(18));
    assert!(a.starts_with("t,value\n"));
    assert_eq!(a.lines().count(), 22);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn levy_paths_are_nondecreasing(g in -3.0f64..1.0, l in 0.1f64..5.0, d in 0.1f64..3.0, th in 0.2f64..3.0, seed in 0u64..1000) {
        prop_assume!(g.abs() > 0.05);
        let p = TplParams::new(g, l, d, th).unwrap();
        let grid = TimeGrid::uniform(2.0, 10).unwrap();
        let reps: &[Representation] = if g < 0.0 {
            &[Representation::GammaTps, Representation::CppLml, Representation::NbGamma]
        } else {
            &[Representation::GammaTps]
        };
        for &rep in reps {
            let path = tpl_levy_path(&p, &grid, rep, &mut RngState::new(seed, 0)).unwrap();
            prop_assert!(path.increments().iter().all(|d| *d >= 0.0 && d.is_finite()));
        }
    }
}
