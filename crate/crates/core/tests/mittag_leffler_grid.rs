#![allow(clippy::excessive_precision)]
use tpl::mlfun::{mittag_leffler, ml, recip_gamma, MlArgs};

fn grid() -> Vec<(f64, f64, f64, f64)> {
    include_str!("data/ml_grid.csv")
        .lines()
        .skip(1)
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            (v[0], v[1], v[2], v[3])
        })
        .collect()
}

#[test]
fn prabhakar_with_unit_c_matches_two_parameter_reference() {
    let rows = grid();
    assert_eq!(rows.len(), 450);
    for (a, b, z, want) in rows {
        let got = mittag_leffler(MlArgs::new(a, b, 1.0, z).unwrap()).unwrap().value;
        let err = (got - want).abs() / want.abs().max(1e-300);
        assert!(err < 1e-10, "E_{{{a},{b}}}({z}) = {got:e}, reference {want:e}, rel err {err:e}");
    }
}

#[test]
fn shift_recurrence_holds_on_grid() {
    for a in [0.3, 0.5, 0.9] {
        for b in [a, a + 1.0, 1.0] {
            for i in 0..50 {
                let z = -5.0 + 10.0 * i as f64 / 49.0;
                let lhs = ml(a, b, z).unwrap();
                let shifted = z * ml(a, a + b, z).unwrap();
                let rhs = shifted + recip_gamma(b);
                let scale = lhs.abs().max(shifted.abs()).max(recip_gamma(b));
                assert!((lhs - rhs).abs() <= 1e-10 * scale, "a={a} b={b} z={z}: {lhs} vs {rhs}");
            }
        }
    }
}
