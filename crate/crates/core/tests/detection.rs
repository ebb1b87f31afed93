mod common;

use common::tables::{TABLE1, TABLE2, TABLE3, TABLE4};
use limcycle::detection::{
    abelian_integral, detection_curve, table_grid, Detector, DEFAULT_TOL, GRID_EDGE,
};
use limcycle::{Error, Family, SystemParams};

fn tables() -> SystemParams {
    SystemParams::default().with_degree(10)
}

fn close(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs()
}

#[test]
fn lambda2_table_rows() {
    let det = Detector::new(&tables(), DEFAULT_TOL);
    for &(h, cu, cv) in &TABLE2 {
        let s = det.sample(Family::Gamma2, h).unwrap();
        assert!(
            close(s.cu, cu, 5e-3) || (s.cu - cu).abs() < 5e-5,
            "h={h}: {} vs {cu}",
            s.cu
        );
        assert!(
            close(s.cv, cv, 5e-3) || (s.cv - cv).abs() < 5e-5,
            "h={h}: {} vs {cv}",
            s.cv
        );
    }
}

#[test]
fn scaled_table_rows() {
    let p = tables();
    let ham = p.hamiltonian();
    for (family, table) in [
        (Family::Gamma1, &TABLE1[..]),
        (Family::Gamma3, &TABLE3[..]),
        (Family::Gamma4, &TABLE4[..]),
    ] {
        let (lo, hi) = ham.family_range(family);
        let grid: Vec<f64> = table
            .iter()
            .map(|r| r.0.clamp(lo + GRID_EDGE, hi - GRID_EDGE))
            .collect();
        let curve = detection_curve(family, &grid, &p).unwrap();
        for (s, &(h, rho, omega)) in curve.samples().iter().zip(table) {
            assert!(
                close(s.cu / 1e4, rho, 1e-2),
                "{family} h={h}: {} vs {rho}",
                s.cu / 1e4
            );
            assert!(
                close(s.cv / 1e4, omega, 1e-2),
                "{family} h={h}: {} vs {omega}",
                s.cv / 1e4
            );
        }
    }
}

#[test]
fn table_grid_reproduces_the_printed_energies() {
    let ham = tables().hamiltonian();
    for (family, table) in [
        (Family::Gamma1, &TABLE1[..]),
        (Family::Gamma2, &TABLE2[..]),
        (Family::Gamma3, &TABLE3[..]),
        (Family::Gamma4, &TABLE4[..]),
    ] {
        let grid = table_grid(family, &ham);
        assert_eq!(grid.len(), table.len(), "{family}");
        for (g, row) in grid.iter().zip(table) {
            assert!((g - row.0).abs() <= 1e-5, "{family}: {g} vs {}", row.0);
        }
    }
}

#[test]
fn lambda3_and_lambda4_meet_at_the_homoclinic_level() {
    let det = Detector::new(&tables(), DEFAULT_TOL);
    let below = det.sample(Family::Gamma3, 3.0 - 1e-4).unwrap();
    let above = det.sample(Family::Gamma4, 3.0 + 1e-4).unwrap();
    assert!(close(below.cu, above.cu, 2e-3) && close(below.cv, above.cv, 2e-3));
    // printed as 2.9973ρ + 0.7995ω in both tables
    assert!(close(above.cu / 1e4, 2.9973, 1e-2) && close(above.cv / 1e4, 0.7995, 1e-2));
}

#[test]
fn gamma4_u_coefficient_peaks_near_3_16() {
    let p = tables();
    let grid: Vec<f64> = (0..=40)
        .map(|k| 3.0 + 0.01 * k as f64 + GRID_EDGE)
        .collect();
    let curve = detection_curve(Family::Gamma4, &grid, &p).unwrap();
    let best = curve
        .samples()
        .iter()
        .max_by(|x, y| x.cu.total_cmp(&y.cu))
        .unwrap();
    assert!((best.h - 3.16).abs() < 0.03, "peak at {}", best.h);
}

#[test]
fn energies_outside_a_family_are_refused() {
    let det = Detector::new(&SystemParams::default(), DEFAULT_TOL);
    for (family, h) in [
        (Family::Gamma2, -0.1),
        (Family::Gamma3, 1.5),
        (Family::Gamma4, 9.0),
        (Family::Gamma1, 2.5),
    ] {
        assert!(
            matches!(det.sample(family, h), Err(Error::OutOfRange { .. })),
            "{family} {h}"
        );
    }
}

#[test]
fn abelian_integral_vanishes_at_lambda_of_h() {
    let p = SystemParams::default();
    for (family, h) in [
        (Family::Gamma1, -1.0),
        (Family::Gamma2, 1.0),
        (Family::Gamma3, 2.5),
        (Family::Gamma4, 5.0),
    ] {
        let l = Detector::new(&p, DEFAULT_TOL)
            .sample(family, h)
            .unwrap()
            .lambda(p.u, p.v);
        let at = abelian_integral(family, h, &p.with_lambda(l)).unwrap();
        let off = abelian_integral(family, h, &p.with_lambda(l + 1.0)).unwrap();
        assert!(at.abs() < 1e-8 * off.abs(), "{family}: {at} vs {off}");
        assert!(off < 0.0);
    }
}
