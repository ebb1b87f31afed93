use limcycle::cycles::{distribution, CurveSet, Stability};
use limcycle::detection::DEFAULT_TOL;
use limcycle::ode::{integrate_orbit, unperturbed_period, verify_prediction, ReturnMap, Section};
use limcycle::{Family, SystemParams};

const AXIS: Section = Section {
    anchor: (0.0, 0.0),
    angle: 0.0,
};

fn free() -> SystemParams {
    SystemParams::default().with_epsilon(0.0)
}

#[test]
fn energy_drift_is_small_in_every_family() {
    let p = free();
    let ham = p.hamiltonian();
    for (family, h) in [
        (Family::Gamma1, -1.0),
        (Family::Gamma2, 1.0),
        (Family::Gamma3, 2.5),
        (Family::Gamma4, 5.0),
    ] {
        let sec = Section::for_family(family, h, &ham).unwrap();
        let r = sec.distance_at_energy(family, h, &ham).unwrap();
        let period = unperturbed_period(sec, r, &p, 1e-10).unwrap();
        let traj = integrate_orbit(sec.point(r), period, &p, 1e-10).unwrap();
        let drift = traj.iter().map(|q| (q.h - h).abs()).fold(0.0, f64::max);
        assert!(drift < 1e-8, "{family}: drift {drift}");
        let last = traj.last().unwrap();
        assert!((last.t - period).abs() < 1e-12);
    }
}

#[test]
fn flow_commutes_with_point_reflection() {
    let p = SystemParams::default().with_lambda(0.2).with_uv(0.5, -0.3);
    let a = integrate_orbit((0.8, 0.3), 3.0, &p, 1e-11).unwrap();
    let b = integrate_orbit((-0.8, -0.3), 3.0, &p, 1e-11).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!((x.x + y.x).abs() < 1e-12 && (x.y + y.y).abs() < 1e-12);
    }
}

#[test]
fn unperturbed_orbits_close() {
    let p = free();
    let map = ReturnMap {
        section: AXIS,
        params: p,
        tol: 1e-10,
        t_cap: 100.0,
    };
    for r in [0.1, 0.5, 0.9, 1.2] {
        let (r_out, _) = map.first_return(r).unwrap();
        assert!((r_out - r).abs() < 1e-7, "{r} -> {r_out}");
    }
}

#[test]
fn period_grows_towards_the_homoclinic_level() {
    let p = free();
    let ham = p.hamiltonian();
    let periods: Vec<f64> = [2.9, 2.99, 2.999]
        .iter()
        .map(|&h| {
            let r = AXIS.distance_at_energy(Family::Gamma3, h, &ham).unwrap();
            unperturbed_period(AXIS, r, &p, 1e-10).unwrap()
        })
        .collect();
    assert!(
        periods[0] < periods[1] && periods[1] < periods[2],
        "{periods:?}"
    );
}

#[test]
fn no_fixed_point_without_a_root() {
    // λ2 stays far below 1 for u = 1, v = 0
    let p = SystemParams::default()
        .with_uv(1.0, 0.0)
        .with_lambda(1.0)
        .with_epsilon(1e-3);
    let map = ReturnMap {
        section: AXIS,
        params: p,
        tol: 1e-10,
        t_cap: 500.0,
    };
    let gaps: Vec<f64> = [0.2, 0.4, 0.6, 0.8, 1.0]
        .iter()
        .map(|&r| map.first_return(r).unwrap().0 - r)
        .collect();
    assert!(
        gaps.iter().all(|g| *g < 0.0) || gaps.iter().all(|g| *g > 0.0),
        "{gaps:?}"
    );
}

fn gamma2_findings() -> (SystemParams, Vec<limcycle::cycles::CycleFinding>) {
    let p = SystemParams::default().with_uv(1.0, 0.0);
    let set = CurveSet::sample(&p, DEFAULT_TOL).unwrap();
    let rep = distribution(-0.1, &set).unwrap();
    let f: Vec<_> = rep
        .findings
        .into_iter()
        .filter(|f| f.family.id == Family::Gamma2)
        .collect();
    (p, f)
}

#[test]
fn gamma2_cycles_are_found_with_predicted_stability() {
    let (p, findings) = gamma2_findings();
    assert_eq!(findings.len(), 2);
    let kinds: Vec<Stability> = findings.iter().map(|f| f.stability).collect();
    assert_eq!(kinds, [Stability::Stable, Stability::Unstable]);
    for f in &findings {
        let rec = verify_prediction(f, &p, 1e-3, 1e-10).unwrap();
        assert!(rec.verified, "{rec:?}");
        let fp = rec.fixed_point.unwrap();
        assert!(fp.residual < 1e-8);
        assert!((fp.h_star - f.h_root).abs() < 1e-3);
    }
}

#[test]
fn located_energy_converges_as_epsilon_shrinks() {
    let (p, findings) = gamma2_findings();
    let f = &findings[1];
    let errs: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&eps| {
            let rec = verify_prediction(f, &p, eps, 1e-13).unwrap();
            rec.h_error
                .unwrap_or_else(|| panic!("eps {eps}: {:?}", rec.failure))
        })
        .collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    assert!(errs[2] < 1e-8);
}

#[test]
fn gamma1_error_shrinks_with_epsilon() {
    let p = SystemParams::default().with_degree(4).with_uv(1.0, 0.0);
    let set = CurveSet::sample(&p, DEFAULT_TOL).unwrap();
    let rep = distribution(46.0, &set).unwrap();
    let f = rep
        .findings
        .iter()
        .find(|f| f.family.id == Family::Gamma1)
        .unwrap();
    // at eps = 1e-2 this cycle is already gone
    let wide = verify_prediction(f, &p, 1e-2, 1e-11).unwrap();
    assert!(!wide.verified && wide.failure.is_some());
    let e3 = verify_prediction(f, &p, 1e-3, 1e-11)
        .unwrap()
        .h_error
        .unwrap();
    let e4 = verify_prediction(f, &p, 1e-4, 1e-11)
        .unwrap()
        .h_error
        .unwrap();
    assert!(e4 < e3 / 10.0, "{e3} {e4}");
}

#[test]
fn gamma1_cycle_at_degree_four() {
    let p = SystemParams::default().with_degree(4).with_uv(1.0, 0.0);
    let set = CurveSet::sample(&p, DEFAULT_TOL).unwrap();
    let rep = distribution(46.0, &set).unwrap();
    let f = rep
        .findings
        .iter()
        .find(|f| f.family.id == Family::Gamma1)
        .unwrap();
    assert_eq!(f.stability, Stability::Unstable);
    let rec = verify_prediction(f, &p, 1e-3, 1e-10).unwrap();
    assert!(rec.verified, "{rec:?}");
    assert!(rec.fixed_point.unwrap().derivative > 1.0);
}
