use magic_kit::*;
use std::f64::consts::FRAC_PI_2;

fn plotted(n: usize) -> Vec<(f64, f64)> {
    include_str!("fixtures/transition.csv")
        .lines()
        .skip(1)
        .filter_map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0] as usize == n).then_some((f[1], f[2]))
        })
        .collect()
}

#[test]
fn ten_site_transition_curve() {
    let pts = plotted(10);
    assert_eq!(pts.len(), 31);
    let gs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let rows = ising_magic_scan(10, &gs, &[5], 0.0, Solver::Auto).unwrap();
    let mut worst = 0.0f64;
    for (row, &(g, m)) in rows.iter().zip(&pts) {
        assert!((row.g - g).abs() < 1e-12);
        worst = worst.max((row.m2_estimate - m).abs());
        assert!((row.m2_estimate - m).abs() < 2e-2, "g={g}: {} vs {m}", row.m2_estimate);
    }
    println!("n=10 worst deviation {worst:e}");
    // single interior peak with positive g
    let peak = rows.iter().max_by(|a, b| a.m2_estimate.partial_cmp(&b.m2_estimate).unwrap()).unwrap();
    assert!(peak.g > 0.0 && peak.g < 0.1, "peak at {}", peak.g);
    let k = rows.iter().position(|r| r.g == peak.g).unwrap();
    assert!(rows[..k].windows(2).all(|w| w[0].m2_estimate < w[1].m2_estimate));
    assert!(rows[k..].windows(2).all(|w| w[0].m2_estimate > w[1].m2_estimate));
}

#[test]
fn twelve_site_lanczos_matches_plot() {
    let pts = plotted(12);
    let picks: Vec<(f64, f64)> = pts.iter().step_by(5).copied().collect();
    let gs: Vec<f64> = picks.iter().map(|p| p.0).collect();
    let rows = ising_magic_scan(12, &gs, &[6], 0.0, Solver::Auto).unwrap();
    for (row, &(g, m)) in rows.iter().zip(&picks) {
        assert!((row.m2_estimate - m).abs() < 2e-2, "g={g}: {} vs {m}", row.m2_estimate);
    }
}

#[test]
fn twelve_site_shapes() {
    let crit = ising_magic_scan(12, &[0.0], &[1, 2, 3, 4, 5, 6], 0.0, Solver::Auto).unwrap();
    let m: Vec<f64> = crit.iter().map(|r| r.m2_estimate).collect();
    println!("g=0: {m:?}");
    assert!(m[2..].windows(2).all(|w| w[1] >= w[0]), "{m:?}");
    let off = ising_magic_scan(12, &[0.2], &[1, 2, 3, 4, 5, 6], 0.0, Solver::Auto).unwrap();
    let m: Vec<f64> = off.iter().map(|r| r.m2_estimate).collect();
    println!("g=0.2: {m:?}");
    let steps: Vec<f64> = m.windows(2).map(|w| w[1] - w[0]).collect();
    // increments shrink towards zero
    assert!(steps.last().unwrap().abs() < 0.1 * steps[0].abs(), "{steps:?}");
    // entropy keeps growing at criticality, unlike the off-critical plateau
    let s: Vec<f64> = crit.iter().map(|r| r.entropy).collect();
    assert!(s.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn solvers_agree() {
    for &(n, g) in &[(6, -0.1), (8, 0.05), (10, 0.2)] {
        let cfg = IsingConfig::from_g(n, g, 0.0).unwrap();
        let d = ground_state(&cfg.with_solver(Solver::Dense)).unwrap();
        let l = ground_state(&cfg.with_solver(Solver::Lanczos)).unwrap();
        assert!((d.energy - l.energy).abs() < 1e-10);
        assert!((d.gap - l.gap).abs() < 1e-6, "{} vs {}", d.gap, l.gap);
        assert!(l.residual < 1e-10);
        let overlap = d.state.inner(&l.state).norm();
        assert!((overlap - 1.0).abs() < 1e-10);
        let (pd, pl) = (ising_point(&d, n / 2).unwrap(), ising_point(&l, n / 2).unwrap());
        assert!((pd.m2_estimate - pl.m2_estimate).abs() < 1e-9);
    }
}

#[test]
fn pure_transverse_field_is_a_product_state() {
    let gs = ground_state(&IsingConfig::new(8, FRAC_PI_2, 0.0).unwrap()).unwrap();
    for cut in 1..8 {
        let p = ising_point(&gs, cut).unwrap();
        assert!(p.entropy.abs() < 1e-10 && p.m2_estimate.abs() < 1e-10);
    }
    assert!((gs.energy + 8.0).abs() < 1e-10);
}

#[test]
fn ordered_side_is_near_cat_state() {
    // deep in the ordered phase the half-chain spectrum is close to {1/2, 1/2}
    let gs = ground_state(&IsingConfig::from_g(8, -0.6, 0.0).unwrap()).unwrap();
    let spec = Spectrum::from_state(&gs.state, &[1, 2, 3, 4]).unwrap();
    assert!((spec.values[0] - 0.5).abs() < 1e-2 && (spec.values[1] - 0.5).abs() < 1e-2);
    assert!(m2_spectrum_estimate(&spec).unwrap() < 1e-2);
    // a bias field picks one of the two ordered states
    let biased = ground_state(&IsingConfig::from_g(8, -0.6, 0.05).unwrap()).unwrap();
    let p = ising_point(&biased, 4).unwrap();
    assert!(p.entropy < 0.05 && p.m2_estimate < 1e-2, "{p:?}");
}

#[test]
fn degenerate_ground_space_is_rejected() {
    // theta = 0: classical ferromagnet with two ground states
    let err = ground_state(&IsingConfig::new(6, 0.0, 0.0).unwrap()).unwrap_err();
    assert!(matches!(err, MagicError::Degenerate { .. }), "{err}");
    assert!(ground_state(&IsingConfig::new(6, 0.0, 0.1).unwrap()).is_ok());
    assert!(IsingConfig::new(15, 0.0, 0.0).is_err());
    assert!(IsingConfig::new(6, 0.0, -1.0).is_err());
}

#[test]
fn scans_are_deterministic() {
    let a = ising_magic_scan(8, &[-0.1, 0.0, 0.1], &[2, 4], 0.0, Solver::Auto).unwrap();
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .unwrap()
        .install(|| ising_magic_scan(8, &[-0.1, 0.0, 0.1], &[2, 4], 0.0, Solver::Auto).unwrap());
    assert_eq!(a, b);
}
