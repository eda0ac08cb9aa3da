use dicke_cone::*;

fn spec(n: usize, k: usize) -> DickeSpec {
    DickeSpec::new(n, k).unwrap()
}

#[test]
fn min_cuts_reproduce_symmetrized_entropies() {
    for n in 2usize..=6 {
        for k in 1..=n {
            for l in 1..=n.div_ceil(2).min(n - 1) {
                let r = star_realization(spec(n, k), l).unwrap();
                assert!((r.value - r.target).abs() < 1e-12, "N={n} k={k} l={l}: {} vs {}", r.value, r.target);
                let nonzero = spec(n, k).counts(l).iter().filter(|&&c| c > 0).count();
                assert_eq!(r.graphs.len(), nonzero);
                if l + k <= n {
                    assert_eq!(r.graphs.len(), l.min(k) + 1);
                }
                for g in &r.graphs {
                    assert_eq!(g.legs, n);
                    assert!((g.min_cut(l) + g.coefficient.ln()).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn w_state_weights() {
    for n in 2usize..=12 {
        for l in 1..=n.div_ceil(2).min(n - 1) {
            let (nf, lf) = (n as f64, l as f64);
            let r = star_realization(spec(n, 1), l).unwrap();
            assert_eq!(r.graphs.len(), 2);
            let (g1, g2) = (&r.graphs[0], &r.graphs[1]);
            assert_eq!((g1.side, g2.side), (Side::Subsystem, Side::Complement));
            let w1 = lf + (nf / (nf - lf)).ln() - (nf - 1.0);
            let w2 = (nf / lf).ln() - lf + 1.0;
            assert!((g1.weight - w1).abs() < 1e-12 && (g2.weight - w2).abs() < 1e-12);
            assert!((g1.coefficient - (nf - lf) / nf).abs() < 1e-12);
            assert!((g2.coefficient - lf / nf).abs() < 1e-12);
            // the two-graph sum, written out
            let sum = ((nf - lf) * lf.min(nf - 1.0 - lf + w1) + lf * (nf - lf).min(w2 + lf - 1.0)) / nf;
            assert!((sum - symmetrized_entropy(spec(n, 1), l).unwrap()).abs() < 1e-12);
            // negativity windows
            assert_eq!(w1 < 0.0, lf < (nf - 1.0) - (nf / (nf - lf)).ln(), "N={n} l={l}");
            assert_eq!(w2 < 0.0, lf > 1.0 + (nf / lf).ln(), "N={n} l={l}");
        }
    }
}

#[test]
fn four_qubit_w_single_party() {
    let r = star_realization(spec(4, 1), 1).unwrap();
    let expected = (3.0 * (4f64 / 3.0).ln() + 4f64.ln()) / 4.0;
    assert!((r.value - expected).abs() < 1e-12);
    assert!((r.target - expected).abs() < 1e-12);
}

#[test]
fn top_weight_is_trivial() {
    for n in 2usize..=8 {
        for l in 1..=n.div_ceil(2).min(n - 1) {
            let r = star_realization(spec(n, n), l).unwrap();
            assert_eq!(r.value, 0.0);
            assert_eq!(r.target, 0.0);
            assert!(r.graphs.iter().all(|g| g.min_cut(l) == 0.0));
        }
    }
}

#[test]
fn out_of_range_cuts_are_rejected() {
    assert!(star_realization(spec(5, 2), 0).is_err());
    assert!(star_realization(spec(5, 2), 4).is_err());
    assert!(star_realization(spec(2, 1), 2).is_err());
}
