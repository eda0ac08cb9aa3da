use clifford_core::{eval_expr, gate};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use state_space::*;

fn random_state(n: usize, seed: u64) -> DenseState {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..1 << n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    DenseState::from_amplitudes(n, amps).unwrap()
}

#[test]
fn cnot_after_hadamard_makes_ghz() {
    let s = DenseState::zeros(2)
        .apply(&gate("H1", 2).unwrap())
        .unwrap()
        .apply(&gate("C12", 2).unwrap())
        .unwrap();
    assert!(s.eq_mod_phase(&DenseState::ghz(2).unwrap(), 1e-12));
    assert_eq!(s.key(), DenseState::ghz(2).unwrap().key());
}

#[test]
fn qubit_one_is_the_low_bit() {
    let s = DenseState::zeros(3).apply(&gate("H1", 1).unwrap()).unwrap();
    let a = s.amplitudes();
    assert!((a[0].re - a[1].re).abs() < 1e-15 && a[1].re > 0.7);
    assert_eq!(DenseState::basis("100").unwrap(), DenseState::basis_index(3, 1));
    // C12 on |1 0> flips qubit 2
    let s = DenseState::basis("10").unwrap().apply(&gate("C12", 2).unwrap()).unwrap();
    assert_eq!(s, DenseState::basis("11").unwrap());
    let s = DenseState::basis("01").unwrap().apply(&gate("C12", 2).unwrap()).unwrap();
    assert_eq!(s, DenseState::basis("01").unwrap());
}

#[test]
fn ch_fourth_on_random_states() {
    let lhs = eval_expr("(C12 H2)^4", 2).unwrap();
    let rhs = eval_expr("P1^2", 2).unwrap();
    for seed in 0..100 {
        let psi = random_state(3, seed);
        let a = psi.apply_exact(&lhs).unwrap();
        let b = psi.apply_exact(&rhs).unwrap();
        assert_eq!(a.key(), b.key());
    }
}

#[test]
fn schmidt_examples() {
    let ghz = DenseState::ghz(2).unwrap().schmidt(&[1]).unwrap();
    assert!((ghz.values[0] - 0.5).abs() < 1e-12 && (ghz.values[1] - 0.5).abs() < 1e-12);
    let w = DenseState::dicke(3, 1).unwrap().schmidt(&[1]).unwrap();
    assert!((w.values[0] - 2.0 / 3.0).abs() < 1e-12 && (w.values[1] - 1.0 / 3.0).abs() < 1e-12);
    let p = DenseState::basis("0110").unwrap().schmidt(&[2, 3]).unwrap();
    assert_eq!(p.rank, 1);
    assert!((p.values[0] - 1.0).abs() < 1e-12);
    let s = DenseState::zeros(3);
    assert!(s.schmidt(&[]).is_err());
    assert!(s.schmidt(&[1, 2, 3]).is_err());
    assert!(s.schmidt(&[4]).is_err());
}

#[test]
fn named_states() {
    let d = DenseState::dicke(3, 1).unwrap();
    let amp = 1.0 / 3f64.sqrt();
    for i in [1, 2, 4] {
        assert!((d.amplitudes()[i].re - amp).abs() < 1e-15);
    }
    assert_eq!(DenseState::dicke(4, 4).unwrap(), DenseState::basis("1111").unwrap());
    let bell = DenseState::from_amplitudes(2, vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
    assert_eq!(DenseState::dicke(2, 1).unwrap().key(), bell.key());
    assert!(DenseState::dicke(3, 4).is_err());
    assert!(DenseState::from_amplitudes(1, vec![C64::new(0.0, 0.0); 2]).is_err());
    assert_eq!(DenseState::parse_spec("dicke:4,2").unwrap(), DenseState::dicke(4, 2).unwrap());
    assert_eq!(DenseState::parse_spec("w:5").unwrap(), DenseState::dicke(5, 1).unwrap());
    assert_eq!(DenseState::parse_spec("ghz:3").unwrap(), DenseState::ghz(3).unwrap());
    assert!(DenseState::parse_spec("tri:3").is_err());
}

#[test]
fn json_roundtrip_through_file() {
    let s = random_state(3, 11);
    let dir = std::env::temp_dir().join(format!("state_space_test_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.json");
    std::fs::write(&path, serde_json::to_string(&s.to_json()).unwrap()).unwrap();
    let back = DenseState::parse_spec(&format!("file:{}", path.display())).unwrap();
    assert!(back.eq_mod_phase(&s, 1e-12));
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #[test]
    fn apply_preserves_norm_and_is_linear(seed in 0u64..10_000, word in prop::collection::vec(0usize..6, 0..12)) {
        let names = ["H1", "H2", "P1", "P2", "C12", "C21"];
        let a = random_state(3, seed);
        let b = random_state(3, seed + 1);
        let alpha = C64::new(0.3, -0.7);
        let sum: Vec<C64> = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x + alpha * y).collect();
        let mut s = DenseState::from_amplitudes(3, sum.clone()).unwrap();
        let norm_sum = sum.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let (mut a2, mut b2) = (a.clone(), b.clone());
        for &g in &word {
            let e = gate(names[g], 2).unwrap();
            a2 = a2.apply(&e).unwrap();
            b2 = b2.apply(&e).unwrap();
            s = s.apply(&e).unwrap();
        }
        prop_assert!((a2.norm() - 1.0).abs() < 1e-12);
        for i in 0..8 {
            let expect = (a2.amplitudes()[i] + alpha * b2.amplitudes()[i]) / norm_sum;
            prop_assert!((s.amplitudes()[i] - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn canonical_form_ignores_global_phase(seed in 0u64..10_000, theta in 0.0f64..6.283) {
        let s = random_state(3, seed);
        let ph = C64::from_polar(1.0, theta);
        let t = DenseState::from_amplitudes(3, s.amplitudes().iter().map(|a| a * ph).collect()).unwrap();
        let (cs, ct) = (s.canonical(), t.canonical());
        for i in 0..8 {
            prop_assert!((cs.amplitudes()[i] - ct.amplitudes()[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn schmidt_spectrum_symmetric(seed in 0u64..10_000, mask in 1usize..15) {
        let s = random_state(4, seed);
        let sub: Vec<usize> = (1..=4).filter(|q| mask >> (q - 1) & 1 == 1).collect();
        let comp: Vec<usize> = (1..=4).filter(|q| mask >> (q - 1) & 1 == 0).collect();
        let a = s.schmidt(&sub).unwrap();
        let b = s.schmidt(&comp).unwrap();
        prop_assert!((a.values.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        for i in 0..a.values.len().min(b.values.len()) {
            prop_assert!((a.values[i] - b.values[i]).abs() < 1e-10);
        }
        for w in a.values.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }
}
