use magic_kit::*;
use num_complex::Complex64 as C64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use state_space::DenseState;

fn random_spectrum(rng: &mut ChaCha8Rng, rank: usize) -> Spectrum {
    let skew: f64 = rng.gen_range(0.3..4.0);
    Spectrum::normalized((0..rank).map(|_| rng.gen::<f64>().powf(skew) + 1e-6).collect()).unwrap()
}

/// `<psi| P |psi>` by building each Pauli string as a dense matrix.
fn naive_m2(psi: &DenseState) -> f64 {
    let n = psi.n_qubits();
    let d = 1usize << n;
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let paulis = [[one, zero, zero, one], [zero, one, one, zero], [zero, -i, i, zero], [one, zero, zero, -one]];
    let mut sum = 0.0;
    for code in 0..(1usize << (2 * n)) {
        // qubit q carries Pauli (code >> 2q) & 3 and is bit q of the index
        let entry = |r: usize, c: usize| -> C64 {
            (0..n).fold(one, |acc, q| acc * paulis[(code >> (2 * q)) & 3][((r >> q) & 1) * 2 + ((c >> q) & 1)])
        };
        let a = psi.amplitudes();
        let mut e = zero;
        for r in 0..d {
            for c in 0..d {
                e += a[r].conj() * entry(r, c) * a[c];
            }
        }
        sum += (e.norm_sqr() / d as f64).powi(2);
    }
    -sum.ln() - (d as f64).ln()
}

#[test]
fn brute_force_matches_dense_paulis() {
    let t = DenseState::from_amplitudes(1, vec![C64::new((std::f64::consts::PI / 8.0).cos(), 0.0), C64::new((std::f64::consts::PI / 8.0).sin(), 0.0)]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut states = vec![t];
    for n in 1..=3 {
        let amps: Vec<C64> = (0..1 << n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        states.push(DenseState::from_amplitudes(n, amps).unwrap());
    }
    for s in &states {
        assert!((m2_bruteforce(s).unwrap() - naive_m2(s)).abs() < 1e-12);
    }
    assert!(m2_bruteforce(&states[0]).unwrap() > 0.1);
}

#[test]
fn stabilizer_states_have_no_magic() {
    for bits in ["0", "1", "0110", "10101"] {
        assert!(m2_bruteforce(&DenseState::basis(bits).unwrap()).unwrap().abs() < 1e-12);
    }
    for n in 2..=6 {
        assert!(m2_bruteforce(&DenseState::ghz(n).unwrap()).unwrap().abs() < 1e-12);
    }
    assert!(m2_bruteforce(&DenseState::w(3).unwrap()).unwrap() > 0.1);
    assert!(m2_bruteforce(&DenseState::zeros(9)).is_err());
}

#[test]
fn xor_estimate_equals_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let rank = rng.gen_range(1..=8);
        let s = random_spectrum(&mut rng, rank);
        let brute = m2_bruteforce(&schmidt_state(&s).unwrap()).unwrap();
        let est = m2_spectrum_estimate(&s).unwrap();
        assert!((brute - est).abs() < 1e-10, "rank {rank}: {brute} vs {est}");
    }
}

#[test]
fn two_level_closed_form() {
    for k in 1..=50 {
        let l = k as f64 / 51.0;
        let s = Spectrum::two_level(l).unwrap();
        let closed = two_level_m2(l);
        assert!((m2_spectrum_estimate(&s).unwrap() - closed).abs() < 1e-12);
        assert!((m2_bruteforce(&schmidt_state(&s).unwrap()).unwrap() - closed).abs() < 1e-12);
    }
    // expansion about 1/2: 4 d^2 - 8 d^4
    let d = 1e-2;
    assert!((two_level_m2(0.5 + d) - (4.0 * d * d - 8.0 * d.powi(4))).abs() < 1e-9);
}

#[test]
fn pair_bound_on_single_pairs() {
    for k in 1..1000 {
        let l = k as f64 / 1000.0;
        let (lo, hi) = pair_bounds(&Spectrum::two_level(l).unwrap());
        let m = two_level_m2(l);
        assert!(lo <= m + 1e-15 && m <= hi + 1e-15, "lambda {l}: {lo} {m} {hi}");
    }
}

#[test]
fn flat_spectra() {
    for r in [1, 2, 4, 8, 16] {
        assert!(m2_spectrum_estimate(&Spectrum::flat(r)).unwrap().abs() < 1e-12);
        let b = m2_bounds(&Spectrum::flat(r)).unwrap();
        assert!(b.averaged.abs() < 1e-12 && b.bound.abs() < 1e-12);
    }
    // flat with a rank that is not a power of two still carries magic
    for r in [3, 5, 6, 7] {
        assert!(m2_spectrum_estimate(&Spectrum::flat(r)).unwrap() > 1e-3);
    }
    // flat rank 2 inside a larger space
    let s = Spectrum::new(vec![0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
    assert!(m2_spectrum_estimate(&s).unwrap().abs() < 1e-12);
}

#[test]
fn descending_order_minimizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let perms4: Vec<Vec<usize>> = permutations(4);
    for _ in 0..100 {
        let s = random_spectrum(&mut rng, 4);
        let base = -xor_sum(&s.values).unwrap().ln();
        for p in &perms4 {
            let v: Vec<f64> = p.iter().map(|&i| s.values[i]).collect();
            assert!(-xor_sum(&v).unwrap().ln() >= base - 1e-12);
        }
    }
    for _ in 0..20 {
        let s = random_spectrum(&mut rng, 8);
        let base = -xor_sum(&s.values).unwrap().ln();
        for _ in 0..200 {
            let mut v = s.values.clone();
            v.shuffle(&mut rng);
            assert!(-xor_sum(&v).unwrap().ln() >= base - 1e-12);
        }
    }
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, r - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn xor_index_patterns() {
    for r in [1usize, 2, 4, 8, 16, 32] {
        let counts = xor_pattern_counts(r);
        let rr = r as u64;
        let mut expect = std::collections::BTreeMap::new();
        expect.insert(vec![8], rr);
        if r >= 2 {
            expect.insert(vec![4, 4], 7 * rr * (rr - 1));
        }
        if r >= 4 {
            expect.insert(vec![2, 2, 2, 2], 7 * rr * (rr - 1) * (rr - 2));
        }
        if r >= 8 {
            expect.insert(vec![1; 8], rr * (rr - 1) * (rr - 2) * (rr - 4));
        }
        assert_eq!(counts, expect, "r={r}");
    }
}

#[test]
fn averaged_estimate_is_the_permutation_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for r in [4usize, 8] {
        let perms = permutations(r);
        for _ in 0..3 {
            let s = random_spectrum(&mut rng, r);
            let mean: f64 = perms
                .iter()
                .map(|p| xor_sum(&p.iter().map(|&i| s.values[i]).collect::<Vec<_>>()).unwrap())
                .sum::<f64>()
                / perms.len() as f64;
            assert!((m2_averaged(&s).unwrap() + mean.ln()).abs() < 1e-12, "r={r}");
        }
    }
}

/// The closed form with coefficients `7`, `7/(r-3)` and
/// `1/((r-3)(r-5)(r-6)(r-7))` on sums over distinct indices.
#[test]
fn averaged_estimate_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        let s = random_spectrum(&mut rng, 8);
        let l = &s.values;
        let r = 8.0;
        let mut t: f64 = l.iter().map(|v| v.powi(4)).sum();
        let mut pairs = 0.0;
        let mut quads = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                if i == j {
                    continue;
                }
                pairs += l[i] * l[i] * l[j] * l[j];
                for k in 0..8 {
                    for m in 0..8 {
                        if [i, j].contains(&k) || [i, j, k].contains(&m) {
                            continue;
                        }
                        quads += l[i] * l[j] * l[k] * l[m];
                    }
                }
            }
        }
        let all8 = 40320.0 * l.iter().map(|v| v.sqrt()).product::<f64>();
        t += 7.0 * pairs + 7.0 / (r - 3.0) * quads + all8 / ((r - 3.0) * (r - 5.0) * (r - 6.0) * (r - 7.0));
        assert!((m2_averaged(&s).unwrap() + t.ln()).abs() < 1e-12);
    }
}

#[test]
fn bound_chain_on_random_spectra() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..1000 {
        let s = random_spectrum(&mut rng, 8);
        let b = m2_bounds(&s).unwrap();
        assert!(b.estimate <= b.averaged + 1e-12 && b.averaged <= b.bound + 1e-12);
        assert!(b.estimate <= 2.0 * renyi(&s, 2.0) + 1e-12);
        assert!(b.estimate <= 4.0 * (renyi(&s, 0.0) - renyi(&s, 0.5)) + 1e-12);
        assert!(b.flatness_relative >= 0.0);
    }
    // padded spectra: the anti-flatness bound uses ln(dim); with ln(rank)
    // in its place it fails for some rank-deficient spectra
    let mut rank_form_failures = 0;
    for _ in 0..1000 {
        let rank = rng.gen_range(1..=8);
        let s = random_spectrum(&mut rng, rank);
        let b = m2_bounds(&s).unwrap();
        if b.averaged > 4.0 * (renyi(&s, 0.0) - renyi(&s, 0.5)) + 1e-12 {
            rank_form_failures += 1;
        }
    }
    println!("ln(rank) form of the anti-flatness bound fails on {rank_form_failures}/1000 padded spectra");
    assert!(rank_form_failures > 0);
}

#[test]
fn outputs_are_independent_of_thread_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let s = random_spectrum(&mut rng, 64);
    let a = m2_spectrum_estimate(&s).unwrap();
    let b = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| m2_spectrum_estimate(&s).unwrap());
    assert_eq!(a.to_bits(), b.to_bits());
}
