use dicke_cone::*;
use group_engine::{c2_generators, hc_generators, SubgroupTable};
use state_space::DenseState;
use std::collections::HashSet;

fn spec(n: usize, k: usize) -> DickeSpec {
    DickeSpec::new(n, k).unwrap()
}

/// Pauli orbit by applying every unsigned string and counting distinct rays.
fn pauli_orbit_oracle(n: usize, k: usize) -> usize {
    let psi = DenseState::dicke(n, k).unwrap();
    let dim = 1u32 << n;
    let mut seen = HashSet::new();
    for x in 0..dim {
        for z in 0..dim {
            seen.insert(PauliOp { x, z, negative: false }.apply(&psi).key());
        }
    }
    seen.len()
}

#[test]
fn pauli_orbits() {
    for (n, k, orbit) in [(3, 1, 32), (4, 2, 64), (3, 3, 8)] {
        let r = pauli_stabilizers(spec(n, k)).unwrap();
        assert_eq!(r.orbit, orbit, "D^{n}_{k}");
        assert_eq!(r.stabilizers.len() * r.orbit, 1 << (2 * n));
    }
    for n in 1..=4 {
        for k in 1..=n {
            let r = pauli_stabilizers(spec(n, k)).unwrap();
            assert_eq!(r.orbit, pauli_orbit_oracle(n, k), "D^{n}_{k}");
            assert!(r.stabilizers.contains(&PauliOp::z_all(n, k % 2 == 1)));
        }
    }
}

#[test]
fn pauli_claims_checked() {
    let r = pauli_stabilizers(spec(4, 2)).unwrap();
    assert_eq!(r.claims, vec!["+ZZZZ", "+XXXX", "+YYYY"]);
    let r = pauli_stabilizers(spec(3, 3)).unwrap();
    assert_eq!(r.stabilizers.len(), 8);
    assert!(r.claims.contains(&"-ZII".to_string()) && r.claims.contains(&"+ZZI".to_string()));
    for n in 5..=8 {
        for k in 1..=n {
            pauli_stabilizers(spec(n, k)).unwrap();
        }
    }
}

#[test]
fn clifford_classes() {
    let hc = SubgroupTable::close(&hc_generators(), true).unwrap();
    let c2 = SubgroupTable::close(&c2_generators(), true).unwrap();
    for n in 2..=6 {
        for k in 1..=n {
            let r = clifford_stabilizers(spec(n, k), &hc, &c2).unwrap();
            let (hc_orbit, c2_orbit) = match r.claim.as_str() {
                "stabilizer-state" => (24, 60),
                "w-class" | "w-class-conjugate" => (288, 2880),
                "middle" => (576, 5760),
                other => panic!("{other}"),
            };
            assert_eq!((r.hc_orbit, r.c2_orbit), (hc_orbit, c2_orbit), "D^{n}_{k}");
            let expect = if k == n || n <= 2 {
                "stabilizer-state"
            } else if k == 1 {
                "w-class"
            } else if k == n - 1 {
                "w-class-conjugate"
            } else {
                "middle"
            };
            assert_eq!(r.claim, expect, "D^{n}_{k}");
        }
    }
}

#[test]
fn entanglement_cardinalities() {
    let hc = SubgroupTable::close(&hc_generators(), true).unwrap();
    assert_eq!(entanglement_cardinality(spec(2, 1), &hc).unwrap(), 1);
    assert_eq!(entanglement_cardinality(spec(3, 1), &hc).unwrap(), 4);
    assert_eq!(entanglement_cardinality(spec(4, 1), &hc).unwrap(), 6);
    for n in 2..=8 {
        let got = entanglement_cardinality(spec(n, 1), &hc).unwrap();
        println!("D^{n}_1: {got} distinct entropies, floor((5N-7)/2) = {}", (5 * n - 7) / 2);
        assert_eq!(got, (5 * n - 7) / 2, "N={n}");
    }
}
