use clifford_core::{eval_expr, parse_gens};
use group_engine::*;
use num_complex::Complex64 as C;
use state_space::DenseState;
use std::sync::OnceLock;

fn hc() -> &'static SubgroupTable {
    static T: OnceLock<SubgroupTable> = OnceLock::new();
    T.get_or_init(|| SubgroupTable::close(&hc_generators(), true).unwrap())
}

fn c2() -> &'static SubgroupTable {
    static T: OnceLock<SubgroupTable> = OnceLock::new();
    T.get_or_init(|| SubgroupTable::close(&c2_generators(), true).unwrap())
}

fn elements_of(g: &SubgroupTable, words: &[&str]) -> Vec<u32> {
    let mut v: Vec<u32> = words.iter().map(|w| g.index_of(&eval_expr(w, 2).unwrap()).unwrap()).collect();
    v.sort_unstable();
    v
}

/// |010> + i|011> + |100> + i|101>, with the rightmost digit as qubit 1.
fn g288_state() -> DenseState {
    let mut amps = vec![C::new(0.0, 0.0); 8];
    for (label, a) in [("010", C::new(1.0, 0.0)), ("011", C::new(0.0, 1.0)), ("100", C::new(1.0, 0.0)), ("101", C::new(0.0, 1.0))] {
        let idx = label.chars().rev().enumerate().map(|(q, c)| ((c == '1') as usize) << q).sum::<usize>();
        amps[idx] = a;
    }
    DenseState::from_amplitudes(3, amps).unwrap()
}

#[test]
fn product_state_stabilizer_and_cosets() {
    let g = hc();
    assert_eq!(g.order(), 1152);
    let s = stabilizer_subgroup(g, &DenseState::zeros(2), DEFAULT_TOLERANCE).unwrap();
    assert_eq!(s.len(), 48);
    let cs = left_cosets(g, &s).unwrap();
    assert_eq!(cs.len(), 24);
    assert!(cs.classes.iter().all(|c| c.len() == 48));
}

#[test]
fn orbit_stabilizer_holds() {
    for (name, g) in [("hc", hc()), ("c2", c2())] {
        for spec in ["zeros:2", "zeros:3", "ghz:3", "w:3", "dicke:4,2", "ghz:4"] {
            let psi = DenseState::parse_spec(spec).unwrap();
            let orbit = orbit_states(g, &psi).unwrap();
            let stab = stabilizer_from_orbit(g, &psi, &orbit, DEFAULT_TOLERANCE).unwrap();
            let distinct: std::collections::HashSet<Vec<i64>> = orbit.iter().map(|s| s.key()).collect();
            assert_eq!(distinct.len() * stab.len(), g.order(), "{name} {spec}");
            assert_eq!(g.order() % stab.len(), 0);
        }
    }
}

#[test]
fn ghz_and_g288_stabilizer_orders() {
    let ghz = stabilizer_subgroup(hc(), &DenseState::ghz(3).unwrap(), DEFAULT_TOLERANCE).unwrap();
    assert_eq!(ghz.len(), 8);
    let s = stabilizer_subgroup(hc(), &g288_state(), DEFAULT_TOLERANCE).unwrap();
    assert_eq!(s.len(), 4);
    // the listed group is the stabilizer of another state in the same orbit
    let g = hc();
    let listed = elements_of(g, &["1", "H2 (C12 H1)^4", "(C12 H1)^4 H2", "((C12 H1)^3 C12 H2)^2"]);
    assert!(g.is_subgroup(&listed));
    let conjugate = (0..g.order() as u32).any(|h| {
        let hi = g.inverse(h);
        let mut c: Vec<u32> = s.iter().map(|&x| g.mul(g.mul(h, x), hi)).collect();
        c.sort_unstable();
        c == listed
    });
    assert!(conjugate);
}

#[test]
fn w_state_stabilizer() {
    let s = stabilizer_subgroup(hc(), &DenseState::w(3).unwrap(), DEFAULT_TOLERANCE).unwrap();
    let later = elements_of(hc(), &["1", "H2 C12 H2", "C12 C21 C12", "H2 C12 H2 C12 C21 C12"]);
    assert_eq!(s, later);
    let earlier = elements_of(hc(), &["1", "H2 C12 H2", "H1 C12 H2 C21", "H2 C12 C21 C12 H1"]);
    assert_ne!(s, earlier);
    assert!(!hc().is_subgroup(&earlier));
    // the same four elements stabilize under the full group
    let full = stabilizer_subgroup(c2(), &DenseState::w(3).unwrap(), DEFAULT_TOLERANCE).unwrap();
    assert_eq!(full.len(), 4);
}

#[test]
fn dicke_stabilizer_in_full_group() {
    let s = stabilizer_subgroup(c2(), &DenseState::dicke(4, 2).unwrap(), DEFAULT_TOLERANCE).unwrap();
    assert_eq!(s, elements_of(c2(), &["1", "C12 C21 C12"]));
}

#[test]
fn local_subgroups() {
    let l = local_subgroup(hc()).unwrap();
    assert_eq!(l.len(), 64);
    let lc = local_subgroup(c2()).unwrap();
    assert_eq!(c2().order() / lc.len(), 20);
    assert_eq!(lc.len(), 576);
    let one = SubgroupTable::close(&parse_gens("H1,P1").unwrap(), true).unwrap();
    assert_eq!(local_subgroup(&one).unwrap().len(), one.order());
}

#[test]
fn double_coset_counts() {
    let g = hc();
    let l = local_subgroup(g).unwrap();
    let s00 = stabilizer_subgroup(g, &DenseState::zeros(2), DEFAULT_TOLERANCE).unwrap();
    assert_eq!(double_cosets(g, &l, &s00).unwrap().len(), 2);
    let s288 = stabilizer_subgroup(g, &g288_state(), DEFAULT_TOLERANCE).unwrap();
    assert_eq!(double_cosets(g, &l, &s288).unwrap().len(), 12);
    let trivial = vec![g.identity()];
    assert_eq!(double_cosets(g, &trivial, &trivial).unwrap().len(), g.order());
}

fn orbit_size(g: &SubgroupTable, psi: &DenseState) -> usize {
    let orbit = orbit_states(g, psi).unwrap();
    orbit.iter().map(|s| s.key()).collect::<std::collections::HashSet<_>>().len()
}

#[test]
fn full_group_orbits() {
    assert_eq!(orbit_size(c2(), &DenseState::zeros(2)), 60);
    assert_eq!(orbit_size(c2(), &DenseState::w(3).unwrap()), 2880);
    assert_eq!(orbit_size(c2(), &DenseState::dicke(4, 2).unwrap()), 5760);
    // three g144 copies and one g288 joined by phase gates
    let ghz = orbit_size(c2(), &DenseState::ghz(3).unwrap());
    let g288 = orbit_size(c2(), &g288_state());
    assert_eq!(ghz, g288);
    assert_eq!(ghz, 3 * 144 + 288);
}
