use clifford_core::parse_gens;
use graph_atlas::*;
use group_engine::{c2_generators, hc_generators, SubgroupTable};
use num_complex::Complex64 as C;
use state_space::DenseState;
use std::path::Path;
use std::sync::OnceLock;

fn hc() -> &'static SubgroupTable {
    static T: OnceLock<SubgroupTable> = OnceLock::new();
    T.get_or_init(|| SubgroupTable::close(&hc_generators(), true).unwrap())
}

fn c2() -> &'static SubgroupTable {
    static T: OnceLock<SubgroupTable> = OnceLock::new();
    T.get_or_init(|| SubgroupTable::close(&c2_generators(), true).unwrap())
}

/// Builds a state from `(ket, amplitude)` pairs whose rightmost digit is qubit 1.
fn kets(n: usize, terms: &[(&str, C)]) -> DenseState {
    let mut amps = vec![C::new(0.0, 0.0); 1 << n];
    for (label, a) in terms {
        let idx = label.chars().rev().enumerate().map(|(q, c)| ((c == '1') as usize) << q).sum::<usize>();
        amps[idx] += a;
    }
    DenseState::from_amplitudes(n, amps).unwrap()
}

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

fn g36_state() -> DenseState {
    // (|0> + i|1>) on qubit 1, |0> on qubit 2
    kets(2, &[("00", re(1.0)), ("01", C::new(0.0, 1.0))])
}

fn g288_state() -> DenseState {
    kets(3, &[("010", re(1.0)), ("011", C::new(0.0, 1.0)), ("100", re(1.0)), ("101", C::new(0.0, 1.0))])
}

fn fixture(name: &str) -> DenseState {
    DenseState::read_json(&Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)).unwrap()
}

fn both(g: &SubgroupTable, psi: &DenseState, label: &str) -> (QuotientGraph, QuotientGraph) {
    let data = orbit_data(g, psi).unwrap();
    (reachability_from(g, &data, label).unwrap(), contracted_from(g, &data, label).unwrap())
}

#[test]
fn hc_stabilizer_classes() {
    // (state, orbit, stabilizer, contracted vertices)
    let cases = [
        ("zeros", DenseState::zeros(2), 24, 48, 2),
        ("g36", g36_state(), 36, 32, 4),
        ("ghz3", DenseState::ghz(3).unwrap(), 144, 8, 5),
        ("g288", g288_state(), 288, 4, 12),
    ];
    for (label, psi, orbit, stab, contracted) in cases {
        let (r, c) = both(hc(), &psi, label);
        assert_eq!(r.vertex_count(), orbit, "{label}");
        assert_eq!(r.stabilizer_order, stab, "{label}");
        assert_eq!(c.vertex_count(), contracted, "{label}");
        assert!(c.color_count() <= contracted);
        assert_eq!(c.palette, r.palette);
    }
}

#[test]
fn hc_dicke_classes() {
    let (r, c) = both(hc(), &DenseState::w(3).unwrap(), "w3");
    assert_eq!((r.vertex_count(), r.stabilizer_order, c.vertex_count()), (288, 4, 5));
    assert_eq!(r.color_count(), 5);
    let (r, c) = both(hc(), &DenseState::dicke(4, 2).unwrap(), "d42");
    assert_eq!((r.vertex_count(), r.stabilizer_order, c.vertex_count()), (576, 2, 9));
    assert_eq!(r.color_count(), 6);
}

#[test]
fn c2_contracted_graphs() {
    let (r, c) = both(c2(), &DenseState::w(3).unwrap(), "w3");
    assert_eq!((r.vertex_count(), c.vertex_count()), (2880, 6));
    let (r, c) = both(c2(), &DenseState::dicke(4, 2).unwrap(), "d42");
    assert_eq!((r.vertex_count(), c.vertex_count()), (5760, 10));
    assert_eq!(c2().order() / 576, 20);
}

#[test]
fn generic_state_under_full_group() {
    // 18 of the 20 vectors are reachable with Hadamards and CNOTs alone
    let (r, c) = both(c2(), &fixture("eight_qubit_g1152.json"), "eight");
    assert_eq!((r.vertex_count(), r.stabilizer_order), (11520, 1));
    assert_eq!((c.vertex_count(), c.color_count()), (20, 20));
    // single-generator adjacency: every class meets nine others
    assert_eq!(c.edges.len(), 90);
    assert!(c.neighbours().iter().all(|n| n.len() == 9));
}

#[test]
fn phase_and_cnot_example() {
    let g = SubgroupTable::close(&parse_gens("P2,C12").unwrap(), true).unwrap();
    let psi = kets(2, &[("00", re(1.0)), ("01", re(2.0)), ("10", re(4.0)), ("11", re(3.0))]);
    let (r, c) = both(&g, &psi, "psi");
    assert_eq!(r.stabilizer_order, 1);
    assert_eq!(r.vertex_count(), g.order());
    assert_eq!(c.vertex_count(), 4);
    assert_eq!(c.color_count(), 4);
}

#[test]
fn maximal_colorings_on_large_states() {
    // the printed state is not a stabilizer state; four flipped signs recover
    // the intended one, whose orbit carries exactly the five tabulated vectors
    let printed = fixture("six_qubit_g144_printed.json");
    assert_eq!(both(hc(), &printed, "printed").0.stabilizer_order, 1);
    let six = fixture("six_qubit_g144.json");
    let flips: Vec<usize> =
        (0..64).filter(|&i| (six.amplitudes()[i] - printed.amplitudes()[i]).norm() > 1e-12).collect();
    assert_eq!(flips, vec![46, 48, 51, 52]);
    let (r, c) = both(hc(), &six, "six");
    assert_eq!((r.vertex_count(), c.vertex_count(), c.color_count()), (144, 5, 5));
    let tabulated = [
        "(1,0,1,1,1,1;1,2,2,2,2,1,1,1,1,2,2,2,2,2,2;2,2,2,2,2,2,2,2,2,2)",
        "(0,1,1,1,1,1;1,1,1,1,1,2,2,2,2,2,2,2,2,2,2;2,2,2,2,2,2,2,2,2,2)",
        "(1,1,1,1,1,1;1,2,2,2,2,2,2,2,2,2,2,2,2,2,2;2,2,2,2,2,3,3,3,3,2)",
        "(1,1,1,1,1,1;1,2,2,2,2,2,2,2,2,2,2,2,2,2,2;2,2,2,2,3,3,2,2,3,3)",
        "(1,1,1,1,1,1;1,2,2,2,2,2,2,2,2,2,2,2,2,2,2;2,2,2,2,3,2,3,3,2,3)",
    ];
    let mut got: Vec<String> = c.palette.iter().map(|v| v.to_string()).collect();
    let mut want: Vec<String> = tabulated.iter().map(|s| s.to_string()).collect();
    got.sort();
    want.sort();
    assert_eq!(got, want);
    let eight = fixture("eight_qubit_g1152.json");
    let (r, c) = both(hc(), &eight, "eight");
    assert_eq!((r.vertex_count(), c.vertex_count(), c.color_count()), (1152, 18, 18));
}

#[test]
fn reachability_is_a_permutation_quotient() {
    let (r, _) = both(hc(), &DenseState::ghz(3).unwrap(), "ghz3");
    assert_eq!(r.succ.len(), 4);
    for t in &r.succ {
        let mut seen = t.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), r.vertex_count(), "each generator permutes cosets");
    }
    assert_eq!(r.edges.len(), 4 * r.vertex_count());
    assert_eq!(r.vertices.iter().map(|v| v.class_size).sum::<usize>(), hc().order());
}

#[test]
fn cayley_metrics() {
    let g = SubgroupTable::close(&parse_gens("H1,P1").unwrap(), true).unwrap();
    let m = graph_metrics(&cayley_graph(&g)).unwrap();
    assert_eq!((m.vertices, m.diameter), (24, 6));
    assert!(m.undirected_diameter <= m.diameter);
    assert_eq!(graph_metrics(&cayley_graph(hc())).unwrap().diameter, 15);
    let one = SubgroupTable::close(&[], true).unwrap();
    let m = graph_metrics(&cayley_graph(&one)).unwrap();
    assert_eq!((m.vertices, m.diameter, m.edges), (1, 0, 0));
}

#[test]
fn product_state_metrics() {
    let r = reachability_graph(hc(), &DenseState::zeros(2), "zeros").unwrap();
    let m = graph_metrics(&r).unwrap();
    assert_eq!(m.colors, 2);
    // |00> is fixed by C12 and C21; no Hadamard fixes it
    let fixed_00 = r.vertices.iter().position(|v| v.representative == hc().identity()).unwrap();
    assert_eq!(r.succ[2][fixed_00] as usize, fixed_00);
    assert_eq!(r.succ[3][fixed_00] as usize, fixed_00);
    assert_ne!(r.succ[0][fixed_00] as usize, fixed_00);
    assert_eq!(m.fixed_points.iter().sum::<usize>(), r.edges.iter().filter(|e| e.is_loop()).count());
}

#[test]
fn wl_hash_separates_same_size_graphs() {
    let g288 = reachability_graph(hc(), &g288_state(), "g288").unwrap();
    let w = reachability_graph(hc(), &DenseState::w(3).unwrap(), "w3").unwrap();
    assert_eq!(g288.vertex_count(), w.vertex_count());
    assert_eq!(permutation_isomorphic(&g288, &w), Some(false));
    let (fa, fb) = (graph_metrics(&g288).unwrap().fixed_points, graph_metrics(&w).unwrap().fixed_points);
    assert_eq!((fa, fb), (vec![0; 4], vec![0, 0, 24, 24]));
    assert_ne!(wl_hash(&g288), wl_hash(&w));
    // relabeling invariance: a state in the same orbit gives the same hash
    let cnot = parse_gens("C12").unwrap()[0].matrix(2).unwrap().to_complex();
    let moved = g288_state().apply_matrix(&[1, 2], &cnot).unwrap();
    let g288b = reachability_graph(hc(), &moved, "g288b").unwrap();
    assert_eq!(wl_hash(&g288), wl_hash(&g288b));
    assert_eq!(permutation_isomorphic(&g288, &g288b), Some(true));
}

#[test]
fn exports_are_written() {
    let c = contracted_graph(hc(), &DenseState::ghz(3).unwrap(), "ghz3").unwrap();
    let dir = tempfile::tempdir().unwrap();
    let files = write_all(&c, dir.path()).unwrap();
    assert_eq!(files.len(), 3);
    assert!(files[0].ends_with(format!("{}.dot", file_stem(&c))));
    let dot = std::fs::read_to_string(&files[0]).unwrap();
    assert!(dot.starts_with("graph "));
    assert_eq!(dot.matches(" -- ").count(), c.edges.len());
    let gml = std::fs::read_to_string(&files[1]).unwrap();
    assert_eq!(gml.matches("<node ").count(), 5);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&files[2]).unwrap()).unwrap();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(json["kind"], "contracted");
    // deterministic output
    assert_eq!(to_dot(&c), to_dot(&contracted_graph(hc(), &DenseState::ghz(3).unwrap(), "ghz3").unwrap()));
}

#[test]
fn ambiguous_colors_are_rejected() {
    use entropy_lab::EntropyVector;
    let a = EntropyVector { n: 2, components: vec![1.0, 1.0, 0.0] };
    let b = EntropyVector { n: 2, components: vec![1.0 + 1e-6, 1.0, 0.0] };
    assert!(matches!(assign_colors(&[a.clone(), b]), Err(AtlasError::AmbiguousColors { .. })));
    let near = EntropyVector { n: 2, components: vec![1.0 + 1e-12, 1.0, 0.0] };
    let (palette, colors) = assign_colors(&[a, near]).unwrap();
    assert_eq!((palette.len(), colors), (1, vec![0, 0]));
}

#[test]
fn orbit_partitions() {
    let counts = |n| orbit_partition_census(n).unwrap().orbits_by_size.into_iter().collect::<Vec<_>>();
    assert_eq!(counts(2), vec![(24, 1), (36, 1)]);
    assert_eq!(counts(3), vec![(24, 6), (36, 6), (144, 3), (288, 1)]);
    assert_eq!(counts(4), vec![(24, 60), (36, 60), (144, 90), (288, 30), (1152, 10)]);
    assert!(orbit_partition_census(5).is_err());
}
