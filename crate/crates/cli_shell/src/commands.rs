use crate::output::Output;
use crate::{Command, DickeCmd, Failure, GroupArgs, GroupCmd, IsingArgs, MagicCmd, SolverArg, StateArgs, VerifyCmd};
use anyhow::Context as _;
use dicke_cone::DickeSpec;
use graph_atlas::{file_stem, graph_metrics, to_dot, to_graphml, to_json, QuotientGraph};
use group_engine::{CacheOutcome, GroupCache, SubgroupTable};
use magic_kit::{Solver, Spectrum};
use serde_json::json;
use state_space::DenseState;
use std::fmt::Write as _;
use std::path::PathBuf;

pub const CACHE_ENV: &str = "STABATLAS_CACHE";

pub struct Context {
    pub tolerance: f64,
    pub cache: Option<PathBuf>,
}

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".stabatlas-cache"))
}

pub fn execute(cmd: &Command, ctx: &Context) -> Result<Output, Failure> {
    match cmd {
        Command::Group(GroupCmd::Close(a)) => group_close(a, ctx),
        Command::Cayley(a) => cayley(a, ctx),
        Command::Reach(a) => state_graph(a, ctx, false),
        Command::Contract(a) => state_graph(a, ctx, true),
        Command::Census { n } => census(*n),
        Command::Dicke(d) => dicke(d, ctx),
        Command::Magic(MagicCmd::M2 { spectrum }) => magic_m2(spectrum),
        Command::Ising(a) => ising(a),
        Command::Verify(VerifyCmd::Relations) => verify_relations(),
    }
}

fn load_group(a: &GroupArgs, ctx: &Context) -> Result<SubgroupTable, Failure> {
    let gens = clifford_core::parse_gens(&a.gens).map_err(|e| Failure::Usage(format!("--gens {}: {e}", a.gens)))?;
    if gens.is_empty() {
        return Err(Failure::Usage("--gens is empty".into()));
    }
    let Some(dir) = &ctx.cache else {
        return Ok(SubgroupTable::close(&gens, a.mod_phase)?);
    };
    match GroupCache::new(dir).load_or_close(&gens, a.mod_phase) {
        Ok((t, CacheOutcome::Corrupt)) => {
            eprintln!("warning: cache entry for {} was corrupt; recomputed", a.gens);
            Ok(t)
        }
        Ok((t, _)) => Ok(t),
        Err(group_engine::GroupError::Io(e)) => {
            eprintln!("warning: group cache unavailable ({e}); computing without it");
            Ok(SubgroupTable::close(&gens, a.mod_phase)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_state(spec: &str) -> Result<(DenseState, Vec<PathBuf>), Failure> {
    let psi = DenseState::parse_spec(spec).map_err(|e| match e {
        state_space::StateError::Spec(_) => Failure::Usage(format!("--state {spec}: {e}")),
        other => Failure::Compute(anyhow::Error::from(other).context(format!("--state {spec}"))),
    })?;
    let inputs = match spec.split_once(':') {
        Some((kind, path)) if kind.trim().eq_ignore_ascii_case("file") => vec![PathBuf::from(path.trim())],
        _ => Vec::new(),
    };
    Ok((psi, inputs))
}

/// A label for graph files: the file stem for `file:` states, the spec otherwise.
fn state_label(spec: &str) -> String {
    match spec.split_once(':') {
        Some((kind, path)) if kind.trim().eq_ignore_ascii_case("file") => std::path::Path::new(path.trim())
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "file".into()),
        _ => spec.replace([':', ','], "-"),
    }
}

fn group_close(a: &GroupArgs, ctx: &Context) -> Result<Output, Failure> {
    let t = load_group(a, ctx)?;
    let mut hist = vec![0usize; t.diameter() as usize + 1];
    for i in 0..t.order() as u32 {
        hist[t.distance(i) as usize] += 1;
    }
    let gens: Vec<String> = t.generators.iter().map(|g| g.to_string()).collect();
    let text = format!(
        "generators {}\nmod_phase {}\norder {}\ndiameter {}\n",
        gens.join(","),
        t.mod_phase,
        t.order(),
        t.diameter()
    );
    let mut csv = String::from("depth,elements\n");
    for (d, c) in hist.iter().enumerate() {
        writeln!(csv, "{d},{c}").unwrap();
    }
    let j = json!({
        "generators": gens,
        "mod_phase": t.mod_phase,
        "order": t.order(),
        "diameter": t.diameter(),
        "depth_histogram": hist,
    });
    Ok(Output::new("group", text, j).with_csv(csv))
}

fn graph_output(stem: &str, g: &QuotientGraph, extra: serde_json::Value) -> Result<Output, Failure> {
    let m = graph_metrics(g)?;
    let mut text = format!(
        "{} graph {}\nvertices {}\nedges {}\ndiameter {}\nundirected_diameter {}\ncolors {}\nwl_hash {}\n",
        g.kind.name(),
        file_stem(g),
        m.vertices,
        m.edges,
        m.diameter,
        m.undirected_diameter,
        m.colors,
        m.wl_hash
    );
    if g.kind != graph_atlas::GraphKind::Cayley {
        writeln!(text, "stabilizer_order {}", g.stabilizer_order).unwrap();
    }
    for (i, v) in g.palette.iter().enumerate() {
        writeln!(text, "color {i} {v}").unwrap();
    }
    let mut j = json!({
        "group": g.group,
        "state": g.state,
        "kind": g.kind.name(),
        "stabilizer_order": g.stabilizer_order,
        "metrics": m,
        "palette": g.palette.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    });
    if let (Some(o), Some(e)) = (j.as_object_mut(), extra.as_object()) {
        o.extend(e.clone());
    }
    let mut out = Output::new(stem, text, j);
    let base = file_stem(g);
    out.files.push((format!("{base}.dot"), to_dot(g).into_bytes()));
    out.files.push((format!("{base}.graphml"), to_graphml(g).into_bytes()));
    out.files.push((format!("{base}.json"), to_json(g)?.into_bytes()));
    Ok(out)
}

fn cayley(a: &GroupArgs, ctx: &Context) -> Result<Output, Failure> {
    let t = load_group(a, ctx)?;
    graph_output("cayley", &graph_atlas::cayley_graph(&t), json!({ "order": t.order() }))
}

fn state_graph(a: &StateArgs, ctx: &Context, contracted: bool) -> Result<Output, Failure> {
    let (psi, inputs) = parse_state(&a.state)?;
    if psi.n_qubits() < 2 {
        return Err(Failure::Usage("the generators act on qubits 1 and 2; the state needs at least 2 qubits".into()));
    }
    let t = load_group(&a.group, ctx)?;
    let label = state_label(&a.state);
    let data = graph_atlas::orbit_data(&t, &psi)?;
    let g = if contracted {
        graph_atlas::contracted_from(&t, &data, &label)?
    } else {
        graph_atlas::reachability_from(&t, &data, &label)?
    };
    let orbit = data.classes.len();
    let stem = if contracted { "contract" } else { "reach" };
    let mut out = graph_output(stem, &g, json!({ "group_order": t.order(), "orbit": orbit }))?;
    out.text = format!("orbit {orbit}\n{}", out.text);
    out.inputs = inputs;
    Ok(out)
}

fn census(n: usize) -> Result<Output, Failure> {
    if !(1..=stab_census::MAX_ENUM_QUBITS).contains(&n) {
        return Err(Failure::Usage(format!("--n {n}: the census covers 1..={} qubits", stab_census::MAX_ENUM_QUBITS)));
    }
    let c = stab_census::entropy_census(n)?;
    let mut buf = Vec::new();
    c.write_csv(&mut buf)?;
    let csv = String::from_utf8(buf).context("census CSV is UTF-8")?;
    let bad: Vec<_> = c.non_holographic().collect();
    let mut text = format!(
        "qubits {n}\nstates {}\ndistinct_vectors {}\nnon_holographic_vectors {}\nnon_holographic_states {}\n",
        c.total_states,
        c.distinct(),
        bad.len(),
        bad.iter().map(|e| e.count).sum::<u64>()
    );
    for e in &c.entries {
        let v: Vec<String> = e.vector.iter().map(u32::to_string).collect();
        let flag = if e.holographic { String::new() } else { format!("  violates {}", e.violated.join(",")) };
        writeln!(text, "({}) x{}{flag}", v.join(","), e.count).unwrap();
    }
    Ok(Output::new("census", text, c.summary_json()).with_csv(csv))
}

fn dicke_spec(n: usize, k: usize) -> Result<DickeSpec, Failure> {
    DickeSpec::new(n, k).map_err(|e| Failure::Usage(e.to_string()))
}

fn dicke(cmd: &DickeCmd, ctx: &Context) -> Result<Output, Failure> {
    match *cmd {
        DickeCmd::Entropy { n, k, bits } => {
            let spec = dicke_spec(n, k)?;
            let unit = if bits { std::f64::consts::LN_2 } else { 1.0 };
            let s: Vec<f64> = dicke_cone::entropy_profile(spec).into_iter().map(|x| x / unit).collect();
            let name = if bits { "bits" } else { "nats" };
            let mut text = format!("D^{n}_{k} entropies in {name}\n");
            let mut csv = format!("ell,entropy_{name}\n");
            for (l, v) in s.iter().enumerate() {
                writeln!(text, "S_{l} = {v}").unwrap();
                writeln!(csv, "{l},{v}").unwrap();
            }
            Ok(Output::new("dicke_entropy", text, json!({ "n": n, "k": k, "unit": name, "entropies": s })).with_csv(csv))
        }
        DickeCmd::Cone { n, k } => {
            let spec = dicke_spec(n, k)?;
            let v = dicke_cone::dicke_entropy_vector(spec).map_err(|e| Failure::Usage(e.to_string()))?;
            let report = (n <= 10).then(|| {
                entropy_lab::check_inequalities_tol(&v.vector.table(), ctx.tolerance)
            });
            let mut text = format!("D^{n}_{k}\nvector {}\nsqec {}\n", v.vector, v.sqec);
            match v.shec {
                Some(b) => writeln!(text, "shec {b}").unwrap(),
                None => writeln!(text, "shec n/a").unwrap(),
            }
            if let Some(r) = &report {
                let bad = r.violated();
                writeln!(text, "holographic {}", r.holographic).unwrap();
                if !bad.is_empty() {
                    writeln!(text, "violated {}", bad.join(",")).unwrap();
                }
            }
            let mut j = serde_json::to_value(&v).map_err(anyhow::Error::from)?;
            j["inequalities"] = serde_json::to_value(&report).map_err(anyhow::Error::from)?;
            j["vector_label"] = v.vector.to_string().into();
            Ok(Output::new("dicke_cone", text, j))
        }
        DickeCmd::Stars { n, k, l } => {
            let spec = dicke_spec(n, k)?;
            let r = dicke_cone::star_realization(spec, l).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut text = format!("D^{n}_{k}, l = {l}: {} star graphs\n", r.graphs.len());
            let mut csv = String::from("term,side,legs,weight,coefficient,min_cut\n");
            for g in &r.graphs {
                writeln!(text, "term {} {:?} weight {} coefficient {} cut {}", g.term, g.side, g.weight, g.coefficient, g.min_cut(l))
                    .unwrap();
                writeln!(csv, "{},{:?},{},{},{},{}", g.term, g.side, g.legs, g.weight, g.coefficient, g.min_cut(l)).unwrap();
            }
            writeln!(text, "sum {}\ntarget {}", r.value, r.target).unwrap();
            let j = serde_json::to_value(&r).map_err(anyhow::Error::from)?;
            Ok(Output::new("dicke_stars", text, j).with_csv(csv))
        }
    }
}

fn read_spectrum(path: &PathBuf) -> Result<Spectrum, Failure> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let v: serde_json::Value =
        serde_json::from_slice(&bytes).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let arr = match &v {
        serde_json::Value::Array(_) => &v,
        serde_json::Value::Object(o) => o.get("values").ok_or_else(|| Failure::Usage("spectrum object has no \"values\"".into()))?,
        _ => return Err(Failure::Usage("spectrum must be a JSON array".into())),
    };
    let values: Vec<f64> = serde_json::from_value(arr.clone()).map_err(|e| Failure::Usage(format!("spectrum values: {e}")))?;
    Ok(Spectrum::new(values)?)
}

fn magic_m2(path: &PathBuf) -> Result<Output, Failure> {
    let spec = read_spectrum(path)?;
    let b = magic_kit::m2_bounds(&spec)?;
    let s1 = magic_kit::renyi(&spec, 1.0);
    let s2 = magic_kit::renyi(&spec, 2.0);
    let f = magic_kit::anti_flatness(&spec);
    let text = format!(
        "rank {}\nS1 {s1}\nS2 {s2}\nanti_flatness {f}\nm2_estimate {}\nm2_averaged {}\nbound_2s2 {}\nbound_antiflat {}\nflatness_relative {}\n",
        spec.rank(),
        b.estimate,
        b.averaged,
        b.two_s2,
        b.antiflat,
        b.flatness_relative
    );
    let j = json!({
        "spectrum": spec.values,
        "rank": spec.rank(),
        "s1": s1,
        "s2": s2,
        "anti_flatness": f,
        "bounds": b,
    });
    let mut out = Output::new("magic_m2", text, j);
    out.inputs = vec![path.clone()];
    Ok(out)
}

fn parse_list<T: std::str::FromStr>(flag: &str, s: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<T>().map_err(|_| Failure::Usage(format!("--{flag}: cannot parse {t:?}"))))
        .collect()
}

fn ising(a: &IsingArgs) -> Result<Output, Failure> {
    if !(2..=magic_kit::ising::MAX_ISING_QUBITS).contains(&a.n) {
        return Err(Failure::Usage(format!("--n {} outside 2..={}", a.n, magic_kit::ising::MAX_ISING_QUBITS)));
    }
    let gs: Vec<f64> = match &a.g {
        Some(list) => parse_list("g", list)?,
        None if a.steps == 1 => vec![a.gmin],
        None if a.steps >= 2 && a.gmax > a.gmin => {
            let h = (a.gmax - a.gmin) / (a.steps - 1) as f64;
            (0..a.steps).map(|i| a.gmin + i as f64 * h).collect()
        }
        None => return Err(Failure::Usage("need --steps >= 1 and --gmax > --gmin".into())),
    };
    if gs.is_empty() {
        return Err(Failure::Usage("no g values".into()));
    }
    let cuts: Vec<usize> = match &a.cut {
        Some(c) => parse_list("cut", c)?,
        None => vec![a.n / 2],
    };
    if cuts.iter().any(|&c| c == 0 || c >= a.n) {
        return Err(Failure::Usage(format!("--cut values must lie in 1..{}", a.n)));
    }
    let solver = match a.solver {
        SolverArg::Auto => Solver::Auto,
        SolverArg::Dense => Solver::Dense,
        SolverArg::Lanczos => Solver::Lanczos,
    };
    let rows = magic_kit::ising_magic_scan(a.n, &gs, &cuts, a.bias, solver)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).context("writing CSV row")?;
    }
    let csv = String::from_utf8(w.into_inner().context("flushing CSV")?).context("CSV is UTF-8")?;
    let mut text = format!("n {} bias {}\n{:>10} {:>4} {:>12} {:>10} {:>10}\n", a.n, a.bias, "g", "cut", "energy", "S1", "M2_est");
    for r in &rows {
        writeln!(text, "{:>10.5} {:>4} {:>12.6} {:>10.6} {:>10.6}", r.g, r.cut, r.energy, r.entropy, r.m2_estimate).unwrap();
    }
    let j = json!({ "n": a.n, "bias": a.bias, "rows": rows });
    Ok(Output::new("ising", text, j).with_csv(csv))
}

fn verify_relations() -> Result<Output, Failure> {
    let checks = clifford_core::verify_relations(&clifford_core::RelationCatalog::all())?;
    let mut text = String::new();
    let mut csv = String::from("relation,lhs,rhs,equality,exact,mod_phase,pass\n");
    let mut rows = Vec::new();
    let mut failed = 0;
    for c in &checks {
        let status = if c.pass() { "pass" } else { "FAIL" };
        failed += usize::from(!c.pass());
        writeln!(text, "{status} {}: {} = {}", c.name, c.lhs, c.rhs).unwrap();
        writeln!(csv, "{},{},{},{:?},{},{},{}", c.name, c.lhs, c.rhs, c.equality, c.holds_exact, c.holds_mod_phase, c.pass())
            .unwrap();
        rows.push(json!({
            "relation": c.name, "lhs": c.lhs, "rhs": c.rhs, "equality": format!("{:?}", c.equality),
            "exact": c.holds_exact, "mod_phase": c.holds_mod_phase, "pass": c.pass(),
        }));
    }
    writeln!(text, "{} of {} instances hold", checks.len() - failed, checks.len()).unwrap();
    let mut out = Output::new("relations", text, json!({ "checks": rows, "failed": failed })).with_csv(csv);
    if failed > 0 {
        out.failure = Some(format!("{failed} relation instances failed"));
    }
    Ok(out)
}
