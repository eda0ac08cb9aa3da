use crate::{AtlasError, QuotientGraph};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

const EDGE_COLORS: [&str; 6] = ["black", "blue", "orange", "purple", "red", "darkgreen"];
const FILL_COLORS: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf", "#999999", "#66c2a5",
    "#fc8d62", "#8da0cb",
];

/// `{group}_{state}_{kind}`, with characters unsafe in file names replaced.
pub fn file_stem(g: &QuotientGraph) -> String {
    let clean = |s: &str| s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '-' }).collect::<String>();
    format!("{}_{}_{}", clean(&g.group), clean(&g.state), g.kind.name())
}

fn fill(color: Option<usize>) -> String {
    match color {
        Some(c) if c < FILL_COLORS.len() => FILL_COLORS[c].to_string(),
        // past the fixed palette, spread hues evenly
        Some(c) => format!("{:.3} 0.6 0.9", (c as f64 * 0.618_034) % 1.0),
        None => "white".into(),
    }
}

fn edge_label(g: &QuotientGraph, labels: &[usize]) -> String {
    labels.iter().map(|&l| g.generators[l].as_str()).collect::<Vec<_>>().join(",")
}

pub fn to_dot(g: &QuotientGraph) -> String {
    let directed = !g.succ.is_empty();
    let mut s = String::new();
    let (kw, arrow) = if directed { ("digraph", "->") } else { ("graph", "--") };
    writeln!(s, "{kw} \"{}\" {{", file_stem(g)).unwrap();
    writeln!(s, "  node [style=filled, shape=circle, label=\"\"];").unwrap();
    for (i, v) in g.vertices.iter().enumerate() {
        let tip = v.color.map(|c| g.palette[c].to_string()).unwrap_or_default();
        writeln!(s, "  v{i} [fillcolor=\"{}\", tooltip=\"{tip}\"];", fill(v.color)).unwrap();
    }
    for e in g.edges.iter().filter(|e| !e.is_loop()) {
        let color = if e.labels.len() == 1 { EDGE_COLORS[e.labels[0] % EDGE_COLORS.len()] } else { "gray" };
        writeln!(s, "  v{} {arrow} v{} [color={color}, label=\"{}\"];", e.from, e.to, edge_label(g, &e.labels)).unwrap();
    }
    s.push_str("}\n");
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn to_graphml(g: &QuotientGraph) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    s.push_str("  <key id=\"color\" for=\"node\" attr.name=\"color\" attr.type=\"int\"/>\n");
    s.push_str("  <key id=\"entropy\" for=\"node\" attr.name=\"entropy\" attr.type=\"string\"/>\n");
    s.push_str("  <key id=\"size\" for=\"node\" attr.name=\"class_size\" attr.type=\"int\"/>\n");
    s.push_str("  <key id=\"gen\" for=\"edge\" attr.name=\"generators\" attr.type=\"string\"/>\n");
    let dir = if g.succ.is_empty() { "undirected" } else { "directed" };
    writeln!(s, "  <graph id=\"{}\" edgedefault=\"{dir}\">", xml_escape(&file_stem(g))).unwrap();
    for (i, v) in g.vertices.iter().enumerate() {
        write!(s, "    <node id=\"v{i}\"><data key=\"size\">{}</data>", v.class_size).unwrap();
        if let Some(c) = v.color {
            write!(s, "<data key=\"color\">{c}</data><data key=\"entropy\">{}</data>", xml_escape(&g.palette[c].to_string()))
                .unwrap();
        }
        s.push_str("</node>\n");
    }
    for e in &g.edges {
        writeln!(
            s,
            "    <edge source=\"v{}\" target=\"v{}\"><data key=\"gen\">{}</data></edge>",
            e.from,
            e.to,
            edge_label(g, &e.labels)
        )
        .unwrap();
    }
    s.push_str("  </graph>\n</graphml>\n");
    s
}

pub fn to_json(g: &QuotientGraph) -> Result<String, AtlasError> {
    Ok(serde_json::to_string_pretty(g)?)
}

/// Writes `.dot`, `.graphml` and `.json` files into `dir`; returns their paths.
pub fn write_all(g: &QuotientGraph, dir: &Path) -> Result<Vec<PathBuf>, AtlasError> {
    std::fs::create_dir_all(dir)?;
    let stem = file_stem(g);
    let mut out = Vec::new();
    for (ext, body) in [("dot", to_dot(g)), ("graphml", to_graphml(g)), ("json", to_json(g)?)] {
        let p = dir.join(format!("{stem}.{ext}"));
        std::fs::write(&p, body)?;
        out.push(p);
    }
    Ok(out)
}
