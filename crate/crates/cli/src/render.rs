//! JSON, DOT and SVG renderings. JSON keys come out sorted because values
//! are built as `serde_json::Value` maps.

use std::f64::consts::PI;
use std::fmt::Write;

use orbitcat::endo::{happel_check, QuiverPresentation};
use orbitcat::orbit::Arc;
use orbitcat::rigid::{ArcSet, VertexRole};
use orbitcat::tiling::{Tile, Tiling};
use serde::Serialize;
use serde_json::Value;

fn pair(a: Arc) -> [usize; 2] {
    [a.s() as usize + 1, a.t() as usize + 1]
}

#[derive(Serialize)]
struct ObjectJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct TileJson {
    kind: String,
    arcs: Vec<[usize; 2]>,
    open_boundary: Option<[usize; 2]>,
    isolated: Option<usize>,
}

pub fn object_value(set: &ArcSet) -> Value {
    serde_json::to_value(ObjectJson {
        n: set.n(),
        arcs: set.iter().map(pair).collect(),
    })
    .expect("plain data serializes")
}

/// Inverse of [`object_value`].
pub fn parse_object(v: &Value) -> orbitcat::Result<ArcSet> {
    let bad = || orbitcat::Error::InvalidInput("expected {\"n\": int, \"arcs\": [[s,t],...]}".into());
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(bad)? as usize;
    let arcs = v
        .get("arcs")
        .and_then(Value::as_array)
        .ok_or_else(bad)?
        .iter()
        .map(|p| {
            let st = p.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let s = st[0].as_u64().ok_or_else(bad)? as usize;
            let t = st[1].as_u64().ok_or_else(bad)? as usize;
            Arc::new(n, s, t)
        })
        .collect::<orbitcat::Result<Vec<_>>>()?;
    ArcSet::new(n, arcs)
}

pub fn enumeration_value(n: usize, kind: &str, objects: &[ArcSet]) -> Value {
    serde_json::json!({
        "n": n,
        "kind": kind,
        "count": objects.len(),
        "objects": objects.iter().map(object_value).collect::<Vec<_>>(),
    })
}

fn tile_value(tile: &Tile) -> Value {
    serde_json::to_value(TileJson {
        kind: tile.kind.to_string(),
        arcs: tile.arcs.iter().map(|&a| pair(a)).collect(),
        open_boundary: tile
            .open_boundary
            .map(|(i, k)| [i as usize + 1, k as usize + 1]),
        isolated: tile.isolated.map(|v| v as usize + 1),
    })
    .expect("plain data serializes")
}

pub fn tiling_value(tiling: &Tiling) -> Value {
    serde_json::json!({
        "n": tiling.n(),
        "arcs": tiling.set.iter().map(pair).collect::<Vec<_>>(),
        "tiles": tiling.tiles.iter().map(tile_value).collect::<Vec<_>>(),
        "isolated": tiling.isolated.iter().map(|&v| v as usize + 1).collect::<Vec<_>>(),
    })
}

pub fn tiling_text(tiling: &Tiling) -> String {
    let mut out = String::new();
    for tile in &tiling.tiles {
        let arcs: Vec<String> = tile.arcs.iter().map(Arc::to_string).collect();
        let _ = write!(out, "{} {}", tile.kind, arcs.join(";"));
        if let Some((i, k)) = tile.open_boundary {
            let _ = write!(out, " open={}..{}", i + 1, k + 1);
        }
        if let Some(v) = tile.isolated {
            let _ = write!(out, " isolated={}", v + 1);
        }
        out.push('\n');
    }
    let iso: Vec<String> = tiling.isolated.iter().map(|v| (v + 1).to_string()).collect();
    let _ = writeln!(out, "isolated vertices: {}", if iso.is_empty() { "none".into() } else { iso.join(" ") });
    out
}

fn vertex_label(q: &QuiverPresentation, v: usize) -> String {
    q.labels.get(v).map_or_else(|| v.to_string(), Arc::to_string)
}

pub fn quiver_value(n: usize, q: &QuiverPresentation) -> Value {
    serde_json::json!({
        "n": n,
        "vertices": q.labels.iter().map(|&a| pair(a)).collect::<Vec<_>>(),
        "arrows": q.arrows.iter().map(|a| [a.from, a.to]).collect::<Vec<_>>(),
        "relations": q.relation_paths().iter().map(|&(u, v, w)| [u, v, w]).collect::<Vec<_>>(),
        "iterated_tilted": happel_check(q).holds(),
    })
}

pub fn quiver_dot(q: &QuiverPresentation) -> String {
    let mut out = String::from("digraph endo {\n");
    out.push_str("  /* zero relations:\n");
    for (u, v, w) in q.relation_paths() {
        let _ = writeln!(
            out,
            "     {} -> {} -> {}",
            vertex_label(q, u),
            vertex_label(q, v),
            vertex_label(q, w)
        );
    }
    out.push_str("  */\n  node [shape=box];\n");
    for v in 0..q.vertex_count {
        let _ = writeln!(out, "  v{v} [label=\"{}\"];", vertex_label(q, v));
    }
    for (k, a) in q.arrows.iter().enumerate() {
        let zero: Vec<String> = q
            .relations
            .iter()
            .filter(|&&(first, _)| first == k)
            .map(|&(_, second)| format!("a{second}"))
            .collect();
        let _ = write!(out, "  v{} -> v{} [id=\"a{k}\"", a.from, a.to);
        if !zero.is_empty() {
            let _ = write!(out, ", zero_with=\"{}\", style=dashed", zero.join(" "));
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

/// Schematic polygon picture: vertex 1 at the top, labels clockwise.
pub fn polygon_svg(set: &ArcSet) -> String {
    let n = set.n();
    let (c, r) = (200.0, 150.0);
    let at = |v: u8, radius: f64| {
        let angle = 2.0 * PI * v as f64 / n as f64;
        (c + radius * angle.sin(), c - radius * angle.cos())
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">"
    );
    out.push_str(
        "  <defs><marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" \
         markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">\
         <path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/></marker></defs>\n",
    );
    let p = set.polygon();
    let points: Vec<String> = p
        .vertices()
        .map(|v| {
            let (x, y) = at(v, r);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        "  <polygon points=\"{}\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>",
        points.join(" ")
    );
    for a in set.non_loops() {
        let (x1, y1) = at(a.s(), r);
        let (x2, y2) = at(a.t(), r);
        // stop short of the target marker
        let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt();
        let f = (len - 9.0) / len;
        let _ = writeln!(
            out,
            "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1.5\" marker-end=\"url(#head)\"/>",
            x1 + f * (x2 - x1),
            y1 + f * (y2 - y1)
        );
    }
    for l in set.loops() {
        let (x, y) = at(l.s(), r + 14.0);
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"8\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>"
        );
    }
    for v in p.vertices() {
        let (x, y) = at(v, r);
        let shape = match set.role(v) {
            VertexRole::Source => format!(
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>"
            ),
            VertexRole::Sink => {
                format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"black\"/>")
            }
            VertexRole::Isolated => format!(
                "<path d=\"M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2}\" stroke=\"black\" stroke-width=\"2\"/>",
                x - 5.0,
                y - 5.0,
                x + 5.0,
                y + 5.0,
                x - 5.0,
                y + 5.0,
                x + 5.0,
                y - 5.0
            ),
            VertexRole::Mixed | VertexRole::LoopOnly => {
                format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"#555\"/>")
            }
        };
        let _ = writeln!(out, "  {shape}");
        let (lx, ly) = at(v, r + 34.0);
        let _ = writeln!(
            out,
            "  <text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"14\" text-anchor=\"middle\" dominant-baseline=\"middle\">{}</text>",
            v + 1
        );
    }
    out.push_str("</svg>\n");
    out
}
