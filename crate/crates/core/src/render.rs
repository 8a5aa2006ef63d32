//! Static SVG output. Vertex `v` sits at `x = 40 * (position + 1)`,
//! `y = 60 * level`; edges are straight lines and every crossing gets a dot
//! at the intersection point.

use std::fmt::Write as _;

use crate::drawing::{crossing_pairs_at, Drawing, DrawingError};
use crate::graph::{ProperLevelGraph, VertexIx};

const DX: f64 = 40.0;
const DY: f64 = 60.0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    pub labels: bool,
    pub title: Option<String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            labels: true,
            title: None,
        }
    }
}

/// Dummy vertices are the ones in the graph's dummy map, or, for graphs read
/// back from a file, ids of the form `<lower>__<upper>__<k>` whose two named
/// endpoints exist.
pub fn is_dummy(graph: &ProperLevelGraph, v: VertexIx) -> bool {
    if graph.is_dummy(v) {
        return true;
    }
    let parts: Vec<&str> = graph.id(v).split("__").collect();
    matches!(parts.as_slice(), [a, b, k]
        if k.parse::<u32>().is_ok() && graph.lookup(a).is_some() && graph.lookup(b).is_some())
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render_svg(
    graph: &ProperLevelGraph,
    drawing: &Drawing,
    options: &RenderOptions,
) -> Result<String, DrawingError> {
    let pos = drawing.positions(graph)?;
    let xy = |v: VertexIx| (DX * (pos[v] + 1) as f64, DY * graph.level(v) as f64);
    let max_width = graph
        .level_ranges()
        .map(|(_, r)| r.len())
        .max()
        .unwrap_or(0);
    let max_level = graph.levels().last().unwrap_or(0);
    let (w, h) = (DX * (max_width + 1) as f64, DY * (max_level + 1) as f64);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    if let Some(title) = &options.title {
        let _ = writeln!(out, "<title>{}</title>", escape(title));
    }
    let _ = writeln!(
        out,
        r#"<g class="edges" stroke="black" stroke-width="1.5">"#
    );
    for &(a, b) in graph.edges() {
        let ((x1, y1), (x2, y2)) = (xy(a), xy(b));
        let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g class="crossings" fill="red">"#);
    let edges = graph.edges();
    for (i, j) in crossing_pairs_at(graph, &pos) {
        let ((a, b), (c, d)) = (edges[i], edges[j]);
        let (xa, y) = xy(a);
        let (xb, _) = xy(b);
        let (xc, _) = xy(c);
        let (xd, _) = xy(d);
        let t = (xc - xa) / ((xb - xa) - (xd - xc));
        let _ = writeln!(
            out,
            r#"<circle class="crossing" cx="{:.2}" cy="{:.2}" r="4"/>"#,
            xa + t * (xb - xa),
            y + t * DY
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g class="vertices" fill="white" stroke="black">"#);
    for v in 0..graph.vertex_count() {
        let (x, y) = xy(v);
        if is_dummy(graph, v) {
            let _ = writeln!(out, r#"<circle class="dummy" cx="{x}" cy="{y}" r="3"/>"#);
        } else {
            let _ = writeln!(out, r#"<circle class="vertex" cx="{x}" cy="{y}" r="8"/>"#);
        }
    }
    let _ = writeln!(out, "</g>");
    if options.labels {
        let _ = writeln!(
            out,
            r#"<g class="labels" font-family="sans-serif" font-size="9" text-anchor="middle">"#
        );
        for v in (0..graph.vertex_count()).filter(|&v| !is_dummy(graph, v)) {
            let (x, y) = xy(v);
            let _ = writeln!(
                out,
                r#"<text x="{x}" y="{}">{}</text>"#,
                y + 3.0,
                escape(graph.id(v))
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
