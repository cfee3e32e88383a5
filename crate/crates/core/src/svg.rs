//! Arc-diagram rendering of a linear layout as a standalone SVG document.

use std::fmt::Write;

use crate::graph::{Edge, Graph};
use crate::layout::{span, LinearLayout};

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

const SPACING: f64 = 48.0;
const MARGIN: f64 = 32.0;

/// Stroke color of queue `q` (1-based).
pub fn queue_color(q: usize) -> &'static str {
    PALETTE[(q.max(1) - 1) % PALETTE.len()]
}

/// Vertices on a horizontal line in layout order, edges as upper semicircles
/// colored by queue. Edges in `highlight` are drawn thicker.
pub fn render(g: &Graph, layout: &LinearLayout, highlight: &[Edge]) -> String {
    let n = layout.order().len();
    let pos = layout.positions(g.n());
    let widest = layout
        .queues()
        .keys()
        .map(|&e| {
            let (a, b) = span(&pos, e);
            b - a
        })
        .max()
        .unwrap_or(0);
    let arc_room = widest as f64 * SPACING / 2.0;
    let width = MARGIN * 2.0 + SPACING * n.saturating_sub(1) as f64;
    let base = MARGIN + arc_room;
    let height = base + MARGIN + 16.0;
    let x = |p: usize| MARGIN + SPACING * p as f64;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r##"<line x1="{:.1}" y1="{base:.1}" x2="{:.1}" y2="{base:.1}" stroke="#bbb"/>"##, x(0), x(n.saturating_sub(1)));

    let mut arcs: Vec<(usize, usize, usize, Edge)> =
        layout.queues().iter().map(|(&e, &q)| {
            let (a, b) = span(&pos, e);
            (q, a, b, e)
        }).collect();
    arcs.sort_unstable();
    for (q, a, b, e) in arcs {
        let r = (x(b) - x(a)) / 2.0;
        let w = if highlight.contains(&e) { 3.5 } else { 1.5 };
        let _ = writeln!(
            out,
            r#"<path d="M {:.1} {base:.1} A {r:.1} {r:.1} 0 0 1 {:.1} {base:.1}" fill="none" stroke="{}" stroke-width="{w}" data-queue="{q}"><title>{} {} (queue {q})</title></path>"#,
            x(a),
            x(b),
            queue_color(q),
            escape(g.label(e.0)),
            escape(g.label(e.1)),
        );
    }
    for (p, &v) in layout.order().iter().enumerate() {
        let _ = writeln!(out, r##"<circle cx="{:.1}" cy="{base:.1}" r="5" fill="#222"/>"##, x(p));
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            x(p),
            base + 20.0,
            escape(g.label(v))
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::complete;
    use crate::layout::min_queues_for_order;

    #[test]
    fn deterministic_and_colored_per_queue() {
        let g = complete(4);
        let l = min_queues_for_order(&g, &[0, 1, 2, 3]);
        let a = render(&g, &l, &[]);
        assert_eq!(a, render(&g, &l, &[]));
        assert_eq!(a.matches("<path").count(), 6);
        assert_eq!(a.matches("<circle").count(), 4);
        assert!(a.contains(queue_color(2)));
        assert!(a.contains(r#"data-queue="2""#));
    }

    #[test]
    fn labels_are_escaped() {
        let g = crate::graph::parse_graph("<a> b&c").unwrap();
        let l = min_queues_for_order(&g, &[0, 1]);
        let s = render(&g, &l, &[]);
        assert!(s.contains("&lt;a&gt;") && s.contains("b&amp;c"));
    }
}
