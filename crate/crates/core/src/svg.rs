//! SVG rendering of instances with an optional tree or tour on top.

use std::fmt::Write as _;

use crate::geometry::Instance;
use crate::ggmst::GgmstSolution;
use crate::ggtsp::Tour;

/// Pixels per grid unit.
const SCALE: f64 = 60.0;

pub enum Overlay<'a> {
    None,
    Tree(&'a GgmstSolution),
    Tour(&'a Tour),
}

fn fmt_num(v: f64) -> String {
    // two decimals are plenty at this scale and keep output stable
    let s = format!("{:.2}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Grid lines at integer coordinates, shaded non-empty cells, points as
/// circles and solution edges as `<line>` elements. The y axis points up.
pub fn render_svg(inst: &Instance, overlay: Overlay<'_>) -> String {
    let cells = inst.cell_order();
    let i_min = cells.iter().map(|c| c.i).min().unwrap() - 1;
    let i_max = cells.iter().map(|c| c.i).max().unwrap() + 2;
    let j_min = cells.iter().map(|c| c.j).min().unwrap() - 1;
    let j_max = cells.iter().map(|c| c.j).max().unwrap() + 2;
    let width = (i_max - i_min) as f64 * SCALE;
    let height = (j_max - j_min) as f64 * SCALE;
    let px = |x: f64| fmt_num((x - i_min as f64) * SCALE);
    let py = |y: f64| fmt_num((j_max as f64 - y) * SCALE);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = fmt_num(width),
        h = fmt_num(height)
    )
    .unwrap();
    out.push_str("<g class=\"cells\" fill=\"#dde8f5\">\n");
    for c in cells {
        writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{s}" height="{s}"/>"#,
            px(c.i as f64),
            py((c.j + 1) as f64),
            s = fmt_num(SCALE)
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    let mut grid = String::new();
    for i in i_min..=i_max {
        write!(grid, "M{} 0V{}", px(i as f64), fmt_num(height)).unwrap();
    }
    for j in j_min..=j_max {
        write!(grid, "M0 {}H{}", py(j as f64), fmt_num(width)).unwrap();
    }
    writeln!(
        out,
        r##"<path class="grid" d="{grid}" stroke="#9aa5b1" stroke-width="1" fill="none"/>"##
    )
    .unwrap();

    let edges: Vec<(usize, usize)> = match overlay {
        Overlay::None => Vec::new(),
        Overlay::Tree(t) => t.edges.clone(),
        Overlay::Tour(t) => t.edges(),
    };
    if !edges.is_empty() {
        out.push_str("<g class=\"edges\" stroke=\"#c0392b\" stroke-width=\"2\">\n");
        for (p, q) in edges {
            let (a, b) = (inst.point(p), inst.point(q));
            writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                px(a.x),
                py(a.y),
                px(b.x),
                py(b.y)
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    out.push_str("<g class=\"points\" fill=\"#1f2d3d\">\n");
    for p in inst.points() {
        writeln!(out, r#"<circle cx="{}" cy="{}" r="3"/>"#, px(p.x), py(p.y)).unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}
