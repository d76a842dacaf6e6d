use std::fmt::Write as _;

use crate::lattice::IntegralOrthotope;

use super::ModelError;

/// Pixels per unit length.
const UNIT: i64 = 32;
const MARGIN: i64 = 16;
const FILL: &str = "#c9d8ea";
const STROKE: &str = "#1f3b5a";
const SALIENT: &str = "#2a9d3f";
const REENTRANT: &str = "#d1495b";
const OTHER: &str = "#7a5195";

/// Render an orthogon: filled cells, the boundary, and one mark per vertex
/// (`class="salient"` for μ = 1, `"reentrant"` for μ = 3, `"degenerate"`
/// otherwise). The y axis points up.
pub fn render_svg(p: &IntegralOrthotope) -> Result<String, ModelError> {
    if p.dim() != 2 {
        return Err(ModelError::WrongDimension {
            expected: 2,
            found: p.dim(),
        });
    }
    let n = p.scale() as f64;
    let (lo, hi) = p.bounding_box().unwrap_or((vec![0, 0], vec![0, 0]));
    let px = |c: i64, axis: usize| -> f64 {
        let u = UNIT as f64 / n;
        if axis == 0 {
            MARGIN as f64 + (c - lo[0]) as f64 * u
        } else {
            MARGIN as f64 + (hi[1] - c) as f64 * u
        }
    };
    let width = px(hi[0], 0) + MARGIN as f64;
    let height = px(lo[1], 1) + MARGIN as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(out, "<g fill=\"{FILL}\" stroke=\"none\">");
    for (a, b) in p.boxes() {
        let (x0, x1, y0, y1) = (px(a[0], 0), px(b[0], 0), px(b[1], 1), px(a[1], 1));
        let _ = writeln!(
            out,
            "<rect x=\"{x0}\" y=\"{y0}\" width=\"{}\" height=\"{}\"/>",
            x1 - x0,
            y1 - y0
        );
    }
    out.push_str("</g>\n");
    let _ = writeln!(out, "<g stroke=\"{STROKE}\" stroke-width=\"2\">");
    let breaks = p.breakpoints();
    if !p.is_empty() {
        let (nx, ny) = (breaks[0].len() - 1, breaks[1].len() - 1);
        let occ = |i: isize, j: isize| -> bool {
            i >= 0 && j >= 0 && (i as usize) < nx && (j as usize) < ny && p.cell_occupied(&[i as usize, j as usize])
        };
        // Vertical boundary segments, then horizontal ones.
        for i in 0..=nx as isize {
            for j in 0..ny as isize {
                if occ(i - 1, j) != occ(i, j) {
                    let x = px(breaks[0][i as usize], 0);
                    let (y0, y1) = (px(breaks[1][j as usize], 1), px(breaks[1][j as usize + 1], 1));
                    let _ = writeln!(out, "<line x1=\"{x}\" y1=\"{y0}\" x2=\"{x}\" y2=\"{y1}\"/>");
                }
            }
        }
        for j in 0..=ny as isize {
            for i in 0..nx as isize {
                if occ(i, j - 1) != occ(i, j) {
                    let y = px(breaks[1][j as usize], 1);
                    let (x0, x1) = (px(breaks[0][i as usize], 0), px(breaks[0][i as usize + 1], 0));
                    let _ = writeln!(out, "<line x1=\"{x0}\" y1=\"{y}\" x2=\"{x1}\" y2=\"{y}\"/>");
                }
            }
        }
    }
    out.push_str("</g>\n");
    for v in p.vertices() {
        let (class, colour) = match v.cone.mu() {
            1 => ("salient", SALIENT),
            3 => ("reentrant", REENTRANT),
            _ => ("degenerate", OTHER),
        };
        // `point` is doubled; halve at the pixel step.
        let x = MARGIN as f64 + (v.point[0] - 2 * lo[0]) as f64 * UNIT as f64 / (2.0 * n);
        let y = MARGIN as f64 + (2 * hi[1] - v.point[1]) as f64 * UNIT as f64 / (2.0 * n);
        let _ = writeln!(
            out,
            "<circle class=\"{class}\" cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"{colour}\"/>"
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
