//! Hand-written SVG heatmap for correlation matrices.
//!
//! No plotting dependencies: the chart is a rect grid with text labels,
//! colored white-to-blue by |correlation|. Output is deterministic down to
//! the byte for identical matrices.

use flightdiff::CorrelationMatrix;
use std::fmt::Write;

const CELL_W: usize = 110;
const CELL_H: usize = 44;
const MARGIN_LEFT: usize = 56;
const MARGIN_TOP: usize = 64;
const PAD: usize = 12;

/// Linear white → dark-blue ramp over [0, 1].
fn cell_color(value: f64) -> String {
    let v = value.clamp(0.0, 1.0);
    let ch = |from: f64, to: f64| (from + (to - from) * v).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        ch(255.0, 8.0),
        ch(255.0, 48.0),
        ch(255.0, 107.0)
    )
}

/// Renders `matrix` as a standalone SVG document.
pub fn heatmap(matrix: &CorrelationMatrix, title: &str, version: &str) -> String {
    let rows = matrix.row_labels.len();
    let cols = matrix.col_labels.len();
    let width = MARGIN_LEFT + cols * CELL_W + PAD;
    let height = MARGIN_TOP + rows * CELL_H + PAD;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(out, "<!-- flightdiff {version} -->");
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        out,
        "  <text x=\"{MARGIN_LEFT}\" y=\"22\" font-family=\"monospace\" font-size=\"14\" \
         fill=\"black\">{}</text>",
        escape_xml(title)
    );

    for (j, label) in matrix.col_labels.iter().enumerate() {
        let x = MARGIN_LEFT + j * CELL_W + CELL_W / 2;
        let _ = writeln!(
            out,
            "  <text x=\"{x}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" \
             fill=\"black\" text-anchor=\"middle\">{}</text>",
            MARGIN_TOP - 10,
            escape_xml(label)
        );
    }

    for (i, label) in matrix.row_labels.iter().enumerate() {
        let y = MARGIN_TOP + i * CELL_H + CELL_H / 2 + 4;
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{y}\" font-family=\"monospace\" font-size=\"11\" \
             fill=\"black\" text-anchor=\"end\">{}</text>",
            MARGIN_LEFT - 8,
            escape_xml(label)
        );
        for j in 0..cols {
            let x = MARGIN_LEFT + j * CELL_W;
            let y = MARGIN_TOP + i * CELL_H;
            let (fill, text, text_fill) = match matrix.values[i][j] {
                Some(v) => (
                    cell_color(v),
                    format!("{v:.3}"),
                    if v > 0.6 { "white" } else { "black" },
                ),
                None => ("#dddddd".to_string(), "n/a".to_string(), "black"),
            };
            let _ = writeln!(
                out,
                "  <rect x=\"{x}\" y=\"{y}\" width=\"{CELL_W}\" height=\"{CELL_H}\" \
                 fill=\"{fill}\" stroke=\"#888888\"/>"
            );
            let _ = writeln!(
                out,
                "  <text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" \
                 fill=\"{text_fill}\" text-anchor=\"middle\">{text}</text>",
                x + CELL_W / 2,
                y + CELL_H / 2 + 4
            );
        }
    }

    out.push_str("</svg>\n");
    out
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
