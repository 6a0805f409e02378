//! Triangle geometry of a qubit and the triadas of Malevich's squares.
//!
//! A qubit triple `(p1, p2, p3)` maps to a triangle with sides
//!
//! ```text
//! L1^2 = 2 + 2 p2^2 - 4 p2 - 2 p3 + 2 p3^2 + 2 p2 p3
//! L2^2 = 2 + 2 p3^2 - 4 p3 - 2 p1 + 2 p1^2 + 2 p3 p1
//! L3^2 = 2 + 2 p1^2 - 4 p1 - 2 p2 + 2 p2^2 + 2 p1 p2
//! ```
//!
//! and the three squares on those sides form a triada. The area sum `S` lies
//! in `[3/2, 6]` on the unit cube and below `9/2` inside the quantum ball.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qubit::QubitProbabilities;
use crate::qutrit::QutritProbabilities;

/// Radicands down to this negative value are treated as rounding noise.
pub const RADICAND_TOL: f64 = 1e-12;

fn side_squared(a: f64, b: f64) -> f64 {
    2.0 + 2.0 * a * a - 4.0 * a - 2.0 * b + 2.0 * b * b + 2.0 * a * b
}

/// Squared sides `(L1^2, L2^2, L3^2)`.
pub fn squared_sides(p: &QubitProbabilities) -> [f64; 3] {
    let (p1, p2, p3) = (p.p1(), p.p2(), p.p3());
    [
        side_squared(p2, p3),
        side_squared(p3, p1),
        side_squared(p1, p2),
    ]
}

pub fn triangle_sides(p: &QubitProbabilities) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (side, radicand) in out.iter_mut().zip(squared_sides(p)) {
        if radicand < -RADICAND_TOL {
            return Err(Error::Internal(format!(
                "negative side radicand {radicand:e} for {p:?}"
            )));
        }
        *side = radicand.max(0.0).sqrt();
    }
    Ok(out)
}

/// Strict inequalities `L_n + L_{n-1} > L_{n+1}` for all cyclic `n`.
pub fn triangle_inequality_check(sides: [f64; 3]) -> bool {
    let [a, b, c] = sides;
    a + b > c && b + c > a && c + a > b
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleArea {
    Area(f64),
    /// The sides violate the strict triangle inequality.
    Degenerate,
}

impl TriangleArea {
    pub fn value(&self) -> Option<f64> {
        match self {
            TriangleArea::Area(a) => Some(*a),
            TriangleArea::Degenerate => None,
        }
    }
}

/// `(1/4) sqrt((L1+L2+L3)(L1+L2-L3)(L2+L3-L1)(L3+L1-L2))`.
pub fn triangle_area(sides: [f64; 3]) -> TriangleArea {
    if !triangle_inequality_check(sides) {
        return TriangleArea::Degenerate;
    }
    let [a, b, c] = sides;
    let product = (a + b + c) * (a + b - c) * (b + c - a) * (c + a - b);
    TriangleArea::Area(0.25 * product.sqrt())
}

/// Sum of the three square areas written directly in the probabilities.
pub fn malevich_area_sum(p: &QubitProbabilities) -> f64 {
    let (p1, p2, p3) = (p.p1(), p.p2(), p.p3());
    2.0 * (3.0 * (1.0 - p1 - p2 - p3)
        + 2.0 * (p1 * p1 + p2 * p2 + p3 * p3)
        + p1 * p2
        + p2 * p3
        + p3 * p1)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TriadaGeometry {
    pub probabilities: QubitProbabilities,
    pub sides: [f64; 3],
    pub square_areas: [f64; 3],
    pub triangle_area: TriangleArea,
    pub area_sum: f64,
}

impl TriadaGeometry {
    pub fn new(p: &QubitProbabilities) -> Result<Self> {
        let sides = triangle_sides(p)?;
        Ok(Self {
            probabilities: *p,
            sides,
            square_areas: sides.map(|l| l * l),
            triangle_area: triangle_area(sides),
            area_sum: malevich_area_sum(p),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QutritTriadas {
    pub triadas: [TriadaGeometry; 3],
}

pub fn qutrit_triadas(q: &QutritProbabilities) -> Result<QutritTriadas> {
    Ok(QutritTriadas {
        triadas: [
            TriadaGeometry::new(&q.qubit(1))?,
            TriadaGeometry::new(&q.qubit(2))?,
            TriadaGeometry::new(&q.qubit(3))?,
        ],
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// SVG user units per unit side length.
    pub scale: f64,
    pub margin: f64,
    pub title: Option<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            scale: 100.0,
            margin: 20.0,
            title: None,
        }
    }
}

const FILLS: [&str; 3] = ["#000000", "#c8102e", "#ffffff"];
const LABEL_HEIGHT: f64 = 16.0;
const GAP: f64 = 12.0;

/// Side labels are written as `L<n> = <value>` with six decimals.
pub fn format_length(value: f64) -> String {
    format!("{value:.6}")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders one row per triada: three squares (black, red, white) with side
/// lengths `scale * L_n`, each labelled with its length, followed by `S`.
pub fn render_triadas_svg(t: &QutritTriadas, options: &SvgOptions) -> String {
    render_rows(&t.triadas, options)
}

pub fn render_triada_svg(t: &TriadaGeometry, options: &SvgOptions) -> String {
    render_rows(std::slice::from_ref(t), options)
}

fn render_rows(rows: &[TriadaGeometry], options: &SvgOptions) -> String {
    let scale = options.scale;
    let margin = options.margin;
    let title_height = if options.title.is_some() {
        2.0 * LABEL_HEIGHT
    } else {
        0.0
    };

    let row_widths: Vec<f64> = rows
        .iter()
        .map(|t| t.sides.iter().map(|l| l * scale).sum::<f64>() + 2.0 * GAP + 220.0)
        .collect();
    let row_heights: Vec<f64> = rows
        .iter()
        .map(|t| t.sides.iter().fold(0.0_f64, |m, l| m.max(l * scale)) + 2.0 * LABEL_HEIGHT + GAP)
        .collect();
    let width = row_widths.iter().fold(0.0_f64, |m, w| m.max(*w)) + 2.0 * margin;
    let height = row_heights.iter().sum::<f64>() + 2.0 * margin + title_height;

    let mut svg = String::new();
    let _ = writeln!(svg, r##"<?xml version="1.0" encoding="UTF-8"?>"##);
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}" data-scale="{scale}">"##
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{width:.3}" height="{height:.3}" fill="#f4efe4"/>"##
    );
    let mut y = margin;
    if let Some(title) = &options.title {
        let _ = writeln!(
            svg,
            r##"<text x="{margin:.3}" y="{:.3}" font-family="sans-serif" font-size="14">{}</text>"##,
            y + LABEL_HEIGHT,
            escape(title)
        );
        y += title_height;
    }

    for (index, (triada, row_height)) in rows.iter().zip(&row_heights).enumerate() {
        let k = index + 1;
        let tallest = row_height - 2.0 * LABEL_HEIGHT - GAP;
        let _ = writeln!(svg, r##"<g class="triada" data-qubit="{k}">"##);
        let mut x = margin;
        for (n, side) in triada.sides.iter().enumerate() {
            let size = side * scale;
            let top = y + tallest - size;
            let _ = writeln!(
                svg,
                r##"<rect class="square" x="{x:.3}" y="{top:.3}" width="{size:.3}" height="{size:.3}" fill="{}" stroke="#000000" stroke-width="1"/>"##,
                FILLS[n]
            );
            let _ = writeln!(
                svg,
                r##"<text class="side-label" x="{x:.3}" y="{:.3}" font-family="monospace" font-size="11">L{} = {}</text>"##,
                y + tallest + LABEL_HEIGHT,
                n + 1,
                format_length(*side)
            );
            x += size + GAP;
        }
        let area = match triada.triangle_area {
            TriangleArea::Area(a) => format_length(a),
            TriangleArea::Degenerate => "degenerate".to_string(),
        };
        let _ = writeln!(
            svg,
            r##"<text class="sum-label" x="{x:.3}" y="{:.3}" font-family="monospace" font-size="11">qubit {k}: S = {}, triangle area = {area}</text>"##,
            y + tallest + LABEL_HEIGHT,
            format_length(triada.area_sum)
        );
        let _ = writeln!(svg, "</g>");
        y += row_height;
    }
    svg.push_str("</svg>\n");
    svg
}
