//! Polygon data and SVG drawings of the momentum cells of a quartic `p_D`.
//!
//! Cells are traced in the `y` coordinates, where each one is a rectangle
//! `I_1 × I_2`, and pushed through `σ`. Infinite band ends are cut at a
//! viewport spanning the roots plus a 20% margin on each side.

use std::fmt::Write as _;

use bochner::classification::{sigma, Band, Face, MomentumCell};

use crate::failure::Failure;

pub const CSV_VERSION: &str = "# bochner-cells v1";
const SAMPLES_PER_EDGE: usize = 16;
const MARGIN: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeStyle {
    /// On a face `l_α = 0` that belongs to the cell.
    Face,
    /// On the line of a multiple root: the cell approaches it but the face is missing.
    Open,
    /// Cut by the viewport.
    Clip,
}

impl EdgeStyle {
    fn name(self) -> &'static str {
        match self {
            EdgeStyle::Face => "face",
            EdgeStyle::Open => "open",
            EdgeStyle::Clip => "clip",
        }
    }
}

pub struct Edge {
    pub style: EdgeStyle,
    pub points: Vec<[f64; 2]>,
}

pub struct CellOutline {
    pub case: String,
    pub bounded: bool,
    pub edges: Vec<Edge>,
}

pub struct CellPlot {
    pub faces: Vec<Face>,
    pub cells: Vec<CellOutline>,
}

fn y_viewport(roots: &[f64]) -> (f64, f64) {
    let lo = roots.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = roots.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = (hi - lo).max(1.0);
    (lo - MARGIN * span, hi + MARGIN * span)
}

fn end_style(finite: bool, closed: bool) -> EdgeStyle {
    match (finite, closed) {
        (false, _) => EdgeStyle::Clip,
        (true, true) => EdgeStyle::Face,
        (true, false) => EdgeStyle::Open,
    }
}

fn clipped(b: &Band, view: (f64, f64)) -> (f64, f64) {
    (b.lo.max(view.0), b.hi.min(view.1))
}

fn outline(cell: &MomentumCell, view: (f64, f64)) -> CellOutline {
    let (b1, b2) = (&cell.bands[0], &cell.bands[1]);
    let (a1, c1) = clipped(b1, view);
    let (a2, c2) = clipped(b2, view);
    // counter-clockwise around the y-rectangle; each side is (start, end, style)
    let sides = [
        (
            [a1, a2],
            [c1, a2],
            end_style(b2.lo.is_finite(), b2.lo_closed),
        ),
        (
            [c1, a2],
            [c1, c2],
            end_style(b1.hi.is_finite(), b1.hi_closed),
        ),
        (
            [c1, c2],
            [a1, c2],
            end_style(b2.hi.is_finite(), b2.hi_closed),
        ),
        (
            [a1, c2],
            [a1, a2],
            end_style(b1.lo.is_finite(), b1.lo_closed),
        ),
    ];
    let edges = sides
        .iter()
        .map(|(p, q, style)| Edge {
            style: *style,
            points: (0..=SAMPLES_PER_EDGE)
                .map(|i| {
                    let s = i as f64 / SAMPLES_PER_EDGE as f64;
                    let u = sigma(&[p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]);
                    [u[0], u[1]]
                })
                .collect(),
        })
        .collect();
    CellOutline {
        case: cell.case.to_string(),
        bounded: cell.is_bounded(),
        edges,
    }
}

pub fn cell_plot(cells: &[MomentumCell]) -> Result<CellPlot, Failure> {
    let first = cells
        .first()
        .ok_or_else(|| Failure::usage("p_D has no momentum cells"))?;
    if first.m != 2 {
        return Err(Failure::usage(format!(
            "cell plots need m = 2, this p_D has m = {}",
            first.m
        )));
    }
    let view = y_viewport(&first.roots);
    Ok(CellPlot {
        faces: first.faces.clone(),
        cells: cells.iter().map(|c| outline(c, view)).collect(),
    })
}

impl CellPlot {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CSV_VERSION);
        out.push('\n');
        out.push_str("kind,cell,case,seq,u1,u2,constant,coeff1,coeff2,style\n");
        for (i, f) in self.faces.iter().enumerate() {
            writeln!(
                out,
                "face,,,{i},,,{:.17e},{:.17e},{:.17e},",
                f.constant, f.coeffs[0], f.coeffs[1]
            )
            .unwrap();
        }
        for (c, cell) in self.cells.iter().enumerate() {
            let mut seq = 0;
            for e in &cell.edges {
                for p in &e.points {
                    writeln!(
                        out,
                        "boundary,{c},{},{seq},{:.17e},{:.17e},,,,{}",
                        cell.case,
                        p[0],
                        p[1],
                        e.style.name()
                    )
                    .unwrap();
                    seq += 1;
                }
            }
        }
        out
    }

    fn bbox(&self) -> [f64; 4] {
        let mut b = [
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        ];
        for p in self
            .cells
            .iter()
            .flat_map(|c| &c.edges)
            .flat_map(|e| &e.points)
        {
            b[0] = b[0].min(p[0]);
            b[1] = b[1].min(p[1]);
            b[2] = b[2].max(p[0]);
            b[3] = b[3].max(p[1]);
        }
        let pad_x = 0.05 * (b[2] - b[0]).max(1e-9);
        let pad_y = 0.05 * (b[3] - b[1]).max(1e-9);
        [b[0] - pad_x, b[1] - pad_y, b[2] + pad_x, b[3] + pad_y]
    }

    pub fn to_svg(&self) -> String {
        const W: f64 = 640.0;
        const H: f64 = 640.0;
        const PALETTE: [&str; 4] = ["#4e79a7", "#f28e2b", "#59a14f", "#b07aa1"];
        let b = self.bbox();
        let px = |u: &[f64; 2]| {
            (
                (u[0] - b[0]) / (b[2] - b[0]) * W,
                H - (u[1] - b[1]) / (b[3] - b[1]) * H,
            )
        };
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        )
        .unwrap();
        writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();

        // full face lines, faint
        for f in &self.faces {
            if let Some((p, q)) = clip_line(f, &b) {
                let (p, q) = (px(&p), px(&q));
                writeln!(
                    out,
                    r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#bbbbbb" stroke-width="0.75"/>"##,
                    p.0, p.1, q.0, q.1
                )
                .unwrap();
            }
        }
        // the discriminant parabola u2 = u1²/4, where σ folds
        let para: Vec<String> = (0..=200)
            .map(|i| b[0] + (b[2] - b[0]) * i as f64 / 200.0)
            .map(|x| [x, x * x / 4.0])
            .filter(|p| p[1] >= b[1] && p[1] <= b[3])
            .map(|p| {
                let (x, y) = px(&p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        if para.len() > 1 {
            writeln!(
                out,
                r##"<polyline points="{}" fill="none" stroke="#999999" stroke-width="0.75" stroke-dasharray="1,3"/>"##,
                para.join(" ")
            )
            .unwrap();
        }

        for (i, cell) in self.cells.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let ring: Vec<String> = cell
                .edges
                .iter()
                .flat_map(|e| &e.points)
                .map(|p| {
                    let (x, y) = px(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            writeln!(
                out,
                r#"<polygon points="{}" fill="{color}" fill-opacity="0.25" stroke="none"/>"#,
                ring.join(" ")
            )
            .unwrap();
            for e in &cell.edges {
                let pts: Vec<String> = e
                    .points
                    .iter()
                    .map(|p| {
                        let (x, y) = px(p);
                        format!("{x:.3},{y:.3}")
                    })
                    .collect();
                let dash = match e.style {
                    EdgeStyle::Face => "",
                    EdgeStyle::Open => r#" stroke-dasharray="2,2""#,
                    EdgeStyle::Clip => r#" stroke-dasharray="6,4""#,
                };
                writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>"#,
                    pts.join(" ")
                )
                .unwrap();
            }
            let all: Vec<&[f64; 2]> = cell.edges.iter().flat_map(|e| &e.points).collect();
            let cx = all.iter().map(|p| p[0]).sum::<f64>() / all.len() as f64;
            let cy = all.iter().map(|p| p[1]).sum::<f64>() / all.len() as f64;
            let (x, y) = px(&[cx, cy]);
            let tag = if cell.bounded { " (bounded)" } else { "" };
            writeln!(
                out,
                r#"<text x="{x:.3}" y="{y:.3}" font-family="sans-serif" font-size="14" text-anchor="middle">{}{tag}</text>"#,
                cell.case
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

/// The part of `l(u) = 0` inside the box `[x0, y0, x1, y1]`.
fn clip_line(f: &Face, b: &[f64; 4]) -> Option<([f64; 2], [f64; 2])> {
    let (c, a, d) = (f.constant, f.coeffs[0], f.coeffs[1]);
    let mut hits: Vec<[f64; 2]> = Vec::new();
    if d.abs() > 1e-300 {
        for x in [b[0], b[2]] {
            let y = -(c + a * x) / d;
            if y >= b[1] && y <= b[3] {
                hits.push([x, y]);
            }
        }
    }
    if a.abs() > 1e-300 {
        for y in [b[1], b[3]] {
            let x = -(c + d * y) / a;
            if x >= b[0] && x <= b[2] {
                hits.push([x, y]);
            }
        }
    }
    hits.sort_by(|p, q| p[0].total_cmp(&q[0]).then(p[1].total_cmp(&q[1])));
    hits.dedup_by(|p, q| (p[0] - q[0]).abs() < 1e-12 && (p[1] - q[1]).abs() < 1e-12);
    match hits.as_slice() {
        [p, .., q] => Some((*p, *q)),
        _ => None,
    }
}
