//! Radial SVG picture of a Floyd-metric ball.
//!
//! Each vertex sits at Euclidean radius proportional to its Floyd distance
//! from the base vertex. Angles are cosmetic: every child takes an equal share
//! of its parent's wedge. The boundary circle is drawn at radius `S(0)`.

use std::f64::consts::TAU;
use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::error::FloydError;
use crate::floyd::{tail_sum, Enclosure, FloydMetric, MetricSpec};
use crate::tree::{EdgeRef, VertexAddress};
use crate::Rational;

pub const CANVAS: f64 = 800.0;
const MARGIN: f64 = 40.0;

/// Angular wedge `[start, start + width)` in turns.
fn wedge(tree: crate::TreeConfig, v: &VertexAddress) -> (f64, f64) {
    v.letters()
        .iter()
        .enumerate()
        .fold((0.0, 1.0), |(start, width), (i, &c)| {
            let w = width / f64::from(tree.arity_at(i));
            (start + w * f64::from(c), w)
        })
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().expect("finite rational")
}

/// Renders all vertices of depth at most `depth` and the edges between them.
/// The output depends only on the inputs, byte for byte.
pub fn ball_svg(spec: &MetricSpec, depth: usize, tol: &Rational) -> Result<String, FloydError> {
    let total = tail_sum(&spec.h, 0, tol)?;
    let metric = FloydMetric::new(spec.clone(), tol.clone())?;
    let center = CANVAS / 2.0;
    let scale = (center - MARGIN) / to_f64(total.hi());
    let vertices = spec.tree.vertices_up_to(depth);
    let position = |v: &VertexAddress| {
        let (start, width) = wedge(spec.tree, v);
        let angle = TAU * (start + width / 2.0);
        let r = scale * to_f64(&metric.radial(v));
        (center + r * angle.sin(), center - r * angle.cos())
    };

    let mut out = String::new();
    let size = CANVAS as u32;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    let label = match &total {
        Enclosure::Exact(x) => x.to_string(),
        Enclosure::Interval { lo, hi } => format!("[{lo}, {hi}]"),
    };
    writeln!(
        out,
        r##"<circle class="boundary" cx="{center:.3}" cy="{center:.3}" r="{:.3}" fill="none" stroke="#999999" data-radius="{label}"/>"##,
        center - MARGIN
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}" font-family="monospace" font-size="14">boundary radius {label}</text>"#,
        MARGIN / 2.0,
        MARGIN / 2.0
    )
    .unwrap();
    for v in vertices.iter().filter(|v| !v.is_root()) {
        let e = EdgeRef::new(v.clone()).expect("non-root vertex");
        let ((x1, y1), (x2, y2)) = (position(&e.parent()), position(v));
        writeln!(
            out,
            r##"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#333333" stroke-width="1"/>"##
        )
        .unwrap();
    }
    for v in &vertices {
        let (x, y) = position(v);
        writeln!(
            out,
            r##"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="3" fill="#1f4e79" data-address="{v}" data-radius="{}"/>"##,
            metric.radial(v)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
