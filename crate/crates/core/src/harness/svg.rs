use std::fmt::Write;

use crate::corridor::{jordan_from_pair, CorridorAnalysis};
use crate::forest::GeometricGraph;
use crate::geometry::{Point, Rect, Segment};

/// Frozen layer names, used as SVG group ids.
pub const LAYER_NAMES: [&str; 5] = ["primal", "dual", "contour", "doors", "corridor"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    Primal,
    Dual,
    Contour,
    Doors,
    Corridor,
}

impl Layer {
    pub fn name(self) -> &'static str {
        LAYER_NAMES[self as usize]
    }

    fn style(self) -> &'static str {
        match self {
            Layer::Primal => r#"stroke="black" stroke-width="0.08" fill="none""#,
            Layer::Dual => r#"stroke="gray" stroke-width="0.06" stroke-dasharray="0.1 0.15" fill="none""#,
            Layer::Contour => r#"stroke="red" stroke-width="0.05" fill="none""#,
            Layer::Doors => r#"stroke="orange" stroke-width="0.25" stroke-linecap="round" fill="none""#,
            Layer::Corridor => r#"stroke="gray" stroke-width="0.04" fill="url(#hatch)" fill-opacity="0.6""#,
        }
    }
}

/// Geometry drawn on one layer: segments as lines, polygons as closed
/// paths.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerData {
    pub layer: Layer,
    pub segments: Vec<Segment>,
    pub polygons: Vec<Vec<Point>>,
}

impl LayerData {
    pub fn graph(layer: Layer, g: &GeometricGraph) -> LayerData {
        LayerData { layer, segments: (0..g.edge_count()).map(|e| g.segment(e)).collect(), polygons: Vec::new() }
    }

    pub fn segments(layer: Layer, segments: Vec<Segment>) -> LayerData {
        LayerData { layer, segments, polygons: Vec::new() }
    }

    pub fn polygons(layer: Layer, polygons: Vec<Vec<Point>>) -> LayerData {
        LayerData { layer, segments: Vec::new(), polygons }
    }
}

/// Door segments, plus the section between the two extreme door lines
/// when there are at least two.
pub fn corridor_layers(a: &CorridorAnalysis) -> Vec<LayerData> {
    let mut out = Vec::new();
    if let (Some(&f), Some(&l)) = (a.order.first(), a.order.last()) {
        if f != l {
            if let Ok(j) = jordan_from_pair(&a.lines[f].gamma, &a.lines[l].gamma) {
                out.push(LayerData::polygons(Layer::Corridor, vec![j.vertices().to_vec()]));
            }
        }
    }
    out.push(LayerData::segments(Layer::Doors, a.lines.iter().map(|d| d.door.door_segment.clone()).collect()));
    out
}

/// World rectangle shown and output pixels per unit.
#[derive(Debug, Clone, PartialEq)]
pub struct SvgView {
    pub min: (f64, f64),
    pub max: (f64, f64),
    pub scale: f64,
}

impl SvgView {
    pub fn from_rect(r: &Rect, scale: f64) -> SvgView {
        SvgView { min: (r.min.x.to_f64(), r.min.y.to_f64()), max: (r.max.x.to_f64(), r.max.y.to_f64()), scale }
    }

    /// Bounding box of all layers plus `pad`; the unit square for nothing.
    pub fn fit(layers: &[LayerData], pad: f64, scale: f64) -> SvgView {
        let pts = layers
            .iter()
            .flat_map(|l| l.segments.iter().flat_map(|s| [s.a(), s.b()]).chain(l.polygons.iter().flatten()));
        let mut bb: Option<(f64, f64, f64, f64)> = None;
        for p in pts {
            let (x, y) = (p.x.to_f64(), p.y.to_f64());
            bb = Some(match bb {
                None => (x, y, x, y),
                Some((a, b, c, d)) => (a.min(x), b.min(y), c.max(x), d.max(y)),
            });
        }
        let (x0, y0, x1, y1) = bb.unwrap_or((0.0, 0.0, 1.0, 1.0));
        SvgView { min: (x0 - pad, y0 - pad), max: (x1 + pad, y1 + pad), scale }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Renders the layers in the given order. World coordinates are kept inside
/// a `y`-flipping group so that up is up.
pub fn render_svg(layers: &[LayerData], view: &SvgView) -> String {
    let (w, h) = ((view.max.0 - view.min.0).max(0.0), (view.max.1 - view.min.1).max(0.0));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(w * view.scale),
        num(h * view.scale),
        num(view.min.0),
        num(-view.max.1),
        num(w),
        num(h)
    );
    out.push_str(concat!(
        r#"<defs><pattern id="hatch" width="0.5" height="0.5" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">"#,
        r#"<path d="M0 0 L0 0.5" stroke="gray" stroke-width="0.08"/></pattern></defs>"#,
        "\n"
    ));
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    for l in layers {
        let _ = writeln!(out, r#"<g id="{}" {}>"#, l.layer.name(), l.layer.style());
        for p in &l.polygons {
            if p.is_empty() {
                continue;
            }
            let d: Vec<String> = p
                .iter()
                .enumerate()
                .map(|(i, q)| format!("{}{} {}", if i == 0 { "M" } else { "L" }, num(q.x.to_f64()), num(q.y.to_f64())))
                .collect();
            let _ = writeln!(out, r#"<path d="{} Z"/>"#, d.join(" "));
        }
        for s in &l.segments {
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(s.a().x.to_f64()),
                num(s.a().y.to_f64()),
                num(s.b().x.to_f64()),
                num(s.b().y.to_f64())
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n</svg>\n");
    out
}
