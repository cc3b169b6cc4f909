//! Static SVG floor plans: ground truth in green, prediction in crimson,
//! per-wall distances from the origin and the height pair as annotations.

use nclayout::geom2d::Vec2;
use nclayout::Layout;

/// Pixels per meter in the emitted SVG.
const SCALE: f64 = 60.0;
const MARGIN: f64 = 40.0;

struct Extent {
    min: Vec2,
    max: Vec2,
}

impl Extent {
    fn of(layouts: &[&Layout]) -> Extent {
        let mut min = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for layout in layouts {
            for v in layout.vertices() {
                min = Vec2::new(min.x.min(v.x), min.y.min(v.y));
                max = Vec2::new(max.x.max(v.x), max.y.max(v.y));
            }
        }
        // Always include the origin: it is the camera mark.
        min = Vec2::new(min.x.min(0.0), min.y.min(0.0));
        max = Vec2::new(max.x.max(0.0), max.y.max(0.0));
        Extent { min, max }
    }
}

/// Maps plan-view meters to SVG pixels; the y-axis flips because SVG grows
/// downward.
struct Mapper {
    extent: Extent,
}

impl Mapper {
    fn point(&self, v: Vec2) -> (f64, f64) {
        (
            MARGIN + (v.x - self.extent.min.x) * SCALE,
            MARGIN + (self.extent.max.y - v.y) * SCALE,
        )
    }

    fn size(&self) -> (f64, f64) {
        (
            2.0 * MARGIN + (self.extent.max.x - self.extent.min.x) * SCALE,
            2.0 * MARGIN + (self.extent.max.y - self.extent.min.y) * SCALE,
        )
    }
}

fn polygon_path(mapper: &Mapper, layout: &Layout) -> String {
    let points: Vec<String> = layout
        .vertices()
        .iter()
        .map(|&v| {
            let (x, y) = mapper.point(v);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    points.join(" ")
}

fn wall_annotations(mapper: &Mapper, layout: &Layout, color: &str) -> String {
    let mut out = String::new();
    for i in 0..layout.wall_count() {
        let (a, b) = layout.wall_segment(i);
        let edge = b - a;
        let len = edge.norm();
        if len <= 0.0 {
            continue;
        }
        // Perpendicular distance from the origin (camera center) to the
        // wall's supporting line.
        let normal = Vec2::new(edge.y, -edge.x) / len;
        let d = normal.dot(&a).abs();
        let mid = 0.5 * (a + b);
        let (x, y) = mapper.point(mid);
        out.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"11\" fill=\"{color}\" \
             text-anchor=\"middle\">d={d:.3}m</text>\n"
        ));
    }
    out
}

/// Renders a floor plan with an optional ground-truth overlay. The
/// `config_note` is embedded as a comment so the artifact records its
/// producing command.
pub fn floor_plan_svg(prediction: &Layout, truth: Option<&Layout>, config_note: &str) -> String {
    let mut layers: Vec<&Layout> = vec![prediction];
    if let Some(t) = truth {
        layers.push(t);
    }
    let mapper = Mapper { extent: Extent::of(&layers) };
    let (w, h) = mapper.size();
    let (ox, oy) = mapper.point(Vec2::new(0.0, 0.0));

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" \
         viewBox=\"0 0 {w:.2} {h:.2}\">\n"
    ));
    svg.push_str(&format!("  <!-- config: {config_note} -->\n"));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if let Some(t) = truth {
        svg.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"green\" stroke-width=\"2\"/>\n",
            polygon_path(&mapper, t)
        ));
    }
    svg.push_str(&format!(
        "  <polygon points=\"{}\" fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" \
         stroke-dasharray=\"6 3\"/>\n",
        polygon_path(&mapper, prediction)
    ));
    // Camera mark at the origin.
    svg.push_str(&format!(
        "  <circle cx=\"{ox:.2}\" cy=\"{oy:.2}\" r=\"3\" fill=\"black\"/>\n"
    ));
    svg.push_str(&wall_annotations(&mapper, prediction, "crimson"));
    svg.push_str(&format!(
        "  <text x=\"{MARGIN}\" y=\"18\" font-size=\"12\" fill=\"crimson\">prediction: \
         h_c={:.3}m h_f={:.3}m</text>\n",
        prediction.h_c(),
        prediction.h_f()
    ));
    if let Some(t) = truth {
        svg.push_str(&format!(
            "  <text x=\"{MARGIN}\" y=\"32\" font-size=\"12\" fill=\"green\">ground truth: \
             h_c={:.3}m h_f={:.3}m</text>\n",
            t.h_c(),
            t.h_f()
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
