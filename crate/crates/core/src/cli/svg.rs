//! Minimal SVG scenes: critical segments colored by depth, tiles colored by
//! period, labelled points.

use std::fmt::Write as _;

const DEPTH_PALETTE: [&str; 8] = ["#222222", "#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];
const PERIOD_PALETTE: [&str; 6] = ["#fdd49e", "#c6dbef", "#c7e9c0", "#fcbba1", "#dadaeb", "#d9d9d9"];

#[derive(Clone, Debug, Default)]
pub struct Scene {
    /// `x0, y0, x1, y1` in plane coordinates.
    pub viewport: [f64; 4],
    pub segments: Vec<((f64, f64), (f64, f64), usize)>,
    pub polygons: Vec<(Vec<(f64, f64)>, u64)>,
    pub points: Vec<((f64, f64), String)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

impl Scene {
    pub fn new(viewport: [f64; 4]) -> Scene {
        Scene { viewport, ..Scene::default() }
    }

    /// Renders at 800 px along the longer side; `y` points up.
    pub fn render(&self) -> String {
        let [x0, y0, x1, y1] = self.viewport;
        let (w, h) = (x1 - x0, y1 - y0);
        let scale = 800.0 / w.max(h);
        let (pw, ph) = (w * scale, h * scale);
        let tx = |x: f64| (x - x0) * scale;
        let ty = |y: f64| (y1 - y) * scale;
        let stroke = 1.0;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{pw:.1}" height="{ph:.1}" viewBox="0 0 {pw:.3} {ph:.3}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let mut periods: Vec<u64> = self.polygons.iter().map(|p| p.1).collect();
        periods.sort_unstable();
        periods.dedup();
        for (pts, period) in &self.polygons {
            let class = periods.binary_search(period).unwrap_or(0) % PERIOD_PALETTE.len();
            let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.3},{:.3}", tx(x), ty(y))).collect();
            let _ = writeln!(
                s,
                r#"<polygon points="{}" fill="{}" stroke="black" stroke-width="{stroke}"><title>period {period}</title></polygon>"#,
                path.join(" "),
                PERIOD_PALETTE[class]
            );
        }
        for &((ax, ay), (bx, by), depth) in &self.segments {
            let _ = writeln!(
                s,
                r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{}" stroke-width="{stroke}"/>"#,
                tx(ax),
                ty(ay),
                tx(bx),
                ty(by),
                DEPTH_PALETTE[depth % DEPTH_PALETTE.len()]
            );
        }
        for ((x, y), label) in &self.points {
            let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="magenta"/>"#, tx(*x), ty(*y));
            if !label.is_empty() {
                let _ = writeln!(
                    s,
                    r#"<text x="{:.3}" y="{:.3}" font-size="12" font-family="sans-serif">{}</text>"#,
                    tx(*x) + 4.0,
                    ty(*y) - 4.0,
                    escape(label)
                );
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_elements() {
        let mut sc = Scene::new([-1.0, -1.0, 1.0, 1.0]);
        sc.segments.push(((-1.0, 0.0), (1.0, 0.0), 0));
        sc.polygons.push((vec![(0.0, 0.0), (0.5, 0.0), (0.0, 0.5)], 7));
        sc.points.push(((0.1, 0.1), "P<1>".into()));
        let out = sc.render();
        assert!(out.starts_with("<?xml"));
        assert!(out.contains("<line x1=\"0.000\" y1=\"400.000\" x2=\"800.000\" y2=\"400.000\""));
        assert!(out.contains("P&lt;1&gt;"));
        assert!(out.trim_end().ends_with("</svg>"));
    }
}
