//! Side-by-side SVG of a central Delannoy path and its image.
//!
//! Lattice origin is bottom-left; screen y grows downward, so every
//! lattice point goes through [`Panel::screen`].

use std::fmt::Write;

use delannoy_core::{phi, step_labels, DelannoyPath, LatticePoint, Result, Step};

pub const DEFAULT_CELL: u32 = 40;
pub const MIN_CELL: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub cell: u32,
    pub show_grid: bool,
    pub show_diagonal: bool,
    pub label_steps: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            cell: DEFAULT_CELL,
            show_grid: true,
            show_diagonal: true,
            label_steps: false,
        }
    }
}

impl RenderSpec {
    pub fn with_cell(cell: u32) -> std::result::Result<Self, String> {
        if cell < MIN_CELL {
            return Err(format!("cell size must be at least {MIN_CELL}, got {cell}"));
        }
        Ok(RenderSpec {
            cell,
            ..RenderSpec::default()
        })
    }
}

struct Panel {
    left: f64,
    base: f64,
    cell: f64,
    width: u32,
    height: u32,
}

impl Panel {
    fn screen(&self, p: LatticePoint) -> (f64, f64) {
        (
            self.left + p.x as f64 * self.cell,
            self.base - p.y as f64 * self.cell,
        )
    }

    fn grid(&self, svg: &mut String) {
        let _ = writeln!(svg, r##"  <g stroke="#d0d0d0" stroke-width="1">"##);
        for x in 0..=self.width {
            let (a, b) = (
                self.screen(LatticePoint::new(x, 0)),
                self.screen(LatticePoint::new(x, self.height)),
            );
            let _ = writeln!(
                svg,
                r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                a.0, a.1, b.0, b.1
            );
        }
        for y in 0..=self.height {
            let (a, b) = (
                self.screen(LatticePoint::new(0, y)),
                self.screen(LatticePoint::new(self.width, y)),
            );
            let _ = writeln!(
                svg,
                r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                a.0, a.1, b.0, b.1
            );
        }
        svg.push_str("  </g>\n");
    }

    fn diagonal(&self, svg: &mut String) {
        let a = self.screen(LatticePoint::ORIGIN);
        let b = self.screen(LatticePoint::new(self.width, self.height));
        let _ = writeln!(
            svg,
            r##"  <line class="diagonal" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#808080" stroke-width="1.5"/>"##,
            a.0, a.1, b.0, b.1
        );
    }

    fn polyline(&self, svg: &mut String, class: &str, points: &[LatticePoint]) {
        let coords: Vec<String> = points
            .iter()
            .map(|&p| {
                let (x, y) = self.screen(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r##"  <polyline class="{class}" points="{}" fill="none" stroke="#1f4fd8" stroke-width="3"/>"##,
            coords.join(" ")
        );
    }

    fn dots(&self, svg: &mut String, points: &[LatticePoint], r: f64) {
        for &p in points {
            let (x, y) = self.screen(p);
            let _ = writeln!(svg, r#"  <circle cx="{x}" cy="{y}" r="{r}" fill="black"/>"#);
        }
    }

    fn caption(&self, svg: &mut String, text: &str, font: f64) {
        let x = self.left + self.width as f64 * self.cell / 2.0;
        let y = self.base + 1.5 * font + 4.0;
        let _ = writeln!(
            svg,
            r#"  <text x="{x}" y="{y}" font-family="monospace" font-size="{font}" text-anchor="middle">{text}</text>"#
        );
    }
}

/// Renders `path` (left) and its image (right) as one SVG document.
pub fn render_pair(path: &DelannoyPath, spec: &RenderSpec) -> Result<String> {
    let central = path.central_index()?;
    let image = phi(path)?;
    let n = central.n;
    let cell = spec.cell as f64;
    let margin = cell;
    let font = (cell * 0.4).max(8.0);
    let caption_room = 2.0 * font + 8.0;

    let left = Panel {
        left: margin,
        base: margin + n as f64 * cell,
        cell,
        width: n,
        height: n,
    };
    let right = Panel {
        left: left.left + n as f64 * cell + 2.0 * margin,
        base: left.base,
        cell,
        width: n + 1,
        height: n,
    };
    let width = right.left + (n + 1) as f64 * cell + margin;
    let height = left.base + margin + caption_room;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    svg.push_str(r#"  <rect width="100%" height="100%" fill="white"/>"#);
    svg.push('\n');

    for panel in [&left, &right] {
        if spec.show_grid {
            panel.grid(&mut svg);
        }
        if spec.show_diagonal {
            panel.diagonal(&mut svg);
        }
    }

    let vertices = path.vertices();
    left.polyline(&mut svg, "delannoy", &vertices);
    left.dots(&mut svg, &vertices, cell * 0.08 + 1.0);
    right.polyline(&mut svg, "kimberling", image.vertices());
    right.dots(&mut svg, image.vertices(), cell * 0.1 + 1.5);

    if spec.label_steps {
        let labels = step_labels(path, central);
        let (mut a, mut b) = (labels.a_labels.iter(), labels.b_labels.iter());
        for (step, w) in path.steps().iter().zip(vertices.windows(2)) {
            let (label, colour, dx, dy) = match step {
                Step::N => (a.next(), "#c81e1e", -0.25, 0.5),
                Step::E => (b.next(), "#1f4fd8", 0.5, 0.3),
                Step::D => continue,
            };
            let Some(label) = label else { continue };
            let (x0, y0) = left.screen(w[0]);
            let x = x0 + dx * cell;
            let y = y0 - dy * cell + font / 3.0;
            let _ = writeln!(
                svg,
                r#"  <text class="label" x="{x}" y="{y}" font-family="sans-serif" font-size="{font}" fill="{colour}" text-anchor="middle">{label}</text>"#
            );
        }
    }

    let word = if path.is_empty() {
        "(empty)".to_owned()
    } else {
        path.to_string()
    };
    left.caption(&mut svg, &format!("D_{n}: {word}"), font);
    right.caption(
        &mut svg,
        &format!("K_({},{n}): {} interior", n + 1, central.k),
        font,
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
