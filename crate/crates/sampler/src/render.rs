use crate::density::VertexDensities;
use fivevertex::model::{vertex_grid, Configuration, VertexType};
use fivevertex::{Error, LatticeSpec, Result};
use std::fmt::Write;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Ppm,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(Format::Svg),
            "ppm" => Ok(Format::Ppm),
            _ => Err(Error::Domain(format!("unsupported image format {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Style {
    /// Pixels per lattice cell.
    pub cell: u32,
    pub stroke: u32,
    pub color_vertices: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style { cell: 12, stroke: 4, color_vertices: false }
    }
}

const PALETTE: [[u8; 3]; 5] = [
    [255, 255, 255],
    [120, 160, 230],
    [230, 150, 110],
    [130, 200, 130],
    [210, 120, 200],
];
const INK: [u8; 3] = [20, 20, 20];

/// Path of each line in pixel coordinates: up from the bottom edge, along
/// each row it moves in, and out through the top edge.
fn paths(config: &Configuration, spec: &LatticeSpec, cell: u32) -> Vec<Vec<(u32, u32)>> {
    let m = spec.m;
    let cx = |col: u32| col * cell - cell / 2;
    let cy = |row: u32| (m - row) * cell + cell / 2;
    (0..spec.n as usize)
        .map(|i| {
            let mut pts = vec![(cx(config.slices[0][i]), m * cell)];
            for r in 0..m as usize {
                let (c0, c1) = (config.slices[r][i], config.slices[r + 1][i]);
                if c1 != c0 {
                    pts.push((cx(c0), cy(r as u32 + 1)));
                    pts.push((cx(c1), cy(r as u32 + 1)));
                }
            }
            pts.push((cx(config.slices[m as usize][i]), 0));
            pts
        })
        .collect()
}

fn check_style(style: &Style) -> Result<()> {
    if style.cell < 2 || style.stroke == 0 || style.stroke > style.cell {
        return Err(Error::Domain("need cell ≥ 2 and 0 < stroke ≤ cell".into()));
    }
    Ok(())
}

fn svg(config: &Configuration, spec: &LatticeSpec, style: &Style) -> Result<String> {
    let grid = vertex_grid(config, spec)?;
    let (w, h) = (spec.l * style.cell, spec.m * style.cell);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    if style.color_vertices {
        for (r, row) in grid.iter().enumerate() {
            for (c, t) in row.iter().enumerate() {
                if *t == VertexType::Empty {
                    continue;
                }
                let [cr, cg, cb] = PALETTE[t.index()];
                let (x, y) = (c as u32 * style.cell, (spec.m - 1 - r as u32) * style.cell);
                let _ = writeln!(
                    s,
                    r#"<rect x="{x}" y="{y}" width="{0}" height="{0}" fill="rgb({cr},{cg},{cb})"/>"#,
                    style.cell
                );
            }
        }
    }
    for path in paths(config, spec, style.cell) {
        let pts: Vec<String> = path.iter().map(|(x, y)| format!("{x},{y}")).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="{}" stroke-linejoin="round"/>"#,
            pts.join(" "),
            style.stroke
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

struct Canvas {
    w: u32,
    h: u32,
    px: Vec<[u8; 3]>,
}

impl Canvas {
    fn new(w: u32, h: u32) -> Self {
        Canvas { w, h, px: vec![[255; 3]; (w * h) as usize] }
    }

    fn fill(&mut self, x0: u32, y0: u32, x1: u32, y1: u32, rgb: [u8; 3]) {
        for y in y0..y1.min(self.h) {
            for x in x0..x1.min(self.w) {
                self.px[(y * self.w + x) as usize] = rgb;
            }
        }
    }

    fn encode(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.w, self.h).into_bytes();
        out.extend(self.px.iter().flatten());
        out
    }
}

fn ppm(config: &Configuration, spec: &LatticeSpec, style: &Style) -> Result<Vec<u8>> {
    let grid = vertex_grid(config, spec)?;
    let cell = style.cell;
    let mut canvas = Canvas::new(spec.l * cell, spec.m * cell);
    if style.color_vertices {
        for (r, row) in grid.iter().enumerate() {
            for (c, t) in row.iter().enumerate() {
                let (x, y) = (c as u32 * cell, (spec.m - 1 - r as u32) * cell);
                canvas.fill(x, y, x + cell, y + cell, PALETTE[t.index()]);
            }
        }
    }
    let (lo, hi) = (style.stroke / 2, style.stroke - style.stroke / 2);
    for path in paths(config, spec, cell) {
        for seg in path.windows(2) {
            let ((xa, ya), (xb, yb)) = (seg[0], seg[1]);
            let (x0, x1) = (xa.min(xb), xa.max(xb));
            let (y0, y1) = (ya.min(yb), ya.max(yb));
            canvas.fill(x0.saturating_sub(lo), y0.saturating_sub(lo), x1 + hi, y1 + hi, INK);
        }
    }
    Ok(canvas.encode())
}

pub fn render(config: &Configuration, spec: &LatticeSpec, format: Format, style: &Style) -> Result<Vec<u8>> {
    check_style(style)?;
    match format {
        Format::Svg => svg(config, spec, style).map(String::into_bytes),
        Format::Ppm => ppm(config, spec, style),
    }
}

/// Grey-scale entropy map, black for entropy `ln 5`, white for zero.
pub fn render_entropy_ppm(d: &VertexDensities, cell: u32) -> Result<Vec<u8>> {
    if cell == 0 {
        return Err(Error::Domain("cell size must be positive".into()));
    }
    let (m, l) = (d.m as u32, d.l as u32);
    let mut canvas = Canvas::new(l * cell, m * cell);
    let top = 5f64.ln();
    for (r, row) in d.entropy_map().iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            let g = (255.0 * (1.0 - (e / top).clamp(0.0, 1.0))).round() as u8;
            let (x, y) = (c as u32 * cell, (m - 1 - r as u32) * cell);
            canvas.fill(x, y, x + cell, y + cell, [g; 3]);
        }
    }
    Ok(canvas.encode())
}

#[cfg(test)]
mod tests {
    use super::*;
    use fivevertex::model::enumerate_configurations;

    fn only(spec: &LatticeSpec) -> Configuration {
        enumerate_configurations(spec, 10).unwrap().remove(0)
    }

    #[test]
    fn single_line_svg() {
        let spec = LatticeSpec::new(1, 1, 2).unwrap();
        let out = String::from_utf8(render(&only(&spec), &spec, Format::Svg, &Style::default()).unwrap()).unwrap();
        assert_eq!(out.matches("<polyline").count(), 1);
        assert!(out.contains(r#"points="6,12 6,6 18,6 18,0""#), "{out}");
    }

    #[test]
    fn ppm_header_scales() {
        let spec = LatticeSpec::new(2, 3, 5).unwrap();
        let style = Style { cell: 4, stroke: 2, color_vertices: true };
        let out = render(&only(&spec), &spec, Format::Ppm, &style).unwrap();
        assert!(out.starts_with(b"P6\n20 12\n255\n"));
        assert_eq!(out.len(), 13 + 20 * 12 * 3);
        assert!("png".parse::<Format>().is_err());
        assert!(render(&only(&spec), &spec, Format::Svg, &Style { cell: 1, ..style }).is_err());
    }
}
