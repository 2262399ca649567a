//! Minimal SVG writer. The viewport pads the scene box by 10% on each side,
//! y points up, coordinates carry 6 decimals.

use std::fmt::Write as _;
use std::path::Path;

use depthlab::geometry2d::BoundingBox;
use depthlab::{Component, MixtureMeasure, Point, Shape};

use crate::report::CliError;

pub const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"];

const PADDING: f64 = 0.1;
const SIZE: f64 = 600.0;

pub struct Svg {
    min: Point,
    max: Point,
    scale: f64,
    body: String,
}

fn f6(v: f64) -> String {
    format!("{v:.6}")
}

impl Svg {
    pub fn new(m: &MixtureMeasure) -> Self {
        Svg::with_box(&m.bbox())
    }

    pub fn with_box(b: &BoundingBox) -> Self {
        let fallback = b.scale().max(1.0);
        let w = if b.width() > 0.0 { b.width() } else { fallback };
        let h = if b.height() > 0.0 { b.height() } else { fallback };
        let c = b.center();
        let (w, h) = (w * (1.0 + 2.0 * PADDING), h * (1.0 + 2.0 * PADDING));
        Svg {
            min: Point::new(c.x - 0.5 * w, c.y - 0.5 * h),
            max: Point::new(c.x + 0.5 * w, c.y + 0.5 * h),
            scale: SIZE / w.max(h),
            body: String::new(),
        }
    }

    fn map(&self, p: Point) -> (String, String) {
        (f6((p.x - self.min.x) * self.scale), f6((self.max.y - p.y) * self.scale))
    }

    fn points_attr(&self, pts: &[Point]) -> String {
        pts.iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Support components filled, atoms as dots with area proportional to mass.
    pub fn measure(&mut self, m: &MixtureMeasure) {
        let max_atom = m
            .components()
            .iter()
            .filter_map(|c| match c {
                Component::Atom { mass, .. } => Some(*mass),
                _ => None,
            })
            .fold(0.0, f64::max);
        for c in m.components() {
            match c {
                Component::Polygon { vertices, .. } => {
                    let pts = self.points_attr(vertices.vertices());
                    let _ = writeln!(self.body, r##"<polygon points="{pts}" fill="#cccccc" stroke="none"/>"##);
                }
                Component::Disc { center, radius, .. } => {
                    let (x, y) = self.map(*center);
                    let r = f6(radius * self.scale);
                    let _ = writeln!(self.body, r##"<circle cx="{x}" cy="{y}" r="{r}" fill="#cccccc"/>"##);
                }
                Component::Segment { a, b, .. } => {
                    let ((x1, y1), (x2, y2)) = (self.map(*a), self.map(*b));
                    let _ = writeln!(
                        self.body,
                        r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#999999" stroke-width="3"/>"##
                    );
                }
                Component::Atom { point, mass } => {
                    let (x, y) = self.map(*point);
                    let r = f6(6.0 * (mass / max_atom).sqrt());
                    let _ = writeln!(self.body, r##"<circle cx="{x}" cy="{y}" r="{r}" fill="#333333"/>"##);
                }
            }
        }
    }

    /// Region boundary, stroked.
    pub fn shape(&mut self, s: &Shape, color: &str) {
        match s {
            Shape::Polygon { vertices } => {
                let pts = self.points_attr(vertices.vertices());
                let _ = writeln!(
                    self.body,
                    r#"<polygon points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>"#
                );
            }
            Shape::Segment { a, b } => {
                let ((x1, y1), (x2, y2)) = (self.map(*a), self.map(*b));
                let _ = writeln!(
                    self.body,
                    r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="1.5"/>"#
                );
            }
            Shape::Point { p } => self.marker(*p, color),
            Shape::Empty => {}
        }
    }

    pub fn path(&mut self, pts: &[Point], color: &str) {
        if pts.len() < 2 {
            return;
        }
        let attr = self.points_attr(pts);
        let _ = writeln!(
            self.body,
            r#"<polyline points="{attr}" fill="none" stroke="{color}" stroke-width="0.75"/>"#
        );
    }

    pub fn marker(&mut self, p: Point, color: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(self.body, r#"<circle cx="{x}" cy="{y}" r="3.000000" fill="{color}"/>"#);
    }

    pub fn render(&self) -> String {
        let w = f6((self.max.x - self.min.x) * self.scale);
        let h = f6((self.max.y - self.min.y) * self.scale);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{}</svg>\n",
            self.body
        )
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use depthlab::scenes;

    #[test]
    fn padding_and_decimals() {
        let m = scenes::uniform_square();
        let mut s = Svg::new(&m);
        s.measure(&m);
        let out = s.render();
        assert!(out.contains(r#"width="600.000000" height="600.000000""#));
        // corner (0,0) sits 10% of the side in from the left and bottom
        let off = 600.0 * 0.1 / 1.2;
        assert!(out.contains(&format!("{:.6},{:.6}", off, 600.0 - off)));
    }
}
