//! Minimal SVG figure writer. Model coordinates have y pointing up; the
//! flip happens here.

use std::fmt::Write;
use std::path::Path;

use catoptrix_core::ComplexPoint;

use crate::output::CliError;

pub struct Figure {
    half: f64,
    body: String,
}

impl Figure {
    /// A square figure showing `[-half, half]²`.
    pub fn new(half: f64) -> Self {
        Self {
            half,
            body: String::new(),
        }
    }

    fn stroke(&self) -> f64 {
        self.half / 250.0
    }

    pub fn circle(&mut self, c: ComplexPoint, r: f64, color: &str) -> &mut Self {
        let w = self.stroke();
        let _ = writeln!(
            self.body,
            r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="none" stroke="{color}" stroke-width="{w:.6}"/>"#,
            c.re(),
            -c.im(),
            r
        );
        self
    }

    pub fn dot(&mut self, p: ComplexPoint, color: &str, label: &str) -> &mut Self {
        let r = self.half / 80.0;
        let _ = writeln!(
            self.body,
            r#"<circle cx="{:.6}" cy="{:.6}" r="{r:.6}" fill="{color}"/>"#,
            p.re(),
            -p.im()
        );
        if !label.is_empty() {
            let size = self.half / 18.0;
            let _ = writeln!(
                self.body,
                r#"<text x="{:.6}" y="{:.6}" font-size="{size:.6}" font-family="sans-serif">{}</text>"#,
                p.re() + 1.5 * r,
                -p.im() - 1.5 * r,
                escape(label)
            );
        }
        self
    }

    pub fn segment(&mut self, p: ComplexPoint, q: ComplexPoint, color: &str, dashed: bool) -> &mut Self {
        let w = self.stroke();
        let dash = if dashed {
            format!(r#" stroke-dasharray="{:.6}""#, 4.0 * w)
        } else {
            String::new()
        };
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{color}" stroke-width="{w:.6}"{dash}/>"#,
            p.re(),
            -p.im(),
            q.re(),
            -q.im()
        );
        self
    }

    /// The line `a·x + b·y + c = 0` (unit normal), drawn across the view.
    pub fn line(&mut self, a: f64, b: f64, c: f64, color: &str) -> &mut Self {
        let foot = ComplexPoint::new(-c * a, -c * b).expect("finite line");
        let dir = ComplexPoint::new(-b, a).expect("finite line") * (4.0 * self.half);
        self.segment(foot - dir, foot + dir, color, false)
    }

    pub fn polyline(&mut self, pts: &[ComplexPoint], color: &str) -> &mut Self {
        let w = self.stroke();
        let mut coords = String::new();
        for p in pts {
            let _ = write!(coords, "{:.6},{:.6} ", p.re(), -p.im());
        }
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{w:.6}"/>"#,
            coords.trim_end()
        );
        self
    }

    pub fn render(&self) -> String {
        let h = self.half;
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\" width=\"600\" height=\"600\">\n\
             <rect x=\"{:.6}\" y=\"{:.6}\" width=\"{:.6}\" height=\"{:.6}\" fill=\"white\"/>\n{}</svg>\n",
            -h,
            -h,
            2.0 * h,
            2.0 * h,
            -h,
            -h,
            2.0 * h,
            2.0 * h,
            self.body
        )
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.render()).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
