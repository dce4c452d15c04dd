//! Minimal SVG writer: scatter, polylines, polygons and labels in data coordinates.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const PAD: f64 = 40.0;

pub struct Figure {
    lo: [f64; 2],
    hi: [f64; 2],
    body: String,
}

impl Figure {
    /// Bounds are padded by 5% on each side.
    pub fn new(lo: [f64; 2], hi: [f64; 2]) -> Figure {
        let dx = (hi[0] - lo[0]).max(1e-12) * 0.05;
        let dy = (hi[1] - lo[1]).max(1e-12) * 0.05;
        Figure { lo: [lo[0] - dx, lo[1] - dy], hi: [hi[0] + dx, hi[1] + dy], body: String::new() }
    }

    pub fn fit<'a>(points: impl IntoIterator<Item = &'a [f64; 2]>) -> Figure {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        Figure::new(lo, hi)
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let x = PAD + (p[0] - self.lo[0]) / (self.hi[0] - self.lo[0]) * (WIDTH - 2.0 * PAD);
        let y = HEIGHT - PAD - (p[1] - self.lo[1]) / (self.hi[1] - self.lo[1]) * (HEIGHT - 2.0 * PAD);
        (x, y)
    }

    fn coords(&self, pts: &[[f64; 2]]) -> String {
        let mut s = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.map(*p);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x:.2},{y:.2}");
        }
        s
    }

    pub fn scatter(&mut self, pts: &[[f64; 2]], colour: &str, radius: f64) {
        let _ = writeln!(self.body, "<g fill=\"{colour}\">");
        for p in pts {
            let (x, y) = self.map(*p);
            let _ = writeln!(self.body, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{radius}\"/>");
        }
        self.body.push_str("</g>\n");
    }

    pub fn polyline(&mut self, pts: &[[f64; 2]], colour: &str, width: f64) {
        let _ = writeln!(
            self.body,
            "<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"{width}\" points=\"{}\"/>",
            self.coords(pts)
        );
    }

    pub fn polygon(&mut self, pts: &[[f64; 2]], colour: &str, opacity: f64) {
        let _ = writeln!(
            self.body,
            "<polygon fill=\"{colour}\" fill-opacity=\"{opacity}\" stroke=\"{colour}\" points=\"{}\"/>",
            self.coords(pts)
        );
    }

    pub fn text(&mut self, p: [f64; 2], label: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\">{}</text>",
            x + 4.0,
            y - 4.0,
            escape(label)
        );
    }

    pub fn title(&mut self, label: &str) {
        let _ = writeln!(
            self.body,
            "<text x=\"{PAD}\" y=\"{:.0}\" font-family=\"sans-serif\" font-size=\"14\">{}</text>",
            PAD * 0.6,
            escape(label)
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corners_map_inside_canvas() {
        let f = Figure::new([0.0, 0.0], [1.0, 1.0]);
        let (x0, y0) = f.map([0.0, 0.0]);
        let (x1, y1) = f.map([1.0, 1.0]);
        assert!(x0 > PAD && x1 < WIDTH - PAD && y0 < HEIGHT - PAD && y1 > PAD);
    }

    #[test]
    fn output_is_well_formed() {
        let mut f = Figure::new([0.0, 0.0], [1.0, 1.0]);
        f.scatter(&[[0.5, 0.5]], "black", 1.0);
        f.text([0.1, 0.1], "a<b");
        let s = f.finish();
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n") && s.contains("a&lt;b"));
    }
}
