use serde::Serialize;

use crate::error::Result;
use crate::model::check_params;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalValues {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
    pub d: [f64; 2],
    pub e: [f64; 2],
    pub f: [f64; 2],
}

impl CriticalValues {
    pub fn labelled(&self) -> [(&'static str, [f64; 2]); 6] {
        [("A", self.a), ("B", self.b), ("C", self.c), ("D", self.d), ("E", self.e), ("F", self.f)]
    }

    /// Per-axis extent of the diagram, `[x_max - x_min, y_max - y_min]`.
    pub fn extent(&self) -> [f64; 2] {
        let pts = self.labelled();
        let span = |k: usize| {
            let lo = pts.iter().map(|p| p.1[k]).fold(f64::INFINITY, f64::min);
            let hi = pts.iter().map(|p| p.1[k]).fold(f64::NEG_INFINITY, f64::max);
            hi - lo
        };
        [span(0), span(1)]
    }

    pub fn diameter(&self) -> f64 {
        let pts = self.labelled();
        let mut d: f64 = 0.0;
        for p in &pts {
            for q in &pts {
                d = d.max((p.1[0] - q.1[0]).hypot(p.1[1] - q.1[1]));
            }
        }
        d
    }
}

pub fn critical_values(a: f64, b: f64) -> Result<CriticalValues> {
    check_params(a, b)?;
    let c = 1.0 - a - b;
    let r = (a - b - 1.0) / c;
    let s = (b - a - 1.0) / c;
    Ok(CriticalValues {
        a: [s, -4.0 * a * b * (1.0 - b) / c],
        b: [1.0, 0.0],
        c: [-1.0, 0.0],
        d: [-s, 4.0 * a * (1.0 - a) * (1.0 - b) / c],
        e: [r, -4.0 * a * b * (1.0 - a) / c],
        f: [-r, 4.0 * b * (1.0 - a) * (1.0 - b) / c],
    })
}

/// `Y = slope (X - anchor)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    pub slope: f64,
    pub anchor: f64,
}

impl Line {
    pub fn at(&self, x: f64) -> f64 {
        self.slope * (x - self.anchor)
    }

    /// Signed vertical offset of a point above the line.
    pub fn offset(&self, p: [f64; 2]) -> f64 {
        p[1] - self.at(p[0])
    }

    pub fn intersect(&self, other: &Line) -> [f64; 2] {
        let x = (self.slope * self.anchor - other.slope * other.anchor) / (self.slope - other.slope);
        [x, self.at(x)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalLines {
    pub l1: Line,
    pub l5: Line,
    pub l6: Line,
    pub l7: Line,
}

impl CriticalLines {
    pub fn all(&self) -> [(&'static str, Line); 4] {
        [("L1", self.l1), ("L5", self.l5), ("L6", self.l6), ("L7", self.l7)]
    }
}

pub fn critical_lines(a: f64, b: f64) -> Result<CriticalLines> {
    check_params(a, b)?;
    Ok(CriticalLines {
        l1: Line { slope: 2.0 * a * b, anchor: 1.0 },
        l5: Line { slope: 2.0 * (1.0 - a) * (1.0 - b), anchor: 1.0 },
        l6: Line { slope: 2.0 * a * (1.0 - a), anchor: -1.0 },
        l7: Line { slope: 2.0 * b * (1.0 - b), anchor: -1.0 },
    })
}
