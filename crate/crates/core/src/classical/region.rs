//! Region layout of the diagram for a > b > 1.
//!
//! Rhomb I = AFDE, triangles III = CDF and IV = AFB, and the curved
//! triangle II bounded by the two lines through F and the arc KL.
//! Distances and margins are measured in coordinates normalized by the
//! per-axis extent, since the y-range is an order of magnitude wider.

use serde::Serialize;

use super::critical::{critical_lines, critical_values, CriticalLines, CriticalValues};
use super::params::parameter_classification;
use super::torus::{torus_critical_curves, Torus};
use crate::error::{Error, Result};

pub const ARC_SAMPLES: usize = 1024;
const BOUNDARY_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Region {
    I,
    II,
    III,
    IV,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::I, Region::II, Region::III, Region::IV];

    pub fn component_count(self) -> usize {
        match self {
            Region::II => 4,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::I => "I",
            Region::II => "II",
            Region::III => "III",
            Region::IV => "IV",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionLabel {
    Inside(Region),
    Boundary,
    Outside,
}

impl RegionLabel {
    /// `None` on the boundary, where the count is not defined.
    pub fn component_count(self) -> Option<usize> {
        match self {
            RegionLabel::Inside(r) => Some(r.component_count()),
            RegionLabel::Boundary => None,
            RegionLabel::Outside => Some(0),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionShape {
    pub region: Region,
    pub polygon: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmDiagram {
    pub a: f64,
    pub b: f64,
    pub points: CriticalValues,
    pub lines: CriticalLines,
    /// Arc from K (on L7) to L (on L5).
    pub arc: Vec<[f64; 2]>,
    pub regions: Vec<RegionShape>,
    pub extent: [f64; 2],
}

impl EmDiagram {
    pub fn new(a: f64, b: f64) -> Result<EmDiagram> {
        let points = critical_values(a, b)?;
        let lines = critical_lines(a, b)?;
        let class = parameter_classification(a, b);
        if !(a > b && b > 1.0) || class.is_degenerate() {
            return Err(Error::Unsupported {
                a,
                b,
                reason: format!("region layout needs a > b > 1 ({})", class.describe()),
            });
        }
        let arc = parabola_arc(a, b, &lines)?;
        let k = arc[0];
        let l = *arc.last().unwrap();
        let mut ii = vec![points.f, l];
        ii.extend(arc.iter().rev().skip(1).take(arc.len() - 2));
        ii.push(k);
        let regions = vec![
            RegionShape { region: Region::I, polygon: vec![points.a, points.f, points.d, points.e] },
            RegionShape { region: Region::II, polygon: ii },
            RegionShape { region: Region::III, polygon: vec![points.c, points.f, points.d] },
            RegionShape { region: Region::IV, polygon: vec![points.a, points.b, points.f] },
        ];
        Ok(EmDiagram { a, b, points, lines, arc, regions, extent: points.extent() })
    }

    pub fn k(&self) -> [f64; 2] {
        self.arc[0]
    }

    pub fn l(&self) -> [f64; 2] {
        *self.arc.last().unwrap()
    }

    /// Height of the arc above F, measured vertically at F.
    pub fn arc_height_above_f(&self) -> f64 {
        let fx = self.points.f[0];
        let j = self.arc.partition_point(|p| p[0] < fx).clamp(1, self.arc.len() - 1);
        let (p, q) = (self.arc[j - 1], self.arc[j]);
        p[1] + (q[1] - p[1]) * (fx - p[0]) / (q[0] - p[0]) - self.points.f[1]
    }

    pub fn normalize(&self, p: [f64; 2]) -> [f64; 2] {
        [p[0] / self.extent[0], p[1] / self.extent[1]]
    }

    pub fn denormalize(&self, p: [f64; 2]) -> [f64; 2] {
        [p[0] * self.extent[0], p[1] * self.extent[1]]
    }

    pub fn shape(&self, region: Region) -> &RegionShape {
        self.regions.iter().find(|s| s.region == region).unwrap()
    }

    pub fn classify(&self, x: f64, y: f64) -> RegionLabel {
        let p = [x, y];
        let near = self
            .regions
            .iter()
            .any(|s| boundary_distance(&s.polygon, p) < BOUNDARY_BAND);
        if near {
            return RegionLabel::Boundary;
        }
        for s in &self.regions {
            if contains(&s.polygon, p) {
                return RegionLabel::Inside(s.region);
            }
        }
        RegionLabel::Outside
    }

    /// Normalized distance from an interior point to its region's boundary.
    pub fn depth(&self, region: Region, p: [f64; 2]) -> Option<f64> {
        let poly: Vec<[f64; 2]> = self.shape(region).polygon.iter().map(|&q| self.normalize(q)).collect();
        let q = self.normalize(p);
        contains(&poly, q).then(|| boundary_distance(&poly, q))
    }

    /// Normalized distance to the nearest critical line segment or arc.
    pub fn distance_to_critical_set(&self, p: [f64; 2]) -> f64 {
        let q = self.normalize(p);
        self.regions
            .iter()
            .map(|s| {
                let poly: Vec<[f64; 2]> = s.polygon.iter().map(|&v| self.normalize(v)).collect();
                boundary_distance(&poly, q)
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn diameter(&self, region: Region) -> f64 {
        let poly: Vec<[f64; 2]> = self.shape(region).polygon.iter().map(|&q| self.normalize(q)).collect();
        let mut d: f64 = 0.0;
        for p in &poly {
            for q in &poly {
                d = d.max((p[0] - q[0]).hypot(p[1] - q[1]));
            }
        }
        d
    }

    /// Inside the region and farther than `margin` x region diameter from its boundary.
    pub fn is_deep_inside(&self, region: Region, p: [f64; 2], margin: f64) -> bool {
        self.depth(region, p).is_some_and(|d| d > margin * self.diameter(region))
    }

    /// Grid point of maximal normalized depth.
    pub fn interior_probe(&self, region: Region) -> [f64; 2] {
        let poly = &self.shape(region).polygon;
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in poly {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let n = 120;
        let mut best = (f64::NEG_INFINITY, poly[0]);
        for i in 1..n {
            for j in 1..n {
                let p = [
                    lo[0] + (hi[0] - lo[0]) * i as f64 / n as f64,
                    lo[1] + (hi[1] - lo[1]) * j as f64 / n as f64,
                ];
                if let Some(d) = self.depth(region, p) {
                    if d > best.0 {
                        best = (d, p);
                    }
                }
            }
        }
        best.1
    }
}

pub fn classify_point(x: f64, y: f64, a: f64, b: f64) -> Result<RegionLabel> {
    Ok(EmDiagram::new(a, b)?.classify(x, y))
}

/// Images of the T2/T3 critical curves, resampled as a graph over x with
/// endpoints pinned to L7 (left) and L5 (right).
fn parabola_arc(a: f64, b: f64, lines: &CriticalLines) -> Result<Vec<[f64; 2]>> {
    let mut cloud: Vec<[f64; 2]> = Vec::new();
    for torus in [Torus::T2, Torus::T3] {
        for br in torus_critical_curves(torus, a, b, 8192)? {
            cloud.extend(br.image);
        }
    }
    if cloud.len() < 2 {
        return Err(Error::Unsupported { a, b, reason: "no real torus critical curves".into() });
    }
    cloud.sort_by(|p, q| p[0].total_cmp(&q[0]));
    let (x0, x1) = (cloud[0][0], cloud.last().unwrap()[0]);
    let mut arc = Vec::with_capacity(ARC_SAMPLES);
    let mut j = 0;
    for i in 0..ARC_SAMPLES {
        let x = x0 + (x1 - x0) * i as f64 / (ARC_SAMPLES - 1) as f64;
        while j + 2 < cloud.len() && cloud[j + 1][0] < x {
            j += 1;
        }
        let (p, q) = (cloud[j], cloud[j + 1]);
        let y = if q[0] > p[0] { p[1] + (q[1] - p[1]) * (x - p[0]) / (q[0] - p[0]) } else { p[1] };
        arc.push([x, y]);
    }
    arc[0] = [x0, lines.l7.at(x0)];
    arc[ARC_SAMPLES - 1] = [x1, lines.l5.at(x1)];
    Ok(arc)
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 > 0.0 {
        (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p[0] - a[0] - t * d[0]).hypot(p[1] - a[1] - t * d[1])
}

pub(crate) fn boundary_distance(poly: &[[f64; 2]], p: [f64; 2]) -> f64 {
    (0..poly.len())
        .map(|i| segment_distance(p, poly[i], poly[(i + 1) % poly.len()]))
        .fold(f64::INFINITY, f64::min)
}

pub(crate) fn contains(poly: &[[f64; 2]], p: [f64; 2]) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let d = EmDiagram::new(4.0, 3.0).unwrap();
        assert_eq!(d.classify(0.0, -15.9), RegionLabel::Inside(Region::I));
        assert_eq!(d.classify(0.0, -10.0), RegionLabel::Inside(Region::II));
        assert_eq!(d.classify(-0.6, -9.0), RegionLabel::Inside(Region::III));
        assert_eq!(d.classify(0.6, -9.0), RegionLabel::Inside(Region::IV));
        assert_eq!(d.classify(0.0, 0.1), RegionLabel::Outside);
        assert_eq!(d.classify(0.0, -7.0), RegionLabel::Outside);
        assert_eq!(d.classify(1.0, 0.0), RegionLabel::Boundary);
        assert_eq!(d.classify(0.0, 0.1).component_count(), Some(0));
    }

    #[test]
    fn arc_endpoints_and_apex() {
        let d = EmDiagram::new(4.0, 3.0).unwrap();
        assert!((d.k()[0] + 2.0 / 3.0).abs() < 1e-6 && (d.k()[1] + 4.0).abs() < 1e-5);
        assert!((d.l()[0] - 2.0 / 3.0).abs() < 1e-6 && (d.l()[1] + 4.0).abs() < 1e-5);
        assert!((d.arc_height_above_f() - 4.0).abs() < 1e-3);
        let apex = d.arc.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
        assert!((apex + 8.0).abs() < 1e-3);
    }

    #[test]
    fn arc_ends_on_lines_for_generic_parameters() {
        for (a, b) in [(4.0, 2.0), (5.0, 3.0), (3.9, 2.9), (6.0, 1.5)] {
            let d = EmDiagram::new(a, b).unwrap();
            let (k, l) = (d.k(), d.l());
            assert!(k[0] < d.points.f[0] && l[0] > d.points.f[0]);
            assert!(d.lines.l7.offset(k).abs() < 1e-9 && d.lines.l5.offset(l).abs() < 1e-9);
            // arc stays above both lines through F
            for p in &d.arc[1..ARC_SAMPLES - 1] {
                assert!(d.lines.l5.offset(*p) > 0.0 && d.lines.l7.offset(*p) > 0.0, "({a},{b})");
            }
        }
    }

    #[test]
    fn rejects_unsupported_layouts() {
        assert!(EmDiagram::new(2.0, 1.0).is_err());
        assert!(EmDiagram::new(3.0, 4.0).is_err());
    }

    #[test]
    fn probes_are_inside() {
        let d = EmDiagram::new(4.0, 3.0).unwrap();
        for r in Region::ALL {
            let p = d.interior_probe(r);
            assert_eq!(d.classify(p[0], p[1]), RegionLabel::Inside(r));
            assert!(d.is_deep_inside(r, p, 0.05));
        }
    }
}
