//! Classical energy-momentum map on S^2 x S^2 with unit radii.

mod critical;
mod oracle;
mod params;
mod region;
mod torus;

pub use critical::{critical_lines, critical_values, CriticalLines, CriticalValues, Line};
pub use oracle::{fiber_component_oracle, OracleConfig, OracleOutcome, OracleVerdict, MIN_RETAINED, NOISE_FLOOR};
pub use params::{parameter_classification, Condition, ParameterClass};
pub use region::{classify_point, EmDiagram, Region, RegionLabel, RegionShape};
pub use torus::{
    rank_determinant, restrict_to_torus, torus_critical_curves, torus_point, CurveBranch, Torus,
};

use crate::model::Coupling;

pub type Vec3 = [f64; 3];

/// Classical values of (X, Y) at one phase-space point.
pub fn em_map(c: &Coupling, s: &Vec3, t: &Vec3) -> (f64, f64) {
    let (xc, p, q) = (c.x(), c.p(), c.q());
    let mut x = 0.0;
    let mut y = 0.0;
    for i in 0..3 {
        x += xc[i] * s[i] * t[i];
        y += p[i] * (s[i] * s[i] + t[i] * t[i]) + q[i] * s[i] * t[i];
    }
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn em_map_matches_formula() {
        let (a, b) = (4.0, 3.0);
        let c = Coupling::new(a, b);
        let s = [0.36, 0.48, 0.8];
        let t = [0.0, 0.6, -0.8];
        let (x, y) = em_map(&c, &s, &t);
        let cc = 1.0 - a - b;
        let al = (a - b - 1.0) / cc;
        let be = (b - a - 1.0) / cc;
        let xe = s[0] * t[0] + al * s[1] * t[1] + be * s[2] * t[2];
        let ye = b * (1.0 - a) * (s[1] * s[1] + t[1] * t[1])
            + 2.0 * b * (1.0 - a) * be * s[1] * t[1]
            + a * (1.0 - b) * (s[2] * s[2] + t[2] * t[2])
            + 2.0 * a * (1.0 - b) * al * s[2] * t[2];
        assert!((x - xe).abs() < 1e-14 && (y - ye).abs() < 1e-13);
    }
}
