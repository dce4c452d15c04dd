//! Invariant tori T1..T3 and the curves on them where the EM map drops rank.
//!
//! On T_i the i-th components vanish and the other two are
//! `(cos phi, sin phi)` for each sphere, in increasing axis order.

use serde::Serialize;

use super::{em_map, Vec3};
use crate::error::Result;
use crate::model::{check_params, Coupling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Torus {
    T1,
    T2,
    T3,
}

impl Torus {
    pub const ALL: [Torus; 3] = [Torus::T1, Torus::T2, Torus::T3];

    /// Zero-based indices of the (cos, sin) components.
    pub fn axes(self) -> (usize, usize) {
        match self {
            Torus::T1 => (1, 2),
            Torus::T2 => (0, 2),
            Torus::T3 => (0, 1),
        }
    }
}

pub fn torus_point(torus: Torus, phi_s: f64, phi_t: f64) -> (Vec3, Vec3) {
    let (j, k) = torus.axes();
    let mut s = [0.0; 3];
    let mut t = [0.0; 3];
    s[j] = phi_s.cos();
    s[k] = phi_s.sin();
    t[j] = phi_t.cos();
    t[k] = phi_t.sin();
    (s, t)
}

pub fn restrict_to_torus(torus: Torus, a: f64, b: f64, phi_s: f64, phi_t: f64) -> Result<(f64, f64)> {
    check_params(a, b)?;
    let (s, t) = torus_point(torus, phi_s, phi_t);
    Ok(em_map(&Coupling::new(a, b), &s, &t))
}

/// Jacobian determinant of (X, Y) restricted to the torus, in (phi_s, phi_t).
pub fn rank_determinant(torus: Torus, c: &Coupling, phi_s: f64, phi_t: f64) -> f64 {
    let (j, k) = torus.axes();
    let (r, p, q) = (c.x(), c.p(), c.q());
    let (sp, cp) = phi_s.sin_cos();
    let (sq, cq) = phi_t.sin_cos();
    let x_p = -r[j] * sp * cq + r[k] * cp * sq;
    let x_q = -r[j] * cp * sq + r[k] * sp * cq;
    let y_p = -2.0 * p[j] * cp * sp - q[j] * sp * cq + 2.0 * p[k] * sp * cp + q[k] * cp * sq;
    let y_q = -2.0 * p[j] * cq * sq - q[j] * cp * sq + 2.0 * p[k] * sq * cq + q[k] * sp * cq;
    x_p * y_q - x_q * y_p
}

/// Discriminant, numerator and denominator of `s = (num +- sqrt(disc)) / den`,
/// with `s = tan(phi_s/2)` and `t = tan(phi_t/2)`.
fn curve_terms(torus: Torus, a: f64, b: f64, t: f64) -> (f64, f64, f64) {
    let t2 = t * t;
    let t4 = t2 * t2;
    let mixed = 2.0 * (b * (a - 1.0) + a * (b - 1.0)) * t2;
    match torus {
        Torus::T1 => (
            a * (1.0 - b) * (t4 + 1.0) + 2.0 * (2.0 * b - a * (1.0 + b)) * t2,
            (a - b - 1.0) * t,
            a * t2 + b - 1.0,
        ),
        Torus::T2 => ((a - b) * (t4 + 1.0) + mixed, (a + b - 1.0) * t, -t2 + a - b),
        Torus::T3 => ((b - a) * (t4 + 1.0) + mixed, (1.0 - a - b) * t, t2 + a - b),
    }
}

/// One connected run of a root branch, with its EM image.
#[derive(Debug, Clone, Serialize)]
pub struct CurveBranch {
    pub torus: Torus,
    pub sign: i8,
    /// `(phi_s, phi_t)` pairs.
    pub angles: Vec<[f64; 2]>,
    pub image: Vec<[f64; 2]>,
}

/// Non-symmetry critical curves on one torus, sampled at `samples` values of
/// `phi_t` in (-pi, pi). Empty when the discriminant has no real range.
pub fn torus_critical_curves(torus: Torus, a: f64, b: f64, samples: usize) -> Result<Vec<CurveBranch>> {
    check_params(a, b)?;
    let c = Coupling::new(a, b);
    let mut out = Vec::new();
    for sign in [1i8, -1] {
        let mut run: Option<CurveBranch> = None;
        let mut last_den_sign = 0.0;
        for i in 0..samples {
            let phi_t = -std::f64::consts::PI + (i as f64 + 0.5) * std::f64::consts::TAU / samples as f64;
            let t = (phi_t / 2.0).tan();
            let (disc, num, den) = curve_terms(torus, a, b, t);
            let usable = disc >= 0.0 && den.abs() > 1e-9 * (1.0 + t * t);
            if !usable || den.signum() != last_den_sign {
                if let Some(r) = run.take() {
                    out.push(r);
                }
            }
            last_den_sign = den.signum();
            if !usable {
                continue;
            }
            let s = (num + sign as f64 * disc.sqrt()) / den;
            let phi_s = 2.0 * s.atan();
            let (s3, t3) = torus_point(torus, phi_s, phi_t);
            let (x, y) = em_map(&c, &s3, &t3);
            let r = run.get_or_insert_with(|| CurveBranch { torus, sign, angles: Vec::new(), image: Vec::new() });
            r.angles.push([phi_s, phi_t]);
            r.image.push([x, y]);
        }
        if let Some(r) = run.take() {
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn fd_det(torus: Torus, c: &Coupling, p: f64, q: f64) -> f64 {
        let h = 1e-5;
        let f = |p: f64, q: f64| {
            let (s, t) = torus_point(torus, p, q);
            em_map(c, &s, &t)
        };
        let (xp1, yp1) = f(p + h, q);
        let (xp0, yp0) = f(p - h, q);
        let (xq1, yq1) = f(p, q + h);
        let (xq0, yq0) = f(p, q - h);
        let d = 2.0 * h;
        ((xp1 - xp0) / d) * ((yq1 - yq0) / d) - ((xq1 - xq0) / d) * ((yp1 - yp0) / d)
    }

    #[test]
    fn analytic_determinant_matches_finite_differences() {
        let c = Coupling::new(4.0, 3.0);
        for torus in Torus::ALL {
            for k in 0..20 {
                let p = 0.3 + 0.71 * k as f64;
                let q = -1.1 + 0.37 * k as f64;
                let a = rank_determinant(torus, &c, p, q);
                let f = fd_det(torus, &c, p, q);
                assert!((a - f).abs() < 1e-5 * (1.0 + a.abs()), "{torus:?} {a} {f}");
            }
        }
    }

    #[test]
    fn symmetry_lines_are_critical() {
        let c = Coupling::new(4.0, 3.0);
        for torus in Torus::ALL {
            for k in 0..50 {
                let q = -3.0 + 0.12 * k as f64;
                for p in [q, -q, PI - q, PI + q] {
                    assert!(rank_determinant(torus, &c, p, q).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn t1_empty_for_ordered_parameters() {
        assert!(torus_critical_curves(Torus::T1, 4.0, 3.0, 2048).unwrap().is_empty());
        assert!(!torus_critical_curves(Torus::T2, 4.0, 3.0, 2048).unwrap().is_empty());
        assert!(!torus_critical_curves(Torus::T3, 4.0, 3.0, 2048).unwrap().is_empty());
    }

    #[test]
    fn curve_points_are_critical_for_all_tori() {
        // (4, 0.5) has real T1 branches, which checks the T1 discriminant
        for (a, b) in [(4.0, 3.0), (4.0, 0.5), (-2.0, 0.5), (6.0, 2.0)] {
            let c = Coupling::new(a, b);
            for torus in Torus::ALL {
                for br in torus_critical_curves(torus, a, b, 512).unwrap() {
                    for ang in &br.angles {
                        let d = rank_determinant(torus, &c, ang[0], ang[1]);
                        assert!(d.abs() < 1e-9, "({a},{b}) {torus:?} {d}");
                    }
                }
            }
        }
        assert!(!torus_critical_curves(Torus::T1, 4.0, 0.5, 512).unwrap().is_empty());
    }

    #[test]
    fn t2_quarter_turn_is_point_a() {
        let (x, y) = restrict_to_torus(Torus::T2, 4.0, 3.0, PI / 2.0, PI / 2.0).unwrap();
        assert!((x - 1.0 / 3.0).abs() < 1e-12 && (y + 16.0).abs() < 1e-12);
    }
}
