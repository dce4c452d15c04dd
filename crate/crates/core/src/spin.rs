//! Angular-momentum matrices for one integer spin and their two-spin embedding.
//!
//! Basis order is m = S, S-1, ..., -S everywhere. `s2` is purely imaginary,
//! so only its real antisymmetric part `A` (with `s2 = i A`) is stored.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub type Mat = DMatrix<f64>;

#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub spin: u32,
    pub s1: Mat,
    /// Real part of `s2 = i a2`.
    pub a2: Mat,
    pub s3: Mat,
    /// Factor already applied to the three matrices.
    pub scale: f64,
}

impl SpinOperators {
    pub fn dim(&self) -> usize {
        self.s1.nrows()
    }

    /// `s2 * s2 = -a2 * a2`, real symmetric.
    pub fn s2_squared(&self) -> Mat {
        -(&self.a2 * &self.a2)
    }

    pub fn casimir(&self) -> Mat {
        &self.s1 * &self.s1 + self.s2_squared() + &self.s3 * &self.s3
    }

    /// Divide by `sqrt(S(S+1))` so the Casimir becomes the identity.
    pub fn unit_casimir_scale(&self) -> Result<SpinOperators> {
        if self.spin == 0 {
            return Err(Error::SpinTooSmall {
                spin: 0,
                min: 1,
                context: "unit-Casimir scaling",
            });
        }
        let target = casimir_scale(self.spin);
        let k = target / self.scale;
        Ok(SpinOperators {
            spin: self.spin,
            s1: &self.s1 * k,
            a2: &self.a2 * k,
            s3: &self.s3 * k,
            scale: target,
        })
    }
}

/// `1/sqrt(S(S+1))`.
pub fn casimir_scale(spin: u32) -> f64 {
    let s = spin as f64;
    1.0 / (s * (s + 1.0)).sqrt()
}

/// Accepts only non-negative integers; half-integer spins are not supported.
pub fn parse_spin(value: f64) -> Result<u32> {
    if !value.is_finite() || value < 0.0 || value.fract() != 0.0 || value > 10_000.0 {
        return Err(Error::InvalidSpin(value));
    }
    Ok(value as u32)
}

pub fn spin_matrices(spin: u32) -> SpinOperators {
    let n = (2 * spin + 1) as usize;
    let s = spin as f64;
    let m = |i: usize| s - i as f64;

    // <m+1| s+ |m>
    let mut raise = Mat::zeros(n, n);
    for i in 1..n {
        let mi = m(i);
        raise[(i - 1, i)] = (s * (s + 1.0) - mi * (mi + 1.0)).sqrt();
    }
    let lower = raise.transpose();

    SpinOperators {
        spin,
        s1: (&raise + &lower) * 0.5,
        a2: (&lower - &raise) * 0.5,
        s3: Mat::from_diagonal(&DVector::from_fn(n, |i, _| m(i))),
        scale: 1.0,
    }
}

/// Operators on the product space; index 1 holds real parts (`s2 = i s[1]`).
#[derive(Debug, Clone)]
pub struct PairOperators {
    pub s: [Mat; 3],
    pub t: [Mat; 3],
}

pub fn embed_pair(ops: &SpinOperators) -> PairOperators {
    let n = ops.dim();
    let id = Mat::identity(n, n);
    let single = [&ops.s1, &ops.a2, &ops.s3];
    PairOperators {
        s: single.map(|m| m.kronecker(&id)),
        t: single.map(|m| id.kronecker(m)),
    }
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    a * b - b * a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &Mat) -> f64 {
        m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    #[test]
    fn spin_zero_is_zero() {
        let ops = spin_matrices(0);
        assert_eq!(ops.dim(), 1);
        assert_eq!(ops.s1[(0, 0)], 0.0);
        assert_eq!(ops.a2[(0, 0)], 0.0);
        assert_eq!(ops.s3[(0, 0)], 0.0);
    }

    #[test]
    fn spin_one_entries() {
        let ops = spin_matrices(1);
        assert_eq!(ops.s3, Mat::from_diagonal(&DVector::from_vec(vec![1.0, 0.0, -1.0])));
        let r = 1.0 / 2f64.sqrt();
        assert!((ops.s1[(0, 1)] - r).abs() < 1e-15);
        assert!((ops.s1[(1, 2)] - r).abs() < 1e-15);
        assert_eq!(ops.s1[(0, 2)], 0.0);
    }

    #[test]
    fn commutation_relations() {
        // [s1,s2] = i s3, [s2,s3] = i s1, [s3,s1] = i s2 with s2 = iA
        for spin in 1..=30 {
            let o = spin_matrices(spin);
            let norm = max_abs(&o.s1).max(max_abs(&o.a2)).max(max_abs(&o.s3));
            let tol = 1e-12 * norm;
            assert!(max_abs(&(commutator(&o.s1, &o.a2) - &o.s3)) <= tol, "S={spin}");
            assert!(max_abs(&(commutator(&o.a2, &o.s3) - &o.s1)) <= tol, "S={spin}");
            assert!(max_abs(&(commutator(&o.s3, &o.s1) + &o.a2)) <= tol, "S={spin}");
        }
    }

    #[test]
    fn casimir_before_and_after_scaling() {
        let o = spin_matrices(15);
        let c = o.casimir();
        assert!(max_abs(&(c - Mat::identity(31, 31) * 240.0)) < 1e-10);
        let u = o.unit_casimir_scale().unwrap();
        assert!((u.scale - 1.0 / 240f64.sqrt()).abs() < 1e-16);
        assert!(max_abs(&(u.casimir() - Mat::identity(31, 31))) <= 1e-14);
    }

    #[test]
    fn scaled_spin_one() {
        let u = spin_matrices(1).unit_casimir_scale().unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((u.s3[(0, 0)] - r).abs() < 1e-15);
        assert!((u.s3[(2, 2)] + r).abs() < 1e-15);
    }

    #[test]
    fn scaling_rejects_spin_zero() {
        assert!(spin_matrices(0).unit_casimir_scale().is_err());
    }

    #[test]
    fn parse_spin_rejects_bad_values() {
        assert!(parse_spin(-1.0).is_err());
        assert!(parse_spin(1.5).is_err());
        assert!(parse_spin(f64::NAN).is_err());
        assert_eq!(parse_spin(15.0).unwrap(), 15);
    }

    #[test]
    fn hermiticity() {
        let o = spin_matrices(7);
        assert_eq!(o.s1, o.s1.transpose());
        assert_eq!(o.a2, -o.a2.transpose());
    }

    #[test]
    fn embedding_commutes_and_traces() {
        let o = spin_matrices(1);
        let p = embed_pair(&o);
        assert_eq!(p.s[0].nrows(), 9);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(max_abs(&commutator(&p.s[i], &p.t[j])), 0.0);
            }
        }
        let p2 = embed_pair(&spin_matrices(2));
        assert_eq!(p2.s[2].trace(), 0.0);
        assert_eq!(embed_pair(&spin_matrices(15)).s[0].nrows(), 961);
    }

    #[test]
    fn scaled_eigenvalues_inside_unit_interval() {
        let u = spin_matrices(6).unit_casimir_scale().unwrap();
        let bound = 6.0 * u.scale + 1e-12;
        for m in [&u.s1, &u.s3] {
            for e in m.clone().symmetric_eigen().eigenvalues.iter() {
                assert!(e.abs() <= bound && e.abs() < 1.0);
            }
        }
        // s2 = iA: eigenvalues of A^T A are squares of those of s2
        for e in (u.a2.transpose() * &u.a2).symmetric_eigen().eigenvalues.iter() {
            assert!(e.sqrt() <= bound);
        }
    }
}
