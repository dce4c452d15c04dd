//! Symmetry-labelled joint spectrum of (X, Y) and quasi-degenerate clusters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{build_xy, ModelOperators, ModelParams};
use crate::spin::Mat;
use crate::symmetry::{block_basis, build_group, projectors, restrict, IrrepLabel};
use crate::unionfind::UnionFind;

/// Relative residual accepted for a joint eigenpair.
pub const RESIDUAL_TOL: f64 = 1e-8;
const MAX_DRAWS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointEigenvalue {
    pub x: f64,
    pub y: f64,
    pub irrep: IrrepLabel,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct JointSpectrum {
    pub params: ModelParams,
    pub eigenvalues: Vec<JointEigenvalue>,
}

impl JointSpectrum {
    pub fn count(&self, irrep: IrrepLabel) -> usize {
        self.eigenvalues.iter().filter(|e| e.irrep == irrep).count()
    }

    pub fn of_irrep(&self, irrep: IrrepLabel) -> Vec<JointEigenvalue> {
        self.eigenvalues.iter().copied().filter(|e| e.irrep == irrep).collect()
    }
}

pub fn joint_spectrum(params: &ModelParams, seed: u64) -> Result<JointSpectrum> {
    let ops = build_xy(params)?;
    joint_spectrum_of(&ops, seed)
}

pub fn joint_spectrum_of(ops: &ModelOperators, seed: u64) -> Result<JointSpectrum> {
    let group = build_group(ops.params.spin)?;
    let mut eigenvalues = Vec::with_capacity(ops.dim());
    for p in projectors(&group) {
        let basis = block_basis(&p)?;
        let xb = restrict(&basis, &ops.x);
        let yb = restrict(&basis, &ops.y);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(p.irrep.index() as u64);
        eigenvalues.extend(block_spectrum(&xb, &yb, p.irrep, &mut rng)?);
    }
    eigenvalues.sort_by(|a, b| {
        (a.irrep.index(), a.x, a.y)
            .partial_cmp(&(b.irrep.index(), b.x, b.y))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(JointSpectrum { params: ops.params, eigenvalues })
}

/// Joint eigenpairs of two commuting symmetric matrices via a generic
/// combination `X + mu Y`, redrawing `mu` when residuals are too large.
pub fn block_spectrum(
    xb: &Mat,
    yb: &Mat,
    irrep: IrrepLabel,
    rng: &mut impl Rng,
) -> Result<Vec<JointEigenvalue>> {
    let n = xb.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (nx, ny) = (xb.norm(), yb.norm());
    let ratio = if ny > 0.0 { nx / ny } else { 1.0 };
    let tol = RESIDUAL_TOL * nx.max(ny).max(1.0);
    let mut worst = f64::INFINITY;
    for _ in 0..MAX_DRAWS {
        let mu = rng.gen_range(0.3..0.7) * ratio;
        let eig = (xb + yb * mu).symmetric_eigen();
        let mut out = Vec::with_capacity(n);
        worst = 0.0;
        for k in 0..n {
            let v = eig.eigenvectors.column(k);
            let xv = xb * v;
            let yv = yb * v;
            let x = v.dot(&xv);
            let y = v.dot(&yv);
            let residual = (xv - v * x).norm().max((yv - v * y).norm());
            worst = worst.max(residual);
            out.push(JointEigenvalue { x, y, irrep, residual });
        }
        if worst <= tol {
            return Ok(out);
        }
    }
    Err(Error::Degeneracy {
        irrep: irrep.to_string(),
        attempts: MAX_DRAWS,
        residual: worst,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Cluster {
    pub members: Vec<JointEigenvalue>,
    pub centroid: [f64; 2],
    /// Longest single-linkage edge used to join the members.
    pub spread: f64,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Sorted irrep content.
    pub fn content(&self) -> Vec<IrrepLabel> {
        let mut c: Vec<IrrepLabel> = self.members.iter().map(|m| m.irrep).collect();
        c.sort();
        c
    }
}

/// Single-linkage grouping at Euclidean distance `tol` in the (x, y) plane.
pub fn find_clusters(points: &[JointEigenvalue], tol: f64) -> Result<Vec<Cluster>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("cluster tolerance must be positive, got {tol}")));
    }
    if points.is_empty() {
        return Err(Error::InvalidArgument("empty spectrum".into()));
    }
    let n = points.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = (points[i].x - points[j].x).hypot(points[i].y - points[j].y);
            if d < tol {
                edges.push((d, i, j));
            }
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut uf = UnionFind::new(n);
    let mut joined_at = vec![0.0f64; n];
    for &(d, i, j) in &edges {
        let (ri, rj) = (uf.find(i), uf.find(j));
        if uf.union(i, j) {
            let r = uf.find(i);
            joined_at[r] = d.max(joined_at[ri]).max(joined_at[rj]);
        }
    }
    let mut clusters: Vec<Cluster> = uf
        .groups()
        .into_iter()
        .map(|g| {
            let k = g.len() as f64;
            let cx = g.iter().map(|&i| points[i].x).sum::<f64>() / k;
            let cy = g.iter().map(|&i| points[i].y).sum::<f64>() / k;
            let root = uf.find(g[0]);
            Cluster {
                members: g.iter().map(|&i| points[i]).collect(),
                centroid: [cx, cy],
                spread: joined_at[root],
            }
        })
        .collect();
    clusters.sort_by(|a, b| {
        a.centroid[0].total_cmp(&b.centroid[0]).then(a.centroid[1].total_cmp(&b.centroid[1]))
    });
    Ok(clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::SwapParity;

    #[test]
    fn small_spectrum_matches_full_diagonalization() {
        let params = ModelParams::new(4.0, 3.0, 5).unwrap();
        let ops = build_xy(&params).unwrap();
        let js = joint_spectrum_of(&ops, 7).unwrap();
        assert_eq!(js.eigenvalues.len(), 121);
        let mut xs: Vec<f64> = js.eigenvalues.iter().map(|e| e.x).collect();
        xs.sort_by(f64::total_cmp);
        let mut full: Vec<f64> = ops.x.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        full.sort_by(f64::total_cmp);
        for (a, b) in xs.iter().zip(&full) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn limiting_spectrum_nonpositive_y() {
        let js = joint_spectrum(&ModelParams::new(2.0, 1.0, 4).unwrap(), 1).unwrap();
        assert!(js.eigenvalues.iter().all(|e| e.y <= 1e-10));
    }

    #[test]
    fn deterministic_in_seed() {
        let p = ModelParams::new(4.0, 3.0, 3).unwrap();
        let a = joint_spectrum(&p, 11).unwrap();
        let b = joint_spectrum(&p, 11).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
    }

    #[test]
    fn zero_tolerance_limit_gives_singletons() {
        let js = joint_spectrum(&ModelParams::new(4.0, 3.0, 3).unwrap(), 0).unwrap();
        let cl = find_clusters(&js.eigenvalues, 1e-14).unwrap();
        assert_eq!(cl.len(), 49);
        assert!(find_clusters(&js.eigenvalues, 0.0).is_err());
    }

    #[test]
    fn clusters_from_synthetic_points() {
        let l = IrrepLabel { rotation: crate::symmetry::Rotation::A, parity: SwapParity::Symmetric };
        let p = |x, y| JointEigenvalue { x, y, irrep: l, residual: 0.0 };
        let pts = [p(0.0, 0.0), p(0.05, 0.0), p(0.1, 0.0), p(1.0, 1.0)];
        let cl = find_clusters(&pts, 0.06).unwrap();
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].size(), 3);
        assert!((cl[0].spread - 0.05).abs() < 1e-12);
        assert!((cl[0].centroid[0] - 0.05).abs() < 1e-12);
    }
}
