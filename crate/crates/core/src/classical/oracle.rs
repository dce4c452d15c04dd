//! Monte-Carlo count of connected components of a fiber of the EM map.
//!
//! Uniform samples on S^2 x S^2 landing in a small box around the probe are
//! linked at a multiple of their median nearest-neighbour distance in R^6.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::critical::critical_values;
use super::{em_map, Vec3};
use crate::error::{Error, Result};
use crate::model::Coupling;
use crate::unionfind::UnionFind;

pub const MIN_RETAINED: usize = 200;
/// Components below this fraction of the retained points are ignored.
pub const NOISE_FLOOR: f64 = 0.01;
const CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OracleConfig {
    pub samples: usize,
    /// Half-width of the box as a fraction of the per-axis extent.
    pub delta: f64,
    pub eps_factor: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { samples: 2_000_000, delta: 0.01, eps_factor: 4.0, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleVerdict {
    Components(usize),
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleOutcome {
    pub probe: [f64; 2],
    /// Absolute half-widths of the box in x and y.
    pub shell: [f64; 2],
    pub samples: usize,
    pub retained: usize,
    pub eps: Option<f64>,
    /// Sizes of the components above the noise floor, largest first.
    pub component_sizes: Vec<usize>,
    pub verdict: OracleVerdict,
}

fn sphere_point(rng: &mut impl Rng) -> Vec3 {
    let z = 2.0 * rng.gen::<f64>() - 1.0;
    let phi = std::f64::consts::TAU * rng.gen::<f64>();
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

fn dist2(p: &[f64; 6], q: &[f64; 6]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
}

pub fn fiber_component_oracle(x: f64, y: f64, a: f64, b: f64, cfg: &OracleConfig) -> Result<OracleOutcome> {
    if cfg.samples == 0 || !(cfg.delta > 0.0) || !(cfg.eps_factor > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "oracle needs samples > 0, delta > 0, eps factor > 0 (got {}, {}, {})",
            cfg.samples, cfg.delta, cfg.eps_factor
        )));
    }
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite probe ({x}, {y})")));
    }
    let ext = critical_values(a, b)?.extent();
    let shell = [cfg.delta * ext[0], cfg.delta * ext[1]];
    let c = Coupling::new(a, b);

    let mut kept: Vec<[f64; 6]> = Vec::new();
    let chunks = cfg.samples.div_ceil(CHUNK);
    for chunk in 0..chunks {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(chunk as u64);
        let n = CHUNK.min(cfg.samples - chunk * CHUNK);
        for _ in 0..n {
            let s = sphere_point(&mut rng);
            let t = sphere_point(&mut rng);
            let (px, py) = em_map(&c, &s, &t);
            if (px - x).abs() <= shell[0] && (py - y).abs() <= shell[1] {
                kept.push([s[0], s[1], s[2], t[0], t[1], t[2]]);
            }
        }
    }

    let mut out = OracleOutcome {
        probe: [x, y],
        shell,
        samples: cfg.samples,
        retained: kept.len(),
        eps: None,
        component_sizes: Vec::new(),
        verdict: OracleVerdict::Inconclusive,
    };
    if kept.len() < MIN_RETAINED {
        return Ok(out);
    }

    let n = kept.len();
    let mut nn = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = dist2(&kept[i], &kept[j]);
            nn[i] = nn[i].min(d);
            nn[j] = nn[j].min(d);
        }
    }
    nn.sort_by(f64::total_cmp);
    let eps = cfg.eps_factor * nn[n / 2].sqrt();
    let eps2 = eps * eps;
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if dist2(&kept[i], &kept[j]) <= eps2 {
                uf.union(i, j);
            }
        }
    }
    let mut sizes: Vec<usize> = uf
        .groups()
        .into_iter()
        .map(|g| g.len())
        .filter(|&k| k as f64 >= NOISE_FLOOR * n as f64)
        .collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    out.eps = Some(eps);
    out.verdict = OracleVerdict::Components(sizes.len());
    out.component_sizes = sizes;
    Ok(out)
}
