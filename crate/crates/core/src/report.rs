//! Cluster statistics per region of the diagram.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classical::{critical_values, EmDiagram, Region, RegionLabel};
use crate::error::Result;
use crate::spectrum::{find_clusters, Cluster, JointSpectrum};
use crate::symmetry::IrrepLabel;

/// Clusters count for a region only if their centroid is this fraction of
/// the region diameter away from its boundary.
pub const REGION_MARGIN: f64 = 0.05;

/// 1e-3 of the distance between the two farthest critical values.
pub fn default_cluster_tol(a: f64, b: f64) -> Result<f64> {
    Ok(1e-3 * critical_values(a, b)?.diameter())
}

/// Clusters whose centroid lies well inside one of the four regions.
pub fn clusters_by_region(spectrum: &JointSpectrum, tol: f64) -> Result<Vec<(Region, Cluster)>> {
    let p = spectrum.params;
    let diagram = EmDiagram::new(p.a, p.b)?;
    let clusters = find_clusters(&spectrum.eigenvalues, tol)?;
    Ok(clusters
        .into_iter()
        .filter_map(|c| match diagram.classify(c.centroid[0], c.centroid[1]) {
            RegionLabel::Inside(r) if diagram.is_deep_inside(r, c.centroid, REGION_MARGIN) => Some((r, c)),
            _ => None,
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionMultiplicity {
    pub region: Region,
    pub clusters: usize,
    /// Cluster size -> number of clusters.
    pub sizes: BTreeMap<usize, usize>,
    /// Most frequent size, `None` when no cluster qualifies.
    pub modal_size: Option<usize>,
    /// Number of fiber components of the classical region.
    pub expected: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityReport {
    pub a: f64,
    pub b: f64,
    pub spin: u32,
    pub tol: f64,
    pub margin: f64,
    pub regions: Vec<RegionMultiplicity>,
}

impl MultiplicityReport {
    pub fn modal(&self, region: Region) -> Option<usize> {
        self.regions.iter().find(|r| r.region == region).and_then(|r| r.modal_size)
    }

    pub fn matches_classical(&self) -> bool {
        self.regions.iter().all(|r| r.modal_size == Some(r.expected))
    }
}

pub fn region_multiplicity_report(spectrum: &JointSpectrum, tol: f64) -> Result<MultiplicityReport> {
    let found = clusters_by_region(spectrum, tol)?;
    let regions = Region::ALL
        .iter()
        .map(|&region| {
            let mut sizes = BTreeMap::new();
            for (_, c) in found.iter().filter(|(r, _)| *r == region) {
                *sizes.entry(c.size()).or_insert(0) += 1;
            }
            // ties go to the smaller size
            let modal_size = sizes.iter().max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(x.0))).map(|(s, _)| *s);
            RegionMultiplicity {
                region,
                clusters: sizes.values().sum(),
                sizes,
                modal_size,
                expected: region.component_count(),
            }
        })
        .collect();
    let p = spectrum.params;
    Ok(MultiplicityReport { a: p.a, b: p.b, spin: p.spin, tol, margin: REGION_MARGIN, regions })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternCount {
    pub content: Vec<IrrepLabel>,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionPatterns {
    pub region: Region,
    /// Patterns of clusters with the region's component count, most frequent first.
    pub patterns: Vec<PatternCount>,
}

impl RegionPatterns {
    pub fn contents(&self) -> Vec<Vec<IrrepLabel>> {
        self.patterns.iter().map(|p| p.content.clone()).collect()
    }

    /// The `k` most frequent patterns as a sorted set.
    pub fn leading(&self, k: usize) -> Vec<Vec<IrrepLabel>> {
        let mut v: Vec<Vec<IrrepLabel>> = self.patterns.iter().take(k).map(|p| p.content.clone()).collect();
        v.sort();
        v
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingReport {
    pub a: f64,
    pub b: f64,
    pub spin: u32,
    pub tol: f64,
    pub regions: Vec<RegionPatterns>,
}

impl PairingReport {
    pub fn region(&self, region: Region) -> &RegionPatterns {
        self.regions.iter().find(|r| r.region == region).unwrap()
    }
}

pub fn strata_pairing_report(spectrum: &JointSpectrum, tol: f64) -> Result<PairingReport> {
    let found = clusters_by_region(spectrum, tol)?;
    let regions = Region::ALL
        .iter()
        .map(|&region| {
            let mut counts: BTreeMap<Vec<IrrepLabel>, usize> = BTreeMap::new();
            for (_, c) in found.iter().filter(|(r, c)| *r == region && c.size() == region.component_count()) {
                *counts.entry(c.content()).or_insert(0) += 1;
            }
            let mut patterns: Vec<PatternCount> =
                counts.into_iter().map(|(content, count)| PatternCount { content, count }).collect();
            patterns.sort_by(|x, y| y.count.cmp(&x.count).then(x.content.cmp(&y.content)));
            RegionPatterns { region, patterns }
        })
        .collect();
    let p = spectrum.params;
    Ok(PairingReport { a: p.a, b: p.b, spin: p.spin, tol, regions })
}
