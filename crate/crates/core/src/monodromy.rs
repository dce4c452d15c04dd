//! Joint-spectrum lattices and monodromy by transporting an elementary cell
//! along a closed path.
//!
//! The cell is kept Lagrange-reduced in a fixed diagonal metric while it
//! moves; every reduction is an integer change of basis, and their product
//! together with the final comparison against the initial cell gives the
//! monodromy matrix. Matrices act on row vectors: row k holds the image of
//! the k-th initial basis vector.

use serde::Serialize;

use crate::classical::{parameter_classification, EmDiagram, Region, RegionLabel};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::spectrum::{joint_spectrum, JointSpectrum};
use crate::spin::{casimir_scale, spin_matrices, Mat};
use crate::symmetry::IrrepLabel;

type V2 = [f64; 2];
type M2 = [[f64; 2]; 2];
pub type IntMatrix = [[i64; 2]; 2];

const SNAP_TIE: f64 = 1e-9;
const MIN_SEPARATION: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Chart {
    /// `(x, y')` of the a=2, b=1 case.
    Unfolded,
    /// Plain `(x, y)`.
    Plane,
    /// Offsets above the lines L5 and L7 through F: `u = y - L5(x)`, `w = y - L7(x)`.
    Strata { f: V2, s5: f64, s7: f64 },
}

impl Chart {
    pub fn forward(&self, p: V2) -> V2 {
        match *self {
            Chart::Strata { f, s5, s7 } => {
                let dx = p[0] - f[0];
                let dy = p[1] - f[1];
                [dy - s5 * dx, dy - s7 * dx]
            }
            _ => p,
        }
    }

    pub fn inverse(&self, q: V2) -> V2 {
        match *self {
            Chart::Strata { f, s5, s7 } => {
                let dx = (q[1] - q[0]) / (s5 - s7);
                [f[0] + dx, f[1] + q[0] + s5 * dx]
            }
            _ => q,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JointLattice {
    pub points: Vec<V2>,
    /// Eigenpair residual of each point.
    pub residuals: Vec<f64>,
    pub chart: Chart,
    pub irrep: Option<IrrepLabel>,
    pub a: f64,
    pub b: f64,
    pub spin: u32,
}

impl JointLattice {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same points in another chart; the current chart must be `Plane`.
    pub fn rechart(&self, chart: Chart) -> JointLattice {
        JointLattice {
            points: self.points.iter().map(|&p| chart.forward(p)).collect(),
            chart,
            ..self.clone()
        }
    }

    /// Smallest pairwise distance.
    pub fn min_separation(&self) -> f64 {
        let p = &self.points;
        let mut d = f64::INFINITY;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                d = d.min((p[i][0] - p[j][0]).hypot(p[i][1] - p[j][1]));
            }
        }
        d
    }
}

/// `(x, y')` points of the a=2, b=1 model, one column of X eigenvalues per
/// eigenvalue `y' = (m + m')/2` of the unfolded integral.
pub fn limiting_lattice(spin: u32) -> Result<JointLattice> {
    if spin < 4 {
        return Err(Error::SpinTooSmall { spin, min: 4, context: "the limiting lattice" });
    }
    // quantization along axis 2: s1 -> iA, s2 -> Jz, s3 -> Jx
    let ops = spin_matrices(spin).unit_casimir_scale()?;
    let x = -ops.a2.kronecker(&ops.a2) + ops.s1.kronecker(&ops.s1);
    let n = ops.dim();
    let s = spin as i64;
    let f = casimir_scale(spin);
    let mut pairs: Vec<(V2, f64)> = Vec::with_capacity(n * n);
    for k in -2 * s..=2 * s {
        let idx: Vec<usize> = (0..n * n)
            .filter(|&i| (s - (i / n) as i64) + (s - (i % n) as i64) == k)
            .collect();
        let block = Mat::from_fn(idx.len(), idx.len(), |r, c| x[(idx[r], idx[c])]);
        let eig = block.clone().symmetric_eigen();
        for (c, v) in eig.eigenvalues.iter().enumerate() {
            let vec = eig.eigenvectors.column(c);
            let res = (&block * vec - vec * *v).norm();
            pairs.push(([*v, k as f64 * 0.5 * f], res));
        }
    }
    pairs.sort_by(|p, q| p.0[1].total_cmp(&q.0[1]).then(p.0[0].total_cmp(&q.0[0])));
    let (points, residuals) = pairs.into_iter().unzip();
    Ok(JointLattice { points, residuals, chart: Chart::Unfolded, irrep: None, a: 2.0, b: 1.0, spin })
}

pub fn irrep_lattice(params: &ModelParams, irrep: IrrepLabel, seed: u64) -> Result<JointLattice> {
    Ok(irrep_lattice_from(&joint_spectrum(params, seed)?, irrep))
}

pub fn irrep_lattice_from(spectrum: &JointSpectrum, irrep: IrrepLabel) -> JointLattice {
    let p = spectrum.params;
    let members = spectrum.of_irrep(irrep);
    JointLattice {
        points: members.iter().map(|e| [e.x, e.y]).collect(),
        residuals: members.iter().map(|e| e.residual).collect(),
        chart: Chart::Plane,
        irrep: Some(irrep),
        a: p.a,
        b: p.b,
        spin: p.spin,
    }
}

/// Anchor plus two lattice points; the basis is `p1 - anchor`, `p2 - anchor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeCell {
    pub anchor: usize,
    pub p1: usize,
    pub p2: usize,
}

impl LatticeCell {
    pub fn basis(&self, lattice: &JointLattice) -> M2 {
        let p = &lattice.points;
        [sub(p[self.p1], p[self.anchor]), sub(p[self.p2], p[self.anchor])]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransportOptions {
    /// Diagonal metric used for reduction and snapping.
    pub metric: V2,
    /// Largest step in units of the current cell.
    pub max_step: f64,
    pub forbidden: Vec<V2>,
    /// Minimal distance to forbidden points, in units of the current cell.
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SnapRecord {
    /// Index of the path vertex being approached.
    pub vertex: usize,
    pub position: V2,
    pub anchor: usize,
    pub basis: M2,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonodromyResult {
    pub matrix: IntMatrix,
    pub path: Vec<V2>,
    pub chart: Chart,
    pub basis_convention: String,
    pub initial_cell: LatticeCell,
    pub initial_basis: M2,
    /// Distance of the final comparison matrix from the nearest integer matrix.
    pub residual: f64,
    pub jumps: usize,
    pub snaps: Vec<SnapRecord>,
}

impl MonodromyResult {
    pub fn det(&self) -> i64 {
        det_i(&self.matrix)
    }

    pub fn trace(&self) -> i64 {
        self.matrix[0][0] + self.matrix[1][1]
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IDENTITY
    }
}

pub const IDENTITY: IntMatrix = [[1, 0], [0, 1]];

fn sub(p: V2, q: V2) -> V2 {
    [p[0] - q[0], p[1] - q[1]]
}

fn add(p: V2, q: V2) -> V2 {
    [p[0] + q[0], p[1] + q[1]]
}

fn det_f(m: &M2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn det_i(m: &IntMatrix) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn mul_i(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn int_inverse(g: &IntMatrix) -> Option<IntMatrix> {
    let d = det_i(g);
    (d.abs() == 1).then(|| [[g[1][1] * d, -g[0][1] * d], [-g[1][0] * d, g[0][0] * d]])
}

/// Coordinates of `v` in the basis formed by the rows of `r`.
fn coords(r: &M2, v: V2) -> V2 {
    let d = det_f(r);
    [(v[0] * r[1][1] - v[1] * r[1][0]) / d, (r[0][0] * v[1] - r[0][1] * v[0]) / d]
}

fn lattice_norm(r: &M2, v: V2) -> f64 {
    let c = coords(r, v);
    c[0].hypot(c[1])
}

/// Lagrange reduction of the rows of `r` in the metric `d`.
/// Returns `(g r, g)` with `g` unimodular and the result positively oriented.
fn reduce(r: &M2, d: V2) -> (M2, IntMatrix) {
    let ip = |u: V2, v: V2| d[0] * d[0] * u[0] * v[0] + d[1] * d[1] * u[1] * v[1];
    let mut r = *r;
    let mut g: IntMatrix = IDENTITY;
    for _ in 0..100 {
        if ip(r[0], r[0]) > ip(r[1], r[1]) {
            r.swap(0, 1);
            g.swap(0, 1);
        }
        let mu = (ip(r[0], r[1]) / ip(r[0], r[0])).round();
        if mu == 0.0 {
            break;
        }
        r[1] = [r[1][0] - mu * r[0][0], r[1][1] - mu * r[0][1]];
        let m = mu as i64;
        g[1] = [g[1][0] - m * g[0][0], g[1][1] - m * g[0][1]];
    }
    if det_f(&r) < 0.0 {
        r[1] = [-r[1][0], -r[1][1]];
        g[1] = [-g[1][0], -g[1][1]];
    }
    (r, g)
}

/// Index of the nearest point under `dist`, or an error when the two best
/// candidates tie.
fn nearest_strict(points: &[V2], dist: impl Fn(V2) -> f64) -> std::result::Result<usize, String> {
    let (mut best, mut second) = ((f64::INFINITY, 0usize), f64::INFINITY);
    for (i, &p) in points.iter().enumerate() {
        let d = dist(p);
        if d < best.0 {
            second = best.0;
            best = (d, i);
        } else if d < second {
            second = d;
        }
    }
    if (second - best.0).abs() < SNAP_TIE {
        return Err(format!("ambiguous snap: two candidates at distance {:.3e}", best.0));
    }
    Ok(best.1)
}

/// Nearest point with ties going to the lower index.
pub fn nearest_point(points: &[V2], target: V2, metric: V2) -> usize {
    let mut best = (f64::INFINITY, 0);
    for (i, p) in points.iter().enumerate() {
        let d = (metric[0] * (p[0] - target[0])).hypot(metric[1] * (p[1] - target[1]));
        if d < best.0 {
            best = (d, i);
        }
    }
    best.1
}

fn convex_hull(points: &[V2]) -> Vec<V2> {
    let mut p = points.to_vec();
    p.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    if p.len() < 3 {
        return p;
    }
    let cross = |o: V2, a: V2, b: V2| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut lower: Vec<V2> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<V2> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn inside_hull(hull: &[V2], q: V2) -> bool {
    let n = hull.len();
    n >= 3
        && (0..n).all(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % n]);
            (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]) >= 0.0
        })
}

/// Moves `cell` along the closed `path` and returns the monodromy matrix.
pub fn transport_cell(
    lattice: &JointLattice,
    path: &[V2],
    cell: LatticeCell,
    opts: &TransportOptions,
    basis_convention: &str,
) -> Result<MonodromyResult> {
    let fail = |vertex: usize, reason: String| Error::Transport { step: vertex, reason, crossing: None };
    let pts = &lattice.points;
    if path.len() < 2 {
        return Err(Error::InvalidArgument("transport path needs at least two vertices".into()));
    }
    if lattice.min_separation() < MIN_SEPARATION {
        return Err(fail(0, "lattice has coincident points".into()));
    }
    let initial_basis = cell.basis(lattice);
    if det_f(&initial_basis).abs() < 1e-14 {
        return Err(fail(0, "initial cell is degenerate".into()));
    }
    let hull = convex_hull(pts);
    let (mut r, g) = reduce(&initial_basis, opts.metric);
    let mut t = int_inverse(&g).expect("reduction is unimodular");
    let (t0, r0) = (t, r);
    let mut anchor = cell.anchor;
    let mut pos = path[0];
    let mut jumps = 0;
    let mut snaps = Vec::new();

    for (k, &target) in path.iter().enumerate().skip(1) {
        loop {
            let d = sub(target, pos);
            let len = lattice_norm(&r, d);
            if len < 1e-15 {
                break;
            }
            let last = len <= opts.max_step;
            pos = if last { target } else { add(pos, [d[0] * opts.max_step / len, d[1] * opts.max_step / len]) };
            for &f in &opts.forbidden {
                let m = lattice_norm(&r, sub(pos, f));
                if m < opts.margin {
                    return Err(fail(k, format!("within {m:.3} cells of the singular point ({}, {})", f[0], f[1])));
                }
            }
            if !inside_hull(&hull, pos) {
                return Err(fail(k, format!("path left the lattice support at ({}, {})", pos[0], pos[1])));
            }
            let n0 = nearest_strict(pts, |p| lattice_norm(&r, sub(p, pos))).map_err(|e| fail(k, e))?;
            if n0 != anchor {
                jumps += 1;
            }
            anchor = n0;
            let origin = pts[anchor];
            let q1 = nearest_strict(pts, |p| lattice_norm(&r, sub(p, add(origin, r[0])))).map_err(|e| fail(k, e))?;
            let q2 = nearest_strict(pts, |p| lattice_norm(&r, sub(p, add(origin, r[1])))).map_err(|e| fail(k, e))?;
            let snapped = [sub(pts[q1], origin), sub(pts[q2], origin)];
            if det_f(&snapped).abs() < 1e-14 {
                return Err(fail(k, "cell collapsed after snapping".into()));
            }
            let (rn, g) = reduce(&snapped, opts.metric);
            t = mul_i(&t, &int_inverse(&g).expect("reduction is unimodular"));
            r = rn;
            snaps.push(SnapRecord { vertex: k, position: pos, anchor, basis: r });
            if last {
                break;
            }
        }
    }
    if anchor != cell.anchor {
        return Err(fail(path.len() - 1, format!("anchor ended at point {anchor}, started at {}", cell.anchor)));
    }
    // H = r r0^-1, rows of r in the basis of rows of r0
    let h = [coords(&r0, r[0]), coords(&r0, r[1])];
    let hr: IntMatrix = [
        [h[0][0].round() as i64, h[0][1].round() as i64],
        [h[1][0].round() as i64, h[1][1].round() as i64],
    ];
    let residual = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (h[i][j] - hr[i][j] as f64).abs())
        .fold(0.0, f64::max);
    if det_i(&hr).abs() != 1 {
        return Err(fail(
            path.len() - 1,
            format!("final cell spans a sublattice of index {} (residual {residual:.3})", det_i(&hr).abs()),
        ));
    }
    let t0_inv = int_inverse(&t0).expect("unimodular");
    let matrix = mul_i(&mul_i(&t, &hr), &t0_inv);
    Ok(MonodromyResult {
        matrix,
        path: path.to_vec(),
        chart: lattice.chart,
        basis_convention: basis_convention.to_string(),
        initial_cell: cell,
        initial_basis,
        residual,
        jumps,
        snaps,
    })
}

/// Ellipse with `n` segments starting at angle `start`; the last vertex repeats the first.
pub fn ellipse_loop(centre: V2, radii: V2, n: usize, start: f64, clockwise: bool) -> Vec<V2> {
    let dir = if clockwise { -1.0 } else { 1.0 };
    let mut p: Vec<V2> = (0..=n)
        .map(|i| {
            let th = start + dir * std::f64::consts::TAU * i as f64 / n as f64;
            [centre[0] + radii[0] * th.cos(), centre[1] + radii[1] * th.sin()]
        })
        .collect();
    p[n] = p[0];
    p
}

/// Straight legs between consecutive waypoints, `per_leg` vertices each, closed.
pub fn polygon_loop(waypoints: &[V2], per_leg: usize) -> Vec<V2> {
    let mut p = Vec::with_capacity(waypoints.len() * per_leg + 1);
    for k in 0..waypoints.len() {
        let (a, b) = (waypoints[k], waypoints[(k + 1) % waypoints.len()]);
        for i in 0..per_leg {
            let t = i as f64 / per_leg as f64;
            p.push([a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t]);
        }
    }
    p.push(waypoints[0]);
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitingBasis {
    /// Right neighbour in the same row, then the nearest point to the right in the row above.
    Standard,
    /// Nearest points to the right in the rows above and below.
    Alternate,
}

impl LimitingBasis {
    pub fn description(self) -> &'static str {
        match self {
            LimitingBasis::Standard => "anchor -> next point right in the same y' row; anchor -> first point right in the row above",
            LimitingBasis::Alternate => "anchor -> first point right in the row above; anchor -> first point right in the row below",
        }
    }
}

pub const LIMITING_RADIUS: f64 = 0.5;
const LIMITING_SEGMENTS: usize = 400;

pub fn limiting_options(spin: u32) -> TransportOptions {
    let h = 0.5 * casimir_scale(spin);
    TransportOptions { metric: [1.0 / 0.06, 1.0 / h], max_step: 0.4, forbidden: vec![[0.0, 0.0]], margin: 2.0 }
}

/// Closed loop around the focus-focus point, starting at its bottom, clockwise.
pub fn limiting_loop(reversed: bool) -> Vec<V2> {
    ellipse_loop([0.0, 0.0], [LIMITING_RADIUS; 2], LIMITING_SEGMENTS, -std::f64::consts::FRAC_PI_2, !reversed)
}

/// First point strictly right of the anchor in the row offset by `dy`.
fn right_in_row(lattice: &JointLattice, anchor: usize, dy: f64) -> Option<usize> {
    let a = lattice.points[anchor];
    lattice
        .points
        .iter()
        .enumerate()
        .filter(|(_, p)| (p[1] - a[1] - dy).abs() < 1e-9 && p[0] > a[0] + 1e-12)
        .min_by(|x, y| x.1[0].total_cmp(&y.1[0]))
        .map(|(i, _)| i)
}

pub fn limiting_cell(lattice: &JointLattice, anchor: usize, basis: LimitingBasis) -> Result<LatticeCell> {
    let h = 0.5 * casimir_scale(lattice.spin);
    let missing = || Error::Transport { step: 0, reason: "no lattice neighbour for the initial cell".into(), crossing: None };
    let (p1, p2) = match basis {
        LimitingBasis::Standard => (right_in_row(lattice, anchor, 0.0), right_in_row(lattice, anchor, h)),
        LimitingBasis::Alternate => (right_in_row(lattice, anchor, h), right_in_row(lattice, anchor, -h)),
    };
    Ok(LatticeCell { anchor, p1: p1.ok_or_else(missing)?, p2: p2.ok_or_else(missing)? })
}

/// Transports a cell on `lattice` along `path`, anchoring at the lattice point
/// nearest the path start.
pub fn limiting_transport(lattice: &JointLattice, path: &[V2], basis: LimitingBasis) -> Result<MonodromyResult> {
    let opts = limiting_options(lattice.spin);
    let mut path = path.to_vec();
    let anchor = nearest_point(&lattice.points, path[0], opts.metric);
    let last = path.len() - 1;
    path[0] = lattice.points[anchor];
    path[last] = lattice.points[anchor];
    let cell = limiting_cell(lattice, anchor, basis)?;
    transport_cell(lattice, &path, cell, &opts, basis.description())
}

pub fn limiting_monodromy(spin: u32, basis: LimitingBasis, reversed: bool) -> Result<MonodromyResult> {
    let lattice = limiting_lattice(spin)?;
    limiting_transport(&lattice, &limiting_loop(reversed), basis)
}

/// Leg names of the generic path, in order.
pub const GENERIC_CROSSINGS: [&str; 4] = ["DF", "KF", "FL", "AF"];
const GENERIC_PER_LEG: usize = 100;
pub const GENERIC_MIN_SPIN: u32 = 10;

/// Waypoints in the strata chart, one per region in the order I, III, II, IV.
/// `depth` is the height of the arc above F.
fn generic_waypoints(depth: f64) -> [V2; 4] {
    let (s1, s2) = (0.75 * depth, 0.5 * depth);
    [[-s1, -s1], [s1, -s1], [s2, s2], [-s1, s1]]
}

/// Nearest neighbour plus the next neighbour that is clearly not collinear, positively oriented.
fn local_cell(points: &[V2], anchor: usize) -> Option<LatticeCell> {
    let a = points[anchor];
    let mut order: Vec<(f64, usize)> = points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != anchor)
        .map(|(i, p)| ((p[0] - a[0]).hypot(p[1] - a[1]), i))
        .collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let (d1, i1) = *order.first()?;
    let v1 = sub(points[i1], a);
    let (_, i2) = order.iter().skip(1).take(10).copied().find(|&(d, j)| {
        let v2 = sub(points[j], a);
        (v1[0] * v2[1] - v1[1] * v2[0]).abs() / (d1 * d) > 0.6
    })?;
    let v2 = sub(points[i2], a);
    Some(if v1[0] * v2[1] - v1[1] * v2[0] < 0.0 {
        LatticeCell { anchor, p1: i2, p2: i1 }
    } else {
        LatticeCell { anchor, p1: i1, p2: i2 }
    })
}

pub fn generic_monodromy(params: &ModelParams, irrep: IrrepLabel, seed: u64) -> Result<MonodromyResult> {
    let spectrum = generic_preconditions(params).and_then(|_| joint_spectrum(params, seed))?;
    generic_monodromy_from(&spectrum, irrep)
}

pub fn generic_preconditions(params: &ModelParams) -> Result<EmDiagram> {
    let class = parameter_classification(params.a, params.b);
    if class.is_degenerate() {
        return Err(Error::Unsupported {
            a: params.a,
            b: params.b,
            reason: format!("generic path needs a non-degenerate diagram ({})", class.describe()),
        });
    }
    let diagram = EmDiagram::new(params.a, params.b)?;
    if params.spin < GENERIC_MIN_SPIN {
        return Err(Error::SpinTooSmall { spin: params.spin, min: GENERIC_MIN_SPIN, context: "the generic monodromy path" });
    }
    Ok(diagram)
}

/// Generic path I -> III -> II -> IV -> I on the single-irrep sublattice.
pub fn generic_monodromy_from(spectrum: &JointSpectrum, irrep: IrrepLabel) -> Result<MonodromyResult> {
    let diagram = generic_preconditions(&spectrum.params)?;
    let f = diagram.points.f;
    let chart = Chart::Strata { f, s5: diagram.lines.l5.slope, s7: diagram.lines.l7.slope };
    let depth = diagram.arc_height_above_f();
    let wps = generic_waypoints(depth);
    for (w, region) in wps.iter().zip([Region::I, Region::III, Region::II, Region::IV]) {
        let p = chart.inverse(*w);
        if diagram.classify(p[0], p[1]) != RegionLabel::Inside(region) {
            return Err(Error::Transport {
                step: 0,
                reason: format!("waypoint ({}, {}) is not inside region {}", p[0], p[1], region.name()),
                crossing: None,
            });
        }
    }
    let lattice = irrep_lattice_from(spectrum, irrep).rechart(chart);
    let mut path = polygon_loop(&wps, GENERIC_PER_LEG);
    let anchor = nearest_point(&lattice.points, path[0], [1.0, 1.0]);
    let last = path.len() - 1;
    path[0] = lattice.points[anchor];
    path[last] = lattice.points[anchor];
    let cell = local_cell(&lattice.points, anchor).ok_or_else(|| Error::Transport {
        step: 0,
        reason: "no non-degenerate local cell at the start".into(),
        crossing: None,
    })?;
    let mut forbidden = vec![[0.0, 0.0]];
    for p in [diagram.points.a, diagram.points.d, diagram.k(), diagram.l()] {
        forbidden.push(chart.forward(p));
    }
    let opts = TransportOptions { metric: [1.0, 1.0], max_step: 0.3, forbidden, margin: 1.0 };
    let convention = format!("{irrep} sublattice, nearest neighbour and next non-collinear neighbour at the region I waypoint");
    transport_cell(&lattice, &path, cell, &opts, &convention).map_err(|e| match e {
        Error::Transport { step, reason, .. } => {
            let leg = (step.max(1) - 1) / GENERIC_PER_LEG;
            Error::Transport { step, reason, crossing: GENERIC_CROSSINGS.get(leg).map(|s| s.to_string()) }
        }
        e => e,
    })
}
