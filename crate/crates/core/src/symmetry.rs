//! The order-8 group D2 x {1, Swap} on the two-spin space and its irreps.
//!
//! B_k carries character +1 under C2^(k) and -1 under the other two
//! rotations; the suffix s/a is the Swap character.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::spin::{spin_matrices, Mat, SpinOperators};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rotation {
    A,
    B1,
    B2,
    B3,
}

impl Rotation {
    /// Character under C2^(axis); axis 0 is the identity.
    pub fn character(self, axis: usize) -> f64 {
        match (self, axis) {
            (_, 0) | (Rotation::A, _) => 1.0,
            (Rotation::B1, 1) | (Rotation::B2, 2) | (Rotation::B3, 3) => 1.0,
            _ => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SwapParity {
    Symmetric,
    Antisymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLabel {
    pub rotation: Rotation,
    pub parity: SwapParity,
}

impl IrrepLabel {
    pub const ALL: [IrrepLabel; 8] = [
        IrrepLabel::new(Rotation::A, SwapParity::Symmetric),
        IrrepLabel::new(Rotation::A, SwapParity::Antisymmetric),
        IrrepLabel::new(Rotation::B1, SwapParity::Symmetric),
        IrrepLabel::new(Rotation::B1, SwapParity::Antisymmetric),
        IrrepLabel::new(Rotation::B2, SwapParity::Symmetric),
        IrrepLabel::new(Rotation::B2, SwapParity::Antisymmetric),
        IrrepLabel::new(Rotation::B3, SwapParity::Symmetric),
        IrrepLabel::new(Rotation::B3, SwapParity::Antisymmetric),
    ];

    pub const fn new(rotation: Rotation, parity: SwapParity) -> Self {
        IrrepLabel { rotation, parity }
    }

    pub fn index(self) -> usize {
        IrrepLabel::ALL.iter().position(|&l| l == self).unwrap()
    }

    pub fn character(self, e: Element) -> f64 {
        let swap = match (e.swap, self.parity) {
            (true, SwapParity::Antisymmetric) => -1.0,
            _ => 1.0,
        };
        self.rotation.character(e.axis) * swap
    }

    /// Same label with B1 and B3 exchanged (the opposite axis numbering).
    pub fn with_b1_b3_exchanged(self) -> IrrepLabel {
        let rotation = match self.rotation {
            Rotation::B1 => Rotation::B3,
            Rotation::B3 => Rotation::B1,
            r => r,
        };
        IrrepLabel { rotation, ..self }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.rotation {
            Rotation::A => "A",
            Rotation::B1 => "B1",
            Rotation::B2 => "B2",
            Rotation::B3 => "B3",
        };
        let p = match self.parity {
            SwapParity::Symmetric => "s",
            SwapParity::Antisymmetric => "a",
        };
        write!(f, "{r}_{p}")
    }
}

impl FromStr for IrrepLabel {
    type Err = Error;

    /// Accepts `A_s`, `As`, `B1_a`, `b1a`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| *c != '_').collect::<String>().to_ascii_lowercase();
        let (rot, par) = t.split_at(t.len().saturating_sub(1));
        let rotation = match rot {
            "a" => Rotation::A,
            "b1" => Rotation::B1,
            "b2" => Rotation::B2,
            "b3" => Rotation::B3,
            _ => return Err(Error::InvalidArgument(format!("unknown irrep label {s:?}"))),
        };
        let parity = match par {
            "s" => SwapParity::Symmetric,
            "a" => SwapParity::Antisymmetric,
            _ => return Err(Error::InvalidArgument(format!("unknown irrep label {s:?}"))),
        };
        Ok(IrrepLabel { rotation, parity })
    }
}

impl Serialize for IrrepLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Group element C2^(axis) optionally followed by Swap; axis 0 is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    pub axis: usize,
    pub swap: bool,
}

impl Element {
    pub const ALL: [Element; 8] = [
        Element { axis: 0, swap: false },
        Element { axis: 1, swap: false },
        Element { axis: 2, swap: false },
        Element { axis: 3, swap: false },
        Element { axis: 0, swap: true },
        Element { axis: 1, swap: true },
        Element { axis: 2, swap: true },
        Element { axis: 3, swap: true },
    ];

    pub fn name(self) -> String {
        let r = if self.axis == 0 { "E".to_string() } else { format!("C2({})", self.axis) };
        if self.swap {
            format!("P {r}")
        } else {
            r
        }
    }
}

/// Monomial matrix: `U e_j = sign[j] e_{image[j]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedPerm {
    pub image: Vec<usize>,
    pub sign: Vec<f64>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { image: (0..n).collect(), sign: vec![1.0; n] }
    }

    /// Exchange of the two tensor factors of an `n*n` space.
    pub fn swap(n: usize) -> Self {
        let image = (0..n * n).map(|j| (j % n) * n + j / n).collect();
        SignedPerm { image, sign: vec![1.0; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    /// Reads a dense matrix whose entries are 0 or +-1 up to `tol`.
    pub fn from_dense(m: &Mat, tol: f64) -> Result<Self> {
        let n = m.ncols();
        let mut image = Vec::with_capacity(n);
        let mut sign = Vec::with_capacity(n);
        for j in 0..n {
            let mut hit = None;
            for i in 0..m.nrows() {
                let v = m[(i, j)];
                if (v.abs() - 1.0).abs() <= tol {
                    if hit.is_some() {
                        return Err(Error::NotMonomial(format!("column {j} has two unit entries")));
                    }
                    hit = Some((i, v.signum()));
                } else if v.abs() > tol {
                    return Err(Error::NotMonomial(format!("entry ({i},{j}) = {v}")));
                }
            }
            let (i, s) = hit.ok_or_else(|| Error::NotMonomial(format!("column {j} is empty")))?;
            image.push(i);
            sign.push(s);
        }
        Ok(SignedPerm { image, sign })
    }

    pub fn to_dense(&self) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for j in 0..n {
            m[(self.image[j], j)] = self.sign[j];
        }
        m
    }

    pub fn kron(&self, other: &SignedPerm) -> SignedPerm {
        let n2 = other.dim();
        let mut image = Vec::with_capacity(self.dim() * n2);
        let mut sign = Vec::with_capacity(self.dim() * n2);
        for j1 in 0..self.dim() {
            for j2 in 0..n2 {
                image.push(self.image[j1] * n2 + other.image[j2]);
                sign.push(self.sign[j1] * other.sign[j2]);
            }
        }
        SignedPerm { image, sign }
    }

    /// `self * other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let image = other.image.iter().map(|&k| self.image[k]).collect();
        let sign = other.image.iter().zip(&other.sign).map(|(&k, &s)| s * self.sign[k]).collect();
        SignedPerm { image, sign }
    }

    /// `U * m`.
    pub fn left_mul(&self, m: &Mat) -> Mat {
        let mut out = Mat::zeros(m.nrows(), m.ncols());
        for j in 0..self.dim() {
            let row = m.row(j) * self.sign[j];
            out.set_row(self.image[j], &row);
        }
        out
    }

    /// `m * U`.
    pub fn right_mul(&self, m: &Mat) -> Mat {
        let mut out = Mat::zeros(m.nrows(), m.ncols());
        for j in 0..self.dim() {
            let col = m.column(self.image[j]) * self.sign[j];
            out.set_column(j, &col);
        }
        out
    }

    /// Frobenius norm of `U m - m U`.
    pub fn commutator_norm(&self, m: &Mat) -> f64 {
        (self.left_mul(m) - self.right_mul(m)).norm()
    }
}

/// `exp(-i pi s_axis)` from the spectral decomposition of `s_axis^2`:
/// eigenvalue m^2 maps to (-1)^m.
pub fn pi_rotation(ops: &SpinOperators, axis: usize) -> Mat {
    let sq = match axis {
        1 => &ops.s1 * &ops.s1,
        2 => ops.s2_squared(),
        3 => &ops.s3 * &ops.s3,
        _ => panic!("axis must be 1, 2 or 3"),
    };
    let eig = sq.symmetric_eigen();
    let phase = eig.eigenvalues.map(|l| {
        let m = (l.max(0.0) / (ops.scale * ops.scale)).sqrt().round() as i64;
        if m % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    });
    let v = &eig.eigenvectors;
    v * Mat::from_diagonal(&phase) * v.transpose()
}

#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    pub spin: u32,
    /// Single-spin pi-rotations for axes 1..3.
    pub single: [Mat; 3],
    /// Product-space operators in `Element::ALL` order.
    pub elements: Vec<(Element, SignedPerm)>,
}

impl SymmetryGroup {
    pub fn dim(&self) -> usize {
        self.elements[0].1.dim()
    }

    pub fn op(&self, e: Element) -> &SignedPerm {
        &self.elements.iter().find(|(x, _)| *x == e).unwrap().1
    }

    pub fn matrix(&self, e: Element) -> Mat {
        self.op(e).to_dense()
    }

    /// Rows are irreps in `IrrepLabel::ALL` order, columns elements in `Element::ALL` order.
    pub fn character_table() -> [[i8; 8]; 8] {
        let mut t = [[0i8; 8]; 8];
        for (i, l) in IrrepLabel::ALL.iter().enumerate() {
            for (j, e) in Element::ALL.iter().enumerate() {
                t[i][j] = l.character(*e) as i8;
            }
        }
        t
    }
}

pub fn build_group(spin: u32) -> Result<SymmetryGroup> {
    let ops = spin_matrices(spin);
    let n = ops.dim();
    let single = [1, 2, 3].map(|k| pi_rotation(&ops, k));
    let mut rot = vec![SignedPerm::identity(n * n)];
    for u in &single {
        let p = SignedPerm::from_dense(u, 1e-8)?;
        rot.push(p.kron(&p));
    }
    let swap = SignedPerm::swap(n);
    let elements = Element::ALL
        .iter()
        .map(|&e| {
            let r = &rot[e.axis];
            let op = if e.swap { swap.compose(r) } else { r.clone() };
            (e, op)
        })
        .collect();
    Ok(SymmetryGroup { spin, single, elements })
}

#[derive(Debug, Clone)]
pub struct Projector {
    pub irrep: IrrepLabel,
    pub matrix: Mat,
    pub dimension_count: usize,
}

impl Projector {
    /// `P * m` without a dense product.
    pub fn apply(&self, group: &SymmetryGroup, m: &Mat) -> Mat {
        let mut out = Mat::zeros(m.nrows(), m.ncols());
        for (e, op) in &group.elements {
            out += op.left_mul(m) * (self.irrep.character(*e) / 8.0);
        }
        out
    }
}

pub fn projectors(group: &SymmetryGroup) -> Vec<Projector> {
    let n = group.dim();
    IrrepLabel::ALL
        .iter()
        .map(|&irrep| {
            let mut matrix = Mat::zeros(n, n);
            for (e, op) in &group.elements {
                let c = irrep.character(*e) / 8.0;
                for j in 0..n {
                    matrix[(op.image[j], j)] += c * op.sign[j];
                }
            }
            let dimension_count = matrix.trace().round() as usize;
            Projector { irrep, matrix, dimension_count }
        })
        .collect()
}

/// Orthonormal basis of the projector's range, one column per state.
pub fn block_basis(projector: &Projector) -> Result<Mat> {
    let p = &projector.matrix;
    let n = p.nrows();
    let mut basis: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(projector.dimension_count);
    for j in 0..n {
        let mut v = p.column(j).clone_owned();
        if v.norm() < 1e-6 {
            continue;
        }
        let nz: Vec<usize> = (0..n).filter(|&i| v[i] != 0.0).collect();
        for b in &basis {
            let c: f64 = nz.iter().map(|&i| b[i] * v[i]).sum();
            if c != 0.0 {
                v.axpy(-c, b, 1.0);
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            basis.push(v / norm);
        }
    }
    if basis.len() != projector.dimension_count {
        return Err(Error::RankMismatch {
            irrep: projector.irrep.to_string(),
            rank: basis.len(),
            trace: projector.dimension_count,
        });
    }
    Ok(Mat::from_columns(&basis))
}

/// `B^T m B`.
pub fn restrict(basis: &Mat, m: &Mat) -> Mat {
    basis.transpose() * (m * basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &Mat) -> f64 {
        m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Closed forms: U3 = diag((-1)^m), U1 = (-1)^S flip, U2 = (-1)^(S-m) |-m><m|.
    fn closed_form(spin: u32, axis: usize) -> Mat {
        let n = 2 * spin as usize + 1;
        let s = spin as i64;
        let sgn = |k: i64| if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let mut u = Mat::zeros(n, n);
        for j in 0..n {
            let m = s - j as i64;
            match axis {
                1 => u[(n - 1 - j, j)] = sgn(s),
                2 => u[(n - 1 - j, j)] = sgn(s - m),
                _ => u[(j, j)] = sgn(m),
            }
        }
        u
    }

    #[test]
    fn pi_rotations_match_closed_form() {
        for spin in [1, 2, 5, 15] {
            let g = build_group(spin).unwrap();
            for axis in 1..=3 {
                let d = max_abs(&(&g.single[axis - 1] - closed_form(spin, axis)));
                assert!(d < 1e-10, "S={spin} axis {axis}: {d}");
            }
        }
    }

    #[test]
    fn c2_3_diagonal_spin_one() {
        let g = build_group(1).unwrap();
        let u = g.matrix(Element { axis: 3, swap: false });
        for i in 0..3 {
            for j in 0..3 {
                let k = i * 3 + j;
                let expected = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(u[(k, k)], expected);
            }
        }
        assert_eq!(max_abs(&(u.clone() - Mat::from_diagonal(&u.diagonal()))), 0.0);
    }

    #[test]
    fn group_axioms() {
        let g = build_group(2).unwrap();
        let id = Mat::identity(25, 25);
        for (_, a) in &g.elements {
            let d = a.to_dense();
            assert_eq!(&d * &d, id);
            for (_, b) in &g.elements {
                let e = b.to_dense();
                assert_eq!(&d * &e, &e * &d);
            }
        }
        let swap = g.matrix(Element { axis: 0, swap: true });
        assert_eq!(&swap * &swap, id);
    }

    #[test]
    fn character_table_orthogonal() {
        let t = SymmetryGroup::character_table();
        for i in 0..8 {
            for j in 0..8 {
                let dot: i32 = (0..8).map(|k| t[i][k] as i32 * t[j][k] as i32).sum();
                assert_eq!(dot, if i == j { 8 } else { 0 });
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        for l in IrrepLabel::ALL {
            assert_eq!(l.to_string().parse::<IrrepLabel>().unwrap(), l);
        }
        assert_eq!("b1a".parse::<IrrepLabel>().unwrap().to_string(), "B1_a");
        assert!("C_s".parse::<IrrepLabel>().is_err());
    }

    #[test]
    fn signed_perm_products_match_dense() {
        let g = build_group(2).unwrap();
        let m = Mat::from_fn(25, 25, |i, j| ((i * 7 + j * 3) % 11) as f64 - 5.0);
        for (_, op) in &g.elements {
            let d = op.to_dense();
            assert_eq!(op.left_mul(&m), &d * &m);
            assert_eq!(op.right_mul(&m), &m * &d);
        }
    }

    #[test]
    fn projector_traces_small_spin() {
        let g = build_group(1).unwrap();
        let ps = projectors(&g);
        let total: usize = ps.iter().map(|p| p.dimension_count).sum();
        assert_eq!(total, 9);
        for p in &ps {
            assert!((p.matrix.trace() - p.dimension_count as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn projector_traces_brute_force() {
        // bin the joint sign pattern of all 8 operators on a common eigenbasis
        let g = build_group(2).unwrap();
        let ps = projectors(&g);
        let dense: Vec<Mat> = g.elements.iter().map(|(_, o)| o.to_dense()).collect();
        let mut generic = Mat::zeros(25, 25);
        for (k, d) in dense.iter().enumerate() {
            generic += d * (1.0 + 0.37 * k as f64 + 0.011 * (k * k) as f64);
        }
        let eig = generic.symmetric_eigen();
        let mut counts = [0usize; 8];
        for c in 0..25 {
            let v = eig.eigenvectors.column(c);
            let chars: Vec<f64> = dense.iter().map(|d| v.dot(&(d * v))).collect();
            let idx = IrrepLabel::ALL
                .iter()
                .position(|l| {
                    Element::ALL.iter().zip(&chars).all(|(e, x)| (l.character(*e) - x).abs() < 1e-8)
                })
                .expect("eigenvector with a pure character");
            counts[idx] += 1;
        }
        for (p, c) in ps.iter().zip(counts) {
            assert_eq!(p.dimension_count, c, "{}", p.irrep);
        }
    }

    #[test]
    fn block_basis_orthonormal_and_invariant() {
        let g = build_group(3).unwrap();
        for p in projectors(&g) {
            let b = block_basis(&p).unwrap();
            assert_eq!(b.ncols(), p.dimension_count);
            let btb = b.transpose() * &b;
            assert!(max_abs(&(btb - Mat::identity(b.ncols(), b.ncols()))) < 1e-12);
            assert!(max_abs(&(&p.matrix * &b - &b)) < 1e-10);
        }
    }

    #[test]
    fn projector_apply_matches_dense() {
        let g = build_group(2).unwrap();
        let ps = projectors(&g);
        let m = Mat::from_fn(25, 25, |i, j| (i as f64 - j as f64).sin());
        for p in &ps {
            assert!(max_abs(&(p.apply(&g, &m) - &p.matrix * &m)) < 1e-14);
        }
    }
}
