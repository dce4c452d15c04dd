//! The commuting integrals X, Y as real symmetric matrices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spin::{spin_matrices, Mat, SpinOperators};

/// Smallest admissible |1-a-b|.
pub const SINGULAR_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub a: f64,
    pub b: f64,
    pub spin: u32,
}

impl ModelParams {
    pub fn new(a: f64, b: f64, spin: u32) -> Result<Self> {
        check_params(a, b)?;
        if spin == 0 {
            return Err(Error::SpinTooSmall {
                spin,
                min: 1,
                context: "the two-spin model",
            });
        }
        Ok(ModelParams { a, b, spin })
    }

    pub fn coupling(&self) -> Coupling {
        Coupling::new(self.a, self.b)
    }

    pub fn dim(&self) -> usize {
        let n = 2 * self.spin as usize + 1;
        n * n
    }
}

pub fn check_params(a: f64, b: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite parameters a={a}, b={b}")));
    }
    if (1.0 - a - b).abs() <= SINGULAR_GUARD {
        return Err(Error::SingularParams { a, b });
    }
    Ok(())
}

/// Coefficients of X and Y written as
/// `X = sum_i x_i s_i t_i`, `Y = sum_i p_i (s_i^2 + t_i^2) + q_i s_i t_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl Coupling {
    /// Callers are expected to have run `check_params`.
    pub fn new(a: f64, b: f64) -> Self {
        let c = 1.0 - a - b;
        Coupling {
            a,
            b,
            alpha: (a - b - 1.0) / c,
            beta: (b - a - 1.0) / c,
        }
    }

    pub fn x(&self) -> [f64; 3] {
        [1.0, self.alpha, self.beta]
    }

    pub fn p(&self) -> [f64; 3] {
        [0.0, self.b * (1.0 - self.a), self.a * (1.0 - self.b)]
    }

    pub fn q(&self) -> [f64; 3] {
        let p = self.p();
        [0.0, 2.0 * p[1] * self.beta, 2.0 * p[2] * self.alpha]
    }
}

/// Building blocks `s_i t_i` and `s_i^2 + t_i^2` on the product space.
struct Blocks {
    st: [Mat; 3],
    sq: [Mat; 3],
}

fn blocks(ops: &SpinOperators) -> Blocks {
    let n = ops.dim();
    let id = Mat::identity(n, n);
    let sq1 = [&ops.s1 * &ops.s1, ops.s2_squared(), &ops.s3 * &ops.s3];
    Blocks {
        st: [
            ops.s1.kronecker(&ops.s1),
            -ops.a2.kronecker(&ops.a2),
            ops.s3.kronecker(&ops.s3),
        ],
        sq: sq1.map(|m| m.kronecker(&id) + id.kronecker(&m)),
    }
}

#[derive(Debug, Clone)]
pub struct ModelOperators {
    pub x: Mat,
    pub y: Mat,
    pub params: ModelParams,
}

impl ModelOperators {
    pub fn dim(&self) -> usize {
        self.x.nrows()
    }
}

pub fn build_xy(params: &ModelParams) -> Result<ModelOperators> {
    check_params(params.a, params.b)?;
    let ops = spin_matrices(params.spin).unit_casimir_scale()?;
    let bl = blocks(&ops);
    let c = params.coupling();
    let n = bl.st[0].nrows();
    let mut x = Mat::zeros(n, n);
    let mut y = Mat::zeros(n, n);
    for i in 0..3 {
        x += &bl.st[i] * c.x()[i];
        if i > 0 {
            y += &bl.sq[i] * c.p()[i] + &bl.st[i] * c.q()[i];
        }
    }
    Ok(ModelOperators { x, y, params: *params })
}

/// The a=2, b=1 operators with the unfolded integral `Y' = (s2+t2)/2`.
#[derive(Debug, Clone)]
pub struct LimitingOperators {
    pub spin: u32,
    pub x: Mat,
    /// Real antisymmetric `K` with `Y' = i K`.
    pub yprime: Mat,
    /// `Y = -Y'^2 = K^2`.
    pub y: Mat,
}

pub fn build_limiting(spin: u32) -> Result<LimitingOperators> {
    let ops = spin_matrices(spin).unit_casimir_scale()?;
    let bl = blocks(&ops);
    let n = ops.dim();
    let id = Mat::identity(n, n);
    let yprime = (ops.a2.kronecker(&id) + id.kronecker(&ops.a2)) * 0.5;
    let y = -(&bl.sq[1] + &bl.st[1] * 2.0) * 0.25;
    Ok(LimitingOperators {
        spin,
        x: &bl.st[0] + &bl.st[2],
        yprime,
        y,
    })
}
