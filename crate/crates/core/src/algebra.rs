//! Constant matrices and elementary su(2) operations.
//!
//! Index conventions used throughout the crate:
//! * spacetime indices μ = 0..3 with metric η = diag(1, -1, -1, -1);
//! * su(2) indices a = 0..2 internally (1..3 in the public constructors);
//! * τ¹ = σ³/(2i), τ² = σ¹/(2i), τ³ = σ²/(2i), so that [τ¹, τ²] = τ³ cyclically.

use nalgebra::{DMatrix, DimName, Matrix2, Matrix4, Matrix4x2, Matrix4x3, OMatrix};

use crate::error::{Error, Result};

pub use nalgebra::Complex;

pub type C64 = Complex<f64>;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;
/// A 4×2 spinor matrix Ψ.
pub type Spinor = Matrix4x2<C64>;
/// Real 4×3 component matrix, row μ, column a.
pub type Potential = Matrix4x3<f64>;
pub type ComplexMatrix = DMatrix<C64>;
pub type RealMatrix = DMatrix<f64>;

/// Diagonal of the Minkowski metric.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];
/// Diagonal of ω = γ⁰.
pub const OMEGA: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

/// Relative tolerance for su(2) membership tests.
pub const ALGEBRA_TOL: f64 = 1e-10;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Diagonal indefinite form with `p` entries +1 followed by `q` entries -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metric {
    pub p: usize,
    pub q: usize,
}

impl Metric {
    pub const fn new(p: usize, q: usize) -> Self {
        Metric { p, q }
    }

    /// η, signature (1, 3).
    pub const fn minkowski() -> Self {
        Metric { p: 1, q: 3 }
    }

    /// ω = diag(1, 1, -1, -1), signature (2, 2).
    pub const fn omega() -> Self {
        Metric { p: 2, q: 2 }
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn sign(&self, i: usize) -> f64 {
        if i < self.p {
            1.0
        } else {
            -1.0
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.sign(i)).collect()
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Pauli matrix σ^index, index in 1..=3.
pub fn pauli(index: usize) -> Result<Mat2> {
    match index {
        1 => Ok(Mat2::new(ZERO, ONE, ONE, ZERO)),
        2 => Ok(Mat2::new(ZERO, -I, I, ZERO)),
        3 => Ok(Mat2::new(ONE, ZERO, ZERO, -ONE)),
        _ => Err(Error::InvalidArgument(format!(
            "Pauli index must be 1, 2 or 3, got {index}"
        ))),
    }
}

/// Dirac matrix γ^index in the standard representation, index in 0..=3.
pub fn gamma(index: usize) -> Result<Mat4> {
    let mut g = Mat4::zeros();
    match index {
        0 => {
            for i in 0..4 {
                g[(i, i)] = c(OMEGA[i], 0.0);
            }
        }
        1..=3 => {
            let s = pauli(index)?;
            g.fixed_view_mut::<2, 2>(0, 2).copy_from(&s);
            g.fixed_view_mut::<2, 2>(2, 0).copy_from(&(-s));
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "gamma index must be in 0..=3, got {index}"
            )))
        }
    }
    Ok(g)
}

/// All four γ^μ.
pub fn gammas() -> [Mat4; 4] {
    [0, 1, 2, 3].map(|m| gamma(m).expect("valid gamma index"))
}

/// Basis element τ^index of su(2), index in 1..=3.
pub fn tau(index: usize) -> Result<SuTwo> {
    if !(1..=3).contains(&index) {
        return Err(Error::InvalidArgument(format!(
            "tau index must be 1, 2 or 3, got {index}"
        )));
    }
    let mut components = [0.0; 3];
    components[index - 1] = 1.0;
    Ok(SuTwo { components })
}

/// The three τ matrices, zero-based.
pub fn taus() -> [Mat2; 3] {
    let half_over_i = c(0.0, -0.5);
    [3, 1, 2].map(|k| pauli(k).expect("valid Pauli index") * half_over_i)
}

/// XY - YX for square matrices of equal shape.
pub fn commutator(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !x.is_square() || x.shape() != y.shape() {
        return Err(Error::InvalidArgument(format!(
            "commutator needs equal square shapes, got {:?} and {:?}",
            x.shape(),
            y.shape()
        )));
    }
    Ok(x * y - y * x)
}

/// Commutator for statically sized square matrices.
pub fn bracket<D: DimName>(x: &OMatrix<C64, D, D>, y: &OMatrix<C64, D, D>) -> OMatrix<C64, D, D>
where
    nalgebra::DefaultAllocator: nalgebra::allocator::Allocator<D, D>,
{
    x * y - y * x
}

/// Σ_a c_a τ^a with real coefficients.
pub fn su2_matrix(components: &[f64; 3]) -> Mat2 {
    let t = taus();
    t[0] * c(components[0], 0.0) + t[1] * c(components[1], 0.0) + t[2] * c(components[2], 0.0)
}

/// Σ_a c_a τ^a with complex coefficients (complexified algebra).
pub fn su2_matrix_complex(components: &[C64; 3]) -> Mat2 {
    let t = taus();
    t[0] * components[0] + t[1] * components[1] + t[2] * components[2]
}

/// Complex coefficients of a traceless 2×2 matrix in the τ basis.
/// No membership check; the trace part is discarded.
pub fn sl2_components(x: &Mat2) -> [C64; 3] {
    let t = taus();
    [0, 1, 2].map(|a| (x * t[a]).trace() * c(-2.0, 0.0))
}

/// Real τ-coefficients of an anti-Hermitian traceless matrix.
///
/// The non-su(2) part of `x`, measured relative to ‖x‖_F, must not exceed
/// `ALGEBRA_TOL`.
pub fn su2_components(x: &Mat2) -> Result<[f64; 3]> {
    let comps = [0, 1, 2].map(|a| -2.0 * (x * taus()[a]).trace().re);
    let scale = x.norm();
    if scale > 0.0 {
        let violation = (x - su2_matrix(&comps)).norm() / scale;
        if violation > ALGEBRA_TOL {
            return Err(Error::NotInAlgebra { violation });
        }
    }
    Ok(comps)
}

/// Element of su(2) stored by its τ-coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SuTwo {
    pub components: [f64; 3],
}

impl SuTwo {
    pub fn new(components: [f64; 3]) -> Self {
        SuTwo { components }
    }

    pub fn from_matrix(x: &Mat2) -> Result<Self> {
        su2_components(x).map(SuTwo::new)
    }

    pub fn matrix(&self) -> Mat2 {
        su2_matrix(&self.components)
    }

    pub fn norm(&self) -> f64 {
        self.matrix().norm()
    }
}

/// The 2×2 matrices A^μ = Σ_a A[μ][a] τ^a for every row of a component matrix.
pub fn potential_matrices(a: &Potential) -> [Mat2; 4] {
    [0, 1, 2, 3].map(|mu| su2_matrix(&[a[(mu, 0)], a[(mu, 1)], a[(mu, 2)]]))
}

/// Component matrix from four su(2) matrices, without a membership check.
pub(crate) fn components_of(ms: &[Mat2; 4]) -> Potential {
    let t = taus();
    Potential::from_fn(|mu, a| -2.0 * (ms[mu] * t[a]).trace().re)
}
