//! Linear systems whose nonsingularity rules out spinor solutions for the
//! non-realized canonical forms of A.

use crate::algebra::{c, Mat4, C64};
use crate::error::{Error, Result};

/// A 4×4 homogeneous system with its determinant factorizations.
#[derive(Debug, Clone, PartialEq)]
pub struct AppendixSystem {
    pub matrix: Mat4,
    /// Value of the factorization as it is usually quoted for this system.
    pub printed_det: f64,
    /// Value of a factorization that agrees with the matrix.
    pub factored_det: f64,
}

impl AppendixSystem {
    pub fn determinant(&self) -> C64 {
        self.matrix.determinant()
    }

    /// |det − printed| / max(|printed|, tiny).
    pub fn printed_relative_error(&self) -> f64 {
        relative(self.determinant(), self.printed_det)
    }

    pub fn factored_relative_error(&self) -> f64 {
        relative(self.determinant(), self.factored_det)
    }
}

fn relative(det: C64, want: f64) -> f64 {
    (det - c(want, 0.0)).norm() / want.abs().max(f64::MIN_POSITIVE)
}

/// System in (K, L, M, N) for the forms with a₃ = 0 and m ≠ ½.
///
/// The quoted factorization carries the last two factors to the first power;
/// the determinant of the matrix has them squared.
pub fn case123_system(m: f64, a1: f64, a2: f64) -> Result<AppendixSystem> {
    if (m - 0.5).abs() < 1e-12 {
        return Err(Error::InvalidArgument("m = 1/2 uses the separate half-mass system".into()));
    }
    let s = a1 * a1 + a2 * a2;
    let p = c(4.0 * m * m * (-2.0 * m - 1.0) + s * (1.0 - 2.0 * m), 0.0);
    let q = c(4.0 * m * m * (1.0 - 2.0 * m) + s * (-2.0 * m - 1.0), 0.0);
    let u = c(2.0 * a1 * a2 * (1.0 - 2.0 * m), 0.0);
    let v = c(2.0 * a1 * a2 * (2.0 * m + 1.0), 0.0);
    let x = c(0.0, 4.0 * a1 * m);
    let y = c(0.0, 4.0 * a2 * m);
    #[rustfmt::skip]
    let matrix = Mat4::new(
        p,  -x, u,  y,
        x,  q,  y,  v,
        u,  -y, p,  x,
        -y, v,  -x, q,
    );
    let base = (1.0 + 2.0 * m).powi(2) * (1.0 - 2.0 * m).powi(2);
    let f1 = (a1 - a2).powi(2) + 4.0 * m * m;
    let f2 = (a1 + a2).powi(2) + 4.0 * m * m;
    Ok(AppendixSystem { matrix, printed_det: base * f1 * f2, factored_det: base * f1 * f1 * f2 * f2 })
}

/// System in (G, C, L, N) for m = ½. Entry (3,4) is −2a₁a₂, matching the
/// symmetry of the remaining couplings.
pub fn mhalf_system(a1: f64, a2: f64) -> AppendixSystem {
    let s = c(1.0 - a1 * a1 - a2 * a2, 0.0);
    let r = c(2.0 * a1 * a2, 0.0);
    let i1 = c(0.0, 2.0 * a1);
    let i2 = c(0.0, 2.0 * a2);
    #[rustfmt::skip]
    let matrix = Mat4::new(
        s,  r,   i2,  i1,
        r,  s,   -i1, -i2,
        i2, -i1, s,   -r,
        i1, -i2, -r,  s,
    );
    let det = (1.0 + (a1 - a2).powi(2)).powi(2) * (1.0 + (a1 + a2).powi(2)).powi(2);
    AppendixSystem { matrix, printed_det: det, factored_det: det }
}

/// System in (K, L, M, N) for the forms with three nonzero values and m ≠ 0.
pub fn case789_system(m: f64, a1: f64, a2: f64, a3: f64) -> AppendixSystem {
    let s = c(a1 * a1 + a2 * a2 + a3 * a3 + 4.0 * m * m, 0.0);
    let i12 = c(0.0, 2.0 * a1 * a2);
    let i13 = c(0.0, 2.0 * a1 * a3);
    let r23 = c(2.0 * a2 * a3, 0.0);
    #[rustfmt::skip]
    let matrix = Mat4::new(
        s,    i12,  r23,  -i13,
        -i12, s,    -i13, -r23,
        r23,  i13,  s,    -i12,
        i13,  -r23, i12,  s,
    );
    let m2 = 4.0 * m * m;
    let det = ((a1 + a2 + a3).powi(2) + m2)
        * ((a1 - a2 + a3).powi(2) + m2)
        * ((a1 + a2 - a3).powi(2) + m2)
        * ((-a1 + a2 + a3).powi(2) + m2);
    AppendixSystem { matrix, printed_det: det, factored_det: det }
}
