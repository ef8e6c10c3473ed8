//! Group elements, the two-sheeted covers SU(2)→SO(3) and Pin(1,3)→O(1,3),
//! the SU(2,2) action and their application to configurations.

use nalgebra::{Matrix3, Matrix4};
use rand::Rng;

use crate::algebra::{c, gammas, su2_matrix, taus, Mat2, Mat4, C64, ETA, I, OMEGA};
use crate::error::{Error, Result};
use crate::fields::{FieldConfiguration, GammaFrame};

const GROUP_TOL: f64 = 1e-10;

/// Element of SU(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2(Mat2);

/// Element of SO(3) acting on τ-components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct So3(Matrix3<f64>);

/// Element of O(1,3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lorentz(Matrix4<f64>);

/// Element of Pin(1,3) in the Dirac representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pin(Mat4);

/// Element of SU(2,2) preserving ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su22(Mat4);

fn invalid(kind: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidGroupElement { kind, reason: reason.into() }
}

fn omega() -> Mat4 {
    Mat4::from_diagonal(&nalgebra::Vector4::from(OMEGA.map(|v| c(v, 0.0))))
}

impl Su2 {
    pub fn new(s: Mat2) -> Result<Self> {
        let unit = (s.adjoint() * s - Mat2::identity()).norm();
        if !(unit < GROUP_TOL) {
            return Err(invalid("SU(2)", format!("‖S†S − I‖ = {unit:.3e}")));
        }
        let det = s.determinant();
        if !((det - c(1.0, 0.0)).norm() < GROUP_TOL) {
            return Err(invalid("SU(2)", format!("det = {det}")));
        }
        Ok(Su2(s))
    }

    pub fn identity() -> Self {
        Su2(Mat2::identity())
    }

    /// exp(Σ θ_a τ^a).
    pub fn exp(theta: &[f64; 3]) -> Self {
        Su2(su2_matrix(theta).exp())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Su2(self.0.adjoint())
    }

    pub fn compose(&self, other: &Su2) -> Self {
        Su2(self.0 * other.0)
    }

    /// Uniform on the group: a random unit quaternion.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let q: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 0.1 && n <= 1.0 {
                return Su2(quaternion_matrix(&q.map(|v| v / n)));
            }
        }
    }
}

/// q0 I + 2 Σ q_a τ^a.
fn quaternion_matrix(q: &[f64; 4]) -> Mat2 {
    Mat2::identity() * c(q[0], 0.0) + su2_matrix(&[2.0 * q[1], 2.0 * q[2], 2.0 * q[3]])
}

impl So3 {
    pub fn new(p: Matrix3<f64>) -> Result<Self> {
        let orth = (p.transpose() * p - Matrix3::identity()).norm();
        if !(orth < 1e-9) {
            return Err(invalid("SO(3)", format!("‖PᵀP − I‖ = {orth:.3e}")));
        }
        if p.determinant() < 0.0 {
            return Err(invalid("SO(3)", "determinant is −1"));
        }
        Ok(So3(p))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }
}

impl Lorentz {
    pub fn new(q: Matrix4<f64>) -> Result<Self> {
        let eta = Matrix4::from_diagonal(&nalgebra::Vector4::from(ETA));
        let err = (q.transpose() * eta * q - eta).norm() / (1.0 + q.norm_squared());
        if !(err < GROUP_TOL) {
            return Err(invalid("O(1,3)", format!("relative ‖QᵀηQ − η‖ = {err:.3e}")));
        }
        Ok(Lorentz(q))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }
}

/// Generators of Pin(1,3). Spatial indices are 1..=3, spacetime indices 0..=3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PinGenerator {
    /// exp(φ γ⁰γ^k / 2).
    Boost { axis: usize, rapidity: f64 },
    /// exp(θ γ^j γ^k / 2).
    Rotation { axes: (usize, usize), angle: f64 },
    /// γ^μ.
    Reflection { index: usize },
}

impl Pin {
    /// Accepts T when it is invertible and conjugation keeps the real span of the γ^μ.
    pub fn new(t: Mat4) -> Result<Self> {
        let inv = t.try_inverse().ok_or_else(|| invalid("Pin(1,3)", "matrix is singular"))?;
        let scale = t.norm() * inv.norm();
        let g = gammas();
        for mu in 0..4 {
            let conj = inv * g[mu] * t;
            let mut rebuilt = Mat4::zeros();
            for nu in 0..4 {
                let q = (conj * g[nu]).trace() * c(ETA[nu] / 4.0, 0.0);
                if q.im.abs() > GROUP_TOL * scale {
                    return Err(invalid("Pin(1,3)", format!("complex coefficient {q} for γ^{mu}")));
                }
                rebuilt += g[nu] * c(q.re, 0.0);
            }
            let off = (conj - rebuilt).norm();
            if off > GROUP_TOL * scale {
                return Err(invalid("Pin(1,3)", format!("T⁻¹γ^{mu}T leaves the γ-span by {off:.3e}")));
            }
        }
        Ok(Pin(t))
    }

    pub fn identity() -> Self {
        Pin(Mat4::identity())
    }

    pub fn generator(g: PinGenerator) -> Result<Self> {
        let gm = gammas();
        let t = match g {
            PinGenerator::Boost { axis, rapidity } => {
                if !(1..=3).contains(&axis) {
                    return Err(Error::InvalidArgument(format!("boost axis must be 1..=3, got {axis}")));
                }
                (gm[0] * gm[axis] * c(rapidity / 2.0, 0.0)).exp()
            }
            PinGenerator::Rotation { axes: (j, k), angle } => {
                if !(1..=3).contains(&j) || !(1..=3).contains(&k) || j == k {
                    return Err(Error::InvalidArgument(format!("rotation axes must be distinct in 1..=3, got ({j},{k})")));
                }
                (gm[j] * gm[k] * c(angle / 2.0, 0.0)).exp()
            }
            PinGenerator::Reflection { index } => {
                if index > 3 {
                    return Err(Error::InvalidArgument(format!("reflection index must be 0..=3, got {index}")));
                }
                gm[index]
            }
        };
        Ok(Pin(t))
    }

    /// Product of generators in the given order.
    pub fn from_generators(gens: &[PinGenerator]) -> Result<Self> {
        gens.iter().try_fold(Pin::identity(), |acc, g| Ok(acc.compose(&Pin::generator(*g)?)))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn compose(&self, other: &Pin) -> Self {
        Pin(self.0 * other.0)
    }

    pub fn negate(&self) -> Self {
        Pin(-self.0)
    }

    /// Whether T†γ⁰T = +γ⁰. Elements with T†γ⁰T = −γ⁰ (spatial reflections)
    /// reverse the sign of the current relative to QA.
    pub fn preserves_dirac_adjoint(&self) -> bool {
        let g0 = gammas()[0];
        (self.0.adjoint() * g0 * self.0 - g0).norm() < GROUP_TOL * (1.0 + self.0.norm_squared())
    }
}

impl Su22 {
    pub fn new(w: Mat4) -> Result<Self> {
        let om = omega();
        let err = (w.adjoint() * om * w - om).norm() / (1.0 + w.norm_squared());
        if !(err < GROUP_TOL) {
            return Err(invalid("SU(2,2)", format!("relative ‖W†ωW − ω‖ = {err:.3e}")));
        }
        let det = w.determinant();
        if !((det - c(1.0, 0.0)).norm() < 1e-9) {
            return Err(invalid("SU(2,2)", format!("det = {det}")));
        }
        Ok(Su22(w))
    }

    pub fn identity() -> Self {
        Su22(Mat4::identity())
    }

    /// exp(iωH) for Hermitian H, after removing the ω-trace so det = 1.
    pub fn from_hermitian(h: &Mat4) -> Result<Self> {
        if (h - h.adjoint()).norm() > GROUP_TOL * (1.0 + h.norm()) {
            return Err(Error::InvalidArgument("generator is not Hermitian".into()));
        }
        let om = omega();
        let h = h - om * ((om * h).trace() * c(0.25, 0.0));
        Su22::new((om * h * I).exp())
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        let a = Mat4::from_fn(|_, _| c(rng.random_range(-scale..scale), rng.random_range(-scale..scale)));
        let h = (a + a.adjoint()) * c(0.5, 0.0);
        Su22::from_hermitian(&h).expect("exp of a Hermitian generator lies in SU(2,2)")
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }
}

/// p_ab = −2 Re tr(S⁻¹τ^a S τ^b), so that S⁻¹τ^a S = p_ab τ^b.
pub fn so3_from_su2(s: &Su2) -> So3 {
    let t = taus();
    let inv = s.0.adjoint();
    So3(Matrix3::from_fn(|a, b| -2.0 * (inv * t[a] * s.0 * t[b]).trace().re))
}

/// Preimage S = q0 I + 2 Σ q_a τ^a with the first nonzero q component positive.
pub fn su2_from_so3(p: &So3) -> Su2 {
    let m = &p.0;
    let tr = m.trace();
    // p_ab = (q0² − |q|²)δ_ab + 2 q_a q_b − 2 q0 ε_abc q_c.
    let sq = [(1.0 + tr) / 4.0, (1.0 + 2.0 * m[(0, 0)] - tr) / 4.0, (1.0 + 2.0 * m[(1, 1)] - tr) / 4.0, (1.0 + 2.0 * m[(2, 2)] - tr) / 4.0];
    let big = (0..4).max_by(|&i, &j| sq[i].total_cmp(&sq[j])).unwrap_or(0);
    let qb = sq[big].max(0.0).sqrt();
    let mut q = [0.0; 4];
    q[big] = qb;
    let anti = |a: usize, b: usize| (m[(a, b)] - m[(b, a)]) / 4.0; // −q0 ε_abc q_c
    let sym = |a: usize, b: usize| (m[(a, b)] + m[(b, a)]) / 4.0; // q_a q_b
    match big {
        0 => {
            q[1] = -anti(1, 2) / qb;
            q[2] = -anti(2, 0) / qb;
            q[3] = -anti(0, 1) / qb;
        }
        1 => {
            q[0] = -anti(1, 2) / qb;
            q[2] = sym(0, 1) / qb;
            q[3] = sym(0, 2) / qb;
        }
        2 => {
            q[0] = -anti(2, 0) / qb;
            q[1] = sym(0, 1) / qb;
            q[3] = sym(1, 2) / qb;
        }
        _ => {
            q[0] = -anti(0, 1) / qb;
            q[1] = sym(0, 2) / qb;
            q[2] = sym(1, 2) / qb;
        }
    }
    if let Some(first) = q.iter().find(|v| v.abs() > 1e-12) {
        if *first < 0.0 {
            q = q.map(|v| -v);
        }
    }
    let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    Su2(quaternion_matrix(&q.map(|v| v / n)))
}

/// q^μ_ρ = η_ρρ tr(T⁻¹γ^μ T γ^ρ)/4, so that T⁻¹γ^μT = q^μ_ρ γ^ρ.
pub fn lorentz_from_pin(t: &Pin) -> Lorentz {
    let g = gammas();
    let inv = t.0.try_inverse().expect("validated Pin elements are invertible");
    Lorentz(Matrix4::from_fn(|mu, rho| ETA[rho] * (inv * g[mu] * t.0 * g[rho]).trace().re / 4.0))
}

/// Ψ → TΨS, A → QAP with Q, P the cover images of T, S.
pub fn apply_transform(cfg: &FieldConfiguration, s: &Su2, t: &Pin) -> FieldConfiguration {
    let p = so3_from_su2(s);
    let q = lorentz_from_pin(t);
    FieldConfiguration {
        psi: t.0 * cfg.psi * s.0,
        potential: q.0 * cfg.potential * p.0,
        mass: cfg.mass,
    }
}

/// Ψ → W⁻¹ΨS, A → AP; also returns the conjugated γ-set W⁻¹γ^μW with form ω.
pub fn apply_su22(cfg: &FieldConfiguration, w: &Su22, s: &Su2) -> (FieldConfiguration, GammaFrame) {
    let p = so3_from_su2(s);
    let inv = w.0.try_inverse().expect("validated SU(2,2) elements are invertible");
    let g = gammas();
    let frame = GammaFrame { gammas: g.map(|gm| inv * gm * w.0), adjoint_form: omega() };
    let out = FieldConfiguration { psi: inv * cfg.psi * s.0, potential: cfg.potential * p.0, mass: cfg.mass };
    (out, frame)
}

/// Product of one to `max_generators` random generators (boosts with
/// |φ| ≤ 1, rotations, reflections).
pub fn random_pin<R: Rng + ?Sized>(rng: &mut R, max_generators: usize) -> (Pin, Vec<PinGenerator>) {
    let count = rng.random_range(1..=max_generators.max(1));
    let gens: Vec<PinGenerator> = (0..count)
        .map(|_| match rng.random_range(0..3) {
            0 => PinGenerator::Boost { axis: rng.random_range(1..=3), rapidity: rng.random_range(-1.0..1.0) },
            1 => {
                let j = rng.random_range(1..=3);
                let k = [1, 2, 3].into_iter().filter(|&v| v != j).nth(rng.random_range(0..2)).unwrap_or(1);
                PinGenerator::Rotation { axes: (j, k), angle: rng.random_range(-std::f64::consts::PI..std::f64::consts::PI) }
            }
            _ => PinGenerator::Reflection { index: rng.random_range(0..4) },
        })
        .collect();
    let pin = Pin::from_generators(&gens).expect("random generators use valid axes");
    (pin, gens)
}

/// Complex matrix of a real 4×4 Lorentz matrix, for callers mixing types.
pub fn lorentz_complex(q: &Lorentz) -> Mat4 {
    q.0.map(|v| C64::new(v, 0.0))
}
