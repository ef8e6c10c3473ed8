//! Constant field configurations: current, Yang–Mills left-hand side,
//! strength, F², residuals and the zero-current conditions.

use crate::algebra::{
    bracket, c, components_of, gammas, potential_matrices, su2_matrix, Mat2, Mat4, Potential, Spinor, SuTwo, C64,
    ETA, I,
};
use crate::error::{Error, Result};

/// Candidate constant solution (Ψ, A, m).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldConfiguration {
    pub psi: Spinor,
    /// Components A^μ_a: row μ, column a.
    pub potential: Potential,
    pub mass: f64,
}

impl FieldConfiguration {
    pub fn new(psi: Spinor, potential: Potential, mass: f64) -> Result<Self> {
        if !(mass >= 0.0 && mass.is_finite()) {
            return Err(Error::InvalidArgument(format!("mass must be finite and non-negative, got {mass}")));
        }
        if psi.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) || potential.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("configuration has non-finite entries".into()));
        }
        Ok(FieldConfiguration { psi, potential, mass })
    }

    pub fn vacuum(mass: f64) -> Result<Self> {
        Self::new(Spinor::zeros(), Potential::zeros(), mass)
    }
}

/// An su(2)-valued vector indexed by μ, e.g. J^ν or H^ν.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentMatrix {
    /// Components J^μ_a: row μ, column a.
    pub components: Potential,
    /// The 2×2 matrices J^μ as computed.
    pub matrices: [Mat2; 4],
}

impl CurrentMatrix {
    fn from_matrices(matrices: [Mat2; 4]) -> Self {
        CurrentMatrix { components: components_of(&matrices), matrices }
    }

    pub fn su2_form(&self) -> [SuTwo; 4] {
        [0, 1, 2, 3].map(|mu| SuTwo::new([self.components[(mu, 0)], self.components[(mu, 1)], self.components[(mu, 2)]]))
    }

    /// max_μ ‖X^μ‖_F.
    pub fn max_norm(&self) -> f64 {
        self.matrices.iter().map(|m| m.norm()).fold(0.0, f64::max)
    }
}

/// γ-matrices together with the form used to build Ψ̄ = Ψ† (form).
///
/// The standard frame uses the Dirac matrices with form γ⁰. Under Ψ → W⁻¹Ψ
/// with W ∈ SU(2,2) the γ-matrices become W⁻¹γW while the form stays ω.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaFrame {
    pub gammas: [Mat4; 4],
    pub adjoint_form: Mat4,
}

impl GammaFrame {
    pub fn standard() -> Self {
        let g = gammas();
        GammaFrame { adjoint_form: g[0], gammas: g }
    }
}

impl Default for GammaFrame {
    fn default() -> Self {
        Self::standard()
    }
}

/// J^ν = iΨ†γ⁰γ^νΨ − ½ tr(iΨ†γ⁰γ^νΨ) I.
pub fn current(psi: &Spinor) -> CurrentMatrix {
    current_in_frame(psi, &GammaFrame::standard())
}

pub fn current_in_frame(psi: &Spinor, frame: &GammaFrame) -> CurrentMatrix {
    let bar = psi.adjoint() * frame.adjoint_form;
    CurrentMatrix::from_matrices([0, 1, 2, 3].map(|nu| {
        let m = bar * frame.gammas[nu] * psi * I;
        let half_trace = m.trace() * c(0.5, 0.0);
        m - Mat2::identity() * half_trace
    }))
}

/// H^ν = [A_μ, [A^μ, A^ν]] summed over μ.
pub fn ym_lhs(potential: &Potential) -> CurrentMatrix {
    let a = potential_matrices(potential);
    CurrentMatrix::from_matrices([0, 1, 2, 3].map(|nu| {
        let mut h = Mat2::zeros();
        for mu in 0..4 {
            h += bracket(&a[mu], &bracket(&a[mu], &a[nu])) * c(ETA[mu], 0.0);
        }
        h
    }))
}

/// F^{μν} = −[A^μ, A^ν] for μ < ν, in the order 01, 02, 03, 12, 13, 23.
pub fn strength(potential: &Potential) -> [(usize, usize, SuTwo); 6] {
    let a = potential_matrices(potential);
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    pairs.map(|(mu, nu)| {
        let f = -bracket(&a[mu], &a[nu]);
        (mu, nu, SuTwo::new(components_of(&[f, Mat2::zeros(), Mat2::zeros(), Mat2::zeros()]).row(0).transpose().into()))
    })
}

/// F² = F_{μν}F^{μν} as a 2×2 matrix.
pub fn f2_invariant(potential: &Potential) -> Mat2 {
    let mut f2 = Mat2::zeros();
    for (mu, nu, f) in strength(potential) {
        let m = f.matrix();
        f2 += m * m * c(2.0 * ETA[mu] * ETA[nu], 0.0);
    }
    f2
}

/// iγ^μΨA_μ − mΨ.
pub fn dirac_lhs(cfg: &FieldConfiguration, frame: &GammaFrame) -> Spinor {
    let a = potential_matrices(&cfg.potential);
    let mut t = -cfg.psi * c(cfg.mass, 0.0);
    for mu in 0..4 {
        t += frame.gammas[mu] * cfg.psi * a[mu] * c(0.0, ETA[mu]);
    }
    t
}

/// ‖iγ^μΨA_μ − mΨ‖_F.
pub fn dirac_residual(cfg: &FieldConfiguration) -> f64 {
    dirac_lhs(cfg, &GammaFrame::standard()).norm()
}

/// Result of checking the constant field equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// max_ν ‖H^ν − J^ν‖_F.
    pub ym_residual: f64,
    /// ‖iγ^μΨA_μ − mΨ‖_F.
    pub dirac_residual: f64,
    /// `ym_residual` divided by max(1, max_ν ‖H^ν‖, max_ν ‖J^ν‖).
    pub ym_relative: f64,
    /// `dirac_residual` divided by max(1, ‖Ψ‖·(m + ‖A‖)).
    pub dirac_relative: f64,
    pub tol: f64,
    pub is_solution: bool,
}

pub fn verify(cfg: &FieldConfiguration, tol: f64) -> ResidualReport {
    verify_in_frame(cfg, &GammaFrame::standard(), tol)
}

pub fn verify_in_frame(cfg: &FieldConfiguration, frame: &GammaFrame, tol: f64) -> ResidualReport {
    let h = ym_lhs(&cfg.potential);
    let j = current_in_frame(&cfg.psi, frame);
    let ym = (0..4).map(|nu| (h.matrices[nu] - j.matrices[nu]).norm()).fold(0.0, f64::max);
    let dirac = dirac_lhs(cfg, frame).norm();
    let ym_scale = 1f64.max(h.max_norm()).max(j.max_norm());
    let dirac_scale = 1f64.max(cfg.psi.norm() * (cfg.mass + cfg.potential.norm()));
    ResidualReport {
        ym_residual: ym,
        dirac_residual: dirac,
        ym_relative: ym / ym_scale,
        dirac_relative: dirac / dirac_scale,
        tol,
        is_solution: ym < tol && dirac < tol,
    }
}

/// ‖Σ_ν [A_ν, J^ν]‖_F, which vanishes for solutions.
pub fn conservation_residual(cfg: &FieldConfiguration) -> f64 {
    let a = potential_matrices(&cfg.potential);
    let j = current(&cfg.psi);
    let mut s = Mat2::zeros();
    for nu in 0..4 {
        s += bracket(&a[nu], &j.matrices[nu]) * c(ETA[nu], 0.0);
    }
    s.norm()
}

/// Named residual magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NamedResidual {
    pub name: &'static str,
    pub value: f64,
}

/// Entries of Ψ = [[G, B], [C, D], [K, L], [M, N]].
#[derive(Debug, Clone, Copy)]
pub struct SpinorEntries {
    pub g: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub k: C64,
    pub l: C64,
    pub m: C64,
    pub n: C64,
}

impl SpinorEntries {
    pub fn of(psi: &Spinor) -> Self {
        SpinorEntries {
            g: psi[(0, 0)],
            b: psi[(0, 1)],
            c: psi[(1, 0)],
            d: psi[(1, 1)],
            k: psi[(2, 0)],
            l: psi[(2, 1)],
            m: psi[(3, 0)],
            n: psi[(3, 1)],
        }
    }

    pub fn spinor(&self) -> Spinor {
        Spinor::new(self.g, self.b, self.c, self.d, self.k, self.l, self.m, self.n)
    }
}

/// The seven scalar conditions that together are equivalent to J = 0.
///
/// Complex conditions report their modulus; the last one reports
/// |X³| = 2|Re(K̄G − M̄C − L̄B + N̄D)|.
pub fn zero_current_conditions(psi: &Spinor) -> [NamedResidual; 7] {
    let SpinorEntries { g, b, c: cc, d, k, l, m, n } = SpinorEntries::of(psi);
    let balance = g.norm_sqr() + cc.norm_sqr() + k.norm_sqr() + m.norm_sqr()
        - b.norm_sqr()
        - d.norm_sqr()
        - l.norm_sqr()
        - n.norm_sqr();
    [
        NamedResidual { name: "norm_balance", value: balance.abs() },
        NamedResidual { name: "x12_bilinear", value: (m.conj() * g + cc.conj() * k - n.conj() * b - d.conj() * l).norm() },
        NamedResidual { name: "y3_bilinear", value: (l.conj() * g - n.conj() * cc + b.conj() * k - d.conj() * m).norm() },
        NamedResidual { name: "y0_bilinear", value: (g.conj() * b + cc.conj() * d + k.conj() * l + m.conj() * n).norm() },
        NamedResidual { name: "upper_pair", value: (n.conj() * g + d.conj() * k).norm() },
        NamedResidual { name: "lower_pair", value: (l.conj() * cc + b.conj() * m).norm() },
        NamedResidual {
            name: "x3_real_part",
            value: 2.0 * (k.conj() * g - m.conj() * cc - l.conj() * b + n.conj() * d).re.abs(),
        },
    ]
}

/// Whether every zero-current condition is below `tol`.
pub fn zero_current_holds(psi: &Spinor, tol: f64) -> bool {
    zero_current_conditions(psi).iter().all(|r| r.value < tol)
}

/// Ψ†ωΨ.
pub fn spinor_gram(psi: &Spinor) -> Mat2 {
    psi.adjoint() * gammas()[0] * psi
}

/// Su(2) matrix for a potential row, exposed for callers building fields.
pub fn potential_row(potential: &Potential, mu: usize) -> Mat2 {
    su2_matrix(&[potential[(mu, 0)], potential[(mu, 1)], potential[(mu, 2)]])
}
