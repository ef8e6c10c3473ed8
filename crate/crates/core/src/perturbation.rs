//! First-order perturbations of constant solutions.
//!
//! Plane waves A¹ = Re(α e^{−iθ}), Ψ¹ = β e^{−iθ} + δ e^{iθ} with θ = k_μ x^μ
//! turn the linearized system into a real 56×56 matrix acting on
//! (Re α, Im α, Re β, Im β, Re δ, Im δ). The output uses the same layout for
//! the e^{−iθ} coefficient of the Yang–Mills residual (ρ, with the residual
//! field Re(ρ e^{−iθ})) and the two Dirac coefficients (σ, κ).

use nalgebra::{DMatrix, DVector, Matrix4x3};
use rand::Rng;

use crate::algebra::{bracket, c, gammas, potential_matrices, sl2_components, su2_matrix, su2_matrix_complex, taus, Mat2, Potential, Spinor, C64, ETA, I};
use crate::classifier::SolutionDescriptor;
use crate::error::{Error, Result};
use crate::fields::{current, verify, FieldConfiguration};

pub const AMPLITUDE_DIM: usize = 56;
/// Residual tolerance for accepting a background.
pub const BACKGROUND_TOL: f64 = 1e-9;
/// Step of the five-point stencil in ε. The residual is cubic in ε, so the
/// stencil is exact up to rounding for any step.
const STENCIL_STEP: f64 = 0.5;
const PHASE_SAMPLES: usize = 8;
const MAX_EPSILON: f64 = 0.1;
pub const MIN_GRID_EXTENT: usize = 5;

pub type ComplexPotential = Matrix4x3<C64>;

/// Complex amplitudes (α, β, δ) of a plane-wave perturbation, or the
/// coefficients (ρ, σ, κ) of its linearized residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Amplitudes {
    pub alpha: ComplexPotential,
    pub beta: Spinor,
    pub delta: Spinor,
}

impl Amplitudes {
    pub fn zero() -> Self {
        Amplitudes { alpha: ComplexPotential::zeros(), beta: Spinor::zeros(), delta: Spinor::zeros() }
    }

    pub fn from_slice(x: &[f64]) -> Result<Self> {
        if x.len() != AMPLITUDE_DIM {
            return Err(Error::InvalidArgument(format!("expected {AMPLITUDE_DIM} amplitude entries, got {}", x.len())));
        }
        Ok(Amplitudes {
            alpha: ComplexPotential::from_fn(|r, a| c(x[3 * r + a], x[12 + 3 * r + a])),
            beta: Spinor::from_fn(|r, q| c(x[24 + 2 * r + q], x[32 + 2 * r + q])),
            delta: Spinor::from_fn(|r, q| c(x[40 + 2 * r + q], x[48 + 2 * r + q])),
        })
    }

    pub fn to_vector(&self) -> DVector<f64> {
        let mut x = DVector::zeros(AMPLITUDE_DIM);
        for r in 0..4 {
            for a in 0..3 {
                x[3 * r + a] = self.alpha[(r, a)].re;
                x[12 + 3 * r + a] = self.alpha[(r, a)].im;
            }
            for q in 0..2 {
                x[24 + 2 * r + q] = self.beta[(r, q)].re;
                x[32 + 2 * r + q] = self.beta[(r, q)].im;
                x[40 + 2 * r + q] = self.delta[(r, q)].re;
                x[48 + 2 * r + q] = self.delta[(r, q)].im;
            }
        }
        x
    }

    pub fn norm(&self) -> f64 {
        self.to_vector().norm()
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> Self {
        let v: Vec<f64> = (0..AMPLITUDE_DIM).map(|_| rng.random_range(-scale..scale)).collect();
        Self::from_slice(&v).expect("length matches")
    }
}

/// A verified constant solution used as the zeroth approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct Background {
    cfg: FieldConfiguration,
    upper: [Mat2; 4],
    lower: [Mat2; 4],
}

impl Background {
    pub fn new(cfg: &FieldConfiguration, tol: f64) -> Result<Self> {
        let rep = verify(cfg, tol);
        if !rep.is_solution {
            return Err(Error::InvalidArgument(format!(
                "background is not a constant solution (ym {:.3e}, dirac {:.3e}, tol {tol:.1e})",
                rep.ym_residual, rep.dirac_residual
            )));
        }
        let upper = potential_matrices(&cfg.potential);
        let lower = [0, 1, 2, 3].map(|mu| upper[mu] * c(ETA[mu], 0.0));
        Ok(Background { cfg: cfg.clone(), upper, lower })
    }

    pub fn from_descriptor(d: &SolutionDescriptor) -> Result<Self> {
        Self::new(&d.configuration, BACKGROUND_TOL)
    }

    pub fn configuration(&self) -> &FieldConfiguration {
        &self.cfg
    }
}

/// Real matrix of the linearized system at covector k.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperatorMatrix {
    pub matrix: DMatrix<f64>,
    pub k: [f64; 4],
}

impl LinearOperatorMatrix {
    pub fn apply(&self, amp: &Amplitudes) -> Amplitudes {
        Amplitudes::from_slice((&self.matrix * amp.to_vector()).as_slice()).expect("square 56×56 operator")
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.matrix.clone().svd(false, false).singular_values.iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }
}

fn k_squared(k: &[f64; 4]) -> f64 {
    (0..4).map(|mu| ETA[mu] * k[mu] * k[mu]).sum()
}

fn complex_rows(alpha: &ComplexPotential) -> [Mat2; 4] {
    [0, 1, 2, 3].map(|mu| su2_matrix_complex(&[alpha[(mu, 0)], alpha[(mu, 1)], alpha[(mu, 2)]]))
}

fn traceless(m: Mat2) -> Mat2 {
    m - Mat2::identity() * (m.trace() * c(0.5, 0.0))
}

/// Linearized map at covector k, with ∂_μ → −ik_μ on the e^{−iθ} mode.
pub fn apply_operator(bg: &Background, k: &[f64; 4], amp: &Amplitudes) -> Amplitudes {
    let g = gammas();
    let a0 = &bg.upper;
    let a0l = &bg.lower;
    let psi0 = &bg.cfg.psi;
    let m = bg.cfg.mass;
    let al = complex_rows(&amp.alpha);
    let al_lower = [0, 1, 2, 3].map(|mu| al[mu] * c(ETA[mu], 0.0));
    let alc = complex_rows(&amp.alpha.map(|z| z.conj()));
    let alc_lower = [0, 1, 2, 3].map(|mu| alc[mu] * c(ETA[mu], 0.0));
    let d = |mu: usize| c(0.0, -k[mu]);
    let k2 = k_squared(k);
    let div: Mat2 = (0..4).map(|mu| al[mu] * d(mu)).sum();
    let k_dot: Mat2 = (0..4).map(|mu| al[mu] * c(k[mu], 0.0)).sum();

    let mut rho = ComplexPotential::zeros();
    for nu in 0..4 {
        let k_up_nu = ETA[nu] * k[nu];
        let mut lin = al[nu] * c(-k2, 0.0) + k_dot * c(k_up_nu, 0.0) + bracket(&a0[nu], &div);
        for mu in 0..4 {
            lin -= bracket(&a0[mu], &(al[nu] * d(mu))) * c(2.0, 0.0);
            lin += bracket(&a0l[mu], &(al[mu] * c(0.0, -k_up_nu)));
            lin += bracket(&a0l[mu], &bracket(&a0[mu], &al[nu]));
            lin += bracket(&a0l[mu], &bracket(&al[mu], &a0[nu]));
            lin += bracket(&al_lower[mu], &bracket(&a0[mu], &a0[nu]));
        }
        let gg = g[0] * g[nu];
        let cur = traceless((amp.delta.adjoint() * gg * psi0 + psi0.adjoint() * gg * amp.beta) * I);
        let z = sl2_components(&(lin - cur * c(2.0, 0.0)));
        for a in 0..3 {
            rho[(nu, a)] = z[a];
        }
    }

    let half = c(0.5, 0.0);
    let mut sigma = -amp.beta * c(m, 0.0);
    let mut kappa = -amp.delta * c(m, 0.0);
    for mu in 0..4 {
        let ig = g[mu] * I;
        sigma += ig * (amp.beta * d(mu) + amp.beta * a0l[mu] + psi0 * al_lower[mu] * half);
        kappa += ig * (amp.delta * c(0.0, k[mu]) + amp.delta * a0l[mu] + psi0 * alc_lower[mu] * half);
    }
    Amplitudes { alpha: rho, beta: sigma, delta: kappa }
}

fn assemble_with(f: impl Fn(&Amplitudes) -> Amplitudes, k: [f64; 4]) -> LinearOperatorMatrix {
    let mut matrix = DMatrix::zeros(AMPLITUDE_DIM, AMPLITUDE_DIM);
    let mut e = vec![0.0; AMPLITUDE_DIM];
    for j in 0..AMPLITUDE_DIM {
        e[j] = 1.0;
        let col = f(&Amplitudes::from_slice(&e).expect("unit vector")).to_vector();
        matrix.set_column(j, &col);
        e[j] = 0.0;
    }
    LinearOperatorMatrix { matrix, k }
}

pub fn assemble_operator(bg: &Background, k: [f64; 4]) -> LinearOperatorMatrix {
    assemble_with(|a| apply_operator(bg, &k, a), k)
}

fn levi(a: usize, b: usize, c3: usize) -> f64 {
    match (a, b, c3) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// [x, y] in τ-components: [τ^a, τ^b] = ε_abc τ^c.
fn br(x: &[C64; 3], y: &[C64; 3]) -> [C64; 3] {
    let mut z = [C64::new(0.0, 0.0); 3];
    for (cc, zc) in z.iter_mut().enumerate() {
        for a in 0..3 {
            for b in 0..3 {
                let e = levi(a, b, cc);
                if e != 0.0 {
                    *zc += x[a] * y[b] * e;
                }
            }
        }
    }
    z
}

fn scale3(x: &[C64; 3], s: C64) -> [C64; 3] {
    x.map(|v| v * s)
}

fn add3(x: &[C64; 3], y: &[C64; 3]) -> [C64; 3] {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2]]
}

/// (γ^μ X T)_{rp} with T = Σ t_a τ^a, by explicit index sums.
fn gamma_right(mu: usize, x: &Spinor, t: &[C64; 3]) -> Spinor {
    let g = gammas()[mu];
    let tau = taus();
    let mut tm = Mat2::zeros();
    for a in 0..3 {
        tm += tau[a] * t[a];
    }
    Spinor::from_fn(|r, p| {
        let mut acc = C64::new(0.0, 0.0);
        for s in 0..4 {
            for q in 0..2 {
                acc += g[(r, s)] * x[(s, q)] * tm[(q, p)];
            }
        }
        acc
    })
}

fn gamma_left(mu: usize, x: &Spinor) -> Spinor {
    let g = gammas()[mu];
    Spinor::from_fn(|r, p| (0..4).map(|s| g[(r, s)] * x[(s, p)]).sum())
}

fn rows3(m: &ComplexPotential) -> [[C64; 3]; 4] {
    [0, 1, 2, 3].map(|mu| [m[(mu, 0)], m[(mu, 1)], m[(mu, 2)]])
}

/// Yang–Mills rows without the current, in τ-components.
fn ym_rows_by_components(a0: &[[C64; 3]; 4], al: &[[C64; 3]; 4], k: &[f64; 4]) -> [[C64; 3]; 4] {
    let k2 = k_squared(k);
    let zero = [C64::new(0.0, 0.0); 3];
    let mut out = [zero; 4];
    let mut div = zero;
    let mut kd = zero;
    for mu in 0..4 {
        div = add3(&div, &scale3(&al[mu], c(0.0, -k[mu])));
        kd = add3(&kd, &scale3(&al[mu], c(k[mu], 0.0)));
    }
    for nu in 0..4 {
        let mut v = add3(&scale3(&al[nu], c(-k2, 0.0)), &scale3(&kd, c(ETA[nu] * k[nu], 0.0)));
        v = add3(&v, &br(&a0[nu], &div));
        for mu in 0..4 {
            let e = c(ETA[mu], 0.0);
            v = add3(&v, &scale3(&br(&a0[mu], &al[nu]), c(0.0, 2.0 * k[mu])));
            v = add3(&v, &scale3(&br(&a0[mu], &al[mu]), c(0.0, -ETA[mu] * ETA[nu] * k[nu])));
            v = add3(&v, &scale3(&br(&a0[mu], &br(&a0[mu], &al[nu])), e));
            v = add3(&v, &scale3(&br(&a0[mu], &br(&al[mu], &a0[nu])), e));
            v = add3(&v, &scale3(&br(&al[mu], &br(&a0[mu], &a0[nu])), e));
        }
        out[nu] = v;
    }
    out
}

/// Specialized map for backgrounds with Ψ⁰ = 0 (rows 4 to 7).
pub fn apply_zero_spinor(bg: &Background, k: &[f64; 4], amp: &Amplitudes) -> Result<Amplitudes> {
    if bg.cfg.psi.norm() != 0.0 {
        return Err(Error::InvalidArgument("the zero-spinor system needs Ψ⁰ = 0".into()));
    }
    let a0 = rows3(&bg.cfg.potential.map(|v| c(v, 0.0)));
    let ym = ym_rows_by_components(&a0, &rows3(&amp.alpha), k);
    let m = bg.cfg.mass;
    let mut sigma = -amp.beta * c(m, 0.0);
    let mut kappa = -amp.delta * c(m, 0.0);
    for mu in 0..4 {
        let lower = scale3(&a0[mu], c(ETA[mu], 0.0));
        sigma += (gamma_left(mu, &amp.beta) * c(0.0, -k[mu]) + gamma_right(mu, &amp.beta, &lower)) * I;
        kappa += (gamma_left(mu, &amp.delta) * c(0.0, k[mu]) + gamma_right(mu, &amp.delta, &lower)) * I;
    }
    Ok(Amplitudes { alpha: ComplexPotential::from_fn(|nu, a| ym[nu][a]), beta: sigma, delta: kappa })
}

/// Specialized map for backgrounds with A⁰ = 0 and m = 0 (rows 8 to 10).
pub fn apply_zero_potential(bg: &Background, k: &[f64; 4], amp: &Amplitudes) -> Result<Amplitudes> {
    if bg.cfg.potential.norm() != 0.0 || bg.cfg.mass != 0.0 {
        return Err(Error::InvalidArgument("the zero-potential system needs A⁰ = 0 and m = 0".into()));
    }
    let g = gammas();
    let tau = taus();
    let psi0 = &bg.cfg.psi;
    let k2 = k_squared(k);
    let al = rows3(&amp.alpha);
    let mut rho = ComplexPotential::zeros();
    for nu in 0..4 {
        // z_a = −2i tr((δ†γ⁰γ^νΨ⁰ + Ψ⁰†γ⁰γ^νβ) τ^a), summed index by index.
        let gg = g[0] * g[nu];
        for a in 0..3 {
            let mut tr = C64::new(0.0, 0.0);
            for p in 0..2 {
                for q in 0..2 {
                    let mut bil = C64::new(0.0, 0.0);
                    for r in 0..4 {
                        for s in 0..4 {
                            bil += amp.delta[(r, p)].conj() * gg[(r, s)] * psi0[(s, q)];
                            bil += psi0[(r, p)].conj() * gg[(r, s)] * amp.beta[(s, q)];
                        }
                    }
                    tr += bil * tau[a][(q, p)];
                }
            }
            let z = tr * c(0.0, -2.0);
            let kdot: C64 = (0..4).map(|mu| al[mu][a] * k[mu]).sum();
            rho[(nu, a)] = al[nu][a] * (-k2) + kdot * (ETA[nu] * k[nu]) - z * 2.0;
        }
    }
    let mut sigma = Spinor::zeros();
    let mut kappa = Spinor::zeros();
    for mu in 0..4 {
        let lower = scale3(&al[mu], c(0.5 * ETA[mu], 0.0));
        let lower_conj = lower.map(|v| v.conj());
        sigma += (gamma_left(mu, &amp.beta) * c(0.0, -k[mu]) + gamma_right(mu, psi0, &lower)) * I;
        kappa += (gamma_left(mu, &amp.delta) * c(0.0, k[mu]) + gamma_right(mu, psi0, &lower_conj)) * I;
    }
    Ok(Amplitudes { alpha: rho, beta: sigma, delta: kappa })
}

pub fn assemble_zero_spinor_operator(bg: &Background, k: [f64; 4]) -> Result<LinearOperatorMatrix> {
    apply_zero_spinor(bg, &k, &Amplitudes::zero())?;
    Ok(assemble_with(|a| apply_zero_spinor(bg, &k, a).expect("checked above"), k))
}

pub fn assemble_zero_potential_operator(bg: &Background, k: [f64; 4]) -> Result<LinearOperatorMatrix> {
    apply_zero_potential(bg, &k, &Amplitudes::zero())?;
    Ok(assemble_with(|a| apply_zero_potential(bg, &k, a).expect("checked above"), k))
}

/// Right singular vectors with singular value < tol·σ_max.
pub fn kernel_modes(bg: &Background, k: [f64; 4], tol: f64) -> Vec<Amplitudes> {
    let op = assemble_operator(bg, k);
    let svd = op.matrix.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let smax = svd.singular_values.max();
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s < tol * smax)
        .map(|(i, _)| Amplitudes::from_slice(v_t.row(i).transpose().as_slice()).expect("length matches"))
        .collect()
}

/// Field values and derivatives at one point: A^ν, ∂_μA^ν, ∂_μ∂_ρA^ν, Ψ, ∂_μΨ.
#[derive(Debug, Clone)]
struct Jet {
    a: [Mat2; 4],
    da: [[Mat2; 4]; 4],
    dda: [[[Mat2; 4]; 4]; 4],
    psi: Spinor,
    dpsi: [Spinor; 4],
}

impl Jet {
    fn zero() -> Self {
        let z = Mat2::zeros();
        Jet { a: [z; 4], da: [[z; 4]; 4], dda: [[[z; 4]; 4]; 4], psi: Spinor::zeros(), dpsi: [Spinor::zeros(); 4] }
    }

    /// Constant background plus ε times a perturbation jet.
    fn shifted(bg: &Background, pert: &Jet, eps: f64) -> Self {
        let e = c(eps, 0.0);
        let mut j = Jet::zero();
        for nu in 0..4 {
            j.a[nu] = bg.upper[nu] + pert.a[nu] * e;
            for mu in 0..4 {
                j.da[mu][nu] = pert.da[mu][nu] * e;
                for rho in 0..4 {
                    j.dda[mu][rho][nu] = pert.dda[mu][rho][nu] * e;
                }
            }
            j.dpsi[nu] = pert.dpsi[nu] * e;
        }
        j.psi = bg.cfg.psi + pert.psi * e;
        j
    }
}

/// Full Yang–Mills and Dirac residuals at a point, as 12 + 16 reals.
fn full_residual(jet: &Jet, mass: f64) -> [f64; 28] {
    let eta = |mu: usize| c(ETA[mu], 0.0);
    // F^{μν} = ∂^μA^ν − ∂^νA^μ − [A^μ, A^ν] and its derivatives.
    let f = |mu: usize, nu: usize| jet.da[mu][nu] * eta(mu) - jet.da[nu][mu] * eta(nu) - bracket(&jet.a[mu], &jet.a[nu]);
    let df = |rho: usize, mu: usize, nu: usize| {
        jet.dda[rho][mu][nu] * eta(mu) - jet.dda[rho][nu][mu] * eta(nu) - bracket(&jet.da[rho][mu], &jet.a[nu]) - bracket(&jet.a[mu], &jet.da[rho][nu])
    };
    let cur = current(&jet.psi).matrices;
    let mut out = [0.0; 28];
    for nu in 0..4 {
        let mut lhs = Mat2::zeros();
        for mu in 0..4 {
            lhs += df(mu, mu, nu);
            lhs -= bracket(&(jet.a[mu] * eta(mu)), &f(mu, nu));
        }
        let z = sl2_components(&(lhs - cur[nu]));
        for a in 0..3 {
            out[3 * nu + a] = z[a].re;
        }
    }
    let g = gammas();
    let mut dirac = -jet.psi * c(mass, 0.0);
    for mu in 0..4 {
        dirac += g[mu] * (jet.dpsi[mu] + jet.psi * jet.a[mu] * eta(mu)) * I;
    }
    for r in 0..4 {
        for q in 0..2 {
            out[12 + 2 * r + q] = dirac[(r, q)].re;
            out[20 + 2 * r + q] = dirac[(r, q)].im;
        }
    }
    out
}

/// Linearized residual written directly in x-space from a perturbation jet.
fn linear_residual(bg: &Background, p: &Jet) -> [f64; 28] {
    let eta = |mu: usize| c(ETA[mu], 0.0);
    let a0 = &bg.upper;
    let a0l = &bg.lower;
    let psi0 = &bg.cfg.psi;
    let g = gammas();
    let mut out = [0.0; 28];
    let div: Mat2 = (0..4).map(|mu| p.da[mu][mu]).sum();
    for nu in 0..4 {
        let mut lin = Mat2::zeros();
        for mu in 0..4 {
            lin += p.dda[mu][mu][nu] * eta(mu);
            lin -= p.dda[mu][nu][mu] * eta(nu);
            lin -= bracket(&a0[mu], &p.da[mu][nu]) * c(2.0, 0.0);
            lin += bracket(&a0l[mu], &(p.da[nu][mu] * eta(nu)));
            lin += bracket(&a0l[mu], &bracket(&a0[mu], &p.a[nu]));
            lin += bracket(&a0l[mu], &bracket(&p.a[mu], &a0[nu]));
            lin += bracket(&(p.a[mu] * eta(mu)), &bracket(&a0[mu], &a0[nu]));
        }
        lin += bracket(&a0[nu], &div);
        let gg = g[0] * g[nu];
        let cur = traceless((p.psi.adjoint() * gg * psi0 + psi0.adjoint() * gg * p.psi) * I);
        let z = sl2_components(&(lin - cur));
        for a in 0..3 {
            out[3 * nu + a] = z[a].re;
        }
    }
    let mut dirac = -p.psi * c(bg.cfg.mass, 0.0);
    for mu in 0..4 {
        dirac += g[mu] * (p.dpsi[mu] + p.psi * a0l[mu] + psi0 * p.a[mu] * eta(mu)) * I;
    }
    for r in 0..4 {
        for q in 0..2 {
            out[12 + 2 * r + q] = dirac[(r, q)].re;
            out[20 + 2 * r + q] = dirac[(r, q)].im;
        }
    }
    out
}

/// Plane-wave perturbation jet at phase θ.
fn plane_wave_jet(k: &[f64; 4], amp: &Amplitudes, theta: f64) -> Jet {
    let e = C64::from_polar(1.0, -theta);
    let comp = |factor: C64, nu: usize| su2_matrix(&[0, 1, 2].map(|a| (amp.alpha[(nu, a)] * factor * e).re));
    let mut j = Jet::zero();
    for nu in 0..4 {
        j.a[nu] = comp(c(1.0, 0.0), nu);
        for mu in 0..4 {
            j.da[mu][nu] = comp(c(0.0, -k[mu]), nu);
            for rho in 0..4 {
                j.dda[mu][rho][nu] = comp(c(-k[mu] * k[rho], 0.0), nu);
            }
        }
    }
    j.psi = amp.beta * e + amp.delta * e.conj();
    for mu in 0..4 {
        j.dpsi[mu] = amp.beta * (e * c(0.0, -k[mu])) + amp.delta * (e.conj() * c(0.0, k[mu]));
    }
    j
}

/// Residual field of the linear coefficients (ρ, σ, κ) at phase θ.
fn operator_field(out: &Amplitudes, theta: f64) -> [f64; 28] {
    let e = C64::from_polar(1.0, -theta);
    let mut v = [0.0; 28];
    for nu in 0..4 {
        for a in 0..3 {
            v[3 * nu + a] = (out.alpha[(nu, a)] * e).re;
        }
    }
    let d = out.beta * e + out.delta * e.conj();
    for r in 0..4 {
        for q in 0..2 {
            v[12 + 2 * r + q] = d[(r, q)].re;
            v[20 + 2 * r + q] = d[(r, q)].im;
        }
    }
    v
}

/// Periodic grid samples of (A¹, Ψ¹).
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub extents: [usize; 4],
    pub spacings: [f64; 4],
    /// Row-major over (x⁰, x¹, x², x³), last index fastest.
    pub a1: Vec<Potential>,
    pub psi1: Vec<Spinor>,
}

impl GridField {
    pub fn new(extents: [usize; 4], spacings: [f64; 4], a1: Vec<Potential>, psi1: Vec<Spinor>) -> Result<Self> {
        if extents.iter().any(|&n| n < MIN_GRID_EXTENT) {
            return Err(Error::InvalidArgument(format!("every grid extent must be at least {MIN_GRID_EXTENT} for the 4th-order stencil, got {extents:?}")));
        }
        if spacings.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
            return Err(Error::InvalidArgument(format!("grid spacings must be positive, got {spacings:?}")));
        }
        let n: usize = extents.iter().product();
        if a1.len() != n || psi1.len() != n {
            return Err(Error::InvalidArgument(format!("grid has {n} points but {} potential and {} spinor samples", a1.len(), psi1.len())));
        }
        Ok(GridField { extents, spacings, a1, psi1 })
    }

    /// Samples a plane wave at x^μ = i_μ h_μ.
    pub fn from_plane_wave(k: &[f64; 4], amp: &Amplitudes, extents: [usize; 4], spacings: [f64; 4]) -> Result<Self> {
        let n: usize = extents.iter().product();
        let mut a1 = Vec::with_capacity(n);
        let mut psi1 = Vec::with_capacity(n);
        for idx in 0..n {
            let x = Self::coords(extents, idx);
            let theta: f64 = (0..4).map(|mu| k[mu] * x[mu] as f64 * spacings[mu]).sum();
            let e = C64::from_polar(1.0, -theta);
            a1.push(amp.alpha.map(|z| (z * e).re));
            psi1.push(amp.beta * e + amp.delta * e.conj());
        }
        Self::new(extents, spacings, a1, psi1)
    }

    fn coords(extents: [usize; 4], mut idx: usize) -> [usize; 4] {
        let mut x = [0; 4];
        for mu in (0..4).rev() {
            x[mu] = idx % extents[mu];
            idx /= extents[mu];
        }
        x
    }

    fn index(&self, x: [usize; 4]) -> usize {
        x.iter().zip(&self.extents).fold(0, |acc, (v, n)| acc * n + v)
    }

    fn shift(&self, idx: usize, mu: usize, by: isize) -> usize {
        let mut x = Self::coords(self.extents, idx);
        let n = self.extents[mu] as isize;
        x[mu] = ((x[mu] as isize + by).rem_euclid(n)) as usize;
        self.index(x)
    }

    /// Fourth-order central difference along μ of a sampled field.
    fn derivative<T>(&self, f: &[T], mu: usize, scale: impl Fn(T, f64) -> T) -> Vec<T>
    where
        T: Copy + std::ops::Sub<Output = T>,
    {
        let h = self.spacings[mu];
        (0..f.len())
            .map(|i| {
                let p1 = f[self.shift(i, mu, 1)];
                let p2 = f[self.shift(i, mu, 2)];
                let m1 = f[self.shift(i, mu, -1)];
                let m2 = f[self.shift(i, mu, -2)];
                scale(scale(p1 - m1, 8.0) - (p2 - m2), 1.0 / (12.0 * h))
            })
            .collect()
    }

    fn jets(&self) -> Vec<Jet> {
        let d1: Vec<Vec<Potential>> = (0..4).map(|mu| self.derivative(&self.a1, mu, |p, s| p * s)).collect();
        let d2: Vec<Vec<Vec<Potential>>> = (0..4).map(|mu| (0..4).map(|rho| self.derivative(&d1[rho], mu, |p, s| p * s)).collect()).collect();
        let dpsi: Vec<Vec<Spinor>> = (0..4).map(|mu| self.derivative(&self.psi1, mu, |p, s| p * c(s, 0.0))).collect();
        let m = |p: &Potential, nu: usize| su2_matrix(&[p[(nu, 0)], p[(nu, 1)], p[(nu, 2)]]);
        (0..self.a1.len())
            .map(|i| {
                let mut j = Jet::zero();
                for nu in 0..4 {
                    j.a[nu] = m(&self.a1[i], nu);
                    for mu in 0..4 {
                        j.da[mu][nu] = m(&d1[mu][i], nu);
                        for rho in 0..4 {
                            j.dda[mu][rho][nu] = m(&d2[mu][rho][i], nu);
                        }
                    }
                    j.dpsi[nu] = dpsi[nu][i];
                }
                j.psi = self.psi1[i];
                j
            })
            .collect()
    }

    fn rms(&self) -> f64 {
        let sum: f64 = self.a1.iter().map(|p| p.norm_squared()).sum::<f64>() + self.psi1.iter().map(|p| p.norm_squared()).sum::<f64>();
        (sum / (self.a1.len() * 28) as f64).sqrt()
    }
}

/// Perturbation representations.
#[derive(Debug, Clone, PartialEq)]
pub enum PerturbationState {
    PlaneWave { k: [f64; 4], amplitudes: Amplitudes },
    Grid(GridField),
}

/// Residual split by order in ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderCheck {
    /// RMS residual of the background alone.
    pub r0: f64,
    /// RMS of the ε¹ coefficient, normalized by ‖x‖·σ_max (plane waves) or by
    /// the RMS of the perturbation samples (grids).
    pub r1: f64,
    /// RMS of R(ε) − R(0) − ε·(linear field).
    pub r2: f64,
    /// The same remainder at ε/2.
    pub r2_half: f64,
    /// r2 / r2_half, near 4 for a quadratic remainder.
    pub ratio: f64,
    /// RMS(ε¹ coefficient − linear field) / RMS(linear field).
    pub operator_mismatch: f64,
    pub epsilon: f64,
}

fn rms(v: &[f64]) -> f64 {
    if v.is_empty() {
        0.0
    } else {
        (v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64).sqrt()
    }
}

fn ratio_or_zero(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Evaluates the full equations on background + ε·perturbation and splits the
/// residual by order.
pub fn residual_first_order(bg: &Background, pert: &PerturbationState, epsilon: f64) -> Result<OrderCheck> {
    if !(epsilon > 0.0 && epsilon <= MAX_EPSILON) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, {MAX_EPSILON}], got {epsilon}")));
    }
    let (jets, linear, r1_scale): (Vec<Jet>, Vec<[f64; 28]>, f64) = match pert {
        PerturbationState::PlaneWave { k, amplitudes } => {
            let out = assemble_operator(bg, *k).apply(amplitudes);
            let thetas: Vec<f64> = (0..PHASE_SAMPLES).map(|j| std::f64::consts::TAU * j as f64 / PHASE_SAMPLES as f64).collect();
            let jets = thetas.iter().map(|t| plane_wave_jet(k, amplitudes, *t)).collect();
            let lin = thetas.iter().map(|t| operator_field(&out, *t)).collect();
            let smax = assemble_operator(bg, *k).singular_values().first().copied().unwrap_or(0.0);
            (jets, lin, amplitudes.norm() * smax)
        }
        PerturbationState::Grid(grid) => {
            let jets: Vec<Jet> = grid.jets();
            let lin = jets.iter().map(|j| linear_residual(bg, j)).collect();
            (jets, lin, grid.rms())
        }
    };
    let mass = bg.cfg.mass;
    let eval = |eps: f64| -> Vec<f64> { jets.iter().flat_map(|j| full_residual(&Jet::shifted(bg, j, eps), mass)).collect() };
    let lin: Vec<f64> = linear.iter().flatten().copied().collect();
    let r_zero = eval(0.0);
    let h = STENCIL_STEP;
    let (p1, m1, p2, m2) = (eval(h), eval(-h), eval(2.0 * h), eval(-2.0 * h));
    let c1: Vec<f64> = (0..lin.len()).map(|i| (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * h)).collect();
    let remainder = |eps: f64| {
        let r = eval(eps);
        let d: Vec<f64> = (0..lin.len()).map(|i| r[i] - r_zero[i] - eps * lin[i]).collect();
        rms(&d)
    };
    let r2 = remainder(epsilon);
    let r2_half = remainder(epsilon / 2.0);
    let diff: Vec<f64> = c1.iter().zip(&lin).map(|(a, b)| a - b).collect();
    Ok(OrderCheck {
        r0: rms(&r_zero),
        r1: ratio_or_zero(rms(&c1), r1_scale),
        r2,
        r2_half,
        ratio: ratio_or_zero(r2, r2_half),
        operator_mismatch: ratio_or_zero(rms(&diff), rms(&lin)),
        epsilon,
    })
}
