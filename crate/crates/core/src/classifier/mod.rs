//! Classification of constant solutions into the ten solution types and
//! generation of canonical representatives.
//!
//! | row | A (d,x,y) | J (d,x,y) | Ψ (d,x,y)   | m   | F²  |
//! |-----|-----------|-----------|-------------|-----|-----|
//! | 1   | (1,0,0)   | 0         | (2,0,0)     | 0   | 0   |
//! | 2   | (0,1,2)   | (0,1,0)   | (0,0,1)     | > 0 | ≠ 0 |
//! | 3   | (0,0,2)   | (0,0,2)   | d+x+y = 2   | 0   | ≠ 0 |
//! | 4   | 0         | 0         | 0           | any | 0   |
//! | 5   | (1,0,0)   | 0         | 0           | any | 0   |
//! | 6   | (0,1,0)   | 0         | 0           | any | 0   |
//! | 7   | (0,0,1)   | 0         | 0           | any | 0   |
//! | 8   | 0         | 0         | (2,0,0)     | 0   | 0   |
//! | 9   | 0         | 0         | (0,2,0)     | 0   | 0   |
//! | 10  | 0         | 0         | (0,0,2)     | 0   | 0   |

pub mod appendix;

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{c, Metric, Potential, Spinor, C64, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::fields::{current, f2_invariant, verify, FieldConfiguration, NamedResidual};
use crate::hsvd::{analyze_triple, InvariantTriple};

/// Relative threshold for the rank and sign decisions of the invariant triples.
pub const TRIPLE_TOL: f64 = 1e-8;
/// Absolute scale floor for the triples, so rounding noise in a vanishing
/// current is not promoted to a nonzero direction.
pub const TRIPLE_FLOOR: f64 = 1.0;
pub const MASS_ZERO: f64 = 1e-12;
pub const F2_ZERO_REL: f64 = 1e-8;
/// Residual tolerance used by `generate`.
pub const GENERATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassClass {
    Zero,
    Positive,
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum F2Class {
    Zero,
    Nonzero,
}

impl fmt::Display for MassClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MassClass::Zero => "zero",
            MassClass::Positive => "positive",
            MassClass::Any => "any",
        })
    }
}

impl fmt::Display for F2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            F2Class::Zero => "zero",
            F2Class::Nonzero => "nonzero",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiPattern {
    Exact(InvariantTriple),
    /// Any triple with d + x + y = 2.
    RankTwo,
}

impl PsiPattern {
    fn accepts(&self, t: InvariantTriple) -> bool {
        match self {
            PsiPattern::Exact(want) => *want == t,
            PsiPattern::RankTwo => t.total() == 2,
        }
    }
}

/// Invariants that identify one row of the solution table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowSignature {
    pub row: u8,
    pub a: InvariantTriple,
    pub j: InvariantTriple,
    pub psi: PsiPattern,
    pub mass: MassClass,
    pub f2: F2Class,
}

const fn t(d: usize, x: usize, y: usize) -> InvariantTriple {
    InvariantTriple::new(d, x, y)
}

const fn row(row: u8, a: InvariantTriple, j: InvariantTriple, psi: PsiPattern, mass: MassClass, f2: F2Class) -> RowSignature {
    RowSignature { row, a, j, psi, mass, f2 }
}

pub const TABLE: [RowSignature; 10] = {
    use F2Class as F;
    use MassClass as M;
    use PsiPattern::*;
    [
        row(1, t(1, 0, 0), t(0, 0, 0), Exact(t(2, 0, 0)), M::Zero, F::Zero),
        row(2, t(0, 1, 2), t(0, 1, 0), Exact(t(0, 0, 1)), M::Positive, F::Nonzero),
        row(3, t(0, 0, 2), t(0, 0, 2), RankTwo, M::Zero, F::Nonzero),
        row(4, t(0, 0, 0), t(0, 0, 0), Exact(t(0, 0, 0)), M::Any, F::Zero),
        row(5, t(1, 0, 0), t(0, 0, 0), Exact(t(0, 0, 0)), M::Any, F::Zero),
        row(6, t(0, 1, 0), t(0, 0, 0), Exact(t(0, 0, 0)), M::Any, F::Zero),
        row(7, t(0, 0, 1), t(0, 0, 0), Exact(t(0, 0, 0)), M::Any, F::Zero),
        row(8, t(0, 0, 0), t(0, 0, 0), Exact(t(2, 0, 0)), M::Zero, F::Zero),
        row(9, t(0, 0, 0), t(0, 0, 0), Exact(t(0, 2, 0)), M::Zero, F::Zero),
        row(10, t(0, 0, 0), t(0, 0, 0), Exact(t(0, 0, 2)), M::Zero, F::Zero),
    ]
};

pub fn signature(row: u8) -> Result<&'static RowSignature> {
    TABLE.iter().find(|s| s.row == row).ok_or_else(|| Error::InvalidArgument(format!("unknown row {row}; rows are 1..=10")))
}

/// A named parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamValue {
    Real(f64),
    Complex(C64),
}

impl ParamValue {
    pub fn as_complex(&self) -> C64 {
        match self {
            ParamValue::Real(v) => c(*v, 0.0),
            ParamValue::Complex(z) => *z,
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Real(v) => write!(f, "{v}"),
            ParamValue::Complex(z) if z.im < 0.0 => write!(f, "{}-{}i", z.re, -z.im),
            ParamValue::Complex(z) => write!(f, "{}+{}i", z.re, z.im),
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

/// Row matched by a verified configuration together with its invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionDescriptor {
    pub row: u8,
    pub invariants_a: InvariantTriple,
    pub invariants_j: InvariantTriple,
    pub invariants_psi: InvariantTriple,
    pub mass_class: MassClass,
    pub f2_class: F2Class,
    pub parameters: Params,
    pub configuration: FieldConfiguration,
    /// Ill-conditioning notes from the triple computations.
    pub warnings: Vec<String>,
}

/// A table row that nearly matched, with the number of mismatched invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct NearMiss {
    pub row: u8,
    pub mismatches: usize,
}

/// Invariants of a configuration, without matching.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigurationInvariants {
    pub a: InvariantTriple,
    pub j: InvariantTriple,
    pub psi: InvariantTriple,
    pub mass: MassClass,
    pub f2: F2Class,
    pub warnings: Vec<String>,
}

pub fn invariants(cfg: &FieldConfiguration) -> Result<ConfigurationInvariants> {
    let a = DMatrix::from_fn(4, 3, |i, j| cfg.potential[(i, j)]);
    let jc = current(&cfg.psi).components;
    let jm = DMatrix::from_fn(4, 3, |i, j| jc[(i, j)]);
    let pm = DMatrix::from_fn(4, 2, |i, j| cfg.psi[(i, j)]);
    let ta = analyze_triple(&a, Metric::minkowski(), TRIPLE_TOL, TRIPLE_FLOOR)?;
    let tj = analyze_triple(&jm, Metric::minkowski(), TRIPLE_TOL, TRIPLE_FLOOR)?;
    let tp = analyze_triple(&pm, Metric::omega(), TRIPLE_TOL, TRIPLE_FLOOR)?;
    let mass = if cfg.mass < MASS_ZERO { MassClass::Zero } else { MassClass::Positive };
    let f2_scale = 1f64.max(cfg.potential.norm().powi(4));
    let f2 = if f2_invariant(&cfg.potential).norm() < F2_ZERO_REL * f2_scale { F2Class::Zero } else { F2Class::Nonzero };
    let mut warnings = Vec::new();
    for (name, w) in [("A", ta.warnings), ("J", tj.warnings), ("Psi", tp.warnings)] {
        warnings.extend(w.into_iter().map(|s| format!("{name}: {s}")));
    }
    Ok(ConfigurationInvariants { a: ta.triple, j: tj.triple, psi: tp.triple, mass, f2, warnings })
}

fn mismatches(sig: &RowSignature, inv: &ConfigurationInvariants) -> usize {
    let mass_ok = sig.mass == MassClass::Any || sig.mass == inv.mass;
    [sig.a == inv.a, sig.j == inv.j, sig.psi.accepts(inv.psi), mass_ok, sig.f2 == inv.f2]
        .iter()
        .filter(|ok| !**ok)
        .count()
}

/// Verifies `cfg` at `tol` and returns its table row.
pub fn classify(cfg: &FieldConfiguration, tol: f64) -> Result<SolutionDescriptor> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let report = verify(cfg, tol);
    if !report.is_solution {
        return Err(Error::NotASolution(Box::new(report)));
    }
    let inv = invariants(cfg)?;
    let mut scored: Vec<NearMiss> = TABLE.iter().map(|s| NearMiss { row: s.row, mismatches: mismatches(s, &inv) }).collect();
    if let Some(hit) = scored.iter().find(|n| n.mismatches == 0) {
        return Ok(SolutionDescriptor {
            row: hit.row,
            invariants_a: inv.a,
            invariants_j: inv.j,
            invariants_psi: inv.psi,
            mass_class: inv.mass,
            f2_class: inv.f2,
            parameters: Params::new(),
            configuration: cfg.clone(),
            warnings: inv.warnings,
        });
    }
    scored.sort_by_key(|n| (n.mismatches, n.row));
    scored.truncate(3);
    Err(Error::Ambiguous(scored))
}

/// Verified canonical representative of `row`. Missing free parameters are
/// drawn from `seed`; without a seed, missing required parameters are an error.
pub fn generate(row: u8, params: &Params, seed: Option<u64>) -> Result<SolutionDescriptor> {
    let (cfg, resolved) = build_configuration(row, params, seed)?;
    let report = verify(&cfg, GENERATE_TOL);
    if !report.is_solution {
        return Err(Error::NotASolution(Box::new(report)));
    }
    let mut desc = classify(&cfg, GENERATE_TOL)?;
    if desc.row != row {
        return Err(Error::InvalidArgument(format!("row {row} parameters produced a row {} configuration", desc.row)));
    }
    desc.parameters = resolved;
    Ok(desc)
}

struct ParamSource<'a> {
    params: &'a Params,
    rng: Option<ChaCha8Rng>,
    resolved: Params,
}

impl<'a> ParamSource<'a> {
    fn new(params: &'a Params, seed: Option<u64>) -> Self {
        ParamSource { params, rng: seed.map(ChaCha8Rng::seed_from_u64), resolved: Params::new() }
    }

    fn given_real(&self, name: &str) -> Result<Option<f64>> {
        match self.params.get(name) {
            None => Ok(None),
            Some(ParamValue::Real(v)) => Ok(Some(*v)),
            Some(ParamValue::Complex(z)) if z.im == 0.0 => Ok(Some(z.re)),
            Some(ParamValue::Complex(z)) => Err(Error::InvalidArgument(format!("parameter `{name}` must be real, got {z}"))),
        }
    }

    /// Given value, else a draw from the seed, else `default`, else an error.
    fn real(&mut self, name: &str, draw: impl FnOnce(&mut ChaCha8Rng) -> f64, default: Option<f64>) -> Result<f64> {
        let v = match (self.given_real(name)?, self.rng.as_mut(), default) {
            (Some(v), _, _) => v,
            (None, Some(rng), _) => draw(rng),
            (None, None, Some(d)) => d,
            (None, None, None) => return Err(Error::InvalidArgument(format!("missing parameter `{name}` (or pass a seed)"))),
        };
        if !v.is_finite() {
            return Err(Error::InvalidArgument(format!("parameter `{name}` must be finite")));
        }
        self.resolved.insert(name.to_string(), ParamValue::Real(v));
        Ok(v)
    }

    fn complex(&mut self, name: &str, draw: impl FnOnce(&mut ChaCha8Rng) -> C64) -> Result<C64> {
        let z = match (self.params.get(name), self.rng.as_mut()) {
            (Some(p), _) => p.as_complex(),
            (None, Some(rng)) => draw(rng),
            (None, None) => return Err(Error::InvalidArgument(format!("missing parameter `{name}` (or pass a seed)"))),
        };
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidArgument(format!("parameter `{name}` must be finite")));
        }
        self.resolved.insert(name.to_string(), ParamValue::Complex(z));
        Ok(z)
    }

    fn has_all(&self, names: &[&str]) -> bool {
        names.iter().all(|n| self.params.contains_key(*n))
    }

    fn rng(&mut self) -> Option<&mut ChaCha8Rng> {
        self.rng.as_mut()
    }
}

fn random_complex(rng: &mut ChaCha8Rng) -> C64 {
    loop {
        let z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if z.norm() > 0.3 && z.norm() <= 1.0 {
            return z;
        }
    }
}

fn random_sign(rng: &mut ChaCha8Rng) -> f64 {
    if rng.random_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

fn check_sign(name: &str, v: f64) -> Result<f64> {
    if v == 1.0 || v == -1.0 {
        Ok(v)
    } else {
        Err(Error::InvalidArgument(format!("parameter `{name}` must be +1 or -1, got {v}")))
    }
}

fn require_positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidArgument(format!("parameter `{name}` must be positive, got {v}")))
    }
}

fn enforce(residuals: &[NamedResidual], scale: f64) -> Result<()> {
    for r in residuals {
        if !(r.value < 1e-10 * scale.max(1.0)) {
            return Err(Error::ConstraintViolation { name: r.name.to_string(), residual: r.value });
        }
    }
    Ok(())
}

fn potential(rows: [[f64; 3]; 4]) -> Potential {
    Potential::from_fn(|i, j| rows[i][j])
}

/// Zero-current spinor of row 1: [[G, B], [C, D], [C, D], [G, B]].
pub fn lightlike_spinor(g: C64, b: C64, cc: C64, d: C64) -> Spinor {
    Spinor::new(g, b, cc, d, cc, d, g, b)
}

/// Spinor of row 3: [[G, iG], [iD, D], [K, iK], [iN, N]].
pub fn rank_two_spinor(g: C64, d: C64, k: C64, n: C64) -> Spinor {
    Spinor::new(g, g * I, d * I, d, k, k * I, n * I, n)
}

/// Named residuals of the parameter constraints for rows 1, 2 and 3.
pub fn constraint_residuals(row: u8, params: &Params) -> Result<Vec<NamedResidual>> {
    let get = |name: &str| {
        params
            .get(name)
            .map(|p| p.as_complex())
            .ok_or_else(|| Error::InvalidArgument(format!("missing parameter `{name}`")))
    };
    match row {
        1 => {
            let (g, b, cc, d) = (get("G")?, get("B")?, get("C")?, get("D")?);
            Ok(row1_constraints(g, b, cc, d).to_vec())
        }
        2 => {
            let m = get("m")?.re;
            let l = get("L")?;
            Ok(vec![NamedResidual { name: "modulus", value: (l.norm() - 4.0 * m.max(0.0).powf(1.5)).abs() }])
        }
        3 => {
            let (g, d, k, n) = (get("G")?, get("D")?, get("K")?, get("N")?);
            let a1 = get("a1")?.re;
            Ok(row3_constraints(g, d, k, n, a1).to_vec())
        }
        _ => Err(Error::InvalidArgument(format!("row {row} has no parameter constraints; rows 1, 2 and 3 do"))),
    }
}

fn row1_constraints(g: C64, b: C64, cc: C64, d: C64) -> [NamedResidual; 2] {
    [
        NamedResidual { name: "norm_balance", value: (g.norm_sqr() + cc.norm_sqr() - b.norm_sqr() - d.norm_sqr()).abs() },
        NamedResidual { name: "orthogonality", value: (g.conj() * b + cc.conj() * d).norm() },
    ]
}

fn row3_constraints(g: C64, d: C64, k: C64, n: C64, a1: f64) -> [NamedResidual; 4] {
    [
        NamedResidual { name: "norm_balance", value: (g.norm_sqr() + k.norm_sqr() - d.norm_sqr() - n.norm_sqr()).abs() },
        NamedResidual { name: "first_real_orthogonality", value: (k.conj() * g + n.conj() * d).re.abs() },
        NamedResidual { name: "second_real_orthogonality", value: (n.conj() * g + k.conj() * d).re.abs() },
        NamedResidual { name: "imaginary_amplitude", value: ((n.conj() * g - k.conj() * d).im - a1.powi(3)).abs() },
    ]
}

/// Exact sampler for the row-3 constraints.
///
/// With p, q free, λ ≠ 0 and μ = −1/λ, the choice G = (p+q)/2, D = (p−q)/2,
/// K = (s+t)/2, N = (s−t)/2 with s = iλp, t = iμq satisfies the norm balance
/// and both real parts identically. Im(N̄G − K̄D) is odd in (λ, μ), so a sign
/// flip and a common rescaling fix the amplitude.
pub fn sample_rank_two(rng: &mut ChaCha8Rng, a1: f64) -> [C64; 4] {
    loop {
        let p = random_complex(rng);
        let q = random_complex(rng);
        let mut lambda = rng.random_range(0.3..3.0) * random_sign(rng);
        let amplitude = |lambda: f64| {
            let mu = -1.0 / lambda;
            let (s, t) = (p * c(0.0, lambda), q * c(0.0, mu));
            let (g, d, k, n) = ((p + q) * 0.5, (p - q) * 0.5, (s + t) * 0.5, (s - t) * 0.5);
            ((n.conj() * g - k.conj() * d).im, [g, d, k, n])
        };
        let (mut v, _) = amplitude(lambda);
        if v.abs() < 0.05 {
            continue;
        }
        if v < 0.0 {
            lambda = -lambda;
            v = -v;
        }
        let (_, vals) = amplitude(lambda);
        let scale = (a1.powi(3) / v).sqrt();
        return vals.map(|z| z * scale);
    }
}

/// Builds the canonical configuration of `row` without verifying it.
/// Returns the configuration and every parameter used, including sampled ones.
pub fn build_configuration(row: u8, params: &Params, seed: Option<u64>) -> Result<(FieldConfiguration, Params)> {
    signature(row)?;
    let mut src = ParamSource::new(params, seed);
    let cfg = match row {
        1 => {
            let (g, b, cc, d) = if src.has_all(&["G", "B", "C", "D"]) {
                let vals = (src.complex("G", random_complex)?, src.complex("B", random_complex)?, src.complex("C", random_complex)?, src.complex("D", random_complex)?);
                enforce(&row1_constraints(vals.0, vals.1, vals.2, vals.3), 1.0 + vals.0.norm_sqr() + vals.2.norm_sqr())?;
                vals
            } else {
                let g = src.complex("G", random_complex)?;
                let cc = src.complex("C", random_complex)?;
                let phase = src.real("phase", |r| r.random_range(0.0..std::f64::consts::TAU), Some(0.0))?;
                let kappa = C64::from_polar(1.0, phase);
                (g, -cc.conj() * kappa, cc, g.conj() * kappa)
            };
            if g.norm() + b.norm() + cc.norm() + d.norm() == 0.0 {
                return Err(Error::InvalidArgument("row 1 needs a nonzero spinor; Ψ = 0 belongs to rows 4 to 7".into()));
            }
            let a = potential([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]]);
            FieldConfiguration::new(lightlike_spinor(g, b, cc, d), a, 0.0)?
        }
        2 => {
            let m = require_positive("m", src.real("m", |r| r.random_range(0.1..2.0), None)?)?;
            let l = if params.contains_key("L") {
                let l = src.complex("L", random_complex)?;
                enforce(&[NamedResidual { name: "modulus", value: (l.norm() - 4.0 * m.powf(1.5)).abs() }], m.powf(1.5))?;
                l
            } else {
                let phase = src.real("phase", |r| r.random_range(0.0..std::f64::consts::TAU), Some(0.0))?;
                C64::from_polar(4.0 * m.powf(1.5), phase)
            };
            let mut psi = Spinor::zeros();
            psi[(2, 1)] = l;
            let a = potential([[2.0 * m, 0.0, 0.0], [0.0, 2.0 * m, 0.0], [0.0, 0.0, 2.0 * m], [0.0; 3]]);
            FieldConfiguration::new(psi, a, m)?
        }
        3 => {
            let a1 = require_positive("a1", src.real("a1", |r| r.random_range(0.5..2.0), None)?)?;
            let names = ["G", "D", "K", "N"];
            let vals = if src.has_all(&names) {
                let v = names.map(|n| src.params[n].as_complex());
                enforce(&row3_constraints(v[0], v[1], v[2], v[3], a1), 1.0 + a1.powi(3))?;
                v
            } else if let Some(rng) = src.rng() {
                sample_rank_two(rng, a1)
            } else {
                return Err(Error::InvalidArgument("row 3 needs G, D, K, N or a seed".into()));
            };
            for (n, v) in names.iter().zip(vals) {
                src.resolved.insert(n.to_string(), ParamValue::Complex(v));
            }
            let a = potential([[0.0; 3], [a1, 0.0, 0.0], [0.0, a1, 0.0], [0.0; 3]]);
            FieldConfiguration::new(rank_two_spinor(vals[0], vals[1], vals[2], vals[3]), a, 0.0)?
        }
        4..=7 => {
            let mass = src.real("mass", |r| if r.random_bool(0.3) { 0.0 } else { r.random_range(0.1..2.0) }, Some(0.0))?;
            if mass < 0.0 {
                return Err(Error::InvalidArgument(format!("mass must be non-negative, got {mass}")));
            }
            let a = match row {
                4 => Potential::zeros(),
                5 => potential([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0; 3], [0.0; 3]]),
                _ => {
                    let a = src.real("a", |r| r.random_range(0.5..2.0) * random_sign(r), None)?;
                    if a == 0.0 {
                        return Err(Error::InvalidArgument("parameter `a` must be nonzero".into()));
                    }
                    let mut p = Potential::zeros();
                    p[(if row == 6 { 0 } else { 1 }, 0)] = a;
                    p
                }
            };
            FieldConfiguration::new(Spinor::zeros(), a, mass)?
        }
        _ => {
            let sign = check_sign("sign", src.real("sign", random_sign, Some(1.0))?)?;
            let s = c(sign, 0.0);
            let psi = if row == 8 {
                Spinor::new(ONE, ZERO, ZERO, s, ONE, ZERO, ZERO, -s)
            } else {
                let v = require_positive("psi", src.real("psi", |r| r.random_range(0.2..3.0), None)?)?;
                let (x, y) = (c(v, 0.0), s * v);
                if row == 9 {
                    Spinor::new(x, ZERO, ZERO, y, ZERO, ZERO, ZERO, ZERO)
                } else {
                    Spinor::new(ZERO, ZERO, ZERO, ZERO, x, ZERO, ZERO, y)
                }
            };
            FieldConfiguration::new(psi, Potential::zeros(), 0.0)?
        }
    };
    Ok((cfg, src.resolved))
}

/// Invariant triple of the row-3 spinor after checking the row-3 constraints.
pub fn psi_invariants_case2(g: C64, d: C64, k: C64, n: C64, a1: f64) -> Result<InvariantTriple> {
    enforce(&row3_constraints(g, d, k, n, a1), 1.0 + a1.abs().powi(3))?;
    let psi = rank_two_spinor(g, d, k, n);
    let pm = DMatrix::from_fn(4, 2, |i, j| psi[(i, j)]);
    Ok(analyze_triple(&pm, Metric::omega(), TRIPLE_TOL, TRIPLE_FLOOR)?.triple)
}
