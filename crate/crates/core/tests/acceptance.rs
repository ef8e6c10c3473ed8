//! Acceptance run: one PASS/FAIL line per criterion, plus INFO lines.
//!
//! Criteria that are red for a known, analyzed reason are listed in
//! `KNOWN_RED`. For those the run still exits 0 as long as every observed
//! failure is of the analyzed kind; any other failure exits 1.

use std::time::{Duration, Instant};

use nalgebra::{DMatrix, Matrix3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ymd_core::algebra::{Metric, Spinor, C64, ETA, OMEGA};
use ymd_core::classifier::{self, appendix, build_configuration, classify, generate, invariants, ParamValue, Params};
use ymd_core::fields::{current, f2_invariant, spinor_gram, verify, zero_current_holds};
use ymd_core::groups::{apply_transform, lorentz_from_pin, random_pin, so3_from_su2, Su2, Su22};
use ymd_core::hsvd::{check, hsvd_complex, hsvd_real, InvariantTriple, DEFAULT_TOL};
use ymd_core::perturbation::{residual_first_order, Amplitudes, Background, PerturbationState};

/// Criteria expected to be red, each with the reason its failures are allowed.
const KNOWN_RED: &[(u8, &str)] = &[
    (1, "row 3 has no solution: its current has J¹₁ = −4v and J²₂ = +4v with v = Im(N̄G − K̄D), so the Yang–Mills equation cannot hold"),
    (4, "the first system's determinant has the last two factors squared; the quoted first-power form is off"),
    (5, "spatial reflections flip the sign of Ψ†γ⁰Ψ, reverse the current and swap x and y of the Ψ triple; row 3 has no instances"),
    (7, "row 3 has no background solution"),
    (8, "the eigenvalues are twice the quoted values: 2(|D|²−|N|²) and 2(|G|²−|K|²)"),
];

struct Outcome {
    id: u8,
    name: &'static str,
    pass: bool,
    /// For red criteria: whether every failure is of the analyzed kind.
    explained: bool,
    detail: String,
    info: Vec<String>,
}

impl Outcome {
    fn new(id: u8, name: &'static str) -> Self {
        Outcome { id, name, pass: true, explained: true, detail: String::new(), info: Vec::new() }
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn params(items: &[(&str, ParamValue)]) -> Params {
    items.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn seconds(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

// 1. Table round trip.
fn round_trip() -> Outcome {
    let mut o = Outcome::new(1, "table_round_trip");
    let start = Instant::now();
    let mut failures = Vec::new();
    for row in 1..=10u8 {
        let mut bad = 0;
        for seed in 0..50 {
            let ok = match generate(row, &Params::new(), Some(seed)) {
                Ok(d) => verify(&d.configuration, 1e-10).is_solution && classify(&d.configuration, 1e-10).map(|x| x.row).ok() == Some(row),
                Err(_) => false,
            };
            if !ok {
                bad += 1;
            }
        }
        if bad > 0 {
            failures.push((row, bad));
        }
    }
    let t = start.elapsed();
    o.pass = failures.is_empty() && t < Duration::from_secs(10);
    o.explained = failures.iter().all(|(r, _)| *r == 3) && t < Duration::from_secs(10);
    o.detail = format!("failures {failures:?} (row, count of 50), runtime {}", seconds(t));
    if let Err(e) = generate(3, &Params::new(), Some(0)) {
        o.info.push(format!("row 3 generation: {e}"));
    }
    o
}

// 2. Closed-form invariants.
fn closed_forms() -> Outcome {
    let mut o = Outcome::new(2, "closed_form_invariants");
    let mut worst: f64 = 0.0;
    for m in [0.1, 0.5, 1.0, 2.0] {
        let d = generate(2, &params(&[("m", ParamValue::Real(m))]), None).expect("row 2 generates");
        let j = current(&d.configuration.psi).components;
        let want = 16.0 * m.powi(3);
        let mut err = (j[(0, 0)] - want).abs();
        for (idx, v) in j.iter().enumerate() {
            if idx != 0 {
                err = err.max(v.abs());
            }
        }
        worst = worst.max(err / want);
        let f2 = f2_invariant(&d.configuration.potential);
        let want_f2 = 8.0 * m.powi(4);
        let f2_err = (f2 - ymd_core::algebra::Mat2::identity() * c(want_f2, 0.0)).norm();
        worst = worst.max(f2_err / want_f2);
    }
    for a1 in [0.5, 1.0, 2.0] {
        let (cfg, _) = build_configuration(3, &params(&[("a1", ParamValue::Real(a1))]), Some(1)).expect("row 3 builds");
        let f2 = f2_invariant(&cfg.potential);
        let want = -a1.powi(4) / 2.0;
        worst = worst.max((f2 - ymd_core::algebra::Mat2::identity() * c(want, 0.0)).norm() / want.abs());
    }
    o.pass = worst < 1e-10;
    o.detail = format!("max relative error {worst:.2e}");
    o.info.push("row 3 potentials come from the configuration builder, since generation refuses row 3".into());
    o
}

/// Eigenvalues of a real symmetric 3×3 matrix by the trigonometric method.
fn sym3_eigs(m: &Matrix3<f64>) -> [f64; 3] {
    let p1 = m[(0, 1)].powi(2) + m[(0, 2)].powi(2) + m[(1, 2)].powi(2);
    let q = m.trace() / 3.0;
    let p2 = (m[(0, 0)] - q).powi(2) + (m[(1, 1)] - q).powi(2) + (m[(2, 2)] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return [q; 3];
    }
    let b = (m - Matrix3::identity() * q) / p;
    let r = (b.determinant() / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    [e1, 3.0 * q - e1 - e3, e3]
}

fn hermitian2_eigs(a: f64, b: C64, d: f64) -> [f64; 2] {
    let mid = (a + d) / 2.0;
    let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
    [mid + rad, mid - rad]
}

fn sign_counts(eigs: &[f64]) -> InvariantTriple {
    InvariantTriple::new(0, eigs.iter().filter(|l| **l > 0.0).count(), eigs.iter().filter(|l| **l < 0.0).count())
}

fn random_orthogonal3(rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let p = so3_from_su2(&Su2::random(rng));
    DMatrix::from_fn(3, 3, |i, j| p.matrix()[(i, j)])
}

fn real_sample(rng: &mut ChaCha8Rng, kind: usize) -> (DMatrix<f64>, Option<InvariantTriple>) {
    let u = |rng: &mut ChaCha8Rng| rng.random_range(0.3..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let base = match kind {
        0 => return (DMatrix::from_fn(4, 3, |_, _| rng.random_range(-1.0..1.0)), None),
        1 => {
            // Lightlike column plus two spacelike ones: (1, 0, 2).
            let (a, s, t) = (u(rng), u(rng), u(rng));
            (DMatrix::from_row_slice(4, 3, &[a, 0.0, 0.0, a, 0.0, 0.0, 0.0, s, 0.0, 0.0, 0.0, t]), InvariantTriple::new(1, 0, 2))
        }
        2 => {
            // Timelike, spacelike and zero columns: (0, 1, 1).
            let (a, s) = (u(rng), u(rng));
            (DMatrix::from_row_slice(4, 3, &[a, 0.0, 0.0, 0.0, s, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]), InvariantTriple::new(0, 1, 1))
        }
        _ => {
            let scale = if rng.random_bool(0.5) { 1e3 } else { 1e-3 };
            return (DMatrix::from_fn(4, 3, |_, _| scale * rng.random_range(-1.0..1.0)), None);
        }
    };
    let (pin, _) = random_pin(rng, 3);
    let q = lorentz_from_pin(&pin);
    let qd = DMatrix::from_fn(4, 4, |i, j| q.matrix()[(i, j)]);
    (qd * base.0 * random_orthogonal3(rng), Some(base.1))
}

fn complex_sample(rng: &mut ChaCha8Rng, kind: usize) -> (DMatrix<C64>, Option<InvariantTriple>) {
    let z = |rng: &mut ChaCha8Rng| C64::from_polar(rng.random_range(0.3..2.0), rng.random_range(0.0..std::f64::consts::TAU));
    let zero = C64::new(0.0, 0.0);
    let base = match kind {
        0 => return (DMatrix::from_fn(4, 2, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))), None),
        1 => {
            let (a, s) = (z(rng), z(rng));
            (DMatrix::from_row_slice(4, 2, &[a, zero, zero, s, a, zero, zero, zero]), InvariantTriple::new(1, 1, 0))
        }
        2 => {
            let (a, b) = (z(rng), z(rng));
            (DMatrix::from_row_slice(4, 2, &[a, zero, zero, b, a, zero, zero, b]), InvariantTriple::new(2, 0, 0))
        }
        _ => {
            let scale = if rng.random_bool(0.5) { 1e3 } else { 1e-3 };
            return (DMatrix::from_fn(4, 2, |_, _| c(scale * rng.random_range(-1.0..1.0), scale * rng.random_range(-1.0..1.0))), None);
        }
    };
    let w = Su22::random(rng, 0.5);
    let wd = DMatrix::from_fn(4, 4, |i, j| w.matrix()[(i, j)]);
    let s = Su2::random(rng);
    let sd = DMatrix::from_fn(2, 2, |i, j| s.matrix()[(i, j)]);
    (wd * base.0 * sd, Some(base.1))
}

// 3. HSVD contract.
fn hsvd_contract() -> Outcome {
    let mut o = Outcome::new(3, "hsvd_contract");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 10_000;
    let (mut contract_bad, mut oracle_checked, mut oracle_bad, mut built, mut built_match) = (0, 0, 0, 0, 0);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let (a, built_triple) = real_sample(&mut rng, i % 4);
        let Ok(h) = hsvd_real(&a, Metric::minkowski(), DEFAULT_TOL) else {
            contract_bad += 1;
            continue;
        };
        let chk = check(&a, &h);
        worst = worst.max(chk.reconstruction).max(chk.l_membership).max(chk.r_unitarity);
        if !chk.passes(1e-9) {
            contract_bad += 1;
        }
        if let Some(t) = built_triple {
            built += 1;
            built_match += usize::from(h.triple() == t);
        }
        let mut gram = Matrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                gram[(i, j)] = (0..4).map(|r| ETA[r] * a[(r, i)] * a[(r, j)]).sum();
            }
        }
        let eigs = sym3_eigs(&gram);
        let smax = a.clone().svd(false, false).singular_values.max();
        if eigs.iter().all(|l| l.abs() > 10.0 * DEFAULT_TOL * smax * smax) {
            oracle_checked += 1;
            oracle_bad += usize::from(sign_counts(&eigs) != h.triple());
        }
    }
    for i in 0..n {
        let (a, built_triple) = complex_sample(&mut rng, i % 4);
        let Ok(h) = hsvd_complex(&a, DEFAULT_TOL) else {
            contract_bad += 1;
            continue;
        };
        let chk = check(&a, &h);
        worst = worst.max(chk.reconstruction).max(chk.l_membership).max(chk.r_unitarity);
        if !chk.passes(1e-9) {
            contract_bad += 1;
        }
        if let Some(t) = built_triple {
            built += 1;
            built_match += usize::from(h.triple() == t);
        }
        let g = |i: usize, j: usize| -> C64 { (0..4).map(|r| a[(r, i)].conj() * a[(r, j)] * OMEGA[r]).sum() };
        let eigs = hermitian2_eigs(g(0, 0).re, g(0, 1), g(1, 1).re);
        let smax = a.clone().svd(false, false).singular_values.max();
        if eigs.iter().all(|l| l.abs() > 10.0 * DEFAULT_TOL * smax * smax) {
            oracle_checked += 1;
            oracle_bad += usize::from(sign_counts(&eigs) != h.triple());
        }
    }
    o.pass = contract_bad == 0 && oracle_bad == 0;
    o.detail = format!("{contract_bad} contract failures of {}, worst residual {worst:.2e}; oracle disagreements {oracle_bad} of {oracle_checked}", 2 * n);
    o.info.push(format!("constructed lightlike and rank-deficient inputs: {built_match} of {built} triples recovered"));
    o
}

// 4. Determinant identities.
fn determinants() -> Outcome {
    let mut o = Outcome::new(4, "determinant_identities");
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut printed, mut factored, mut half, mut seven) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let mut m: f64 = rng.random_range(0.0..2.0);
        if (m - 0.5).abs() < 1e-3 {
            m += 0.01;
        }
        let (a1, a2, a3) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let s = appendix::case123_system(m, a1, a2).expect("m away from 1/2");
        printed = printed.max(s.printed_relative_error());
        factored = factored.max(s.factored_relative_error());
        half = half.max(appendix::mhalf_system(a1, a2).printed_relative_error());
        seven = seven.max(appendix::case789_system(m, a1, a2, a3).printed_relative_error());
    }
    let t = start.elapsed();
    o.pass = printed < 1e-9 && half < 1e-9 && seven < 1e-9 && t < Duration::from_secs(5);
    o.explained = factored < 1e-9 && half < 1e-9 && seven < 1e-9 && t < Duration::from_secs(5);
    o.detail = format!("max relative error: first system {printed:.2e}, half-mass {half:.2e}, three-value {seven:.2e}; runtime {}", seconds(t));
    o.info.push(format!("first system against the squared factorization: {factored:.2e}"));
    o.info.push("half-mass system is assembled with entry (3,4) = −2a₁a₂".into());
    o
}

// 5. Symmetry invariance.
fn symmetry() -> Outcome {
    let mut o = Outcome::new(5, "symmetry_invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut reflection_bad, mut proper_bad, mut missing_rows, mut total) = (0, 0, Vec::new(), 0);
    let mut swaps = 0;
    for row in 1..=10u8 {
        let Ok(d) = generate(row, &Params::new(), Some(u64::from(row))) else {
            missing_rows.push(row);
            continue;
        };
        let before = invariants(&d.configuration).expect("generated configuration");
        for _ in 0..100 {
            total += 1;
            let s = Su2::random(&mut rng);
            let (t, _) = random_pin(&mut rng, 3);
            let cfg = apply_transform(&d.configuration, &s, &t);
            let ok = verify(&cfg, 1e-9).is_solution
                && invariants(&cfg).map(|a| (a.a, a.j, a.psi) == (before.a, before.j, before.psi)).unwrap_or(false);
            if !ok {
                if t.preserves_dirac_adjoint() {
                    proper_bad += 1;
                } else {
                    reflection_bad += 1;
                    if let Ok(a) = invariants(&cfg) {
                        swaps += usize::from(a.psi == InvariantTriple::new(before.psi.d, before.psi.y, before.psi.x) && before.psi.x != before.psi.y);
                    }
                }
            }
        }
    }
    let mut hom: f64 = 0.0;
    for _ in 0..1000 {
        let (s1, s2) = (Su2::random(&mut rng), Su2::random(&mut rng));
        let lhs = so3_from_su2(&s1.compose(&s2));
        let rhs = so3_from_su2(&s1).matrix() * so3_from_su2(&s2).matrix();
        hom = hom.max((lhs.matrix() - rhs).norm());
        let ((t1, _), (t2, _)) = (random_pin(&mut rng, 3), random_pin(&mut rng, 3));
        let l12 = lorentz_from_pin(&t1.compose(&t2));
        let prod = lorentz_from_pin(&t1).matrix() * lorentz_from_pin(&t2).matrix();
        hom = hom.max((l12.matrix() - prod).norm() / prod.norm().max(1.0));
    }
    o.pass = reflection_bad == 0 && proper_bad == 0 && missing_rows.is_empty() && hom < 1e-10;
    o.explained = proper_bad == 0 && missing_rows.iter().all(|r| *r == 3) && hom < 1e-10;
    o.detail = format!(
        "{} failing pairs of {total} (reflection-containing {reflection_bad}, orientation-preserving {proper_bad}); rows without instances {missing_rows:?}; homomorphism defect {hom:.2e}",
        reflection_bad + proper_bad
    );
    o.info.push(format!("{swaps} reflection failures show the Ψ triple with x and y swapped"));
    o
}

// 6. Zero-current equivalence.
fn zero_current() -> Outcome {
    let mut o = Outcome::new(6, "zero_current_equivalence");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut disagreements, mut zeros) = (0, 0);
    for i in 0..10_000 {
        let psi = match i % 4 {
            0 => Spinor::from_fn(|_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))),
            1 => {
                let mask: u8 = rng.random();
                let mut psi = Spinor::from_fn(|_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
                for idx in 0..8 {
                    if mask & (1 << idx) == 0 {
                        psi[(idx / 2, idx % 2)] = C64::new(0.0, 0.0);
                    }
                }
                psi
            }
            2 => build_configuration(1, &Params::new(), Some(i as u64)).expect("row 1 builds").0.psi,
            _ => {
                let psi = build_configuration(1, &Params::new(), Some(i as u64)).expect("row 1 builds").0.psi;
                psi + Spinor::from_fn(|_, _| c(rng.random_range(-1e-4..1e-4), rng.random_range(-1e-4..1e-4)))
            }
        };
        let zero = current(&psi).max_norm() < 1e-10;
        zeros += usize::from(zero);
        disagreements += usize::from(zero != zero_current_holds(&psi, 1e-10));
    }
    let mut nullity: f64 = 0.0;
    for seed in 0..1000 {
        let (cfg, _) = build_configuration(1, &Params::new(), Some(seed)).expect("row 1 builds");
        nullity = nullity.max(spinor_gram(&cfg.psi).norm());
    }
    o.pass = disagreements == 0 && nullity < 1e-12;
    o.detail = format!("{disagreements} disagreements on 10000 spinors ({zeros} with zero current); max ‖Ψ†ωΨ‖ on zero-current parameters {nullity:.2e}");
    o
}

// 7. Perturbation order check.
fn perturbation() -> Outcome {
    let mut o = Outcome::new(7, "perturbation_order");
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut bad, mut missing_rows) = (Vec::new(), Vec::new());
    let (mut r0, mut mismatch, mut ratio_lo, mut ratio_hi) = (0.0f64, 0.0f64, f64::INFINITY, 0.0f64);
    for row in 1..=10u8 {
        let mut row_bad = 0;
        for draw in 0..100u64 {
            let bg = match generate(row, &Params::new(), Some(draw)).and_then(|d| Background::from_descriptor(&d)) {
                Ok(bg) => bg,
                Err(_) => {
                    if draw == 0 {
                        missing_rows.push(row);
                    }
                    break;
                }
            };
            let k = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let pert = PerturbationState::PlaneWave { k, amplitudes: Amplitudes::random(&mut rng, 1.0) };
            let chk = residual_first_order(&bg, &pert, 0.01).expect("valid epsilon");
            r0 = r0.max(chk.r0);
            mismatch = mismatch.max(chk.operator_mismatch);
            ratio_lo = ratio_lo.min(chk.ratio);
            ratio_hi = ratio_hi.max(chk.ratio);
            if !(chk.r0 < 1e-10 && chk.operator_mismatch < 1e-6 && (3.5..=4.5).contains(&chk.ratio)) {
                row_bad += 1;
            }
        }
        if row_bad > 0 {
            bad.push((row, row_bad));
        }
    }
    let t = start.elapsed();
    let in_time = t < Duration::from_secs(30);
    o.pass = bad.is_empty() && missing_rows.is_empty() && in_time;
    o.explained = bad.is_empty() && missing_rows.iter().all(|r| *r == 3) && in_time;
    o.detail = format!(
        "rows without background {missing_rows:?}; failing draws {bad:?}; max r0 {r0:.2e}, max mismatch {mismatch:.2e}, ratio range [{ratio_lo:.3}, {ratio_hi:.3}]; runtime {}",
        seconds(t)
    );
    o
}

// 8. Eigenvalue identity for row-3 spinors.
fn row3_eigenvalues() -> Outcome {
    let mut o = Outcome::new(8, "row3_gram_eigenvalues");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut samples: Vec<([C64; 4], f64)> = Vec::new();
    let r2 = std::f64::consts::SQRT_2;
    for a1 in [0.5f64, 1.0, 2.0] {
        let a3 = a1.powi(3);
        let d = c((a3 / 2.0).sqrt(), 0.0);
        samples.push(([d, d, d * c(0.0, 1.0), d * c(0.0, -1.0)], a1));
        samples.push(([c(0.0, a3.sqrt()), c(0.0, 0.0), c(0.0, 0.0), c(a3.sqrt(), 0.0)], a1));
        let k = c((a3 / r2).sqrt(), 0.0);
        samples.push(([k * c(0.0, 1.0), c(0.0, 0.0), k, c((r2 * a3).sqrt(), 0.0)], a1));
    }
    while samples.len() < 1000 {
        let a1 = rng.random_range(0.5..2.0);
        samples.push((classifier::sample_rank_two(&mut rng, a1), a1));
    }
    let (mut invalid, mut err, mut err_doubled) = (0, 0.0f64, 0.0f64);
    for ([g, d, k, n], a1) in &samples {
        if classifier::constraint_residuals(
            3,
            &params(&[("G", ParamValue::Complex(*g)), ("D", ParamValue::Complex(*d)), ("K", ParamValue::Complex(*k)), ("N", ParamValue::Complex(*n)), ("a1", ParamValue::Real(*a1))]),
        )
        .map(|rs| rs.iter().any(|r| r.value > 1e-10 * (1.0 + a1.powi(3))))
        .unwrap_or(true)
        {
            invalid += 1;
            continue;
        }
        let gram = spinor_gram(&classifier::rank_two_spinor(*g, *d, *k, *n));
        let mut eigs = hermitian2_eigs(gram[(0, 0)].re, gram[(0, 1)], gram[(1, 1)].re);
        eigs.sort_by(f64::total_cmp);
        let mut want = [d.norm_sqr() - n.norm_sqr(), g.norm_sqr() - k.norm_sqr()];
        want.sort_by(f64::total_cmp);
        for i in 0..2 {
            err = err.max((eigs[i] - want[i]).abs());
            err_doubled = err_doubled.max((eigs[i] - 2.0 * want[i]).abs());
        }
    }
    o.pass = invalid == 0 && err < 1e-10;
    o.explained = invalid == 0 && err_doubled < 1e-10;
    o.detail = format!("{} samples ({invalid} violating the constraints), max eigenvalue error {err:.2e}", samples.len());
    o.info.push(format!("against twice the quoted values: max error {err_doubled:.2e}"));
    o
}

fn main() {
    let outcomes = [round_trip(), closed_forms(), hsvd_contract(), determinants(), symmetry(), zero_current(), perturbation(), row3_eigenvalues()];
    let mut unexpected = Vec::new();
    for o in &outcomes {
        println!("{} criterion {} {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.name, o.detail);
        for line in &o.info {
            println!("  INFO {line}");
        }
        match KNOWN_RED.iter().find(|(id, _)| *id == o.id) {
            Some((_, why)) if !o.pass => {
                println!("  INFO known red: {why}");
                if !o.explained {
                    unexpected.push(o.id);
                }
            }
            Some(_) => println!("  INFO listed as known red but passed"),
            None if !o.pass => unexpected.push(o.id),
            None => {}
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("acceptance: {passed}/{} PASS", outcomes.len());
    if !unexpected.is_empty() {
        println!("acceptance: unexplained failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
