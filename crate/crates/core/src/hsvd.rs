//! Hyperbolic singular value decomposition.
//!
//! For a matrix `A` (n×N) and a diagonal form η of signature (p, q), p + q = n,
//! finds `L` with `L† η L = η` and unitary `R` such that `L† A R = Σ` where
//! Σ has the canonical pattern
//!
//! ```text
//!     [ I_d  0   0   0 ]   p rows
//!     [  0   X   0   0 ]
//!     [  0   0   0   0 ]
//!     [ I_d  0   0   0 ]   q rows
//!     [  0   0   Y   0 ]
//!     [  0   0   0   0 ]
//! ```
//!
//! with positive diagonal `X` (x entries) and `Y` (y entries), both
//! non-increasing. Column order of Σ is: lightlike pairs, positive, negative,
//! kernel.

use nalgebra::{ComplexField, DMatrix, DVector};

use crate::algebra::{Metric, C64};
use crate::error::{Error, Result};

/// Default relative tolerance for rank and sign decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// The triple (d, x, y): lightlike multiplicity and numbers of positive and
/// negative eigenvalues of the Gram form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct InvariantTriple {
    pub d: usize,
    pub x: usize,
    pub y: usize,
}

impl InvariantTriple {
    pub const fn new(d: usize, x: usize, y: usize) -> Self {
        InvariantTriple { d, x, y }
    }

    pub fn total(&self) -> usize {
        self.d + self.x + self.y
    }
}

impl std::fmt::Display for InvariantTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "d={} x={} y={}", self.d, self.x, self.y)
    }
}

#[derive(Debug, Clone)]
pub struct Hsvd<T> {
    pub l: DMatrix<T>,
    pub sigma: DMatrix<f64>,
    pub r: DMatrix<T>,
    pub d: usize,
    pub x: usize,
    pub y: usize,
    pub signature: Metric,
    pub warnings: Vec<String>,
}

pub type RealHsvd = Hsvd<f64>;
pub type ComplexHsvd = Hsvd<C64>;

impl<T> Hsvd<T> {
    pub fn triple(&self) -> InvariantTriple {
        InvariantTriple::new(self.d, self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HsvdOptions {
    pub tol: f64,
    /// Ask for det R = 1 (and det L = 1 in the complex case).
    pub special: bool,
}

impl Default for HsvdOptions {
    fn default() -> Self {
        HsvdOptions { tol: DEFAULT_TOL, special: false }
    }
}

/// Scalars the decomposition runs over: `f64` and `Complex<f64>`.
pub trait HsvdScalar: ComplexField<RealField = f64> + Copy {
    /// Unit scalar u with u·z real and positive.
    fn unit_towards_positive(z: Self) -> Self;
    /// Adjust `h` in place so that det R = 1 (and det L = 1 where possible).
    fn enforce_special(h: &mut Hsvd<Self>, slots: &[Vec<usize>], free: &[usize], kernel: &[usize]);
}

impl HsvdScalar for f64 {
    fn unit_towards_positive(z: f64) -> f64 {
        if z < 0.0 {
            -1.0
        } else {
            1.0
        }
    }

    fn enforce_special(h: &mut Hsvd<f64>, slots: &[Vec<usize>], _free: &[usize], kernel: &[usize]) {
        if h.r.determinant() > 0.0 {
            return;
        }
        let ncols = h.r.ncols();
        if ncols % 2 == 1 {
            // (-L)ᵀ A (-R) = LᵀAR and det(-R) = -det R for odd N.
            h.l.neg_mut();
            h.r.neg_mut();
        } else if let Some(&k) = kernel.last() {
            h.r.column_mut(k).neg_mut();
        } else {
            h.r.column_mut(0).neg_mut();
            for &s in &slots[0] {
                h.l.column_mut(s).neg_mut();
            }
        }
    }
}

impl HsvdScalar for C64 {
    fn unit_towards_positive(z: C64) -> C64 {
        let m = z.norm();
        if m == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            z.conj() / m
        }
    }

    fn enforce_special(h: &mut Hsvd<C64>, slots: &[Vec<usize>], free: &[usize], kernel: &[usize]) {
        let det_r = h.r.determinant();
        let fix = phase_of(det_r).conj();
        if let Some(&k) = kernel.last() {
            scale_column(&mut h.r, k, fix);
        } else {
            scale_column(&mut h.r, 0, fix);
            for &s in &slots[0] {
                scale_column(&mut h.l, s, fix);
            }
        }
        let det_l = h.l.determinant();
        if (det_l - C64::new(1.0, 0.0)).norm() < 1e-12 {
            return;
        }
        if let Some(&f) = free.first() {
            let fix = phase_of(det_l).conj();
            scale_column(&mut h.l, f, fix);
        } else if (det_l + C64::new(1.0, 0.0)).norm() < 1e-9 {
            // Flip one L column; the matching row of Σ changes sign.
            let s = slots.iter().flatten().next().copied().unwrap_or(0);
            h.l.column_mut(s).neg_mut();
            h.sigma.row_mut(s).neg_mut();
        } else {
            h.warnings.push(format!(
                "det L = {:.6}{:+.6}i cannot be normalized without breaking the canonical pattern",
                det_l.re, det_l.im
            ));
        }
    }
}

fn phase_of(z: C64) -> C64 {
    let m = z.norm();
    if m == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        z / m
    }
}

fn scale_column(m: &mut DMatrix<C64>, j: usize, s: C64) {
    for z in m.column_mut(j).iter_mut() {
        *z *= s;
    }
}

/// HSVD of a real matrix under the given signature.
pub fn hsvd_real(a: &DMatrix<f64>, signature: Metric, tol: f64) -> Result<RealHsvd> {
    hsvd_with(a, signature, HsvdOptions { tol, special: false })
}

/// HSVD of a complex matrix under ω = diag(1, 1, -1, -1).
pub fn hsvd_complex(psi: &DMatrix<C64>, tol: f64) -> Result<ComplexHsvd> {
    hsvd_with(psi, Metric::omega(), HsvdOptions { tol, special: false })
}

/// HSVD with full options.
pub fn hsvd_with<T: HsvdScalar>(a: &DMatrix<T>, signature: Metric, opts: HsvdOptions) -> Result<Hsvd<T>> {
    let (n, ncols) = a.shape();
    if n != signature.dim() {
        return Err(Error::InvalidArgument(format!(
            "signature {signature} does not match {n} rows"
        )));
    }
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if a.iter().any(|z| !z.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let p = signature.p;
    let q = signature.q;
    let eta = signature.diagonal();
    let tol = opts.tol;
    let mut warnings = Vec::new();

    let svals = a.clone().svd(false, false).singular_values;
    let smax = svals.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(Hsvd {
            l: DMatrix::identity(n, n),
            sigma: DMatrix::zeros(n, ncols),
            r: DMatrix::identity(ncols, ncols),
            d: 0,
            x: 0,
            y: 0,
            signature,
            warnings,
        });
    }
    let rank_thr = tol * smax;
    let eig_thr = tol * smax * smax;
    let rank = svals.iter().filter(|s| **s > rank_thr).count();
    if svals.iter().any(|s| in_warning_band(*s, tol, smax)) {
        warnings.push("ill-conditioned rank decision: a singular value lies near the rank tolerance".into());
    }

    let gram = form_gram(a, &eta);
    let eig = gram.symmetric_eigen();
    let lambdas = eig.eigenvalues;
    let mut vecs = eig.eigenvectors;
    for j in 0..ncols {
        normalize_column_phase(&mut vecs, j);
    }
    if lambdas.iter().any(|l| in_warning_band(l.abs(), tol, smax * smax)) {
        warnings.push("ill-conditioned sign decision: an eigenvalue of the Gram form lies near the tolerance".into());
    }

    let mut pos: Vec<usize> = (0..ncols).filter(|&i| lambdas[i] > eig_thr).collect();
    let mut neg: Vec<usize> = (0..ncols).filter(|&i| lambdas[i] < -eig_thr).collect();
    let null: Vec<usize> = (0..ncols).filter(|&i| lambdas[i].abs() <= eig_thr).collect();
    pos.sort_by(|&i, &j| lambdas[j].total_cmp(&lambdas[i]));
    neg.sort_by(|&i, &j| lambdas[i].total_cmp(&lambdas[j]));
    let x = pos.len();
    let y = neg.len();

    // Split the null eigenspace into lightlike directions and the kernel.
    let z = DMatrix::from_fn(ncols, null.len(), |r, c| vecs[(r, null[c])]);
    let bz = a * &z;
    let bp = bz.rows(0, p).into_owned();
    // nalgebra rejects empty matrices, so an empty null space skips the split.
    let (pvals, pvecs) = if null.is_empty() {
        (DVector::<f64>::zeros(0), DMatrix::<T>::zeros(0, 0))
    } else {
        let pe = (bp.adjoint() * &bp).symmetric_eigen();
        (pe.eigenvalues, pe.eigenvectors)
    };
    let mut order: Vec<usize> = (0..null.len()).collect();
    order.sort_by(|&i, &j| pvals[j].total_cmp(&pvals[i]));
    let rotated = &z * &pvecs;
    let mut light: Vec<DVector<T>> = Vec::new();
    let mut kernel_vecs: Vec<DVector<T>> = Vec::new();
    for &i in &order {
        let s = pvals[i].max(0.0).sqrt();
        let mut col = rotated.column(i).into_owned();
        normalize_vec_phase(&mut col);
        if s > rank_thr && light.len() + x < p && light.len() + y < q {
            light.push(col);
        } else {
            if s > rank_thr {
                warnings.push("lightlike direction exceeds the available block size; treated as kernel".into());
            }
            kernel_vecs.push(col);
        }
    }
    let d = light.len();
    if d + x + y != rank {
        warnings.push(format!(
            "rank {rank} differs from d + x + y = {}; numerical rank decision is unreliable",
            d + x + y
        ));
    }

    // L columns for the non-null directions: l = η_ss · η A r / √|λ|.
    let mut l = DMatrix::<T>::zeros(n, n);
    let mut filled = vec![false; n];
    let mut sigma = DMatrix::<f64>::zeros(n, ncols);
    let mut r = DMatrix::<T>::zeros(ncols, ncols);
    let mut slots: Vec<Vec<usize>> = Vec::with_capacity(ncols);
    let mut placed: Vec<(usize, DVector<T>)> = Vec::new();

    for (j, zj) in light.iter().enumerate() {
        r.set_column(j, zj);
        sigma[(j, j)] = 1.0;
        sigma[(p + j, j)] = 1.0;
        slots.push(vec![j, p + j]);
    }
    for (i, &k) in pos.iter().enumerate() {
        let col = d + i;
        let slot = d + i;
        let rv = vecs.column(k).into_owned();
        let sv = lambdas[k].sqrt();
        let lv = apply_form(&eta, &(a * &rv)) * T::from_real(1.0 / sv);
        r.set_column(col, &rv);
        sigma[(slot, col)] = sv;
        placed.push((slot, lv));
        slots.push(vec![slot]);
    }
    for (i, &k) in neg.iter().enumerate() {
        let col = d + x + i;
        let slot = p + d + i;
        let rv = vecs.column(k).into_owned();
        let sv = (-lambdas[k]).sqrt();
        let lv = apply_form(&eta, &(a * &rv)) * T::from_real(-1.0 / sv);
        r.set_column(col, &rv);
        sigma[(slot, col)] = sv;
        placed.push((slot, lv));
        slots.push(vec![slot]);
    }
    let kernel_cols: Vec<usize> = (d + x + y..ncols).collect();
    for (i, kv) in kernel_vecs.iter().enumerate() {
        r.set_column(d + x + y + i, kv);
        slots.push(Vec::new());
    }

    // Lightlike pairs: l_a = (c + u)/2, l_b = (c - u)/2 with u = η w, w = A z,
    // c η-null, η-orthogonal to everything placed so far and with c† w = 2.
    if d > 0 {
        let ws: Vec<DVector<T>> = light.iter().map(|zj| a * zj).collect();
        let us: Vec<DVector<T>> = ws.iter().map(|w| apply_form(&eta, w)).collect();
        let c1: Vec<DVector<T>> = ws
            .iter()
            .map(|w| {
                let v = w * T::from_real(2.0 / w.norm_squared());
                project_off(&eta, &placed, &signature, v)
            })
            .collect();
        for j in 0..d {
            let mut cj = c1[j].clone();
            for k in 0..d {
                let mkj = form_inner(&eta, &c1[k], &c1[j]);
                cj -= &us[k] * (mkj * T::from_real(0.25));
            }
            let la = (&cj + &us[j]) * T::from_real(0.5);
            let lb = (&cj - &us[j]) * T::from_real(0.5);
            placed.push((j, la));
            placed.push((p + j, lb));
        }
    }
    for (slot, v) in &placed {
        l.set_column(*slot, v);
        filled[*slot] = true;
    }

    // Complete L with a form-orthonormal basis of the complement.
    let free: Vec<usize> = (0..n).filter(|&s| !filled[s]).collect();
    if !free.is_empty() {
        let need_pos: Vec<usize> = free.iter().copied().filter(|&s| s < p).collect();
        let need_neg: Vec<usize> = free.iter().copied().filter(|&s| s >= p).collect();
        let e = DMatrix::<T>::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() });
        let mut proj = DMatrix::<T>::zeros(n, n);
        for m in 0..n {
            let v = project_off(&eta, &placed, &signature, e.column(m).into_owned());
            proj.set_column(m, &v);
        }
        let k = form_gram(&proj, &eta).symmetric_eigen();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| k.eigenvalues[j].total_cmp(&k.eigenvalues[i]));
        let take_pos = &idx[..need_pos.len()];
        let take_neg: Vec<usize> = idx.iter().rev().take(need_neg.len()).copied().collect();
        for (slot, &i) in need_pos.iter().zip(take_pos) {
            let mu = k.eigenvalues[i];
            if mu <= 0.0 {
                return Err(Error::InvalidArgument("failed to complete the indefinite basis".into()));
            }
            let mut v = &proj * k.eigenvectors.column(i) * T::from_real(1.0 / mu.sqrt());
            normalize_vec_phase(&mut v);
            l.set_column(*slot, &v);
        }
        for (slot, &i) in need_neg.iter().zip(&take_neg) {
            let mu = k.eigenvalues[i];
            if mu >= 0.0 {
                return Err(Error::InvalidArgument("failed to complete the indefinite basis".into()));
            }
            let mut v = &proj * k.eigenvectors.column(i) * T::from_real(1.0 / (-mu).sqrt());
            normalize_vec_phase(&mut v);
            l.set_column(*slot, &v);
        }
    }

    let mut h = Hsvd { l, sigma, r, d, x, y, signature, warnings };
    if opts.special {
        T::enforce_special(&mut h, &slots, &free, &kernel_cols);
    }
    Ok(h)
}

fn in_warning_band(v: f64, tol: f64, scale: f64) -> bool {
    v >= 0.1 * tol * scale && v <= 10.0 * tol * scale
}

/// M† η M, made exactly Hermitian.
fn form_gram<T: HsvdScalar>(m: &DMatrix<T>, eta: &[f64]) -> DMatrix<T> {
    let mut em = m.clone();
    for (i, s) in eta.iter().enumerate() {
        if *s < 0.0 {
            em.row_mut(i).neg_mut();
        }
    }
    let g = m.adjoint() * em;
    (&g + g.adjoint()) * T::from_real(0.5)
}

fn apply_form<T: HsvdScalar>(eta: &[f64], v: &DVector<T>) -> DVector<T> {
    DVector::from_fn(v.len(), |i, _| v[i] * T::from_real(eta[i]))
}

/// u† η v.
fn form_inner<T: HsvdScalar>(eta: &[f64], u: &DVector<T>, v: &DVector<T>) -> T {
    u.iter()
        .zip(v.iter())
        .zip(eta)
        .fold(T::zero(), |acc, ((a, b), s)| acc + a.conjugate() * *b * T::from_real(*s))
}

fn project_off<T: HsvdScalar>(eta: &[f64], placed: &[(usize, DVector<T>)], sig: &Metric, mut v: DVector<T>) -> DVector<T> {
    for (slot, l) in placed {
        let coeff = form_inner(eta, l, &v) * T::from_real(sig.sign(*slot));
        v -= l * coeff;
    }
    v
}

fn normalize_vec_phase<T: HsvdScalar>(v: &mut DVector<T>) {
    let mut best = 0;
    for i in 0..v.len() {
        if v[i].modulus() > v[best].modulus() {
            best = i;
        }
    }
    if v.is_empty() {
        return;
    }
    let u = T::unit_towards_positive(v[best]);
    for z in v.iter_mut() {
        *z *= u;
    }
}

fn normalize_column_phase<T: HsvdScalar>(m: &mut DMatrix<T>, j: usize) {
    let mut col = m.column(j).into_owned();
    normalize_vec_phase(&mut col);
    m.set_column(j, &col);
}

/// Invariant triple of `m` under `form`, with thresholds relative to the
/// largest singular value.
pub fn invariant_triple<T: HsvdScalar>(m: &DMatrix<T>, form: Metric, tol: f64) -> Result<InvariantTriple> {
    analyze_triple(m, form, tol, 0.0).map(|a| a.triple)
}

/// Triple together with any warnings raised while deciding it.
#[derive(Debug, Clone)]
pub struct TripleAnalysis {
    pub triple: InvariantTriple,
    pub warnings: Vec<String>,
}

/// Invariant triple with thresholds relative to max(σ_max, `floor`).
///
/// A positive floor makes the decision absolute for matrices whose entries
/// are all small, which is what is wanted for quantities that vanish
/// analytically but carry rounding noise.
pub fn analyze_triple<T: HsvdScalar>(m: &DMatrix<T>, form: Metric, tol: f64, floor: f64) -> Result<TripleAnalysis> {
    if m.nrows() != form.dim() {
        return Err(Error::InvalidArgument(format!(
            "form {form} does not match {} rows",
            m.nrows()
        )));
    }
    let mut warnings = Vec::new();
    let svals = m.clone().svd(false, false).singular_values;
    let smax = svals.iter().cloned().fold(0.0, f64::max);
    let scale = smax.max(floor);
    if scale == 0.0 {
        return Ok(TripleAnalysis { triple: InvariantTriple::default(), warnings });
    }
    let rank = svals.iter().filter(|s| **s > tol * scale).count();
    let lambdas = form_gram(m, &form.diagonal()).symmetric_eigenvalues();
    let x = lambdas.iter().filter(|l| **l > tol * scale * scale).count();
    let y = lambdas.iter().filter(|l| **l < -tol * scale * scale).count();
    let d = if rank >= x + y {
        rank - x - y
    } else {
        warnings.push(format!("rank {rank} below x + y = {}; d clamped to 0", x + y));
        0
    };
    Ok(TripleAnalysis { triple: InvariantTriple::new(d, x, y), warnings })
}

/// Checks of the decomposition contract, all measured as Frobenius norms.
#[derive(Debug, Clone, Copy)]
pub struct HsvdCheck {
    /// ‖L† A R - Σ‖ / max(1, ‖A‖).
    pub reconstruction: f64,
    /// ‖L† η L - η‖.
    pub l_membership: f64,
    /// ‖R† R - I‖.
    pub r_unitarity: f64,
    /// Whether Σ has the canonical block pattern.
    pub canonical: bool,
}

impl HsvdCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.reconstruction < tol && self.l_membership < tol && self.r_unitarity < tol && self.canonical
    }
}

/// Measure how well `h` satisfies the decomposition contract for `a`.
pub fn check<T: HsvdScalar>(a: &DMatrix<T>, h: &Hsvd<T>) -> HsvdCheck {
    let n = a.nrows();
    let eta = h.signature.diagonal();
    let sig_t = h.sigma.map(|s| T::from_real(s));
    let recon = (h.l.adjoint() * a * &h.r - sig_t).norm() / a.norm().max(1.0);
    let eta_m = DMatrix::<T>::from_fn(n, n, |r, c| if r == c { T::from_real(eta[r]) } else { T::zero() });
    let l_mem = (h.l.adjoint() * &eta_m * &h.l - &eta_m).norm();
    let nc = h.r.ncols();
    let r_uni = (h.r.adjoint() * &h.r - DMatrix::<T>::identity(nc, nc)).norm();
    HsvdCheck {
        reconstruction: recon,
        l_membership: l_mem,
        r_unitarity: r_uni,
        canonical: canonical_pattern(&h.sigma, h.signature, h.d, h.x, h.y),
    }
}

/// Whether Σ matches the block pattern for (d, x, y). Entries are compared
/// exactly except for the sign of a single row, which the special-determinant
/// variant may flip.
pub fn canonical_pattern(sigma: &DMatrix<f64>, sig: Metric, d: usize, x: usize, y: usize) -> bool {
    let p = sig.p;
    let (n, ncols) = sigma.shape();
    if n != sig.dim() || d + x > p || d + y > sig.q || d + x + y > ncols {
        return false;
    }
    let mut expected_nonzero = vec![vec![false; ncols]; n];
    for j in 0..d {
        expected_nonzero[j][j] = true;
        expected_nonzero[p + j][j] = true;
        if sigma[(j, j)].abs() != 1.0 || sigma[(p + j, j)].abs() != 1.0 {
            return false;
        }
    }
    let mut xs = Vec::new();
    for i in 0..x {
        expected_nonzero[d + i][d + i] = true;
        xs.push(sigma[(d + i, d + i)].abs());
    }
    let mut ys = Vec::new();
    for i in 0..y {
        expected_nonzero[p + d + i][d + x + i] = true;
        ys.push(sigma[(p + d + i, d + x + i)].abs());
    }
    let nonincreasing = |v: &[f64]| v.windows(2).all(|w| w[0] >= w[1]) && v.iter().all(|s| *s > 0.0);
    if !nonincreasing(&xs) || !nonincreasing(&ys) {
        return false;
    }
    for r in 0..n {
        for c in 0..ncols {
            if !expected_nonzero[r][c] && sigma[(r, c)] != 0.0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::c;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn real(rows: usize, cols: usize, data: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(rows, cols, data)
    }

    #[test]
    fn zero_matrix_is_trivial() {
        let a = DMatrix::<f64>::zeros(4, 3);
        let h = hsvd_real(&a, Metric::minkowski(), 1e-9).unwrap();
        assert_eq!(h.triple(), InvariantTriple::new(0, 0, 0));
        assert_eq!(h.l, DMatrix::identity(4, 4));
        assert_eq!(h.r, DMatrix::identity(3, 3));
        assert_eq!(h.sigma, DMatrix::zeros(4, 3));
    }

    #[test]
    fn canonical_input_is_fixed_point() {
        let a = real(4, 3, &[3.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let h = hsvd_real(&a, Metric::minkowski(), 1e-9).unwrap();
        assert_eq!(h.triple(), InvariantTriple::new(0, 1, 2));
        assert!((&h.sigma - &a).norm() < 1e-14);
        assert!((&h.l - DMatrix::<f64>::identity(4, 4)).norm() < 1e-14);
        assert!(check(&a, &h).passes(1e-12));
    }

    #[test]
    fn lightlike_spinor_is_fixed_point() {
        let mut psi = DMatrix::<C64>::zeros(4, 2);
        psi[(0, 0)] = c(1.0, 0.0);
        psi[(2, 0)] = c(1.0, 0.0);
        let h = hsvd_complex(&psi, 1e-9).unwrap();
        assert_eq!(h.triple(), InvariantTriple::new(1, 0, 0));
        let want = psi.map(|z| z.re);
        assert!((&h.sigma - &want).norm() < 1e-14);
        assert!(check(&psi, &h).passes(1e-12));
    }

    #[test]
    fn zero_spinor() {
        let h = hsvd_complex(&DMatrix::<C64>::zeros(4, 2), 1e-9).unwrap();
        assert_eq!(h.triple(), InvariantTriple::new(0, 0, 0));
    }

    #[test]
    fn rejects_bad_arguments() {
        let a = DMatrix::<f64>::zeros(3, 3);
        assert!(hsvd_real(&a, Metric::minkowski(), 1e-9).is_err());
        let a = DMatrix::<f64>::zeros(4, 3);
        assert!(hsvd_real(&a, Metric::minkowski(), 0.0).is_err());
        let mut a = DMatrix::<f64>::zeros(4, 3);
        a[(0, 0)] = f64::NAN;
        assert!(hsvd_real(&a, Metric::minkowski(), 1e-9).is_err());
    }

    #[test]
    fn table_triples() {
        // Single lightlike column.
        let a = real(4, 3, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(invariant_triple(&a, Metric::minkowski(), 1e-9).unwrap(), InvariantTriple::new(1, 0, 0));
        // Two spacelike columns.
        let a = real(4, 3, &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(invariant_triple(&a, Metric::minkowski(), 1e-9).unwrap(), InvariantTriple::new(0, 0, 2));
        // Single entry in the negative block of the spinor form.
        let mut psi = DMatrix::<C64>::zeros(4, 2);
        psi[(2, 1)] = c(4.0, 0.0);
        assert_eq!(invariant_triple(&psi, Metric::omega(), 1e-9).unwrap(), InvariantTriple::new(0, 0, 1));
    }

    #[test]
    fn lightlike_with_other_blocks() {
        // d = 1 together with spacelike columns.
        let a = real(4, 3, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.7, 0.0, 0.0, 0.0, 0.2]);
        let h = hsvd_real(&a, Metric::minkowski(), 1e-9).unwrap();
        assert_eq!(h.triple(), InvariantTriple::new(1, 0, 2));
        assert!(check(&a, &h).passes(1e-12), "{:?}", check(&a, &h));
        // Two lightlike columns under ω.
        let mut psi = DMatrix::<C64>::zeros(4, 2);
        psi[(0, 0)] = c(1.0, 0.0);
        psi[(1, 1)] = c(0.0, 2.0);
        psi[(2, 0)] = c(0.0, 1.0);
        psi[(3, 1)] = c(-2.0, 0.0);
        let h = hsvd_complex(&psi, 1e-9).unwrap();
        assert_eq!(h.triple(), InvariantTriple::new(2, 0, 0));
        assert!(check(&psi, &h).passes(1e-12), "{:?}", check(&psi, &h));
    }

    #[test]
    fn lightlike_after_random_lorentz_mixing() {
        // A boosted null column keeps d = 1 and reconstructs.
        let ch = 1.3f64.cosh();
        let sh = 1.3f64.sinh();
        let a = real(4, 3, &[ch + sh, 0.0, 0.0, sh + ch, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0]);
        let h = hsvd_real(&a, Metric::minkowski(), 1e-9).unwrap();
        assert_eq!(h.triple(), InvariantTriple::new(1, 0, 1));
        assert!(check(&a, &h).passes(1e-10), "{:?}", check(&a, &h));
    }

    #[test]
    fn special_determinants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = DMatrix::<f64>::from_fn(4, 3, |_, _| rng.random_range(-1.0..1.0));
            let h = hsvd_with(&a, Metric::minkowski(), HsvdOptions { tol: 1e-9, special: true }).unwrap();
            assert!((h.r.determinant() - 1.0).abs() < 1e-10);
            assert!(check(&a, &h).passes(1e-9));
            let psi = DMatrix::<C64>::from_fn(4, 2, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let h = hsvd_with(&psi, Metric::omega(), HsvdOptions { tol: 1e-9, special: true }).unwrap();
            assert!((h.r.determinant() - c(1.0, 0.0)).norm() < 1e-10);
            assert!((h.l.determinant() - c(1.0, 0.0)).norm() < 1e-10);
            assert!(check(&psi, &h).passes(1e-9));
        }
    }

    #[test]
    fn warning_near_threshold() {
        let a = real(4, 3, &[1.0, 0.0, 0.0, 0.0, 1e-9, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let h = hsvd_real(&a, Metric::minkowski(), 1e-9).unwrap();
        assert!(!h.warnings.is_empty());
    }

    /// Closed-form eigenvalues of a real symmetric 3×3 matrix.
    fn sym3_eigenvalues(m: &DMatrix<f64>) -> [f64; 3] {
        let p1 = m[(0, 1)].powi(2) + m[(0, 2)].powi(2) + m[(1, 2)].powi(2);
        let q = (m[(0, 0)] + m[(1, 1)] + m[(2, 2)]) / 3.0;
        let p2 = (m[(0, 0)] - q).powi(2) + (m[(1, 1)] - q).powi(2) + (m[(2, 2)] - q).powi(2) + 2.0 * p1;
        let p = (p2 / 6.0).sqrt();
        if p == 0.0 {
            return [q, q, q];
        }
        let b = (m - DMatrix::<f64>::identity(3, 3) * q) / p;
        let r = (b.determinant() / 2.0).clamp(-1.0, 1.0);
        let phi = r.acos() / 3.0;
        let e1 = q + 2.0 * p * phi.cos();
        let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
        [e1, 3.0 * q - e1 - e3, e3]
    }

    #[test]
    fn real_triples_match_closed_form_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let eta = DMatrix::<f64>::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, -1.0, -1.0]));
        for _ in 0..500 {
            let a = DMatrix::<f64>::from_fn(4, 3, |_, _| rng.random_range(-1.0..1.0));
            let g = a.transpose() * &eta * &a;
            let ev = sym3_eigenvalues(&g);
            let h = hsvd_real(&a, Metric::minkowski(), 1e-9).unwrap();
            let xs = ev.iter().filter(|l| **l > 0.0).count();
            assert_eq!((h.x, h.y, h.d), (xs, 3 - xs, 0));
            assert!(check(&a, &h).passes(1e-9));
            let mut got: Vec<f64> = (0..h.x)
                .map(|i| h.sigma[(h.d + i, h.d + i)].powi(2))
                .chain((0..h.y).map(|i| -h.sigma[(1 + h.d + i, h.d + h.x + i)].powi(2)))
                .collect();
            let mut want = ev.to_vec();
            got.sort_by(f64::total_cmp);
            want.sort_by(f64::total_cmp);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-8 * (1.0 + w.abs()));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]
            #[test]
            fn real_contract(entries in proptest::collection::vec(-3.0..3.0f64, 12)) {
                let a = DMatrix::from_row_slice(4, 3, &entries);
                let h = hsvd_real(&a, Metric::minkowski(), 1e-9).unwrap();
                let ck = check(&a, &h);
                prop_assert!(ck.passes(1e-9), "{:?}", ck);
            }

            #[test]
            fn complex_contract(entries in proptest::collection::vec(-3.0..3.0f64, 16)) {
                let psi = DMatrix::from_fn(4, 2, |r, c2| c(entries[2 * (2 * r + c2)], entries[2 * (2 * r + c2) + 1]));
                let h = hsvd_complex(&psi, 1e-9).unwrap();
                let ck = check(&psi, &h);
                prop_assert!(ck.passes(1e-9), "{:?}", ck);
            }

            #[test]
            fn rank_deficient_real(u in proptest::collection::vec(-2.0..2.0f64, 4), v in proptest::collection::vec(-2.0..2.0f64, 3)) {
                let a = DMatrix::from_fn(4, 3, |r, c2| u[r] * v[c2]);
                let h = hsvd_real(&a, Metric::minkowski(), 1e-9).unwrap();
                prop_assert!(h.d + h.x + h.y <= 1);
                prop_assert!(check(&a, &h).passes(1e-9));
            }
        }
    }
}
