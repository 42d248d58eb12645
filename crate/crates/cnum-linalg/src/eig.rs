//! General complex eigendecomposition with paired left/right eigenvectors.
//!
//! The route is the classic dense one: unitary reduction to upper Hessenberg
//! form, shifted QR iteration with Givens rotations down to triangular Schur
//! form `M = Q·T·Q†`, then eigenvectors of `T` by guarded back-substitution.
//! Right vectors are `Q·z` with `(T − λ)z = 0`; left vectors (eigenvectors of
//! `Mᵀ`) are `conj(Q)·w` with `(Tᵀ − λ)w = 0`, so each pair shares one Schur
//! index and no eigenvalue matching step is ever needed — including at exact
//! degeneracies.

use num_complex::Complex64 as C64;

use crate::products::{c_product, h_product};
use crate::{CMatrix, CVector, LinalgError, Result};

/// One eigenvalue with its right and left eigenvectors.
///
/// `left` is an eigenvector of `Mᵀ` (not `M†`), which is what makes the
/// bilinear pairing `c_product(left_i, right_j)` biorthogonal and reduces to
/// `left = right` for complex-symmetric matrices.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: C64,
    pub right: CVector,
    pub left: CVector,
    /// Bilinear pairing `c_product(left, right)`; 1 after biorthonormalization.
    pub c_norm: C64,
    /// Hermitian norm squared of `right`.
    pub h_norm: f64,
    /// Set by [`biorthonormalize`] when the c-norm has collapsed — the pair
    /// sits close to an exceptional point and was left unnormalized.
    pub near_defective: bool,
}

/// Full eigensystem, sorted by ascending real part (ties by imaginary part,
/// then by original Schur index).
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub matrix_dim: usize,
    pub pairs: Vec<EigenPair>,
    pub max_residual: f64,
}

impl EigenSystem {
    pub fn values(&self) -> Vec<C64> {
        self.pairs.iter().map(|p| p.value).collect()
    }
}

const GROWTH_LIMIT: f64 = 1e250;

fn givens(a: C64, b: C64) -> (f64, C64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = (an * an + bn * bn).sqrt();
    (an / r, (a / an) * b.conj() / r)
}

/// Householder reduction to upper Hessenberg form; returns the accumulated
/// unitary `Q` with `A_in = Q·H·Q†`.
fn hessenberg_in_place(a: &mut CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut q = CMatrix::identity(n);
    if n <= 2 {
        return q;
    }
    let mut v = vec![C64::new(0.0, 0.0); n];
    for k in 0..(n - 2) {
        let m = n - (k + 1);
        let alpha = {
            let mut s = 0.0;
            for i in (k + 1)..n {
                s += a[(i, k)].norm_sqr();
            }
            s.sqrt()
        };
        if alpha == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let nu = phase * alpha;
        for i in 0..m {
            v[i] = a[(k + 1 + i, k)];
        }
        v[0] += nu;
        let vnorm2: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // A ← P·A with P = I − β·v·v† acting on rows k+1..n
        for j in k..n {
            let mut s = C64::new(0.0, 0.0);
            for i in 0..m {
                s += v[i].conj() * a[(k + 1 + i, j)];
            }
            s *= beta;
            for i in 0..m {
                let upd = s * v[i];
                a[(k + 1 + i, j)] -= upd;
            }
        }
        // A ← A·P on columns k+1..n
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for j in 0..m {
                s += a[(i, k + 1 + j)] * v[j];
            }
            s *= beta;
            for j in 0..m {
                let upd = s * v[j].conj();
                a[(i, k + 1 + j)] -= upd;
            }
        }
        // Q ← Q·P
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for j in 0..m {
                s += q[(i, k + 1 + j)] * v[j];
            }
            s *= beta;
            for j in 0..m {
                let upd = s * v[j].conj();
                q[(i, k + 1 + j)] -= upd;
            }
        }
        a[(k + 1, k)] = -nu;
        for i in (k + 2)..n {
            a[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    q
}

/// Two eigenvalues of the trailing 2×2 block; returns the one closer to the
/// corner entry (Wilkinson's shift).
fn wilkinson_shift(h: &CMatrix, hi: usize) -> C64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = d + half + disc;
    let mu2 = d + half - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// One explicit shifted QR sweep on the active window `[lo, hi]`,
/// accumulating transformations into `q`.
fn qr_step(h: &mut CMatrix, q: &mut CMatrix, lo: usize, hi: usize, shift: C64) {
    let n = h.nrows();
    for i in lo..=hi {
        let d = h[(i, i)] - shift;
        h[(i, i)] = d;
    }
    let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..n {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        h[(k + 1, k)] = C64::new(0.0, 0.0);
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        for i in 0..=(k + 1) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + s.conj() * y;
            h[(i, k + 1)] = -s * x + y * c;
        }
        for i in 0..n {
            let x = q[(i, k)];
            let y = q[(i, k + 1)];
            q[(i, k)] = x * c + s.conj() * y;
            q[(i, k + 1)] = -s * x + y * c;
        }
    }
    for i in lo..=hi {
        let d = h[(i, i)] + shift;
        h[(i, i)] = d;
    }
}

/// Shifted QR iteration to upper triangular Schur form.
fn schur_in_place(h: &mut CMatrix, q: &mut CMatrix) -> Result<()> {
    let n = h.nrows();
    if n == 1 {
        return Ok(());
    }
    let scale = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let total_budget = 40 * n.max(10);
    let mut total_iters = 0usize;
    let mut stagnant = 0usize;
    let mut hi = n - 1;
    loop {
        let mut lo = hi;
        while lo > 0 {
            let off = h[(lo, lo - 1)].norm();
            let local = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let threshold = eps * if local > 0.0 { local } else { scale };
            if off <= threshold {
                h[(lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            if hi == 0 {
                return Ok(());
            }
            hi -= 1;
            stagnant = 0;
            continue;
        }
        total_iters += 1;
        stagnant += 1;
        if total_iters > total_budget {
            return Err(LinalgError::NonConvergence {
                worst_residual: h[(hi, hi - 1)].norm() / scale,
            });
        }
        let shift = if stagnant > 0 && stagnant % 12 == 0 {
            // exceptional shift breaks shift-invariant stalls
            let mut s = h[(hi, hi - 1)].norm();
            if hi >= lo + 2 {
                s += h[(hi - 1, hi - 2)].norm();
            }
            h[(hi, hi)] + C64::new(s, 0.0)
        } else {
            wilkinson_shift(h, hi)
        };
        qr_step(h, q, lo, hi, shift);
    }
}

/// Solves `(T − λ_k)z = 0` by back-substitution, guarding tiny denominators
/// so defective clusters yield a usable (parallel) eigenvector instead of NaN.
fn schur_right_vector(t: &CMatrix, k: usize, smallnum: f64) -> Vec<C64> {
    let n = t.nrows();
    let lambda = t[(k, k)];
    let mut z = vec![C64::new(0.0, 0.0); n];
    z[k] = C64::new(1.0, 0.0);
    for i in (0..k).rev() {
        let mut s = C64::new(0.0, 0.0);
        for j in (i + 1)..=k {
            s += t[(i, j)] * z[j];
        }
        let mut den = t[(i, i)] - lambda;
        if den.norm() < smallnum {
            den = C64::new(smallnum, 0.0);
        }
        z[i] = -s / den;
        if z[i].norm() > GROWTH_LIMIT {
            let inv = 1.0 / z[i].norm();
            for w in z[i..=k].iter_mut() {
                *w *= inv;
            }
        }
    }
    z
}

/// Solves `(Tᵀ − λ_k)w = 0` by forward substitution on the lower-triangular
/// transpose; support on indices `k..n`.
fn schur_left_vector(t: &CMatrix, k: usize, smallnum: f64) -> Vec<C64> {
    let n = t.nrows();
    let lambda = t[(k, k)];
    let mut w = vec![C64::new(0.0, 0.0); n];
    w[k] = C64::new(1.0, 0.0);
    for i in (k + 1)..n {
        let mut s = C64::new(0.0, 0.0);
        for j in k..i {
            s += t[(j, i)] * w[j];
        }
        let mut den = t[(i, i)] - lambda;
        if den.norm() < smallnum {
            den = C64::new(smallnum, 0.0);
        }
        w[i] = -s / den;
        if w[i].norm() > GROWTH_LIMIT {
            let inv = 1.0 / w[i].norm();
            for x in w[k..=i].iter_mut() {
                *x *= inv;
            }
        }
    }
    w
}

/// Rotates the vector so its largest-magnitude component is real positive
/// (argument in `(−π/2, π/2]` in particular). First strict maximum wins,
/// which keeps the convention deterministic.
fn canonical_phase(data: &mut [C64]) {
    let mut best = 0usize;
    let mut best_mag = 0.0f64;
    for (i, z) in data.iter().enumerate() {
        let mag = z.norm_sqr();
        if mag > best_mag {
            best_mag = mag;
            best = i;
        }
    }
    if best_mag == 0.0 {
        return;
    }
    let z = data[best];
    let phase = z / z.norm();
    let rot = phase.conj();
    for z in data.iter_mut() {
        *z *= rot;
    }
}

fn normalize(data: &mut [C64]) -> f64 {
    let norm = data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        let inv = 1.0 / norm;
        for z in data.iter_mut() {
            *z *= inv;
        }
    }
    norm
}

/// Full eigendecomposition of a square complex matrix.
///
/// Always returns `n` eigenpairs, defective inputs included. Fails with
/// [`LinalgError::NonConvergence`] only if the QR iteration exhausts its
/// budget or the final residuals exceed `tol_eig·‖M‖_F`.
pub fn eig_general(m: &CMatrix, tol_eig: f64) -> Result<EigenSystem> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    for (index, z) in m.entries().iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(LinalgError::NonFinite { index });
        }
    }
    let n = m.nrows();
    let scale = m.frobenius_norm();

    let mut t = m.clone();
    let mut q = hessenberg_in_place(&mut t);
    schur_in_place(&mut t, &mut q)?;

    let smallnum = f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    let m_t = m.transpose();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (la, lb) = (t[(a, a)], t[(b, b)]);
        la.re
            .total_cmp(&lb.re)
            .then_with(|| la.im.total_cmp(&lb.im))
            .then_with(|| a.cmp(&b))
    });

    let mut pairs = Vec::with_capacity(n);
    let mut max_residual = 0.0f64;
    for &k in &order {
        let lambda = t[(k, k)];
        let z = schur_right_vector(&t, k, smallnum);
        let w = schur_left_vector(&t, k, smallnum);

        let mut right = vec![C64::new(0.0, 0.0); n];
        let mut left = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut sr = C64::new(0.0, 0.0);
            let mut sl = C64::new(0.0, 0.0);
            // z has support on 0..=k, w on k..n
            for (j, zj) in z.iter().enumerate().take(k + 1) {
                sr += q[(i, j)] * zj;
            }
            for (j, wj) in w.iter().enumerate().skip(k) {
                sl += q[(i, j)].conj() * wj;
            }
            right[i] = sr;
            left[i] = sl;
        }
        normalize(&mut right);
        normalize(&mut left);
        canonical_phase(&mut right);
        canonical_phase(&mut left);

        let right = CVector::from_raw(right);
        let left = CVector::from_raw(left);

        let r_res = m.matvec(&right)?.sub(&right.scale(lambda))?.norm();
        let l_res = m_t.matvec(&left)?.sub(&left.scale(lambda))?.norm();
        max_residual = max_residual.max(r_res).max(l_res);

        let c_norm = c_product(&left, &right)?;
        let h_norm = h_product(&right, &right)?.re;
        pairs.push(EigenPair {
            value: lambda,
            right,
            left,
            c_norm,
            h_norm,
            near_defective: false,
        });
    }

    if max_residual > tol_eig * scale.max(f64::MIN_POSITIVE) {
        return Err(LinalgError::NonConvergence {
            worst_residual: max_residual,
        });
    }

    Ok(EigenSystem {
        matrix_dim: n,
        pairs,
        max_residual,
    })
}

/// Rescales each pair so `c_product(left_k, right_k) = 1`, then applies the
/// sign convention (largest-magnitude component of `right` has argument in
/// `(−π/2, π/2]`, both vectors flipped together so a complex-symmetric
/// matrix keeps `left = right`).
///
/// Pairs with `|c_norm| < tol_defect·h_norm` are flagged `near_defective`
/// and left untouched: a collapsing c-norm is the exceptional-point
/// signature, information rather than failure.
pub fn biorthonormalize(mut sys: EigenSystem, tol_defect: f64) -> EigenSystem {
    for pair in &mut sys.pairs {
        let c = match c_product(&pair.left, &pair.right) {
            Ok(c) => c,
            Err(_) => continue,
        };
        pair.c_norm = c;
        if c.norm() < tol_defect * pair.h_norm.max(f64::MIN_POSITIVE) {
            pair.near_defective = true;
            continue;
        }
        let s = c.sqrt();
        let inv = C64::new(1.0, 0.0) / s;
        let mut right = pair.right.scale(inv);
        let mut left = pair.left.scale(inv);

        // joint sign flip — the only phase freedom left once c_norm = 1
        let mut best = 0usize;
        let mut best_mag = 0.0f64;
        for (i, z) in right.iter().enumerate() {
            if z.norm_sqr() > best_mag {
                best_mag = z.norm_sqr();
                best = i;
            }
        }
        let zb = right[best];
        let flip = zb.re < 0.0 || (zb.re == 0.0 && zb.im < 0.0);
        if flip {
            right = right.scale(C64::new(-1.0, 0.0));
            left = left.scale(C64::new(-1.0, 0.0));
        }

        pair.c_norm = c_product(&left, &right).expect("dims match");
        pair.h_norm = h_product(&right, &right).expect("dims match").re;
        pair.near_defective = false;
        pair.right = right;
        pair.left = left;
    }
    sys
}
