//! Cross-checks the QR eigensolver against an independent oracle: the
//! characteristic polynomial is built with the Faddeev–LeVerrier recursion
//! (matrix products and traces only) and its roots are found with the
//! Durand–Kerner simultaneous iteration. Neither step shares any code with
//! the Hessenberg/QR path under test.

use cnum_linalg::{defaults, eig_general, CMatrix, C64};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Monic characteristic polynomial coefficients `[c_0, ..., c_{n-1}]` of
/// `p(λ) = λ^n + c_{n-1}λ^{n-1} + ... + c_0` via Faddeev–LeVerrier.
fn char_poly(m: &CMatrix) -> Vec<C64> {
    let n = m.nrows();
    let mut coeffs = vec![C64::new(0.0, 0.0); n];
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = -mk.trace() / (k as f64);
        coeffs[n - k] = ck;
        if k == n {
            break;
        }
        let mut shifted = mk;
        for i in 0..n {
            shifted[(i, i)] += ck;
        }
        mk = m.matmul(&shifted).unwrap();
    }
    coeffs
}

fn eval_poly(coeffs: &[C64], z: C64) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Durand–Kerner simultaneous root iteration on a monic polynomial.
fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len();
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..n)
        .map(|i| seed.powu(i as u32 + 1))
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval_poly(coeffs, roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-13 {
            break;
        }
    }
    roots
}

/// Greedy multiset matching: max over pairs of min distances.
fn multiset_distance(mut a: Vec<C64>, mut b: Vec<C64>) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut worst = 0.0f64;
    while !a.is_empty() {
        let mut best = (0usize, 0usize, f64::INFINITY);
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let d = (x - y).norm();
                if d < best.2 {
                    best = (i, j, d);
                }
            }
        }
        worst = worst.max(best.2);
        a.swap_remove(best.0);
        b.swap_remove(best.1);
    }
    worst
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    m
}

#[test]
fn random_8x8_matches_characteristic_polynomial_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for trial in 0..20 {
        let m = random_matrix(&mut rng, 8);
        let sys = eig_general(&m, defaults::TOL_EIG).expect("eig");
        let coeffs = char_poly(&m);
        let roots = poly_roots(&coeffs);
        let dist = multiset_distance(sys.values(), roots);
        assert!(dist < 1e-8, "trial {trial}: eigenvalue/root mismatch {dist:e}");
    }
}

#[test]
fn characteristic_polynomial_oracle_is_self_consistent() {
    // the oracle itself must reproduce a known spectrum before it judges
    let m = CMatrix::from_diag(&[
        C64::new(1.0, 0.0),
        C64::new(-2.0, 0.5),
        C64::new(0.0, -1.5),
    ])
    .unwrap();
    let coeffs = char_poly(&m);
    let roots = poly_roots(&coeffs);
    let expected = vec![
        C64::new(1.0, 0.0),
        C64::new(-2.0, 0.5),
        C64::new(0.0, -1.5),
    ];
    assert!(multiset_distance(roots, expected) < 1e-10);
}
