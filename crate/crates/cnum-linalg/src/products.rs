//! The two inner products of non-Hermitian quantum mechanics.

use num_complex::Complex64 as C64;

use crate::{CVector, LinalgError, Result};

fn check_dims(u: &CVector, v: &CVector, context: &'static str) -> Result<()> {
    if u.dim() != v.dim() {
        return Err(LinalgError::DimensionMismatch {
            context,
            expected: u.dim(),
            actual: v.dim(),
        });
    }
    Ok(())
}

/// Bilinear c-product `Σ_m u_m·v_m` — no conjugation.
///
/// This is the natural pairing for biorthogonal eigenvectors; a vector can be
/// c-orthogonal to itself (e.g. `(1, i)`), which is the signature of an
/// eigenvector at an exceptional point.
pub fn c_product(u: &CVector, v: &CVector) -> Result<C64> {
    check_dims(u, v, "c_product")?;
    Ok(u.iter().zip(v.iter()).map(|(a, b)| a * b).sum())
}

/// Hermitian product `Σ_m conj(u_m)·v_m`.
pub fn h_product(u: &CVector, v: &CVector) -> Result<C64> {
    check_dims(u, v, "h_product")?;
    Ok(u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(entries: &[(f64, f64)]) -> CVector {
        CVector::new(entries.iter().map(|&(re, im)| C64::new(re, im)).collect()).unwrap()
    }

    #[test]
    fn self_orthogonal_ep_vector() {
        let u = cv(&[(1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(c_product(&u, &u).unwrap(), C64::new(0.0, 0.0));
        // the Hermitian product of the same vector is 2
        assert_eq!(h_product(&u, &u).unwrap(), C64::new(2.0, 0.0));
    }

    #[test]
    fn orthogonal_basis_vectors() {
        let u = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        let v = cv(&[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(c_product(&u, &v).unwrap(), C64::new(0.0, 0.0));
        assert_eq!(h_product(&u, &v).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn real_ones_vector() {
        let u = cv(&[(1.0, 0.0), (1.0, 0.0)]);
        assert_eq!(c_product(&u, &u).unwrap(), C64::new(2.0, 0.0));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let u = cv(&[(1.0, 0.0)]);
        let v = cv(&[(1.0, 0.0), (0.0, 0.0)]);
        assert!(matches!(
            c_product(&u, &v),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            h_product(&u, &v),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }
}
