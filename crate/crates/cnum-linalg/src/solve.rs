//! LU-based linear solves, used for Green-function applications `(E − H)⁻¹·v`.

use num_complex::Complex64 as C64;

use crate::{defaults, CMatrix, CVector, LinalgError, Result};

/// Relative pivot threshold below which the matrix counts as singular.
const PIVOT_EPS: f64 = 1e-14;

struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    scale: f64,
}

fn factorize(m: &CMatrix) -> Result<Lu> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = lu[(col, col)].norm_sqr();
        for row in (col + 1)..n {
            let mag = lu[(row, col)].norm_sqr();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag.sqrt() <= PIVOT_EPS * scale {
            return Err(LinalgError::Singular { pivot_index: col });
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = lu[(col, j)];
                lu[(col, j)] = lu[(pivot_row, j)];
                lu[(pivot_row, j)] = tmp;
            }
            perm.swap(col, pivot_row);
        }
        let pivot = lu[(col, col)];
        for row in (col + 1)..n {
            let factor = lu[(row, col)] / pivot;
            lu[(row, col)] = factor;
            for j in (col + 1)..n {
                let update = lu[(col, j)] * factor;
                lu[(row, j)] -= update;
            }
        }
    }
    Ok(Lu { lu, perm, scale })
}

impl Lu {
    fn solve(&self, b: &CVector) -> CVector {
        let n = self.lu.nrows();
        let mut y = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = b[self.perm[i]];
            for j in 0..i {
                s -= self.lu[(i, j)] * y[j];
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in (i + 1)..n {
                s -= self.lu[(i, j)] * y[j];
            }
            y[i] = s / self.lu[(i, i)];
        }
        CVector::from_raw(y)
    }

    #[allow(dead_code)]
    fn scale(&self) -> f64 {
        self.scale
    }
}

fn residual(m: &CMatrix, x: &CVector, b: &CVector) -> CVector {
    let mut r = Vec::with_capacity(b.dim());
    for i in 0..m.nrows() {
        let mut s = b[i];
        for j in 0..m.ncols() {
            s -= m[(i, j)] * x[j];
        }
        r.push(s);
    }
    CVector::from_raw(r)
}

/// Solves `M·x = b` with partial-pivot LU and iterative refinement.
///
/// Guarantees `‖M·x − b‖ ≤ tol_solve·‖b‖` (with `tol_solve` from
/// [`defaults::TOL_SOLVE`]) or reports the matrix as singular /
/// ill-conditioned — the latter signals an energy sitting on a pole.
pub fn solve_linear(m: &CMatrix, b: &CVector) -> Result<CVector> {
    if m.nrows() != b.dim() {
        return Err(LinalgError::DimensionMismatch {
            context: "solve_linear right-hand side",
            expected: m.nrows(),
            actual: b.dim(),
        });
    }
    let lu = factorize(m)?;
    let mut x = lu.solve(b);
    let b_norm = b.norm();
    let bound = defaults::TOL_SOLVE * b_norm.max(f64::MIN_POSITIVE);
    for _ in 0..2 {
        let r = residual(m, &x, b);
        if r.norm() <= bound {
            return Ok(x);
        }
        let d = lu.solve(&r);
        for i in 0..x.dim() {
            let di = d[i];
            x[i] += di;
        }
    }
    let final_res = residual(m, &x, b).norm();
    if final_res <= bound {
        Ok(x)
    } else {
        Err(LinalgError::IllConditioned {
            residual: final_res / b_norm.max(f64::MIN_POSITIVE),
        })
    }
}

/// Solves `M·X = B` column by column, sharing one factorization.
pub fn solve_linear_multi(m: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if m.nrows() != b.nrows() {
        return Err(LinalgError::DimensionMismatch {
            context: "solve_linear_multi right-hand side",
            expected: m.nrows(),
            actual: b.nrows(),
        });
    }
    let lu = factorize(m)?;
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, b.ncols());
    for col in 0..b.ncols() {
        let rhs = CVector::from_raw((0..n).map(|i| b[(i, col)]).collect());
        let rhs_norm = rhs.norm();
        let bound = defaults::TOL_SOLVE * rhs_norm.max(f64::MIN_POSITIVE);
        let mut x = lu.solve(&rhs);
        for _ in 0..2 {
            let r = residual(m, &x, &rhs);
            if r.norm() <= bound {
                break;
            }
            let d = lu.solve(&r);
            for i in 0..n {
                let di = d[i];
                x[i] += di;
            }
        }
        let final_res = residual(m, &x, &rhs).norm();
        if final_res > bound {
            return Err(LinalgError::IllConditioned {
                residual: final_res / rhs_norm.max(f64::MIN_POSITIVE),
            });
        }
        for i in 0..n {
            out[(i, col)] = x[i];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_rhs() {
        let m = CMatrix::identity(3);
        let b = CVector::new(vec![
            C64::new(1.0, -2.0),
            C64::new(0.5, 0.5),
            C64::new(-3.0, 0.0),
        ])
        .unwrap();
        let x = solve_linear(&m, &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn diagonal_solve() {
        let m = CMatrix::from_real_diag(&[2.0, 4.0]).unwrap();
        let b = CVector::from_real(&[2.0, 4.0]).unwrap();
        let x = solve_linear(&m, &b).unwrap();
        assert!((x[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((x[1] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn random_well_conditioned_has_tiny_residual() {
        // fixed entries, diagonally dominant so conditioning is mild
        let n = 6;
        let mut m = CMatrix::zeros(n, n);
        let mut seed = 1u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = C64::new(next(), next());
            }
            m[(i, i)] += C64::new(4.0, 0.0);
        }
        let b = CVector::new((0..n).map(|_| C64::new(next(), next())).collect()).unwrap();
        let x = solve_linear(&m, &b).unwrap();
        let r = residual(&m, &x, &b);
        assert!(r.norm() < 1e-12 * b.norm().max(1.0), "residual {}", r.norm());
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = CMatrix::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)],
            vec![C64::new(2.0, 0.0), C64::new(4.0, 0.0)],
        ])
        .unwrap();
        let b = CVector::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(
            solve_linear(&m, &b),
            Err(LinalgError::Singular { .. })
        ));
    }

    #[test]
    fn rhs_dimension_mismatch() {
        let m = CMatrix::identity(2);
        let b = CVector::from_real(&[1.0]).unwrap();
        assert!(matches!(
            solve_linear(&m, &b),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }
}
