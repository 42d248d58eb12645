//! Model Hamiltonians for open quantum systems.
//!
//! A closed system `H0` coupled to `C` decay channels acquires an
//! environment-induced complex perturbation. Two builders cover the common
//! cases: the energy-independent wideband form `H0 − (i/2)·α·V·V†` and the
//! energy-dependent form whose channel factor carries a principal-value real
//! part and a residuum imaginary part. A third constructor produces the
//! genuine 2×2 non-Hermitian Hamiltonian with complex diagonal energies.
//!
//! Width convention: eigenvalues are stored raw; the reported decay width of
//! a state is `Γ_k = −2·Im(λ_k)`, non-negative for decaying states.

mod builders;
mod poles;

pub use builders::{build_energy_dependent, build_two_level, build_wideband, channel_factor};
pub use poles::{solve_poles, PoleResult};

use cnum_linalg::{CMatrix, LinalgError, C64};

/// Relative tolerance for the Hermiticity check on `H0`.
pub const H0_HERMITICITY_TOL: f64 = 1e-12;

/// Band-edge exclusion zone, relative to the band width.
pub const BAND_EDGE_REL_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("closed-system matrix is not Hermitian: relative defect {defect:e}")]
    NotHermitian { defect: f64 },
    #[error("invalid band for channel {channel}: {reason}")]
    InvalidBand { channel: usize, reason: &'static str },
    #[error("energy {energy} sits on a band edge of channel {channel}")]
    BandEdge { channel: usize, energy: f64 },
    #[error("coupling strength must be finite and non-negative, got {alpha}")]
    InvalidCoupling { alpha: f64 },
    #[error("parameter {name} is not finite")]
    NonFiniteParameter { name: &'static str },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, ModelError>;

/// Hermitian Hamiltonian of the closed system.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedSystem {
    h0: CMatrix,
    levels: Option<Vec<f64>>,
}

impl ClosedSystem {
    /// From a full Hermitian matrix (checked within [`H0_HERMITICITY_TOL`] relative).
    pub fn from_matrix(h0: CMatrix) -> Result<Self> {
        if !h0.is_square() {
            return Err(ModelError::DimensionMismatch {
                context: "ClosedSystem matrix must be square",
                expected: h0.nrows(),
                actual: h0.ncols(),
            });
        }
        let defect = h0.hermiticity_defect();
        let scale = h0.frobenius_norm().max(1.0);
        if defect > H0_HERMITICITY_TOL * scale {
            return Err(ModelError::NotHermitian {
                defect: defect / scale,
            });
        }
        Ok(Self { h0, levels: None })
    }

    /// From a list of real level energies, interpreted as `diag(levels)`.
    pub fn from_levels(levels: &[f64]) -> Result<Self> {
        if levels.is_empty() {
            return Err(ModelError::DimensionMismatch {
                context: "ClosedSystem needs at least one level",
                expected: 1,
                actual: 0,
            });
        }
        for &e in levels {
            if !e.is_finite() {
                return Err(ModelError::NonFiniteParameter { name: "levels" });
            }
        }
        let h0 = CMatrix::from_real_diag(levels)?;
        Ok(Self {
            h0,
            levels: Some(levels.to_vec()),
        })
    }

    pub fn dim(&self) -> usize {
        self.h0.nrows()
    }

    pub fn h0(&self) -> &CMatrix {
        &self.h0
    }

    /// Level list when the system was built from one.
    pub fn levels(&self) -> Option<&[f64]> {
        self.levels.as_deref()
    }
}

/// One decay channel's continuum: a flat band `[e_min, e_max]` with constant
/// level density `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub e_min: f64,
    pub e_max: f64,
    pub rho: f64,
}

impl Band {
    pub fn new(e_min: f64, e_max: f64, rho: f64) -> std::result::Result<Self, &'static str> {
        if !e_min.is_finite() || !e_max.is_finite() || !rho.is_finite() {
            return Err("band parameters must be finite");
        }
        if e_min >= e_max {
            return Err("e_min must be below e_max");
        }
        if rho <= 0.0 {
            return Err("level density rho must be positive");
        }
        Ok(Self { e_min, e_max, rho })
    }

    pub fn width(&self) -> f64 {
        self.e_max - self.e_min
    }

    pub fn contains(&self, energy: f64) -> bool {
        energy > self.e_min && energy < self.e_max
    }
}

/// Coupling of the closed system to its decay channels: the `N×C` coupling
/// matrix plus the per-channel band model.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    v: CMatrix,
    bands: Vec<Band>,
}

impl ChannelSet {
    pub fn new(v: CMatrix, bands: Vec<Band>) -> Result<Self> {
        if bands.len() != v.ncols() {
            return Err(ModelError::DimensionMismatch {
                context: "ChannelSet bands per channel",
                expected: v.ncols(),
                actual: bands.len(),
            });
        }
        Ok(Self { v, bands })
    }

    /// Convenience constructor with one identical band for every channel.
    pub fn uniform(v: CMatrix, band: Band) -> Result<Self> {
        let bands = vec![band; v.ncols()];
        Self::new(v, bands)
    }

    pub fn n_states(&self) -> usize {
        self.v.nrows()
    }

    pub fn n_channels(&self) -> usize {
        self.v.ncols()
    }

    pub fn v(&self) -> &CMatrix {
        &self.v
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    /// `Σ_{k,c} |v_{kc}|²`, the total coupling strength entering the width sum rule.
    pub fn total_coupling_sq(&self) -> f64 {
        self.v.entries().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Parameters of the genuine 2×2 non-Hermitian Hamiltonian:
/// complex energies `ε_i = e_i + (i/2)γ_i` and coupling `ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelParams {
    pub e1: f64,
    pub gamma1: f64,
    pub e2: f64,
    pub gamma2: f64,
    pub omega: C64,
}

impl TwoLevelParams {
    pub fn new(e1: f64, gamma1: f64, e2: f64, gamma2: f64, omega: C64) -> Result<Self> {
        for (name, x) in [
            ("e1", e1),
            ("gamma1", gamma1),
            ("e2", e2),
            ("gamma2", gamma2),
            ("omega.re", omega.re),
            ("omega.im", omega.im),
        ] {
            if !x.is_finite() {
                return Err(ModelError::NonFiniteParameter { name });
            }
        }
        Ok(Self {
            e1,
            gamma1,
            e2,
            gamma2,
            omega,
        })
    }

    /// `ε_1 = e_1 + (i/2)γ_1`.
    pub fn epsilon1(&self) -> C64 {
        C64::new(self.e1, 0.5 * self.gamma1)
    }

    /// `ε_2 = e_2 + (i/2)γ_2`.
    pub fn epsilon2(&self) -> C64 {
        C64::new(self.e2, 0.5 * self.gamma2)
    }
}

/// Which construction produced an effective Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianKind {
    Wideband { alpha: f64 },
    EnergyDependent { energy: f64 },
    TwoLevel,
}

/// Record of the inputs a Hamiltonian was built from.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Coupled {
        closed: ClosedSystem,
        channels: ChannelSet,
    },
    TwoLevel(TwoLevelParams),
}

/// A constructed non-Hermitian matrix together with its origin.
#[derive(Debug, Clone)]
pub struct EffectiveHamiltonian {
    pub matrix: CMatrix,
    pub kind: HamiltonianKind,
    pub provenance: Provenance,
}

impl EffectiveHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_system_rejects_non_hermitian_matrices() {
        let m = CMatrix::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(0.5, 0.1)],
            vec![C64::new(0.5, 0.1), C64::new(2.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            ClosedSystem::from_matrix(m),
            Err(ModelError::NotHermitian { .. })
        ));
    }

    #[test]
    fn closed_system_from_levels_is_diagonal() {
        let cs = ClosedSystem::from_levels(&[1.0, -2.0]).unwrap();
        assert_eq!(cs.dim(), 2);
        assert_eq!(cs.h0()[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(cs.h0()[(1, 1)], C64::new(-2.0, 0.0));
        assert_eq!(cs.h0()[(0, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn band_validation() {
        assert!(Band::new(-1.0, 1.0, 0.5).is_ok());
        assert!(Band::new(1.0, -1.0, 0.5).is_err());
        assert!(Band::new(-1.0, 1.0, 0.0).is_err());
        assert!(Band::new(f64::NAN, 1.0, 0.5).is_err());
    }

    #[test]
    fn channel_set_requires_band_per_channel() {
        let v = CMatrix::zeros(3, 2);
        let band = Band::new(-1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            ChannelSet::new(v.clone(), vec![band]),
            Err(ModelError::DimensionMismatch { .. })
        ));
        assert!(ChannelSet::uniform(v, band).is_ok());
    }

    #[test]
    fn two_level_params_reject_non_finite() {
        assert!(TwoLevelParams::new(1.0, 0.0, -1.0, 0.0, C64::new(0.0, 1.0)).is_ok());
        assert!(TwoLevelParams::new(f64::NAN, 0.0, -1.0, 0.0, C64::new(0.0, 1.0)).is_err());
    }
}
