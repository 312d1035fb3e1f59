//! Simulation toolkit for composite qubit systems and polygon toy theories
//! viewed as generalized probabilistic theories.
//!
//! The crate is layered bottom-up:
//!
//! - [`operator`]: small dense Hermitian operators (tensor products, partial
//!   transpose, Pauli decomposition, spectra, Bloch states).
//! - [`gpt`]: polygon and square-bit systems with the dot-product pairing.
//! - [`composition`]: minimal, maximal and quantum composition rules for two
//!   qubits, POPT membership and separable certificates.
//! - [`capacity`]: perfect distinguishability, information capacity and
//!   dimension, and the trace accounting behind the capacity bound `d^k`.
//! - [`game`]: the information-causality game, mutual information and the
//!   `I_N <= Θ` check.
//! - [`scenarios`]: named end-to-end reproductions with expected values.
//! - [`schema`]: JSON document parsers used by the command-line front end.

pub mod capacity;
pub mod composition;
pub mod error;
pub mod game;
pub mod gpt;
mod lp;
pub mod measurement;
mod nelder_mead;
pub mod operator;
pub mod scenarios;
pub mod schema;

pub use error::{Error, Result};
pub use measurement::Measurement;
pub use operator::{BlochVector, ComplexMatrix, HermitianOperator, PauliCoefficients, Subsystem};

/// Absolute tolerance used for every approximate comparison unless the
/// caller overrides it.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Angular grid points per axis on each Bloch sphere for POPT searches.
pub const DEFAULT_GRID_DENSITY: usize = 32;

/// Numerical knobs shared by the membership tests, oracles and scenarios.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Settings {
    pub tol: f64,
    pub grid_density: usize,
    /// Seed for the randomized sweeps in the scenario suite.
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            grid_density: DEFAULT_GRID_DENSITY,
            seed: 0x1C_2022,
        }
    }
}

impl Settings {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.grid_density < 8 {
            return Err(Error::InvalidParameter(format!(
                "grid density must be at least 8, got {}",
                self.grid_density
            )));
        }
        Ok(())
    }
}
