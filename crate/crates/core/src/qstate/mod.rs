//! Qubit and qudit states, observables, Bell operators and the
//! separable-surrogate certificate.
//!
//! Qudits (`d > 2`) are supported for state construction, partial traces and
//! the certificate only; Bell operators and observables are qubit-only.

mod bell;
mod certificate;
mod observable;
mod operator;
mod pauli;
mod state;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use bell::{bell_operator, quantum_value, quantum_value_mixed, BellOperator, MAX_BELL_QUBITS, MAX_DENSE_BELL_QUBITS};
pub use certificate::{
    scbi_certificate, scbi_certificate_generalized_ghz, separable_surrogate, CertificateReport, CERTIFICATE_TOL,
};
pub use observable::{Mat2, MeasurementPlane, MeasurementScenario, Observable};
pub use operator::{DensityOperator, HermitianOperator, QuantumState, DENSITY_EIGEN_TOL, EXPECTATION_IMAG_TOL};
pub use pauli::{
    pauli_expansion_w, reconstruct_from_pauli, Pauli, PauliCorrelations, PauliWord, WPauliPattern, WPauliTerm,
    MAX_TENSOR_QUBITS,
};
pub use state::{dicke_state, generalized_ghz, ghz, w_state, PureState};

/// Largest state-vector (and diagonal density) length.
pub const MAX_STATE_DIM: usize = 1 << 20;

/// Largest dimension of a dense operator (`dim x dim` complex entries).
pub const MAX_DENSE_DIM: usize = 2048;

/// `d^n`, rejected when it exceeds `limit`.
pub(crate) fn checked_dim(local_dim: usize, n_parties: usize, limit: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..n_parties {
        dim = dim.checked_mul(local_dim).filter(|&v| v <= limit).ok_or(Error::TooLarge {
            what: "Hilbert-space dimension",
            value: local_dim.saturating_pow(n_parties as u32),
            limit,
        })?;
    }
    Ok(dim)
}

/// Wire format `{d, n, amplitudes: [[re, im], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub d: usize,
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateJson {
    pub fn from_state<R: Real>(state: &PureState<R>) -> Self {
        Self {
            d: state.local_dim(),
            n: state.n_parties(),
            amplitudes: state
                .amplitudes()
                .iter()
                .map(|c| [c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN)])
                .collect(),
        }
    }

    pub fn to_state<R: Real>(&self) -> Result<PureState<R>> {
        let amps = self.amplitudes.iter().map(|[re, im]| Complex::new(R::lit(*re), R::lit(*im))).collect();
        PureState::new(self.d, self.n, amps)
    }
}
