//! Separable-surrogate certificates for sub-correlation inequalities.
//!
//! A sub-correlation inequality only sees marginals on `N - 1` parties. If
//! every single-party-traced marginal of a state coincides with the
//! corresponding marginal of some separable state, the state cannot violate
//! any such inequality.

use num_complex::Complex;
use serde::Serialize;

use super::state::{norm_sqr, repeated_digit_index};
use super::{checked_dim, generalized_ghz, DensityOperator, QuantumState, MAX_STATE_DIM};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Maximum entrywise deviation accepted between reduced states.
pub const CERTIFICATE_TOL: f64 = 1e-10;

/// The diagonal separable state `sum_j |alpha_j|^2 |j..j><j..j|`.
pub fn separable_surrogate<R: Real>(amplitudes: &[Complex<R>], n_parties: usize) -> Result<DensityOperator<R>> {
    let norm = norm_sqr(amplitudes);
    if (norm - R::one()).abs() > R::validation_tol() {
        return Err(Error::NotNormalized(norm.to_f64().unwrap_or(f64::NAN)));
    }
    let d = amplitudes.len();
    let dim = checked_dim(d, n_parties, MAX_STATE_DIM)?;
    let mut p = vec![R::zero(); dim];
    for (j, a) in amplitudes.iter().enumerate() {
        p[repeated_digit_index(d, n_parties, j)] = a.norm_sqr();
    }
    DensityOperator::from_diagonal(d, n_parties, p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub certified: bool,
    pub max_reduced_deviation: f64,
    /// Deviation after tracing out each party in turn.
    pub per_party: Vec<f64>,
}

/// Compares `tr_k(target)` with `tr_k(candidate)` for every party `k`.
/// The caller is responsible for `candidate` being separable.
pub fn scbi_certificate<R: Real, S: QuantumState<R>>(target: &S, candidate: &DensityOperator<R>) -> Result<CertificateReport> {
    if target.local_dim() != candidate.local_dim() || target.n_parties() != candidate.n_parties() {
        return Err(Error::DimensionMismatch {
            expected: target.dim(),
            found: candidate.dim(),
        });
    }
    let per_party = (0..target.n_parties())
        .map(|k| {
            let a = target.partial_trace(k)?;
            let b = candidate.partial_trace(k)?;
            Ok(a.max_abs_diff(&b)?.to_f64().unwrap_or(f64::NAN))
        })
        .collect::<Result<Vec<f64>>>()?;
    let max_reduced_deviation = per_party.iter().copied().fold(0.0, f64::max);
    Ok(CertificateReport {
        certified: max_reduced_deviation <= CERTIFICATE_TOL,
        max_reduced_deviation,
        per_party,
    })
}

/// Certificate for `sum_j alpha_j |j>^N` against its diagonal surrogate.
pub fn scbi_certificate_generalized_ghz<R: Real>(amplitudes: &[Complex<R>], n_parties: usize) -> Result<CertificateReport> {
    let state = generalized_ghz(amplitudes, n_parties)?;
    let sigma = separable_surrogate(amplitudes, n_parties)?;
    scbi_certificate(&state, &sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{w_state, PureState};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn surrogate_shape() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = separable_surrogate(&[c(h, 0.0), c(0.0, h)], 3).unwrap();
        assert!((s.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((s.get(7, 7).re - 0.5).abs() < 1e-15);
        assert_eq!(s.get(0, 7), c(0.0, 0.0));
        assert!((s.purity() - 0.5).abs() < 1e-15);
        let single = separable_surrogate(&[c(1.0, 0.0), c(0.0, 0.0)], 3).unwrap();
        let product = PureState::product(2, &[0, 0, 0]).unwrap().density().unwrap();
        assert!(single.max_abs_diff(&product).unwrap() == 0.0);
        assert!(separable_surrogate(&[c(1.0, 0.0), c(1.0, 0.0)], 3).is_err());
    }

    #[test]
    fn generalized_ghz_certified() {
        let amps = [c(0.5, 0.1), c(-0.3, 0.6), c(0.0, 0.0), c(0.2, 0.0)];
        let n2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let amps: Vec<_> = amps.iter().map(|a| a / n2.sqrt()).collect();
        let report = scbi_certificate_generalized_ghz(&amps, 4).unwrap();
        assert!(report.certified);
        assert!(report.max_reduced_deviation <= 1e-12);
        assert_eq!(report.per_party.len(), 4);
    }

    #[test]
    fn w_state_not_certified() {
        let w = w_state::<f64>(3).unwrap();
        let diag: Vec<f64> = w.amplitudes().iter().map(|a| a.norm_sqr()).collect();
        let sigma = DensityOperator::from_diagonal(2, 3, diag).unwrap();
        let report = scbi_certificate(&w, &sigma).unwrap();
        assert!(!report.certified);
        assert!(report.max_reduced_deviation > 0.1);
    }

    #[test]
    fn product_state_with_itself() {
        let p = PureState::<f64>::product(2, &[0, 0, 0]).unwrap();
        let report = scbi_certificate(&p, &p.density().unwrap()).unwrap();
        assert!(report.certified);
        assert_eq!(report.max_reduced_deviation, 0.0);
        let other = PureState::<f64>::product(2, &[0, 0]).unwrap().density().unwrap();
        assert!(scbi_certificate(&p, &other).is_err());
    }
}
