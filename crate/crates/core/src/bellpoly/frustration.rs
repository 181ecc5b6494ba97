//! Frustration of symmetric sub-correlation inequalities and white-noise
//! resistance.

use super::{local_bound, SymmetricBellPolynomial};
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Real};

/// `frustration = N * sub_bound / total_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrustrationReport<T> {
    pub frustration: T,
    /// Local bound of the `(N-1)`-party inequality whose symmetrization is the input.
    pub sub_bound: T,
    pub total_bound: T,
    pub sub_inequality: SymmetricBellPolynomial<T>,
}

/// Writes a symmetric sub-correlation polynomial on `N` parties as the sum,
/// over the omitted party, of one `(N-1)`-party polynomial `j`, and compares
/// `N` copies of `j`'s local bound with the joint bound.
///
/// A given `k`-party correlator is contained in `N - k` of the `N` summands,
/// so `j` carries the coefficients `alpha(k, m) / (N - k)`.
pub fn frustration<T: ExactScalar>(
    poly: &SymmetricBellPolynomial<T>,
    total_bound: &T,
) -> Result<FrustrationReport<T>> {
    let n = poly.n_parties();
    if !poly.is_sub_correlation() {
        return Err(Error::FullCorrelatorPresent(n));
    }
    if total_bound.is_zero() {
        return Err(Error::ZeroBound);
    }
    if n < 3 {
        return Err(Error::TooFewParties { found: n, min: 3 });
    }
    let sub_inequality = SymmetricBellPolynomial::new(
        n - 1,
        poly.terms()
            .map(|((k, m), a)| ((k, m), a.clone() / T::from_integer((n - k) as i128))),
    )?;
    let sub_bound = local_bound(&sub_inequality)?.bound;
    let frustration = T::from_integer(n as i128) * sub_bound.clone() / total_bound.clone();
    Ok(FrustrationReport {
        frustration,
        sub_bound,
        total_bound: total_bound.clone(),
        sub_inequality,
    })
}

/// Fraction of the state that may be kept before white noise removes the
/// violation: `local_bound / quantum_value`. White noise contributes nothing
/// because every term has correlator order at least 1.
pub fn noise_resistance<R: Real>(local_bound: R, quantum_value: R) -> Result<R> {
    if quantum_value <= R::zero() {
        return Err(Error::NonPositiveQuantumValue(
            quantum_value.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(local_bound / quantum_value)
}
