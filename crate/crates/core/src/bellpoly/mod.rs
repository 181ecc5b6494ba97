//! Permutation-symmetric two-setting, two-outcome Bell polynomials.
//!
//! A polynomial on `N` parties is a rational combination of the symmetric
//! correlator sums `S(k, m)`: the sum, over all ways of picking `k` distinct
//! parties and letting exactly `m` of them use setting 1 (the rest setting 0),
//! of the product of their outcomes. The coefficient of `S(k, m)` is stored
//! under the key `(k, m)` with `1 <= k <= N` and `0 <= m <= k`.

mod bracket;
mod frustration;
mod generators;
mod json;
mod local;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Real};

pub use bracket::{format_bracket, format_sub_correlation_bracket, parse_bracket, parse_bracket_for};
pub use frustration::{frustration, noise_resistance, FrustrationReport};
pub use generators::{known_inequality, mabk, scbi_sum, BellInequality};
pub use json::PolynomialJson;
pub use local::{
    evaluate_assignment, evaluate_deterministic, local_bound, local_bound_exhaustive,
    CorrelatorTable, LocalBoundResult, LocalStrategy, StrategyMultiset, EXHAUSTIVE_MAX_PARTIES,
    MULTISET_MAX_PARTIES,
};

/// Symmetric Bell polynomial with exact coefficients.
///
/// Zero coefficients are never stored, so structural equality is value
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricBellPolynomial<T> {
    n_parties: usize,
    coeffs: BTreeMap<(usize, usize), T>,
}

impl<T: ExactScalar> SymmetricBellPolynomial<T> {
    pub fn zero(n_parties: usize) -> Result<Self> {
        if n_parties < 2 {
            return Err(Error::TooFewParties {
                found: n_parties,
                min: 2,
            });
        }
        Ok(Self {
            n_parties,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds a polynomial from `((k, m), coefficient)` pairs. Repeated keys
    /// are summed.
    pub fn new(n_parties: usize, terms: impl IntoIterator<Item = ((usize, usize), T)>) -> Result<Self> {
        let mut poly = Self::zero(n_parties)?;
        for ((k, m), v) in terms {
            poly.check_key(k, m)?;
            let entry = poly.coeffs.entry((k, m)).or_insert_with(T::zero);
            *entry = entry.clone() + v;
        }
        poly.coeffs.retain(|_, v| !v.is_zero());
        Ok(poly)
    }

    fn check_key(&self, k: usize, m: usize) -> Result<()> {
        if k == 0 || k > self.n_parties || m > k {
            return Err(Error::InvalidKey {
                k,
                m,
                n_parties: self.n_parties,
            });
        }
        Ok(())
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    /// Coefficient of `S(k, m)`; zero for absent or out-of-range keys.
    pub fn coeff(&self, k: usize, m: usize) -> T {
        self.coeffs.get(&(k, m)).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero coefficients in `(k, m)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &T)> + '_ {
        self.coeffs.iter().map(|(&key, v)| (key, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest correlator order with a nonzero coefficient (0 for the zero polynomial).
    pub fn max_order(&self) -> usize {
        self.coeffs.keys().map(|&(k, _)| k).max().unwrap_or(0)
    }

    /// True when no full `N`-party correlator appears.
    pub fn is_sub_correlation(&self) -> bool {
        self.max_order() < self.n_parties
    }

    /// Same coefficients on a different number of parties.
    pub fn with_parties(&self, n_parties: usize) -> Result<Self> {
        Self::new(n_parties, self.coeffs.iter().map(|(&key, v)| (key, v.clone())))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n_parties != other.n_parties {
            return Err(Error::PartyMismatch {
                expected: self.n_parties,
                found: other.n_parties,
            });
        }
        Self::new(
            self.n_parties,
            self.coeffs
                .iter()
                .chain(other.coeffs.iter())
                .map(|(&key, v)| (key, v.clone())),
        )
    }

    pub fn scaled(&self, factor: &T) -> Self {
        Self::new(
            self.n_parties,
            self.coeffs.iter().map(|(&key, v)| (key, v.clone() * factor.clone())),
        )
        .expect("keys already validated")
    }

    /// Floating-point copy of the nonzero coefficients as `(k, m, value)`.
    pub fn real_terms<R: Real>(&self) -> Vec<(usize, usize, R)> {
        self.coeffs
            .iter()
            .map(|(&(k, m), v)| (k, m, R::lit(v.to_f64())))
            .collect()
    }

    /// Sum of `|coefficient|` times the number of products in `S(k, m)`:
    /// an upper bound on the operator norm of any Bell operator built from it.
    pub fn absolute_weight(&self) -> f64 {
        use crate::scalar::binomial;
        self.coeffs
            .iter()
            .map(|(&(k, m), v)| {
                v.abs().to_f64() * binomial(self.n_parties, k) as f64 * binomial(k, m) as f64
            })
            .sum()
    }
}
