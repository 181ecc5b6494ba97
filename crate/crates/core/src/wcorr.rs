//! Closed-form W-state correlators for symmetric XZ-plane measurements
//! `A_j = cos(theta_j) Z + sin(theta_j) X`, valid for any number of parties.
//!
//! Writing `c_j, s_j` for `cos(theta_j), sin(theta_j)`, the full correlator
//! with `k` parties on setting 1 follows from the Pauli expansion of the W
//! state: only the all-`Z` string and the two-flip hopping terms survive.
//! Lower-order correlators come from the loss identity
//! `tr_N W_N = |0..0><0..0| / N + (1 - 1/N) W_{N-1}`, applied once per
//! traced-out party.

use serde::{Deserialize, Serialize};

use crate::bellpoly::SymmetricBellPolynomial;
use crate::error::{Error, Result};
use crate::scalar::{binomial_real, ExactScalar, Real};

/// The two shared measurement angles in the XZ plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricAngles<R> {
    pub theta0: R,
    pub theta1: R,
}

impl<R: Real> SymmetricAngles<R> {
    pub fn new(theta0: R, theta1: R) -> Self {
        Self { theta0, theta1 }
    }

    /// Angles given as multiples of pi.
    pub fn from_pi_multiples(t0: f64, t1: f64) -> Self {
        Self::new(R::lit(t0) * R::PI(), R::lit(t1) * R::PI())
    }
}

fn powi<R: Real>(x: R, e: usize) -> R {
    x.powi(e as i32)
}

fn check_k(k: usize, max: usize) -> Result<()> {
    if k > max {
        return Err(Error::OutOfRange {
            what: "setting-1 count",
            value: k,
            min: 0,
            max,
        });
    }
    Ok(())
}

fn full_unchecked<R: Real>(n: usize, k: usize, a: &SymmetricAngles<R>) -> R {
    let (s0, c0) = a.theta0.sin_cos();
    let (s1, c1) = a.theta1.sin_cos();
    let nz = n - k;
    let mut hop = R::zero();
    if k >= 2 {
        hop += binomial_real::<R>(k, 2) * powi(c0, nz) * s1 * s1 * powi(c1, k - 2);
    }
    if k >= 1 && nz >= 1 {
        hop += R::lit((k * nz) as f64) * powi(c0, nz - 1) * s0 * s1 * powi(c1, k - 1);
    }
    if nz >= 2 {
        hop += binomial_real::<R>(nz, 2) * powi(c0, nz - 2) * s0 * s0 * powi(c1, k);
    }
    -powi(c0, nz) * powi(c1, k) + R::lit(2.0 / n as f64) * hop
}

/// `<W_N| A_1^{(x)k} A_0^{(x)(N-k)} |W_N>`.
pub fn w_full_correlator<R: Real>(n: usize, k: usize, angles: &SymmetricAngles<R>) -> Result<R> {
    if n < 1 {
        return Err(Error::TooFewParties { found: n, min: 1 });
    }
    check_k(k, n)?;
    Ok(full_unchecked(n, k, angles))
}

/// Correlator of `order` parties (`m` of them on setting 1) on `W_N`,
/// identity on the remaining `N - order` parties.
pub fn w_correlator<R: Real>(n: usize, order: usize, m: usize, angles: &SymmetricAngles<R>) -> Result<R> {
    if order < 1 || order > n {
        return Err(Error::OutOfRange {
            what: "correlator order",
            value: order,
            min: 1,
            max: n,
        });
    }
    check_k(m, order)?;
    let c0 = angles.theta0.cos();
    let c1 = angles.theta1.cos();
    let product = powi(c0, order - m) * powi(c1, m);
    // value(N) = product / N + (1 - 1/N) value(N - 1), down to value(order) = full.
    let mut value = full_unchecked(order, m, angles);
    for size in order + 1..=n {
        let inv = R::one() / R::lit(size as f64);
        value = product * inv + (R::one() - inv) * value;
    }
    Ok(value)
}

/// `(N-1)`-party correlator on `W_N` with `k` parties on setting 1.
pub fn w_subcorrelator<R: Real>(n: usize, k: usize, angles: &SymmetricAngles<R>) -> Result<R> {
    if n < 2 {
        return Err(Error::TooFewParties { found: n, min: 2 });
    }
    check_k(k, n - 1)?;
    w_correlator(n, n - 1, k, angles)
}

/// `<W_N| sum alpha(k,m) S(k,m) |W_N>` with symmetric XZ-plane settings.
/// Each `S(k, m)` contributes `C(N,k) C(k,m)` equal correlators.
pub fn evaluate_w_symmetric<T: ExactScalar, R: Real>(
    poly: &SymmetricBellPolynomial<T>,
    n: usize,
    angles: &SymmetricAngles<R>,
) -> Result<R> {
    if poly.n_parties() != n {
        return Err(Error::PartyMismatch {
            expected: poly.n_parties(),
            found: n,
        });
    }
    evaluate_w_terms(&poly.real_terms::<R>(), n, angles)
}

/// As [`evaluate_w_symmetric`] for pre-converted `(k, m, alpha)` terms.
pub fn evaluate_w_terms<R: Real>(terms: &[(usize, usize, R)], n: usize, angles: &SymmetricAngles<R>) -> Result<R> {
    terms
        .iter()
        .map(|&(k, m, alpha)| {
            let corr = w_correlator(n, k, m, angles)?;
            Ok(alpha * binomial_real::<R>(n, k) * binomial_real::<R>(k, m) * corr)
        })
        .sum()
}
