//! Bell operators built from symmetric polynomials and qubit observables.
//!
//! The operator `sum_{k,m} alpha(k,m) S(k,m)` is never stored. Applying it to
//! a vector runs the same generating-function recursion as the local bound,
//! with operators in place of outcomes: after processing parties `0..i`,
//! `phi[k][m]` holds the sum over all ways of putting `k` observables on
//! those parties, `m` of them setting 1, applied to the input. Memory is
//! `O(K^2 2^N)` for maximal order `K`, so `N = 14` stays desk-scale while a
//! dense `2^14 x 2^14` matrix would not.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;

use super::operator::apply_qubit;
use super::{DensityOperator, HermitianOperator, Mat2, MeasurementScenario, PureState, QuantumState};
use crate::bellpoly::SymmetricBellPolynomial;
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Real};

/// Largest qubit count for Bell operators.
pub const MAX_BELL_QUBITS: usize = 14;

/// Largest qubit count for which a Bell operator may be materialized densely.
pub const MAX_DENSE_BELL_QUBITS: usize = 10;

/// Largest dimension for which eigenpairs use a dense solver instead of Lanczos.
const DENSE_EIGEN_DIM: usize = 256;

type C<R> = Complex<R>;

/// Matrix-free Bell operator on `N` qubits.
#[derive(Clone, Debug)]
pub struct BellOperator<R> {
    n_parties: usize,
    max_order: usize,
    terms: Vec<(usize, usize, R)>,
    settings: Vec<[Mat2<R>; 2]>,
}

impl<R: Real> BellOperator<R> {
    pub fn new<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, scenario: &MeasurementScenario<R>) -> Result<Self> {
        if scenario.n_parties() != poly.n_parties() {
            return Err(Error::PartyMismatch {
                expected: poly.n_parties(),
                found: scenario.n_parties(),
            });
        }
        Self::from_matrices(poly.n_parties(), poly.real_terms(), scenario.matrices())
    }

    /// Operator with arbitrary Hermitian local matrices (for example a zero
    /// matrix to isolate the terms in which a party participates).
    pub(crate) fn from_matrices(
        n_parties: usize,
        terms: Vec<(usize, usize, R)>,
        settings: Vec<[Mat2<R>; 2]>,
    ) -> Result<Self> {
        if n_parties > MAX_BELL_QUBITS {
            return Err(Error::TooLarge {
                what: "qubits in a Bell operator",
                value: n_parties,
                limit: MAX_BELL_QUBITS,
            });
        }
        debug_assert_eq!(settings.len(), n_parties);
        let max_order = terms.iter().map(|t| t.0).max().unwrap_or(0);
        Ok(Self {
            n_parties,
            max_order,
            terms,
            settings,
        })
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn dim(&self) -> usize {
        1 << self.n_parties
    }

    pub(crate) fn settings_mut(&mut self) -> &mut [[Mat2<R>; 2]] {
        &mut self.settings
    }

    fn needed(&self, k: usize, m: usize) -> bool {
        self.terms.iter().any(|&(kk, mm, _)| kk >= k && mm >= m && kk - mm >= k - m)
    }

    /// `B psi`.
    pub fn apply(&self, psi: &[C<R>]) -> Result<Vec<C<R>>> {
        let dim = self.dim();
        if psi.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: psi.len(),
            });
        }
        let zero = Complex::new(R::zero(), R::zero());
        let kmax = self.max_order;
        let idx = |k: usize, m: usize| k * (k + 1) / 2 + m;
        let mut phi: Vec<Option<Vec<C<R>>>> = vec![None; idx(kmax + 1, 0)];
        phi[0] = Some(psi.to_vec());
        let mut scratch = vec![zero; dim];
        let n = self.n_parties;
        for party in 0..n {
            for k in (1..=kmax.min(party + 1)).rev() {
                for m in 0..=k {
                    if !self.needed(k, m) {
                        continue;
                    }
                    for (setting, src_m) in [(0usize, Some(m)), (1, m.checked_sub(1))] {
                        let Some(src_m) = src_m else { continue };
                        if src_m > k - 1 {
                            continue;
                        }
                        let op = &self.settings[party][setting];
                        if op.is_zero() {
                            continue;
                        }
                        let Some(src) = phi[idx(k - 1, src_m)].as_ref() else { continue };
                        apply_qubit(op, party, n, src, &mut scratch);
                        let dst = phi[idx(k, m)].get_or_insert_with(|| vec![zero; dim]);
                        for (d, s) in dst.iter_mut().zip(&scratch) {
                            *d += *s;
                        }
                    }
                }
            }
        }
        let mut out = vec![zero; dim];
        for &(k, m, alpha) in &self.terms {
            if let Some(v) = phi[idx(k, m)].as_ref() {
                for (o, x) in out.iter_mut().zip(v) {
                    *o += *x * alpha;
                }
            }
        }
        Ok(out)
    }

    /// `<psi|B|psi>` for a unit vector.
    pub(crate) fn expectation_vector(&self, psi: &[C<R>]) -> Result<R> {
        let image = self.apply(psi)?;
        let value: C<R> = psi.iter().zip(&image).map(|(a, b)| a.conj() * b).sum();
        let scale = value.re.abs().max(R::one());
        if value.im.abs() > R::lit(super::EXPECTATION_IMAG_TOL) * scale {
            return Err(Error::ComplexExpectation(value.im.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(value.re)
    }

    pub fn expectation(&self, state: &PureState<R>) -> Result<R> {
        if state.local_dim() != 2 {
            return Err(Error::NotQubits(state.local_dim()));
        }
        self.expectation_vector(state.amplitudes())
    }

    /// Dense matrix, one column per basis vector.
    pub fn to_dense(&self) -> Result<HermitianOperator<R>> {
        if self.n_parties > MAX_DENSE_BELL_QUBITS {
            return Err(Error::TooLarge {
                what: "qubits in a dense Bell operator",
                value: self.n_parties,
                limit: MAX_DENSE_BELL_QUBITS,
            });
        }
        let dim = self.dim();
        let zero = Complex::new(R::zero(), R::zero());
        let mut entries = vec![zero; dim * dim];
        let mut e = vec![zero; dim];
        for j in 0..dim {
            e[j] = Complex::new(R::one(), R::zero());
            let col = self.apply(&e)?;
            e[j] = zero;
            for (i, v) in col.into_iter().enumerate() {
                entries[i * dim + j] = v;
            }
        }
        Ok(HermitianOperator::from_entries_unchecked(2, self.n_parties, dim, entries))
    }

    /// Largest eigenvalue with an eigenvector. Dense for small systems,
    /// restarted Lanczos otherwise (seeded from `start` when given).
    pub fn top_eigenpair(&self, start: Option<&[C<R>]>) -> Result<(R, PureState<R>)> {
        let dim = self.dim();
        if dim <= DENSE_EIGEN_DIM {
            let dense = self.to_dense()?;
            let (top, vectors) = dense.top_eigenspace(0.0);
            let v = vectors.into_iter().next().expect("nonempty spectrum");
            return Ok((R::lit(top), PureState::normalized(2, self.n_parties, v)?));
        }
        let (value, v) = lanczos_top(|x| self.apply(x), dim, start)?;
        Ok((value, PureState::normalized(2, self.n_parties, v)?))
    }
}

fn dot<R: Real>(a: &[C<R>], b: &[C<R>]) -> C<R> {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm<R: Real>(a: &[C<R>]) -> R {
    a.iter().map(|c| c.norm_sqr()).sum::<R>().sqrt()
}

/// Restarted Lanczos with full reorthogonalization for the algebraically
/// largest eigenpair of a Hermitian map.
fn lanczos_top<R: Real>(
    apply: impl Fn(&[C<R>]) -> Result<Vec<C<R>>>,
    dim: usize,
    start: Option<&[C<R>]>,
) -> Result<(R, Vec<C<R>>)> {
    const KRYLOV: usize = 60;
    const RESTARTS: usize = 60;
    // Fixed, dense perturbation so the start never misses the top eigenvector.
    let mut v: Vec<C<R>> = (0..dim)
        .map(|i| {
            let t = (i as f64 * 0.618_033_988_749_895).fract() - 0.5;
            let u = (i as f64 * 0.414_213_562_373_095).fract() - 0.5;
            Complex::new(R::lit(t), R::lit(u))
        })
        .collect();
    if let Some(s) = start {
        let scale = R::lit(1e-3) / norm(&v);
        for (x, y) in v.iter_mut().zip(s) {
            *x = *y + *x * scale;
        }
    }
    let mut best = (R::neg_infinity(), v.clone());
    for _ in 0..RESTARTS {
        let n0 = norm(&v);
        v.iter_mut().for_each(|x| *x = *x / n0);
        let mut basis = vec![v.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        for j in 0..KRYLOV.min(dim) {
            let mut w = apply(&basis[j])?;
            alphas.push(dot(&basis[j], &w).re.to_f64().unwrap_or(f64::NAN));
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &w);
                    for (x, y) in w.iter_mut().zip(b) {
                        *x -= c * y;
                    }
                }
            }
            let beta = norm(&w);
            if j + 1 == KRYLOV.min(dim) || beta.to_f64().unwrap_or(0.0) < 1e-12 {
                break;
            }
            betas.push(beta.to_f64().unwrap_or(f64::NAN));
            w.iter_mut().for_each(|x| *x = *x / beta);
            basis.push(w);
        }
        let m = alphas.len();
        let t = DMatrix::from_fn(m, m, |i, j| {
            if i == j {
                alphas[i]
            } else if i + 1 == j {
                betas[i]
            } else if j + 1 == i {
                betas[j]
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(t);
        let (col, theta) = eig
            .eigenvalues
            .iter()
            .copied()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty Krylov space");
        let y = eig.eigenvectors.column(col);
        let mut x = vec![Complex::new(R::zero(), R::zero()); dim];
        for (coef, b) in y.iter().zip(&basis) {
            let coef = R::lit(*coef);
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += *bi * coef;
            }
        }
        let nx = norm(&x);
        x.iter_mut().for_each(|c| *c = *c / nx);
        let ax = apply(&x)?;
        let theta_r = R::lit(theta);
        let residual = norm(&ax.iter().zip(&x).map(|(a, b)| *a - *b * theta_r).collect::<Vec<_>>());
        if theta_r > best.0 {
            best = (theta_r, x.clone());
        }
        if residual.to_f64().unwrap_or(f64::NAN) <= 1e-10 * theta.abs().max(1.0) || m == dim {
            return Ok((theta_r, x));
        }
        v = x;
    }
    Ok(best)
}

/// Bell operator for `poly` with `scenario` substituted.
pub fn bell_operator<T: ExactScalar, R: Real>(
    poly: &SymmetricBellPolynomial<T>,
    scenario: &MeasurementScenario<R>,
) -> Result<BellOperator<R>> {
    BellOperator::new(poly, scenario)
}

/// `<psi|B|psi>`.
pub fn quantum_value<T: ExactScalar, R: Real>(
    poly: &SymmetricBellPolynomial<T>,
    state: &PureState<R>,
    scenario: &MeasurementScenario<R>,
) -> Result<R> {
    check_parties(poly.n_parties(), state.n_parties())?;
    BellOperator::new(poly, scenario)?.expectation(state)
}

/// `tr(rho B)` for a mixed state.
pub fn quantum_value_mixed<T: ExactScalar, R: Real>(
    poly: &SymmetricBellPolynomial<T>,
    rho: &DensityOperator<R>,
    scenario: &MeasurementScenario<R>,
) -> Result<R> {
    check_parties(poly.n_parties(), rho.n_parties())?;
    if rho.local_dim() != 2 {
        return Err(Error::NotQubits(rho.local_dim()));
    }
    rho.expectation(&BellOperator::new(poly, scenario)?.to_dense()?)
}

fn check_parties(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::PartyMismatch { expected, found });
    }
    Ok(())
}
