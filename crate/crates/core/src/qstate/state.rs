//! Pure states on `N` qudits: W, GHZ, generalized GHZ and Dicke families.
//!
//! Basis index convention: party 0 is the most significant digit, so on
//! three qubits `|001>` is index 1 and the excitation sits on party 2.

use num_complex::Complex;

use super::{checked_dim, DensityOperator, MAX_STATE_DIM};
use crate::error::{Error, Result};
use crate::scalar::{binomial, Real};

/// Normalized state vector of length `local_dim^n_parties`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<R> {
    local_dim: usize,
    n_parties: usize,
    amplitudes: Vec<Complex<R>>,
}

pub(crate) fn norm_sqr<R: Real>(v: &[Complex<R>]) -> R {
    v.iter().map(|c| c.norm_sqr()).sum()
}

impl<R: Real> PureState<R> {
    pub fn new(local_dim: usize, n_parties: usize, amplitudes: Vec<Complex<R>>) -> Result<Self> {
        if local_dim < 2 {
            return Err(Error::OutOfRange {
                what: "local dimension",
                value: local_dim,
                min: 2,
                max: usize::MAX,
            });
        }
        if n_parties < 1 {
            return Err(Error::TooFewParties { found: 0, min: 1 });
        }
        let dim = checked_dim(local_dim, n_parties, MAX_STATE_DIM)?;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        let norm = norm_sqr(&amplitudes);
        if (norm - R::one()).abs() > R::validation_tol() {
            return Err(Error::NotNormalized(norm.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self {
            local_dim,
            n_parties,
            amplitudes,
        })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(local_dim: usize, n_parties: usize, mut amplitudes: Vec<Complex<R>>) -> Result<Self> {
        let norm = norm_sqr(&amplitudes).sqrt();
        if !(norm > R::zero()) || !norm.is_finite() {
            return Err(Error::NotNormalized(0.0));
        }
        for a in amplitudes.iter_mut() {
            *a = *a / norm;
        }
        Self::new(local_dim, n_parties, amplitudes)
    }

    /// Computational basis state with the given digits (party 0 first).
    pub fn product(local_dim: usize, digits: &[usize]) -> Result<Self> {
        let dim = checked_dim(local_dim, digits.len(), MAX_STATE_DIM)?;
        let mut index = 0;
        for &d in digits {
            if d >= local_dim {
                return Err(Error::OutOfRange {
                    what: "basis digit",
                    value: d,
                    min: 0,
                    max: local_dim - 1,
                });
            }
            index = index * local_dim + d;
        }
        let mut amps = vec![Complex::new(R::zero(), R::zero()); dim];
        amps[index] = Complex::new(R::one(), R::zero());
        Self::new(local_dim, digits.len(), amps)
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<R>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex<R>> {
        self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex<R>> {
        if self.dim() != other.dim() || self.local_dim != other.local_dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|`.
    pub fn overlap(&self, other: &Self) -> Result<R> {
        Ok(self.inner(other)?.norm())
    }

    /// Applies `X` to every qubit.
    pub fn spin_flip(&self) -> Result<Self> {
        if self.local_dim != 2 {
            return Err(Error::NotQubits(self.local_dim));
        }
        let mask = self.dim() - 1;
        let amplitudes = (0..self.dim()).map(|i| self.amplitudes[i ^ mask]).collect();
        Ok(Self {
            amplitudes,
            ..*self
        })
    }

    /// Normalized linear combination `sum_i c_i |psi_i>`.
    pub fn superposition(terms: &[(Complex<R>, &Self)]) -> Result<Self> {
        let first = terms.first().ok_or(Error::NotNormalized(0.0))?.1;
        let mut amps = vec![Complex::new(R::zero(), R::zero()); first.dim()];
        for (c, state) in terms {
            if state.dim() != first.dim() || state.local_dim != first.local_dim {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: state.dim(),
                });
            }
            for (a, b) in amps.iter_mut().zip(&state.amplitudes) {
                *a += *c * b;
            }
        }
        Self::normalized(first.local_dim, first.n_parties, amps)
    }

    pub fn density(&self) -> Result<DensityOperator<R>> {
        DensityOperator::from_pure(self)
    }
}

/// Symmetric single-excitation state `(|10..0> + ... + |0..01>) / sqrt(N)`.
pub fn w_state<R: Real>(n_parties: usize) -> Result<PureState<R>> {
    if n_parties < 2 {
        return Err(Error::TooFewParties {
            found: n_parties,
            min: 2,
        });
    }
    dicke_state(n_parties, 1)
}

/// Uniform superposition of all `N`-qubit basis states of Hamming weight `k`.
pub fn dicke_state<R: Real>(n_parties: usize, k: usize) -> Result<PureState<R>> {
    if n_parties < 1 {
        return Err(Error::TooFewParties { found: 0, min: 1 });
    }
    if k > n_parties {
        return Err(Error::OutOfRange {
            what: "excitation count",
            value: k,
            min: 0,
            max: n_parties,
        });
    }
    let dim = checked_dim(2, n_parties, MAX_STATE_DIM)?;
    let amp = Complex::new(R::one() / R::lit(binomial(n_parties, k) as f64).sqrt(), R::zero());
    let zero = Complex::new(R::zero(), R::zero());
    let amps = (0..dim)
        .map(|i| if (i as u64).count_ones() as usize == k { amp } else { zero })
        .collect();
    PureState::new(2, n_parties, amps)
}

/// `sum_j alpha_j |j>^{(x)N}` on qudits of dimension `amplitudes.len()`.
pub fn generalized_ghz<R: Real>(amplitudes: &[Complex<R>], n_parties: usize) -> Result<PureState<R>> {
    let d = amplitudes.len();
    let norm = norm_sqr(amplitudes);
    if (norm - R::one()).abs() > R::validation_tol() {
        return Err(Error::NotNormalized(norm.to_f64().unwrap_or(f64::NAN)));
    }
    let dim = checked_dim(d.max(2), n_parties.max(1), MAX_STATE_DIM)?;
    let mut amps = vec![Complex::new(R::zero(), R::zero()); dim];
    for (j, a) in amplitudes.iter().enumerate() {
        amps[repeated_digit_index(d, n_parties, j)] = *a;
    }
    PureState::new(d, n_parties, amps)
}

/// `(|0..0> + |1..1>) / sqrt(2)`.
pub fn ghz<R: Real>(n_parties: usize) -> Result<PureState<R>> {
    let h = Complex::new(R::FRAC_1_SQRT_2(), R::zero());
    generalized_ghz(&[h, h], n_parties)
}

/// Index of `|j j ... j>` on `n` qudits of dimension `d`.
pub(crate) fn repeated_digit_index(d: usize, n: usize, j: usize) -> usize {
    (0..n).fold(0, |acc, _| acc * d + j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn w3_amplitudes() {
        let w = w_state::<f64>(3).unwrap();
        let s = 1.0 / 3f64.sqrt();
        for (i, a) in w.amplitudes().iter().enumerate() {
            let expect = if [1, 2, 4].contains(&i) { s } else { 0.0 };
            assert!((a - c(expect)).norm() < 1e-15, "index {i}");
        }
        let w2 = w_state::<f64>(2).unwrap();
        assert!((w2.amplitudes()[1].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((norm_sqr(w_state::<f64>(10).unwrap().amplitudes()) - 1.0).abs() < 1e-12);
        assert!(w_state::<f64>(1).is_err());
    }

    #[test]
    fn ghz_family() {
        let g = ghz::<f64>(3).unwrap();
        assert!((g.amplitudes()[0].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((g.amplitudes()[7].re - 0.5f64.sqrt()).abs() < 1e-15);
        let p = generalized_ghz(&[c(1.0), c(0.0), c(0.0)], 4).unwrap();
        assert_eq!(p, PureState::product(3, &[0, 0, 0, 0]).unwrap());
        let t: f64 = 0.3;
        let s = generalized_ghz(&[c(t.cos()), c(t.sin())], 3).unwrap();
        assert!((s.amplitudes()[7].re - t.sin()).abs() < 1e-15);
        assert!(matches!(generalized_ghz(&[c(1.0), c(1.0)], 3), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn dicke_and_spin_flip() {
        let w4 = w_state::<f64>(4).unwrap();
        let d43 = dicke_state::<f64>(4, 3).unwrap();
        assert!((w4.spin_flip().unwrap().overlap(&d43).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(dicke_state::<f64>(5, 1).unwrap(), w_state(5).unwrap());
        assert_eq!(dicke_state::<f64>(5, 3).unwrap().amplitudes().iter().filter(|a| a.re > 0.0).count(), 10);
        assert!(dicke_state::<f64>(3, 4).is_err());
        let zero = PureState::<f64>::product(2, &[0, 0, 0]).unwrap();
        assert_eq!(zero.spin_flip().unwrap(), PureState::product(2, &[1, 1, 1]).unwrap());
        assert_eq!(d43.spin_flip().unwrap().spin_flip().unwrap(), d43);
        let qutrit = PureState::<f64>::product(3, &[0, 1]).unwrap();
        assert!(matches!(qutrit.spin_flip(), Err(Error::NotQubits(3))));
    }

    #[test]
    fn validation() {
        assert!(PureState::new(2, 2, vec![c(1.0); 4]).is_err());
        assert!(PureState::new(2, 2, vec![c(1.0); 3]).is_err());
        assert!(PureState::new(1, 2, vec![c(1.0)]).is_err());
        assert!(PureState::<f64>::normalized(2, 1, vec![c(0.0); 2]).is_err());
        let sup = PureState::superposition(&[
            (c(1.0), &PureState::product(2, &[0, 0]).unwrap()),
            (c(1.0), &PureState::product(2, &[1, 1]).unwrap()),
        ])
        .unwrap();
        assert!((sup.overlap(&ghz(2).unwrap()).unwrap() - 1.0).abs() < 1e-12);
    }
}
