//! Pauli-basis expansions: the symmetric W-state expansion and full
//! correlation tensors `T[a_1..a_N] = tr(rho sigma_a1 (x) ... (x) sigma_aN)`.

use num_complex::Complex;
use serde::Serialize;

use super::{checked_dim, HermitianOperator, Mat2, MeasurementScenario, QuantumState, MAX_DENSE_DIM};
use crate::bellpoly::SymmetricBellPolynomial;
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Real};

/// Largest qubit count for a full correlation tensor (`4^N` entries).
pub const MAX_TENSOR_QUBITS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix<R: Real>(self) -> Mat2<R> {
        match self {
            Pauli::I => Mat2::identity(),
            Pauli::X => Mat2::pauli_x(),
            Pauli::Y => Mat2::pauli_y(),
            Pauli::Z => Mat2::pauli_z(),
        }
    }

    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    /// Phase `p` with `sigma |bit> = p |bit ^ flips>`, as powers of `i`.
    fn phase_power(self, bit: usize) -> u8 {
        match (self, bit) {
            (Pauli::Y, 0) => 1,
            (Pauli::Y, _) => 3,
            (Pauli::Z, 1) => 2,
            _ => 0,
        }
    }
}

/// Tensor product of Paulis, party 0 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PauliWord(pub Vec<Pauli>);

fn i_power<R: Real>(p: u8) -> Complex<R> {
    match p % 4 {
        0 => Complex::new(R::one(), R::zero()),
        1 => Complex::new(R::zero(), R::one()),
        2 => Complex::new(-R::one(), R::zero()),
        _ => Complex::new(R::zero(), -R::one()),
    }
}

impl PauliWord {
    pub fn n_parties(&self) -> usize {
        self.0.len()
    }

    fn flip_mask(&self) -> usize {
        let n = self.0.len();
        self.0
            .iter()
            .enumerate()
            .filter(|(_, p)| p.flips())
            .fold(0, |acc, (i, _)| acc | (1 << (n - 1 - i)))
    }

    /// Returns `(j ^ mask, phase)` with `W |j> = phase |j ^ mask>`.
    fn action<R: Real>(&self, j: usize, mask: usize) -> (usize, Complex<R>) {
        let n = self.0.len();
        let power: u8 = self
            .0
            .iter()
            .enumerate()
            .map(|(i, p)| p.phase_power((j >> (n - 1 - i)) & 1))
            .fold(0, |a, b| (a + b) % 4);
        (j ^ mask, i_power(power))
    }

    /// `op += coeff * W`.
    pub fn add_to<R: Real>(&self, coeff: R, op: &mut HermitianOperator<R>) -> Result<()> {
        if op.n_parties() != self.n_parties() || op.local_dim() != 2 {
            return Err(Error::PartyMismatch {
                expected: op.n_parties(),
                found: self.n_parties(),
            });
        }
        let mask = self.flip_mask();
        for j in 0..op.dim() {
            let (i, phase) = self.action::<R>(j, mask);
            op.add_at(i, j, phase * coeff);
        }
        Ok(())
    }

    /// `tr(A W)` for a dense operator.
    pub fn trace_with<R: Real>(&self, op: &HermitianOperator<R>) -> Complex<R> {
        let mask = self.flip_mask();
        (0..op.dim())
            .map(|j| {
                let (i, phase) = self.action::<R>(j, mask);
                op.get(j, i) * phase
            })
            .sum()
    }
}

impl std::fmt::Display for PauliWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for p in &self.0 {
            write!(f, "{p:?}")?;
        }
        Ok(())
    }
}

/// Permutation-symmetric term of the W-state Pauli expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WPauliPattern {
    /// Sum over arrangements of `Z` on `z_count` parties, identity elsewhere.
    ZString { z_count: usize },
    /// Sum over pairs `(i, j)` of `(XX + YY)` on the pair times `(1 + Z)` on every other party.
    Hopping,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WPauliTerm<R> {
    pub pattern: WPauliPattern,
    pub coefficient: R,
}

impl<R: Real> WPauliTerm<R> {
    /// Every Pauli word of the symmetrized pattern, each with unit weight.
    pub fn words(&self, n_parties: usize) -> Vec<PauliWord> {
        let n = n_parties;
        let mut out = Vec::new();
        match self.pattern {
            WPauliPattern::ZString { z_count } => {
                for mask in 0usize..1 << n {
                    if mask.count_ones() as usize == z_count {
                        out.push(PauliWord(
                            (0..n).map(|i| if mask >> i & 1 == 1 { Pauli::Z } else { Pauli::I }).collect(),
                        ));
                    }
                }
            }
            WPauliPattern::Hopping => {
                for a in 0..n {
                    for b in a + 1..n {
                        for flip in [Pauli::X, Pauli::Y] {
                            for mask in 0usize..1 << n {
                                if mask >> a & 1 == 1 || mask >> b & 1 == 1 {
                                    continue;
                                }
                                out.push(PauliWord(
                                    (0..n)
                                        .map(|i| {
                                            if i == a || i == b {
                                                flip
                                            } else if mask >> i & 1 == 1 {
                                                Pauli::Z
                                            } else {
                                                Pauli::I
                                            }
                                        })
                                        .collect(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Pauli expansion of the `N`-qubit W density matrix:
/// `Z`-strings of length `k` carry `(N - 2k) / (N 2^N)` and hopping terms `2 / (N 2^N)`.
pub fn pauli_expansion_w<R: Real>(n_parties: usize) -> Result<Vec<WPauliTerm<R>>> {
    if n_parties < 2 {
        return Err(Error::TooFewParties {
            found: n_parties,
            min: 2,
        });
    }
    let n = n_parties as f64;
    let scale = 1.0 / (n * 2f64.powi(n_parties as i32));
    let mut terms: Vec<WPauliTerm<R>> = (0..=n_parties)
        .map(|k| WPauliTerm {
            pattern: WPauliPattern::ZString { z_count: k },
            coefficient: R::lit((n - 2.0 * k as f64) * scale),
        })
        .collect();
    terms.push(WPauliTerm {
        pattern: WPauliPattern::Hopping,
        coefficient: R::lit(2.0 * scale),
    });
    Ok(terms)
}

/// Dense operator `sum_t c_t sum_{w in t} w`.
pub fn reconstruct_from_pauli<R: Real>(n_parties: usize, terms: &[WPauliTerm<R>]) -> Result<HermitianOperator<R>> {
    let mut op = HermitianOperator::zeros(2, n_parties)?;
    for t in terms {
        for w in t.words(n_parties) {
            w.add_to(t.coefficient, &mut op)?;
        }
    }
    Ok(op)
}

/// Full Pauli correlation tensor of an `N`-qubit operator; index digits are
/// base 4 (`I, X, Y, Z`), party 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliCorrelations<R> {
    n_parties: usize,
    tensor: Vec<R>,
}

impl<R: Real> PauliCorrelations<R> {
    /// `T[w] = tr(A w)` for a Hermitian operator `A` (not necessarily a state).
    pub fn from_operator(op: &HermitianOperator<R>) -> Result<Self> {
        let n = op.n_parties();
        if op.local_dim() != 2 {
            return Err(Error::NotQubits(op.local_dim()));
        }
        if n > MAX_TENSOR_QUBITS {
            return Err(Error::TooLarge {
                what: "qubits in a correlation tensor",
                value: n,
                limit: MAX_TENSOR_QUBITS,
            });
        }
        let tensor = (0..1usize << (2 * n))
            .map(|index| Self::word(n, index).trace_with(op).re)
            .collect();
        Ok(Self { n_parties: n, tensor })
    }

    pub fn from_state<S: QuantumState<R>>(state: &S) -> Result<Self> {
        let n = state.n_parties();
        checked_dim(2, n, MAX_DENSE_DIM)?;
        if n > MAX_TENSOR_QUBITS {
            return Err(Error::TooLarge {
                what: "qubits in a correlation tensor",
                value: n,
                limit: MAX_TENSOR_QUBITS,
            });
        }
        let tensor = (0..1usize << (2 * n))
            .map(|index| {
                let word = Self::word(n, index);
                let factors: Vec<Mat2<R>> = word.0.iter().map(|p| p.matrix()).collect();
                state.product_expectation(&factors)
            })
            .collect::<Result<_>>()?;
        Ok(Self { n_parties: n, tensor })
    }

    fn word(n: usize, index: usize) -> PauliWord {
        PauliWord((0..n).map(|i| Pauli::ALL[(index >> (2 * (n - 1 - i))) & 3]).collect())
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn get(&self, word: &PauliWord) -> R {
        let index = word.0.iter().fold(0, |acc, p| acc * 4 + *p as usize);
        self.tensor[index]
    }

    /// `sum_i c_i T_i` for tensors on the same number of parties.
    pub fn linear_combination(parts: &[(R, &Self)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?.1;
        let mut tensor = vec![R::zero(); first.tensor.len()];
        for (c, t) in parts {
            if t.n_parties != first.n_parties {
                return Err(Error::PartyMismatch {
                    expected: first.n_parties,
                    found: t.n_parties,
                });
            }
            for (a, b) in tensor.iter_mut().zip(&t.tensor) {
                *a += *c * *b;
            }
        }
        Ok(Self {
            n_parties: first.n_parties,
            tensor,
        })
    }

    /// Value of `sum alpha(k,m) S(k,m)` with party `i` measuring the Bloch
    /// vectors `settings[i][0]` / `settings[i][1]`.
    pub fn evaluate_terms(&self, terms: &[(usize, usize, R)], settings: &[[[R; 3]; 2]]) -> Result<R> {
        let n = self.n_parties;
        if settings.len() != n {
            return Err(Error::PartyMismatch {
                expected: n,
                found: settings.len(),
            });
        }
        let kmax = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let idx = |k: usize, m: usize| k * (k + 1) / 2 + m;
        // g[(k, m)] is a tensor over the parties not yet contracted.
        let mut g: Vec<Option<Vec<R>>> = vec![None; idx(kmax + 1, 0)];
        g[0] = Some(self.tensor.clone());
        for (party, [b0, b1]) in settings.iter().enumerate() {
            let rest = 1usize << (2 * (n - 1 - party));
            let contract = |src: &[R], weights: [R; 4]| -> Vec<R> {
                (0..rest)
                    .map(|r| (0..4).map(|a| weights[a] * src[a * rest + r]).sum())
                    .collect()
            };
            let e0 = [R::one(), R::zero(), R::zero(), R::zero()];
            let w0 = [R::zero(), b0[0], b0[1], b0[2]];
            let w1 = [R::zero(), b1[0], b1[1], b1[2]];
            let mut next: Vec<Option<Vec<R>>> = vec![None; g.len()];
            for k in 0..=kmax.min(party + 1) {
                for m in 0..=k {
                    let mut acc: Option<Vec<R>> = None;
                    let mut add = |v: Vec<R>| match acc.as_mut() {
                        Some(a) => a.iter_mut().zip(v).for_each(|(x, y)| *x += y),
                        None => acc = Some(v),
                    };
                    if k <= party {
                        if let Some(src) = g[idx(k, m)].as_deref() {
                            add(contract(src, e0));
                        }
                    }
                    if k >= 1 && m < k {
                        if let Some(src) = g[idx(k - 1, m)].as_deref() {
                            add(contract(src, w0));
                        }
                    }
                    if k >= 1 && m >= 1 {
                        if let Some(src) = g[idx(k - 1, m - 1)].as_deref() {
                            add(contract(src, w1));
                        }
                    }
                    next[idx(k, m)] = acc;
                }
            }
            g = next;
        }
        Ok(terms
            .iter()
            .map(|&(k, m, alpha)| g[idx(k, m)].as_ref().map_or(R::zero(), |v| v[0] * alpha))
            .sum())
    }

    pub fn evaluate<T: ExactScalar>(&self, poly: &SymmetricBellPolynomial<T>, scenario: &MeasurementScenario<R>) -> Result<R> {
        if poly.n_parties() != self.n_parties {
            return Err(Error::PartyMismatch {
                expected: poly.n_parties(),
                found: self.n_parties,
            });
        }
        let settings: Vec<[[R; 3]; 2]> = scenario.parties.iter().map(|[a, b]| [a.bloch(), b.bloch()]).collect();
        self.evaluate_terms(&poly.real_terms(), &settings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellpoly::known_inequality;
    use crate::qstate::{ghz, quantum_value, w_state, Observable};
    use crate::Rational;

    #[test]
    fn w_expansion_reconstructs_density() {
        for n in 2..=8 {
            let terms = pauli_expansion_w::<f64>(n).unwrap();
            let rebuilt = reconstruct_from_pauli(n, &terms).unwrap();
            let exact = w_state::<f64>(n).unwrap().density().unwrap().to_operator().unwrap();
            assert!(rebuilt.max_abs_diff(&exact).unwrap() < 1e-12, "n = {n}");
            assert!((rebuilt.trace().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn three_qubit_coefficients() {
        let terms = pauli_expansion_w::<f64>(3).unwrap();
        let coeffs: Vec<f64> = terms.iter().map(|t| t.coefficient * 24.0).collect();
        let expect = [3.0, 1.0, -1.0, -3.0, 2.0];
        for (c, e) in coeffs.iter().zip(expect) {
            assert!((c - e).abs() < 1e-12);
        }
        assert_eq!(terms[4].words(3).len(), 3 * 2 * 2);
        assert_eq!(terms[2].words(3).len(), 3);
    }

    #[test]
    fn word_traces() {
        let g = ghz::<f64>(3).unwrap().density().unwrap().to_operator().unwrap();
        let xxx = PauliWord(vec![Pauli::X; 3]);
        assert!((xxx.trace_with(&g).re - 1.0).abs() < 1e-12);
        let xyy = PauliWord(vec![Pauli::X, Pauli::Y, Pauli::Y]);
        assert!((xyy.trace_with(&g).re + 1.0).abs() < 1e-12);
        assert_eq!(xyy.to_string(), "XYY");
    }

    #[test]
    fn tensor_contraction_matches_operator() {
        let b = known_inequality::<Rational>("B").unwrap().polynomial;
        let w = w_state::<f64>(3).unwrap();
        let t1 = PauliCorrelations::from_state(&w).unwrap();
        let t2 = PauliCorrelations::from_operator(&w.density().unwrap().to_operator().unwrap()).unwrap();
        let s = MeasurementScenario::from_parties(vec![
            [Observable::spherical(0.3, 1.0), Observable::spherical(2.0, -0.5)],
            [Observable::spherical(1.3, 0.1), Observable::spherical(0.7, 2.5)],
            [Observable::spherical(2.9, 4.0), Observable::x()],
        ]);
        let direct = quantum_value(&b, &w, &s).unwrap();
        assert!((t1.evaluate(&b, &s).unwrap() - direct).abs() < 1e-12);
        assert!((t2.evaluate(&b, &s).unwrap() - direct).abs() < 1e-12);
        let half = PauliCorrelations::linear_combination(&[(0.5, &t1), (0.5, &t2)]).unwrap();
        assert!((half.evaluate(&b, &s).unwrap() - direct).abs() < 1e-12);
    }
}
