//! Dense Hermitian operators, density operators and partial traces.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;

use super::{checked_dim, Mat2, PureState, MAX_DENSE_DIM, MAX_STATE_DIM};
use crate::error::{Error, Result};
use crate::scalar::Real;

type C<R> = Complex<R>;

fn czero<R: Real>() -> C<R> {
    Complex::new(R::zero(), R::zero())
}

/// Imaginary residue allowed in an expectation value, relative to `max(1, |value|)`.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

/// Dense `d^N x d^N` operator, row-major. Hermiticity is checked on
/// construction from raw entries.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator<R> {
    local_dim: usize,
    n_parties: usize,
    dim: usize,
    entries: Vec<C<R>>,
}

impl<R: Real> HermitianOperator<R> {
    pub fn zeros(local_dim: usize, n_parties: usize) -> Result<Self> {
        let dim = checked_dim(local_dim, n_parties, MAX_DENSE_DIM)?;
        Ok(Self {
            local_dim,
            n_parties,
            dim,
            entries: vec![czero(); dim * dim],
        })
    }

    pub fn from_entries(local_dim: usize, n_parties: usize, entries: Vec<C<R>>) -> Result<Self> {
        let dim = checked_dim(local_dim, n_parties, MAX_DENSE_DIM)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        let op = Self {
            local_dim,
            n_parties,
            dim,
            entries,
        };
        let scale = op.entries.iter().map(|c| c.norm()).fold(R::one(), R::max);
        if op.hermiticity_defect() > R::validation_tol() * scale {
            return Err(Error::InvalidDensity("operator is not Hermitian".into()));
        }
        Ok(op)
    }

    pub(crate) fn from_entries_unchecked(local_dim: usize, n_parties: usize, dim: usize, entries: Vec<C<R>>) -> Self {
        Self {
            local_dim,
            n_parties,
            dim,
            entries,
        }
    }

    /// Tensor product of one qubit operator per party.
    pub fn product(factors: &[Mat2<R>]) -> Result<Self> {
        let n = factors.len();
        let mut op = Self::zeros(2, n)?;
        let dim = op.dim;
        let mut column = vec![czero(); dim];
        let mut scratch = vec![czero(); dim];
        for j in 0..dim {
            column.iter_mut().for_each(|c| *c = czero());
            column[j] = Complex::new(R::one(), R::zero());
            for (party, f) in factors.iter().enumerate() {
                apply_qubit(f, party, n, &column, &mut scratch);
                std::mem::swap(&mut column, &mut scratch);
            }
            for i in 0..dim {
                op.entries[i * dim + j] = column[i];
            }
        }
        Ok(op)
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C<R> {
        self.entries[i * self.dim + j]
    }

    pub(crate) fn add_at(&mut self, i: usize, j: usize, v: C<R>) {
        self.entries[i * self.dim + j] += v;
    }

    pub fn entries(&self) -> &[C<R>] {
        &self.entries
    }

    /// `max |A_ij - conj(A_ji)|`.
    pub fn hermiticity_defect(&self) -> R {
        let mut worst = R::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> C<R> {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<R> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (*a - *b).norm())
            .fold(R::zero(), R::max))
    }

    pub fn apply(&self, psi: &[C<R>]) -> Result<Vec<C<R>>> {
        if psi.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: psi.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| {
                let row = &self.entries[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(psi).map(|(a, b)| *a * b).sum()
            })
            .collect())
    }

    fn to_nalgebra(&self) -> DMatrix<Complex<f64>> {
        let conv = |c: C<R>| Complex::new(c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN));
        DMatrix::from_fn(self.dim, self.dim, |i, j| {
            // Symmetrize so rounding noise never breaks the Hermitian solver.
            (conv(self.get(i, j)) + conv(self.get(j, i)).conj()) * 0.5
        })
    }

    /// Eigenvalues in ascending order (double precision).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = SymmetricEigen::new(self.to_nalgebra()).eigenvalues.iter().copied().collect();
        vals.sort_by(f64::total_cmp);
        vals
    }

    /// Largest eigenvalue and an orthonormal basis of every eigenvector whose
    /// eigenvalue lies within `tol` of it.
    pub fn top_eigenspace(&self, tol: f64) -> (f64, Vec<Vec<C<R>>>) {
        let eig = SymmetricEigen::new(self.to_nalgebra());
        let top = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let vectors = (0..self.dim)
            .filter(|&c| eig.eigenvalues[c] >= top - tol)
            .map(|c| {
                eig.eigenvectors
                    .column(c)
                    .iter()
                    .map(|z| Complex::new(R::lit(z.re), R::lit(z.im)))
                    .collect()
            })
            .collect();
        (top, vectors)
    }

    /// `||P psi||` where `P` projects onto the top eigenspace (within `tol`).
    pub fn top_eigenspace_weight(&self, psi: &PureState<R>, tol: f64) -> Result<R> {
        if psi.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: psi.dim(),
            });
        }
        let (_, vectors) = self.top_eigenspace(tol);
        let weight: R = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .zip(psi.amplitudes())
                    .map(|(a, b)| a.conj() * b)
                    .sum::<C<R>>()
                    .norm_sqr()
            })
            .sum();
        Ok(weight.sqrt())
    }
}

fn checked_real<R: Real>(value: C<R>) -> Result<R> {
    let scale = value.re.abs().max(R::one());
    if value.im.abs() > R::lit(EXPECTATION_IMAG_TOL) * scale {
        return Err(Error::ComplexExpectation(value.im.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(value.re)
}

/// `dst = (m acting on qubit `party`) src` for an `n`-qubit vector.
pub(crate) fn apply_qubit<R: Real>(m: &Mat2<R>, party: usize, n: usize, src: &[C<R>], dst: &mut [C<R>]) {
    let stride = 1usize << (n - 1 - party);
    let [[m00, m01], [m10, m11]] = m.m;
    for base in (0..src.len()).step_by(2 * stride) {
        for i0 in base..base + stride {
            let i1 = i0 + stride;
            let (a, b) = (src[i0], src[i1]);
            dst[i0] = m00 * a + m01 * b;
            dst[i1] = m10 * a + m11 * b;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Repr<R> {
    Dense(HermitianOperator<R>),
    /// Diagonal in the computational basis; never materialized densely.
    Diagonal(Vec<R>),
}

/// Positive semidefinite, unit-trace operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator<R> {
    local_dim: usize,
    n_parties: usize,
    repr: Repr<R>,
}

/// Smallest eigenvalue accepted for a density operator.
pub const DENSITY_EIGEN_TOL: f64 = 1e-10;

impl<R: Real> DensityOperator<R> {
    /// Validates trace, Hermiticity and positivity of a dense operator.
    pub fn new(op: HermitianOperator<R>) -> Result<Self> {
        let tr = op.trace();
        if (tr.re - R::one()).abs() > R::validation_tol() || tr.im.abs() > R::validation_tol() {
            return Err(Error::InvalidDensity(format!("trace {}", tr.re)));
        }
        let lowest = op.eigenvalues().first().copied().unwrap_or(0.0);
        if lowest < -DENSITY_EIGEN_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {lowest:e}")));
        }
        Ok(Self {
            local_dim: op.local_dim,
            n_parties: op.n_parties,
            repr: Repr::Dense(op),
        })
    }

    pub fn from_pure(state: &PureState<R>) -> Result<Self> {
        let dim = checked_dim(state.local_dim(), state.n_parties(), MAX_DENSE_DIM)?;
        let a = state.amplitudes();
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(a[i] * a[j].conj());
            }
        }
        Ok(Self {
            local_dim: state.local_dim(),
            n_parties: state.n_parties(),
            repr: Repr::Dense(HermitianOperator::from_entries_unchecked(
                state.local_dim(),
                state.n_parties(),
                dim,
                entries,
            )),
        })
    }

    /// Diagonal state `sum_i p_i |i><i|`; `p` must be a probability vector.
    pub fn from_diagonal(local_dim: usize, n_parties: usize, p: Vec<R>) -> Result<Self> {
        let dim = checked_dim(local_dim, n_parties, MAX_STATE_DIM)?;
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if p.iter().any(|v| *v < -R::lit(DENSITY_EIGEN_TOL)) {
            return Err(Error::InvalidDensity("negative diagonal entry".into()));
        }
        let tr: R = p.iter().copied().sum();
        if (tr - R::one()).abs() > R::validation_tol() {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        Ok(Self {
            local_dim,
            n_parties,
            repr: Repr::Diagonal(p),
        })
    }

    pub fn maximally_mixed(local_dim: usize, n_parties: usize) -> Result<Self> {
        let dim = checked_dim(local_dim, n_parties, MAX_STATE_DIM)?;
        Self::from_diagonal(local_dim, n_parties, vec![R::one() / R::lit(dim as f64); dim])
    }

    /// `visibility * self + (1 - visibility) * identity / dim`.
    pub fn with_white_noise(&self, visibility: R) -> Result<Self> {
        let dim = self.dim();
        let noise = (R::one() - visibility) / R::lit(dim as f64);
        let repr = match &self.repr {
            Repr::Diagonal(p) => Repr::Diagonal(p.iter().map(|v| visibility * *v + noise).collect()),
            Repr::Dense(op) => {
                let mut out = op.clone();
                for e in out.entries.iter_mut() {
                    *e = *e * visibility;
                }
                for i in 0..dim {
                    out.add_at(i, i, Complex::new(noise, R::zero()));
                }
                Repr::Dense(out)
            }
        };
        Ok(Self { repr, ..*self })
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Dense(op) => op.dim,
            Repr::Diagonal(p) => p.len(),
        }
    }

    pub fn is_diagonal_form(&self) -> bool {
        matches!(self.repr, Repr::Diagonal(_))
    }

    pub fn get(&self, i: usize, j: usize) -> C<R> {
        match &self.repr {
            Repr::Dense(op) => op.get(i, j),
            Repr::Diagonal(p) if i == j => Complex::new(p[i], R::zero()),
            Repr::Diagonal(_) => czero(),
        }
    }

    /// Dense copy (subject to the dense size limit).
    pub fn to_operator(&self) -> Result<HermitianOperator<R>> {
        match &self.repr {
            Repr::Dense(op) => Ok(op.clone()),
            Repr::Diagonal(p) => {
                let mut op = HermitianOperator::zeros(self.local_dim, self.n_parties)?;
                for (i, v) in p.iter().enumerate() {
                    op.add_at(i, i, Complex::new(*v, R::zero()));
                }
                Ok(op)
            }
        }
    }

    /// Largest entrywise deviation `max |rho_ij - sigma_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<R> {
        if self.dim() != other.dim() || self.local_dim != other.local_dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let dim = self.dim();
        if let (Repr::Diagonal(a), Repr::Diagonal(b)) = (&self.repr, &other.repr) {
            return Ok(a.iter().zip(b).map(|(x, y)| (*x - *y).abs()).fold(R::zero(), R::max));
        }
        let mut worst = R::zero();
        for i in 0..dim {
            for j in 0..dim {
                worst = worst.max((self.get(i, j) - other.get(i, j)).norm());
            }
        }
        Ok(worst)
    }

    /// Purity `tr(rho^2)`.
    pub fn purity(&self) -> R {
        match &self.repr {
            Repr::Diagonal(p) => p.iter().map(|v| *v * *v).sum(),
            Repr::Dense(op) => op.entries.iter().map(|c| c.norm_sqr()).sum(),
        }
    }
}

/// Operations shared by pure and mixed states.
pub trait QuantumState<R: Real> {
    fn local_dim(&self) -> usize;

    fn n_parties(&self) -> usize;

    fn dim(&self) -> usize;

    /// `tr(rho A)`; errors when the imaginary residue exceeds tolerance.
    fn expectation(&self, op: &HermitianOperator<R>) -> Result<R>;

    /// Expectation of a tensor product of one qubit operator per party.
    fn product_expectation(&self, factors: &[Mat2<R>]) -> Result<R>;

    /// Traces out one party.
    fn partial_trace(&self, party: usize) -> Result<DensityOperator<R>>;
}

fn check_party(party: usize, n_parties: usize) -> Result<()> {
    if party >= n_parties {
        return Err(Error::OutOfRange {
            what: "party index",
            value: party,
            min: 0,
            max: n_parties.saturating_sub(1),
        });
    }
    Ok(())
}

fn check_operator<R: Real>(dim: usize, local_dim: usize, op: &HermitianOperator<R>) -> Result<()> {
    if op.dim != dim || op.local_dim != local_dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: op.dim,
        });
    }
    Ok(())
}

fn check_factors<R: Real>(local_dim: usize, n_parties: usize, factors: &[Mat2<R>]) -> Result<()> {
    if local_dim != 2 {
        return Err(Error::NotQubits(local_dim));
    }
    if factors.len() != n_parties {
        return Err(Error::PartyMismatch {
            expected: n_parties,
            found: factors.len(),
        });
    }
    Ok(())
}

/// Splits basis indices around `party`: `(d^party, d, d^(N - 1 - party))`.
fn split_dims(local_dim: usize, n_parties: usize, party: usize) -> (usize, usize) {
    let before = local_dim.pow(party as u32);
    let after = local_dim.pow((n_parties - 1 - party) as u32);
    (before, after)
}

impl<R: Real> QuantumState<R> for PureState<R> {
    fn local_dim(&self) -> usize {
        PureState::local_dim(self)
    }

    fn n_parties(&self) -> usize {
        PureState::n_parties(self)
    }

    fn dim(&self) -> usize {
        PureState::dim(self)
    }

    fn expectation(&self, op: &HermitianOperator<R>) -> Result<R> {
        check_operator(self.dim(), self.local_dim(), op)?;
        let a = self.amplitudes();
        let image = op.apply(a)?;
        checked_real(a.iter().zip(&image).map(|(x, y)| x.conj() * y).sum())
    }

    fn product_expectation(&self, factors: &[Mat2<R>]) -> Result<R> {
        check_factors(self.local_dim(), self.n_parties(), factors)?;
        let n = self.n_parties();
        let mut v = self.amplitudes().to_vec();
        let mut scratch = vec![czero(); v.len()];
        for (party, f) in factors.iter().enumerate() {
            apply_qubit(f, party, n, &v, &mut scratch);
            std::mem::swap(&mut v, &mut scratch);
        }
        checked_real(self.amplitudes().iter().zip(&v).map(|(x, y)| x.conj() * y).sum())
    }

    fn partial_trace(&self, party: usize) -> Result<DensityOperator<R>> {
        let (d, n) = (self.local_dim(), self.n_parties());
        check_party(party, n)?;
        if n < 2 {
            return Err(Error::TooFewParties { found: n, min: 2 });
        }
        let red_dim = checked_dim(d, n - 1, MAX_DENSE_DIM)?;
        let (before, after) = split_dims(d, n, party);
        let amps = self.amplitudes();
        let mut entries = vec![czero(); red_dim * red_dim];
        let mut slice = vec![czero(); red_dim];
        for a in 0..d {
            for b in 0..before {
                for c in 0..after {
                    slice[b * after + c] = amps[(b * d + a) * after + c];
                }
            }
            for (i, vi) in slice.iter().enumerate() {
                if vi.re == R::zero() && vi.im == R::zero() {
                    continue;
                }
                let row = &mut entries[i * red_dim..(i + 1) * red_dim];
                for (e, vj) in row.iter_mut().zip(&slice) {
                    *e += *vi * vj.conj();
                }
            }
        }
        Ok(DensityOperator {
            local_dim: d,
            n_parties: n - 1,
            repr: Repr::Dense(HermitianOperator::from_entries_unchecked(d, n - 1, red_dim, entries)),
        })
    }
}

impl<R: Real> QuantumState<R> for DensityOperator<R> {
    fn local_dim(&self) -> usize {
        self.local_dim
    }

    fn n_parties(&self) -> usize {
        self.n_parties
    }

    fn dim(&self) -> usize {
        DensityOperator::dim(self)
    }

    fn expectation(&self, op: &HermitianOperator<R>) -> Result<R> {
        check_operator(self.dim(), self.local_dim, op)?;
        let value = match &self.repr {
            Repr::Diagonal(p) => p.iter().enumerate().map(|(i, v)| op.get(i, i) * *v).sum(),
            Repr::Dense(rho) => {
                let dim = rho.dim;
                let mut acc = czero();
                for i in 0..dim {
                    for j in 0..dim {
                        acc += rho.get(i, j) * op.get(j, i);
                    }
                }
                acc
            }
        };
        checked_real(value)
    }

    fn product_expectation(&self, factors: &[Mat2<R>]) -> Result<R> {
        check_factors(self.local_dim, self.n_parties, factors)?;
        if let Repr::Diagonal(p) = &self.repr {
            // Only diagonal entries of the product operator matter.
            let n = self.n_parties;
            let value: C<R> = p
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != R::zero())
                .map(|(i, v)| {
                    let diag: C<R> = (0..n)
                        .map(|party| {
                            let bit = (i >> (n - 1 - party)) & 1;
                            factors[party].m[bit][bit]
                        })
                        .fold(Complex::new(R::one(), R::zero()), |a, b| a * b);
                    diag * *v
                })
                .sum();
            return checked_real(value);
        }
        self.expectation(&HermitianOperator::product(factors)?)
    }

    fn partial_trace(&self, party: usize) -> Result<DensityOperator<R>> {
        let (d, n) = (self.local_dim, self.n_parties);
        check_party(party, n)?;
        if n < 2 {
            return Err(Error::TooFewParties { found: n, min: 2 });
        }
        let (before, after) = split_dims(d, n, party);
        let red_dim = before * after;
        let repr = match &self.repr {
            Repr::Diagonal(p) => {
                let mut out = vec![R::zero(); red_dim];
                for b in 0..before {
                    for a in 0..d {
                        for c in 0..after {
                            out[b * after + c] += p[(b * d + a) * after + c];
                        }
                    }
                }
                Repr::Diagonal(out)
            }
            Repr::Dense(rho) => {
                let mut entries = vec![czero(); red_dim * red_dim];
                let full = |b: usize, a: usize, c: usize| (b * d + a) * after + c;
                for b in 0..before {
                    for c in 0..after {
                        for b2 in 0..before {
                            for c2 in 0..after {
                                let acc: C<R> = (0..d).map(|a| rho.get(full(b, a, c), full(b2, a, c2))).sum();
                                entries[(b * after + c) * red_dim + b2 * after + c2] = acc;
                            }
                        }
                    }
                }
                Repr::Dense(HermitianOperator::from_entries_unchecked(d, n - 1, red_dim, entries))
            }
        };
        Ok(DensityOperator {
            local_dim: d,
            n_parties: n - 1,
            repr,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{generalized_ghz, ghz, w_state, Observable};

    fn z() -> Mat2<f64> {
        Mat2::pauli_z()
    }

    fn id() -> Mat2<f64> {
        Mat2::identity()
    }

    #[test]
    fn simple_expectations() {
        let g = ghz::<f64>(3).unwrap();
        assert!((g.product_expectation(&[id(), z(), z()]).unwrap() - 1.0).abs() < 1e-12);
        let w = w_state::<f64>(3).unwrap();
        for p in 0..3 {
            let mut f = vec![id(); 3];
            f[p] = z();
            assert!((w.product_expectation(&f).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!((w.product_expectation(&[z(), z(), z()]).unwrap() + 1.0).abs() < 1e-12);
        let rho = w.density().unwrap();
        assert!((rho.product_expectation(&[z(), z(), z()]).unwrap() + 1.0).abs() < 1e-12);
        let dense = HermitianOperator::product(&[z(), id(), z()]).unwrap();
        assert!((rho.expectation(&dense).unwrap() - w.expectation(&dense).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn product_expectations_bounded() {
        let w = w_state::<f64>(4).unwrap();
        for i in 0..20 {
            let t = i as f64 * 0.37;
            let f: Vec<Mat2<f64>> = (0..4).map(|p| Observable::spherical(t * (p + 1) as f64, t - p as f64).matrix()).collect();
            let v = w.product_expectation(&f).unwrap();
            assert!(v.abs() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn imaginary_expectation_rejected() {
        let g = ghz::<f64>(2).unwrap();
        let mut skew = Mat2::zero();
        skew.m[0][0] = Complex::new(0.0, 1.0);
        assert!(matches!(g.product_expectation(&[skew, id()]), Err(Error::ComplexExpectation(_))));
    }

    #[test]
    fn ghz_marginal_is_maximally_mixed() {
        let g = ghz::<f64>(2).unwrap();
        for p in 0..2 {
            let red = g.partial_trace(p).unwrap();
            let mixed = DensityOperator::maximally_mixed(2, 1).unwrap();
            assert!(red.max_abs_diff(&mixed).unwrap() < 1e-15);
        }
        assert!(g.partial_trace(2).is_err());
    }

    #[test]
    fn w_loss_identity() {
        for n in 3..=8 {
            let w = w_state::<f64>(n).unwrap();
            let smaller = w_state::<f64>(n - 1).unwrap().density().unwrap();
            let frac = 1.0 / n as f64;
            let expected = smaller.to_operator().unwrap();
            let red = w.partial_trace(n - 1).unwrap();
            let dim = expected.dim();
            let mut worst: f64 = 0.0;
            for i in 0..dim {
                for j in 0..dim {
                    let mut e = expected.get(i, j) * (1.0 - frac);
                    if i == 0 && j == 0 {
                        e += frac;
                    }
                    worst = worst.max((red.get(i, j) - e).norm());
                }
            }
            assert!(worst < 1e-12, "n = {n}: {worst}");
        }
    }

    #[test]
    fn dense_and_diagonal_traces_agree() {
        let amps = [Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)];
        let g = generalized_ghz(&amps, 3).unwrap();
        let rho = g.density().unwrap();
        let diag = DensityOperator::from_diagonal(2, 3, vec![0.36, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.64]).unwrap();
        for p in 0..3 {
            let a = rho.partial_trace(p).unwrap();
            let b = g.partial_trace(p).unwrap();
            let c = diag.partial_trace(p).unwrap();
            assert!(a.max_abs_diff(&b).unwrap() < 1e-15);
            assert!(a.max_abs_diff(&c).unwrap() < 1e-15);
            assert!(c.is_diagonal_form());
        }
        let f = [z(), z(), id()];
        assert!((rho.product_expectation(&f).unwrap() - diag.product_expectation(&f).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn density_validation() {
        let mut op = HermitianOperator::<f64>::zeros(2, 1).unwrap();
        op.add_at(0, 0, Complex::new(1.5, 0.0));
        op.add_at(1, 1, Complex::new(-0.5, 0.0));
        assert!(DensityOperator::new(op).is_err());
        assert!(DensityOperator::<f64>::from_diagonal(2, 1, vec![0.5, 0.4]).is_err());
        let bad = vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)];
        assert!(HermitianOperator::from_entries(2, 1, bad).is_err());
        let noisy = ghz::<f64>(2).unwrap().density().unwrap().with_white_noise(0.5).unwrap();
        assert!((noisy.purity() - (0.25 + 0.75 * 0.25)).abs() < 1e-12);
        assert!(DensityOperator::new(noisy.to_operator().unwrap()).is_ok());
    }
}
