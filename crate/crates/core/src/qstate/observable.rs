//! Single-qubit local operators, binary observables and measurement scenarios.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A 2x2 complex matrix acting on one qubit, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<R> {
    pub m: [[Complex<R>; 2]; 2],
}

impl<R: Real> Mat2<R> {
    pub fn new(m: [[Complex<R>; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn zero() -> Self {
        let z = Complex::new(R::zero(), R::zero());
        Self { m: [[z, z], [z, z]] }
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex::new(R::one(), R::zero()), Complex::new(R::zero(), R::zero()));
        Self { m: [[o, z], [z, o]] }
    }

    pub fn pauli_x() -> Self {
        Observable::x().matrix()
    }

    pub fn pauli_y() -> Self {
        Observable::y().matrix()
    }

    pub fn pauli_z() -> Self {
        Observable::z().matrix()
    }

    /// `x X + y Y + z Z`.
    pub fn from_bloch(v: [R; 3]) -> Self {
        let [x, y, z] = v;
        Self {
            m: [
                [Complex::new(z, R::zero()), Complex::new(x, -y)],
                [Complex::new(x, y), Complex::new(-z, R::zero())],
            ],
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][0] * other.m[0][j] + self.m[i][1] * other.m[1][j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|c| c.re == R::zero() && c.im == R::zero())
    }

    pub fn max_abs_diff(&self, other: &Self) -> R {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (*a - *b).norm())
            .fold(R::zero(), R::max)
    }
}

/// Plane in which an observable is parameterized by an angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeasurementPlane<R> {
    /// `cos(theta) Z + sin(theta) X`.
    XZ,
    /// `cos(theta) (cos(phi) X + sin(phi) Y) + sin(theta) Z`.
    XYWithZ { phi: R },
}

/// Binary-outcome qubit measurement `x X + y Y + z Z` with a unit Bloch vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Observable<R> {
    bloch: [R; 3],
}

impl<R: Real> Observable<R> {
    pub fn new(bloch: [R; 3]) -> Result<Self> {
        let norm = bloch.iter().map(|v| *v * *v).sum::<R>().sqrt();
        if (norm - R::one()).abs() > R::validation_tol() {
            return Err(Error::NotUnitBloch(norm.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { bloch })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn along(v: [R; 3]) -> Option<Self> {
        let norm = v.iter().map(|c| *c * *c).sum::<R>().sqrt();
        if !(norm > R::zero()) || !norm.is_finite() {
            return None;
        }
        Some(Self {
            bloch: [v[0] / norm, v[1] / norm, v[2] / norm],
        })
    }

    /// Direction given by polar angle from +Z and azimuth from +X.
    pub fn spherical(polar: R, azimuth: R) -> Self {
        Self {
            bloch: [polar.sin() * azimuth.cos(), polar.sin() * azimuth.sin(), polar.cos()],
        }
    }

    pub fn from_plane_angle(theta: R, plane: MeasurementPlane<R>) -> Self {
        match plane {
            MeasurementPlane::XZ => Self::xz(theta),
            MeasurementPlane::XYWithZ { phi } => Self {
                bloch: [theta.cos() * phi.cos(), theta.cos() * phi.sin(), theta.sin()],
            },
        }
    }

    /// `cos(theta) Z + sin(theta) X`.
    pub fn xz(theta: R) -> Self {
        Self {
            bloch: [theta.sin(), R::zero(), theta.cos()],
        }
    }

    pub fn x() -> Self {
        Self {
            bloch: [R::one(), R::zero(), R::zero()],
        }
    }

    pub fn y() -> Self {
        Self {
            bloch: [R::zero(), R::one(), R::zero()],
        }
    }

    pub fn z() -> Self {
        Self {
            bloch: [R::zero(), R::zero(), R::one()],
        }
    }

    pub fn bloch(&self) -> [R; 3] {
        self.bloch
    }

    pub fn matrix(&self) -> Mat2<R> {
        Mat2::from_bloch(self.bloch)
    }
}

/// The two observables each party measures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementScenario<R> {
    pub symmetric: bool,
    pub parties: Vec<[Observable<R>; 2]>,
}

impl<R: Real> MeasurementScenario<R> {
    /// Every party uses the same pair of observables.
    pub fn symmetric(n_parties: usize, setting0: Observable<R>, setting1: Observable<R>) -> Self {
        Self {
            symmetric: true,
            parties: vec![[setting0, setting1]; n_parties],
        }
    }

    /// Symmetric XZ-plane measurements `cos(theta_j) Z + sin(theta_j) X`.
    pub fn symmetric_xz(n_parties: usize, theta0: R, theta1: R) -> Self {
        Self::symmetric(n_parties, Observable::xz(theta0), Observable::xz(theta1))
    }

    /// Per-party observables; flagged symmetric when all parties coincide.
    pub fn from_parties(parties: Vec<[Observable<R>; 2]>) -> Self {
        let symmetric = parties.windows(2).all(|w| w[0] == w[1]);
        Self { symmetric, parties }
    }

    pub fn n_parties(&self) -> usize {
        self.parties.len()
    }

    pub fn observable(&self, party: usize, setting: usize) -> &Observable<R> {
        &self.parties[party][setting]
    }

    pub(crate) fn matrices(&self) -> Vec<[Mat2<R>; 2]> {
        self.parties.iter().map(|[a, b]| [a.matrix(), b.matrix()]).collect()
    }
}
