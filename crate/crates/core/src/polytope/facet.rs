//! Integer facet inequalities and their symmetry classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::coordinate_keys;
use crate::bellpoly::{format_sub_correlation_bracket, SymmetricBellPolynomial};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::Rational;

/// Inequality `sum_(k,m) a(k,m) S(k,m) <= bound` over the projected
/// coordinates, stored as a primitive integer vector (all entries and the
/// bound divided by their gcd; only positive rescaling is ever applied).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetCandidate {
    n_parties: usize,
    coefficients: Vec<BigInt>,
    bound: BigInt,
}

impl FacetCandidate {
    pub fn new(n_parties: usize, coefficients: Vec<BigInt>, bound: BigInt) -> Result<Self> {
        let expected = coordinate_keys(n_parties).len();
        if coefficients.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coefficients.len(),
            });
        }
        let g = coefficients.iter().fold(bound.abs(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(Error::InvalidConfig("all-zero inequality".into()));
        }
        Ok(Self {
            n_parties,
            coefficients: coefficients.into_iter().map(|c| c / &g).collect(),
            bound: bound / g,
        })
    }

    /// From a sub-correlation polynomial and a bound, clearing denominators.
    pub fn from_inequality<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, bound: &T) -> Result<Self> {
        if !poly.is_sub_correlation() {
            return Err(Error::FullCorrelatorPresent(poly.n_parties()));
        }
        let keys = coordinate_keys(poly.n_parties());
        let mut values: Vec<Rational> = keys.iter().map(|&(k, m)| poly.coeff(k, m).to_big_rational()).collect();
        values.push(bound.to_big_rational());
        let lcm = values.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let mut ints: Vec<BigInt> = values.iter().map(|v| (v * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let b = ints.pop().expect("bound pushed");
        Self::new(poly.n_parties(), ints, b)
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn polynomial(&self) -> SymmetricBellPolynomial<Rational> {
        SymmetricBellPolynomial::new(
            self.n_parties,
            coordinate_keys(self.n_parties)
                .into_iter()
                .zip(&self.coefficients)
                .map(|(key, c)| (key, Rational::from_integer(c.clone()))),
        )
        .expect("coordinate keys are valid")
    }

    pub fn bound_rational(&self) -> Rational {
        Rational::from_integer(self.bound.clone())
    }

    /// Bracket string without the (absent) full-correlator segment.
    pub fn bracket(&self) -> String {
        format_sub_correlation_bracket(&self.polynomial()).expect("no full correlators")
    }

    /// `a . v` for a coordinate vector.
    pub fn evaluate(&self, coords: &[i64]) -> BigInt {
        self.coefficients.iter().zip(coords).map(|(a, &v)| a * BigInt::from(v)).sum()
    }

    /// Images under the group generated by the global setting swap and the
    /// two global outcome flips (one per setting). Index bits: 1 = swap,
    /// 2 = flip setting 0, 4 = flip setting 1 (applied in that order).
    pub fn images(&self) -> Vec<FacetCandidate> {
        let keys = coordinate_keys(self.n_parties);
        let index = |k: usize, m: usize| keys.iter().position(|&key| key == (k, m)).expect("key present");
        (0..8u8)
            .map(|g| {
                let coefficients = keys
                    .iter()
                    .map(|&(k, m)| {
                        // Pull back: the image coefficient at (k, m).
                        let mut c = self.coefficients[if g & 1 == 1 { index(k, k - m) } else { index(k, m) }].clone();
                        if g & 2 == 2 && (k - m) % 2 == 1 {
                            c = -c;
                        }
                        if g & 4 == 4 && m % 2 == 1 {
                            c = -c;
                        }
                        c
                    })
                    .collect();
                FacetCandidate {
                    n_parties: self.n_parties,
                    coefficients,
                    bound: self.bound.clone(),
                }
            })
            .collect()
    }

    /// Smallest image in lexicographic (coefficients, bound) order.
    pub fn canonical(&self) -> FacetCandidate {
        self.images().into_iter().min().expect("eight images")
    }

    pub fn equivalent(&self, other: &FacetCandidate) -> bool {
        self.n_parties == other.n_parties && self.canonical() == other.canonical()
    }

    pub fn to_json(&self) -> FacetJson {
        FacetJson {
            n_parties: self.n_parties,
            bracket: self.bracket(),
            bound: self.bound.to_string(),
        }
    }
}

/// Wire form: bracket string plus bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetJson {
    pub n_parties: usize,
    pub bracket: String,
    pub bound: String,
}

/// Facets related by the symmetry group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetClass {
    pub representative: FacetCandidate,
    pub members: Vec<FacetCandidate>,
}

/// Groups facets into symmetry classes, ordered by representative.
pub fn group_by_symmetry(facets: &[FacetCandidate]) -> Vec<FacetClass> {
    let mut classes: std::collections::BTreeMap<FacetCandidate, Vec<FacetCandidate>> = Default::default();
    for f in facets {
        classes.entry(f.canonical()).or_default().push(f.clone());
    }
    classes
        .into_iter()
        .map(|(representative, members)| FacetClass { representative, members })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellpoly::known_inequality;

    fn i4() -> FacetCandidate {
        let ineq = known_inequality::<Rational>("I4").unwrap();
        FacetCandidate::from_inequality(&ineq.polynomial, &ineq.bound).unwrap()
    }

    #[test]
    fn normalization_is_scale_invariant() {
        let ineq = known_inequality::<Rational>("I4").unwrap();
        let half = Rational::new(1.into(), 2.into());
        let scaled = FacetCandidate::from_inequality(&ineq.polynomial.scaled(&half), &(ineq.bound.clone() * half)).unwrap();
        assert_eq!(scaled, i4());
        let tripled = Rational::from_integer(3.into());
        let t = FacetCandidate::from_inequality(&ineq.polynomial.scaled(&tripled), &(ineq.bound.clone() * tripled)).unwrap();
        assert_eq!(t, i4());
        assert_eq!(i4().bound(), &BigInt::from(8));
        assert_eq!(i4().bracket(), "[-1 -1; -2 0 -2; -2 1 1 -2]");
    }

    #[test]
    fn negative_scaling_is_not_identified() {
        let f = i4();
        let neg = FacetCandidate::new(4, f.coefficients().iter().map(|c| -c).collect(), -f.bound().clone()).unwrap();
        assert_ne!(neg, f);
    }

    #[test]
    fn group_structure() {
        let f = i4();
        let images = f.images();
        assert_eq!(images[0], f);
        for img in &images {
            assert!(img.equivalent(&f));
            assert_eq!(img.canonical(), f.canonical());
        }
        // I4 is invariant under the swap (its brackets are palindromic).
        assert_eq!(images[1], f);
        let classes = group_by_symmetry(&images);
        assert_eq!(classes.len(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FacetCandidate::new(4, vec![BigInt::zero(); 9], BigInt::zero()).is_err());
        assert!(FacetCandidate::new(4, vec![BigInt::one(); 3], BigInt::one()).is_err());
        let m3 = known_inequality::<Rational>("M3").unwrap();
        assert!(FacetCandidate::from_inequality(&m3.polynomial, &m3.bound).is_err());
    }
}
