//! The local polytope projected onto symmetric sub-correlation coordinates.
//!
//! Each deterministic strategy multiset gives a point whose coordinates are
//! the correlator sums `S(k, m)` for `1 <= k <= N - 1`; full `N`-party
//! correlators are dropped. Valid inequalities of this polytope are exactly
//! the symmetric sub-correlation Bell inequalities.

mod adm;
mod dd;
mod facet;
mod rank;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::bellpoly::{CorrelatorTable, StrategyMultiset, SymmetricBellPolynomial};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::Rational;

pub use facet::{group_by_symmetry, FacetCandidate, FacetClass, FacetJson};
pub use rank::{affine_dimension, exact_rank};

/// Supported party counts for vertex generation.
pub const VERTEX_PARTIES: std::ops::RangeInclusive<usize> = 3..=7;

/// Supported party counts for facet enumeration.
pub const FACET_PARTIES: std::ops::RangeInclusive<usize> = 3..=5;

/// Coordinate keys `(k, m)` with `1 <= k <= N - 1`, in bracket order.
pub fn coordinate_keys(n_parties: usize) -> Vec<(usize, usize)> {
    (1..n_parties).flat_map(|k| (0..=k).map(move |m| (k, m))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectedVertex {
    pub coords: Vec<i64>,
    /// Lexicographically smallest multiset producing these coordinates.
    pub source: StrategyMultiset,
}

fn check_range(n: usize, range: std::ops::RangeInclusive<usize>) -> Result<()> {
    if !range.contains(&n) {
        return Err(Error::OutOfRange {
            what: "parties",
            value: n,
            min: *range.start(),
            max: *range.end(),
        });
    }
    Ok(())
}

/// One vertex per distinct coordinate vector over all strategy multisets.
pub fn project_vertices(n_parties: usize) -> Result<Vec<ProjectedVertex>> {
    check_range(n_parties, VERTEX_PARTIES)?;
    let keys = coordinate_keys(n_parties);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for ms in StrategyMultiset::enumerate(n_parties) {
        let table = CorrelatorTable::from_multiset(n_parties - 1, &ms);
        let coords: Vec<i64> = keys.iter().map(|&(k, m)| table.get(k, m) as i64).collect();
        if seen.insert(coords.clone()) {
            out.push(ProjectedVertex { coords, source: ms });
        }
    }
    Ok(out)
}

fn rational_points(vertices: &[&ProjectedVertex]) -> Vec<Vec<Rational>> {
    vertices
        .iter()
        .map(|v| v.coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
        .collect()
}

/// Affine dimension of the vertex set (0 for a single point or none).
pub fn polytope_dimension(vertices: &[ProjectedVertex]) -> usize {
    affine_dimension(&rational_points(&vertices.iter().collect::<Vec<_>>()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidityReport {
    /// True iff the maximum over vertices equals the bound exactly.
    pub valid: bool,
    pub max_value: String,
    pub bound: String,
    /// Indices of vertices attaining the maximum.
    pub maximizers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FacetReport {
    pub is_facet: bool,
    pub saturating_count: usize,
    /// Affine dimension of the saturating vertices.
    pub affine_rank: usize,
    pub dimension: usize,
}

fn vertex_values<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, vertices: &[ProjectedVertex]) -> Result<Vec<Rational>> {
    if !poly.is_sub_correlation() {
        return Err(Error::FullCorrelatorPresent(poly.n_parties()));
    }
    let keys = coordinate_keys(poly.n_parties());
    let coeffs: Vec<Rational> = keys.iter().map(|&(k, m)| poly.coeff(k, m).to_big_rational()).collect();
    vertices
        .iter()
        .map(|v| {
            if v.coords.len() != keys.len() {
                return Err(Error::PartyMismatch {
                    expected: poly.n_parties(),
                    found: v.source.n_parties(),
                });
            }
            Ok(coeffs
                .iter()
                .zip(&v.coords)
                .filter(|(_, c)| **c != 0)
                .map(|(a, &c)| a * Rational::from_integer(c.into()))
                .sum())
        })
        .collect()
}

/// Exact maximum of the polynomial over the vertices, compared with `bound`.
pub fn verify_valid<T: ExactScalar>(
    poly: &SymmetricBellPolynomial<T>,
    bound: &T,
    vertices: &[ProjectedVertex],
) -> Result<ValidityReport> {
    let values = vertex_values(poly, vertices)?;
    let max = values.iter().max().cloned().unwrap_or_else(Rational::zero);
    let maximizers = (0..values.len()).filter(|&i| values[i] == max).collect();
    Ok(ValidityReport {
        valid: max == bound.to_big_rational(),
        max_value: max.to_string(),
        bound: bound.to_string(),
        maximizers,
    })
}

/// Facet test: the vertices saturating `poly <= bound` must span an affine
/// space of dimension one less than the polytope.
pub fn verify_facet<T: ExactScalar>(
    poly: &SymmetricBellPolynomial<T>,
    bound: &T,
    vertices: &[ProjectedVertex],
) -> Result<FacetReport> {
    let values = vertex_values(poly, vertices)?;
    let b = bound.to_big_rational();
    if let Some(max) = values.iter().max() {
        if *max > b {
            return Err(Error::InvalidInequality {
                max: max.to_string(),
                bound: b.to_string(),
            });
        }
    }
    let saturating: Vec<&ProjectedVertex> = vertices.iter().zip(&values).filter(|(_, v)| **v == b).map(|(x, _)| x).collect();
    let dimension = polytope_dimension(vertices);
    let affine_rank = affine_dimension(&rational_points(&saturating));
    Ok(FacetReport {
        is_facet: !saturating.is_empty() && affine_rank + 1 == dimension,
        saturating_count: saturating.len(),
        affine_rank,
        dimension,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FacetEnumeration {
    pub n_parties: usize,
    pub vertex_count: usize,
    pub dimension: usize,
    /// Every facet, sorted.
    pub facets: Vec<FacetCandidate>,
    pub classes: Vec<FacetClass>,
}

impl FacetEnumeration {
    /// Whether some facet is equivalent to `poly <= bound` under the symmetry group.
    pub fn contains<T: ExactScalar>(&self, poly: &SymmetricBellPolynomial<T>, bound: &T) -> Result<bool> {
        let target = FacetCandidate::from_inequality(poly, bound)?.canonical();
        Ok(self.classes.iter().any(|c| c.representative == target))
    }
}

fn homogenized(vertices: &[ProjectedVertex]) -> Vec<Vec<i128>> {
    vertices
        .iter()
        .map(|v| std::iter::once(1).chain(v.coords.iter().map(|&c| c as i128)).collect())
        .collect()
}

fn facet_from_hyperplane(n_parties: usize, y: &[i128]) -> Result<FacetCandidate> {
    FacetCandidate::new(
        n_parties,
        y[1..].iter().map(|&a| BigInt::from(-a)).collect(),
        BigInt::from(y[0]),
    )
}

fn assemble(n_parties: usize, vertices: &[ProjectedVertex], mut facets: Vec<FacetCandidate>) -> FacetEnumeration {
    facets.sort();
    facets.dedup();
    let classes = group_by_symmetry(&facets);
    FacetEnumeration {
        n_parties,
        vertex_count: vertices.len(),
        dimension: polytope_dimension(vertices),
        facets,
        classes,
    }
}

/// Orbit budget of [`enumerate_facets`]. Four parties need 222 orbits; five
/// parties need far more than this (see the README).
pub const DEFAULT_ORBIT_LIMIT: usize = 20_000;

/// Complete facet list of the projected polytope, found orbit by orbit
/// with adjacency decomposition and expanded to every symmetric image.
/// Fails with [`Error::TooLarge`] past [`DEFAULT_ORBIT_LIMIT`] orbits.
pub fn enumerate_facets(n_parties: usize) -> Result<FacetEnumeration> {
    enumerate_facets_with_limit(n_parties, DEFAULT_ORBIT_LIMIT)
}

pub fn enumerate_facets_with_limit(n_parties: usize, max_orbits: usize) -> Result<FacetEnumeration> {
    check_range(n_parties, FACET_PARTIES)?;
    let vertices = project_vertices(n_parties)?;
    let group = adm::SymmetryGroup::new(n_parties);
    let orbits = adm::facet_orbits(&homogenized(&vertices), &group, max_orbits)?;
    let facets = orbits
        .iter()
        .flat_map(|y| group.images(y).collect::<Vec<_>>())
        .map(|y| facet_from_hyperplane(n_parties, &y))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(n_parties, &vertices, facets))
}

/// Same list from a single double description on all vertices `(1, v)`
/// (a ray `(b, -a)` is the facet `a . x <= b`). Independent of the orbit
/// walk and of the symmetry group; its intermediate ray sets grow quickly,
/// so it is only practical below five parties.
pub fn enumerate_facets_direct(n_parties: usize) -> Result<FacetEnumeration> {
    check_range(n_parties, FACET_PARTIES)?;
    let vertices = project_vertices(n_parties)?;
    let mut rows: Vec<Vec<BigInt>> = homogenized(&vertices)
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    // Lexicographic insertion order keeps intermediate sizes down.
    rows.sort();
    let facets = dd::extreme_rays(&rows)?
        .into_iter()
        .map(|r| {
            // A facet of a d-polytope touches at least d affinely independent vertices.
            debug_assert!(r.zeros.count_ones() as usize >= rows[0].len() - 1);
            let mut it = r.v.into_iter();
            let b = it.next().expect("homogenizing coordinate");
            FacetCandidate::new(n_parties, it.map(|a| -a).collect(), b)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(n_parties, &vertices, facets))
}
