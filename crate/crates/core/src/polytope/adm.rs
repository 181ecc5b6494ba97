//! Facet enumeration by adjacency decomposition under the symmetry group.
//!
//! Starting from one facet, each new facet orbit is expanded by listing the
//! ridges of a representative (a double description on its own vertices,
//! one dimension down) and rotating the facet hyperplane about each ridge
//! until it hits the next vertex. The facet graph is connected, so every
//! orbit is reached. Only orbit representatives are kept during the walk,
//! which avoids the intermediate blow-up of a direct double description.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;

use super::coordinate_keys;
use super::dd::extreme_rays;
use super::rank::nullspace;
use crate::error::{Error, Result};
use crate::Rational;

/// Homogeneous facet vector `(b, -a)`: `y . (1, v) >= 0` on every vertex.
pub(crate) type Hyperplane = Vec<i128>;

fn overflow() -> Error {
    Error::Overflow("adjacency decomposition")
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y).and_then(|p| acc.checked_add(p)).ok_or_else(overflow)
    })
}

fn primitive(mut v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    v
}

/// `p * a + q * b`, made primitive.
fn combine(p: i128, a: &[i128], q: i128, b: &[i128]) -> Result<Vec<i128>> {
    let v = a
        .iter()
        .zip(b)
        .map(|(x, y)| {
            p.checked_mul(*x)
                .zip(q.checked_mul(*y))
                .and_then(|(s, t)| s.checked_add(t))
                .ok_or_else(overflow)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(primitive(v))
}

/// The eight symmetry maps acting on homogeneous hyperplanes: position
/// `j` of the image is `sign[j] * y[source[j]]`.
pub(crate) struct SymmetryGroup {
    maps: Vec<(Vec<usize>, Vec<i128>)>,
}

impl SymmetryGroup {
    pub(crate) fn new(n_parties: usize) -> Self {
        let keys = coordinate_keys(n_parties);
        let index = |k: usize, m: usize| keys.iter().position(|&key| key == (k, m)).expect("key present");
        let maps = (0..8u8)
            .map(|g| {
                let mut source = vec![0];
                let mut sign = vec![1];
                for &(k, m) in &keys {
                    source.push(1 + if g & 1 == 1 { index(k, k - m) } else { index(k, m) });
                    let mut s = 1;
                    if g & 2 == 2 && (k - m) % 2 == 1 {
                        s = -s;
                    }
                    if g & 4 == 4 && m % 2 == 1 {
                        s = -s;
                    }
                    sign.push(s);
                }
                (source, sign)
            })
            .collect();
        Self { maps }
    }

    pub(crate) fn images(&self, y: &[i128]) -> impl Iterator<Item = Hyperplane> + '_ {
        let y = y.to_vec();
        self.maps
            .iter()
            .map(move |(source, sign)| source.iter().zip(sign).map(|(&s, &g)| g * y[s]).collect())
    }

    pub(crate) fn canonical(&self, y: &[i128]) -> Hyperplane {
        self.images(y).min().expect("eight images")
    }
}

struct Walk<'a> {
    points: &'a [Vec<i128>],
    dim: usize,
}

impl Walk<'_> {
    fn values(&self, y: &[i128]) -> Result<Vec<i128>> {
        self.points.iter().map(|w| dot(y, w)).collect()
    }

    /// A first facet: start from the support hyperplane of one coordinate
    /// and tilt it about its tight set until the tight set has full rank.
    fn initial_facet(&self) -> Result<Hyperplane> {
        let max = self.points.iter().map(|w| w[1]).max().expect("nonempty");
        let mut y = vec![0i128; self.dim];
        y[0] = max;
        y[1] = -1;
        loop {
            let values = self.values(&y)?;
            let tight: Vec<Vec<Rational>> = self
                .points
                .iter()
                .zip(&values)
                .filter(|(_, v)| **v == 0)
                .map(|(w, _)| w.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect();
            let kernel = nullspace(tight, self.dim);
            if kernel.len() == 1 {
                return Ok(y);
            }
            // A kernel direction not parallel to y.
            let z = kernel
                .iter()
                .map(|k| {
                    let lcm = k.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
                    k.iter()
                        .map(|x| i128::try_from((x * Rational::from_integer(lcm.clone())).to_integer()).map_err(|_| overflow()))
                        .collect::<Result<Vec<i128>>>()
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .find(|z| {
                    let zy = primitive(z.clone());
                    let yy = primitive(y.clone());
                    zy != yy && zy.iter().map(|x| -x).collect::<Vec<_>>() != yy
                })
                .expect("kernel of dimension >= 2 has a direction not parallel to y");
            let zv = self.values(&z)?;
            let z = if zv.iter().any(|v| *v < 0) { z } else { z.iter().map(|x| -x).collect() };
            let zv = self.values(&z)?;
            // Largest step keeping every vertex feasible: y + (p/q) z.
            let (p, q) = values
                .iter()
                .zip(&zv)
                .filter(|(_, b)| **b < 0)
                .map(|(a, b)| (*a, -*b))
                .min_by(|(a1, b1), (a2, b2)| (a1 * b2).cmp(&(a2 * b1)))
                .expect("some vertex decreases along z");
            y = combine(q, &y, p, &z)?;
        }
    }

    /// Ridges of the facet `y`, each as a hyperplane vanishing on the ridge
    /// and positive on the facet's other vertices.
    fn ridges(&self, y: &[i128], values: &[i128]) -> Result<Vec<Vec<i128>>> {
        let drop = y.iter().position(|&c| c != 0).expect("nonzero facet");
        let rows: Vec<Vec<BigInt>> = self
            .points
            .iter()
            .zip(values)
            .filter(|(_, v)| **v == 0)
            .map(|(w, _)| {
                w.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, &x)| BigInt::from(x))
                    .collect()
            })
            .collect();
        extreme_rays(&rows)?
            .into_iter()
            .map(|ray| {
                let mut z = Vec::with_capacity(self.dim);
                let mut it = ray.v.into_iter();
                for i in 0..self.dim {
                    z.push(if i == drop {
                        0
                    } else {
                        i128::try_from(it.next().expect("ray length")).map_err(|_| overflow())?
                    });
                }
                Ok(z)
            })
            .collect()
    }

    /// The neighbouring facet across the ridge `z` of the facet `y`.
    fn rotate(&self, y: &[i128], values: &[i128], z: &[i128]) -> Result<Hyperplane> {
        let zv = self.values(z)?;
        // lambda = max over vertices off the facet of -z.w / y.w, as p/q with q > 0.
        let (p, q) = values
            .iter()
            .zip(&zv)
            .filter(|(a, _)| **a > 0)
            .map(|(a, b)| (-*b, *a))
            .max_by(|(p1, q1), (p2, q2)| (p1 * q2).cmp(&(p2 * q1)))
            .expect("a facet misses some vertex");
        combine(q, z, p, y)
    }
}

/// Canonical representatives of every facet orbit of the polytope spanned by
/// `points` (homogenized rows `(1, v)`, full-dimensional). Gives up once
/// more than `max_orbits` orbits have been discovered.
pub(crate) fn facet_orbits(points: &[Vec<i128>], group: &SymmetryGroup, max_orbits: usize) -> Result<Vec<Hyperplane>> {
    let dim = points.first().map_or(0, Vec::len);
    let walk = Walk { points, dim };
    let start = group.canonical(&walk.initial_facet()?);
    let mut seen: HashSet<Hyperplane> = HashSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(y) = queue.pop() {
        let values = walk.values(&y)?;
        for z in walk.ridges(&y, &values)? {
            let next = group.canonical(&walk.rotate(&y, &values, &z)?);
            if seen.insert(next.clone()) {
                if seen.len() > max_orbits {
                    return Err(Error::TooLarge {
                        what: "facet orbits",
                        value: seen.len(),
                        limit: max_orbits,
                    });
                }
                queue.push(next);
            }
        }
    }
    let mut out: Vec<Hyperplane> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}
