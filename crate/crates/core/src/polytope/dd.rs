//! Double description: extreme rays of `{y : A y >= 0}` by incremental
//! constraint insertion.
//!
//! Rays are primitive integer vectors (checked `i128`, reported as `BigInt`);
//! zero sets are bitmasks over the constraint rows, so at most 128 rows are
//! supported.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Largest number of constraint rows (zero sets are `u128` masks).
pub const MAX_ROWS: usize = 128;

#[derive(Clone, Debug)]
pub(crate) struct Ray {
    pub v: Vec<BigInt>,
    /// Bit `i` set when constraint `i` (already processed) is tight.
    pub zeros: u128,
}

/// Greedy choice of linearly independent rows, in index order.
fn independent_rows(rows: &[Vec<BigInt>]) -> Vec<usize> {
    let dim = rows.first().map_or(0, Vec::len);
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r: Vec<Rational> = row.iter().map(|x| Rational::from_integer(x.clone())).collect();
        for (pivot, e) in &echelon {
            if !r[*pivot].is_zero() {
                let f = r[*pivot].clone() / e[*pivot].clone();
                for (x, y) in r.iter_mut().zip(e) {
                    *x -= f.clone() * y;
                }
            }
        }
        if let Some(pivot) = r.iter().position(|x| !x.is_zero()) {
            echelon.push((pivot, r));
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        }
    }
    chosen
}

/// Inverse of a square integer matrix over the rationals.
fn inverse(m: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|x| Rational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("matrix is invertible");
        a.swap(col, pivot);
        let p = a[col][col].clone();
        a[col].iter_mut().for_each(|x| *x /= p.clone());
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f.clone() * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// For each constraint row, the set of rays tight on it, as a bitset.
struct TightIndex {
    words: usize,
    bits: Vec<Vec<u64>>,
}

impl TightIndex {
    fn new(rays: &[Work], n_rows: usize) -> Self {
        let words = rays.len().div_ceil(64);
        let mut bits = vec![vec![0u64; words]; n_rows];
        for (r, ray) in rays.iter().enumerate() {
            let mut z = ray.zeros;
            while z != 0 {
                let j = z.trailing_zeros() as usize;
                z &= z - 1;
                bits[j][r / 64] |= 1 << (r % 64);
            }
        }
        Self { words, bits }
    }

    /// Combinatorial adjacency: no ray other than `p` and `q` is tight on
    /// every constraint in `common`.
    fn adjacent(&self, common: u128, p: usize, q: usize) -> bool {
        for w in 0..self.words {
            let mut acc = u64::MAX;
            let mut z = common;
            while z != 0 && acc != 0 {
                let j = z.trailing_zeros() as usize;
                z &= z - 1;
                acc &= self.bits[j][w];
            }
            for r in [p, q] {
                if r / 64 == w {
                    acc &= !(1 << (r % 64));
                }
            }
            if acc != 0 {
                return false;
            }
        }
        true
    }
}

fn to_i128(v: &[BigInt]) -> Result<Vec<i128>> {
    v.iter()
        .map(|x| i128::try_from(x).map_err(|_| Error::Overflow("double description")))
        .collect()
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow("double description"))
    })
}

fn primitive(mut v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    v
}

struct Work {
    v: Vec<i128>,
    zeros: u128,
}

/// Extreme rays of the pointed cone `{y : rows . y >= 0}`.
///
/// Two rays are adjacent when no third ray is tight on all of their common
/// tight constraints (the combinatorial test).
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>]) -> Result<Vec<Ray>> {
    if rows.len() > MAX_ROWS {
        return Err(Error::TooLarge {
            what: "constraint rows",
            value: rows.len(),
            limit: MAX_ROWS,
        });
    }
    let dim = rows.first().map_or(0, Vec::len);
    let basis = independent_rows(rows);
    if basis.len() < dim {
        return Err(Error::NotFullDimensional {
            dimension: basis.len().saturating_sub(1),
            ambient: dim.saturating_sub(1),
        });
    }
    let int_rows = rows.iter().map(|r| to_i128(r)).collect::<Result<Vec<_>>>()?;
    // Simplicial start: the columns of B^-1 generate {y : B y >= 0}.
    let b: Vec<Vec<BigInt>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let inv = inverse(&b);
    let basis_mask: u128 = basis.iter().fold(0, |m, &i| m | (1 << i));
    let mut rays: Vec<Work> = (0..dim)
        .map(|j| {
            let col: Vec<Rational> = (0..dim).map(|i| inv[i][j].clone()).collect();
            let lcm = col.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let v: Vec<BigInt> = col.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
            Ok(Work {
                v: primitive(to_i128(&v)?),
                zeros: basis_mask & !(1 << basis[j]),
            })
        })
        .collect::<Result<_>>()?;
    let mut processed = basis_mask;
    for (i, row) in int_rows.iter().enumerate() {
        if basis_mask >> i & 1 == 1 {
            continue;
        }
        let index = TightIndex::new(&rays, rows.len());
        let values = rays.iter().map(|r| dot(row, &r.v)).collect::<Result<Vec<i128>>>()?;
        let mut next: Vec<Work> = Vec::with_capacity(rays.len());
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (idx, (r, &value)) in rays.iter().zip(&values).enumerate() {
            match value.signum() {
                0 => next.push(Work {
                    v: r.v.clone(),
                    zeros: r.zeros | 1 << i,
                }),
                1 => {
                    pos.push(idx);
                    next.push(Work {
                        v: r.v.clone(),
                        zeros: r.zeros,
                    });
                }
                _ => neg.push(idx),
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros & rays[q].zeros;
                if (common.count_ones() as usize) + 2 < dim || !index.adjacent(common, p, q) {
                    continue;
                }
                let (vp, vq) = (values[p], -values[q]);
                let v = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(yq, yp)| {
                        vp.checked_mul(*yq)
                            .zip(vq.checked_mul(*yp))
                            .and_then(|(a, b)| a.checked_add(b))
                            .ok_or(Error::Overflow("double description"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                next.push(Work {
                    v: primitive(v),
                    zeros: common | 1 << i,
                });
            }
        }
        processed |= 1 << i;

        rays = next;
    }
    debug_assert_eq!(processed.count_ones() as usize, rows.len());
    Ok(rays
        .into_iter()
        .map(|w| Ray {
            v: w.v.into_iter().map(BigInt::from).collect(),
            zeros: w.zeros,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn as_i64(r: &Ray) -> Vec<i64> {
        r.v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn square_facets() {
        // Vertices of [0,1]^2, homogenized as (1, x, y).
        let r = rows(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]]);
        let mut facets: Vec<Vec<i64>> = extreme_rays(&r).unwrap().iter().map(as_i64).collect();
        facets.sort();
        // (b, -a): x >= 0, y >= 0, x <= 1, y <= 1.
        assert_eq!(facets, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, -1, 0], vec![1, 0, -1]]);
    }

    #[test]
    fn octahedron_has_eight_facets() {
        let r = rows(&[
            &[1, 1, 0, 0],
            &[1, -1, 0, 0],
            &[1, 0, 1, 0],
            &[1, 0, -1, 0],
            &[1, 0, 0, 1],
            &[1, 0, 0, -1],
        ]);
        let rays = extreme_rays(&r).unwrap();
        assert_eq!(rays.len(), 8);
        for ray in &rays {
            assert_eq!(ray.zeros.count_ones(), 3);
            assert_eq!(ray.v[0], BigInt::from(1));
        }
    }

    #[test]
    fn degenerate_input_rejected() {
        let r = rows(&[&[1, 0, 0], &[1, 1, 0], &[1, 2, 0]]);
        assert!(matches!(extreme_rays(&r), Err(Error::NotFullDimensional { .. })));
    }
}
