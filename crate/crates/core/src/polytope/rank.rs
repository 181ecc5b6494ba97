//! Exact Gaussian elimination.

use crate::scalar::ExactScalar;

/// Rank of a set of rows over an exact field.
pub fn exact_rank<T: ExactScalar>(mut rows: Vec<Vec<T>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() / p.clone();
            for c in col..cols {
                let delta = factor.clone() * rows[rank][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Basis of `{x : row . x = 0 for every row}` over an exact field.
pub fn nullspace<T: ExactScalar>(mut rows: Vec<Vec<T>>, cols: usize) -> Vec<Vec<T>> {
    // Reduced row echelon form.
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for c in col..cols {
            rows[rank][c] = rows[rank][c].clone() / p.clone();
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..cols {
                let delta = factor.clone() * rows[rank][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![T::zero(); cols];
            x[free] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -rows[r][free].clone();
            }
            x
        })
        .collect()
}

/// Affine dimension of a point set: rank of the differences to the first point.
pub fn affine_dimension<T: ExactScalar>(points: &[Vec<T>]) -> usize {
    let Some(first) = points.first() else { return 0 };
    exact_rank(
        points[1..]
            .iter()
            .map(|p| p.iter().zip(first).map(|(a, b)| a.clone() - b.clone()).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(exact_rank(rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(exact_rank(rows(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(exact_rank::<Rational>(Vec::new()), 0);
        assert_eq!(exact_rank(rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])), 3);
    }

    #[test]
    fn nullspaces() {
        let r = rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let ns = nullspace(r.clone(), 3);
        assert_eq!(ns.len(), 1);
        for row in &r {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(nullspace::<Rational>(Vec::new(), 2).len(), 2);
        assert!(nullspace(rows(&[&[1, 0], &[0, 1]]), 2).is_empty());
    }

    #[test]
    fn affine_dimensions() {
        assert_eq!(affine_dimension(&rows(&[&[5, 5]])), 0);
        assert_eq!(affine_dimension(&rows(&[&[1, 1], &[2, 2], &[3, 3]])), 1);
        assert_eq!(affine_dimension(&rows(&[&[0, 0], &[1, 0], &[0, 1]])), 2);
    }
}
