//! Local deterministic strategies and exact local bounds.
//!
//! Under a deterministic strategy each party `i` outputs `a0_i` for setting 0
//! and `a1_i` for setting 1. The correlator sums are then read off the
//! generating function `prod_i (1 + a0_i x + a1_i x y)`: `S(k, m)` is the
//! coefficient of `x^k y^m`. Because a symmetric polynomial only sees the
//! multiset of strategies, the local bound is a maximum over `C(N + 3, 3)`
//! multisets rather than `4^N` assignments.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SymmetricBellPolynomial;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Largest party count for multiset enumeration; keeps every `S(k, m)` within `i128`.
pub const MULTISET_MAX_PARTIES: usize = 60;

/// Largest party count for the `4^N` exhaustive oracle.
pub const EXHAUSTIVE_MAX_PARTIES: usize = 8;

/// One party's deterministic outputs `(a0, a1)` for settings 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LocalStrategy {
    PlusPlus,
    PlusMinus,
    MinusPlus,
    MinusMinus,
}

impl LocalStrategy {
    pub const ALL: [LocalStrategy; 4] = [
        LocalStrategy::PlusPlus,
        LocalStrategy::PlusMinus,
        LocalStrategy::MinusPlus,
        LocalStrategy::MinusMinus,
    ];

    pub fn outputs(self) -> (i8, i8) {
        match self {
            LocalStrategy::PlusPlus => (1, 1),
            LocalStrategy::PlusMinus => (1, -1),
            LocalStrategy::MinusPlus => (-1, 1),
            LocalStrategy::MinusMinus => (-1, -1),
        }
    }

    pub fn output(self, setting: usize) -> i8 {
        let (a0, a1) = self.outputs();
        if setting == 0 {
            a0
        } else {
            a1
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// How many parties use each of the four deterministic strategies,
/// ordered as `(++, +-, -+, --)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrategyMultiset {
    counts: [usize; 4],
}

impl StrategyMultiset {
    pub fn new(counts: [usize; 4]) -> Self {
        Self { counts }
    }

    pub fn uniform(strategy: LocalStrategy, n_parties: usize) -> Self {
        let mut counts = [0; 4];
        counts[strategy.index()] = n_parties;
        Self { counts }
    }

    pub fn from_assignment(assignment: &[LocalStrategy]) -> Self {
        let mut counts = [0; 4];
        for s in assignment {
            counts[s.index()] += 1;
        }
        Self { counts }
    }

    pub fn counts(&self) -> [usize; 4] {
        self.counts
    }

    pub fn count(&self, strategy: LocalStrategy) -> usize {
        self.counts[strategy.index()]
    }

    pub fn n_parties(&self) -> usize {
        self.counts.iter().sum()
    }

    /// One assignment realizing the multiset (parties grouped by strategy).
    pub fn assignment(&self) -> Vec<LocalStrategy> {
        LocalStrategy::ALL
            .iter()
            .flat_map(|&s| std::iter::repeat_n(s, self.count(s)))
            .collect()
    }

    /// All multisets over `n_parties` parties in lexicographic order of counts.
    pub fn enumerate(n_parties: usize) -> impl Iterator<Item = StrategyMultiset> {
        (0..=n_parties).flat_map(move |a| {
            (0..=n_parties - a).flat_map(move |b| {
                (0..=n_parties - a - b).map(move |c| StrategyMultiset::new([a, b, c, n_parties - a - b - c]))
            })
        })
    }
}

/// Truncated bivariate generating function `prod_i (1 + a0_i x + a1_i x y)`.
///
/// Only coefficients with `x`-degree up to `max_order` are kept. Parties can
/// be removed again with [`CorrelatorTable::pop`], which divides by the
/// party's factor exactly.
#[derive(Clone, Debug)]
pub struct CorrelatorTable {
    max_order: usize,
    n_parties: usize,
    cells: Vec<i128>,
}

impl CorrelatorTable {
    pub fn new(max_order: usize) -> Self {
        let width = max_order + 1;
        let mut cells = vec![0; width * width];
        cells[0] = 1;
        Self {
            max_order,
            n_parties: 0,
            cells,
        }
    }

    pub fn from_multiset(max_order: usize, multiset: &StrategyMultiset) -> Self {
        let mut table = Self::new(max_order);
        for s in LocalStrategy::ALL {
            for _ in 0..multiset.count(s) {
                table.push(s);
            }
        }
        table
    }

    #[inline]
    fn idx(&self, k: usize, m: usize) -> usize {
        k * (self.max_order + 1) + m
    }

    /// Multiplies in one party's factor.
    pub fn push(&mut self, strategy: LocalStrategy) {
        let (a0, a1) = strategy.outputs();
        let (a0, a1) = (a0 as i128, a1 as i128);
        for k in (1..=self.max_order).rev() {
            for m in (0..=k).rev() {
                let mut delta = a0 * self.cells[self.idx(k - 1, m)];
                if m > 0 {
                    delta += a1 * self.cells[self.idx(k - 1, m - 1)];
                }
                let i = self.idx(k, m);
                self.cells[i] += delta;
            }
        }
        self.n_parties += 1;
    }

    /// Divides out one party's factor; the party must have been pushed.
    pub fn pop(&mut self, strategy: LocalStrategy) {
        debug_assert!(self.n_parties > 0);
        let (a0, a1) = strategy.outputs();
        let (a0, a1) = (a0 as i128, a1 as i128);
        for k in 1..=self.max_order {
            for m in 0..=k {
                let mut delta = a0 * self.cells[self.idx(k - 1, m)];
                if m > 0 {
                    delta += a1 * self.cells[self.idx(k - 1, m - 1)];
                }
                let i = self.idx(k, m);
                self.cells[i] -= delta;
            }
        }
        self.n_parties -= 1;
    }

    /// `S(k, m)` for the parties pushed so far (0 beyond the truncation order).
    pub fn get(&self, k: usize, m: usize) -> i128 {
        if k > self.max_order || m > k {
            return 0;
        }
        self.cells[self.idx(k, m)]
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    fn value<T: ExactScalar>(&self, terms: &[((usize, usize), T)]) -> T {
        terms
            .iter()
            .fold(T::zero(), |acc, ((k, m), a)| acc + a.clone() * T::from_integer(self.get(*k, *m)))
    }
}

fn check_parties<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, found: usize) -> Result<()> {
    if poly.n_parties() != found {
        return Err(Error::PartyMismatch {
            expected: poly.n_parties(),
            found,
        });
    }
    Ok(())
}

/// Exact value of the polynomial at a deterministic point.
pub fn evaluate_deterministic<T: ExactScalar>(
    poly: &SymmetricBellPolynomial<T>,
    strategies: &StrategyMultiset,
) -> Result<T> {
    check_parties(poly, strategies.n_parties())?;
    if poly.n_parties() > MULTISET_MAX_PARTIES {
        return Err(Error::TooLarge {
            what: "parties",
            value: poly.n_parties(),
            limit: MULTISET_MAX_PARTIES,
        });
    }
    let table = CorrelatorTable::from_multiset(poly.max_order(), strategies);
    let terms = owned_terms(poly);
    Ok(table.value(&terms))
}

fn owned_terms<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>) -> Vec<((usize, usize), T)> {
    poly.terms().map(|(key, v)| (key, v.clone())).collect()
}

/// Value at an explicit per-party assignment, summing every product
/// term directly (`3^N` terms). Independent of [`CorrelatorTable`].
pub fn evaluate_assignment<T: ExactScalar>(
    poly: &SymmetricBellPolynomial<T>,
    assignment: &[LocalStrategy],
) -> Result<T> {
    check_parties(poly, assignment.len())?;
    let n = assignment.len();
    let mut sums = vec![vec![0i128; n + 1]; n + 1];
    // Each party is either absent, present with setting 0, or present with setting 1.
    fn walk(assignment: &[LocalStrategy], i: usize, k: usize, m: usize, prod: i128, sums: &mut [Vec<i128>]) {
        if i == assignment.len() {
            sums[k][m] += prod;
            return;
        }
        let (a0, a1) = assignment[i].outputs();
        walk(assignment, i + 1, k, m, prod, sums);
        walk(assignment, i + 1, k + 1, m, prod * a0 as i128, sums);
        walk(assignment, i + 1, k + 1, m + 1, prod * a1 as i128, sums);
    }
    walk(assignment, 0, 0, 0, 1, &mut sums);
    Ok(poly
        .terms()
        .fold(T::zero(), |acc, ((k, m), a)| acc + a.clone() * T::from_integer(sums[k][m])))
}

/// Local bound together with a deterministic strategy attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalBoundResult<T> {
    pub bound: T,
    pub witness: StrategyMultiset,
}

fn better<T: Ord>(candidate: &(T, StrategyMultiset), best: &Option<(T, StrategyMultiset)>) -> bool {
    match best {
        None => true,
        Some((v, w)) => candidate.0 > *v || (candidate.0 == *v && candidate.1 < *w),
    }
}

/// Exact local bound by enumeration of strategy multisets.
///
/// The witness is the lexicographically smallest maximizing count vector.
pub fn local_bound<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>) -> Result<LocalBoundResult<T>> {
    let n = poly.n_parties();
    if n > MULTISET_MAX_PARTIES {
        return Err(Error::TooLarge {
            what: "parties",
            value: n,
            limit: MULTISET_MAX_PARTIES,
        });
    }
    let terms = owned_terms(poly);
    let order = poly.max_order();
    let best = (0..=n)
        .into_par_iter()
        .map(|n_pp| {
            let mut best: Option<(T, StrategyMultiset)> = None;
            for n_pm in 0..=n - n_pp {
                let rest = n - n_pp - n_pm;
                let mut table = CorrelatorTable::from_multiset(order, &StrategyMultiset::new([n_pp, n_pm, 0, rest]));
                for n_mp in 0..=rest {
                    if n_mp > 0 {
                        table.pop(LocalStrategy::MinusMinus);
                        table.push(LocalStrategy::MinusPlus);
                    }
                    let candidate = (
                        table.value(&terms),
                        StrategyMultiset::new([n_pp, n_pm, n_mp, rest - n_mp]),
                    );
                    if better(&candidate, &best) {
                        best = Some(candidate);
                    }
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .fold(None, |best, candidate| if better(&candidate, &best) { Some(candidate) } else { best })
        .expect("at least one multiset");
    Ok(LocalBoundResult {
        bound: best.0,
        witness: best.1,
    })
}

/// Local bound by brute force over all `4^N` per-party assignments.
pub fn local_bound_exhaustive<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>) -> Result<T> {
    let n = poly.n_parties();
    if n > EXHAUSTIVE_MAX_PARTIES {
        return Err(Error::TooLarge {
            what: "parties",
            value: n,
            limit: EXHAUSTIVE_MAX_PARTIES,
        });
    }
    (0..1usize << (2 * n))
        .into_par_iter()
        .map(|code| {
            let assignment: Vec<LocalStrategy> = (0..n).map(|i| LocalStrategy::ALL[(code >> (2 * i)) & 3]).collect();
            evaluate_assignment(poly, &assignment)
        })
        .try_reduce_with(|a, b| Ok(a.max(b)))
        .expect("nonempty")
}
