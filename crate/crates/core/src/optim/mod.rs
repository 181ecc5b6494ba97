//! Numerical maximization of quantum values.
//!
//! Everything here is a search, not a proof: reported maxima are lower
//! bounds on the true optimum. All randomness derives from
//! [`OptimizationConfig::rng_seed`], with one independent ChaCha stream per
//! restart, so results do not depend on thread scheduling.

mod angles;
mod ghz;
mod seesaw;

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{MeasurementScenario, StateJson};
use crate::wcorr::SymmetricAngles;

pub use angles::{optimize_angles_symmetric, symmetric_state_free_max, table1, StateFamily, Table1Row};
pub use ghz::{
    ghz_bound_probe, ghz_bound_terms, ghz_bound_terms_sum, svetlichny_xy_scenario, value_by_order, GhzProbeReport,
};
pub use seesaw::{fixed_state_max, seesaw_max, MAX_SEESAW_QUBITS};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationConfig {
    pub restarts: usize,
    pub grid_resolution: usize,
    pub convergence_tol: f64,
    pub max_iterations: usize,
    pub rng_seed: u64,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            grid_resolution: 180,
            convergence_tol: 1e-12,
            max_iterations: 2000,
            rng_seed: 0,
        }
    }
}

impl OptimizationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::OutOfRange {
                what: "restarts",
                value: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        if self.grid_resolution < 1 {
            return Err(Error::OutOfRange {
                what: "grid resolution",
                value: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        if !(self.convergence_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "convergence tolerance must be positive, got {}",
                self.convergence_tol
            )));
        }
        Ok(())
    }

    /// Generator for restart `index`, independent of every other restart.
    pub(crate) fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        rng.set_stream(index as u64);
        rng
    }
}

/// Result of a maximization; plugging the arguments back in reproduces `value`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimumReport {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angles: Option<SymmetricAngles<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<MeasurementScenario<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<StateJson>,
    /// Total local-search iterations over all restarts.
    pub history_len: usize,
    /// Best value reached by each restart, in restart order.
    pub restart_values: Vec<f64>,
    /// Always true: the value is the best found, not a certified maximum.
    pub lower_bound: bool,
    pub config: OptimizationConfig,
}

/// Index of the largest value; ties go to the smaller index.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] || values[best].is_nan() {
            best = i;
        }
    }
    best
}

pub(crate) struct Polished {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

struct Negated<F>(F);

impl<F: Fn(&[f64]) -> f64> CostFunction for Negated<F> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        let v = (self.0)(p);
        Ok(if v.is_nan() { f64::INFINITY } else { -v })
    }
}

/// Nelder-Mead maximization from `x0` with an axis-aligned initial simplex
/// of size `step`, restarted once from its own optimum to escape collapse.
pub(crate) fn maximize<F: Fn(&[f64]) -> f64>(f: F, x0: &[f64], step: f64, tol: f64, max_iter: usize) -> Polished {
    let mut x = x0.to_vec();
    let mut iterations = 0;
    let mut step = step;
    for _ in 0..2 {
        let mut simplex = vec![x.clone()];
        for i in 0..x.len() {
            let mut v = x.clone();
            v[i] += step;
            simplex.push(v);
        }
        let solver = NelderMead::new(simplex)
            .with_sd_tolerance(tol)
            .expect("tolerance is positive");
        let Ok(res) = Executor::new(Negated(&f), solver)
            .configure(|s| s.max_iters(max_iter as u64))
            .run()
        else {
            break;
        };
        iterations += res.state.iter as usize;
        if let Some(best) = res.state.best_param {
            x = best;
        }
        step *= 0.1;
    }
    let value = f(&x);
    Polished { x, value, iterations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximizes_a_quadratic() {
        let p = maximize(|x| -(x[0] - 1.0).powi(2) - 2.0 * (x[1] + 0.5).powi(2) + 3.0, &[0.0, 0.0], 0.5, 1e-14, 2000);
        assert!((p.value - 3.0).abs() < 1e-10);
        assert!((p.x[0] - 1.0).abs() < 1e-5 && (p.x[1] + 0.5).abs() < 1e-5);
        assert!(p.iterations > 0);
    }

    #[test]
    fn argmax_prefers_first() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0, 2.0]), 1);
        assert_eq!(argmax(&[f64::NAN, 0.0]), 1);
    }

    #[test]
    fn config_validation_and_streams() {
        assert!(OptimizationConfig::default().validate().is_ok());
        let bad = OptimizationConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = OptimizationConfig {
            convergence_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        use rand::Rng;
        let c = OptimizationConfig::default();
        let a: u64 = c.rng(3).random();
        let b: u64 = c.rng(3).random();
        let d: u64 = c.rng(4).random();
        assert_eq!(a, b);
        assert_ne!(a, d);
    }
}
