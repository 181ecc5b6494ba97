//! Symmetric XZ-plane angle search: coarse grid, then Nelder-Mead polish
//! from the best cells.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use super::{argmax, maximize, OptimizationConfig, OptimumReport};
use crate::bellpoly::{scbi_sum, SymmetricBellPolynomial};
use crate::error::{Error, Result};
use crate::qstate::{ghz, BellOperator, MeasurementScenario, Observable, PureState, StateJson, MAX_BELL_QUBITS};
use crate::scalar::ExactScalar;
use crate::wcorr::{evaluate_w_terms, SymmetricAngles};
use crate::Rational;

/// State whose quantum value is maximized over the measurement angles.
#[derive(Clone, Debug, PartialEq)]
pub enum StateFamily {
    /// `W_N`, evaluated in closed form (any `N`).
    W,
    /// `GHZ_N`, evaluated densely.
    Ghz,
    /// An explicit qubit state, evaluated densely.
    Fixed(PureState<f64>),
}

type Objective<'a> = Box<dyn Fn(f64, f64) -> f64 + Send + Sync + 'a>;

fn xz_matrices(n: usize, t0: f64, t1: f64) -> MeasurementScenario<f64> {
    MeasurementScenario::symmetric_xz(n, t0, t1)
}

fn dense_objective<'a, T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, state: PureState<f64>) -> Result<Objective<'a>> {
    let n = poly.n_parties();
    if state.n_parties() != n {
        return Err(Error::PartyMismatch {
            expected: n,
            found: state.n_parties(),
        });
    }
    if state.local_dim() != 2 {
        return Err(Error::NotQubits(state.local_dim()));
    }
    let template = BellOperator::new(poly, &xz_matrices(n, 0.0, 0.0))?;
    Ok(Box::new(move |t0, t1| {
        let mut op = template.clone();
        let (a0, a1) = (Observable::xz(t0).matrix(), Observable::xz(t1).matrix());
        for s in op.settings_mut() {
            *s = [a0, a1];
        }
        op.expectation(&state).unwrap_or(f64::NAN)
    }))
}

fn objective<'a, T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, family: &StateFamily) -> Result<Objective<'a>> {
    let n = poly.n_parties();
    match family {
        StateFamily::W => {
            let terms = poly.real_terms::<f64>();
            Ok(Box::new(move |t0, t1| {
                evaluate_w_terms(&terms, n, &SymmetricAngles::new(t0, t1)).unwrap_or(f64::NAN)
            }))
        }
        StateFamily::Ghz => dense_objective(poly, ghz(n)?),
        StateFamily::Fixed(state) => dense_objective(poly, state.clone()),
    }
}

/// Grid over `[0, 2pi)^2` followed by a polish of the `restarts` best cells.
fn grid_then_polish(f: &Objective<'_>, config: &OptimizationConfig) -> (SymmetricAngles<f64>, f64, Vec<f64>, usize) {
    let res = config.grid_resolution;
    let h = TAU / res as f64;
    let grid: Vec<f64> = (0..res * res)
        .into_par_iter()
        .map(|idx| f((idx / res) as f64 * h, (idx % res) as f64 * h))
        .collect();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]).then(a.cmp(&b)));
    order.truncate(config.restarts);
    let polished: Vec<_> = order
        .par_iter()
        .map(|&idx| {
            let x0 = [(idx / res) as f64 * h, (idx % res) as f64 * h];
            maximize(|x| f(x[0], x[1]), &x0, h, config.convergence_tol, config.max_iterations)
        })
        .collect();
    let values: Vec<f64> = polished.iter().map(|p| p.value).collect();
    let best = &polished[argmax(&values)];
    let angles = SymmetricAngles::new(best.x[0].rem_euclid(TAU), best.x[1].rem_euclid(TAU));
    let value = f(angles.theta0, angles.theta1);
    let iterations = polished.iter().map(|p| p.iterations).sum();
    (angles, value, values, iterations)
}

/// Maximizes the quantum value over symmetric XZ-plane angles `(theta0, theta1)`.
pub fn optimize_angles_symmetric<T: ExactScalar>(
    poly: &SymmetricBellPolynomial<T>,
    family: &StateFamily,
    config: &OptimizationConfig,
) -> Result<OptimumReport> {
    config.validate()?;
    let f = objective(poly, family)?;
    let (angles, value, restart_values, history_len) = grid_then_polish(&f, config);
    Ok(OptimumReport {
        value,
        angles: Some(angles),
        scenario: None,
        state: None,
        history_len,
        restart_values,
        lower_bound: true,
        config: config.clone(),
    })
}

/// Maximizes the largest Bell-operator eigenvalue over symmetric XZ-plane
/// angles: the best state for each setting pair is chosen exactly.
pub fn symmetric_state_free_max<T: ExactScalar>(
    poly: &SymmetricBellPolynomial<T>,
    config: &OptimizationConfig,
) -> Result<OptimumReport> {
    config.validate()?;
    let n = poly.n_parties();
    if n > MAX_BELL_QUBITS {
        return Err(Error::TooLarge {
            what: "qubits",
            value: n,
            limit: MAX_BELL_QUBITS,
        });
    }
    let template = BellOperator::new(poly, &xz_matrices(n, 0.0, 0.0))?;
    let top = |t0: f64, t1: f64| -> Result<(f64, PureState<f64>)> {
        let mut op = template.clone();
        let (a0, a1) = (Observable::xz(t0).matrix(), Observable::xz(t1).matrix());
        for s in op.settings_mut() {
            *s = [a0, a1];
        }
        op.top_eigenpair(None)
    };
    let f: Objective<'_> = Box::new(|t0, t1| top(t0, t1).map_or(f64::NAN, |(v, _)| v));
    let (angles, _, restart_values, history_len) = grid_then_polish(&f, config);
    let (_, state) = top(angles.theta0, angles.theta1)?;
    let scenario = xz_matrices(n, angles.theta0, angles.theta1);
    let value = BellOperator::new(poly, &scenario)?.expectation(&state)?;
    Ok(OptimumReport {
        value,
        angles: Some(angles),
        scenario: Some(scenario),
        state: Some(StateJson::from_state(&state)),
        history_len,
        restart_values,
        lower_bound: true,
        config: config.clone(),
    })
}

/// One row of the white-noise resistance table for the `B_N` family on `W_N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub n: usize,
    /// Exact local bound as a rational string.
    pub bound: String,
    pub quantum_value: f64,
    /// `min(1, bound / quantum_value)`; 1 means no violation.
    pub w: f64,
    pub theta0: f64,
    pub theta1: f64,
}

pub fn table1(n_list: &[usize], config: &OptimizationConfig) -> Result<Vec<Table1Row>> {
    n_list
        .iter()
        .map(|&n| {
            let ineq = scbi_sum::<Rational>(n)?;
            let report = optimize_angles_symmetric(&ineq.polynomial, &StateFamily::W, config)?;
            let bound = ExactScalar::to_f64(&ineq.bound);
            let q = report.value;
            let w = if q > bound { bound / q } else { 1.0 };
            let angles = report.angles.expect("angle search reports angles");
            Ok(Table1Row {
                n,
                bound: ineq.bound.to_string(),
                quantum_value: q,
                w,
                theta0: angles.theta0,
                theta1: angles.theta1,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellpoly::known_inequality;
    use crate::qstate::{quantum_value, w_state};
    use crate::wcorr::evaluate_w_symmetric;

    fn quick() -> OptimizationConfig {
        OptimizationConfig {
            restarts: 4,
            grid_resolution: 90,
            ..Default::default()
        }
    }

    #[test]
    fn b_on_w3() {
        let b = known_inequality::<Rational>("B").unwrap().polynomial;
        let r = optimize_angles_symmetric(&b, &StateFamily::W, &quick()).unwrap();
        assert!((r.value - 7.2593).abs() < 5e-4, "{}", r.value);
        let a = r.angles.unwrap();
        assert!((evaluate_w_symmetric(&b, 3, &a).unwrap() - r.value).abs() < 1e-9);
        let dense = optimize_angles_symmetric(&b, &StateFamily::Fixed(w_state(3).unwrap()), &quick()).unwrap();
        assert!((dense.value - r.value).abs() < 1e-8);
        let s = MeasurementScenario::symmetric_xz(3, a.theta0, a.theta1);
        assert!((quantum_value(&b, &w_state(3).unwrap(), &s).unwrap() - r.value).abs() < 1e-9);
        assert_eq!(r.restart_values.len(), 4);
    }

    #[test]
    fn mermin_on_ghz() {
        let m3 = known_inequality::<Rational>("M3").unwrap().polynomial;
        let r = optimize_angles_symmetric(&m3, &StateFamily::Ghz, &quick()).unwrap();
        // Without Y components the GHZ correlators reduce to s0^3 - 3 s0 s1^2,
        // which never beats the local bound.
        assert!((r.value - 2.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn table_rows() {
        let rows = table1(&[4, 5], &quick()).unwrap();
        assert_eq!(rows[0].w, 1.0);
        assert!((rows[1].w - 0.891).abs() < 2e-3, "{}", rows[1].w);
        assert_eq!(rows[1].bound, "20");
    }

    #[test]
    fn state_free_symmetric_b() {
        let b = known_inequality::<Rational>("B").unwrap().polynomial;
        let r = symmetric_state_free_max(&b, &OptimizationConfig { grid_resolution: 40, ..quick() }).unwrap();
        assert!((r.value - 7.3084).abs() < 1e-3, "{}", r.value);
    }
}
