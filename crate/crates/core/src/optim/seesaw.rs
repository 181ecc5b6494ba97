//! See-saw maximization: alternate between the best state for fixed
//! observables (top eigenvector) and the best observable per party and
//! setting for everything else fixed.
//!
//! The Bell operator is affine in any single observable `A`, so
//! `<psi|B|psi> = v(0) + r . a` for Bloch vector `a`; the optimal update is
//! `a = r / |r|`, with `r` read off from four evaluations (`A = 0, X, Y, Z`).

use rand_distr::{Distribution, UnitSphere};
use rayon::prelude::*;

use super::{argmax, OptimizationConfig, OptimumReport};
use crate::bellpoly::SymmetricBellPolynomial;
use crate::error::{Error, Result};
use crate::qstate::{BellOperator, Mat2, MeasurementScenario, Observable, PureState, StateJson};
use crate::scalar::ExactScalar;

/// Largest qubit count accepted by the see-saw.
pub const MAX_SEESAW_QUBITS: usize = 12;

struct Run {
    value: f64,
    blochs: Vec<[[f64; 3]; 2]>,
    state: PureState<f64>,
    iterations: usize,
}

fn random_blochs(n: usize, rng: &mut impl rand::Rng) -> Vec<[[f64; 3]; 2]> {
    (0..n)
        .map(|_| [UnitSphere.sample(rng), UnitSphere.sample(rng)])
        .collect()
}

fn operator_for<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, blochs: &[[[f64; 3]; 2]]) -> Result<BellOperator<f64>> {
    BellOperator::new(poly, &scenario_from(blochs))
}

fn scenario_from(blochs: &[[[f64; 3]; 2]]) -> MeasurementScenario<f64> {
    MeasurementScenario::from_parties(
        blochs
            .iter()
            .map(|[a, b]| {
                [
                    Observable::along(*a).unwrap_or_else(Observable::z),
                    Observable::along(*b).unwrap_or_else(Observable::z),
                ]
            })
            .collect(),
    )
}

/// One sweep of exact single-observable updates; returns the final value.
fn improve_observables(op: &mut BellOperator<f64>, blochs: &mut [[[f64; 3]; 2]], psi: &[num_complex::Complex<f64>]) -> Result<f64> {
    let probes = [Mat2::zero(), Mat2::pauli_x(), Mat2::pauli_y(), Mat2::pauli_z()];
    for party in 0..blochs.len() {
        for setting in 0..2 {
            let mut v = [0.0; 4];
            for (slot, probe) in v.iter_mut().zip(&probes) {
                op.settings_mut()[party][setting] = *probe;
                *slot = op.expectation_vector(psi)?;
            }
            let r = [v[1] - v[0], v[2] - v[0], v[3] - v[0]];
            if let Some(o) = Observable::along(r) {
                blochs[party][setting] = o.bloch();
            }
            op.settings_mut()[party][setting] = Mat2::from_bloch(blochs[party][setting]);
        }
    }
    op.expectation_vector(psi)
}

fn check_size<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>) -> Result<()> {
    if poly.n_parties() > MAX_SEESAW_QUBITS {
        return Err(Error::TooLarge {
            what: "qubits for see-saw",
            value: poly.n_parties(),
            limit: MAX_SEESAW_QUBITS,
        });
    }
    Ok(())
}

fn run_restarts(config: &OptimizationConfig, run: impl Fn(usize) -> Result<Run> + Sync) -> Result<OptimumReport> {
    config.validate()?;
    let runs = (0..config.restarts).into_par_iter().map(&run).collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = runs.iter().map(|r| r.value).collect();
    let best = &runs[argmax(&values)];
    Ok(OptimumReport {
        value: best.value,
        angles: None,
        scenario: Some(scenario_from(&best.blochs)),
        state: Some(StateJson::from_state(&best.state)),
        history_len: runs.iter().map(|r| r.iterations).sum(),
        restart_values: values,
        lower_bound: true,
        config: config.clone(),
    })
}

/// State-free maximum over all qubit states and per-party observables.
pub fn seesaw_max<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, config: &OptimizationConfig) -> Result<OptimumReport> {
    check_size(poly)?;
    let n = poly.n_parties();
    run_restarts(config, |restart| {
        let mut rng = config.rng(restart);
        let mut blochs = random_blochs(n, &mut rng);
        let mut op = operator_for(poly, &blochs)?;
        let mut previous = f64::NEG_INFINITY;
        let mut state: Option<PureState<f64>> = None;
        let mut value = f64::NEG_INFINITY;
        let mut iterations = 0;
        for _ in 0..config.max_iterations {
            iterations += 1;
            let (_, psi) = op.top_eigenpair(state.as_ref().map(|s| s.amplitudes()))?;
            value = improve_observables(&mut op, &mut blochs, psi.amplitudes())?;
            state = Some(psi);
            if value - previous < config.convergence_tol {
                break;
            }
            previous = value;
        }
        // Report the value of the final (state, observables) pair exactly.
        let state = state.expect("at least one iteration");
        let value = operator_for(poly, &blochs)?.expectation(&state).unwrap_or(value);
        Ok(Run {
            value,
            blochs,
            state,
            iterations,
        })
    })
}

/// Maximum over per-party observables with the state held fixed.
pub fn fixed_state_max<T: ExactScalar>(
    poly: &SymmetricBellPolynomial<T>,
    state: &PureState<f64>,
    config: &OptimizationConfig,
) -> Result<OptimumReport> {
    check_size(poly)?;
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
    run_restarts(config, |restart| {
        let mut rng = config.rng(restart);
        let mut blochs = random_blochs(n, &mut rng);
        let mut op = operator_for(poly, &blochs)?;
        let mut previous = f64::NEG_INFINITY;
        let mut iterations = 0;
        for _ in 0..config.max_iterations {
            iterations += 1;
            let value = improve_observables(&mut op, &mut blochs, state.amplitudes())?;
            if value - previous < config.convergence_tol {
                break;
            }
            previous = value;
        }
        let value = operator_for(poly, &blochs)?.expectation(state)?;
        Ok(Run {
            value,
            blochs,
            state: state.clone(),
            iterations,
        })
    })
}
