//! Numerical probe of the bound `tr(rho B) <= 6` on the two-term Schmidt
//! family `cos(t)|0..0> + sin(t)|1..1>` with arbitrary qubit observables.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use num_complex::Complex;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{argmax, maximize, OptimizationConfig};
use crate::bellpoly::SymmetricBellPolynomial;
use crate::error::{Error, Result};
use crate::qstate::{
    quantum_value, HermitianOperator, MeasurementScenario, Observable, PauliCorrelations, PureState, MAX_TENSOR_QUBITS,
};
use crate::scalar::ExactScalar;

/// Largest party count accepted by the probe.
const MAX_PROBE_PARTIES: usize = 6;

/// The four bracketed quantities of the three-party bound argument, as
/// functions of the angles `t_j^m` of parties 2 and 3 in the
/// `cos(t) (XY-plane) + sin(t) Z` parameterization:
/// `a = s_2^1 + s_3^1`, `b = c_2^0 c_3^0 + c_2^0 c_3^1 + c_2^1 c_3^0 - c_2^1 c_3^1`,
/// `c = s_2^0 + s_3^0`, `d = c_2^0 c_3^0 - c_2^0 c_3^1 - c_2^1 c_3^0 - c_2^1 c_3^1`.
pub fn ghz_bound_terms(t2_0: f64, t2_1: f64, t3_0: f64, t3_1: f64) -> [f64; 4] {
    let (s20, c20) = t2_0.sin_cos();
    let (s21, c21) = t2_1.sin_cos();
    let (s30, c30) = t3_0.sin_cos();
    let (s31, c31) = t3_1.sin_cos();
    [
        s21 + s31,
        c20 * c30 + c20 * c31 + c21 * c30 - c21 * c31,
        s20 + s30,
        c20 * c30 - c20 * c31 - c21 * c30 - c21 * c31,
    ]
}

/// `a^2 + b^2 + c^2 + d^2`, never above 8.
pub fn ghz_bound_terms_sum(t2_0: f64, t2_1: f64, t3_0: f64, t3_1: f64) -> f64 {
    ghz_bound_terms(t2_0, t2_1, t3_0, t3_1).iter().map(|v| v * v).sum()
}

/// Settings reaching the maximal Svetlichny value `4 sqrt 2` on GHZ_3:
/// X/Y for the first two parties, `(X -+ Y)/sqrt 2` for the third.
pub fn svetlichny_xy_scenario() -> MeasurementScenario<f64> {
    let xy = |phi: f64| Observable::new([phi.cos(), phi.sin(), 0.0]).expect("unit vector");
    MeasurementScenario::from_parties(vec![
        [Observable::x(), Observable::y()],
        [Observable::x(), Observable::y()],
        [xy(-FRAC_PI_4), xy(FRAC_PI_4)],
    ])
}

/// Quantum value of each correlator order separately, as `(order, value)`.
pub fn value_by_order<T: ExactScalar>(
    poly: &SymmetricBellPolynomial<T>,
    state: &PureState<f64>,
    scenario: &MeasurementScenario<f64>,
) -> Result<Vec<(usize, f64)>> {
    let mut orders: Vec<usize> = poly.terms().map(|((k, _), _)| k).collect();
    orders.dedup();
    orders
        .into_iter()
        .map(|order| {
            let part = SymmetricBellPolynomial::new(
                poly.n_parties(),
                poly.terms().filter(|((k, _), _)| *k == order).map(|(key, v)| (key, v.clone())),
            )?;
            Ok((order, quantum_value(&part, state, scenario)?))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GhzProbeReport {
    pub max_value: f64,
    /// Schmidt angle of the best state.
    pub theta: f64,
    pub scenario: MeasurementScenario<f64>,
    pub restarts: usize,
    pub restart_values: Vec<f64>,
    pub history_len: usize,
    pub config: OptimizationConfig,
}

fn schmidt_tensors(n: usize) -> Result<[PauliCorrelations<f64>; 3]> {
    let last = (1 << n) - 1;
    let one = Complex::new(1.0, 0.0);
    let mut p00 = HermitianOperator::zeros(2, n)?;
    p00.add_at(0, 0, one);
    let mut p11 = HermitianOperator::zeros(2, n)?;
    p11.add_at(last, last, one);
    let mut coh = HermitianOperator::zeros(2, n)?;
    coh.add_at(0, last, one);
    coh.add_at(last, 0, one);
    Ok([
        PauliCorrelations::from_operator(&p00)?,
        PauliCorrelations::from_operator(&p11)?,
        PauliCorrelations::from_operator(&coh)?,
    ])
}

fn settings_from(x: &[f64]) -> Vec<[[f64; 3]; 2]> {
    x.chunks(4)
        .map(|c| {
            let v = |polar: f64, az: f64| [polar.sin() * az.cos(), polar.sin() * az.sin(), polar.cos()];
            [v(c[0], c[1]), v(c[2], c[3])]
        })
        .collect()
}

/// Maximizes `tr(rho(t) B)` over the Schmidt angle `t` and two arbitrary
/// Bloch vectors per party, from `config.restarts` random starts.
pub fn ghz_bound_probe<T: ExactScalar>(poly: &SymmetricBellPolynomial<T>, config: &OptimizationConfig) -> Result<GhzProbeReport> {
    config.validate()?;
    let n = poly.n_parties();
    if n > MAX_PROBE_PARTIES.min(MAX_TENSOR_QUBITS) {
        return Err(Error::TooLarge {
            what: "parties for the GHZ probe",
            value: n,
            limit: MAX_PROBE_PARTIES,
        });
    }
    let [t00, t11, t01] = schmidt_tensors(n)?;
    let terms = poly.real_terms::<f64>();
    let objective = |x: &[f64]| -> f64 {
        let (s, c) = x[0].sin_cos();
        let settings = settings_from(&x[1..]);
        let value = |t: &PauliCorrelations<f64>| t.evaluate_terms(&terms, &settings).unwrap_or(f64::NAN);
        c * c * value(&t00) + s * s * value(&t11) + c * s * value(&t01)
    };
    let runs: Vec<_> = (0..config.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = config.rng(restart);
            let mut x0 = vec![rng.random_range(0.0..PI)];
            for _ in 0..2 * n {
                x0.push(rng.random_range(0.0..PI));
                x0.push(rng.random_range(0.0..TAU));
            }
            maximize(objective, &x0, 0.5, config.convergence_tol, config.max_iterations)
        })
        .collect();
    let values: Vec<f64> = runs.iter().map(|r| r.value).collect();
    let best = &runs[argmax(&values)];
    let scenario = MeasurementScenario::from_parties(
        settings_from(&best.x[1..])
            .into_iter()
            .map(|[a, b]| [Observable::along(a).unwrap(), Observable::along(b).unwrap()])
            .collect(),
    );
    Ok(GhzProbeReport {
        max_value: values[argmax(&values)],
        theta: best.x[0],
        scenario,
        restarts: config.restarts,
        restart_values: values,
        history_len: runs.iter().map(|r| r.iterations).sum(),
        config: config.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellpoly::known_inequality;
    use crate::qstate::{generalized_ghz, ghz};
    use crate::Rational;

    #[test]
    fn bound_terms_endpoints() {
        let v = ghz_bound_terms(0.0, 0.0, 0.0, 0.0);
        assert_eq!(v, [0.0, 2.0, 0.0, -2.0]);
        assert_eq!(ghz_bound_terms_sum(0.0, 0.0, 0.0, 0.0), 8.0);
        let h = PI / 2.0;
        let v = ghz_bound_terms(h, h, h, h);
        assert!((v[0] - 2.0).abs() < 1e-15 && v[1].abs() < 1e-15 && (v[2] - 2.0).abs() < 1e-15 && v[3].abs() < 1e-15);
        assert!(ghz_bound_terms_sum(0.3, 1.2, -0.4, 2.0) <= 8.0 + 1e-12);
    }

    #[test]
    fn svetlichny_and_z_endpoints() {
        let b = known_inequality::<Rational>("B").unwrap().polynomial;
        let g = ghz::<f64>(3).unwrap();
        let parts = value_by_order(&b, &g, &svetlichny_xy_scenario()).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts[0].1.abs() < 1e-12);
        assert!((parts[1].1 - 4.0 * 2f64.sqrt()).abs() < 1e-12);
        let z = MeasurementScenario::symmetric(3, Observable::z(), Observable::z());
        let parts = value_by_order(&b, &g, &z).unwrap();
        assert!((parts[0].1 - 6.0).abs() < 1e-12 && parts[1].1.abs() < 1e-12);
    }

    #[test]
    fn probe_objective_matches_dense() {
        let b = known_inequality::<Rational>("B").unwrap().polynomial;
        let x = [0.4, 0.1, 0.2, 1.3, 2.4, 0.5, 3.0, 2.2, 1.0, 0.7, 0.3, 2.9, 5.0];
        let [t00, t11, t01] = schmidt_tensors(3).unwrap();
        let terms = b.real_terms::<f64>();
        let settings = settings_from(&x[1..]);
        let (s, c) = x[0].sin_cos();
        let value = c * c * t00.evaluate_terms(&terms, &settings).unwrap()
            + s * s * t11.evaluate_terms(&terms, &settings).unwrap()
            + c * s * t01.evaluate_terms(&terms, &settings).unwrap();
        let state = generalized_ghz(&[Complex::new(c, 0.0), Complex::new(s, 0.0)], 3).unwrap();
        let scenario = MeasurementScenario::from_parties(
            settings.iter().map(|[a, b]| [Observable::new(*a).unwrap(), Observable::new(*b).unwrap()]).collect(),
        );
        assert!((quantum_value(&b, &state, &scenario).unwrap() - value).abs() < 1e-12);
    }

    #[test]
    fn short_probe_stays_below_six() {
        let b = known_inequality::<Rational>("B").unwrap().polynomial;
        let c = OptimizationConfig {
            restarts: 32,
            ..Default::default()
        };
        let r = ghz_bound_probe(&b, &c).unwrap();
        assert!(r.max_value <= 6.0 + 1e-7, "{}", r.max_value);
        assert!(r.max_value > 5.9, "{}", r.max_value);
    }
}
