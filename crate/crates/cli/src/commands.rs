use std::path::Path;

use bellstruct::bellpoly::{
    format_bracket, known_inequality, local_bound, noise_resistance, parse_bracket, parse_bracket_for,
};
use bellstruct::optim::{table1, OptimizationConfig, Table1Row};
use bellstruct::polytope::enumerate_facets_with_limit;
use bellstruct::qstate::{
    dicke_state, generalized_ghz, ghz, quantum_value, w_state, MeasurementScenario, Observable, PureState,
};
use bellstruct::scalar::ExactScalar;
use bellstruct::wcorr::{evaluate_w_symmetric, SymmetricAngles};
use bellstruct::{BellPolynomial, Rational};
use num_complex::Complex;
use serde::Serialize;

use crate::args::{parse_angle, BoundArgs, EvalArgs, FacetsArgs, SearchArgs, StateKind, Table1Args};
use crate::CliError;

pub const TABLE1_SIZES: [usize; 10] = [4, 5, 6, 7, 8, 10, 12, 15, 20, 40];

pub struct ResolvedInequality {
    pub name: Option<String>,
    pub polynomial: BellPolynomial,
    pub declared_bound: Option<Rational>,
}

/// A named inequality, or a bracket string when the text contains `[` or `;`.
pub fn resolve_inequality(text: &str, n: Option<usize>) -> Result<ResolvedInequality, CliError> {
    let looks_like_bracket = text.contains('[') || text.contains(';') || text.trim().starts_with(|c: char| c == '-' || c.is_ascii_digit());
    if looks_like_bracket {
        let polynomial = match n {
            Some(n) => parse_bracket_for(text, n)?,
            None => parse_bracket(text)?,
        };
        return Ok(ResolvedInequality {
            name: None,
            polynomial,
            declared_bound: None,
        });
    }
    let ineq = known_inequality::<Rational>(text)?;
    if let Some(n) = n {
        if n != ineq.polynomial.n_parties() {
            return Err(CliError::Usage(format!(
                "{} has {} parties, --n says {n}",
                ineq.name,
                ineq.polynomial.n_parties()
            )));
        }
    }
    Ok(ResolvedInequality {
        name: Some(ineq.name),
        polynomial: ineq.polynomial,
        declared_bound: Some(ineq.bound),
    })
}

pub fn search_config(search: &SearchArgs, default_restarts: usize) -> OptimizationConfig {
    let mut config = OptimizationConfig {
        restarts: search.restarts.unwrap_or(default_restarts),
        rng_seed: search.seed,
        ..Default::default()
    };
    if let Some(tol) = search.tol {
        config.convergence_tol = tol;
    }
    config
}

#[derive(Debug, Serialize)]
pub struct BoundOutput {
    pub name: Option<String>,
    pub bracket: String,
    pub n_parties: usize,
    pub bound: String,
    pub bound_f64: f64,
    /// Party counts using the strategies (+,+), (+,-), (-,+), (-,-).
    pub witness: [usize; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_bound: Option<String>,
}

pub fn bound(args: &BoundArgs) -> Result<BoundOutput, CliError> {
    let ineq = resolve_inequality(&args.ineq, args.n)?;
    let result = local_bound(&ineq.polynomial)?;
    if let Some(declared) = &ineq.declared_bound {
        if *declared != result.bound {
            return Err(CliError::Failure(format!(
                "computed bound {} differs from the declared bound {declared}",
                result.bound
            )));
        }
    }
    Ok(BoundOutput {
        name: ineq.name,
        bracket: format_bracket(&ineq.polynomial),
        n_parties: ineq.polynomial.n_parties(),
        bound: result.bound.to_string(),
        bound_f64: ExactScalar::to_f64(&result.bound),
        witness: result.witness.counts(),
        declared_bound: ineq.declared_bound.map(|b| b.to_string()),
    })
}

#[derive(Debug, Serialize)]
pub struct EvalOutput {
    pub name: Option<String>,
    pub bracket: String,
    pub n_parties: usize,
    pub state: StateKind,
    pub local_dim: usize,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angles: Option<SymmetricAngles<f64>>,
    pub value: f64,
    pub bound: String,
    /// `bound / value`; absent when the value is not positive.
    pub w: Option<f64>,
    pub violation: bool,
}

fn build_state(args: &EvalArgs, n: usize) -> Result<PureState<f64>, CliError> {
    let state = match args.state {
        StateKind::W => w_state(n)?,
        StateKind::Ghz => ghz(n)?,
        StateKind::Dicke => {
            let k = args.k.ok_or_else(|| CliError::Usage("--state dicke needs --k".into()))?;
            dicke_state(n, k)?
        }
        StateKind::Gghz => {
            let amps: Vec<f64> = match (&args.amplitudes, args.d) {
                (Some(text), _) => text
                    .split(',')
                    .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("invalid amplitude {t:?}"))))
                    .collect::<Result<_, _>>()?,
                (None, Some(d)) => vec![1.0; d],
                (None, None) => vec![1.0; 2],
            };
            if let (Some(d), Some(_)) = (args.d, &args.amplitudes) {
                if d != amps.len() {
                    return Err(CliError::Usage(format!("--d {d} but {} amplitudes given", amps.len())));
                }
            }
            let norm = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(CliError::Usage("amplitudes must have a positive finite norm".into()));
            }
            let amps: Vec<Complex<f64>> = amps.iter().map(|a| Complex::new(a / norm, 0.0)).collect();
            generalized_ghz(&amps, n)?
        }
    };
    if args.state != StateKind::Gghz && args.d.is_some_and(|d| d != 2) {
        return Err(CliError::Usage("--d applies to --state gghz only".into()));
    }
    Ok(state)
}

pub fn read_scenario(path: &Path) -> Result<MeasurementScenario<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let raw: MeasurementScenario<f64> =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    // Deserialization skips the unit-vector check; redo it.
    let parties = raw
        .parties
        .iter()
        .map(|[a, b]| Ok([Observable::new(a.bloch())?, Observable::new(b.bloch())?]))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(MeasurementScenario::from_parties(parties))
}

pub fn eval(args: &EvalArgs) -> Result<EvalOutput, CliError> {
    let ineq = resolve_inequality(&args.ineq, None)?;
    let n = ineq.polynomial.n_parties();
    if let Some(given) = args.n {
        if given != n {
            return Err(CliError::Usage(format!("inequality has {n} parties, --n says {given}")));
        }
    }
    let angles = match (&args.theta0, &args.theta1) {
        (Some(a), Some(b)) => Some(SymmetricAngles::new(
            parse_angle(a).map_err(CliError::Usage)?,
            parse_angle(b).map_err(CliError::Usage)?,
        )),
        (None, None) => None,
        _ => return Err(CliError::Usage("--theta0 and --theta1 go together".into())),
    };
    let state = build_state(args, n)?;
    let (method, value) = if args.closed_form {
        if args.state != StateKind::W || args.scenario.is_some() {
            return Err(CliError::Usage("--closed-form needs --state w and symmetric angles".into()));
        }
        let a = angles.ok_or_else(|| CliError::Usage("--closed-form needs --theta0/--theta1".into()))?;
        ("closed-form", evaluate_w_symmetric(&ineq.polynomial, n, &a)?)
    } else {
        let scenario = match (&args.scenario, &angles) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give either --scenario or angles, not both".into())),
            (Some(path), None) => read_scenario(path)?,
            (None, Some(a)) => MeasurementScenario::symmetric_xz(n, a.theta0, a.theta1),
            (None, None) => return Err(CliError::Usage("need --scenario or --theta0/--theta1".into())),
        };
        if scenario.n_parties() != n {
            return Err(CliError::Usage(format!(
                "scenario has {} parties, inequality has {n}",
                scenario.n_parties()
            )));
        }
        ("dense", quantum_value(&ineq.polynomial, &state, &scenario)?)
    };
    let bound = match ineq.declared_bound {
        Some(b) => b,
        None => local_bound(&ineq.polynomial)?.bound,
    };
    let bound_f = ExactScalar::to_f64(&bound);
    Ok(EvalOutput {
        name: ineq.name,
        bracket: format_bracket(&ineq.polynomial),
        n_parties: n,
        state: args.state,
        local_dim: state.local_dim(),
        method,
        angles,
        value,
        bound: bound.to_string(),
        w: noise_resistance(bound_f, value).ok(),
        violation: value > bound_f,
    })
}

pub fn table1_rows(args: &Table1Args) -> Result<Vec<Table1Row>, CliError> {
    if args.n_list.iter().any(|&n| n < 3) {
        return Err(CliError::Usage("table sizes must be at least 3".into()));
    }
    Ok(table1(&args.n_list, &search_config(&args.search, 8))?)
}

pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from("N,bound,Q,w,theta0,theta1\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.6},{:.4},{:.6},{:.6}\n",
            r.n, r.bound, r.quantum_value, r.w, r.theta0, r.theta1
        ));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct FacetClassOutput {
    pub bracket: String,
    pub bound: String,
    pub size: usize,
}

#[derive(Debug, Serialize)]
pub struct FacetsOutput {
    pub n_parties: usize,
    pub vertex_count: usize,
    pub dimension: usize,
    pub facet_count: usize,
    pub class_count: usize,
    /// Named inequalities on this many parties and whether they are facets.
    pub found: Vec<(String, bool)>,
    pub classes: Vec<FacetClassOutput>,
}

pub fn facets(args: &FacetsArgs) -> Result<FacetsOutput, CliError> {
    if !bellstruct::polytope::FACET_PARTIES.contains(&args.n) {
        return Err(CliError::Usage(format!(
            "--n must be in {}..={}",
            bellstruct::polytope::FACET_PARTIES.start(),
            bellstruct::polytope::FACET_PARTIES.end()
        )));
    }
    let e = match enumerate_facets_with_limit(args.n, args.max_orbits) {
        Err(e @ bellstruct::Error::TooLarge { .. }) => return Err(CliError::Failure(e.to_string())),
        other => other?,
    };
    let mut found = Vec::new();
    for name in ["I4", "I5", &format!("BN_{}", args.n)] {
        let ineq = known_inequality::<Rational>(name)?;
        if ineq.polynomial.n_parties() == args.n {
            found.push((ineq.name.clone(), e.contains(&ineq.polynomial, &ineq.bound)?));
        }
    }
    let classes = e
        .classes
        .iter()
        .map(|c| {
            let j = c.representative.to_json();
            FacetClassOutput {
                bracket: j.bracket,
                bound: j.bound,
                size: c.members.len(),
            }
        })
        .collect();
    Ok(FacetsOutput {
        n_parties: e.n_parties,
        vertex_count: e.vertex_count,
        dimension: e.dimension,
        facet_count: e.facets.len(),
        class_count: e.classes.len(),
        found,
        classes,
    })
}
