//! Property tests for the invariants of each module.

use bellstruct::bellpoly::{
    evaluate_assignment, evaluate_deterministic, format_bracket, frustration, local_bound, local_bound_exhaustive,
    parse_bracket, LocalStrategy, StrategyMultiset, SymmetricBellPolynomial,
};
use bellstruct::polytope::{coordinate_keys, project_vertices, verify_valid, FacetCandidate};
use bellstruct::qstate::{bell_operator, quantum_value, w_state, Mat2, MeasurementScenario, Observable};
use bellstruct::scalar::{binomial, ExactScalar};
use bellstruct::wcorr::{evaluate_w_symmetric, SymmetricAngles};
use bellstruct::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

fn polynomial(max_parties: usize) -> impl Strategy<Value = SymmetricBellPolynomial<Rational>> {
    (2..=max_parties).prop_flat_map(|n| {
        let keys: Vec<(usize, usize)> = (1..=n).flat_map(|k| (0..=k).map(move |m| (k, m))).collect();
        proptest::collection::vec((-5i64..=5, 1i64..=3), keys.len()).prop_map(move |c| {
            let terms = keys
                .iter()
                .zip(c)
                .map(|(&key, (p, q))| (key, Rational::new(p.into(), q.into())));
            SymmetricBellPolynomial::new(n, terms).unwrap()
        })
    })
}

fn strategy() -> impl Strategy<Value = LocalStrategy> {
    (0usize..4).prop_map(|i| LocalStrategy::ALL[i])
}

fn observable() -> impl Strategy<Value = Observable<f64>> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(p, a)| Observable::spherical(p, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_round_trip(p in polynomial(6)) {
        let text = format_bracket(&p);
        let back: SymmetricBellPolynomial<Rational> = parse_bracket(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(format_bracket(&back), text);
    }

    #[test]
    fn multiset_bound_is_exhaustive_bound(p in polynomial(6)) {
        let r = local_bound(&p).unwrap();
        prop_assert_eq!(&r.bound, &local_bound_exhaustive(&p).unwrap());
        prop_assert_eq!(evaluate_deterministic(&p, &r.witness).unwrap(), r.bound);
        prop_assert_eq!(r.witness.n_parties(), p.n_parties());
    }

    #[test]
    fn deterministic_value_ignores_party_order(
        p in polynomial(6),
        raw in proptest::collection::vec(strategy(), 6),
        rot in 0usize..6,
    ) {
        let mut assignment = raw[..p.n_parties()].to_vec();
        let ms = StrategyMultiset::from_assignment(&assignment);
        prop_assert_eq!(ms.counts().iter().sum::<usize>(), p.n_parties());
        let value = evaluate_deterministic(&p, &ms).unwrap();
        prop_assert_eq!(&evaluate_assignment(&p, &assignment).unwrap(), &value);
        let len = assignment.len();
        assignment.rotate_left(rot % len);
        assignment.reverse();
        prop_assert_eq!(evaluate_assignment(&p, &assignment).unwrap(), value);
    }

    #[test]
    fn frustration_is_n_l_over_bound(n in 3usize..=6, coeffs in proptest::collection::vec(-3i64..=3, 21)) {
        // Random polynomial without full correlators.
        let keys: Vec<(usize, usize)> = (1..n).flat_map(|k| (0..=k).map(move |m| (k, m))).collect();
        let poly = SymmetricBellPolynomial::new(
            n,
            keys.iter().zip(&coeffs).map(|(&key, &c)| (key, Rational::from_integer(c.into()))),
        )
        .unwrap();
        prop_assume!(!poly.is_zero());
        let bound = local_bound(&poly).unwrap().bound;
        prop_assume!(bound > Rational::from_integer(0.into()));
        let f = frustration(&poly, &bound).unwrap();
        prop_assert_eq!(f.total_bound.clone(), bound.clone());
        prop_assert_eq!(f.frustration, Rational::from_integer(n.into()) * f.sub_bound / bound);
    }

    #[test]
    fn observables_are_unit_and_square_to_identity(o in observable()) {
        let b = o.bloch();
        prop_assert!((b.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        let m = o.matrix();
        prop_assert!(m.mul(&m).max_abs_diff(&Mat2::identity()) < 1e-12);
    }

    #[test]
    fn bell_operator_is_hermitian(p in polynomial(4), a in observable(), b in observable()) {
        let s = MeasurementScenario::symmetric(p.n_parties(), a, b);
        let op = bell_operator(&p, &s).unwrap().to_dense().unwrap();
        prop_assert!(op.hermiticity_defect() < 1e-12);
    }

    #[test]
    fn single_party_correlators_are_bounded(n in 2usize..=6, a in observable(), b in observable(), k in 1usize..=6, m in 0usize..=6) {
        let k = k.min(n);
        let m = m.min(k);
        let p = SymmetricBellPolynomial::new(n, [((k, m), Rational::from_integer(1.into()))]).unwrap();
        let s = MeasurementScenario::symmetric(n, a, b);
        let v = quantum_value(&p, &w_state(n).unwrap(), &s).unwrap();
        // S(k,m) is a sum of C(n,k) C(k,m) products of +-1 observables.
        let terms = (binomial(n, k) * binomial(k, m)) as f64;
        prop_assert!(v.abs() <= terms + 1e-9);
    }

    #[test]
    fn closed_form_matches_dense(p in polynomial(8), t0 in 0.0..std::f64::consts::TAU, t1 in 0.0..std::f64::consts::TAU) {
        let n = p.n_parties();
        let closed = evaluate_w_symmetric(&p, n, &SymmetricAngles::new(t0, t1)).unwrap();
        let dense = quantum_value(&p, &w_state(n).unwrap(), &MeasurementScenario::symmetric_xz(n, t0, t1)).unwrap();
        prop_assert!((closed - dense).abs() <= 1e-10 * closed.abs().max(1.0));
    }

    #[test]
    fn facet_normal_form_ignores_scaling(n in 3usize..=5, seed in proptest::collection::vec(-4i64..=4, 14), b in 1i64..20, scale in 1i64..7) {
        let len = coordinate_keys(n).len();
        let coeffs: Vec<BigInt> = seed.iter().take(len).map(|&c| BigInt::from(c)).collect();
        let base = FacetCandidate::new(n, coeffs.clone(), BigInt::from(b)).unwrap();
        let scaled = FacetCandidate::new(n, coeffs.iter().map(|c| c * scale).collect(), BigInt::from(b * scale)).unwrap();
        prop_assert_eq!(&base, &scaled);
        prop_assert_eq!(base.canonical(), scaled.canonical());
        prop_assert!(base.equivalent(&scaled));
    }

    #[test]
    fn local_bound_is_valid_on_every_vertex(n in 3usize..=5, coeffs in proptest::collection::vec(-3i64..=3, 14)) {
        let keys = coordinate_keys(n);
        let poly = SymmetricBellPolynomial::new(
            n,
            keys.iter().zip(&coeffs).map(|(&key, &c)| (key, Rational::from_integer(c.into()))),
        )
        .unwrap();
        let bound = local_bound(&poly).unwrap().bound;
        let report = verify_valid(&poly, &bound, &project_vertices(n).unwrap()).unwrap();
        prop_assert!(report.valid);
        prop_assert_eq!(report.max_value, bound.to_string());
    }
}

#[test]
fn vertex_coordinates_stay_in_their_box() {
    for n in 3..=7 {
        let keys = coordinate_keys(n);
        for v in project_vertices(n).unwrap() {
            for (&(k, m), &c) in keys.iter().zip(&v.coords) {
                assert!(c.unsigned_abs() as u128 <= binomial(n, k) * binomial(k, m));
            }
        }
    }
}

#[test]
fn exact_scalar_types_agree() {
    let p: SymmetricBellPolynomial<num_rational::Ratio<i64>> = parse_bracket("[0 0; 0 1 0; 1 1 -1 -1]").unwrap();
    assert_eq!(ExactScalar::to_f64(&local_bound(&p).unwrap().bound), 6.0);
}
