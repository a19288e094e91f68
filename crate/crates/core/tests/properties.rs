use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use proptest::prelude::*;

use correlab::inequality::{
    bell_original, evaluate_triple, generalized_bell, CorrelationSource, GENERALIZED_BELL,
};
use correlab::lhv::{
    bell_product_expectation, lhv_correlation, singlet_basis_mixture_expectation,
    singlet_qm_decomposition, IntegrationConfig, LambdaConditionedFamily, SignModel,
};
use correlab::quantum::{qm_correlation, qm_correlation_density, qm_marginal, Side};
use correlab::spin::DensityMatrix;
use correlab::{
    density_from_pure, expectation, pauli_dot, product_state, singlet, tensor, ComplexMatrix,
    Direction, TwoQubitState,
};

fn direction() -> impl Strategy<Value = Direction> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("non-degenerate", |(x, y, z)| x * x + y * y + z * z > 1e-4)
        .prop_map(|(x, y, z)| Direction::normalized(x, y, z).unwrap())
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn spinor() -> impl Strategy<Value = [Complex64; 2]> {
    [complex(), complex()]
        .prop_filter("non-zero", |c| c[0].norm_sqr() + c[1].norm_sqr() > 1e-4)
        .prop_map(|c| {
            let n = (c[0].norm_sqr() + c[1].norm_sqr()).sqrt();
            [c[0] / n, c[1] / n]
        })
}

fn state() -> impl Strategy<Value = TwoQubitState> {
    [complex(), complex(), complex(), complex()]
        .prop_filter("non-zero", |c| {
            c.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-4
        })
        .prop_map(|c| TwoQubitState::normalized(c).unwrap())
}

fn matrix2() -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), 4).prop_map(|e| ComplexMatrix::new(2, 2, e).unwrap())
}

/// Axis-angle rotation applied to a direction.
fn rotate(d: &Direction, axis: &Direction, angle: f64) -> Direction {
    let [x, y, z] = d.components();
    let [kx, ky, kz] = axis.components();
    let (s, c) = angle.sin_cos();
    let dot = kx * x + ky * y + kz * z;
    let cross = [ky * z - kz * y, kz * x - kx * z, kx * y - ky * x];
    Direction::normalized(
        x * c + cross[0] * s + kx * dot * (1.0 - c),
        y * c + cross[1] * s + ky * dot * (1.0 - c),
        z * c + cross[2] * s + kz * dot * (1.0 - c),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pauli_dot_is_hermitian_traceless_involutive(d in direction()) {
        let m = pauli_dot(&d);
        prop_assert!(m.hermitian_deviation() <= 1e-15);
        prop_assert!(m.trace().norm() <= 1e-15);
        let sq = m.matmul(&m).unwrap();
        prop_assert!(sq.max_abs_diff(&ComplexMatrix::identity(2)).unwrap() <= 1e-12);
    }

    #[test]
    fn tensor_is_bilinear(a in matrix2(), a2 in matrix2(), b in matrix2(), k in complex()) {
        let left = tensor(&a.add(&a2.scale(k)).unwrap(), &b).unwrap();
        let right = tensor(&a, &b).unwrap().add(&tensor(&a2, &b).unwrap().scale(k)).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-12);
        let left = tensor(&b, &a.add(&a2.scale(k)).unwrap()).unwrap();
        let right = tensor(&b, &a).unwrap().add(&tensor(&b, &a2).unwrap().scale(k)).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-12);
    }

    #[test]
    fn expectation_equals_trace_with_projector(psi in state(), a in direction(), b in direction()) {
        let op = tensor(&pauli_dot(&a), &pauli_dot(&b)).unwrap();
        let direct = expectation(&psi, &op).unwrap();
        let rho = density_from_pure(&psi);
        let traced = rho.trace_with(&op).unwrap();
        prop_assert!((direct - traced.re).abs() <= 1e-12);
        prop_assert!(traced.im.abs() <= 1e-12);
        prop_assert!((direct - qm_correlation_density(&rho, &a, &b).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn mixtures_are_valid_densities(p in 0.0f64..1.0, s1 in state(), s2 in state()) {
        let rho = DensityMatrix::mixture(&[(p, s1), (1.0 - p, s2)]).unwrap();
        let m = rho.matrix();
        prop_assert!((m.trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(m.hermitian_deviation() <= 1e-12);
        prop_assert!(rho.min_eigenvalue() >= -1e-10);
    }

    #[test]
    fn correlations_are_bounded(psi in state(), a in direction(), b in direction()) {
        let e = qm_correlation(&psi, &a, &b);
        prop_assert!(e.abs() <= 1.0 + 1e-12);
        prop_assert!(qm_marginal(&psi, &a, Side::A).abs() <= 1.0 + 1e-12);
        prop_assert!(qm_marginal(&psi, &b, Side::B).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn singlet_is_rotation_invariant(
        a in direction(), b in direction(), axis in direction(), angle in 0.0f64..6.3
    ) {
        let psi = singlet();
        let e = qm_correlation(&psi, &a, &b);
        prop_assert!((e + a.dot(&b)).abs() <= 1e-12);
        let rotated = qm_correlation(&psi, &rotate(&a, &axis, angle), &rotate(&b, &axis, angle));
        prop_assert!((e - rotated).abs() <= 1e-12);
    }

    #[test]
    fn product_states_factorize(ca in spinor(), cb in spinor(), a in direction(), b in direction()) {
        let psi = product_state(ca, cb).unwrap();
        let joint = qm_correlation(&psi, &a, &b);
        let product = qm_marginal(&psi, &a, Side::A) * qm_marginal(&psi, &b, Side::B);
        prop_assert!((joint - product).abs() <= 1e-12);
        let cfg = IntegrationConfig::quadrature(8);
        let one_point = LambdaConditionedFamily::one_point();
        let model = bell_product_expectation(&psi, &one_point, &a, &b, &cfg).unwrap();
        prop_assert!((model.mean - joint).abs() <= 1e-12);
    }

    #[test]
    fn basis_mixture_vanishes_and_crosses_restore(a in direction(), b in direction()) {
        prop_assert!(singlet_basis_mixture_expectation(&a, &b).abs() <= 1e-12);
        let qm = qm_correlation(&singlet(), &a, &b);
        prop_assert!((singlet_qm_decomposition(&a, &b) - qm).abs() <= 1e-12);
    }

    #[test]
    fn generalized_margin_is_non_negative_for_quantum_sources(
        psi in state(), a in direction(), b in direction(), c in direction()
    ) {
        let eval = evaluate_triple(CorrelationSource::State(&psi), &a, &b, &c, None).unwrap();
        let g = eval.reports.iter().find(|r| r.name == GENERALIZED_BELL).unwrap();
        prop_assert!(g.satisfied);
        prop_assert!(g.margin >= -1e-12);
    }

    #[test]
    fn generalized_report_is_symmetric(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
        let r1 = generalized_bell(x, y, z, 1e-9).unwrap();
        let r2 = generalized_bell(y, x, z, 1e-9).unwrap();
        prop_assert_eq!(r1.lhs, r2.lhs);
        prop_assert_eq!(r1.rhs, r2.rhs);
        prop_assert_eq!(r1.satisfied, r2.satisfied);
    }

    #[test]
    fn original_form_implies_generalized(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) {
        if bell_original(x, y, z, 1e-9).unwrap().satisfied {
            prop_assert!(generalized_bell(x, y, z, 1e-9).unwrap().satisfied);
        }
    }
}

#[test]
fn monte_carlo_is_identical_across_thread_counts() {
    let model = SignModel::new();
    let a = Direction::planar_degrees(10.0);
    let b = Direction::normalized(0.3, -0.4, 0.5).unwrap();
    let cfg = IntegrationConfig::monte_carlo(50_000, 99);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| lhv_correlation(&model, &a, &b, &cfg).unwrap())
    };
    let one = run(1);
    for threads in [2, 8] {
        let other = run(threads);
        assert_eq!(one.mean.to_bits(), other.mean.to_bits());
        assert_eq!(one.std_error.to_bits(), other.std_error.to_bits());
    }
}

#[test]
fn monte_carlo_lands_within_three_sigma_for_nearly_all_seeds() {
    let model = SignModel::new();
    let a = Direction::Z;
    let b = Direction::planar_degrees(60.0);
    let expected = SignModel::closed_form(60f64.to_radians());
    let hits = (0..100)
        .filter(|&seed| {
            let est = lhv_correlation(
                &model,
                &a,
                &b,
                &IntegrationConfig::monte_carlo(100_000, seed),
            )
            .unwrap();
            (est.mean - expected).abs() <= 3.0 * est.std_error
        })
        .count();
    assert!(hits >= 99, "{hits}/100 seeds within 3σ");
}

#[test]
fn quadrature_and_monte_carlo_agree() {
    let model = SignModel::new();
    let a = Direction::normalized(0.2, 0.7, -0.1).unwrap();
    for deg in [15.0, 75.0, 140.0] {
        let b = Direction::planar_degrees(deg);
        let mc =
            lhv_correlation(&model, &a, &b, &IntegrationConfig::monte_carlo(400_000, 1)).unwrap();
        let q = lhv_correlation(&model, &a, &b, &IntegrationConfig::quadrature(512)).unwrap();
        assert!((mc.mean - q.mean).abs() <= 4.0 * mc.std_error + 1e-3);
        assert_abs_diff_eq!(
            q.mean,
            SignModel::closed_form(a.angle_to(&b)),
            epsilon = 1e-3
        );
    }
}
