use nrpt::rng::{stream, Purpose};
use nrpt::theory::mc_swap_functions;
use nrpt::{AnalyticBarrier, GaussianModel};

// Reference values from 30-digit adaptive quadrature.
const REFERENCE: [(usize, f64, f64, f64); 5] = [
    (1, 0.3, 0.4, 0.046_623_601_299_8),
    (1, 0.3, 0.35, 0.024_181_248_638_9),
    (1, 0.3, 0.325, 0.012_322_442_446_5),
    (1, 0.3, 0.3125, 0.006_221_139_134_76),
    (8, 0.3, 0.4, 0.159_206_765_557),
];

#[test]
fn matches_reference_quadrature() {
    for (d, b, bp, r) in REFERENCE {
        let m = GaussianModel::new(d, 1.0, 0.5).unwrap();
        let got = 1.0 - m.exact_swap_probability(b, bp).unwrap();
        assert!((got - r).abs() < 1e-10, "d={d} ({b},{bp}): {got} vs {r}");
        let flipped = 1.0 - m.exact_swap_probability(bp, b).unwrap();
        assert_eq!(got, flipped);
    }
}

#[test]
fn agrees_with_monte_carlo() {
    let m = GaussianModel::new(3, 1.0, 0.2).unwrap();
    let mut rng = stream(5, Purpose::Oracle, 0);
    for (b, bp) in [(0.0, 0.1), (0.2, 0.5), (0.9, 1.0)] {
        let est = mc_swap_functions(&m, b, bp, 200_000, &mut rng).unwrap();
        let exact = m.exact_swap_probability(b, bp).unwrap();
        assert!((est.s_hat - exact).abs() < 4.0 * est.s_se + 1e-4, "({b},{bp})");
    }
}

#[test]
fn rejection_tracks_barrier_increment() {
    let m = GaussianModel::new(1, 1.0, 0.5).unwrap();
    let gap = |d: f64| {
        let r = 1.0 - m.exact_swap_probability(0.5, 0.5 + d).unwrap();
        (r - (m.cumulative_barrier(0.5 + d) - m.cumulative_barrier(0.5))).abs()
    };
    let (e1, e2) = (gap(0.04), gap(0.02));
    let slope = (e1 / e2).log2();
    assert!((slope - 3.0).abs() < 0.5, "slope {slope}");
}
