use wsat_core::experiments::{
    p_nt, stability_sweep, threshold_estimate, trial_seed, ExperimentError, ExperimentSpec, Metric, PValues,
};
use wsat_core::graph::gnp;
use wsat_core::solver::Budget;
use wsat_core::star::{stability_check, StabilityMode, Verdict};
use wsat_core::Seed;

fn spec(n: usize, p_values: PValues, trials: usize, metric: Metric) -> ExperimentSpec {
    ExperimentSpec {
        n,
        t: 3,
        p_values,
        trials,
        seed: Seed(42),
        metric,
        exact_budget: Budget::default(),
    }
}

#[test]
fn sweeps_are_reproducible() {
    let s = spec(300, PValues::Multipliers(vec![0.5, 1.0, 2.0]), 20, Metric::FastStability);
    let a = stability_sweep(&s).unwrap();
    let b = stability_sweep(&s).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.spec_hash, b.spec_hash);
    let mut other = s.clone();
    other.seed = Seed(43);
    assert_ne!(other.hash(), s.hash());
}

#[test]
fn a_cell_can_be_rerun_alone() {
    let s = spec(300, PValues::Multipliers(vec![0.5, 1.0, 2.0]), 15, Metric::FastStability);
    let r = stability_sweep(&s).unwrap();
    let (i, cell) = (1, &r.cells[1]);
    let p = p_nt(300, 3);
    assert!((cell.p - p).abs() < 1e-15);
    let manual = (0..15)
        .filter(|&j| {
            let g = gnp(300, p, trial_seed(Seed(42), 300, i, j)).unwrap();
            stability_check(&g, 3, StabilityMode::Fast).unwrap().verdict == Verdict::Stable
        })
        .count();
    assert_eq!(manual, cell.successes);
}

#[test]
fn frequency_is_nondecreasing_up_to_noise() {
    let trials = 200;
    let s = spec(2000, PValues::Multipliers(vec![0.25, 0.5, 1.0, 2.0, 4.0, 8.0]), trials, Metric::FastStability);
    let r = stability_sweep(&s).unwrap();
    for w in r.cells.windows(2) {
        let (a, b) = (w[0].frequency(), w[1].frequency());
        let sigma = ((a * (1.0 - a) + b * (1.0 - b)) / trials as f64).sqrt();
        assert!(b >= a - 3.0 * sigma - 1e-12, "{:?} then {:?}", w[0], w[1]);
    }
    assert_eq!(r.cells[0].successes, 0);
    assert_eq!(r.cells[5].successes, trials);
}

/// Shared seeds: every fast success is an exact success.
#[test]
fn fast_successes_are_exact_successes_on_tiny_graphs() {
    let ps = vec![0.3, 0.5, 0.7, 0.9];
    for n in 4..=8 {
        for (i, &p) in ps.iter().enumerate() {
            for j in 0..25 {
                let g = gnp(n, p, trial_seed(Seed(5), n, i, j)).unwrap();
                let fast = stability_check(&g, 3, StabilityMode::Fast).unwrap().verdict;
                if fast == Verdict::Stable {
                    let exact = stability_check(&g, 3, StabilityMode::Exact(Budget::unlimited())).unwrap().verdict;
                    assert_eq!(exact, Verdict::Stable, "n={n} p={p} trial={j}");
                }
            }
        }
    }
    let fast = stability_sweep(&spec(7, PValues::Explicit(ps.clone()), 25, Metric::FastStability)).unwrap();
    let exact = stability_sweep(&spec(7, PValues::Explicit(ps), 25, Metric::ExactStability)).unwrap();
    for (f, e) in fast.cells.iter().zip(&exact.cells) {
        assert!(f.successes <= e.successes);
        assert_eq!(e.incomplete, 0);
    }
}

#[test]
fn threshold_grid_contract() {
    let r = threshold_estimate(&[2000], 3, &[0.1, 100.0], 20, Seed(3)).unwrap();
    assert_eq!(r.rows[0].frequencies, vec![0.0, 1.0]);
    assert!((r.rows[0].ratio - 10f64.sqrt()).abs() < 1e-12);
    assert!(matches!(
        threshold_estimate(&[2000], 3, &[20.0, 100.0], 20, Seed(3)),
        Err(ExperimentError::NotBracketed { .. })
    ));
}
