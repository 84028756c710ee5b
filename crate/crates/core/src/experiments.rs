//! Seeded Monte Carlo runs on G(n, p): star stability sweeps, threshold
//! crossings, isolated edges and the t = 2 component regimes.
//!
//! Trial `j` of probability index `i` uses seed
//! `seed.child(n).child(i).child(j)`, so any cell can be re-run alone and
//! results do not depend on the number of worker threads.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::clock::Stopwatch;
use crate::graph::{gnp, Graph, GraphError};
use crate::seed::Seed;
use crate::solver::Budget;
use crate::star::{stability_check, StabilityMode, StarError, Verdict};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment: {0}")]
    Invalid(String),
    #[error("grid does not bracket the crossing for n={n}: frequency {low} at the lowest point, {high} at the highest")]
    NotBracketed { n: usize, low: f64, high: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Star(#[from] StarError),
}

/// p(n, t) = n^{-1/(t-1)} (ln n)^{-(t-2)/(t-1)}.
pub fn p_nt(n: usize, t: usize) -> f64 {
    assert!(t >= 2, "p(n, t) needs t >= 2");
    let n = n as f64;
    let e = 1.0 / (t as f64 - 1.0);
    n.powf(-e) * n.ln().powf(-(t as f64 - 2.0) * e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    FastStability,
    ExactStability,
    IsolatedEdges,
    ComponentCount,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::FastStability => "fast",
            Metric::ExactStability => "exact",
            Metric::IsolatedEdges => "isolated",
            Metric::ComponentCount => "components",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PValues {
    Explicit(Vec<f64>),
    /// Multiples of p(n, t).
    Multipliers(Vec<f64>),
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub n: usize,
    pub t: usize,
    pub p_values: PValues,
    pub trials: usize,
    pub seed: Seed,
    pub metric: Metric,
    /// Per-trial limit for exact stability.
    pub exact_budget: Budget,
}

impl ExperimentSpec {
    /// (p, multiplier) for every grid point, clamped to [0, 1].
    pub fn grid(&self) -> Vec<(f64, Option<f64>)> {
        match &self.p_values {
            PValues::Explicit(ps) => ps.iter().map(|&p| (p, None)).collect(),
            PValues::Multipliers(ms) => {
                let base = p_nt(self.n, self.t);
                ms.iter().map(|&m| ((m * base).min(1.0), Some(m))).collect()
            }
        }
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        if self.trials == 0 {
            return Err(ExperimentError::Invalid("trials must be at least 1".into()));
        }
        if self.t < 3 {
            return Err(ExperimentError::Invalid("stability sweeps need t >= 3".into()));
        }
        for (p, _) in self.grid() {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(ExperimentError::Invalid(format!("probability {p} outside [0, 1]")));
            }
        }
        Ok(())
    }

    /// FNV-1a over a canonical description.
    pub fn hash(&self) -> u64 {
        let text = format!(
            "{}|{}|{:?}|{}|{}|{}|{:?}|{:?}",
            self.n,
            self.t,
            self.p_values,
            self.trials,
            self.seed.value(),
            self.metric.name(),
            self.exact_budget.max_subsets,
            self.exact_budget.max_millis
        );
        text.bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub n: usize,
    pub t: usize,
    pub p: f64,
    pub multiplier: Option<f64>,
    pub trials: usize,
    pub successes: usize,
    /// Trials whose exact check ran out of budget.
    pub incomplete: usize,
    pub metric: Metric,
}

impl Cell {
    pub fn frequency(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentResult {
    pub cells: Vec<Cell>,
    pub spec_hash: u64,
    pub seed: u64,
    pub wall_ms: u64,
}

pub const SWEEP_HEADER: &str = "n,t,p,multiplier,trials,successes,metric,seed";

impl ExperimentResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_HEADER);
        out.push('\n');
        for c in &self.cells {
            let m = c.multiplier.map(|m| m.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                c.n,
                c.t,
                c.p,
                m,
                c.trials,
                c.successes,
                c.metric.name(),
                self.seed
            );
        }
        out
    }
}

pub fn trial_seed(seed: Seed, n: usize, p_index: usize, trial: usize) -> Seed {
    seed.child(n as u64).child(p_index as u64).child(trial as u64)
}

#[cfg(feature = "parallel")]
fn run_trials<T: Send>(trials: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..trials).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_trials<T>(trials: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..trials).map(f).collect()
}

/// Stability frequency of wsat(G(n, p), K_{1,t}) = C(t,2) per grid point.
pub fn stability_sweep(spec: &ExperimentSpec) -> Result<ExperimentResult, ExperimentError> {
    spec.validate()?;
    let mode = match spec.metric {
        Metric::FastStability => StabilityMode::Fast,
        Metric::ExactStability => StabilityMode::Exact(spec.exact_budget),
        other => {
            return Err(ExperimentError::Invalid(format!(
                "stability sweeps take the fast or exact metric, not {}",
                other.name()
            )))
        }
    };
    let clock = Stopwatch::start();
    let mut cells = Vec::new();
    for (i, (p, multiplier)) in spec.grid().into_iter().enumerate() {
        let outcomes = run_trials(spec.trials, |j| -> Result<Verdict, ExperimentError> {
            let g = gnp(spec.n, p, trial_seed(spec.seed, spec.n, i, j))?;
            Ok(stability_check(&g, spec.t, mode)?.verdict)
        });
        let outcomes: Vec<Verdict> = outcomes.into_iter().collect::<Result<_, _>>()?;
        cells.push(Cell {
            n: spec.n,
            t: spec.t,
            p,
            multiplier,
            trials: spec.trials,
            successes: outcomes.iter().filter(|&&v| v == Verdict::Stable).count(),
            incomplete: if mode_is_exact(mode) {
                outcomes.iter().filter(|&&v| v == Verdict::Unknown).count()
            } else {
                0
            },
            metric: spec.metric,
        });
    }
    cells.sort_by(|a, b| a.p.total_cmp(&b.p));
    Ok(ExperimentResult {
        cells,
        spec_hash: spec.hash(),
        seed: spec.seed.value(),
        wall_ms: clock.elapsed_millis(),
    })
}

fn mode_is_exact(mode: StabilityMode) -> bool {
    matches!(mode, StabilityMode::Exact(_))
}

/// Edges whose endpoints both have degree 1.
pub fn count_isolated_edges(g: &Graph) -> usize {
    let deg = g.degrees();
    (0..g.n())
        .filter(|&u| deg[u] == 1)
        .filter(|&u| g.neighbors(u).next().is_some_and(|v| v > u && deg[v] == 1))
        .count()
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolatedEdgeSummary {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub counts: Vec<usize>,
    pub mean: f64,
    pub min: usize,
    pub max: usize,
    /// C(n,2) p (1-p)^{2(n-2)}.
    pub expected: f64,
    /// Exact variance of the count in one sample.
    pub variance: f64,
    /// Standard error of the mean over `trials` samples.
    pub sigma_mean: f64,
    pub seed: u64,
}

/// Expectation and variance of the number of isolated edges in G(n, p).
pub fn isolated_edge_moments(n: usize, p: f64) -> (f64, f64) {
    let nf = n as f64;
    let pairs = nf * (nf - 1.0) / 2.0;
    let q = 1.0 - p;
    let mean = pairs * p * q.powf(2.0 * (nf - 2.0));
    // Ordered pairs of disjoint edges, both isolated.
    let disjoint = pairs * (nf - 2.0) * (nf - 3.0) / 2.0;
    let both = disjoint * p * p * q.powf(4.0 + 4.0 * (nf - 4.0));
    (mean, mean + both - mean * mean)
}

pub fn isolated_edge_stats(n: usize, p: f64, trials: usize, seed: Seed) -> Result<IsolatedEdgeSummary, ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::Invalid("trials must be at least 1".into()));
    }
    let counts: Vec<usize> = run_trials(trials, |j| -> Result<usize, ExperimentError> {
        Ok(count_isolated_edges(&gnp(n, p, trial_seed(seed, n, 0, j))?))
    })
    .into_iter()
    .collect::<Result<_, _>>()?;
    let mean = counts.iter().sum::<usize>() as f64 / trials as f64;
    let (expected, variance) = isolated_edge_moments(n, p);
    Ok(IsolatedEdgeSummary {
        n,
        p,
        trials,
        mean,
        min: *counts.iter().min().expect("trials > 0"),
        max: *counts.iter().max().expect("trials > 0"),
        counts,
        expected,
        variance,
        sigma_mean: (variance.max(0.0) / trials as f64).sqrt(),
        seed: seed.value(),
    })
}

impl IsolatedEdgeSummary {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p,trial,isolated_edges,seed\n");
        for (j, c) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},{},{}", self.n, self.p, j, c, self.seed);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum T2Regime {
    Empty,
    /// Exactly one component with an edge: wsat(G, K_{1,2}) = 1.
    SingleComponent,
    /// Two or more components, each a single edge.
    DisjointEdges,
    /// Two or more non-empty components, at least one with two edges.
    MultipleComponents,
}

pub fn classify_t2(g: &Graph) -> T2Regime {
    let nonempty: Vec<Vec<usize>> = g.components().into_iter().filter(|c| c.len() > 1).collect();
    match nonempty.len() {
        0 => T2Regime::Empty,
        1 => T2Regime::SingleComponent,
        _ if nonempty.iter().all(|c| c.len() == 2) => T2Regime::DisjointEdges,
        _ => T2Regime::MultipleComponents,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct T2Summary {
    pub n: usize,
    pub trials: usize,
    pub empty: usize,
    pub single_component: usize,
    pub disjoint_edges: usize,
    pub multiple_components: usize,
    pub seed: u64,
}

pub fn t2_regime_stats(n: usize, p: f64, trials: usize, seed: Seed) -> Result<(T2Summary, f64), ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::Invalid("trials must be at least 1".into()));
    }
    let regimes: Vec<T2Regime> = run_trials(trials, |j| -> Result<T2Regime, ExperimentError> {
        Ok(classify_t2(&gnp(n, p, trial_seed(seed, n, 0, j))?))
    })
    .into_iter()
    .collect::<Result<_, _>>()?;
    let count = |r| regimes.iter().filter(|&&x| x == r).count();
    Ok((
        T2Summary {
            n,
            trials,
            empty: count(T2Regime::Empty),
            single_component: count(T2Regime::SingleComponent),
            disjoint_edges: count(T2Regime::DisjointEdges),
            multiple_components: count(T2Regime::MultipleComponents),
            seed: seed.value(),
        },
        p,
    ))
}

impl T2Summary {
    pub fn to_csv(&self, p: f64) -> String {
        format!(
            "n,p,trials,empty,single_component,disjoint_edges,multiple_components,seed\n{},{},{},{},{},{},{},{}\n",
            self.n, p, self.trials, self.empty, self.single_component, self.disjoint_edges, self.multiple_components, self.seed
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdRow {
    pub n: usize,
    pub p_nt: f64,
    pub frequencies: Vec<f64>,
    /// Geometric midpoint of the first grid interval where the frequency
    /// reaches 1/2, as a multiple of p(n, t).
    pub ratio: f64,
    pub crossing_p: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdResult {
    pub t: usize,
    pub multipliers: Vec<f64>,
    pub rows: Vec<ThresholdRow>,
    pub sweeps: Vec<ExperimentResult>,
}

impl ThresholdResult {
    /// Largest ratio divided by the smallest.
    pub fn spread(&self) -> f64 {
        let max = self.rows.iter().map(|r| r.ratio).fold(f64::MIN, f64::max);
        let min = self.rows.iter().map(|r| r.ratio).fold(f64::MAX, f64::min);
        max / min
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_HEADER);
        out.push('\n');
        for s in &self.sweeps {
            out.push_str(s.to_csv().split_once('\n').map_or("", |(_, rest)| rest));
        }
        out
    }

    pub fn ratio_table(&self) -> String {
        let mut out = String::from("n,p_nt,crossing_p,ratio\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.n, r.p_nt, r.crossing_p, r.ratio);
        }
        out
    }
}

/// Index i of the first interval with f_i < 1/2 <= f_{i+1}, after checking
/// that the endpoints bracket 1/2.
pub fn crossing_index(n: usize, freqs: &[f64]) -> Result<usize, ExperimentError> {
    let (low, high) = (freqs[0], freqs[freqs.len() - 1]);
    if freqs.len() < 2 || low >= 0.5 || high < 0.5 {
        return Err(ExperimentError::NotBracketed { n, low, high });
    }
    Ok((0..freqs.len() - 1)
        .find(|&i| freqs[i] < 0.5 && freqs[i + 1] >= 0.5)
        .expect("endpoints bracket 1/2"))
}

/// Fast-stability sweeps over a multiplier grid for each n, with the
/// crossing of frequency 1/2 located per n.
pub fn threshold_estimate(
    ns: &[usize],
    t: usize,
    multipliers: &[f64],
    trials: usize,
    seed: Seed,
) -> Result<ThresholdResult, ExperimentError> {
    if multipliers.len() < 2 || multipliers.windows(2).any(|w| w[0] >= w[1]) || multipliers[0] <= 0.0 {
        return Err(ExperimentError::Invalid("multipliers must be positive and increasing".into()));
    }
    let mut rows = Vec::new();
    let mut sweeps = Vec::new();
    for &n in ns {
        let spec = ExperimentSpec {
            n,
            t,
            p_values: PValues::Multipliers(multipliers.to_vec()),
            trials,
            seed,
            metric: Metric::FastStability,
            exact_budget: Budget::default(),
        };
        let result = stability_sweep(&spec)?;
        let freqs: Vec<f64> = result.cells.iter().map(Cell::frequency).collect();
        let i = crossing_index(n, &freqs)?;
        let ratio = (multipliers[i] * multipliers[i + 1]).sqrt();
        let base = p_nt(n, t);
        rows.push(ThresholdRow {
            n,
            p_nt: base,
            frequencies: freqs,
            ratio,
            crossing_p: ratio * base,
        });
        sweeps.push(result);
    }
    Ok(ThresholdResult {
        t,
        multipliers: multipliers.to_vec(),
        rows,
        sweeps,
    })
}
