use rand::Rng;
use serde::{Deserialize, Serialize};

use super::stats::neumaier_sum;
use crate::error::{Error, Result};
use crate::tempering::{advance_index_process, IndexProcessState, Parity, RoundTripLedger, ScanRecord, Scheme};

/// Independent Bernoulli swap indicators with per-pair success `s^{(i−1,i)}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ELEChainSpec {
    s: Vec<f64>,
    scheme: Scheme,
}

impl ELEChainSpec {
    pub fn new(s: Vec<f64>, scheme: Scheme) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Config("at least one pair is required".into()));
        }
        if let Some(&bad) = s.iter().find(|&&p| !(p > 0.0 && p <= 1.0)) {
            return Err(Error::Config(if bad == 0.0 {
                "a swap probability of 0 makes the expected round trip infinite".into()
            } else {
                format!("swap probability {bad} is outside (0, 1]")
            }));
        }
        Ok(Self { s, scheme })
    }

    /// `n` pairs sharing one swap probability.
    pub fn constant(n: usize, s: f64, scheme: Scheme) -> Result<Self> {
        Self::new(vec![s; n], scheme)
    }

    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        Self {
            s: self.s.clone(),
            scheme,
        }
    }

    /// `N`.
    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn swap_probabilities(&self) -> &[f64] {
        &self.s
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// `E(𝒫_N) = Σ r/s`.
    pub fn rejection_odds(&self) -> f64 {
        neumaier_sum(self.s.iter().map(|s| (1.0 - s) / s))
    }
}

/// `E[T]`: `2(N+1) + 2(N+1)E` for DEO, `2(N+1)N + 2(N+1)E` for SEO.
pub fn expected_round_trip(spec: &ELEChainSpec) -> f64 {
    let n = spec.n() as f64;
    let e = spec.rejection_odds();
    match spec.scheme {
        Scheme::Deo => 2.0 * (n + 1.0) + 2.0 * (n + 1.0) * e,
        Scheme::Seo => 2.0 * (n + 1.0) * n + 2.0 * (n + 1.0) * e,
    }
}

/// `τ = (N+1)/E[T]`: `1/(2 + 2E)` for DEO, `1/(2N + 2E)` for SEO.
pub fn round_trip_rate_formula(spec: &ELEChainSpec) -> f64 {
    let n = spec.n() as f64;
    let e = spec.rejection_odds();
    match spec.scheme {
        Scheme::Deo => 1.0 / (2.0 + 2.0 * e),
        Scheme::Seo => 1.0 / (2.0 * n + 2.0 * e),
    }
}

/// Transition matrix of one machine's `(I, ε)` on `{0,…,N} × {−1,+1}`.
///
/// State `(i, ε)` has row index `2i` for `ε = −1` and `2i + 1` for `ε = +1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedKernel {
    n: usize,
    matrix: Vec<Vec<f64>>,
}

impl LiftedKernel {
    pub fn state(i: usize, epsilon: i8) -> usize {
        2 * i + usize::from(epsilon > 0)
    }

    pub fn n_states(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    pub fn get(&self, from: (usize, i8), to: (usize, i8)) -> f64 {
        self.matrix[Self::state(from.0, from.1)][Self::state(to.0, to.1)]
    }

    fn states(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        (0..=self.n).flat_map(|i| [(i, -1i8), (i, 1i8)])
    }

    /// Largest `|Σ_j K(i,j) − 1|`.
    pub fn row_sum_error(&self) -> f64 {
        self.matrix
            .iter()
            .map(|row| (neumaier_sum(row.iter().copied()) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `‖uK − u‖∞` for the uniform row vector `u`.
    pub fn uniform_stationarity_error(&self) -> f64 {
        let m = self.n_states();
        let u = 1.0 / m as f64;
        (0..m)
            .map(|j| (neumaier_sum((0..m).map(|i| u * self.matrix[i][j])) - u).abs())
            .fold(0.0, f64::max)
    }

    /// `max |K(x, y) − K(y, x)|`: detailed balance with respect to uniform.
    pub fn detailed_balance_error(&self) -> f64 {
        let m = self.n_states();
        let mut worst = 0.0f64;
        for a in 0..m {
            for b in 0..m {
                worst = worst.max((self.matrix[a][b] - self.matrix[b][a]).abs());
            }
        }
        worst
    }

    /// `max |K((i,ε),(i′,ε′)) − K((i′,−ε′),(i,−ε))|`.
    pub fn skew_detailed_balance_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for from in self.states() {
            for to in self.states() {
                let forward = self.get(from, to);
                let backward = self.get((to.0, -to.1), (from.0, -from.1));
                worst = worst.max((forward - backward).abs());
            }
        }
        worst
    }

    /// `max |Q(i, i′) − Q(i′, i)|` for the index marginal `Q`.
    pub fn index_detailed_balance_error(&self) -> f64 {
        let q = self.index_marginal();
        let mut worst = 0.0f64;
        for (i, row) in q.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                worst = worst.max((x - q[j][i]).abs());
            }
        }
        worst
    }

    /// Kernel of `I` alone when `ε` is uniform given `I`, as it is under SEO.
    pub fn index_marginal(&self) -> Vec<Vec<f64>> {
        let mut q = vec![vec![0.0; self.n + 1]; self.n + 1];
        for from in self.states() {
            for to in self.states() {
                q[from.0][to.0] += 0.5 * self.get(from, to);
            }
        }
        q
    }
}

/// One-machine ELE kernel. The move is `I' = (I + ε)` clamped to `{0,…,N}` and
/// succeeds with the pair's swap probability; SEO then redraws `ε` uniformly,
/// DEO keeps `ε` after a successful move and flips it otherwise.
pub fn ele_index_kernel(spec: &ELEChainSpec) -> LiftedKernel {
    let n = spec.n();
    let mut matrix = vec![vec![0.0; 2 * (n + 1)]; 2 * (n + 1)];
    for i in 0..=n {
        for eps in [-1i8, 1] {
            let from = LiftedKernel::state(i, eps);
            let target = i as i64 + i64::from(eps);
            let p_move = if (0..=n as i64).contains(&target) {
                spec.s[i.min(target as usize)]
            } else {
                0.0
            };
            let moved = target.clamp(0, n as i64) as usize;
            let mut add = |to_i: usize, to_eps: i8, p: f64| {
                matrix[from][LiftedKernel::state(to_i, to_eps)] += p;
            };
            match spec.scheme {
                Scheme::Seo => {
                    for e in [-1i8, 1] {
                        if p_move > 0.0 {
                            add(moved, e, 0.5 * p_move);
                        }
                        add(i, e, 0.5 * (1.0 - p_move));
                    }
                }
                Scheme::Deo => {
                    if p_move > 0.0 {
                        add(moved, eps, p_move);
                    }
                    add(i, -eps, 1.0 - p_move);
                }
            }
        }
    }
    LiftedKernel { n, matrix }
}

/// Empirical round-trip statistics of the joint index processes.
#[derive(Clone, Debug, PartialEq)]
pub struct EleSimulation {
    pub n_scans: u64,
    pub round_trips: u64,
    /// Completed trip lengths in scans, in order of completion.
    pub trip_lengths: Vec<u64>,
    /// Machine that completed each trip.
    pub trip_machines: Vec<usize>,
}

impl EleSimulation {
    pub fn tau(&self) -> f64 {
        self.round_trips as f64 / self.n_scans as f64
    }

    /// Mean trip length and its standard error.
    pub fn mean_trip(&self) -> Option<(f64, f64)> {
        let k = self.trip_lengths.len();
        if k < 2 {
            return None;
        }
        let xs = || self.trip_lengths.iter().map(|&t| t as f64);
        let mean = xs().sum::<f64>() / k as f64;
        let var = xs().map(|t| (t - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
        Some((mean, (var / k as f64).sqrt()))
    }

    /// Counts of trip lengths in bins of `width` scans.
    pub fn histogram(&self, width: u64) -> Vec<u64> {
        let width = width.max(1);
        let max = self.trip_lengths.iter().copied().max().unwrap_or(0);
        let mut h = vec![0; (max / width + 1) as usize];
        for &t in &self.trip_lengths {
            h[(t / width) as usize] += 1;
        }
        h
    }
}

/// Simulate all `N+1` machines with independent `Bern(s)` swap indicators on the
/// proposed pairs, using the sampler's own index-process and ledger logic.
pub fn simulate_ele_index<R: Rng + ?Sized>(spec: &ELEChainSpec, n_scans: u64, rng: &mut R) -> Result<EleSimulation> {
    if n_scans == 0 {
        return Err(Error::Config("the number of scans must be positive".into()));
    }
    let n = spec.n();
    let draw_parity = |scan: u64, rng: &mut R| match spec.scheme {
        Scheme::Deo => Parity::of(scan),
        Scheme::Seo => {
            if rng.random::<bool>() {
                Parity::Even
            } else {
                Parity::Odd
            }
        }
    };
    let mut parity = draw_parity(0, rng);
    let mut ips = IndexProcessState::new(n + 1, parity);
    let mut ledger = RoundTripLedger::new(n + 1);
    ledger.tally(&ips, 0);
    let mut record = ScanRecord {
        scan: 0,
        parity,
        next_parity: parity,
        proposed: vec![false; n],
        alpha: spec.s.clone(),
        accepted: vec![false; n],
        swapped: vec![false; n],
    };
    for scan in 0..n_scans {
        let next = draw_parity(scan + 1, rng);
        record.scan = scan;
        record.parity = parity;
        record.next_parity = next;
        for i in 0..n {
            let proposed = parity.proposes(i);
            let accepted = proposed && (spec.s[i] >= 1.0 || rng.random::<f64>() < spec.s[i]);
            record.proposed[i] = proposed;
            record.accepted[i] = accepted;
            record.swapped[i] = accepted;
        }
        advance_index_process(&mut ips, &record);
        ledger.tally(&ips, scan + 1);
        parity = next;
    }
    Ok(EleSimulation {
        n_scans,
        round_trips: ledger.total_round_trips(),
        trip_lengths: ledger.trip_lengths(),
        trip_machines: ledger.trips().iter().map(|t| t.machine).collect(),
    })
}
