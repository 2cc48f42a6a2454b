use serde::{Deserialize, Serialize};

use super::{Parity, ScanRecord};

/// Per-machine index `I^j` and direction `ε^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexProcessState {
    index: Vec<usize>,
    epsilon: Vec<i8>,
}

/// `ε = +1` iff the machine sits at the lower end of a pair of `parity`.
///
/// The boundaries count the virtual pairs `(−1, 0)` and `(N, N+1)` as members
/// of their parity class, so a machine at `N` heads up exactly when the next
/// scan would have proposed `(N, N+1)`.
fn direction(index: usize, parity: Parity) -> i8 {
    if parity.proposes(index) {
        1
    } else {
        -1
    }
}

impl IndexProcessState {
    /// `I₀^j = j` with directions set by the parity of the first scan.
    pub fn new(n_chains: usize, first_parity: Parity) -> Self {
        Self::from_permutation((0..n_chains).collect(), first_parity)
    }

    /// Start from an arbitrary machine → chain map.
    pub fn from_permutation(index: Vec<usize>, next_parity: Parity) -> Self {
        let epsilon = index.iter().map(|&i| direction(i, next_parity)).collect();
        let ips = Self { index, epsilon };
        assert!(ips.is_permutation(), "index process is not a permutation");
        ips
    }

    pub fn n_machines(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &[usize] {
        &self.index
    }

    pub fn epsilon(&self) -> &[i8] {
        &self.epsilon
    }

    /// Largest annealing index `N`.
    pub fn top(&self) -> usize {
        self.index.len() - 1
    }

    fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.index.len()];
        self.index.iter().all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
    }
}

/// Apply one scan's swap indicators: a machine moves by `ε` when its pair in
/// direction `ε` swapped, then takes the direction implied by the next scan's
/// parity.
///
/// # Panics
///
/// Panics if the record disagrees with the process, i.e. a machine moves
/// against its direction or the indices stop forming a permutation.
pub fn advance_index_process(ips: &mut IndexProcessState, record: &ScanRecord) {
    let n = ips.top();
    assert_eq!(record.n_pairs(), n, "scan record does not match the index process");
    for (i, e) in ips.index.iter_mut().zip(ips.epsilon.iter_mut()) {
        let up = *i < n && record.swapped[*i];
        let down = *i > 0 && record.swapped[*i - 1];
        if up {
            assert!(*e == 1, "machine moved up against its direction");
            *i += 1;
        } else if down {
            assert!(*e == -1, "machine moved down against its direction");
            *i -= 1;
        }
        *e = direction(*i, record.next_parity);
    }
    assert!(ips.is_permutation(), "index process is not a permutation");
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    SeekingDown,
    SeekingUp,
}

/// A completed round trip `0 → N → 0` on one machine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripRecord {
    pub machine: usize,
    pub start_scan: u64,
    pub end_scan: u64,
}

impl TripRecord {
    pub fn length(&self) -> u64 {
        self.end_scan - self.start_scan
    }
}

/// Restart and round-trip counts per machine.
///
/// A machine is anchored at its first visit to `(0,−1)`; from then on it
/// alternates between seeking index `N` (a restart) and index `0` (a round
/// trip). Under DEO a machine always arrives at `N` as `(N,+1)` and at `0` as
/// `(0,−1)`; under SEO the direction is resampled every scan and carries no
/// information, so only the index is watched.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundTripLedger {
    phase: Vec<Phase>,
    anchor: Vec<Option<u64>>,
    restarts: Vec<u64>,
    round_trips: Vec<u64>,
    trips: Vec<TripRecord>,
}

impl RoundTripLedger {
    pub fn new(n_machines: usize) -> Self {
        Self {
            phase: vec![Phase::SeekingDown; n_machines],
            anchor: vec![None; n_machines],
            restarts: vec![0; n_machines],
            round_trips: vec![0; n_machines],
            trips: Vec::new(),
        }
    }

    /// Record the process state observed at `scan`.
    pub fn tally(&mut self, ips: &IndexProcessState, scan: u64) {
        let top = ips.top();
        for j in 0..ips.n_machines() {
            let (i, e) = (ips.index[j], ips.epsilon[j]);
            match self.phase[j] {
                Phase::SeekingUp if i == top => {
                    self.restarts[j] += 1;
                    self.phase[j] = Phase::SeekingDown;
                }
                Phase::SeekingDown if i == 0 && (e == -1 || self.anchor[j].is_some()) => {
                    if let Some(start) = self.anchor[j] {
                        self.round_trips[j] += 1;
                        self.trips.push(TripRecord {
                            machine: j,
                            start_scan: start,
                            end_scan: scan,
                        });
                    }
                    self.anchor[j] = Some(scan);
                    self.phase[j] = Phase::SeekingUp;
                }
                _ => {}
            }
        }
    }

    pub fn phase(&self) -> &[Phase] {
        &self.phase
    }

    /// Annealed restarts `𝒯` per machine.
    pub fn restarts(&self) -> &[u64] {
        &self.restarts
    }

    /// Round trips `ℛ` per machine.
    pub fn round_trips(&self) -> &[u64] {
        &self.round_trips
    }

    pub fn total_round_trips(&self) -> u64 {
        self.round_trips.iter().sum()
    }

    pub fn total_restarts(&self) -> u64 {
        self.restarts.iter().sum()
    }

    /// Completed trips in order of completion.
    pub fn trips(&self) -> &[TripRecord] {
        &self.trips
    }

    pub fn trip_lengths(&self) -> Vec<u64> {
        self.trips.iter().map(TripRecord::length).collect()
    }
}
