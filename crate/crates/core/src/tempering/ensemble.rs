use rand::Rng;

use crate::error::{Error, Result};
use crate::model::TemperedModel;
use crate::rng::{stream, Purpose};

/// Chain-major replica states plus the machine ↔ chain permutation.
///
/// Slot `i` always holds the state at `β_i`. A swap exchanges two slots and the
/// matching permutation entries, so `machine_to_chain[j]` is the annealing
/// index `I^j` currently held by machine `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplicaEnsemble<S> {
    pub(crate) states: Vec<S>,
    pub(crate) potentials: Vec<f64>,
    pub(crate) machine_to_chain: Vec<usize>,
    pub(crate) chain_to_machine: Vec<usize>,
    pub(crate) scan_count: u64,
}

impl<S: Clone> ReplicaEnsemble<S> {
    /// Ensemble with the identity permutation. `potentials[i]` must be `V(states[i])`.
    pub fn new(states: Vec<S>, potentials: Vec<f64>) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::Config("an ensemble needs at least two chains".into()));
        }
        if potentials.len() != states.len() {
            return Err(Error::LengthMismatch {
                expected: states.len(),
                found: potentials.len(),
            });
        }
        if let Some((chain, &value)) = potentials.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinitePotential { chain, value });
        }
        let n = states.len();
        Ok(Self {
            states,
            potentials,
            machine_to_chain: (0..n).collect(),
            chain_to_machine: (0..n).collect(),
            scan_count: 0,
        })
    }

    /// Initialize every chain with an independent exact reference draw.
    pub fn from_reference<M>(model: &M, n_chains: usize, seed: u64) -> Result<Self>
    where
        M: TemperedModel<State = S>,
    {
        let mut states = Vec::with_capacity(n_chains);
        for chain in 0..n_chains {
            let mut rng = stream(seed, Purpose::Initialization, chain as u64);
            states.push(sample_reference_or_fail(model, &mut rng)?);
        }
        let potentials = states.iter().map(|x| model.potential(x)).collect();
        Self::new(states, potentials)
    }

    pub fn n_chains(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    /// State at chain `i`, i.e. at `β_i`.
    pub fn state(&self, chain: usize) -> &S {
        &self.states[chain]
    }

    pub fn potentials(&self) -> &[f64] {
        &self.potentials
    }

    /// `I^j` for every machine `j`.
    pub fn permutation(&self) -> &[usize] {
        &self.machine_to_chain
    }

    pub fn machine_at(&self, chain: usize) -> usize {
        self.chain_to_machine[chain]
    }

    pub fn scan_count(&self) -> u64 {
        self.scan_count
    }

    /// Exchange chains `i` and `i+1`.
    pub(crate) fn swap_pair(&mut self, i: usize) {
        self.states.swap(i, i + 1);
        self.potentials.swap(i, i + 1);
        self.chain_to_machine.swap(i, i + 1);
        self.machine_to_chain[self.chain_to_machine[i]] = i;
        self.machine_to_chain[self.chain_to_machine[i + 1]] = i + 1;
    }

    /// Whether the two maps are mutually inverse permutations.
    pub fn is_consistent(&self) -> bool {
        let n = self.n_chains();
        self.machine_to_chain.len() == n
            && self.chain_to_machine.len() == n
            && self.potentials.len() == n
            && self
                .machine_to_chain
                .iter()
                .enumerate()
                .all(|(m, &c)| c < n && self.chain_to_machine[c] == m)
    }
}

fn sample_reference_or_fail<M: TemperedModel, R: Rng + ?Sized>(model: &M, rng: &mut R) -> Result<M::State> {
    model.sample_reference(rng).ok_or(Error::NoExactSampler {
        model: model.name(),
        beta: 0.0,
    })
}
