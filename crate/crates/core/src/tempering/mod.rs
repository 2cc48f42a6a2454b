//! Replica ensemble, swap moves, SEO/DEO communication and round-trip accounting.

mod communication;
mod ensemble;
mod index;
mod sampler;

pub use communication::{communication_scan, pt_scan, swap_accept_prob, Communicator, ScanRecord};
pub use ensemble::ReplicaEnsemble;
pub use index::{advance_index_process, IndexProcessState, Phase, RoundTripLedger, TripRecord};
pub use sampler::{run_chain, ChainConfig, IndexTraceRow, PtSampler, RunOptions, RunOutput};

use serde::{Deserialize, Serialize};

/// Communication scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Deterministic even/odd alternation (non-reversible).
    Deo,
    /// Even or odd chosen uniformly at random each scan (reversible).
    Seo,
}

impl std::str::FromStr for Scheme {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "deo" => Ok(Scheme::Deo),
            "seo" => Ok(Scheme::Seo),
            other => Err(crate::Error::Config(format!("unknown scheme `{other}`"))),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scheme::Deo => "deo",
            Scheme::Seo => "seo",
        })
    }
}

/// Which adjacent pairs `(i, i+1)` are proposed: those with `i` of this parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Whether pair `(i, i+1)` belongs to this class.
    pub fn proposes(self, i: usize) -> bool {
        i.is_multiple_of(2) == (self == Parity::Even)
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}
