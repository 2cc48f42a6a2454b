//! Reference results for cross-checking the sampler: ELE index-process kernels,
//! closed-form round-trip times, Monte Carlo swap functions, scaling-limit
//! simulators and two goodness-of-fit tests.

mod ele;
mod limits;
mod stats;
mod swap;

pub use ele::{
    ele_index_kernel, expected_round_trip, round_trip_rate_formula, simulate_ele_index, ELEChainSpec,
    EleSimulation, LiftedKernel,
};
pub use limits::{simulate_pdmp, simulate_reflected_bm, PdmpEvent, PdmpEventKind, PdmpPath, ReflectedBmSummary};
pub use stats::{chi_square_uniform, ks_two_sample, neumaier_sum, ChiSquareTest, KsTest};
pub use swap::{mc_swap_functions, SwapFunctionEstimate};
