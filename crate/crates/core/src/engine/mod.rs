//! Resurgence invariants of fat point schemes and monomial ideals, with
//! self-certifying witnesses and exact brackets.

mod bracket;
mod conjectures;
mod containment;
mod criteria;
mod denkert;
mod report;
mod rho_hat;
mod rho_int;
mod window;
mod witness;

use serde::Serialize;

use crate::fatpoints::DEFAULT_SYMBOLIC_GENERATOR_CAP;
use crate::monomial::{MonomialIdeal, DEFAULT_POWER_GENERATOR_CAP};
use crate::newton::DEFAULT_BOX_CAP;

pub use bracket::Bracket;
pub use conjectures::{conjecture_checks, CheckInstance, ConjectureCheck, ConjectureReport};
pub use containment::{symbolic_in_closure, symbolic_in_power, Containment, SchemeContext};
pub use criteria::{mt3_criteria, Mt3Report, TriState};
pub use denkert::{denkert_estimate, DenkertEstimate};
pub use report::{resurgence_report, ConsistencyFlag, ReportSettings, ResurgenceReport};
pub use rho_hat::{rho_hat, RhoHat};
pub use rho_int::{k_search, rho_int_search, IntegralSearch};
pub use window::{dd_window, WindowResult};
pub use witness::{ContainmentWitness, Flavor};

/// Resource caps shared by every search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Lattice points examined per integral-closure box.
    pub box_cap: u128,
    /// Generators of a materialized ordinary power.
    pub power_cap: usize,
    /// Generators of a materialized symbolic power.
    pub symbolic_cap: usize,
    /// `(m, r)` pairs in one window sweep.
    pub window_pair_cap: u64,
    /// Generator-level containment tests in one window sweep.
    pub window_work_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            box_cap: DEFAULT_BOX_CAP,
            power_cap: DEFAULT_POWER_GENERATOR_CAP,
            symbolic_cap: DEFAULT_SYMBOLIC_GENERATOR_CAP,
            window_pair_cap: 20_000,
            window_work_cap: 4_000_000,
        }
    }
}

/// `N` for an ideal in `N + 1` variables.
pub(crate) fn projective_dim(ideal: &MonomialIdeal) -> u32 {
    ideal.nvars().saturating_sub(1) as u32
}
